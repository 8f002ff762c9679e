"""Set-pair and subspace-pair systems and their hypothesis checkers.

Every verifier walks its conditions in the order (condition, i, j) and by
default stops at the first violation.  Indices in reports are 1-based.
Pass ``collect_all=True`` to get every violation instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import InvalidInput
from .gfq import FieldTable, make_field
from .subspace import basis_to_subspace, is_trivial_intersection


@dataclass(frozen=True)
class SetPairSystem:
    pairs: tuple = ()

    def __post_init__(self):
        norm = []
        for A, B in self.pairs:
            norm.append((_norm_set(A), _norm_set(B)))
        object.__setattr__(self, "pairs", tuple(norm))

    def __len__(self):
        return len(self.pairs)

    @property
    def ground(self) -> tuple:
        return tuple(sorted({x for A, B in self.pairs for x in A + B}))

    def to_json(self) -> dict:
        return {"pairs": [{"A": list(A), "B": list(B)} for A, B in self.pairs]}

    @classmethod
    def from_json(cls, obj) -> "SetPairSystem":
        try:
            return cls(tuple((p["A"], p["B"]) for p in obj["pairs"]))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"set-pair system JSON needs pairs of {{A, B}}: {exc}") from exc


def _norm_set(xs) -> tuple:
    out = set()
    for x in xs:
        if not isinstance(x, int) or isinstance(x, bool) or x < 0:
            raise InvalidInput(f"set elements must be natural numbers, got {x!r}")
        out.add(x)
    return tuple(sorted(out))


@dataclass(frozen=True)
class SubspacePairSystem:
    field: FieldTable
    n: int
    pairs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((U, V) for U, V in self.pairs))
        for U, V in self.pairs:
            for S in (U, V):
                if S.n != self.n or S.field != self.field:
                    raise InvalidInput(f"{S!r} is not a subspace of GF({self.field.q})^{self.n}")

    @property
    def q(self) -> int:
        return self.field.q

    def __len__(self):
        return len(self.pairs)

    def dims(self):
        return [(U.dim, V.dim) for U, V in self.pairs]

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "pairs": [{"U": [list(r) for r in U.basis], "V": [list(r) for r in V.basis]} for U, V in self.pairs],
        }

    @classmethod
    def from_json(cls, obj) -> "SubspacePairSystem":
        """Decode and re-canonicalize every basis."""
        try:
            q, n, raw = obj["q"], obj["n"], obj["pairs"]
            f = make_field(q)
            pairs = tuple(
                (basis_to_subspace(p["U"], n, f), basis_to_subspace(p["V"], n, f)) for p in raw
            )
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"subspace-pair system JSON needs q, n and pairs of {{U, V}}: {exc}") from exc
        return cls(f, n, pairs)


@dataclass
class VerificationReport:
    kind: str
    passed: bool
    first_violation: Optional[tuple] = None
    counts: int = 0
    violations: list = dc_field(default_factory=list)
    data: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "passed": self.passed,
            "first_violation": None,
            "counts": self.counts,
        }
        if self.first_violation is not None:
            cond, i, j = self.first_violation
            out["first_violation"] = {"condition": cond, "i": i, "j": j}
        if len(self.violations) > 1:
            out["violations"] = [{"condition": c, "i": i, "j": j} for c, i, j in self.violations]
        if self.data:
            out.update(self.data)
        return out


class _Checker:
    """Accumulates checks; signals the caller to stop after the first failure."""

    def __init__(self, kind, collect_all):
        self.kind = kind
        self.collect_all = collect_all
        self.count = 0
        self.violations = []

    def check(self, ok, cond, i, j) -> bool:
        """Record one check; returns True when the caller should stop."""
        self.count += 1
        if not ok:
            self.violations.append((cond, i + 1, j + 1))
            return not self.collect_all
        return False

    def report(self) -> VerificationReport:
        first = self.violations[0] if self.violations else None
        return VerificationReport(self.kind, first is None, first, self.count, list(self.violations))


def _disjoint(A, B) -> bool:
    return not set(A).intersection(B)


def _own_pairs(chk, pairs, disjoint) -> bool:
    for i, (X, Y) in enumerate(pairs):
        if chk.check(disjoint(X, Y), "i", i, i):
            return True
    return False


def verify_bollobas(s: SetPairSystem, collect_all: bool = False) -> VerificationReport:
    """A_i ∩ B_i = ∅ for all i and A_i ∩ B_j ≠ ∅ for every ordered i ≠ j."""
    chk = _Checker("bollobas", collect_all)
    if _own_pairs(chk, s.pairs, _disjoint):
        return chk.report()
    m = len(s.pairs)
    for i in range(m):
        for j in range(m):
            if i != j and chk.check(not _disjoint(s.pairs[i][0], s.pairs[j][1]), "ii", i, j):
                return chk.report()
    return chk.report()


def _symmetric_or(chk, pairs, disjoint) -> None:
    m = len(pairs)
    for i in range(m):
        for j in range(i + 1, m):
            ok = not disjoint(pairs[i][0], pairs[j][1]) or not disjoint(pairs[j][0], pairs[i][1])
            if chk.check(ok, "ii", i, j):
                return


def verify_tuza_sets(s: SetPairSystem, collect_all: bool = False) -> VerificationReport:
    """A_i ∩ B_i = ∅, and for each i < j: A_i ∩ B_j ≠ ∅ or A_j ∩ B_i ≠ ∅."""
    chk = _Checker("tuza", collect_all)
    if not _own_pairs(chk, s.pairs, _disjoint):
        _symmetric_or(chk, s.pairs, _disjoint)
    return chk.report()


def verify_uniform(s: SetPairSystem, r: int, s_size: int, collect_all: bool = False) -> VerificationReport:
    chk = _Checker("uniform", collect_all)
    for i, (A, B) in enumerate(s.pairs):
        if chk.check(len(A) == r and len(B) == s_size, "size", i, i):
            break
    return chk.report()


def verify_lovasz_skew(s: SubspacePairSystem, collect_all: bool = False) -> VerificationReport:
    """U_i ∩ V_i = {0} for all i and U_i ∩ V_j ≠ {0} for all i < j (order matters)."""
    chk = _Checker("lovasz", collect_all)
    if _own_pairs(chk, s.pairs, is_trivial_intersection):
        return chk.report()
    m = len(s.pairs)
    for i in range(m):
        for j in range(i + 1, m):
            if chk.check(not is_trivial_intersection(s.pairs[i][0], s.pairs[j][1]), "ii", i, j):
                return chk.report()
    return chk.report()


def verify_weak_isp(s: SubspacePairSystem, collect_all: bool = False) -> VerificationReport:
    chk = _Checker("weak-isp", collect_all)
    if not _own_pairs(chk, s.pairs, is_trivial_intersection):
        _symmetric_or(chk, s.pairs, is_trivial_intersection)
    return chk.report()


def verify_weak_uv(s: SubspacePairSystem, u: int, v: int, collect_all: bool = False) -> VerificationReport:
    """Weak ISP conditions followed by dim U_i = u, dim V_i = v."""
    isp = verify_weak_isp(s, collect_all)
    chk = _Checker("weak-uv", collect_all)
    chk.count, chk.violations = isp.counts, list(isp.violations)
    if chk.violations and not collect_all:
        return chk.report()
    for i, (U, V) in enumerate(s.pairs):
        if chk.check(U.dim == u and V.dim == v, "dim", i, i):
            break
    return chk.report()


def verify_kind(s, kind: str, u: int | None = None, v: int | None = None, collect_all: bool = False):
    """Dispatch by the CLI kind name."""
    if kind == "bollobas":
        return verify_bollobas(s, collect_all)
    if kind == "tuza":
        return verify_tuza_sets(s, collect_all)
    if kind == "lovasz":
        return verify_lovasz_skew(s, collect_all)
    if kind == "weak-isp":
        return verify_weak_isp(s, collect_all)
    if kind == "weak-uv":
        if u is None or v is None:
            raise InvalidInput("weak-uv needs both u and v")
        return verify_weak_uv(s, u, v, collect_all)
    raise InvalidInput(f"unknown verification kind {kind!r}")


SET_KINDS = ("bollobas", "tuza")
SUBSPACE_KINDS = ("lovasz", "weak-isp", "weak-uv")
