"""Lifting set-pair systems to subspaces, and exhaustive extremal search.

Both searches reduce to a maximum clique problem: candidate pairs are
enumerated in a fixed lexicographic order, two candidates are adjacent
when they satisfy the symmetric cross condition, and a depth-first
branch and bound finds the first maximum clique in that order.  The
witness is therefore the lexicographically least maximum system.

With ``threads > 1`` the tree is split at the root into one task per
first candidate and solved in a process pool.  Workers share only a
monotone best size; the final reduction picks the smallest root that
reaches the maximum, so the witness matches the serial one.
"""

from __future__ import annotations

import logging
import multiprocessing as mp
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Union

from .bounds import prop15_lower, thm18_lhs, thm19_cap, tuza_sum, uniform_caps
from .errors import (
    AmbientTooSmall,
    EnumerationTooLarge,
    InvalidInput,
    InvalidParameter,
    InvariantViolation,
    PreconditionViolated,
)
from .exactnum import format_exact, q_binomial
from .gfq import make_field
from .pairsystems import (
    SetPairSystem,
    SubspacePairSystem,
    verify_tuza_sets,
    verify_uniform,
    verify_weak_isp,
    verify_weak_uv,
)
from .subspace import coordinate_subspace, enumerate_subspaces, is_trivial_intersection

log = logging.getLogger(__name__)

DEFAULT_NODE_CAP = 10**8
DEFAULT_CANDIDATE_CAP = 5000


def _env_node_cap() -> int:
    raw = os.environ.get("QSPACE_NODE_CAP")
    if raw is None:
        return DEFAULT_NODE_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise InvalidParameter(f"QSPACE_NODE_CAP must be an integer, got {raw!r}") from exc
    if cap <= 0:
        raise InvalidParameter("QSPACE_NODE_CAP must be positive")
    return cap


@dataclass
class SearchConfig:
    node_cap: int = field(default_factory=_env_node_cap)
    time_cap_seconds: Optional[float] = None
    prune_with_thm19: bool = False
    report_witness: bool = True
    threads: int = 1
    candidate_cap: int = DEFAULT_CANDIDATE_CAP

    def __post_init__(self):
        if self.node_cap <= 0:
            raise InvalidParameter("node_cap must be positive")
        if self.time_cap_seconds is not None and self.time_cap_seconds <= 0:
            raise InvalidParameter("time_cap_seconds must be positive")
        if self.threads < 1:
            raise InvalidParameter("threads must be >= 1")


@dataclass
class SearchResult:
    best_size: int
    witness: Union[SetPairSystem, SubspacePairSystem, None]
    exhausted: bool
    nodes_visited: int
    kind: str = ""
    params: dict = field(default_factory=dict)


# -- lifting -----------------------------------------------------------------


def required_ambient(s: SetPairSystem) -> int:
    """Smallest n that hosts every element of ``s`` as a coordinate 1..n."""
    return max((x for A, B in s.pairs for x in A + B), default=0)


def lift_set_system(s: SetPairSystem, n: int, q: int) -> SubspacePairSystem:
    """Replace A and B by the coordinate subspaces <e_k : k in A>, <e_l : l in B>."""
    f = make_field(q)
    if any(x == 0 for A, B in s.pairs for x in A + B):
        raise InvalidInput("set elements must be numbered from 1 to be used as coordinates")
    need = required_ambient(s)
    if need > n:
        raise AmbientTooSmall(f"elements go up to {need} but the ambient dimension is {n}")
    if not verify_tuza_sets(s).passed:
        raise PreconditionViolated("only systems satisfying the symmetric cross condition are lifted")
    pairs = tuple(
        (coordinate_subspace([k - 1 for k in A], n, f), coordinate_subspace([k - 1 for k in B], n, f))
        for A, B in s.pairs
    )
    return SubspacePairSystem(f, n, pairs)


# -- candidate graphs ----------------------------------------------------------


def set_candidates(ground: int, a: int, b: int):
    """All (A, B) with |A| = a, |B| = b, A ∩ B = ∅ over {1..ground}, in lex order."""
    elems = range(1, ground + 1)
    out = []
    for A in combinations(elems, a):
        rest = [x for x in elems if x not in A]
        for B in combinations(rest, b):
            out.append((A, B))
    out.sort()
    return out


def set_adjacency(cands):
    masks = [(sum(1 << x for x in A), sum(1 << x for x in B)) for A, B in cands]
    adj = []
    for am, bm in masks:
        row = 0
        for k, (am2, bm2) in enumerate(masks):
            if am & bm2 or am2 & bm:
                row |= 1 << k
        adj.append(row)
    return adj


def subspace_candidates(n: int, q: int, u: int, v: int, cap: int = DEFAULT_CANDIDATE_CAP):
    """Candidate pairs (U, V) with dim U = u, dim V = v, U ∩ V = {0}.

    Returns (candidates, index pairs, meet bitmasks); candidates are in
    enumeration order of U, then of V.
    """
    f = make_field(q)
    if q_binomial(n, u, q) * q_binomial(n, v, q) > 50 * cap:
        raise EnumerationTooLarge(f"too many (U, V) pairs for n={n}, q={q}, u={u}, v={v}")
    Us = list(enumerate_subspaces(n, u, f))
    Vs = list(enumerate_subspaces(n, v, f))
    meets = []
    for U in Us:
        row = 0
        for b, V in enumerate(Vs):
            if not is_trivial_intersection(U, V):
                row |= 1 << b
        meets.append(row)
    index = [(a, b) for a in range(len(Us)) for b in range(len(Vs)) if not (meets[a] >> b) & 1]
    if len(index) > cap:
        raise EnumerationTooLarge(f"{len(index)} candidate pairs exceed the candidate cap {cap}")
    cands = [(Us[a], Vs[b]) for a, b in index]
    return cands, index, meets


def subspace_adjacency(index, meets):
    adj = []
    for a, b in index:
        row = 0
        ma = meets[a]
        for k, (a2, b2) in enumerate(index):
            if (ma >> b2) & 1 or (meets[a2] >> b) & 1:
                row |= 1 << k
        adj.append(row)
    return adj


# -- branch and bound ----------------------------------------------------------


class _Capped(Exception):
    pass


class _SerialSearch:
    def __init__(self, adj, node_cap, deadline, limit):
        self.adj = adj
        self.node_cap = node_cap
        self.deadline = deadline
        self.limit = limit
        self.nodes = 0
        self.best = 0
        self.best_clique = ()

    def run(self):
        try:
            self._expand([], (1 << len(self.adj)) - 1)
        except _Capped:
            return False
        return True

    def _expand(self, clique, P):
        self.nodes += 1
        if self.nodes > self.node_cap:
            self.nodes -= 1
            raise _Capped
        if self.deadline is not None and not self.nodes & 1023 and time.time() > self.deadline:
            raise _Capped
        size = len(clique)
        if size > self.best:
            self.best = size
            self.best_clique = tuple(clique)
            if self.limit is not None and size > self.limit:
                raise InvariantViolation(f"found a system of size {size} above the proven cap {self.limit}")
        adj = self.adj
        while P:
            if size + P.bit_count() <= self.best:
                return
            low = P & -P
            P ^= low
            v = low.bit_length() - 1
            clique.append(v)
            self._expand(clique, P & adj[v])
            clique.pop()


# worker-process state, set by _init_worker
_W: dict = {}

_FLUSH = 256


def _init_worker(adj, shared_best, shared_nodes, node_cap, deadline, limit):
    _W.update(adj=adj, best=shared_best, nodes=shared_nodes, node_cap=node_cap, deadline=deadline, limit=limit)


class _SubtreeSearch:
    """Search the subtree rooted at one candidate, sharing the best size."""

    def __init__(self, root):
        self.root = root
        self.adj = _W["adj"]
        self.local_best = 0
        self.local_clique = ()
        self.pending = 0
        self.nodes = 0
        self.cached_best = _W["best"].value

    def _sync(self):
        shared_nodes = _W["nodes"]
        with shared_nodes.get_lock():
            shared_nodes.value += self.pending
            total = shared_nodes.value
        self.pending = 0
        self.cached_best = _W["best"].value
        if total > _W["node_cap"]:
            raise _Capped
        deadline = _W["deadline"]
        if deadline is not None and time.time() > deadline:
            raise _Capped

    def _record(self, clique):
        size = len(clique)
        self.local_best = size
        self.local_clique = tuple(clique)
        limit = _W["limit"]
        if limit is not None and size > limit:
            raise InvariantViolation(f"found a system of size {size} above the proven cap {limit}")
        shared = _W["best"]
        with shared.get_lock():
            if size > shared.value:
                shared.value = size
        self.cached_best = max(self.cached_best, size)

    def _expand(self, clique, P):
        self.nodes += 1
        self.pending += 1
        if self.pending >= _FLUSH:
            self._sync()
        size = len(clique)
        if size > self.local_best and size >= self.cached_best:
            self._record(clique)
        adj = self.adj
        while P:
            bound = size + P.bit_count()
            if bound <= self.local_best or bound < self.cached_best:
                return
            low = P & -P
            P ^= low
            v = low.bit_length() - 1
            clique.append(v)
            self._expand(clique, P & adj[v])
            clique.pop()

    def run(self):
        v = self.root
        later = ~((1 << (v + 1)) - 1)
        P = self.adj[v] & later
        capped = False
        if 1 + P.bit_count() >= self.cached_best:
            try:
                self._expand([v], P)
                self._sync()
            except _Capped:
                capped = True
        return v, self.local_best, self.local_clique, self.nodes, capped


def _run_subtree(root):
    return _SubtreeSearch(root).run()


def _parallel_search(adj, cfg: SearchConfig, deadline, limit):
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    shared_best = ctx.Value("q", 0)
    shared_nodes = ctx.Value("q", 1)  # the empty root node
    with ProcessPoolExecutor(
        max_workers=cfg.threads,
        mp_context=ctx,
        initializer=_init_worker,
        initargs=(adj, shared_best, shared_nodes, cfg.node_cap, deadline, limit),
    ) as pool:
        results = list(pool.map(_run_subtree, range(len(adj))))
    best, clique = 0, ()
    for _, size, cl, _, _ in sorted(results):
        if size > best:
            best, clique = size, cl
    nodes = 1 + sum(r[3] for r in results)
    exhausted = not any(r[4] for r in results)
    return best, clique, nodes, exhausted


def max_clique(adj, cfg: SearchConfig, limit: Optional[int] = None):
    """Lexicographically least maximum clique of the graph given by bitmask rows.

    Returns (size, clique indices, nodes visited, exhausted).
    """
    deadline = time.time() + cfg.time_cap_seconds if cfg.time_cap_seconds else None
    if cfg.threads > 1 and len(adj) > 1:
        return _parallel_search(adj, cfg, deadline, limit)
    s = _SerialSearch(adj, cfg.node_cap, deadline, limit)
    exhausted = s.run()
    return s.best, s.best_clique, s.nodes, exhausted


# -- public searches -------------------------------------------------------------


def search_max_weak_uv(n: int, q: int, u: int, v: int, cfg: Optional[SearchConfig] = None) -> SearchResult:
    """Largest weak (u, v)-system in GF(q)^n, relative to this n and q."""
    cfg = cfg or SearchConfig()
    if u < 0 or v < 0 or u + v > n:
        raise InvalidParameter(f"need u, v >= 0 and u + v <= n, got u={u}, v={v}, n={n}")
    f = make_field(q)
    cands, index, meets = subspace_candidates(n, q, u, v, cfg.candidate_cap)
    adj = subspace_adjacency(index, meets)
    cap = thm19_cap(n, u, v, q)
    limit = int(cap) if cfg.prune_with_thm19 else None
    size, clique, nodes, exhausted = max_clique(adj, cfg, limit)
    witness = SubspacePairSystem(f, n, tuple(cands[k] for k in clique))
    log.debug("weak (%d,%d) search n=%d q=%d: %d candidates, best %d, %d nodes", u, v, n, q, len(cands), size, nodes)
    return SearchResult(size, witness, exhausted, nodes, "uv", {"n": n, "q": q, "u": u, "v": v, "candidates": len(cands)})


def search_max_set_system(ground: int, a: int, b: int, cfg: Optional[SearchConfig] = None) -> SearchResult:
    """Largest (a, b)-uniform set-pair system on {1..ground} with the symmetric cross condition."""
    cfg = cfg or SearchConfig()
    if ground < 1 or a < 1 or b < 1 or a > ground or b > ground:
        raise InvalidParameter(f"need ground, a, b >= 1 and a, b <= ground, got {ground}, {a}, {b}")
    cands = set_candidates(ground, a, b)
    if len(cands) > cfg.candidate_cap:
        raise EnumerationTooLarge(f"{len(cands)} candidate pairs exceed the candidate cap {cfg.candidate_cap}")
    adj = set_adjacency(cands)
    size, clique, nodes, exhausted = max_clique(adj, cfg)
    witness = SetPairSystem(tuple(cands[k] for k in clique))
    return SearchResult(size, witness, exhausted, nodes, "sets", {"ground": ground, "a": a, "b": b, "candidates": len(cands)})


def paper_value_m(a: int, b: int) -> Optional[int]:
    """m(a, b) where it is known exactly: m(a, 1) = 2a + 1."""
    return 2 * a + 1 if b == 1 else None


def ladder_set_search(a: int, b: int, cfg: Optional[SearchConfig] = None, start: Optional[int] = None, max_ground: int = 12):
    """Run fixed-ground searches for growing ground sets.

    Stops after two consecutive increments without improvement, on the
    first capped run, or at ``max_ground``.  Returns (best result, rungs).
    """
    cfg = cfg or SearchConfig()
    ground = start if start is not None else a + b
    rungs = []
    best = None
    stale = 0
    while ground <= max_ground:
        r = search_max_set_system(ground, a, b, cfg)
        rungs.append(r)
        if best is None or r.best_size > best.best_size:
            best, stale = r, 0
        else:
            stale += 1
        if not r.exhausted or stale >= 2:
            break
        ground += 1
    return best, rungs


def ladder_label(a: int, b: int, value: int) -> str:
    return "m(a,b)" if paper_value_m(a, b) == value else "best found"


# -- reporting -------------------------------------------------------------------


def _frac(x) -> str:
    return format_exact(Fraction(x), True)


def witness_report(r: SearchResult) -> dict:
    """Witness system, its verification transcript and the applicable bounds.

    Contains nothing run-dependent (no node counts), so equal witnesses
    give byte-identical JSON.
    """
    w = r.witness
    out = {"kind": r.kind, "params": {k: v for k, v in r.params.items() if k != "candidates"}, "best_size": r.best_size}
    if r.kind == "uv":
        if w is None:
            w = SubspacePairSystem(make_field(r.params["q"]), r.params["n"], ())
        u, v, n, q = r.params["u"], r.params["v"], r.params["n"], r.params["q"]
        out["witness"] = w.to_json()
        out["verification"] = [verify_weak_isp(w).to_json(), verify_weak_uv(w, u, v).to_json()]
        out["bounds"] = {
            "thm18": [dict(j=j, **thm18_lhs(w, j).to_json()) for j in range(n + 1)],
            "thm19_cap": _frac(thm19_cap(n, u, v, q)),
        }
    else:
        if w is None:
            w = SetPairSystem(())
        a, b = r.params["a"], r.params["b"]
        out["witness"] = w.to_json()
        out["verification"] = [verify_tuza_sets(w).to_json(), verify_uniform(w, a, b).to_json()]
        _, thm14, _ = uniform_caps(a, b)
        out["bounds"] = {
            "tuza": [dict(p=p, **tuza_sum(w, p).to_json()) for p in ("1/4", "1/2", "3/4")],
            "thm14_cap": _frac(thm14),
            "prop15_lower": str(prop15_lower(a, b)),
        }
    return out
