"""Grounding sets (feedback vertex sets): checking, exact search, greedy bound.

Every cycle of a graph lives inside one strongly connected component, so a
minimum grounding set is the union of independent per-component minima and
the full list of minimum sets is their Cartesian product. The exact search
runs per nontrivial component of the grounding kernel.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass

from .errors import BudgetExceededError, UnknownVertexError
from .graph import DirectedGraph, cycle_through, is_acyclic, scc_decompose, shortest_cycle
from .kernel import grounding_kernel

DEFAULT_NODE_BUDGET = 10**7
DEFAULT_ENUMERATION_CAP = 10**4


@dataclass(frozen=True)
class GroundingSearchResult:
    minimum_size: int
    sets: tuple  # of frozensets, sorted
    truncated: bool
    nodes_explored: int
    method: str  # "exact" or "heuristic"
    lower_bound: int | None = None

    def as_dict(self) -> dict:
        return {
            "method": self.method,
            "minimum_size": self.minimum_size,
            "sets": [sorted(s) for s in self.sets],
            "truncated": self.truncated,
            "nodes_explored": self.nodes_explored,
            "lower_bound": self.lower_bound,
        }


def is_grounding_set(g: DirectedGraph, u) -> bool:
    u = frozenset(u)
    unknown = u - g.vertices
    if unknown:
        raise UnknownVertexError(unknown)
    return is_acyclic(g.without(u))


def cyclic_components(g: DirectedGraph) -> list[frozenset]:
    """Vertex sets of components that contain at least one cycle."""
    loops = g.self_loops()
    return [c for c in scc_decompose(g).components if len(c) > 1 or c & loops]


def disjoint_cycle_packing(g: DirectedGraph, max_length: int | None = None) -> list[list]:
    """Greedy packing of vertex-disjoint cycles, shortest first.

    Its size is a lower bound on every grounding set. ``max_length`` caps
    the cycle lengths searched, which keeps large graphs tractable at the
    price of a weaker bound.
    """
    alive = set().union(*cyclic_components(g)) if g.n_vertices else set()
    cycles = []
    for v in sorted(g.self_loops() & alive):
        cycles.append([v])
        alive.discard(v)
    for u in sorted(alive):
        if u not in alive:
            continue
        for w in sorted(g.successors(u)):
            if w in alive and w != u and u in g.successors(w):
                cycles.append([u, w])
                alive.discard(u)
                alive.discard(w)
                break
    limit = max_length if max_length is not None else len(alive)
    for length in range(3, limit + 1):
        found = False
        for u in sorted(alive):
            if u not in alive:
                continue
            c = cycle_through(g, u, max_length=length, allowed=alive)
            if c is not None:
                cycles.append(c)
                alive.difference_update(c)
                found = True
        if not alive:
            break
        if not found and max_length is None and length > len(alive):
            break
    return cycles


def greedy_grounding_set(g: DirectedGraph) -> frozenset:
    """Remove the cyclic vertex with the largest in*out degree until acyclic.

    Works on the grounding kernel, repeatedly trimmed of vertices with no
    remaining predecessor or successor; degrees are taken in that trimmed
    graph. A popped candidate that lies on no cycle is discarded instead of
    chosen. Ties go to the smallest vertex.
    """
    gk = grounding_kernel(g).gk
    succ = {v: set(g.successors(v) & gk) for v in gk}
    pred = {v: set(g.predecessors(v) & gk) for v in gk}
    chosen = {v for v in gk if v in succ[v]}
    heap: list = []

    def push(v):
        heapq.heappush(heap, (-len(pred[v]) * len(succ[v]), v))

    def delete(vs):
        queue = list(vs)
        while queue:
            v = queue.pop()
            if v not in succ:
                continue
            for w in succ.pop(v):
                if w != v and w in pred:
                    pred[w].discard(v)
                    queue.append(w) if not pred[w] else push(w)
            for u in pred.pop(v):
                if u != v and u in succ:
                    succ[u].discard(v)
                    queue.append(u) if not succ[u] else push(u)

    delete(chosen | {v for v in gk if not (pred[v] - {v}) or not (succ[v] - {v})})
    for v in succ:
        push(v)
    view = _AdjacencyView(succ)
    while succ:
        score, v = heapq.heappop(heap)
        if v not in succ or score != -len(pred[v]) * len(succ[v]):
            continue
        if cycle_through(view, v) is None:
            delete([v])
            continue
        chosen.add(v)
        delete([v])
    return frozenset(chosen)


class _AdjacencyView:
    """Just enough of the DirectedGraph interface for :func:`cycle_through`."""

    def __init__(self, succ):
        self._succ = succ

    def successors(self, v):
        return self._succ[v]


# --- exact branch and bound ----------------------------------------------


def _contract(g: DirectedGraph, v) -> DirectedGraph:
    """Bypass v: join each predecessor to each successor, then delete v."""
    preds = g.predecessors(v) - {v}
    succs = g.successors(v) - {v}
    arcs = [a for a in g.arcs() if v not in a]
    arcs.extend((p, s) for p in preds for s in succs)
    return DirectedGraph(g.vertices - {v}, arcs)


def _trim(g: DirectedGraph, chosen: list) -> DirectedGraph:
    """Take forced vertices (self-loops) and drop vertices on no cycle."""
    while True:
        loops = g.self_loops()
        if loops:
            chosen.extend(sorted(loops))
            g = g.without(loops)
            continue
        dead = [v for v in g if g.in_degree(v) == 0 or g.out_degree(v) == 0]
        if not dead:
            return g
        g = g.without(dead)


class _Search:
    def __init__(self, budget: int, cap: int, upper: int):
        self.budget = budget
        self.cap = cap
        self.best = upper
        self.found: list[frozenset] = []
        self.truncated = False
        self.nodes = 0

    def record(self, chosen):
        size = len(chosen)
        if size < self.best:
            self.best = size
            self.found = []
            self.truncated = False
        if size == self.best:
            if len(self.found) < self.cap:
                self.found.append(frozenset(chosen))
            else:
                self.truncated = True

    def run(self, g: DirectedGraph, chosen: list):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _OutOfBudget
        chosen = list(chosen)
        g = _trim(g, chosen)
        if len(chosen) > self.best:
            return
        if g.n_vertices == 0:
            self.record(chosen)
            return
        if len(chosen) + len(disjoint_cycle_packing(g)) > self.best:
            return
        cycle = sorted(shortest_cycle(g))
        branch = g
        for i, v in enumerate(cycle):
            if i > 0:
                # earlier cycle vertices are excluded from this branch onward;
                # an excluded vertex closing a cycle alone makes it infeasible
                u = cycle[i - 1]
                if branch.has_arc(u, u):
                    return
                branch = _contract(branch, u)
            self.run(branch.without([v]), chosen + [v])


class _OutOfBudget(Exception):
    pass


def _exact_component(g: DirectedGraph, budget: int, cap: int) -> _Search:
    upper = len(greedy_grounding_set(g))
    search = _Search(budget, cap, upper)
    search.run(g, [])
    return search


def minimum_grounding_sets(
    g: DirectedGraph,
    node_budget: int = DEFAULT_NODE_BUDGET,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> GroundingSearchResult:
    """Exact minimum grounding sets, all of them up to ``enumeration_cap``.

    Raises :class:`BudgetExceededError` (carrying the greedy upper bound)
    when more than ``node_budget`` branch nodes would be needed.
    """
    gk = grounding_kernel(g).gk
    comps = sorted(cyclic_components(g.subgraph(gk)), key=min)
    per_comp = []
    nodes = 0
    for comp in comps:
        try:
            s = _exact_component(g.subgraph(comp), node_budget - nodes, enumeration_cap)
        except _OutOfBudget:
            fallback = greedy_grounding_set(g)
            raise BudgetExceededError(node_budget, len(fallback), fallback) from None
        nodes += s.nodes
        per_comp.append(s)

    size = sum(s.best for s in per_comp)
    truncated = any(s.truncated for s in per_comp)
    choices = [sorted(s.found, key=sorted) for s in per_comp]
    total = 1
    for c in choices:
        total *= len(c)
    if total > enumeration_cap:
        truncated = True
    combos = itertools.islice(itertools.product(*choices), enumeration_cap)
    sets = sorted((frozenset().union(*combo) for combo in combos), key=sorted)
    return GroundingSearchResult(size, tuple(sets), truncated, nodes, "exact", size)


def greedy_result(g: DirectedGraph, max_cycle_length: int | None = 6) -> GroundingSearchResult:
    """Greedy set together with a disjoint-cycle lower bound."""
    s = greedy_grounding_set(g)
    gk = grounding_kernel(g).gk
    bound = len(disjoint_cycle_packing(g.subgraph(gk), max_length=max_cycle_length))
    return GroundingSearchResult(len(s), (s,), False, 0, "heuristic", bound)
