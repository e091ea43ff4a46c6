"""Directed-graph substrate.

Vertices are any hashable, mutually comparable ids (words for dictionary
graphs, integers for quotient graphs). Graphs are immutable once built;
every derived graph (induced subgraphs, quotients) is a new object.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Hashable, Iterable, Mapping

from .errors import (
    InvalidPartitionError,
    UndefinedDensityError,
    UngroundedCycleError,
    UnknownVertexError,
)

Vertex = Hashable


class DirectedGraph:
    """Finite directed graph G = (V, E) with E a set of ordered pairs."""

    __slots__ = ("_succ", "_pred", "_n_arcs", "_vertices")

    def __init__(self, vertices: Iterable[Vertex] = (), arcs: Iterable[tuple] = ()):
        succ: dict = {}
        pred: dict = {}
        for v in vertices:
            if v not in succ:
                succ[v] = set()
                pred[v] = set()
        for u, v in arcs:
            for x in (u, v):
                if x not in succ:
                    succ[x] = set()
                    pred[x] = set()
            succ[u].add(v)
            pred[v].add(u)
        self._set(succ, pred)

    def _set(self, succ, pred):
        self._succ = {v: frozenset(s) for v, s in succ.items()}
        self._pred = {v: frozenset(s) for v, s in pred.items()}
        self._n_arcs = sum(len(s) for s in self._succ.values())
        self._vertices = frozenset(self._succ)

    @classmethod
    def _from_adjacency(cls, succ, pred):
        g = cls.__new__(cls)
        g._set(succ, pred)
        return g

    # --- basic queries -------------------------------------------------

    @property
    def vertices(self) -> frozenset:
        return self._vertices

    @property
    def n_vertices(self) -> int:
        return len(self._succ)

    @property
    def n_arcs(self) -> int:
        return self._n_arcs

    def __len__(self):
        return len(self._succ)

    def __contains__(self, v):
        return v in self._succ

    def __iter__(self):
        return iter(self._succ)

    def __eq__(self, other):
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return self._succ == other._succ

    def __hash__(self):
        return hash((self._vertices, frozenset(self.arcs())))

    def __repr__(self):
        return f"DirectedGraph(|V|={self.n_vertices}, |E|={self.n_arcs})"

    def arcs(self):
        for u, out in self._succ.items():
            for v in out:
                yield (u, v)

    def sorted_vertices(self) -> list:
        return sorted(self._succ)

    def sorted_arcs(self) -> list:
        return sorted(self.arcs())

    def successors(self, v) -> frozenset:
        return self._succ[v]

    def predecessors(self, v) -> frozenset:
        return self._pred[v]

    def out_degree(self, v) -> int:
        return len(self._succ[v])

    def in_degree(self, v) -> int:
        return len(self._pred[v])

    def has_arc(self, u, v) -> bool:
        return u in self._succ and v in self._succ[u]

    def self_loops(self) -> frozenset:
        """Vertices carrying a loop (u, u). Dictionary graphs have none."""
        return frozenset(v for v, out in self._succ.items() if v in out)

    # --- derived graphs ------------------------------------------------

    def subgraph(self, keep: Iterable[Vertex]) -> "DirectedGraph":
        """Induced subgraph G[keep]."""
        keep = frozenset(keep)
        unknown = keep - self._vertices
        if unknown:
            raise UnknownVertexError(unknown)
        succ = {v: self._succ[v] & keep for v in keep}
        pred = {v: self._pred[v] & keep for v in keep}
        return DirectedGraph._from_adjacency(succ, pred)

    def without(self, drop: Iterable[Vertex]) -> "DirectedGraph":
        """Induced subgraph G[V - drop]."""
        drop = frozenset(drop)
        unknown = drop - self._vertices
        if unknown:
            raise UnknownVertexError(unknown)
        return self.subgraph(self._vertices - drop)


def build_graph(vertices: Iterable[Vertex] = (), arcs: Iterable[tuple] = ()) -> DirectedGraph:
    return DirectedGraph(vertices, arcs)


def density(g: DirectedGraph) -> float:
    """|E| / |V|^2, diagonal included."""
    if g.n_vertices == 0:
        raise UndefinedDensityError("density of the empty graph is undefined")
    return g.n_arcs / g.n_vertices**2


def sinks(g: DirectedGraph) -> frozenset:
    return frozenset(v for v in g if g.out_degree(v) == 0)


def sources(g: DirectedGraph) -> frozenset:
    return frozenset(v for v in g if g.in_degree(v) == 0)


def degree_histogram(g: DirectedGraph, direction: str = "in") -> dict[int, int]:
    degree = g.in_degree if direction == "in" else g.out_degree
    counts = Counter(degree(v) for v in g)
    return dict(sorted(counts.items()))


def topological_order(g: DirectedGraph) -> list | None:
    """Kahn order with lexicographic tie-breaking, or None if g has a cycle."""
    import heapq

    indeg = {v: g.in_degree(v) for v in g}
    heap = [v for v, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in g.successors(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    return order if len(order) == g.n_vertices else None


def is_acyclic(g: DirectedGraph) -> bool:
    indeg = {v: g.in_degree(v) for v in g}
    stack = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in g.successors(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == g.n_vertices


def cycle_through(
    g: DirectedGraph, v, max_length: int | None = None, allowed: set | frozenset | None = None
) -> list | None:
    """Shortest cycle through v as [v, ..., last] (last -> v closes it), or None.

    With ``allowed`` the search stays inside that vertex set.
    """
    if v in g.successors(v):
        return [v]
    parent = {v: None}
    frontier = [v]
    depth = 0
    while frontier:
        depth += 1
        if max_length is not None and depth >= max_length:
            return None
        nxt = []
        for x in frontier:
            for y in sorted(g.successors(x)):
                if y in parent or (allowed is not None and y not in allowed):
                    continue
                parent[y] = x
                if v in g.successors(y):
                    path = [y]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return path[::-1]
                nxt.append(y)
        frontier = nxt
    return None


def _canonical_rotation(cycle: list) -> list:
    i = cycle.index(min(cycle))
    return cycle[i:] + cycle[:i]


def shortest_cycle(g: DirectedGraph, max_length: int | None = None) -> list | None:
    """A shortest directed cycle of g, rotated to start at its smallest vertex.

    Among equally short cycles the one found from the smallest start vertex
    wins, so the result is deterministic.
    """
    loops = g.self_loops()
    if loops:
        return [min(loops)]
    best = None
    cyclic = set()
    for comp in scc_decompose(g).components:
        if len(comp) > 1:
            cyclic |= comp
    for v in sorted(cyclic):
        limit = len(best) - 1 if best is not None else max_length
        c = cycle_through(g, v, max_length=limit)
        if c is not None and (best is None or len(c) < len(best)):
            best = c
            if len(best) == 2:
                break
    return _canonical_rotation(best) if best else None


# --- strongly connected components -------------------------------------


@dataclass(frozen=True, eq=False)
class SccPartition:
    components: tuple  # of frozensets, indexed by smallest member
    component_of: Mapping = field(repr=False)

    def __len__(self):
        return len(self.components)

    def nontrivial(self) -> list[int]:
        return [i for i, c in enumerate(self.components) if len(c) > 1]

    def largest(self) -> frozenset:
        return max(self.components, key=len, default=frozenset())

    def same_classes(self, other: "SccPartition") -> bool:
        return set(self.components) == set(other.components)


def make_partition(components: Iterable[Iterable[Vertex]]) -> SccPartition:
    comps = sorted((frozenset(c) for c in components), key=min)
    component_of = {}
    for i, c in enumerate(comps):
        for v in c:
            if v in component_of:
                raise InvalidPartitionError(f"vertex {v!r} appears in two components")
            component_of[v] = i
    return SccPartition(tuple(comps), MappingProxyType(component_of))


def scc_decompose(g: DirectedGraph) -> SccPartition:
    """Iterative Tarjan; no recursion, so deep graphs are safe."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    components = []
    counter = 0
    succ = g._succ
    for root in g:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(succ[root]))]
        while work:
            v, it = work[-1]
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    components.append(comp)
    return make_partition(components)


@dataclass(frozen=True, eq=False)
class QuotientGraph:
    graph: DirectedGraph  # vertices are component indices
    partition: SccPartition


def quotient(g: DirectedGraph, p: SccPartition | None = None) -> QuotientGraph:
    """SCC-quotient graph: one vertex per component, arcs between distinct ones."""
    if p is None:
        p = scc_decompose(g)
    elif set().union(*p.components) != set(g.vertices) or not p.same_classes(scc_decompose(g)):
        raise InvalidPartitionError("partition is not the SCC partition of the graph")
    comp = p.component_of
    arcs = set()
    for u, v in g.arcs():
        cu, cv = comp[u], comp[v]
        if cu != cv:
            arcs.add((cu, cv))
    q = DirectedGraph(range(len(p)), arcs)
    assert is_acyclic(q), "SCC quotient must be acyclic"
    return QuotientGraph(q, p)


# --- level assignment ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class HierarchyLevels:
    levels: Mapping
    kind: str = "custom"

    def __getitem__(self, v):
        return self.levels[v]

    def __len__(self):
        return len(self.levels)

    def __contains__(self, v):
        return v in self.levels

    def as_dict(self) -> dict:
        return dict(self.levels)

    def max_level(self) -> int:
        return max(self.levels.values(), default=0)

    def by_level(self) -> dict[int, list]:
        out: dict[int, list] = {}
        for v, lvl in self.levels.items():
            out.setdefault(lvl, []).append(v)
        return {lvl: sorted(out[lvl]) for lvl in sorted(out)}

    def level_set(self, level: int) -> frozenset:
        return frozenset(v for v, lvl in self.levels.items() if lvl == level)


def acyclic_levels(g: DirectedGraph, base: Iterable[Vertex], kind: str = "custom") -> HierarchyLevels:
    """Longest-path distance above a base set.

    Base vertices get level 0; every other vertex gets one more than its
    highest predecessor. A non-base vertex without predecessors gets 1.
    All cycles must lie inside ``base``.
    """
    base = frozenset(base)
    unknown = base - g.vertices
    if unknown:
        raise UnknownVertexError(unknown)
    level = {v: 0 for v in base}
    indeg = {}
    ready = deque()
    for v in g:
        if v in base:
            continue
        d = sum(1 for u in g.predecessors(v) if u not in base)
        indeg[v] = d
        if d == 0:
            ready.append(v)
    while ready:
        v = ready.popleft()
        level[v] = 1 + max((level[u] for u in g.predecessors(v)), default=0)
        for w in g.successors(v):
            if w in indeg:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
    if len(level) < g.n_vertices:
        stuck = g.subgraph(v for v in g if v not in level)
        raise UngroundedCycleError(shortest_cycle(stuck) or [])
    return HierarchyLevels(MappingProxyType(level), kind)
