"""Grounding kernel, kernel core and the two definitional-distance hierarchies."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .errors import EmptyKernelError
from .graph import (
    DirectedGraph,
    HierarchyLevels,
    QuotientGraph,
    acyclic_levels,
    degree_histogram,
    density,
    quotient,
    sinks,
    sources,
)


@dataclass(frozen=True)
class KernelDecomposition:
    gk: frozenset
    strip_order: tuple  # of frozensets, one per sink-removal wave
    kc: frozenset | None = None
    source_components: tuple | None = None  # indices into the SCC partition


def out0(g: DirectedGraph) -> DirectedGraph:
    """Drop every current sink."""
    return g.without(sinks(g))


def grounding_kernel(g: DirectedGraph) -> KernelDecomposition:
    """Iterate :func:`out0` to its fixpoint, recording each wave of sinks.

    Runs in O(|V| + |E|): out-degrees are decremented instead of rebuilding
    the induced subgraph at every wave.
    """
    outdeg = {v: g.out_degree(v) for v in g}
    wave = [v for v, d in outdeg.items() if d == 0]
    removed = set()
    waves = []
    while wave:
        waves.append(frozenset(wave))
        removed.update(wave)
        nxt = []
        for v in wave:
            for u in g.predecessors(v):
                if u in removed:
                    continue
                outdeg[u] -= 1
                if outdeg[u] == 0:
                    nxt.append(u)
        wave = nxt
    gk = frozenset(v for v in g if v not in removed)
    return KernelDecomposition(gk=gk, strip_order=tuple(waves))


def kernel_core(g: DirectedGraph, q: QuotientGraph | None = None) -> KernelDecomposition:
    """Grounding kernel plus the union of all source components of the quotient."""
    base = grounding_kernel(g)
    if q is None:
        q = quotient(g)
    src = tuple(sorted(sources(q.graph)))
    kc = frozenset().union(*(q.partition.components[i] for i in src))
    return KernelDecomposition(base.gk, base.strip_order, kc, src)


def gk_hierarchy(g: DirectedGraph, gk: frozenset | None = None) -> HierarchyLevels:
    if gk is None:
        gk = grounding_kernel(g).gk
    return acyclic_levels(g, gk, kind="gk")


def scc_hierarchy(
    g: DirectedGraph, kind: str = "scc", q: QuotientGraph | None = None
) -> HierarchyLevels:
    if q is None:
        q = quotient(g)
    comp_levels = acyclic_levels(q.graph, sources(q.graph))
    levels = {}
    for i, members in enumerate(q.partition.components):
        lvl = comp_levels[i]
        for v in members:
            levels[v] = lvl
    return HierarchyLevels(levels, kind)


def scc_hierarchy_within_gk(g: DirectedGraph, gk: frozenset | None = None) -> HierarchyLevels:
    if gk is None:
        gk = grounding_kernel(g).gk
    if not gk:
        raise EmptyKernelError("the grounding kernel is empty (graph is acyclic)")
    return scc_hierarchy(g.subgraph(gk), kind="scc_within_gk")


# --- combined report ------------------------------------------------------


@dataclass(frozen=True)
class KernelReport:
    decomposition: KernelDecomposition
    gk_levels: HierarchyLevels
    scc_levels: HierarchyLevels
    scc_within_gk_levels: HierarchyLevels | None

    def hierarchy(self, name: str) -> HierarchyLevels:
        table = {
            "gk": self.gk_levels,
            "scc": self.scc_levels,
            "scc-within-gk": self.scc_within_gk_levels,
            "scc_within_gk": self.scc_within_gk_levels,
        }
        h = table[name]
        if h is None:
            raise EmptyKernelError("the grounding kernel is empty (graph is acyclic)")
        return h

    def rows(self, sort: str = "word") -> list[dict]:
        dec = self.decomposition
        within = self.scc_within_gk_levels
        rows = [
            {
                "word": w,
                "L_gk": self.gk_levels[w],
                "L_scc": self.scc_levels[w],
                "L_scc_within_gk": within[w] if within is not None and w in within else None,
                "in_gk": w in dec.gk,
                "in_kc": w in dec.kc,
            }
            for w in sorted(self.gk_levels.levels)
        ]
        if sort == "gk":
            rows.sort(key=lambda r: (r["L_gk"], r["word"]))
        elif sort == "scc":
            rows.sort(key=lambda r: (r["L_scc"], r["word"]))
        elif sort != "word":
            raise ValueError(f"unknown sort key {sort!r}")
        return rows

    def to_json(self) -> str:
        dec = self.decomposition
        payload = {
            "gk": sorted(dec.gk),
            "kc": sorted(dec.kc),
            "kc_source_components": len(dec.source_components),
            "strip_order": [sorted(w) for w in dec.strip_order],
            "levels": {
                r["word"]: {k: r[k] for k in ("L_gk", "L_scc", "L_scc_within_gk")}
                for r in self.rows()
            },
        }
        return json.dumps(payload, indent=1, sort_keys=True) + "\n"

    def to_csv(self, sort: str = "word") -> str:
        buf = io.StringIO()
        fields = ["word", "L_gk", "L_scc", "L_scc_within_gk", "in_gk", "in_kc"]
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in self.rows(sort):
            r = dict(r)
            r["in_gk"] = int(r["in_gk"])
            r["in_kc"] = int(r["in_kc"])
            if r["L_scc_within_gk"] is None:
                r["L_scc_within_gk"] = ""
            w.writerow(r)
        return buf.getvalue()


def analyze(g: DirectedGraph) -> KernelReport:
    q = quotient(g)
    dec = kernel_core(g, q)
    within = scc_hierarchy_within_gk(g, dec.gk) if dec.gk else None
    return KernelReport(dec, gk_hierarchy(g, dec.gk), scc_hierarchy(g, q=q), within)


def _shape(g: DirectedGraph) -> dict:
    return {
        "vertices": g.n_vertices,
        "arcs": g.n_arcs,
        "density": density(g) if g.n_vertices else None,
    }


def feature_report(g: DirectedGraph, dec: KernelDecomposition | None = None) -> dict:
    """Size, arc count and density of the graph, its GK and its KC, plus SCC facts."""
    q = quotient(g)
    if dec is None or dec.kc is None:
        dec = kernel_core(g, q)
    p = q.partition
    return {
        "dictionary": _shape(g),
        "gk": _shape(g.subgraph(dec.gk)),
        "kc": _shape(g.subgraph(dec.kc)),
        "scc_count": len(p),
        "nontrivial_scc_count": len(p.nontrivial()),
        "largest_scc": len(p.largest()),
        "kc_source_components": len(dec.source_components),
        "strip_waves": len(dec.strip_order),
        "in_degree_histogram": degree_histogram(g, "in"),
        "out_degree_histogram": degree_histogram(g, "out"),
    }
