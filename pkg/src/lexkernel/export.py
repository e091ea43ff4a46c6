"""Graphviz DOT and adjacency-CSV exchange formats."""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field

from .errors import ParseError
from .graph import DirectedGraph, QuotientGraph

_PLAIN_ID = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$|^-?(\.[0-9]+|[0-9]+(\.[0-9]*)?)$")
_KEYWORDS = {"node", "edge", "graph", "digraph", "subgraph", "strict"}


def dot_id(v) -> str:
    s = str(v)
    if _PLAIN_ID.match(s) and s.lower() not in _KEYWORDS:
        return s
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


@dataclass
class Cluster:
    name: str
    members: frozenset
    label: str | None = None
    children: list = field(default_factory=list)
    style: str | None = None


def _emit_cluster(c: Cluster, lines: list, placed: set, indent: str):
    lines.append(f"{indent}subgraph {dot_id('cluster_' + c.name)} {{")
    inner = indent + "  "
    if c.label is not None:
        lines.append(f"{inner}label={dot_id(c.label)};")
    if c.style:
        lines.append(f"{inner}{c.style}")
    for child in c.children:
        _emit_cluster(child, lines, placed, inner)
    for v in sorted(c.members - placed):
        lines.append(f"{inner}{dot_id(v)};")
        placed.add(v)
    lines.append(f"{indent}}}")


def to_dot(g: DirectedGraph, name: str = "G", clusters: list[Cluster] = ()) -> str:
    """One vertex per line, ``a -> b;`` arcs, clusters as nested subgraphs.

    Members of a child cluster are written inside the child only.
    """
    lines = [f"digraph {dot_id(name)} {{"]
    placed: set = set()
    for c in clusters:
        _emit_cluster(c, lines, placed, "  ")
    for v in g.sorted_vertices():
        if v not in placed:
            lines.append(f"  {dot_id(v)};")
    for u, v in g.sorted_arcs():
        lines.append(f"  {dot_id(u)} -> {dot_id(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def kernel_dot(g: DirectedGraph, gk, kc, name: str = "dictionary") -> str:
    """Dictionary graph with the kernel core nested inside the grounding kernel."""
    clusters = []
    if gk:
        kc_cluster = Cluster("kc", frozenset(kc), "KC", style="style=filled; color=lightblue3;")
        clusters.append(
            Cluster("gk", frozenset(gk), "GK", [kc_cluster] if kc else [], "style=filled; color=lightblue1;")
        )
    return to_dot(g, name, clusters)


def quotient_to_dot(g: DirectedGraph, q: QuotientGraph, name: str = "quotient") -> str:
    """Original vertices grouped by component; quotient arcs drawn between clusters."""
    lines = [f"digraph {dot_id(name)} {{", "  compound=true;"]
    comps = q.partition.components
    for i, members in enumerate(comps):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f"    label={dot_id('C' + str(i))};")
        for v in sorted(members):
            lines.append(f"    {dot_id(v)};")
        lines.append("  }")
    for a, b in q.graph.sorted_arcs():
        u, v = min(comps[a]), min(comps[b])
        lines.append(f"  {dot_id(u)} -> {dot_id(v)} [ltail=cluster_{a}, lhead=cluster_{b}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def adjacency_csv(g: DirectedGraph) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["source", "target"])
    for u, v in g.sorted_arcs():
        w.writerow([u, v])
    return buf.getvalue()


def read_adjacency_csv(text: str) -> DirectedGraph:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["source", "target"]:
        raise ParseError("expected header 'source,target'", 1)
    arcs = []
    for lineno, row in enumerate(reader, 2):
        if not row:
            continue
        if len(row) != 2:
            raise ParseError("expected two columns", lineno)
        arcs.append((row[0], row[1]))
    return DirectedGraph((), arcs)
