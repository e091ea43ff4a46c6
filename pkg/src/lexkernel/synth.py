"""Seeded generators for synthetic dictionary graphs and norm tables.

Used by the test-suite and the scripts in ``scripts/``; nothing in the
analysis path draws random numbers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .dictionary import Dictionary, Entry
from .graph import DirectedGraph, HierarchyLevels
from .norms import VARIABLES, NormRecord, NormTable


def word_label(i: int, width: int = 4) -> str:
    """Fixed-width base-26 label: 0 -> 'aaaa', 1 -> 'aaab'."""
    out = []
    for _ in range(width):
        i, r = divmod(i, 26)
        out.append(chr(97 + r))
    if i:
        raise ValueError("width too small for index")
    return "".join(reversed(out))


@dataclass(frozen=True)
class SyntheticDictionary:
    graph: DirectedGraph
    kernel: frozenset  # vertices planted to survive sink stripping
    core: frozenset  # planted kernel core (single source component)


def generate_dictionary_graph(
    n_vertices: int = 24_000,
    n_arcs: int = 240_000,
    kernel_fraction: float = 1725 / 19053,
    core_share: float = 1453 / 1725,
    kernel_arcs_per_vertex: float = 12.0,
    reciprocity: float = 0.3,
    seed: int = 0,
    depth: int | None = None,
) -> SyntheticDictionary:
    """Dictionary-like graph with a planted grounding kernel and kernel core.

    The kernel core is one strongly connected block (a ring plus random
    arcs, a share of them reciprocated). The rest of the kernel is a layer
    of 2-cycles fed from the core. Every remaining word is defined by kernel
    words and earlier non-kernel words only, so it is peeled off by sink
    removal. No loops and no sources are produced.

    With ``depth`` set, non-kernel words are spread over layers 1..depth and
    a word on layer k has at least one definer on layer k-1 (the kernel for
    k = 1) and none above, so its kernel-distance level is exactly k.
    """
    rng = random.Random(seed)
    width = 1
    while 26**width < n_vertices:
        width += 1
    labels = [word_label(i, width) for i in range(n_vertices)]
    rng.shuffle(labels)
    n_kernel = max(2, round(n_vertices * kernel_fraction))
    n_core = max(2, min(n_kernel, round(n_kernel * core_share)))
    core = labels[:n_core]
    outer = labels[n_core:n_kernel]
    rest = labels[n_kernel:]
    arcs: set[tuple[str, str]] = set()

    for a, b in zip(core, core[1:] + core[:1]):
        arcs.add((a, b))
    target_core = int(n_core * kernel_arcs_per_vertex)
    while len(arcs) < target_core:
        a, b = rng.sample(core, 2)
        arcs.add((a, b))
        if rng.random() < reciprocity:
            arcs.add((b, a))

    if len(outer) == 1:
        arcs.add((core[0], outer[0]))
        arcs.add((outer[0], core[0]))
        core.append(outer.pop())
    for j in range(0, len(outer) - 1, 2):
        group = outer[j : j + 2] if j + 3 != len(outer) else outer[j : j + 3]
        for a, b in zip(group, group[1:] + group[:1]):
            arcs.add((a, b))
        if len(group) == 2:
            arcs.add((group[1], group[0]))
        for v in group:
            for u in rng.sample(core, min(len(core), rng.randint(1, 3))):
                arcs.add((u, v))
        if j + 3 == len(outer):
            break

    kernel = core + outer
    remaining = max(0, n_arcs - len(arcs))
    per_word = remaining / max(1, len(rest))
    if depth is None:
        layer = [0] * len(rest)
    else:
        layer = sorted(rng.randint(1, depth) for _ in rest)
    start = {}  # first index of each layer in ``rest``
    for idx, k in enumerate(layer):
        start.setdefault(k, idx)

    def lower(idx):
        """Random defining word allowed for rest[idx] (kernel or an earlier layer)."""
        limit = start[layer[idx]] if depth is not None else idx
        if limit and rng.random() < 0.5:
            return rest[rng.randrange(limit)]
        return kernel[rng.randrange(len(kernel))]

    for idx, v in enumerate(rest):
        k = max(1, int(per_word) + (1 if rng.random() < per_word - int(per_word) else 0))
        if depth is not None and layer[idx] > 1 and layer[idx] - 1 in start:
            below = start[layer[idx] - 1]
            arcs.add((rest[rng.randrange(below, start[layer[idx]])], v))
            k -= 1
        for _ in range(k):
            arcs.add((lower(idx), v))
    # top up collisions with extra forward arcs so |E| is exact
    candidates = [j for j in range(len(rest)) if (start[layer[j]] if depth is not None else j) > 0]
    while len(arcs) < n_arcs and candidates:
        j = candidates[rng.randrange(len(candidates))]
        limit = start[layer[j]] if depth is not None else j
        arcs.add((rest[rng.randrange(limit)], rest[j]))
    return SyntheticDictionary(DirectedGraph(labels, arcs), frozenset(kernel), frozenset(core))


def random_no_source_digraph(rng: random.Random, n: int, p: float) -> DirectedGraph:
    """Loopless random digraph, patched so every vertex has a predecessor."""
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    has_pred = {v for _, v in arcs}
    for v in range(n):
        if v not in has_pred and n > 1:
            u = rng.choice([x for x in range(n) if x != v])
            arcs.append((u, v))
    return DirectedGraph(range(n), arcs)


def alpha_label(i: int) -> str:
    """0 -> a, 25 -> z, 26 -> aa: labels that survive the tokenizer."""
    out = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        out = chr(97 + r) + out
    return out


def random_dictionary(rng: random.Random, n: int, max_definition: int = 3) -> Dictionary:
    """Small random valid dictionary over alphabetic words a, b, c, ..."""
    words = [alpha_label(i) for i in range(n)]
    entries = []
    for w in words:
        others = [x for x in words if x != w]
        k = rng.randint(1, min(max_definition, len(others)))
        entries.append(Entry(w, rng.sample(others, k)))
    return Dictionary(entries)


def synthetic_norms(
    levels: HierarchyLevels,
    coverage: float = 0.33,
    level0_effect: float = 1.0,
    slope: float = 0.0,
    noise: float = 1.0,
    seed: int = 0,
    variables=VARIABLES,
    balanced: bool = False,
) -> NormTable:
    """Norms for a random ``coverage`` share of words.

    Each variable is ``base + noise*N(0,1)``. With ``balanced`` the noise is
    centred within every level, so per-level means coincide exactly and no
    level carries signal by chance. Then words at level 0 are shifted by
    ``level0_effect`` on AOA (down) and I (up), and every level adds
    ``-slope * level`` to C and I.
    """
    # own stream: an int seed shared with the graph generator would replay its draws
    rng = random.Random(f"synthetic-norms:{seed}")
    words = sorted(levels.levels)
    chosen = sorted(rng.sample(words, max(1, round(coverage * len(words)))))
    base = {"aoa": 400.0, "c": 450.0, "i": 450.0, "bf": 50.0, "tlf": 300.0}
    scale = {"aoa": 100.0, "c": 100.0, "i": 100.0, "bf": 30.0, "tlf": 200.0}
    draws = {w: {v: scale[v] * noise * rng.gauss(0.0, 1.0) for v in variables} for w in chosen}
    if balanced:
        by_level: dict[int, list[str]] = {}
        for w in chosen:
            by_level.setdefault(levels[w], []).append(w)
        for members in by_level.values():
            for v in variables:
                centre = sum(draws[w][v] for w in members) / len(members)
                for w in members:
                    draws[w][v] -= centre
    rows = {}
    for w in chosen:
        lvl = levels[w]
        vals = {}
        for v in variables:
            x = base[v] + draws[w][v]
            if lvl == 0 and v == "aoa":
                x -= scale[v] * level0_effect
            if lvl == 0 and v == "i":
                x += scale[v] * level0_effect
            if v in ("c", "i"):
                x -= scale[v] * slope * lvl
            vals[v] = x
        rows[w] = NormRecord(**vals)
    return NormTable(rows)
