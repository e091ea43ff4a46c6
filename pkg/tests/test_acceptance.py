"""Acceptance gate: one test per criterion, summarised as PASS/FAIL lines.

Run alone with ``python tests/test_acceptance.py`` or as part of ``pytest``.
"""

import itertools
import json
import math
import random
import subprocess
import sys
import textwrap
import time

import numpy as np
import pytest
from scipy import stats as sp_stats

from conftest import FIXTURES, TOY_GK, TOY_KC, TOY_LEVELS, TOY_PATH, TOY_WAVES
from lexkernel import cli
from lexkernel.dictionary import associated_graph, dictionary_from_graph, dumps
from lexkernel.errors import BudgetExceededError
from lexkernel.graph import DirectedGraph, is_acyclic, quotient
from lexkernel.grounding import greedy_grounding_set, is_grounding_set, minimum_grounding_sets
from lexkernel.ingest import load_dictionary
from lexkernel.kernel import analyze
from lexkernel.norms import VARIABLES
from lexkernel.porter import porter_stem
from lexkernel.stats import ols_standardized, one_way_anova
from lexkernel.synth import (
    generate_dictionary_graph,
    random_dictionary,
    random_no_source_digraph,
    synthetic_norms,
)


def brute_force_mgs(g):
    vs = sorted(g.vertices)
    for k in range(len(vs) + 1):
        found = [frozenset(c) for c in itertools.combinations(vs, k) if is_acyclic(g.without(c))]
        if found:
            return k, sorted(found, key=sorted)


@pytest.mark.criterion(1, "toy dictionary golden suite")
def test_toy_golden(record_property):
    start = time.perf_counter()
    d, _ = load_dictionary(TOY_PATH.read_text(), stem=False)
    g = associated_graph(d)
    report = analyze(g)
    elapsed = time.perf_counter() - start
    record_property("runtime_s", f"{elapsed:.4f}")

    dec = report.decomposition
    assert len(d) == 14
    assert dec.gk == TOY_GK
    assert dec.kc == TOY_KC
    assert dec.strip_order == TOY_WAVES
    assert report.gk_levels.as_dict() == {w: lv[0] for w, lv in TOY_LEVELS.items()}
    assert report.scc_levels.as_dict() == {w: lv[1] for w, lv in TOY_LEVELS.items()}
    assert elapsed < 1.0


@pytest.mark.criterion(2, "exact minimum grounding sets")
def test_mgs_exactness(capsys, record_property):
    start = time.perf_counter()
    assert cli.main(["mgs", str(TOY_PATH), "--no-stem", "--exact"]) == 0
    toy = json.loads(capsys.readouterr().out)
    expected = sorted(
        sorted(c) for c in itertools.product(("bad", "good"), ("dark", "light"), ("no", "not"))
    )
    assert toy["minimum_size"] == 3
    assert toy["sets"] == expected

    rng = random.Random(2024)
    mismatches = 0
    for _ in range(200):
        n = rng.randint(2, 12)
        g = random_no_source_digraph(rng, n, rng.uniform(0.08, 0.35))
        res = minimum_grounding_sets(g)
        size, sets = brute_force_mgs(g)
        mismatches += (res.minimum_size, list(res.sets)) != (size, sets)
    elapsed = time.perf_counter() - start
    record_property("mismatches", mismatches)
    record_property("runtime_s", f"{elapsed:.1f}")
    assert mismatches == 0
    assert elapsed < 60


@pytest.mark.criterion(3, "containment properties on 500 random graphs")
def test_containment(record_property):
    rng = random.Random(500)
    violations = []
    for k in range(500):
        d = random_dictionary(rng, rng.randint(3, 25), max_definition=rng.randint(1, 4))
        g = associated_graph(d)
        report = analyze(g)
        dec = report.decomposition
        try:
            sets = list(minimum_grounding_sets(g, node_budget=200_000).sets)
        except BudgetExceededError as exc:
            sets = [exc.best_set]
        sets.append(greedy_grounding_set(g))
        checks = {
            "grounding set inside GK": all(s <= dec.gk and is_grounding_set(g, s) for s in sets),
            "quotient acyclic": is_acyclic(quotient(g).graph),
            "KC inside GK": dec.kc <= dec.gk,
            "SCC level 0 is KC": report.scc_levels.level_set(0) == dec.kc,
        }
        violations += [(k, name) for name, ok in checks.items() if not ok]
    record_property("violations", len(violations))
    assert violations == []


@pytest.mark.criterion(4, "level relation and its counterexample")
def test_level_relation(toy_graph):
    report = analyze(toy_graph)
    gk, scc = report.gk_levels, report.scc_levels
    outside = [u for u in toy_graph if u not in report.decomposition.kc]
    assert outside and all(scc[u] == gk[u] + 1 for u in outside)

    # KC {a,b} feeds c<->d which feeds e<->f; all six sit in the GK at level 0
    ladder = DirectedGraph(
        [], [("a", "b"), ("b", "a"), ("b", "c"), ("c", "d"), ("d", "c"),
             ("d", "e"), ("e", "f"), ("f", "e")]
    )
    lr = analyze(ladder)
    assert lr.decomposition.kc == {"a", "b"}
    assert lr.gk_levels.as_dict() == dict.fromkeys("abcdef", 0)
    assert lr.scc_levels.as_dict() == {"a": 0, "b": 0, "c": 1, "d": 1, "e": 2, "f": 2}
    broken = sorted(u for u in ladder if u not in lr.decomposition.kc and lr.scc_levels[u] != lr.gk_levels[u] + 1)
    assert broken == ["e", "f"]


def _normal_equations(y, x):
    zx = (x - x.mean(axis=0)) / x.std(axis=0, ddof=1)
    zy = (y - y.mean()) / y.std(ddof=1)
    design = np.column_stack([np.ones(len(y)), zx])
    inv = np.linalg.inv(design.T @ design)
    beta = inv @ design.T @ zy
    resid = zy - design @ beta
    df = len(y) - design.shape[1]
    t = beta / np.sqrt(resid @ resid / df * np.diag(inv))
    return beta[1:], t[1:], 2 * sp_stats.t.sf(np.abs(t[1:]), df)


def _fig2_shape_run(tmp_path):
    """Signal only at level 0: significant over 0-8, nothing over 1-8."""
    synth = generate_dictionary_graph(n_vertices=3000, n_arcs=30_000, seed=0, depth=8)
    report = analyze(synth.graph)
    norms = synthetic_norms(report.gk_levels, coverage=0.33, level0_effect=1.0, seed=0, balanced=True)
    dict_path = tmp_path / "synthetic.tsv"
    dict_path.write_text(dumps(dictionary_from_graph(synth.graph)))
    norms_path = tmp_path / "norms.csv"
    rows = ["word,aoa,c,i,bf,tlf"] + [
        w + "," + ",".join(repr(norms[w].get(v)) for v in VARIABLES) for w in norms
    ]
    norms_path.write_text("\n".join(rows) + "\n")
    out = tmp_path / "bundle"
    code = cli.main([
        "stats", str(dict_path), "--no-stem", "--norms", str(norms_path),
        "--hierarchy", "gk", "--exclude-level", "0", "--outdir", str(out),
    ])
    assert code == 0
    reg = json.loads((out / "stats.json").read_text())["hierarchies"]["gk"]["regression"]
    return reg["all_levels"], reg["excluding_0"]


@pytest.mark.criterion(5, "statistics oracles and level-0 signal shape")
def test_statistics(tmp_path, record_property):
    rng = np.random.default_rng(11)
    x = rng.normal(size=(50, 5)) * [100, 80, 90, 30, 200] + [400, 450, 450, 50, 300]
    y = np.clip(np.round(3 - 0.01 * (x[:, 0] - 400) + rng.normal(size=50)), 0, 8)
    res = ols_standardized(y, x, list(VARIABLES))
    beta, t, p = _normal_equations(y, x)
    worst = 0.0
    for j, v in enumerate(VARIABLES):
        c = res.coefficients[v]
        worst = max(worst, abs(c.beta - beta[j]), abs(c.t - t[j]), abs(c.p - p[j]))
    record_property("ols_max_abs_err", f"{worst:.1e}")
    assert worst < 1e-8

    for col, scale, shift in [(0, 1000.0, -5.0), (2, 0.001, 300.0), (4, 37.5, 1e4)]:
        x2 = x.copy()
        x2[:, col] = x2[:, col] * scale + shift
        moved = ols_standardized(y, x2, list(VARIABLES))
        for v in VARIABLES:
            a, b = res.coefficients[v], moved.coefficients[v]
            assert abs(a.beta - b.beta) < 1e-8 and abs(a.t - b.t) < 1e-8 and abs(a.p - b.p) < 1e-8

    groups = {lvl: list(rng.normal(5 + 0.4 * lvl, 1, n)) for lvl, n in [(0, 9), (1, 14), (2, 7), (3, 11)]}
    f, dfb, dfw, _ = one_way_anova(groups)
    allx = np.concatenate(list(groups.values()))
    ssb = sum(len(g) * (np.mean(g) - allx.mean()) ** 2 for g in groups.values())
    ssw = sum(((np.asarray(g) - np.mean(g)) ** 2).sum() for g in groups.values())
    f_ref = (ssb / dfb) / (ssw / dfw)
    record_property("anova_rel_err", f"{abs(f - f_ref) / f_ref:.1e}")
    assert math.isclose(f, f_ref, rel_tol=1e-8)

    full, restricted = _fig2_shape_run(tmp_path)
    assert full["levels"] == list(range(9)) and restricted["levels"] == list(range(1, 9))
    significant = {v for v, c in full["coefficients"].items() if c["stars"]}
    record_property("significant_0_8", ",".join(sorted(significant)))
    assert {"aoa", "i"} <= significant
    assert all(c["stars"] == "" for c in restricted["coefficients"].values())


SCALE_SCRIPT = textwrap.dedent(
    """
    import json, resource, sys, time
    start = time.perf_counter()
    from lexkernel.dictionary import associated_graph
    from lexkernel.ingest import load_dictionary
    from lexkernel.kernel import analyze, feature_report
    d, _ = load_dictionary(open(sys.argv[1]).read(), stem=False)
    g = associated_graph(d)
    report = analyze(g)
    features = feature_report(g, report.decomposition)
    report.to_csv(); report.to_json()
    elapsed = time.perf_counter() - start
    print(json.dumps({
        "seconds": elapsed,
        "max_rss_mb": resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024,
        "vertices": features["dictionary"]["vertices"],
        "arcs": features["dictionary"]["arcs"],
        "gk": features["gk"]["vertices"],
    }))
    """
)


@pytest.mark.criterion(6, "24k-vertex / 240k-arc pipeline under 10 s and 1 GB")
def test_scale(tmp_path, record_property):
    synth = generate_dictionary_graph(n_vertices=24_000, n_arcs=240_000, seed=0)
    path = tmp_path / "scale.tsv"
    path.write_text(dumps(dictionary_from_graph(synth.graph)))
    proc = subprocess.run(
        [sys.executable, "-c", SCALE_SCRIPT, str(path)], capture_output=True, text=True, check=True
    )
    m = json.loads(proc.stdout)
    record_property("seconds", f"{m['seconds']:.2f}")
    record_property("max_rss_mb", f"{m['max_rss_mb']:.0f}")
    assert (m["vertices"], m["arcs"]) == (24_000, 240_000)
    assert m["gk"] == len(synth.kernel)
    assert m["seconds"] < 10
    assert m["max_rss_mb"] < 1024


@pytest.mark.criterion(7, "Porter stemmer on the 1000-word vocabulary")
def test_porter_vocabulary(record_property):
    pairs = [
        line.split("\t")
        for line in (FIXTURES / "porter_vocabulary.tsv").read_text().splitlines()
        if line and not line.startswith("#")
    ]
    agree = sum(porter_stem(w) == s for w, s in pairs)
    record_property("agreement", f"{agree}/{len(pairs)}")
    assert len(pairs) == 1000
    assert agree == len(pairs)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
