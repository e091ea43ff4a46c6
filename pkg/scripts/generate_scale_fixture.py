"""Write a synthetic dictionary-scale graph as a TSV dictionary and time the pipeline.

    python scripts/generate_scale_fixture.py --out /tmp/scale.tsv
    lexkernel features /tmp/scale.tsv --no-stem --outdir /tmp/scale_out
"""

import argparse
import json
import resource
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from lexkernel.dictionary import associated_graph, dictionary_from_graph, dumps
from lexkernel.ingest import load_dictionary
from lexkernel.kernel import analyze, feature_report
from lexkernel.synth import generate_dictionary_graph


@dataclass
class ScaleConfig:
    out: Path = Path("scale.tsv")
    vertices: int = 24_000
    arcs: int = 240_000
    seed: int = 0
    depth: int | None = None
    time_pipeline: bool = True


def run(cfg: ScaleConfig) -> dict:
    synth = generate_dictionary_graph(cfg.vertices, cfg.arcs, seed=cfg.seed, depth=cfg.depth)
    cfg.out.write_text(dumps(dictionary_from_graph(synth.graph)))
    summary = {"config": {k: str(v) for k, v in asdict(cfg).items()},
               "planted_kernel": len(synth.kernel), "planted_core": len(synth.core)}
    if cfg.time_pipeline:
        start = time.perf_counter()
        d, _ = load_dictionary(cfg.out.read_text(), stem=False)
        g = associated_graph(d)
        report = analyze(g)
        features = feature_report(g, report.decomposition)
        report.to_csv()
        summary["seconds"] = round(time.perf_counter() - start, 3)
        summary["max_rss_mb"] = round(resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024)
        summary["features"] = {k: features[k] for k in ("dictionary", "gk", "kc", "strip_waves")}
    return summary


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=ScaleConfig.out)
    ap.add_argument("--vertices", type=int, default=ScaleConfig.vertices)
    ap.add_argument("--arcs", type=int, default=ScaleConfig.arcs)
    ap.add_argument("--seed", type=int, default=ScaleConfig.seed)
    ap.add_argument("--depth", type=int, default=None)
    ap.add_argument("--no-timing", dest="time_pipeline", action="store_false")
    cfg = ScaleConfig(**vars(ap.parse_args()))
    print(json.dumps(run(cfg), indent=1))


if __name__ == "__main__":
    main()
