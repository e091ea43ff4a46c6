"""Freeze the Porter conformance fixture.

Harvests English words from locally installed prose (Python stdlib sources
and /usr/share/doc), samples 1000 of them with a fixed seed, always keeping
the worked examples from Porter's 1980 article, and records the stem an
independent implementation (NLTK, ORIGINAL_ALGORITHM mode) gives for each.
Words of one or two letters are left as they are, as in Porter's own
reference implementation (NLTK's original mode would strip "is" to "i").

    python scripts/make_porter_fixture.py > tests/fixtures/porter_vocabulary.tsv

NLTK is only needed to run this script, never at test time.
"""

import argparse
import gzip
import random
import re
import sys
import sysconfig
from collections import Counter
from pathlib import Path

from nltk.stem.porter import PorterStemmer

# Worked examples from Porter (1980), one per rule family.
ARTICLE_WORDS = """
caresses ponies ties caress cats feed agreed plastered bled motoring sing
conflated troubled sized hopping tanned falling hissing fizzed failing filing
happy sky relational conditional rational valenci hesitanci digitizer
conformabli radicalli differentli vileli analogousli vietnamization
predication operator feudalism decisiveness hopefulness callousness formaliti
sensitiviti sensibiliti triplicate formative formalize electriciti electrical
hopeful goodness revival allowance inference airliner gyroscopic adjustable
defensible irritant replacement adjustment dependent adoption homologou
communism activate angulariti homologous effective bowdlerize probate rate
cease controll roll generalizations oscillators
""".split()

WORD = re.compile(r"\b[a-z]{2,}\b")


def harvest(limit_files=4000):
    counts = Counter()
    roots = [Path(sysconfig.get_paths()["stdlib"]), Path("/usr/share/doc")]
    seen = 0
    for root in roots:
        for path in sorted(root.rglob("*")):
            if seen >= limit_files:
                break
            if path.suffix not in {".py", ".txt", ".gz", ""} or not path.is_file():
                continue
            try:
                raw = path.read_bytes()
                if path.suffix == ".gz":
                    raw = gzip.decompress(raw)
                text = raw.decode("utf-8", errors="ignore")
            except (OSError, EOFError, gzip.BadGzipFile):
                continue
            seen += 1
            counts.update(WORD.findall(text))
    return counts


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=1980)
    ap.add_argument("--min-count", type=int, default=3)
    args = ap.parse_args(argv)

    counts = harvest()
    pool = sorted(w for w, c in counts.items() if c >= args.min_count and w not in ARTICLE_WORDS)
    rng = random.Random(args.seed)
    words = sorted(set(ARTICLE_WORDS) | set(rng.sample(pool, args.size - len(set(ARTICLE_WORDS)))))
    stemmer = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)
    out = sys.stdout
    out.write("# word\tstem  (oracle: NLTK PorterStemmer ORIGINAL_ALGORITHM, len<=2 unchanged)\n")
    for w in words:
        out.write(f"{w}\t{w if len(w) <= 2 else stemmer.stem(w)}\n")


if __name__ == "__main__":
    main()
