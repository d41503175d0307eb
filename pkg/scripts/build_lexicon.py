"""Regenerate src/semsim/data/lemmas_en.tsv.

Dev-only: needs ``pip install simplemma wordfreq``. The runtime package only
reads the generated TSV.

    python scripts/build_lexicon.py --top 40000
"""

import argparse
import re
from pathlib import Path

import simplemma
import wordfreq

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "src" / "semsim" / "data"
ALPHA = re.compile(r"[a-z]+")

# Must be present regardless of what the word list yields.
PINNED = {
    "bears": "bear",
    "running": "run",
    "wolves": "wolf",
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--top", type=int, default=40000)
    ap.add_argument("--min-length", type=int, default=2)
    ap.add_argument("--out", type=Path, default=DATA / "lemmas_en.tsv")
    args = ap.parse_args()

    stops = {
        w.strip()
        for w in (DATA / "stopwords_en.txt").read_text(encoding="utf-8").splitlines()
        if w.strip() and not w.startswith("#")
    }

    def usable(w):
        return ALPHA.fullmatch(w) and len(w) >= args.min_length and w not in stops

    raw = dict(PINNED)
    for word in wordfreq.top_n_list("en", args.top):
        if not usable(word) or word in raw:
            continue
        lemma = simplemma.lemmatize(word, lang="en").lower()
        if lemma != word and usable(lemma):
            raw[word] = lemma

    # Collapse chains so every lemma is a fixed point; drop cycles.
    lexicon = {}
    for surface, lemma in raw.items():
        seen = {surface}
        while lemma in raw and lemma not in seen:
            seen.add(lemma)
            lemma = raw[lemma]
        if lemma in raw or lemma == surface:
            continue
        lexicon[surface] = lemma

    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(f"# surface<TAB>lemma; {len(lexicon)} entries; "
                 f"built from the top {args.top} English words\n")
        for surface in sorted(lexicon):
            fh.write(f"{surface}\t{lexicon[surface]}\n")
    print(f"wrote {len(lexicon)} entries to {args.out}")


if __name__ == "__main__":
    main()
