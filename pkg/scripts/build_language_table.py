"""Regenerate the shipped English frequency table.

Unigram percentages are Lewand's published letter frequencies, with the
'e' entry nudged up by 0.001 so the column sums to exactly 100. The
bigram grid is counted from the shipped corpus, then two cells are pinned
to their commonly quoted reference values (th = 1.52, ld = 0.02) and the
remaining cells are rescaled so the grid also sums to exactly 100.
Decimal arithmetic keeps the written values exact to 9 places.

Usage: python scripts/build_language_table.py
"""

from decimal import Decimal, ROUND_HALF_EVEN
from pathlib import Path
import string
import sys

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
from sdeslab import ngrams  # noqa: E402

LEWAND = {
    "a": "8.167", "b": "1.492", "c": "2.782", "d": "4.253", "e": "12.703",
    "f": "2.228", "g": "2.015", "h": "6.094", "i": "6.966", "j": "0.153",
    "k": "0.772", "l": "4.025", "m": "2.406", "n": "6.749", "o": "7.507",
    "p": "1.929", "q": "0.095", "r": "5.987", "s": "6.327", "t": "9.056",
    "u": "2.758", "v": "0.978", "w": "2.360", "x": "0.150", "y": "1.974",
    "z": "0.074",
}

PINNED = {"th": Decimal("1.52"), "ld": Decimal("0.02")}

QUANT = Decimal("0.000000001")  # 9 decimal places


def main():
    root = Path(__file__).resolve().parents[1] / "src" / "sdeslab" / "data"
    assert sum(Decimal(v) for v in LEWAND.values()) == 100

    stats = ngrams.compute_stats((root / "corpus.txt").read_bytes())
    letters = string.ascii_lowercase
    counted = {
        letters[i] + letters[j]: Decimal(repr(float(stats.bigram[i][j])))
        for i in range(26)
        for j in range(26)
        if stats.bigram[i][j] > 0
    }

    free_total = sum(v for k, v in counted.items() if k not in PINNED)
    scale = (100 - sum(PINNED.values())) / free_total
    table = {}
    for gram, value in counted.items():
        table[gram] = (value * scale).quantize(QUANT, ROUND_HALF_EVEN)
    table.update(PINNED)

    # push rounding residue into the largest unpinned cell
    residue = 100 - sum(table.values())
    biggest = max((g for g in table if g not in PINNED), key=lambda g: table[g])
    table[biggest] += residue
    assert sum(table.values()) == 100

    out = root / "english_ngrams.txt"
    with open(out, "w") as fh:
        fh.write("# English letter and letter-pair frequencies, in percent.\n")
        fh.write("# Unigrams: Lewand's table, e +0.001 so the column sums to 100.\n")
        fh.write("# Bigrams: counted from corpus.txt; th and ld pinned to their\n")
        fh.write("# commonly quoted values; the rest rescaled to sum to 100.\n")
        for letter in letters:
            fh.write(f"{letter} {LEWAND[letter]}\n")
        for gram in sorted(table):
            fh.write(f"{gram} {table[gram].normalize()}\n")
    print(f"wrote {out} ({len(table)} bigram entries)")


if __name__ == "__main__":
    main()
