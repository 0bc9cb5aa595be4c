"""Assemble src/sentlang/data/corpus/desk.tsv from the per-language sources."""
from pathlib import Path

HERE = Path(__file__).parent
LANGS = ["fr", "en", "es", "de"]
out = [
    "# Desk-scale evaluation corpus: <lang>\\t<sentence>.",
    "# Original prose written for this package (narrative, scientific, email",
    "# and short fragments); released into the public domain (CC0 1.0).",
    "# The four languages cover the same topics but are not literal translations.",
]
for code in LANGS:
    out.append(f"# --- {code}: running text")
    out += [f"{code}\t{l.strip()}" for l in open(HERE / f"{code}.txt", encoding="utf-8") if l.strip()]
for code in LANGS:
    out.append(f"# --- {code}: units found inside quotes/parentheses in running text "
               "(citations, references, names, titles), delimiters removed")
    out += [f"{code}\t{l.strip()}" for l in open(HERE / f"{code}_seg.txt", encoding="utf-8") if l.strip()]
dest = HERE.parent / "src/sentlang/data/corpus/desk.tsv"
dest.write_text("\n".join(out) + "\n", encoding="utf-8")
print(dest, len([l for l in out if not l.startswith("#")]))
