"""Regenerate the bundled corpus under src/heckeraise/corpus/v1.

Run from the repository root:  python3 tools/build_corpus.py
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from heckeraise.cosetmodel import DoubleCosetModel  # noqa: E402
from heckeraise.generators import search_raising_corpus  # noqa: E402

OUT = ROOT / "src" / "heckeraise" / "corpus" / "v1"
SEED = 7


def dump(path: Path, doc) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def tiny(w_j1: int = 1) -> DoubleCosetModel:
    return DoubleCosetModel(
        ("a",), ("b",), ("1", "2"),
        {"1": "a", "2": "a"}, {"1": "b", "2": "b"},
        {"a": 1}, {"b": 1}, {"1": w_j1, "2": 1},
    )


def main() -> None:
    dump(OUT / "tiny.json", tiny().to_dict())
    broken = tiny().to_dict()
    broken["w_j"]["1"] = "2"
    dump(OUT / "broken_mass.json", broken)
    manifest = []
    for entry in search_raising_corpus(SEED):
        name = entry["name"]
        dump(OUT / "raising" / f"{name}.json", entry["model"].to_dict())
        (OUT / "raising" / f"{name}.cert.json").write_text(entry["certificate"].to_json(), encoding="utf-8")
        manifest.append(
            {
                "name": name,
                "model": f"{name}.json",
                "certificate": f"{name}.cert.json",
                "ell": str(entry["ell"]),
                "character": str(entry["character"]),
                "n": str(entry["certificate"].valuation_bound),
            }
        )
    dump(OUT / "raising" / "manifest.json", {"seed": str(SEED), "entries": manifest})


if __name__ == "__main__":
    main()
