"""Print the ten-field verdict table and list cells that differ from the stored fixture."""

import argparse
import json
from pathlib import Path

from vrprimes.survey import Table, emit_table

FIXTURE = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "reference_table.json"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pmax", type=int, default=97)
    ap.add_argument("--json-out", type=Path, help="also write the computed table as JSON")
    args = ap.parse_args()

    table = emit_table(args.pmax)
    print(table.to_text())
    if args.json_out:
        args.json_out.write_text(json.dumps(table.to_json(), ensure_ascii=False, indent=1))

    reference = Table.from_json(json.loads(FIXTURE.read_text()))
    diffs = [(p, c) for p, c in reference.cells if p <= args.pmax and table.cells[p, c] != reference.cells[p, c]]
    print(f"{len(diffs)} cell(s) differ from {FIXTURE.name}")
    for p, c in diffs:
        print(f"  p={p:>2} |d|={c:>2}: computed {table.cells[p, c]!r:8} fixture {reference.cells[p, c]!r}")


if __name__ == "__main__":
    main()
