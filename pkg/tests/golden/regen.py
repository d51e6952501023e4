"""Regenerate the golden CLI reports: ``python3 tests/golden/regen.py``."""

from __future__ import annotations

import io
import json
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent


def expand(argv):
    from superw22 import data_path

    subst = {"{inputs}": str(HERE / "inputs"), "{specs}": str(data_path("involutions"))}
    out = []
    for a in argv:
        for k, v in subst.items():
            a = a.replace(k, v)
        out.append(a)
    return out


def run_case(case):
    from superw22.cli import run

    out, err = io.StringIO(), io.StringIO()
    code = run(expand(case["argv"]), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def main():
    cases = json.loads((HERE / "matrix.json").read_text())
    for case in cases:
        code, out, _ = run_case(case)
        if code != case["exit"]:
            sys.exit(f"{case['name']}: exit {code}, expected {case['exit']}")
        (HERE / f"{case['name']}.json").write_text(out)
        print(case["name"], code)


if __name__ == "__main__":
    main()
