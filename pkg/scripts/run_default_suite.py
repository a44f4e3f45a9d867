#!/usr/bin/env python3
"""Run the default verification suite and save the JSON report."""

import json
import sys
from pathlib import Path

from wignerlift.harness import TrialPlan, report_to_text, run_suite


def main() -> int:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("report.json")
    report = run_suite(TrialPlan(negative_controls=True))
    with open(out, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    print(report_to_text(report), end="")
    print(f"report written to {out}")
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
