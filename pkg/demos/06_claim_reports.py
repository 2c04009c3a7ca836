"""Run every built-in claim check and print its verdict.

Same machinery as `curved-nbody verify`, driven as a library.  Each
check scans its own default grid and returns a report whose evidence is
plain JSON-ready data; the acceptance test suite pins the tolerances.
"""

import json

from curved_nbody import run_theorem
from curved_nbody.verify import CHECKS

for key in sorted(CHECKS):
    report = run_theorem(key)
    print(report.summary())
    for line in report.notes.split("; "):
        print(f"    {line}")
    if key == "T2":
        worst = max(report.evidence["cases"], key=lambda c: c["max_inner_drift"])
        print(f"    (worst case sigma={worst['sigma']} r={worst['radius']}: "
              f"ran {worst['periods_run']:.2f} periods, "
              f"termination {worst['termination']})")
    print()

# reports serialize cleanly, which is what the CLI writes to disk
sample = run_theorem("T1").to_dict()
print("a report is plain data:")
print(json.dumps({k: sample[k] for k in ("theorem_id", "status")}, indent=2))
