"""
Driving everything from the command line
========================================

The ``tsq`` command wraps each operation and prints one JSON object.
``run`` gives the same result without a subprocess.
"""

import json

from tsquivers.cli import run

session = [
    ["inc", "--family", "bipartite:2,3", "--flow", "1,1,1,1,1,1"],
    ["max-unstable", "--family", "bipartite:2,3"],
    ["stable-trees", "--family", "complete:4", "--theta", "-2,1,-1,2"],
    ["same-chamber", "--family", "complete:4", "--theta", "2,-1,1,-2", "--theta2", "3,-1,-1,-1"],
    ["reflexive", "--family", "complete:4"],
    ["dot", "--family", "chain:1"],
    ["plot-data", "--family", "bipartite:2,3", "--kind", "polytope"],
]

for argv in session:
    result = run(argv)
    print("$ tsq", " ".join(argv))
    print(json.dumps(result.to_dict(), sort_keys=True)[:300], f"(exit {result.exit_code})")
    print()
