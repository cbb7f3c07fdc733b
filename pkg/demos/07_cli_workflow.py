"""The relcalc command line: problem files in, deterministic JSON reports out.

This script writes a problem file to a temporary directory, runs the CLI
in-process, and shows the exit-code convention (0 solved, 2 no solution,
1 operational error).
"""

import io
import json
import tempfile
from pathlib import Path

from relcalc.cli import main

PROBLEM = {
    "version": 1,
    "field": "complex",
    "matrices": {
        "A": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]],
        "W": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]],
    },
    "vectors": {"b": [[1, 0], [1, 0]]},
    "relations": {"A": {"matrix": "A"}},
    "weights": {"W": {"matrix": "W", "kind": "psd"}},
    "problem": {"relation": "A", "weight": "W", "b": "b"},
}

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "problem.json"
    path.write_text(json.dumps(PROBLEM, indent=2))

    buf = io.BytesIO()
    code = main(["lss-solve", str(path), "--verify"], out=buf)
    report = json.loads(buf.getvalue())
    print("exit code:", code)
    print("status:", report["status"])
    print("min value:", report["result"]["min_value"])
    print("oracle delta:", report["diagnostics"]["oracle_delta"])

    # the same run again is byte-identical: reports are deterministic
    again = io.BytesIO()
    main(["lss-solve", str(path), "--verify"], out=again)
    print("byte-identical reruns:", again.getvalue() == buf.getvalue())

    # a text rendering for humans
    text = io.BytesIO()
    main(["lss-solve", str(path), "--format", "text"], out=text)
    print("\ntext format, first lines:")
    print("\n".join(text.getvalue().decode().splitlines()[:4]))
