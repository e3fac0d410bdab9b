"""Run each CLI verb and validate its JSON report against the shipped schema."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def run(binary, args, expect):
    proc = subprocess.run([binary, *args], capture_output=True, text=True)
    if proc.returncode not in expect:
        sys.exit(f"{args}: exit {proc.returncode}, stderr: {proc.stderr}")
    return json.loads(proc.stdout)


def main():
    binary, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)

    with tempfile.TemporaryDirectory() as tmp:
        csv = Path(tmp) / "sample.csv"
        rows = ["x1,x2,y1"] + [f"{(i * 7) % 11},{(i * 3) % 5},{(i * 5) % 13}" for i in range(60)]
        csv.write_text("\n".join(rows) + "\n")
        reports = {
            "test": run(binary, ["test", "--input", str(csv), "--xdim", "2", "--reps", "40"], {0, 3}),
            "simulate": run(binary, ["simulate", "--scenario", "cross_lag", "--n", "64", "--reps", "3",
                                     "--boot-reps", "20", "--vectorize", "2", "--compare-vectorize"], {0}),
            "wbound-alpha": run(binary, ["wbound", "--p", "1", "--q", "3", "--d", "4", "--n", "1000"], {0}),
            "wbound-stationary": run(binary, ["wbound", "--variant", "stationary", "--p", "1", "--q", "3",
                                              "--d", "4", "--n", "1000", "--d-prime", "2"], {0}),
            "wbound-phi": run(binary, ["wbound", "--variant", "phi", "--p", "1", "--d", "4", "--c0", "2.5",
                                       "--n", "16", "--diam", "2"], {0}),
            "selftest": run(binary, ["selftest"], {0}),
        }

    failures = 0
    for name, report in reports.items():
        errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
        for err in errors:
            print(f"{name}: {'/'.join(map(str, err.path))}: {err.message}")
        failures += len(errors)
        print(f"{name}: {'ok' if not errors else 'INVALID'}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
