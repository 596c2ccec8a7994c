#!/usr/bin/env python3
"""Fail if docs/concordance.csv is missing an operation, names one that does not
exist in the headers, or cites a test that does not exist."""
import csv
import re
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

REQUIRED = """
damping_transform permittivity refractive_index surface_reflection fd_weight
slab_coefficients cavity_coefficients mode_eval green_function
weight weight_asymptotics_check integrate_semiinfinite matsubara_sum
txx_bath_integrand txx_ic_integrand pressure_difference
force_ic force_bath force_total force_dissipationless force_delta_squeezed
lifshitz_matsubara halfspace_forces cmd_force cmd_sweep_sigma cmd_verify
""".split()

COLUMNS = ["operation", "module", "header", "formula", "anchor", "verified_by"]


def main() -> int:
    errors = []
    with open(ROOT / "docs" / "concordance.csv", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != COLUMNS:
            print(f"bad header: {reader.fieldnames}")
            return 1
        rows = list(reader)

    tests = "\n".join(p.read_text() for p in (ROOT / "tests").rglob("*") if p.is_file())
    tests += (ROOT / "CMakeLists.txt").read_text()
    seen = set()
    for i, row in enumerate(rows, start=2):
        op = row["operation"]
        if op in seen:
            errors.append(f"line {i}: {op} listed twice")
        seen.add(op)
        for col in COLUMNS:
            if not (row[col] or "").strip():
                errors.append(f"line {i}: {op}: empty {col}")
        header = ROOT / row["header"]
        if not header.is_file():
            errors.append(f"line {i}: {op}: no such header {row['header']}")
        elif not re.search(rf"\b{re.escape(op)}\s*\(", header.read_text()):
            errors.append(f"line {i}: {op} is not declared in {row['header']}")
        ref = row["verified_by"]
        m = re.fullmatch(r"criterion (\d)", ref)
        if m:
            if f"c{m.group(1)}()" not in tests:
                errors.append(f"line {i}: {op}: no acceptance check {ref}")
        elif ref.startswith("cli_"):
            if f"cli_test({ref[4:]} " not in tests:
                errors.append(f"line {i}: {op}: no CLI test {ref}")
        elif f'TEST_CASE("{ref}")' not in tests:
            errors.append(f"line {i}: {op}: no test case named '{ref}'")

    for op in REQUIRED:
        if op not in seen:
            errors.append(f"missing operation: {op}")

    for e in errors:
        print(e)
    print(f"{len(rows)} rows, {len(errors)} problems")
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
