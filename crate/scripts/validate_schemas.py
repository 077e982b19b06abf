#!/usr/bin/env python3
"""Validate the sample inputs and fresh hstarcat reports against schema/v1."""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

ROOT = pathlib.Path(__file__).resolve().parent.parent
SCHEMAS = ROOT / "schema" / "v1"
EXAMPLES = ROOT / "crates" / "hstarcat" / "examples"
BIN = ROOT / "target" / "debug" / "hstarcat"

KIND = {
    "fusion": ["hilb", "z2", "z3", "fibonacci", "ising", "matrix2_hilb", "fibonacci_corrupt"],
    "algebra": ["ising_qsystem", "z2_group", "z2_group_unnormalized", "fibonacci_pair", "matrix2_pair", "z3_truncated"],
    "hstar": ["multimatrix", "nontracial"],
    "presentation": ["matrix2_presentation", "fibonacci_monads", "ising_monads"],
    "split-monad": ["z2_split", "ising_induced"],
}

REPORTS = [
    ["fusion", "validate", "fibonacci.json"],
    ["fusion", "validate", "fibonacci_corrupt.json"],
    ["alg", "verify", "z3_truncated.json"],
    ["hstar", "gns", "multimatrix.json"],
    ["fusion", "validate", "missing.json"],
]


def main() -> int:
    schemas = {p.name: json.loads(p.read_text()) for p in SCHEMAS.glob("*.schema.json")}
    registry = Registry().with_resources(
        (s["$id"], Resource.from_contents(s)) for s in schemas.values()
    )
    failures = 0

    def check(instance, schema_name, what):
        nonlocal failures
        schema = schemas[schema_name]
        validator = jsonschema.Draft202012Validator(schema, registry=registry)
        errors = list(validator.iter_errors(instance))
        status = "ok" if not errors else f"FAIL: {errors[0].message}"
        failures += bool(errors)
        print(f"{what:40s} {schema_name:28s} {status}")

    for kind, names in KIND.items():
        for name in names:
            check(json.loads((EXAMPLES / f"{name}.json").read_text()), f"{kind}.schema.json", name)

    if BIN.exists():
        for args in REPORTS:
            cmd = [str(BIN), *args[:-1], str(EXAMPLES / args[-1])]
            out = subprocess.run(cmd, capture_output=True, text=True, cwd=ROOT)
            check(json.loads(out.stdout), "report.schema.json", " ".join(args))
    else:
        print(f"skipping reports: {BIN} not built")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
