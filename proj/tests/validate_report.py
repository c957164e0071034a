# Runs the CLI, validates its JSON against the shipped schema and checks that
# two runs with the same settings are byte-identical.
import json
import subprocess
import sys

import jsonschema

cli, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)
jsonschema.Draft202012Validator.check_schema(schema)

runs = [
    ["classify", "--name", "cusp", "--json", "-"],
    ["classify", "--ode", "y", "--json", "-"],
    ["classify", "--name", "example4_k3", "--json", "-", "--seed", "7"],
    ["papercheck", "--suite", "fg-types", "--json", "-"],
    ["catalog", "--json", "-"],
]
for args in runs:
    a = subprocess.run([cli] + args, capture_output=True, check=True).stdout
    b = subprocess.run([cli] + args, capture_output=True, check=True).stdout
    assert a == b, f"output of {args} is not byte-stable"
    jsonschema.validate(json.loads(a), schema)
    print("ok", " ".join(args))

timed = json.loads(subprocess.run([cli, "classify", "--ode", "0", "--json", "-", "--timing"],
                                  capture_output=True, check=True).stdout)
jsonschema.validate(timed, schema)
assert "timing_seconds" in timed
