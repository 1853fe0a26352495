"""Validate docs/examples/*.json against docs/certificate.schema.json."""
import json
import pathlib
import sys

import jsonschema

root = pathlib.Path(__file__).resolve().parents[1]
schema = json.loads((root / "certificate.schema.json").read_text())
validator = jsonschema.Draft202012Validator(schema)
bad = 0
for path in sorted((root / "examples").glob("*.json")):
    errors = list(validator.iter_errors(json.loads(path.read_text())))
    for e in errors:
        print(f"{path.name}: {e.json_path}: {e.message}")
    bad += bool(errors)
    print(f"{path.name}: {'invalid' if errors else 'valid'}")
sys.exit(1 if bad else 0)
