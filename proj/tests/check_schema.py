"""Validates every scenario file, and the resolved config embedded in a report, against the schema."""
import json
import pathlib
import sys

import jsonschema

root = pathlib.Path(sys.argv[1])
schema = json.loads((root / "docs" / "scenario.schema.json").read_text())
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)
files = sorted((root / "scenarios").glob("*.json"))
assert files, "no scenario files"
for path in files:
    validator.validate(json.loads(path.read_text()))
    print(f"ok {path.name}")
for bad in ({"bogus": 1}, {"kernel": {"k": [0]}}, {"coefficients": {"preset": "other"}}):
    assert not validator.is_valid(bad), bad
for report in sys.argv[2:]:
    validator.validate(json.loads(pathlib.Path(report).read_text())["config"])
    print(f"ok config of {report}")
