"""Scenario files: JSON documents validated against the bundled schema."""

import json
from importlib import resources
from pathlib import Path

import jsonschema

from .. import hugoniot
from ..errors import ConfigurationError
from ..simulation.config import ScenarioConfig

BUNDLED = ("background", "default", "upstream")


def schema():
    return json.loads((resources.files("zndpiston") / "data" / "scenario.schema.json").read_text())


def resolve(path):
    """A filesystem path, or the name of a bundled scenario ("default", "default.json")."""
    p = Path(path)
    if p.exists():
        return p.read_text(), str(p)
    stem = p.name[:-5] if p.name.endswith(".json") else p.name
    if stem in BUNDLED and p.parent == Path("."):
        res = resources.files("zndpiston") / "data" / "scenarios" / f"{stem}.json"
        return res.read_text(), f"<bundled>/{stem}.json"
    raise ConfigurationError(f"no such scenario file: {path}", field="scenario")


def load_document(path):
    text, origin = resolve(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{origin} is not valid JSON: {exc}", field="scenario") from exc
    if not isinstance(doc, dict):
        raise ConfigurationError("top level must be an object", field="scenario")
    return doc, origin


def _validate(doc, required=None):
    sch = schema()
    if required is not None:
        sch = dict(sch, required=required)
    err = jsonschema.exceptions.best_match(jsonschema.Draft202012Validator(sch).iter_errors(doc))
    if err is not None:
        where = ".".join(str(p) for p in err.absolute_path) or "scenario"
        if err.validator == "required":
            where = err.message.split("'")[1]
        raise ConfigurationError(err.message, field=where)


def from_document(doc):
    _validate(doc)
    data = {k: v for k, v in doc.items() if k != "name"}
    return ScenarioConfig.from_dict(data)


def parse_scenario(path):
    """Validated ScenarioConfig from a JSON file (or bundled scenario name)."""
    doc, _ = load_document(path)
    return from_document(doc)


def parse_upstream(path):
    """UpstreamState from a file that needs only gamma, nu0 and p0."""
    doc, _ = load_document(path)
    _validate(doc, required=["gamma", "nu0", "p0"])
    return hugoniot.UpstreamState(doc["gamma"], doc["nu0"], doc["p0"])
