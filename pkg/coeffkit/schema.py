# coeffkit/schema.py
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping

from .exterior import FormSyntaxError, Multivector, format_form, parse_form
from .torus import Character

# Model file keys
REQUIRED = ["name", "generators"]
OPTIONAL = ["differential", "weights", "symplectic"]
WEIGHT_KEYS = {"free", "sign"}


class ModelError(ValueError):
    """Model file does not conform to the schema."""


@dataclass(frozen=True)
class ModelFile:
    name: str
    generators: tuple[str, ...]
    differential: Mapping[str, Multivector] = field(default_factory=dict)
    weights: Mapping[str, Character] | None = None
    symplectic: Multivector | None = None

    @property
    def m(self) -> int:
        return len(self.generators)


def _form(text: Any, generators: tuple[str, ...], where: str) -> Multivector:
    if not isinstance(text, str):
        raise ModelError(f"{where}: form must be a string, got {type(text).__name__}")
    try:
        return parse_form(text, generators)
    except FormSyntaxError as e:
        raise ModelError(f"{where}: {e}") from e


def _character(raw: Any, where: str) -> Character:
    if not isinstance(raw, Mapping):
        raise ModelError(f"{where}: weight must be an object with 'free' and 'sign'")
    extra = sorted(set(raw) - WEIGHT_KEYS)
    if extra:
        raise ModelError(f"{where}: unknown weight keys {extra}")
    free, sign = raw.get("free", []), raw.get("sign", [])
    for part, label in ((free, "free"), (sign, "sign")):
        if not isinstance(part, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in part):
            raise ModelError(f"{where}: '{label}' must be a list of integers")
    try:
        return Character(tuple(free), tuple(sign))
    except ValueError as e:
        raise ModelError(f"{where}: {e}") from e


def model_from_dict(data: Any) -> ModelFile:
    """
    Structural validation of a decoded model object.
    Raises ModelError with a helpful message if invalid.
    """
    # 1) Required keys present, nothing unexpected
    if not isinstance(data, Mapping):
        raise ModelError("model must be a JSON object")
    missing = [k for k in REQUIRED if k not in data]
    if missing:
        raise ModelError(f"Missing required keys: {missing}")
    unknown = sorted(set(data) - set(REQUIRED) - set(OPTIONAL))
    if unknown:
        raise ModelError(f"Unknown keys: {unknown}")

    name = data["name"]
    if not isinstance(name, str) or not name:
        raise ModelError("'name' must be a non-empty string")

    # 2) Generators unique
    gens = data["generators"]
    if not isinstance(gens, list) or not all(isinstance(g, str) and g for g in gens):
        raise ModelError("'generators' must be a list of names")
    if len(set(gens)) != len(gens):
        dup = sorted({g for g in gens if gens.count(g) > 1})
        raise ModelError(f"Duplicate generators: {dup}")
    gens = tuple(gens)

    # 3) Differential: every key declared, every value a form over the generators
    raw_d = data.get("differential") or {}
    if not isinstance(raw_d, Mapping):
        raise ModelError("'differential' must be an object")
    diff = {}
    for g, text in raw_d.items():
        if g not in gens:
            raise ModelError(f"differential given for undeclared generator {g!r}")
        form = _form(text, gens, f"differential[{g}]")
        if not form.is_zero() and form.degree() != 2:
            raise ModelError(f"differential[{g}]: d{g} must be a 2-form")
        if not form.is_zero():
            diff[g] = form

    # 4) Weights: one per generator, uniform shape
    weights = None
    raw_w = data.get("weights")
    if raw_w is not None:
        if not isinstance(raw_w, Mapping):
            raise ModelError("'weights' must be an object")
        missing_w = [g for g in gens if g not in raw_w]
        if missing_w:
            raise ModelError(f"no weight for generator(s) {missing_w}")
        extra_w = sorted(set(raw_w) - set(gens))
        if extra_w:
            raise ModelError(f"weights for undeclared generator(s) {extra_w}")
        weights = {g: _character(raw_w[g], f"weights[{g}]") for g in gens}
        shapes = {c.shape for c in weights.values()}
        if len(shapes) > 1:
            raise ModelError(f"weights must share one (free, sign) shape, found {sorted(shapes)}")

    # 5) Symplectic form
    omega = None
    if data.get("symplectic") is not None:
        omega = _form(data["symplectic"], gens, "symplectic")

    return ModelFile(name, gens, diff, weights, omega)


def parse_model(text: str) -> ModelFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    return model_from_dict(data)


def model_to_dict(model: ModelFile) -> dict[str, Any]:
    out: dict[str, Any] = {"name": model.name, "generators": list(model.generators)}
    if model.differential:
        out["differential"] = {g: format_form(model.differential[g], model.generators)
                               for g in model.generators if g in model.differential}
    if model.weights is not None:
        out["weights"] = {g: {"free": list(model.weights[g].free), "sign": list(model.weights[g].sign)}
                          for g in model.generators}
    if model.symplectic is not None:
        out["symplectic"] = format_form(model.symplectic, model.generators)
    return out


def format_model(model: ModelFile) -> str:
    """Canonical JSON text; parse_model(format_model(m)) == m."""
    return json.dumps(model_to_dict(model), indent=2, ensure_ascii=False) + "\n"
