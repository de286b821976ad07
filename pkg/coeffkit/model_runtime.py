# coeffkit/model_runtime.py
from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import NamedTuple

from .complexes import ChainMap, ComplexError, GradedComplex
from .exterior import Multivector, parse_form
from .lie import LiePresentation, ce_complex, validate_presentation
from .schema import ModelError, ModelFile, parse_model
from .torus import WeightAssignment, check_weight_compatibility, invariant_complex

log = logging.getLogger(__name__)

# Shipped model files, searched when a relative reference is not found on disk
MODELS_DIR = Path(__file__).resolve().parent.parent / "data" / "models"

_TRAILING_DIGITS = re.compile(r"^(.*?)(\d+)$")


def load_model(path: str | Path) -> ModelFile:
    """Load a JSON model file from disk."""
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    try:
        return parse_model(text)
    except ModelError as e:
        raise ModelError(f"{path}: {e}") from e


def resolve_model(ref: str) -> ModelFile:
    """
    Resolve a model reference:
      example:KEY   registry entry (see coeffkit.registry)
      PATH          JSON file; ".json" is appended when missing, then the shipped
                    data/models directory is tried with the file name.
    """
    if ref.startswith("example:"):
        from .registry import builtin_example
        return builtin_example(ref.split(":", 1)[1]).model
    p = Path(ref)
    candidates = [p] if p.suffix == ".json" else [p, p.with_name(p.name + ".json")]
    candidates += [MODELS_DIR / c.name for c in candidates if c.suffix == ".json"]
    for c in candidates:
        if c.is_file():
            log.debug("model %s resolved to %s", ref, c)
            return load_model(c)
    raise ModelError(f"model not found: {ref}")


def model_presentation(model: ModelFile) -> LiePresentation:
    try:
        return LiePresentation.from_differentials(model.generators, model.differential)
    except ValueError as e:
        raise ModelError(f"{model.name}: {e}") from e


def model_weights(model: ModelFile) -> WeightAssignment:
    if model.weights is None:
        raise ModelError(f"{model.name}: model has no weights (needed for the invariant subcomplex)")
    return WeightAssignment.from_mapping(model.generators, model.weights)


class ModelComplex(NamedTuple):
    complex: GradedComplex
    full: GradedComplex
    inclusion: ChainMap | None
    presentation: LiePresentation


def model_complex(model: ModelFile, invariant: bool = False, max_gen: int | None = None) -> ModelComplex:
    """
    CE complex of the model, or its torus-invariant subcomplex when `invariant` is set.
    Rejects presentations failing Jacobi and weights incompatible with the bracket.
    """
    pres = model_presentation(model)
    report = validate_presentation(pres)
    if not report.ok:
        raise ModelError(f"{model.name}: " + "; ".join(report.lines(pres.names)))
    try:
        full = ce_complex(pres, max_gen, name=model.name)
    except ComplexError as e:
        raise ModelError(f"{model.name}: {e}") from e
    if not invariant:
        return ModelComplex(full, full, None, pres)
    W = model_weights(model)
    wr = check_weight_compatibility(pres, W)
    if not wr.ok:
        raise ModelError(f"{model.name}: " + "; ".join(wr.lines(pres.names)))
    sub, inc = invariant_complex(full, W, name=f"{model.name}^T")
    return ModelComplex(sub, full, inc, pres)


# ---------------- Products ----------------
def rename_generator(name: str, prefix: str) -> str:
    """x1 -> y1 under prefix y; names without trailing digits become prefix_name."""
    m = _TRAILING_DIGITS.match(name)
    if m:
        return f"{prefix}{m.group(2)}"
    return f"{prefix}_{name}"


def _shifted(form: Multivector, m: int, shift: int) -> Multivector:
    return Multivector(m, {b << shift: c for b, c in form.terms.items()})


def product_model(a: ModelFile, b: ModelFile, prefix_a: str = "x", prefix_b: str = "y",
                  symplectic: str | Multivector | None = None, name: str | None = None) -> ModelFile:
    """
    Direct sum of two presentations (no cross brackets) with renamed generators.
    Weights: a's characters padded with zeros on b's coordinates and vice versa
    (only when both factors carry weights). The symplectic form is taken from
    `symplectic` if given, else the sum of the factors' forms when both have one.
    """
    ga = [rename_generator(g, prefix_a) for g in a.generators]
    gb = [rename_generator(g, prefix_b) for g in b.generators]
    gens = tuple(ga + gb)
    if len(set(gens)) != len(gens):
        dup = sorted({g for g in gens if gens.count(g) > 1})
        raise ModelError(f"generator name collision after renaming: {dup}")
    m, shift = len(gens), a.m

    diff = {}
    for g, form in a.differential.items():
        diff[ga[a.generators.index(g)]] = _shifted(form, m, 0)
    for g, form in b.differential.items():
        diff[gb[b.generators.index(g)]] = _shifted(form, m, shift)

    weights = None
    if a.weights is not None and b.weights is not None:
        sa = next(iter(a.weights.values())).shape if a.weights else (0, 0)
        sb = next(iter(b.weights.values())).shape if b.weights else (0, 0)
        weights = {}
        for g, new in zip(a.generators, ga):
            weights[new] = a.weights[g].padded((0, 0), sb)
        for g, new in zip(b.generators, gb):
            weights[new] = b.weights[g].padded(sa, (0, 0))

    omega = None
    if isinstance(symplectic, str):
        omega = parse_form(symplectic, gens)
    elif isinstance(symplectic, Multivector):
        omega = symplectic
    elif a.symplectic is not None and b.symplectic is not None:
        omega = _shifted(a.symplectic, m, 0) + _shifted(b.symplectic, m, shift)

    return ModelFile(name or f"{a.name}x{b.name}", gens, diff, weights, omega)
