# coeffkit/registry.py
"""Built-in example models with golden result tables."""
from __future__ import annotations

import logging
from dataclasses import dataclass

from scipy.special import comb

from .coeffective import compare, les_verify, lefschetz_profile, validate_symplectic
from .complexes import cohomology
from .exterior import parse_form
from .model_runtime import model_complex, product_model
from .schema import ModelError, ModelFile
from .torus import Character

log = logging.getLogger(__name__)

FIXED_KEYS = ("h3", "h3z2", "ex52_product", "nilprod", "ex51_solv")
FAMILIES = ("abelian_<m>", "torus_<2n>")
NILPROD_OMEGA = "x1^y1 + x2^x3 + y2^y3"


@dataclass(frozen=True)
class Golden:
    """Expected numbers; `coeffective`/`tilde` list degrees n..2n."""
    invariant: bool
    betti: tuple[int, ...]
    dims: tuple[int, ...] | None = None
    coeffective: tuple[int, ...] | None = None
    tilde: tuple[int, ...] | None = None
    iso: tuple[int, ...] = ()
    non_iso: tuple[int, ...] = ()


@dataclass(frozen=True)
class RegistryEntry:
    key: str
    model: ModelFile
    expected: Golden | None = None


# ---------------- Models ----------------
def _h3(weighted: bool) -> ModelFile:
    gens = ("x1", "x2", "x3")
    weights = None
    if weighted:
        # Z/2 acting by (x1, x2, x3) -> (x1, -x2, -x3)
        weights = {"x1": Character((), (0,)), "x2": Character((), (1,)), "x3": Character((), (1,))}
    return ModelFile("h3z2" if weighted else "h3", gens,
                     {"x3": parse_form("-1 x1^x2", gens)}, weights, None)


def _ex51_solv() -> ModelFile:
    gens = tuple(f"e{i}" for i in range(1, 7))
    free = (0, 0, 1, 1, -1, -1)
    weights = {g: Character((a,), ()) for g, a in zip(gens, free)}
    return ModelFile("ex51_solv", gens, {}, weights, parse_form("e1^e2 + e3^e5 + e4^e6", gens))


def abelian_model(m: int) -> ModelFile:
    if m < 1:
        raise ModelError(f"abelian_<m> needs m >= 1, got {m}")
    return ModelFile(f"abelian_{m}", tuple(f"e{i}" for i in range(1, m + 1)))


def torus_model(m: int) -> ModelFile:
    if m < 2 or m % 2:
        raise ModelError(f"torus_<2n> needs an even dimension >= 2, got {m}")
    gens = tuple(f"e{i}" for i in range(1, m + 1))
    darboux = " + ".join(f"e{2 * i - 1}^e{2 * i}" for i in range(1, m // 2 + 1))
    return ModelFile(f"torus_{m}", gens, {}, None, parse_form(darboux, gens))


def _binomials(m: int) -> tuple[int, ...]:
    return tuple(int(comb(m, p, exact=True)) for p in range(m + 1))


def _family_suffix(key: str, prefix: str) -> int:
    tail = key[len(prefix):]
    if not tail.isdigit():
        raise ModelError(f"unknown example {key!r}; available: {available_keys()}")
    return int(tail)


def available_keys() -> list[str]:
    return list(FIXED_KEYS) + list(FAMILIES)


def builtin_example(key: str) -> RegistryEntry:
    if key == "h3":
        return RegistryEntry(key, _h3(False), Golden(False, (1, 2, 2, 1), dims=(1, 3, 3, 1)))
    if key == "h3z2":
        return RegistryEntry(key, _h3(True), Golden(True, (1, 1, 1, 1), dims=(1, 1, 1, 1)))
    if key == "ex52_product":
        model = product_model(_h3(True), _h3(True), "x", "y", NILPROD_OMEGA, name=key)
        seven = (1, 2, 3, 4, 3, 2, 1)
        return RegistryEntry(key, model, Golden(True, seven, dims=seven, coeffective=(2, 2, 2, 1),
                                                tilde=(2, 2, 2, 1), iso=(3, 4, 5, 6)))
    if key == "nilprod":
        model = product_model(_h3(False), _h3(False), "x", "y", NILPROD_OMEGA, name=key)
        return RegistryEntry(key, model, Golden(False, (1, 4, 8, 10, 8, 4, 1), dims=_binomials(6),
                                                iso=(4, 5, 6), non_iso=(3,)))
    if key == "ex51_solv":
        return RegistryEntry(key, _ex51_solv(), Golden(True, (1, 2, 5, 8, 5, 2, 1), dims=(1, 2, 5, 8, 5, 2, 1),
                                                       coeffective=(6, 4, 2, 1), tilde=(6, 4, 2, 1),
                                                       iso=(3, 4, 5, 6)))
    if key.startswith("abelian_"):
        m = _family_suffix(key, "abelian_")
        return RegistryEntry(key, abelian_model(m), Golden(False, _binomials(m), dims=_binomials(m)))
    if key.startswith("torus_"):
        m = _family_suffix(key, "torus_")
        model = torus_model(m)
        n = m // 2
        b = _binomials(m)
        coe = tuple(b[p] - (b[p + 2] if p + 2 <= m else 0) for p in range(n, m + 1))
        return RegistryEntry(key, model, Golden(False, b, dims=b, coeffective=coe, tilde=coe,
                                                iso=tuple(range(n, m + 1))))
    raise ModelError(f"unknown example {key!r}; available: {available_keys()}")


# ---------------- Golden verification ----------------
def verify_golden(entry: RegistryEntry, max_gen: int | None = None) -> list[str]:
    """Recompute every expected number; returns mismatch messages (empty when all match)."""
    exp = entry.expected
    if exp is None:
        return []
    mc = model_complex(entry.model, invariant=exp.invariant, max_gen=max_gen)
    C = mc.complex
    problems: list[str] = []

    def check(label, got, want):
        if want is not None and tuple(got) != tuple(want):
            problems.append(f"{entry.key}: {label} {tuple(got)} != expected {tuple(want)}")

    check("dims", C.dims(), exp.dims)
    betti = cohomology(C).betti
    check("betti", betti, exp.betti)
    if betti and betti[-1] == 1 and betti != betti[::-1]:
        problems.append(f"{entry.key}: Poincaré duality fails for betti {betti}")

    if entry.model.symplectic is not None:
        sf = validate_symplectic(C, entry.model.symplectic)
        profile = lefschetz_profile(mc.full, sf)
        if not profile.hard_lefschetz_shape():
            problems.append(f"{entry.key}: Lefschetz profile of the full complex is not injective/surjective around n")
        report = compare(C, sf)
        rows = report.rows[sf.n:]
        check("coeffective", [r.dim_coe for r in rows], exp.coeffective)
        check("tilde", [r.dim_tilde for r in rows], exp.tilde)
        for p in exp.iso:
            if report.verdict(p) != "iso":
                problems.append(f"{entry.key}: expected iso at p={p}, got {report.verdict(p)}")
        for p in exp.non_iso:
            if report.verdict(p) != "non-iso":
                problems.append(f"{entry.key}: expected non-iso at p={p}, got {report.verdict(p)}")
        if not les_verify(C, sf).ok:
            problems.append(f"{entry.key}: long exact sequence not exact")
    log.info("golden %s: %s", entry.key, "ok" if not problems else f"{len(problems)} mismatch(es)")
    return problems
