# coeffkit/fuzz.py
"""Seeded random nilpotent models and the invariant suite run against each of them."""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import config
from .coeffective import (
    LefschetzError, SymplecticError, SymplecticForm, coeffective_complex, compare, les_verify,
    lefschetz_profile, validate_symplectic,
)
from .complexes import ComplexError, GradedComplex, InternalInconsistency
from .exterior import Multivector, check_ambient
from .lie import LiePresentation, ce_complex, validate_presentation
from .linalg import rank_kernel_image
from .torus import Character, WeightAssignment, check_weight_compatibility, invariant_complex

log = logging.getLogger(__name__)


@dataclass
class IterationResult:
    index: int
    status: str  # "tested" | "skipped"
    failures: list[str] = field(default_factory=list)
    weights_checked: bool = False


@dataclass
class FuzzReport:
    dim: int
    count: int
    seed: int
    tested: int = 0
    skipped: int = 0
    weights_checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        return (f"fuzz dim={self.dim} count={self.count} seed={self.seed}: tested {self.tested}, "
                f"skipped {self.skipped}, weights checked {self.weights_checked}, "
                f"failures {len(self.failures)}")


# ---------------- Generators ----------------
def random_nilpotent(dim: int, rng: np.random.Generator, coeff_range: int, density: float) -> LiePresentation:
    """[e_i, e_j] ∈ span{e_k : k > j} for i < j, so the algebra is nilpotent."""
    consts = {}
    for k in range(dim):
        for j in range(k):
            for i in range(j):
                if rng.random() < density:
                    c = int(rng.integers(-coeff_range, coeff_range + 1))
                    if c:
                        consts[(i, j, k)] = Fraction(c)
    return LiePresentation(tuple(f"e{i + 1}" for i in range(dim)), consts)


def random_sign_weights(pres: LiePresentation, rng: np.random.Generator, s: int) -> WeightAssignment | None:
    """Sign characters built along the triangular pattern; None when the brackets force a conflict."""
    chars: list[Character] = []
    for k in range(pres.m):
        forced = {chars[i] + chars[j] for (i, j, kk) in pres.constants if kk == k}
        if len(forced) > 1:
            return None
        if forced:
            chars.append(forced.pop())
        else:
            chars.append(Character((), tuple(int(b) for b in rng.integers(0, 2, size=s))))
    return WeightAssignment(pres.names, tuple(chars))


def search_omega(C: GradedComplex, n: int, rng: np.random.Generator, attempts: int,
                 coeff_range: int) -> Multivector | None:
    """Random integer combination of closed 2-forms with ω^n ≠ 0, or None within the budget."""
    closed = rank_kernel_image(C.differential(2)).kernel if C.dim(2) else []
    if not closed:
        return None
    m = len(C.generators)
    for _ in range(attempts):
        coeffs = rng.integers(-coeff_range, coeff_range + 1, size=len(closed))
        if not coeffs.any():
            continue
        v = [Fraction(0)] * C.dim(2)
        for c, z in zip(coeffs, closed):
            if c:
                for i, x in enumerate(z):
                    v[i] += int(c) * x
        omega = Multivector.from_vector(m, C.labels[2], v)
        if not omega.power(n).is_zero():
            return omega
    return None


# ---------------- Invariant suite ----------------
def check_model(C: GradedComplex, sf: SymplecticForm, full: bool = True) -> list[str]:
    """Lefschetz shape, coeffective vanishing below n, the LES identity and exactness."""
    failures = []
    profile = lefschetz_profile(C, sf)
    if full and not profile.hard_lefschetz_shape():
        failures.append(f"{C.name}: Lefschetz profile {profile.injective}/{profile.surjective}")
    if not profile.surjective_from(sf.n - 1):
        failures.append(f"{C.name}: ω∧ not surjective from degree n-1")
        return failures
    K, _ = coeffective_complex(C, sf)
    low = [p for p in range(sf.n) if K.dim(p)]
    if low:
        failures.append(f"{C.name}: coeffective complex nonzero in degrees {low}")
    compare(C, sf)
    if not les_verify(C, sf).ok:
        failures.append(f"{C.name}: long exact sequence not exact")
    return failures


def run_iteration(index: int, dim: int, seed_seq: np.random.SeedSequence,
                  settings: config.Settings) -> IterationResult:
    rng = np.random.default_rng(seed_seq)
    n = dim // 2
    budget = settings.fuzz_omega_attempts
    pres = None
    for _ in range(budget):
        cand = random_nilpotent(dim, rng, settings.fuzz_coeff_range, settings.fuzz_density)
        if validate_presentation(cand).ok:
            pres = cand
            break
    if pres is None:
        return IterationResult(index, "skipped")
    name = f"fuzz{index}"
    C = ce_complex(pres, settings.max_generators, name=name)
    omega = search_omega(C, n, rng, budget, settings.fuzz_coeff_range)
    if omega is None:
        return IterationResult(index, "skipped")
    result = IterationResult(index, "tested")
    try:
        sf = validate_symplectic(C, omega)
        result.failures += check_model(C, sf)
        for _ in range(settings.fuzz_weight_attempts):
            W = random_sign_weights(pres, rng, settings.fuzz_sign_characters)
            if W is None or not check_weight_compatibility(pres, W).ok:
                continue
            inv, _ = invariant_complex(C, W, name=f"{name}^T")
            inv_omega = search_omega(inv, n, rng, budget, settings.fuzz_coeff_range)
            if inv_omega is None:
                continue
            result.failures += check_model(inv, validate_symplectic(inv, inv_omega), full=False)
            result.weights_checked = True
            break
    except (InternalInconsistency, ComplexError, LefschetzError, SymplecticError) as e:
        result.failures.append(f"{name}: {type(e).__name__}: {e}")
    if result.failures:
        log.warning("fuzz iteration %d failed: %s", index, result.failures)
    return result


def fuzz(dim: int, count: int, seed: int, settings: config.Settings | None = None,
         jobs: int = 1) -> FuzzReport:
    """Run `count` seeded iterations; the report is identical for any `jobs`."""
    settings = settings or config.Settings()
    if dim < 2 or dim % 2:
        raise ValueError(f"fuzz dimension must be even and >= 2, got {dim}")
    check_ambient(dim, settings.max_generators)
    children = np.random.SeedSequence(seed).spawn(count)
    args = [(i, dim, s, settings) for i, s in enumerate(children)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_iteration, *zip(*args))) if args else []
    else:
        results = [run_iteration(*a) for a in args]
    report = FuzzReport(dim, count, seed)
    for r in sorted(results, key=lambda r: r.index):
        if r.status == "tested":
            report.tested += 1
        else:
            report.skipped += 1
        report.weights_checked += int(r.weights_checked)
        report.failures += r.failures
    log.info(report.summary())
    return report
