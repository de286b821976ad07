# coeffkit/lie.py
"""Lie algebra presentations by structure constants and their Chevalley-Eilenberg complex.

Sign convention: dα(X, Y) = -α([X, Y]), so for [e_i, e_j] = Σ_k c^k_ij e_k the dual basis
satisfies d x_k = -Σ_{i<j} c^k_ij x_i∧x_j (e.g. [e1, e2] = e3 gives d x3 = -x1∧x2).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from . import config
from .complexes import GradedComplex
from .exterior import (
    Blade, Multivector, blade_from_indices, blade_indices, blades_of_degree, check_ambient, wedge,
)
from .linalg import RatMatrix, as_rational

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LiePresentation:
    """Generator names (dual basis x_1..x_m) and c^k_ij for i < j, keyed (i, j, k), 0-based."""
    names: tuple[str, ...]
    constants: Mapping[tuple[int, int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"generator names must be unique: {list(self.names)}")
        m = len(self.names)
        clean = {}
        for (i, j, k), c in self.constants.items():
            if not (0 <= i < j < m and 0 <= k < m):
                raise ValueError(f"structure constant index ({i}, {j}, {k}) invalid for dimension {m} (need i < j)")
            q = as_rational(c)
            if q:
                clean[(i, j, k)] = q
        object.__setattr__(self, "constants", dict(sorted(clean.items())))

    @property
    def m(self) -> int:
        return len(self.names)

    # -- brackets
    def c(self, i: int, j: int, k: int) -> Fraction:
        if i == j:
            return Fraction(0)
        if i < j:
            return self.constants.get((i, j, k), Fraction(0))
        return -self.constants.get((j, i, k), Fraction(0))

    def bracket(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """[u, v] for vectors in the basis e_1..e_m."""
        out = [Fraction(0)] * self.m
        for (i, j, k), c in self.constants.items():
            coef = u[i] * v[j] - u[j] * v[i]
            if coef:
                out[k] += c * coef
        return tuple(out)

    def is_abelian(self) -> bool:
        return not self.constants

    # -- dual (Maurer-Cartan) form
    def differentials(self) -> dict[int, Multivector]:
        """d x_k as a degree-2 multivector for every generator k."""
        acc: dict[int, dict[Blade, Fraction]] = {k: {} for k in range(self.m)}
        for (i, j, k), c in self.constants.items():
            b = blade_from_indices((i, j))
            acc[k][b] = acc[k].get(b, Fraction(0)) - c
        return {k: Multivector(self.m, terms) for k, terms in acc.items()}

    @classmethod
    def from_differentials(cls, names: Sequence[str], diffs: Mapping[str, Multivector]) -> "LiePresentation":
        """Interconvert from d x_k given directly (each must be a 2-form or zero)."""
        names = tuple(names)
        index = {g: k for k, g in enumerate(names)}
        consts: dict[tuple[int, int, int], Fraction] = {}
        for g, form in diffs.items():
            if g not in index:
                raise ValueError(f"differential given for unknown generator {g!r}")
            if form.m != len(names):
                raise ValueError(f"differential of {g!r} has ambient {form.m}, expected {len(names)}")
            for b, c in form.terms.items():
                if b.bit_count() != 2:
                    raise ValueError(f"d{g} must be a 2-form; found a degree-{b.bit_count()} term")
                i, j = blade_indices(b)
                consts[(i, j, index[g])] = -c
        return cls(names, consts)

    @classmethod
    def abelian(cls, names: Sequence[str]) -> "LiePresentation":
        return cls(tuple(names), {})


# ---------------- CE complex ----------------
def blade_differential(pres: LiePresentation, b: Blade, dx: Mapping[int, Multivector] | None = None) -> Multivector:
    """d of a blade as an anti-derivation: Σ_r (-1)^r x_i1∧…∧dx_ir∧…∧x_ip."""
    dx = dx if dx is not None else pres.differentials()
    m = pres.m
    out = Multivector.zero(m)
    idx = blade_indices(b)
    for r, i in enumerate(idx):
        if dx[i].is_zero():
            continue
        before = Multivector.blade(m, blade_from_indices(idx[:r]))
        after = Multivector.blade(m, blade_from_indices(idx[r + 1:]))
        term = wedge(wedge(before, dx[i]), after)
        out = out + (term if r % 2 == 0 else -term)
    return out


def differential_matrix(pres: LiePresentation, p: int, dx: Mapping[int, Multivector] | None = None) -> RatMatrix:
    dx = dx if dx is not None else pres.differentials()
    src = blades_of_degree(pres.m, p)
    tgt = blades_of_degree(pres.m, p + 1)
    row = {b: i for i, b in enumerate(tgt)}
    data = {}
    for col, b in enumerate(src):
        for t, c in blade_differential(pres, b, dx).terms.items():
            data[(row[t], col)] = c
    return RatMatrix.from_dict(len(tgt), len(src), data)


def ce_complex(pres: LiePresentation, max_gen: int | None = None, name: str = "") -> GradedComplex:
    """Chevalley-Eilenberg complex on the full exterior algebra (top degree m).

    Construction checks d² = 0, so an invalid presentation raises ComplexError.
    """
    check_ambient(pres.m, max_gen if max_gen is not None else config.MAX_GENERATORS)
    dx = pres.differentials()
    labels = tuple(blades_of_degree(pres.m, p) for p in range(pres.m + 1))
    diffs = tuple(differential_matrix(pres, p, dx) for p in range(pres.m + 1))
    log.debug("CE complex %s: dims %s", name or pres.names, [len(b) for b in labels])
    return GradedComplex(labels, diffs, pres.names, name)


# ---------------- Validation ----------------
@dataclass
class PresentationReport:
    ok: bool
    jacobi_failures: list[tuple[int, int, int]]
    d2_failures: list[str]

    def lines(self, names: Sequence[str]) -> list[str]:
        if self.ok:
            return ["Jacobi identity holds; d² = 0 on all generators."]
        out = [f"Jacobi fails on ({names[i]}, {names[j]}, {names[k]})" for i, j, k in self.jacobi_failures]
        out += [f"d²{g} ≠ 0" for g in self.d2_failures]
        return out


def jacobiator(pres: LiePresentation, i: int, j: int, k: int) -> tuple[Fraction, ...]:
    m = pres.m
    e = [tuple(Fraction(int(a == b)) for b in range(m)) for a in range(m)]
    terms = [
        pres.bracket(pres.bracket(e[i], e[j]), e[k]),
        pres.bracket(pres.bracket(e[j], e[k]), e[i]),
        pres.bracket(pres.bracket(e[k], e[i]), e[j]),
    ]
    return tuple(sum(t[a] for t in terms) for a in range(m))


def validate_presentation(pres: LiePresentation) -> PresentationReport:
    """Every failing Jacobi triple i<j<k, and every generator with d²x ≠ 0."""
    failures = [t for t in combinations(range(pres.m), 3) if any(jacobiator(pres, *t))]
    dx = pres.differentials()
    d2 = []
    for k in range(pres.m):
        ddx = Multivector.zero(pres.m)
        for b, c in dx[k].terms.items():
            ddx = ddx + blade_differential(pres, b, dx).scale(c)
        if not ddx.is_zero():
            d2.append(pres.names[k])
    report = PresentationReport(not failures and not d2, failures, d2)
    if not report.ok:
        log.info("presentation fails Jacobi on %d triple(s)", len(failures))
    return report
