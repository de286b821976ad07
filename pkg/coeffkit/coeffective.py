# coeffkit/coeffective.py
"""Symplectic forms, Lefschetz maps, coeffective cohomology and the comparison with H̃.

Everything here works on blade complexes (CE complexes and their blade subcomplexes).
The comparison rests on the short exact sequence

    0 -> C_coE -> C -ω∧-> ωC -> 0,   (ωC)^p = ω∧C^p ⊆ C^{p+2},

whose long exact sequence gives dim H^p_coE = dim H̃^p + dim coker(H^{p-1}(C) -> H^{p-1}(ωC))
for p >= n, as soon as ω∧ is onto from degree n-1 on.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import (
    ChainMap, CohomologySummary, ComplexError, GradedComplex, InternalInconsistency,
    cohomology, connecting_homomorphism, induced_cohomology_map, restrict, subcomplex_inclusion,
)
from .exterior import Multivector, blade_wedge
from .linalg import RatMatrix, Vector, coordinates, rank, rank_kernel_image, solve

log = logging.getLogger(__name__)


class SymplecticError(ValueError):
    """ω is not a symplectic form on the complex (odd dimension, not closed, degenerate)."""


class LefschetzError(ValueError):
    """ω∧ fails to be surjective in a degree where the exact-sequence argument needs it."""


@dataclass(frozen=True)
class SymplecticForm:
    omega: Multivector
    n: int


def _mrank(M: RatMatrix) -> int:
    return rank(M) if M.nrows and M.ncols else 0


def _require_blades(C: GradedComplex) -> None:
    if not C.is_blade_complex():
        raise ValueError("this operation needs a complex over blades of named generators")


def form_vector(C: GradedComplex, form: Multivector, p: int) -> Vector:
    """Coordinates of a homogeneous degree-p form in C's degree-p basis."""
    _require_blades(C)
    if form.m != len(C.generators):
        raise ValueError(f"form has ambient {form.m}, complex has {len(C.generators)} generators")
    if form.is_zero():
        return tuple(Fraction(0) for _ in range(C.dim(p)))
    if form.degree() != p:
        raise ValueError(f"form is not homogeneous of degree {p}")
    try:
        return form.to_vector(C.labels[p] if 0 <= p <= C.top_degree else ())
    except ValueError as e:
        raise ValueError(f"form is not in the complex's span: {e}") from e


# ---------------- Symplectic validation ----------------
def validate_symplectic(C: GradedComplex, omega: Multivector) -> SymplecticForm:
    """Check dω = 0 and ω^n ≠ 0 on a 2n-generator blade complex."""
    _require_blades(C)
    m = len(C.generators)
    if m % 2:
        raise SymplecticError(f"ambient dimension {m} is odd")
    if omega.degree() != 2:
        raise SymplecticError("ω must be a nonzero homogeneous 2-form")
    v = form_vector(C, omega, 2)
    if any(C.differential(2).apply(v)):
        raise SymplecticError("ω is not closed (dω ≠ 0)")
    n = m // 2
    if omega.power(n).is_zero():
        raise SymplecticError(f"ω is degenerate (ω^{n} = 0)")
    return SymplecticForm(omega, n)


def cohomologically_symplectic(C: GradedComplex, sf: SymplecticForm) -> bool:
    """[ω]^n ≠ 0 in H^{2n}(C)."""
    top = 2 * sf.n
    v = form_vector(C, sf.omega.power(sf.n), top)
    if not any(v):
        return False
    return solve(C.differential(top - 1), v) is None


# ---------------- Lefschetz ----------------
def lefschetz_matrix(C: GradedComplex, sf: SymplecticForm, p: int) -> RatMatrix:
    """ω∧: C^p -> C^{p+2} in C's blade bases."""
    _require_blades(C)
    tgt = C.labels[p + 2] if p + 2 <= C.top_degree else ()
    row = {b: i for i, b in enumerate(tgt)}
    data: dict[tuple[int, int], Fraction] = {}
    for col, b in enumerate(C.labels[p]):
        for w, c in sf.omega.terms.items():
            s, wb = blade_wedge(w, b)
            if not s:
                continue
            if wb not in row:
                raise ComplexError(f"ω∧ leaves the complex in degree {p + 2}")
            data[(row[wb], col)] = data.get((row[wb], col), Fraction(0)) + s * c
    return RatMatrix.from_dict(len(tgt), C.dim(p), data)


def lefschetz_map(C: GradedComplex, sf: SymplecticForm) -> ChainMap:
    """ω∧ as a chain map C -> C of shift +2."""
    return ChainMap(C, C, tuple(lefschetz_matrix(C, sf, p) for p in C.degrees()), 2)


@dataclass(frozen=True)
class LefschetzProfile:
    n: int
    ranks: tuple[int, ...]
    injective: tuple[bool, ...]
    surjective: tuple[bool, ...]

    def hard_lefschetz_shape(self) -> bool:
        """Injective for p <= n-1 and surjective for p >= n-1."""
        return (all(self.injective[p] for p in range(min(self.n, len(self.injective))))
                and self.surjective_from(self.n - 1))

    def surjective_from(self, p0: int) -> bool:
        return all(self.surjective[p] for p in range(max(p0, 0), len(self.surjective)))


def lefschetz_profile(C: GradedComplex, sf: SymplecticForm) -> LefschetzProfile:
    ranks, inj, surj = [], [], []
    for p in C.degrees():
        L = lefschetz_matrix(C, sf, p)
        r = _mrank(L)
        ranks.append(r)
        inj.append(r == C.dim(p))
        surj.append(r == C.dim(p + 2))
    return LefschetzProfile(sf.n, tuple(ranks), tuple(inj), tuple(surj))


def require_surjective(C: GradedComplex, sf: SymplecticForm, profile: LefschetzProfile | None = None) -> None:
    profile = profile or lefschetz_profile(C, sf)
    for p in range(max(sf.n - 1, 0), C.top_degree + 1):
        if not profile.surjective[p]:
            raise LefschetzError(f"ω∧: C^{p} -> C^{p + 2} is not surjective (degree {p} >= n-1 = {sf.n - 1})")


# ---------------- Coeffective complex ----------------
def coeffective_complex(C: GradedComplex, sf: SymplecticForm) -> tuple[GradedComplex, ChainMap]:
    """Kernel of ω∧ in every degree, with its inclusion into C."""
    kernels = [rank_kernel_image(lefschetz_matrix(C, sf, p)).kernel for p in C.degrees()]
    try:
        return subcomplex_inclusion(C, kernels, name=f"{C.name}_coE")
    except ComplexError as e:
        raise InternalInconsistency(f"d does not preserve ker(ω∧): {e}") from e


def coeffective_cohomology(C: GradedComplex, sf: SymplecticForm) -> tuple[int, ...]:
    """Betti numbers of the coeffective complex, all degrees (meaningful for p >= n)."""
    K, _ = coeffective_complex(C, sf)
    return cohomology(K).betti


def tilde_cohomology(C: GradedComplex, sf: SymplecticForm, hC: CohomologySummary | None = None) -> tuple[int, ...]:
    """dim ker((ω∧)*: H^p -> H^{p+2}) for every p."""
    hC = hC or cohomology(C)
    Lstar = induced_cohomology_map(lefschetz_map(C, sf), hC, hC)
    return tuple(hC.betti_at(p) - _mrank(Lstar[p]) for p in C.degrees())


# ---------------- Short exact sequence ----------------
@dataclass
class LefschetzSequence:
    """0 -> K -i-> C -π-> Q -> 0 with cohomology and all induced maps."""
    sf: SymplecticForm
    C: GradedComplex
    K: GradedComplex
    Q: GradedComplex
    inclusion: ChainMap
    projection: ChainMap
    hK: CohomologySummary
    hC: CohomologySummary
    hQ: CohomologySummary
    i_star: tuple[RatMatrix, ...]
    pi_star: tuple[RatMatrix, ...]
    L_star: tuple[RatMatrix, ...]
    delta: tuple[RatMatrix, ...] = field(default=())

    def coker_les(self, p: int) -> int:
        """dim coker(H^{p-1}(C) -> H^{p-1}(Q)) = rank of δ_{p-1}."""
        if p - 1 < 0:
            return 0
        return self.hQ.betti_at(p - 1) - _mrank(self.pi_star[p - 1])

    def coker_direct(self, p: int) -> int:
        """dim coker((ω∧)*: H^{p-1}(C) -> H^{p+1}(C))."""
        if p - 1 < 0:
            return self.hC.betti_at(p + 1)
        return self.hC.betti_at(p + 1) - _mrank(self.L_star[p - 1])

    def tilde(self, p: int) -> int:
        return self.hC.betti_at(p) - _mrank(self.L_star[p])


def lefschetz_sequence(C: GradedComplex, sf: SymplecticForm, with_delta: bool = False) -> LefschetzSequence:
    mats = [lefschetz_matrix(C, sf, p) for p in C.degrees()]
    K, inc = subcomplex_inclusion(C, [rank_kernel_image(L).kernel for L in mats], name=f"{C.name}_coE")
    images = [rank_kernel_image(L).image for L in mats]
    Q, bases = restrict(C, images, offset=2, name=f"ω∧{C.name}")
    proj_parts = []
    for p, L in enumerate(mats):
        cols = coordinates(bases[p], L.columns(), C.dim(p + 2)) if C.dim(p) else []
        if any(x is None for x in cols):
            raise InternalInconsistency(f"ω∧C^{p} is not spanned by its image basis")
        proj_parts.append(RatMatrix.from_columns(len(bases[p]), cols))
    proj = ChainMap(C, Q, tuple(proj_parts), 0)
    hK, hC, hQ = cohomology(K), cohomology(C), cohomology(Q)
    seq = LefschetzSequence(
        sf, C, K, Q, inc, proj, hK, hC, hQ,
        induced_cohomology_map(inc, hK, hC),
        induced_cohomology_map(proj, hC, hQ),
        induced_cohomology_map(ChainMap(C, C, tuple(mats), 2), hC, hC),
    )
    if with_delta:
        seq.delta = tuple(connecting_homomorphism(inc, proj, p, hK, hQ) for p in C.degrees())
    return seq


# ---------------- Comparison ----------------
@dataclass(frozen=True)
class DegreeComparison:
    p: int
    betti: int
    dim_coe: int
    dim_tilde: int
    coker: int
    coker_direct: int
    verdict: str  # "iso" | "non-iso" | "out-of-range"
    boundary: bool = False


@dataclass(frozen=True)
class ComparisonReport:
    n: int
    rows: tuple[DegreeComparison, ...]
    profile: LefschetzProfile

    def verdict(self, p: int) -> str:
        return self.rows[p].verdict

    @property
    def iso_degrees(self) -> tuple[int, ...]:
        return tuple(r.p for r in self.rows if r.verdict == "iso")

    @property
    def non_iso_degrees(self) -> tuple[int, ...]:
        return tuple(r.p for r in self.rows if r.verdict == "non-iso")

    def all_iso(self) -> bool:
        return not self.non_iso_degrees


def compare(C: GradedComplex, sf: SymplecticForm, seq: LefschetzSequence | None = None) -> ComparisonReport:
    """Per degree: dim H_coE, dim H̃, coker dims and the isomorphism verdict (p >= n)."""
    profile = lefschetz_profile(C, sf)
    require_surjective(C, sf, profile)
    seq = seq or lefschetz_sequence(C, sf)
    rows = []
    for p in C.degrees():
        dim_coe = seq.hK.betti_at(p)
        dim_tilde = seq.tilde(p)
        coker = seq.coker_les(p)
        direct = seq.coker_direct(p)
        if p < sf.n:
            verdict = "out-of-range"
        else:
            if dim_coe != dim_tilde + coker:
                raise InternalInconsistency(
                    f"degree {p}: dim H_coE = {dim_coe} but dim H̃ + coker = {dim_tilde} + {coker}")
            verdict = "iso" if coker == 0 else "non-iso"
        rows.append(DegreeComparison(p, seq.hC.betti_at(p), dim_coe, dim_tilde, coker, direct,
                                     verdict, boundary=(p == sf.n and coker != direct)))
    log.info("compare %s: iso at %s", C.name, [r.p for r in rows if r.verdict == "iso"])
    return ComparisonReport(sf.n, tuple(rows), profile)


# ---------------- Long exact sequence ----------------
@dataclass(frozen=True)
class LESNode:
    p: int
    space: str  # "H_coE" | "H" | "H_omega"
    dim: int
    rank_in: int
    nullity_out: int
    composite_zero: bool

    @property
    def exact(self) -> bool:
        return self.rank_in == self.nullity_out and self.composite_zero


@dataclass(frozen=True)
class LESReport:
    n: int
    nodes: tuple[LESNode, ...]
    identity: tuple[tuple[int, int, int, int], ...]  # (p, dim_coe, dim_tilde, coker)

    @property
    def ok(self) -> bool:
        return all(node.exact for node in self.nodes) and all(c == t + k for _, c, t, k in self.identity)


def _node(p: int, space: str, dim: int, incoming: RatMatrix, outgoing: RatMatrix) -> LESNode:
    composite = outgoing @ incoming
    return LESNode(p, space, dim, _mrank(incoming), dim - _mrank(outgoing), composite.is_zero())


def les_verify(C: GradedComplex, sf: SymplecticForm) -> LESReport:
    """Exactness of the cohomology sequence of 0 -> C_coE -> C -> ωC -> 0 at every node p >= n."""
    require_surjective(C, sf)
    seq = lefschetz_sequence(C, sf, with_delta=True)
    nodes = []
    for p in range(sf.n, C.top_degree + 1):
        delta_in = seq.delta[p - 1] if p >= 1 else RatMatrix.zeros(seq.hK.betti_at(p), 0)
        nodes.append(_node(p, "H_coE", seq.hK.betti_at(p), delta_in, seq.i_star[p]))
        nodes.append(_node(p, "H", seq.hC.betti_at(p), seq.i_star[p], seq.pi_star[p]))
        nodes.append(_node(p, "H_omega", seq.hQ.betti_at(p), seq.pi_star[p], seq.delta[p]))
    identity = tuple((p, seq.hK.betti_at(p), seq.tilde(p), seq.coker_les(p))
                     for p in range(sf.n, C.top_degree + 1))
    report = LESReport(sf.n, tuple(nodes), identity)
    if not report.ok:
        bad = [(nd.p, nd.space) for nd in nodes if not nd.exact]
        raise InternalInconsistency(f"long exact sequence fails at {bad}")
    return report


# ---------------- Class status ----------------
@dataclass(frozen=True)
class ClassStatus:
    is_coeffective: bool
    is_closed: bool
    coe_class_zero: bool | None  # None when the form is not a coeffective cocycle
    derham_class_zero: bool | None  # None when the form is not closed

    def line(self) -> str:
        def yn(x):
            return "n/a" if x is None else ("yes" if x else "no")
        return (f"coeffective: {yn(self.is_coeffective)}; closed: {yn(self.is_closed)}; "
                f"coE-class zero: {yn(self.coe_class_zero)}; deRham-class zero: {yn(self.derham_class_zero)}")


def class_status(C: GradedComplex, sf: SymplecticForm, form: Multivector) -> ClassStatus:
    """Coeffectivity, closedness and vanishing of the coE and de Rham classes of a form."""
    p = form.degree()
    if form.is_zero():
        return ClassStatus(True, True, True, True)
    if p is None:
        raise ValueError("form must be homogeneous")
    v = form_vector(C, form, p)
    coeff = not any(lefschetz_matrix(C, sf, p).apply(v))
    closed = not any(C.differential(p).apply(v))
    derham = None
    coe = None
    if closed:
        derham = p > 0 and solve(C.differential(p - 1), v) is not None
    if closed and coeff:
        _, inc = coeffective_complex(C, sf)
        if p == 0:
            coe = False
        else:
            dK = C.differential(p - 1) @ inc.f[p - 1]
            coe = solve(dK, v) is not None
    return ClassStatus(coeff, closed, coe, derham)


# ---------------- Sub-complex comparison ----------------
@dataclass(frozen=True)
class InclusionReport:
    n: int
    h_iso: tuple[bool, ...]
    coe_iso: tuple[bool | None, ...]  # None below degree n
    hypotheses: bool
    consistent: bool


def _is_iso(M: RatMatrix, dim_s: int, dim_t: int) -> bool:
    return dim_s == dim_t and _mrank(M) == dim_s


def compare_subcomplex(C: GradedComplex, inclusion: ChainMap, sf: SymplecticForm) -> InclusionReport:
    """Does A ⊂ C induce isomorphisms on H, and on coeffective cohomology for p >= n?"""
    A = inclusion.source
    if inclusion.target is not C and inclusion.target != C:
        raise ValueError("inclusion must land in the given complex")
    hA, hC = cohomology(A), cohomology(C)
    phi = induced_cohomology_map(inclusion, hA, hC)
    h_iso = tuple(_is_iso(phi[p], hA.betti_at(p), hC.betti_at(p)) for p in A.degrees())

    KA, incA = coeffective_complex(A, sf)
    KC, incC = coeffective_complex(C, sf)
    parts = []
    for p in KA.degrees():
        images = [inclusion.f[p].apply(v) for v in incA.f[p].columns()]
        cols = coordinates(incC.f[p].columns(), images, C.dim(p)) if images else []
        if any(x is None for x in cols):
            raise InternalInconsistency(f"coeffective forms of the subcomplex leave C_coE in degree {p}")
        parts.append(RatMatrix.from_columns(KC.dim(p), cols))
    phi_coe = ChainMap(KA, KC, tuple(parts), 0)
    hKA, hKC = cohomology(KA), cohomology(KC)
    star = induced_cohomology_map(phi_coe, hKA, hKC)
    coe_iso = tuple(_is_iso(star[p], hKA.betti_at(p), hKC.betti_at(p)) if p >= sf.n else None
                    for p in KA.degrees())
    hypotheses = all(h_iso) and lefschetz_profile(A, sf).surjective_from(sf.n - 1)
    consistent = (not hypotheses) or all(x for x in coe_iso if x is not None)
    return InclusionReport(sf.n, h_iso, coe_iso, hypotheses, consistent)
