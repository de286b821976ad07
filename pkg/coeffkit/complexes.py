# coeffkit/complexes.py
"""Finite cochain complexes over Q, chain maps, cohomology and the zig-zag map."""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Sequence

from .linalg import (
    RatMatrix, Vector, add_vectors, complete_basis, coordinates, independent_subset,
    rank_kernel_image, scale_vector, solve_many,
)

log = logging.getLogger(__name__)

Label = Hashable


class ComplexError(ValueError):
    """Invalid complex or chain-map data (shape mismatch, d² ≠ 0, closure failure, lift failure)."""


class InternalInconsistency(RuntimeError):
    """An identity that must hold by construction failed; this is a bug."""


# ---------------- Graded complex ----------------
@dataclass(frozen=True)
class GradedComplex:
    """Per-degree ordered bases (degrees 0..top) and differentials d[p]: C^p -> C^{p+1}.

    `generators` is set for complexes whose labels are blades over those generators
    (CE complexes and their blade subcomplexes); empty otherwise.
    """
    labels: tuple[tuple[Label, ...], ...]
    d: tuple[RatMatrix, ...]
    generators: tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        if len(self.d) != len(self.labels):
            raise ComplexError(f"{len(self.d)} differentials for {len(self.labels)} degrees")
        for p, dp in enumerate(self.d):
            want = (self.dim(p + 1), self.dim(p))
            if dp.shape != want:
                raise ComplexError(f"d_{p} has shape {dp.shape}, expected {want}")
        for p in range(len(self.d) - 1):
            if not (self.d[p + 1] @ self.d[p]).is_zero():
                raise ComplexError(f"d_{p + 1} ∘ d_{p} ≠ 0")

    @property
    def top_degree(self) -> int:
        return len(self.labels) - 1

    def degrees(self) -> range:
        return range(len(self.labels))

    def dim(self, p: int) -> int:
        return len(self.labels[p]) if 0 <= p < len(self.labels) else 0

    def dims(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.labels)

    def differential(self, p: int) -> RatMatrix:
        """d_p as a dim(p+1) x dim(p) matrix, zero outside the graded range."""
        if 0 <= p < len(self.d):
            return self.d[p]
        return RatMatrix.zeros(self.dim(p + 1), self.dim(p))

    def is_blade_complex(self) -> bool:
        return bool(self.generators) and all(isinstance(b, int) for basis in self.labels for b in basis)

    @classmethod
    def point(cls) -> "GradedComplex":
        """Q concentrated in degree 0 (unit for the tensor product)."""
        return cls(((1,),), (RatMatrix.zeros(0, 1),), (), "point")


# ---------------- Chain maps ----------------
@dataclass(frozen=True)
class ChainMap:
    """f[p]: source^p -> target^{p+shift}, commuting with both differentials."""
    source: GradedComplex
    target: GradedComplex
    f: tuple[RatMatrix, ...]
    shift: int = 0
    check: bool = field(default=True, compare=False)

    def __post_init__(self):
        if len(self.f) != len(self.source.labels):
            raise ComplexError(f"{len(self.f)} components for {len(self.source.labels)} source degrees")
        for p, fp in enumerate(self.f):
            want = (self.target.dim(p + self.shift), self.source.dim(p))
            if fp.shape != want:
                raise ComplexError(f"f_{p} has shape {fp.shape}, expected {want}")
        if self.check:
            for p in self.source.degrees():
                left = self.target.differential(p + self.shift) @ self.f[p]
                right = self.component(p + 1) @ self.source.differential(p)
                if left != right:
                    raise ComplexError(f"chain map does not commute with d in degree {p}")

    def component(self, p: int) -> RatMatrix:
        if 0 <= p < len(self.f):
            return self.f[p]
        return RatMatrix.zeros(self.target.dim(p + self.shift), self.source.dim(p))

    def compose(self, inner: "ChainMap") -> "ChainMap":
        """self ∘ inner."""
        if inner.target is not self.source and inner.target != self.source:
            raise ComplexError("composition of chain maps with mismatched complexes")
        parts = tuple(self.component(p + inner.shift) @ inner.f[p] for p in inner.source.degrees())
        return ChainMap(inner.source, self.target, parts, inner.shift + self.shift)

    @classmethod
    def identity(cls, C: GradedComplex) -> "ChainMap":
        return cls(C, C, tuple(RatMatrix.identity(C.dim(p)) for p in C.degrees()), 0, check=False)

    @classmethod
    def zero(cls, source: GradedComplex, target: GradedComplex, shift: int = 0) -> "ChainMap":
        parts = tuple(RatMatrix.zeros(target.dim(p + shift), source.dim(p)) for p in source.degrees())
        return cls(source, target, parts, shift, check=False)


# ---------------- Cohomology ----------------
@dataclass(frozen=True)
class DegreeCohomology:
    betti: int
    cocycles: tuple[Vector, ...]
    coboundaries: tuple[Vector, ...]
    representatives: tuple[Vector, ...]


@dataclass(frozen=True)
class CohomologySummary:
    complex: GradedComplex
    degrees: tuple[DegreeCohomology, ...]

    @property
    def betti(self) -> tuple[int, ...]:
        return tuple(h.betti for h in self.degrees)

    def at(self, p: int) -> DegreeCohomology | None:
        return self.degrees[p] if 0 <= p < len(self.degrees) else None

    def betti_at(self, p: int) -> int:
        h = self.at(p)
        return h.betti if h else 0

    def classes_of(self, p: int, vectors: Sequence[Vector]) -> list[Vector]:
        """Coordinates of the classes of cocycles in the representative basis of H^p."""
        h = self.at(p)
        if h is None:
            return [() for _ in vectors]
        if not vectors:
            return []
        basis = list(h.coboundaries) + list(h.representatives)
        coeffs = coordinates(basis, vectors, self.complex.dim(p))
        nb = len(h.coboundaries)
        out = []
        for v, x in zip(vectors, coeffs):
            if x is None:
                raise InternalInconsistency(f"vector in degree {p} is not a cocycle: {v}")
            out.append(tuple(x[nb:]))
        return out


def _cohomology_at(C: GradedComplex, p: int) -> DegreeCohomology:
    n = C.dim(p)
    cocycles = rank_kernel_image(C.differential(p)).kernel
    coboundaries = rank_kernel_image(C.differential(p - 1)).image if p > 0 else []
    reps_idx = complete_basis(coboundaries, cocycles, n)
    reps = [cocycles[i] for i in reps_idx]
    betti = len(cocycles) - len(coboundaries)
    if betti != len(reps):
        raise InternalInconsistency(f"degree {p}: betti {betti} but {len(reps)} representatives")
    return DegreeCohomology(betti, tuple(cocycles), tuple(coboundaries), tuple(reps))


def cohomology(C: GradedComplex) -> CohomologySummary:
    """Betti numbers, cocycle/coboundary bases and representatives in every degree."""
    degrees = tuple(_cohomology_at(C, p) for p in C.degrees())
    log.debug("cohomology of %s: betti %s", C.name or "complex", [h.betti for h in degrees])
    return CohomologySummary(C, degrees)


# ---------------- Tensor product ----------------
def tensor(C1: GradedComplex, C2: GradedComplex) -> GradedComplex:
    """C1 ⊗ C2 with d(u⊗v) = du⊗v + (-1)^{|u|} u⊗dv.

    Basis of total degree k: pairs ordered lexicographically by (left position, right
    position), where a position is (degree, index) in the factor's basis order.
    """
    top = C1.top_degree + C2.top_degree
    index: list[dict[tuple[int, int, int, int], int]] = []
    labels: list[tuple[Label, ...]] = []
    for k in range(top + 1):
        keys = []
        for i in range(max(0, k - C2.top_degree), min(k, C1.top_degree) + 1):
            for a in range(C1.dim(i)):
                for b in range(C2.dim(k - i)):
                    keys.append((i, a, k - i, b))
        keys.sort()
        index.append({key: n for n, key in enumerate(keys)})
        labels.append(tuple((C1.labels[i][a], C2.labels[j][b]) for i, a, j, b in keys))

    d1 = [C1.differential(i).columns() for i in C1.degrees()]
    d2 = [C2.differential(j).columns() for j in C2.degrees()]
    diffs = []
    for k in range(top + 1):
        data: dict[tuple[int, int], Fraction] = {}
        for (i, a, j, b), col in index[k].items():
            if k + 1 <= top:
                for a2, c in enumerate(d1[i][a]):
                    if c:
                        row = index[k + 1][(i + 1, a2, j, b)]
                        data[(row, col)] = data.get((row, col), 0) + c
                sign = -1 if i % 2 else 1
                for b2, c in enumerate(d2[j][b]):
                    if c:
                        row = index[k + 1][(i, a, j + 1, b2)]
                        data[(row, col)] = data.get((row, col), 0) + sign * c
        nxt = len(labels[k + 1]) if k + 1 <= top else 0
        diffs.append(RatMatrix.from_dict(nxt, len(labels[k]), data))
    name = f"{C1.name or 'C1'}⊗{C2.name or 'C2'}"
    return GradedComplex(tuple(labels), tuple(diffs), (), name)


# ---------------- Subcomplexes ----------------
def restrict(C: GradedComplex, spaces: Sequence[Sequence[Vector]], offset: int = 0,
             labels: Sequence[Sequence[Label]] | None = None, name: str = "",
             generators: tuple[str, ...] = ()) -> tuple[GradedComplex, list[list[Vector]]]:
    """Complex on span(spaces[p]) ⊆ C^{p+offset}, each spanning set reduced to a basis.

    Returns the complex and the chosen basis vectors (in C coordinates) per degree.
    Raises ComplexError naming the degree and vector when d leaves the subspaces.
    """
    top = C.top_degree
    bases: list[list[Vector]] = []
    chosen_labels: list[tuple[Label, ...]] = []
    for p in range(top + 1):
        span = list(spaces[p]) if p < len(spaces) else []
        idx = independent_subset(span, C.dim(p + offset))
        bases.append([span[i] for i in idx])
        if labels is not None:
            chosen_labels.append(tuple(labels[p][i] for i in idx))
        else:
            chosen_labels.append(tuple(span[i] for i in idx))
    diffs = []
    for p in range(top + 1):
        images = [C.differential(p + offset).apply(v) for v in bases[p]]
        target = bases[p + 1] if p + 1 <= top else []
        coords = coordinates(target, images, C.dim(p + offset + 1)) if images else []
        cols = []
        for j, x in enumerate(coords):
            if x is None:
                raise ComplexError(
                    f"subspace not d-stable: d of basis vector {j} in degree {p} "
                    f"({bases[p][j]}) leaves the degree-{p + 1} subspace")
            cols.append(x)
        diffs.append(RatMatrix.from_columns(len(target), cols) if cols
                     else RatMatrix.zeros(len(target), 0))
    sub = GradedComplex(tuple(chosen_labels), tuple(diffs), generators, name)
    return sub, bases


def subcomplex_inclusion(C: GradedComplex, subspaces: Sequence[Sequence[Vector]],
                         labels: Sequence[Sequence[Label]] | None = None,
                         name: str = "", generators: tuple[str, ...] = ()
                         ) -> tuple[GradedComplex, ChainMap]:
    """Restricted complex on d-stable subspaces plus its inclusion chain map."""
    sub, bases = restrict(C, subspaces, 0, labels, name, generators)
    parts = tuple(RatMatrix.from_columns(C.dim(p), bases[p]) if bases[p]
                  else RatMatrix.zeros(C.dim(p), 0) for p in C.degrees())
    return sub, ChainMap(sub, C, parts, 0)


# ---------------- Induced maps ----------------
def induced_cohomology_map(f: ChainMap, source_h: CohomologySummary | None = None,
                           target_h: CohomologySummary | None = None) -> tuple[RatMatrix, ...]:
    """Matrix of f* : H^p(source) -> H^{p+shift}(target) on representative bases, per p."""
    hs = source_h or cohomology(f.source)
    ht = target_h or cohomology(f.target)
    out = []
    for p in f.source.degrees():
        q = p + f.shift
        reps = hs.degrees[p].representatives
        images = [f.f[p].apply(r) for r in reps]
        cols = ht.classes_of(q, images) if ht.at(q) else [() for _ in images]
        out.append(RatMatrix.from_columns(ht.betti_at(q), cols) if cols
                   else RatMatrix.zeros(ht.betti_at(q), 0))
    return tuple(out)


def connecting_homomorphism(inclusion: ChainMap, projection: ChainMap, p: int,
                            kernel_h: CohomologySummary | None = None,
                            quotient_h: CohomologySummary | None = None,
                            rng: random.Random | None = None) -> RatMatrix:
    """δ: H^p(Q) -> H^{p+1}(K) for 0 -> K -i-> C -π-> Q -> 0.

    Lifts each quotient representative through π, applies d, and pulls back through i.
    With `rng`, a random element of ker π^p is added to each lift (the class must not change).
    """
    C = inclusion.target
    if (projection.source is not C and projection.source != C) or inclusion.shift or projection.shift:
        raise ComplexError("connecting_homomorphism needs degree-0 maps K -> C -> Q")
    hK = kernel_h or cohomology(inclusion.source)
    hQ = quotient_h or cohomology(projection.target)
    hq = hQ.at(p)
    reps = list(hq.representatives) if hq else []
    if not reps or hK.at(p + 1) is None:
        return RatMatrix.zeros(hK.betti_at(p + 1), len(reps))
    lifts = solve_many(projection.f[p], reps)
    if rng is not None:
        ker = rank_kernel_image(projection.f[p]).kernel
        noisy = []
        for c in lifts:
            if c is None:
                noisy.append(None)
                continue
            for k in ker:
                c = add_vectors(c, scale_vector(Fraction(rng.randint(-3, 3)), k))
            noisy.append(c)
        lifts = noisy
    if any(c is None for c in lifts):
        raise ComplexError(f"lift through the projection fails in degree {p}: sequence not exact")
    dc = [C.differential(p).apply(c) for c in lifts]
    pulled = solve_many(inclusion.f[p + 1], dc)
    if any(k is None for k in pulled):
        raise ComplexError(f"d(lift) does not come from the kernel complex in degree {p + 1}")
    cols = hK.classes_of(p + 1, pulled)
    return RatMatrix.from_columns(hK.betti_at(p + 1), cols)
