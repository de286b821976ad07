# coeffkit/linalg.py
"""Exact rational linear algebra: sparse matrices, rank/kernel/image, solve."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

log = logging.getLogger(__name__)

Rational = Fraction
Vector = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_rational(x) -> Fraction:
    """Coerce int/str/Fraction to a canonical Fraction (reduced, den > 0)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact scalars")
    return Fraction(x)


def vector(values: Iterable) -> Vector:
    return tuple(as_rational(v) for v in values)


def unit_vector(n: int, i: int) -> Vector:
    return tuple(_ONE if k == i else _ZERO for k in range(n))


def add_vectors(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def scale_vector(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


# ---------------- Sparse matrix ----------------
@dataclass(frozen=True)
class RatMatrix:
    """Sparse rational matrix; entries sorted by (row, col), no explicit zeros."""
    nrows: int
    ncols: int
    entries: tuple[tuple[int, int, Fraction], ...] = ()

    def __post_init__(self):
        seen = set()
        for r, c, v in self.entries:
            if not (0 <= r < self.nrows and 0 <= c < self.ncols):
                raise ValueError(f"entry ({r}, {c}) outside {self.nrows}x{self.ncols}")
            if (r, c) in seen:
                raise ValueError(f"duplicate entry at ({r}, {c})")
            if v == 0:
                raise ValueError(f"explicit zero stored at ({r}, {c})")
            seen.add((r, c))

    # -- constructors
    @classmethod
    def from_dict(cls, nrows: int, ncols: int, data: Mapping[tuple[int, int], object]) -> "RatMatrix":
        items = []
        for (r, c), v in data.items():
            q = as_rational(v)
            if q:
                items.append((r, c, q))
        items.sort(key=lambda t: (t[0], t[1]))
        return cls(nrows, ncols, tuple(items))

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "RatMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        data = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            for j, v in enumerate(row):
                data[(i, j)] = v
        return cls.from_dict(nrows, ncols, data)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Sequence[Fraction]]) -> "RatMatrix":
        data = {}
        for j, col in enumerate(columns):
            if len(col) != nrows:
                raise ValueError(f"column {j} has length {len(col)}, expected {nrows}")
            for i, v in enumerate(col):
                if v:
                    data[(i, j)] = v
        return cls.from_dict(nrows, len(columns), data)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        return cls(nrows, ncols, ())

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, tuple((i, i, _ONE) for i in range(n)))

    # -- views
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return not self.entries

    def to_dense(self) -> list[list[Fraction]]:
        out = [[_ZERO] * self.ncols for _ in range(self.nrows)]
        for r, c, v in self.entries:
            out[r][c] = v
        return out

    def row_dicts(self) -> list[dict[int, Fraction]]:
        rows: list[dict[int, Fraction]] = [{} for _ in range(self.nrows)]
        for r, c, v in self.entries:
            rows[r][c] = v
        return rows

    def column(self, j: int) -> Vector:
        col = [_ZERO] * self.nrows
        for r, c, v in self.entries:
            if c == j:
                col[r] = v
        return tuple(col)

    def columns(self) -> list[Vector]:
        cols = [[_ZERO] * self.nrows for _ in range(self.ncols)]
        for r, c, v in self.entries:
            cols[c][r] = v
        return [tuple(c) for c in cols]

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_dict(self.ncols, self.nrows, {(c, r): v for r, c, v in self.entries})

    # -- arithmetic
    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.ncols:
            raise ValueError(f"vector length {len(v)} does not match {self.ncols} columns")
        out = [_ZERO] * self.nrows
        for r, c, a in self.entries:
            if v[c]:
                out[r] += a * v[c]
        return tuple(out)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        right = other.row_dicts()
        acc: dict[tuple[int, int], Fraction] = {}
        for r, k, a in self.entries:
            for c, b in right[k].items():
                acc[(r, c)] = acc.get((r, c), _ZERO) + a * b
        return RatMatrix.from_dict(self.nrows, other.ncols, acc)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        acc: dict[tuple[int, int], Fraction] = {}
        for r, c, v in self.entries + other.entries:
            acc[(r, c)] = acc.get((r, c), _ZERO) + v
        return RatMatrix.from_dict(self.nrows, self.ncols, acc)

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.nrows, self.ncols, tuple((r, c, -v) for r, c, v in self.entries))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + (-other)


# ---------------- Elimination ----------------
def _axpy(row: dict[int, Fraction], pivot_row: dict[int, Fraction], f: Fraction) -> dict[int, Fraction]:
    out = dict(row)
    for c, v in pivot_row.items():
        nv = out.get(c, _ZERO) + f * v
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    return out


def _rref(rows: list[dict[int, Fraction]], pivot_limit: int):
    """Gauss-Jordan on sparse rows; pivots only in columns < pivot_limit.

    Pivot for column c is the first pending row (in row order) with a nonzero entry in c.
    Returns (reduced pivot rows, pivot columns, leftover nonzero rows).
    """
    pending = [dict(r) for r in rows if r]
    reduced: list[dict[int, Fraction]] = []
    pivots: list[int] = []
    cols = sorted({c for r in pending for c in r if c < pivot_limit})
    for c in cols:
        idx = next((i for i, r in enumerate(pending) if c in r), None)
        if idx is None:
            continue
        prow = pending.pop(idx)
        inv = _ONE / prow[c]
        prow = {k: v * inv for k, v in prow.items()}
        for group in (pending, reduced):
            for i, r in enumerate(group):
                f = r.get(c)
                if f:
                    group[i] = _axpy(r, prow, -f)
        pending = [r for r in pending if r]
        reduced.append(prow)
        pivots.append(c)
    return reduced, pivots, pending


class RankKernelImage(NamedTuple):
    rank: int
    kernel: list[Vector]
    image: list[Vector]
    pivots: tuple[int, ...]


def rank_kernel_image(M: RatMatrix) -> RankKernelImage:
    """Rank, kernel basis and image basis (pivot columns of M) of M."""
    reduced, pivots, _ = _rref(M.row_dicts(), M.ncols)
    pivot_set = set(pivots)
    kernel: list[Vector] = []
    for f in range(M.ncols):
        if f in pivot_set:
            continue
        v = [_ZERO] * M.ncols
        v[f] = _ONE
        for prow, pc in zip(reduced, pivots):
            a = prow.get(f)
            if a:
                v[pc] = -a
        kernel.append(tuple(v))
    cols = M.columns()
    image = [cols[c] for c in pivots]
    return RankKernelImage(len(pivots), kernel, image, tuple(pivots))


def rank(M: RatMatrix) -> int:
    return len(_rref(M.row_dicts(), M.ncols)[1])


def solve_many(M: RatMatrix, rhs: Sequence[Sequence[Fraction]]) -> list[Vector | None]:
    """Solve M·x = b for every b in rhs with one elimination; None where b ∉ image."""
    for b in rhs:
        if len(b) != M.nrows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {M.nrows}")
    n = M.ncols
    rows = M.row_dicts()
    for j, b in enumerate(rhs):
        for i, v in enumerate(b):
            if v:
                rows[i][n + j] = as_rational(v)
    reduced, pivots, leftover = _rref(rows, n)
    bad = {c - n for r in leftover for c in r}
    out: list[Vector | None] = []
    for j in range(len(rhs)):
        if j in bad:
            out.append(None)
            continue
        x = [_ZERO] * n
        for prow, pc in zip(reduced, pivots):
            x[pc] = prow.get(n + j, _ZERO)
        out.append(tuple(x))
    return out


def solve(M: RatMatrix, b: Sequence[Fraction]) -> Vector | None:
    """A particular solution of M·x = b (free variables set to 0), or None."""
    return solve_many(M, [b])[0]


# ---------------- Spans ----------------
def _check_lengths(vectors: Sequence[Sequence[Fraction]], dim: int | None) -> int:
    lengths = {len(v) for v in vectors}
    if len(lengths) > 1:
        raise ValueError(f"vectors of differing lengths {sorted(lengths)}")
    if dim is None:
        return lengths.pop() if lengths else 0
    if lengths and lengths != {dim}:
        raise ValueError(f"vectors must have length {dim}")
    return dim


def span_rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    if not vectors:
        return 0
    rows = [{i: as_rational(a) for i, a in enumerate(v) if a} for v in vectors]
    return len(_rref(rows, len(vectors[0]))[1])


def independent_subset(vectors: Sequence[Sequence[Fraction]], dim: int | None = None) -> list[int]:
    """Indices of the first maximal independent subfamily (echelon pivot order)."""
    dim = _check_lengths(vectors, dim)
    if not vectors:
        return []
    M = RatMatrix.from_columns(dim, [vector(v) for v in vectors])
    return list(rank_kernel_image(M).pivots)


def complete_basis(small: Sequence[Sequence[Fraction]], big: Sequence[Sequence[Fraction]],
                   dim: int | None = None) -> list[int]:
    """Indices into `big` whose vectors complete span(small) to span(small ∪ big)."""
    dim = _check_lengths(list(small) + list(big), dim)
    pivots = independent_subset(list(small) + list(big), dim)
    k = len(small)
    return [p - k for p in pivots if p >= k]


def coordinates(basis: Sequence[Sequence[Fraction]], vectors: Sequence[Sequence[Fraction]],
                dim: int | None = None) -> list[Vector | None]:
    """Coefficients expressing each vector in the (independent) basis, None if outside."""
    dim = _check_lengths(list(basis) + list(vectors), dim)
    M = RatMatrix.from_columns(dim, [vector(b) for b in basis])
    return solve_many(M, vectors)


def quotient_dim(big: Sequence[Sequence[Fraction]], small: Sequence[Sequence[Fraction]]) -> int:
    """dim span(big) − dim span(small); span(small) must lie inside span(big)."""
    _check_lengths(list(big) + list(small), None)
    r_big = span_rank(big)
    r_small = span_rank(small)
    if span_rank(list(big) + list(small)) != r_big:
        raise ValueError("quotient_dim: span(small) is not contained in span(big)")
    return r_big - r_small
