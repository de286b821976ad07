# tests/test_complexes.py
import random

import pytest

from coeffkit.complexes import (
    ChainMap, ComplexError, GradedComplex, cohomology, connecting_homomorphism,
    induced_cohomology_map, restrict, subcomplex_inclusion, tensor,
)
from coeffkit.coeffective import lefschetz_sequence, validate_symplectic
from coeffkit.lie import LiePresentation, ce_complex
from coeffkit.linalg import RatMatrix, rank, rank_kernel_image, unit_vector
from coeffkit.model_runtime import model_complex
from coeffkit.registry import builtin_example

def h3_complex():
    return ce_complex(LiePresentation(("x1", "x2", "x3"), {(0, 1, 2): 1}), name="h3")

def interval():
    """Two vertices a, b joined by an edge e, with its edge subcomplex and vertex quotient."""
    C = GradedComplex((("a", "b"), ("e",)), (RatMatrix.from_dense([[-1, 1]]), RatMatrix.zeros(0, 1)))
    K = GradedComplex(((), ("e",)), (RatMatrix.zeros(1, 0), RatMatrix.zeros(0, 1)))
    Q = GradedComplex((("a", "b"), ()), (RatMatrix.zeros(0, 2), RatMatrix.zeros(0, 0)))
    inc = ChainMap(K, C, (RatMatrix.zeros(2, 0), RatMatrix.identity(1)))
    proj = ChainMap(C, Q, (RatMatrix.identity(2), RatMatrix.zeros(0, 1)))
    return C, K, Q, inc, proj

def test_d_squared_nonzero_is_rejected():
    one = RatMatrix.from_dense([[1]])
    with pytest.raises(ComplexError):
        GradedComplex((("a",), ("b",), ("c",)), (one, one, RatMatrix.zeros(0, 1)))

def test_shape_mismatch_is_rejected():
    with pytest.raises(ComplexError):
        GradedComplex((("a",), ("b",)), (RatMatrix.zeros(2, 1), RatMatrix.zeros(0, 1)))

def test_h3_betti():
    assert cohomology(h3_complex()).betti == (1, 2, 2, 1)

def test_point_is_a_tensor_unit():
    C = h3_complex()
    assert cohomology(GradedComplex.point()).betti == (1,)
    assert cohomology(tensor(GradedComplex.point(), C)).betti == (1, 2, 2, 1)

def test_kunneth_for_h3_squared():
    C = h3_complex()
    T = tensor(C, C)
    assert T.dims() == (1, 6, 15, 20, 15, 6, 1)
    assert cohomology(T).betti == (1, 4, 8, 10, 8, 4, 1)

def test_representatives_are_cocycles_outside_coboundaries():
    h = cohomology(h3_complex())
    for p, deg in enumerate(h.degrees):
        assert len(deg.representatives) == deg.betti
        for r in deg.representatives:
            assert not any(h.complex.differential(p).apply(r))

def test_chain_map_must_commute():
    C = h3_complex()
    parts = [RatMatrix.identity(C.dim(p)) for p in C.degrees()]
    parts[2] = RatMatrix.zeros(C.dim(2), C.dim(2))
    with pytest.raises(ComplexError):
        ChainMap(C, C, tuple(parts))

def test_identity_induces_identity():
    C = h3_complex()
    for p, M in enumerate(induced_cohomology_map(ChainMap.identity(C))):
        assert M == RatMatrix.identity(cohomology(C).betti_at(p))

def test_restrict_rejects_unstable_subspace():
    C = h3_complex()
    spaces = [[unit_vector(1, 0)], [unit_vector(3, 2)], [], []]  # x3 alone: d x3 = -x1^x2 escapes
    with pytest.raises(ComplexError, match="degree 1"):
        restrict(C, spaces)

def test_subcomplex_inclusion_of_closed_generators():
    C = h3_complex()
    spaces = [[unit_vector(1, 0)], [unit_vector(3, 0), unit_vector(3, 1)], [], []]
    sub, inc = subcomplex_inclusion(C, spaces)
    assert sub.dims() == (1, 2, 0, 0)
    assert cohomology(sub).betti == (1, 2, 0, 0)
    assert inc.f[1].shape == (3, 2)

def test_connecting_homomorphism_of_the_interval():
    C, K, Q, inc, proj = interval()
    delta = connecting_homomorphism(inc, proj, 0)
    assert delta.to_dense() == [[-1, 1]]
    assert cohomology(C).betti == (1, 0)

def test_connecting_homomorphism_ignores_the_lift():
    model = builtin_example("nilprod").model
    C = model_complex(model).complex
    seq = lefschetz_sequence(C, validate_symplectic(C, model.symplectic))
    assert len(rank_kernel_image(seq.projection.f[3]).kernel) == 14
    base = connecting_homomorphism(seq.inclusion, seq.projection, 3, seq.hK, seq.hQ)
    assert rank(base) == seq.coker_les(4)
    for seed in range(3):
        lifted = connecting_homomorphism(seq.inclusion, seq.projection, 3, seq.hK, seq.hQ,
                                         rng=random.Random(seed))
        assert lifted == base

def test_connecting_homomorphism_needs_degree_zero_maps():
    C, K, Q, inc, proj = interval()
    shifted = ChainMap.zero(C, Q, 1)
    with pytest.raises(ComplexError):
        connecting_homomorphism(inc, shifted, 0)

def test_composition_with_the_identity():
    C = h3_complex()
    spaces = [[unit_vector(1, 0)], [unit_vector(3, 0), unit_vector(3, 1)], [], []]
    sub, inc = subcomplex_inclusion(C, spaces)
    assert ChainMap.identity(C).compose(inc).f == inc.f
    assert inc.compose(ChainMap.identity(sub)).f == inc.f

def test_zero_map_induces_zero():
    C = h3_complex()
    h = cohomology(C)
    for p, M in enumerate(induced_cohomology_map(ChainMap.zero(C, C))):
        assert M.is_zero()
        assert M.shape == (h.betti_at(p), h.betti_at(p))
