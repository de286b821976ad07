# tests/test_lie.py
from fractions import Fraction as F

import pytest
from scipy.special import comb

from coeffkit.complexes import ComplexError, cohomology
from coeffkit.exterior import Multivector, blades_of_degree, parse_form, wedge
from coeffkit.lie import (
    LiePresentation, blade_differential, ce_complex, jacobiator, validate_presentation,
)

H3 = LiePresentation(("x1", "x2", "x3"), {(0, 1, 2): 1})
# [e1, e2] = e3, [e1, e3] = e1
BROKEN = LiePresentation(("e1", "e2", "e3"), {(0, 1, 2): 1, (0, 2, 0): 1})
# [e2, e3] = e1, [e1, e2] = e3 + e1
VALID3 = LiePresentation(("e1", "e2", "e3"), {(1, 2, 0): 1, (0, 1, 2): 1, (0, 1, 0): 1})

def test_h3_differential_sign():
    dx = H3.differentials()
    assert dx[2] == parse_form("-1 x1^x2", H3.names)
    assert dx[0].is_zero() and dx[1].is_zero()

def test_bracket_and_antisymmetry():
    e1, e2 = (F(1), F(0), F(0)), (F(0), F(1), F(0))
    assert H3.bracket(e1, e2) == (0, 0, 1)
    assert H3.bracket(e2, e1) == (0, 0, -1)
    assert H3.c(1, 0, 2) == -1

def test_constants_need_ordered_indices():
    with pytest.raises(ValueError):
        LiePresentation(("a", "b", "c"), {(1, 0, 2): 1})
    with pytest.raises(ValueError):
        LiePresentation(("a", "a"), {})

def test_from_differentials_inverts_differentials():
    again = LiePresentation.from_differentials(H3.names, {"x3": H3.differentials()[2]})
    assert again == H3

def test_from_differentials_rejects_non_two_forms():
    with pytest.raises(ValueError, match="2-form"):
        LiePresentation.from_differentials(("a", "b"), {"b": parse_form("a", ("a", "b"))})

def test_h3_ce_complex():
    C = ce_complex(H3, name="h3")
    assert C.dims() == (1, 3, 3, 1)
    assert cohomology(C).betti == (1, 2, 2, 1)

def test_abelian_betti_are_binomials():
    C = ce_complex(LiePresentation.abelian([f"e{i}" for i in range(1, 6)]))
    assert cohomology(C).betti == tuple(int(comb(5, p, exact=True)) for p in range(6))

def test_generator_cap():
    with pytest.raises(ValueError, match="cap"):
        ce_complex(LiePresentation.abelian(["a", "b", "c"]), max_gen=2)

def test_jacobi_failure_is_reported():
    assert any(jacobiator(BROKEN, 0, 1, 2))
    report = validate_presentation(BROKEN)
    assert not report.ok
    assert report.jacobi_failures == [(0, 1, 2)]
    assert report.d2_failures == ["e3"]
    assert report.lines(BROKEN.names)[0] == "Jacobi fails on (e1, e2, e3)"
    with pytest.raises(ComplexError):
        ce_complex(BROKEN)

def test_valid_presentations_pass():
    assert validate_presentation(H3).ok
    assert validate_presentation(VALID3).ok
    assert validate_presentation(LiePresentation.abelian(["a", "b"])).ok

def test_differential_is_an_antiderivation():
    names = ("x1", "x2", "x3", "y1", "y2", "y3")
    pres = LiePresentation(names, {(0, 1, 2): 1, (3, 4, 5): 1})
    m = pres.m
    dx = pres.differentials()

    def d(mv):
        out = Multivector.zero(m)
        for b, c in mv.terms.items():
            out = out + blade_differential(pres, b, dx).scale(c)
        return out

    for k in (1, 2):
        for a in blades_of_degree(m, k):
            for b in blades_of_degree(m, 2):
                u, v = Multivector.blade(m, a), Multivector.blade(m, b)
                sign = -1 if k % 2 else 1
                assert d(wedge(u, v)) == wedge(d(u), v) + wedge(u, d(v)).scale(sign)
