# tests/test_fuzz.py
import numpy as np
import pytest

from coeffkit import config
from coeffkit.coeffective import validate_symplectic
from coeffkit.fuzz import check_model, fuzz, random_nilpotent, random_sign_weights, search_omega
from coeffkit.lie import ce_complex, validate_presentation
from coeffkit.model_runtime import model_complex
from coeffkit.registry import builtin_example
from coeffkit.torus import check_weight_compatibility

def test_two_dimensional_models_always_test():
    report = fuzz(2, 5, 0)
    assert report.tested == 5
    assert report.ok
    assert report.summary().endswith("failures 0")

def test_four_dimensional_run_is_clean_and_deterministic():
    a = fuzz(4, 50, 1)
    assert a.ok, a.failures
    assert a.tested + a.skipped == 50
    assert fuzz(4, 50, 1) == a

def test_six_dimensional_run():
    report = fuzz(6, 100, 42)
    assert report.ok, report.failures
    assert report.tested + report.skipped == 100
    assert report.weights_checked > 0

def test_weight_retries_only_add_coverage():
    single = fuzz(6, 20, 42, settings=config.Settings(fuzz_weight_attempts=1))
    retried = fuzz(6, 20, 42)
    assert retried.ok, retried.failures
    assert (retried.tested, retried.skipped) == (single.tested, single.skipped)
    assert retried.weights_checked >= single.weights_checked

def test_parallel_run_matches_serial():
    assert fuzz(4, 8, 7, jobs=2) == fuzz(4, 8, 7, jobs=1)

@pytest.mark.parametrize("dim", [0, 3, 5])
def test_bad_dimensions(dim):
    with pytest.raises(ValueError, match="even"):
        fuzz(dim, 1, 0)

def test_dimension_cap():
    with pytest.raises(ValueError, match="cap"):
        fuzz(8, 1, 0, settings=config.Settings(max_generators=6))

def test_random_nilpotent_is_strictly_triangular():
    rng = np.random.default_rng(3)
    for _ in range(10):
        pres = random_nilpotent(6, rng, 2, 0.5)
        assert all(i < j < k for (i, j, k) in pres.constants)
        assert all(c != 0 for c in pres.constants.values())

def test_random_sign_weights_respect_the_bracket():
    rng = np.random.default_rng(11)
    seen = 0
    for _ in range(20):
        pres = random_nilpotent(5, rng, 1, 0.4)
        if not validate_presentation(pres).ok:
            continue
        W = random_sign_weights(pres, rng, 2)
        if W is not None:
            seen += 1
            assert check_weight_compatibility(pres, W).ok
    assert seen

def test_search_omega_on_the_torus():
    mc = model_complex(builtin_example("torus_4").model)
    omega = search_omega(mc.complex, 2, np.random.default_rng(0), 64, 2)
    assert omega is not None
    assert not omega.power(2).is_zero()

def test_search_omega_gives_up_without_closed_two_forms():
    mc = model_complex(builtin_example("h3z2").model, invariant=True)
    assert mc.complex.dim(2) == 1
    pres = random_nilpotent(2, np.random.default_rng(0), 1, 1.0)
    C = ce_complex(pres)
    assert search_omega(C, 1, np.random.default_rng(0), 4, 1) is not None
    assert search_omega(mc.full, 2, np.random.default_rng(0), 8, 1) is None

def test_check_model_on_known_examples():
    for key, invariant, full in [("torus_4", False, True), ("nilprod", False, True), ("ex52_product", True, False)]:
        model = builtin_example(key).model
        mc = model_complex(model, invariant=invariant)
        assert check_model(mc.complex, validate_symplectic(mc.complex, model.symplectic), full=full) == []
