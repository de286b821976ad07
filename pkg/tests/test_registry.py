# tests/test_registry.py
import pytest

from coeffkit.lie import validate_presentation
from coeffkit.model_runtime import model_presentation
from coeffkit.registry import (
    FIXED_KEYS, Golden, RegistryEntry, available_keys, builtin_example, verify_golden,
)
from coeffkit.schema import ModelError

FAMILY_KEYS = ["torus_2", "torus_4", "torus_6", "torus_8", "abelian_1", "abelian_3"]

@pytest.mark.parametrize("key", list(FIXED_KEYS) + FAMILY_KEYS)
def test_golden_tables_hold(key):
    assert verify_golden(builtin_example(key)) == []

@pytest.mark.parametrize("key", list(FIXED_KEYS) + FAMILY_KEYS)
def test_every_example_is_a_lie_algebra(key):
    assert validate_presentation(model_presentation(builtin_example(key).model)).ok

def test_unknown_key_lists_the_registry():
    with pytest.raises(ModelError, match="available") as exc:
        builtin_example("h4")
    for key in FIXED_KEYS:
        assert key in str(exc.value)

@pytest.mark.parametrize("key", ["torus_3", "torus_0", "abelian_0", "torus_x", "abelian_"])
def test_bad_family_members(key):
    with pytest.raises(ModelError):
        builtin_example(key)

def test_available_keys():
    keys = available_keys()
    assert keys[:len(FIXED_KEYS)] == list(FIXED_KEYS)
    assert "torus_<2n>" in keys

def test_mismatch_is_reported():
    entry = builtin_example("h3")
    wrong = RegistryEntry("h3", entry.model, Golden(False, (1, 3, 3, 1), dims=(1, 3, 3, 1)))
    problems = verify_golden(wrong)
    assert len(problems) == 1
    assert "betti" in problems[0]

def test_wrong_verdict_is_reported():
    entry = builtin_example("nilprod")
    exp = entry.expected
    wrong = RegistryEntry("nilprod", entry.model,
                          Golden(exp.invariant, exp.betti, dims=exp.dims, iso=(3,), non_iso=(4,)))
    assert verify_golden(wrong) == [
        "nilprod: expected iso at p=3, got non-iso",
        "nilprod: expected non-iso at p=4, got iso",
    ]

def test_entry_without_golden_is_skipped():
    assert verify_golden(RegistryEntry("x", builtin_example("h3").model)) == []

def test_generator_cap_applies_to_examples():
    with pytest.raises(ValueError, match="cap"):
        verify_golden(builtin_example("torus_8"), max_gen=6)
