"""Independence validation: the PASS / PASS-WEAK / FAIL classification."""

import pytest

from pcbias import ParityCheckSpec, validate_independence


def test_pass_simple():
    # offsets {0, 15}; the leftover period 7 divides neither 15 nor any gap
    spec = ParityCheckSpec(periods=(3, 5, 7), blocks=((1, 2),), multipliers=(1,))
    verdict = validate_independence(spec)
    assert verdict.status == "PASS" and verdict.ok


def test_fail_offset_is_period_multiple():
    # offsets {0, 14} and a leftover period 7
    spec = ParityCheckSpec(periods=(2, 3, 7), blocks=((1,),), multipliers=(7,))
    verdict = validate_independence(spec)
    assert verdict.status == "FAIL" and not verdict.ok
    assert any("multiple" in r for r in verdict.reasons)


def test_fail_on_pairwise_difference():
    # offsets {0, 6, 10, 16}: 16 is a multiple of the leftover period 4
    spec = ParityCheckSpec(periods=(3, 5, 4), blocks=((1,), (2,)), multipliers=(2, 2))
    assert spec.offsets == (0, 6, 10, 16)
    assert validate_independence(spec).status == "FAIL"


def test_pass_weak_on_coinciding_offsets():
    # offsets {0, 5, 9, 14}: none is a multiple of 4, but 9 - 5 is
    spec = ParityCheckSpec(periods=(5, 9, 4), blocks=((1,), (2,)), multipliers=(1, 1))
    assert spec.offsets == (0, 5, 9, 14)
    verdict = validate_independence(spec)
    assert verdict.status == "PASS-WEAK"
    assert any("coincide" in r for r in verdict.reasons)


def test_fail_when_repetition_structure_collapses():
    # M_1 = 15 is also a period of the block-2 variable (period 5), so all
    # four offsets read the same bit of x2 instead of two pairs
    spec = ParityCheckSpec(periods=(3, 5), blocks=((1,), (2,)), multipliers=(5, 1))
    verdict = validate_independence(spec)
    assert verdict.status == "FAIL"
    assert any("repetition structure" in r for r in verdict.reasons)


def test_fail_on_duplicate_offsets():
    spec = ParityCheckSpec(periods=(3, 3), blocks=((1,), (2,)), multipliers=(1, 1))
    verdict = validate_independence(spec)
    assert verdict.status == "FAIL"
    assert any("duplicate" in r for r in verdict.reasons)


def test_verdict_invariant_under_relabeling():
    spec = ParityCheckSpec(
        periods=(13, 3, 5, 7), blocks=((4, 2), (3,)), multipliers=(1, 2)
    )
    assert spec.variable_order == (4, 2, 3, 1)
    normalized = spec.normalized()
    assert normalized.is_normalized
    assert normalized.periods == (7, 3, 5, 13)
    assert (
        validate_independence(spec).status
        == validate_independence(normalized).status
    )


def test_derived_quantities():
    spec = ParityCheckSpec(periods=(3, 5, 7), blocks=((1,), (2,)), multipliers=(2, 1))
    assert spec.shifts == (6, 5)
    assert spec.offsets == (0, 6, 5, 11)
    assert spec.offset_set == (0, 5, 6, 11)
    assert (spec.n, spec.k, spec.s) == (3, 2, 2)
    assert spec.repeated_free_bits == 4
    assert spec.model_free_bits == 4 + 4


def test_spec_validation_errors():
    with pytest.raises(ValueError):
        ParityCheckSpec(periods=(), blocks=((1,),), multipliers=(1,))
    with pytest.raises(ValueError):
        ParityCheckSpec(periods=(3, 5), blocks=(), multipliers=())
    with pytest.raises(ValueError):
        ParityCheckSpec(periods=(3, 5), blocks=((1,), ()), multipliers=(1, 1))
    with pytest.raises(ValueError):
        ParityCheckSpec(periods=(3, 5), blocks=((1, 1),), multipliers=(1,))
    with pytest.raises(ValueError):
        ParityCheckSpec(periods=(3, 5), blocks=((3,),), multipliers=(1,))
    with pytest.raises(ValueError):
        ParityCheckSpec(periods=(3, 0), blocks=((1,),), multipliers=(1,))
    with pytest.raises(ValueError):
        ParityCheckSpec(periods=(3, 5), blocks=((1,),), multipliers=(0,))
    with pytest.raises(ValueError):
        ParityCheckSpec(periods=(3, 5), blocks=((1,), (2,)), multipliers=(1,))


def test_dict_round_trip():
    spec = ParityCheckSpec(periods=(7, 3, 5), blocks=((1,),), multipliers=(2,))
    assert ParityCheckSpec.from_dict(spec.to_dict()) == spec
