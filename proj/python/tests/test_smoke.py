"""Smoke tests for the python module: one light touch per operation group."""

import pytest

import vcsat


def test_family_basics():
    fam = vcsat.SetFamily(4, [[], [1], [2], [1, 2]])
    assert len(fam) == 4
    assert fam.n == 4
    assert vcsat.vc_dimension(fam) == 2
    assert fam.members[0] == []
    assert fam.members[3] == [1, 2]

    x = vcsat.Subset([1, 2], 4)
    assert vcsat.shatters(fam, x)
    assert 2 in x and 4 not in x


def test_d3_construction_round_trip():
    fam = vcsat.build_saturated(3, 6)
    assert len(fam) == 10
    assert vcsat.vc_dimension(fam) == 2

    rep = vcsat.is_saturated(fam)
    assert rep.saturated and rep.vc == 2

    text = vcsat.serialize_family(fam)
    assert vcsat.parse_family(text) == fam

    ext = vcsat.extend_by_duplication(fam, 1, 8)
    assert vcsat.is_saturated(ext).saturated


def test_modular_conditions():
    x = vcsat.explicit_x_odd(3)
    assert x.values == [1, 3, 4]
    assert vcsat.check_odd_conditions(3, x).all_pass()
    assert len(vcsat.find_valid_x(3)) == 4

    fam = vcsat.modular_family(3, x)
    assert vcsat.verify_almost_shattering(fam, 3).ok

    with pytest.raises(ValueError):
        vcsat.explicit_x_odd(5)


def test_builtin_fails_almost_shattering():
    fam = vcsat.builtin_family("d4")
    assert len(fam) == 35
    assert vcsat.is_intersecting(fam)
    rep = vcsat.verify_almost_shattering(fam, 4)
    assert not rep.ok
    assert rep.failing_subset.elements == [1, 2, 4, 6]


def test_sumset():
    a = vcsat.ResidueSet(6, [1, 2, 3])
    assert vcsat.restricted_sumset(a, 2).values == [3, 4, 5]
    assert vcsat.check_sumset_bound(5).ok


def test_sampling_deterministic():
    one = vcsat.sample_pair_family(3, 1)
    two = vcsat.sample_pair_family(3, 1)
    assert one == two
    assert len(one) == 10
    assert vcsat.is_intersecting(one)


def test_lll_threshold():
    assert not vcsat.lll_evaluate(13).holds
    ev = vcsat.lll_evaluate(14)
    assert ev.holds
    assert ev.log_margin_lo <= ev.log_margin_hi
    assert ev.exponents[0] == 13 == ev.exponents[-1]


def test_saturation_number_oracle():
    assert vcsat.min_saturated_size(3, 1) == 4
    assert vcsat.sauer_bound(6, 2) == 22
