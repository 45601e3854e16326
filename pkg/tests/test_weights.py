from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affine_hecke.roots import build_root_system
from affine_hecke.weights import (
    Weight,
    WeightError,
    dominant_rep,
    dominant_with_element,
    orbit,
    real_weight,
    weight_value,
    weyl_act,
    zero_pole_sets,
)
from affine_hecke.weyl import WeylElement, weyl_group, word_label

A2 = build_root_system("A2")


def test_real_weight_values():
    t = real_weight(A2, (F(2, 3), F(1, 3)))
    ctx = t.ctx
    assert ctx.D == 3
    assert list(t.values) == [ctx.q_power(F(4, 3)), ctx.q_power(F(2, 3))]
    assert all(v.is_one() for v in real_weight(A2, (0, 0)).values)


def test_real_weight_wrong_length():
    with pytest.raises(WeightError):
        real_weight(A2, (1,))


def test_weight_value():
    t = real_weight(A2, (F(2, 3), F(1, 3)))
    assert weight_value(t, A2.simple_root(0)) == t.ctx.q_power(2)
    assert weight_value(t, A2.simple_root(1)).is_one()
    assert weight_value(t, (0, 0)).is_one()


def test_weyl_act_identity_and_action():
    t = real_weight(A2, (F(2, 3), F(1, 3)))
    assert weyl_act(WeylElement.identity(A2), t) == t
    s1t = weyl_act(WeylElement.simple(A2, 0), t)
    assert s1t.simple_value(0) == t.ctx.q_power(-2)
    assert s1t.simple_value(1) == t.ctx.q_power(2)


@settings(max_examples=30, deadline=None)
@given(st.tuples(st.fractions(-2, 2, max_denominator=4), st.fractions(-2, 2, max_denominator=4)))
def test_weyl_act_is_an_action(c):
    t = real_weight(A2, c)
    W = list(weyl_group(A2))
    for a in W[:3]:
        for b in W:
            assert weyl_act(a * b, t) == weyl_act(a, weyl_act(b, t))
    # (w t)(X^lam) = t(X^{w^-1 lam})
    lam = (1, -2)
    for w in W:
        assert weyl_act(w, t).value(lam) == t.value(w.inverse().act(lam))


def test_zero_pole_sets():
    assert zero_pole_sets(A2, real_weight(A2, (F(2, 3), F(1, 3)))) == ({1}, {0, 2})
    assert zero_pole_sets(A2, real_weight(A2, (F(1, 5), F(1, 7)))) == (set(), set())
    for name in ("A2", "G2", "B3"):
        rs = build_root_system(name)
        Z, P = zero_pole_sets(rs, real_weight(rs, (0,) * rs.rank))
        assert Z == set(range(rs.n_positive)) and P == set()


def test_pole_set_uses_both_signs():
    t = real_weight(A2, (F(-2, 3), F(-1, 3)))
    assert zero_pole_sets(A2, t)[1] == {0, 2}


def test_orbits():
    t = real_weight(A2, (F(2, 3), F(1, 3)))
    orb = orbit(A2, t)
    assert [word_label(w.word) for w, _ in orb] == ["1", "s1", "s2s1"]
    assert all(weyl_act(w, t) == s for w, s in orb)
    assert len(orbit(A2, real_weight(A2, (F(1, 5), F(1, 7))))) == 6
    assert len(orbit(A2, real_weight(A2, (0, 0)))) == 1


@pytest.mark.parametrize("name", ["A2", "C2", "G2", "B3"])
def test_orbit_size_is_index_of_stabilizer(name):
    rs = build_root_system(name)
    for c in [(F(1, 2),) + (0,) * (rs.rank - 1), (F(1, 3),) * rs.rank, (0,) * rs.rank]:
        t = real_weight(rs, c)
        stab = sum(1 for w in weyl_group(rs) if weyl_act(w, t) == t)
        orb = orbit(rs, t)
        assert len(orb) * stab == len(weyl_group(rs))
        # representatives have minimal length in their coset
        for w, s in orb:
            assert w.length == min(v.length for v in weyl_group(rs) if weyl_act(v, t) == s)


def test_dominant_rep():
    t = real_weight(A2, (F(2, 3), F(1, 3)))
    assert dominant_rep(A2, t) == t
    s1t = t.reflect(0)
    assert dominant_rep(A2, s1t) == t
    w, d = dominant_with_element(A2, s1t)
    assert weyl_act(w, s1t) == d
    z = real_weight(A2, (0, 0))
    assert dominant_rep(A2, z) == z


def test_dominant_needs_real_weight():
    t = real_weight(A2, (1, 0))
    with pytest.raises(WeightError):
        dominant_rep(A2, Weight(A2, t.values))
