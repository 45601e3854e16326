from __future__ import annotations

from fractions import Fraction as F

import pytest

from affine_hecke.calibration import build_graph
from affine_hecke.hecke import principal_series, verify_defining_relations, weight_space_analysis
from affine_hecke.linalg import is_invertible
from affine_hecke.roots import build_root_system
from affine_hecke.scalars import QContext
from affine_hecke.skew import (
    SkewShapeError,
    TauContext,
    TauUndefinedError,
    build_skew_module,
    calibratable_detail,
    classify_calibrated,
    direct_sum,
    g2_case2_block,
    irreducibility_certificate,
    is_calibratable_rank2,
    is_placed_skew_shape,
    tau_matrix,
    verify_tau_properties,
)
from affine_hecke.suite import g2_expected
from affine_hecke.weights import real_weight

A2 = build_root_system("A2")
C2 = build_root_system("C2")
G2 = build_root_system("G2")
NONREG = real_weight(A2, (F(2, 3), F(1, 3)))
GENERIC = real_weight(A2, (F(1, 5), F(1, 7)))


def test_calibratable_conditions():
    assert is_calibratable_rank2(A2, GENERIC, 0, 1)
    t = real_weight(A2, (F(1, 5), F(2, 5)))
    assert t.simple_value(0).is_one()
    assert not is_calibratable_rank2(A2, t, 0, 1)
    ok, why = calibratable_detail(C2, real_weight(C2, (F(1, 2), 0)), 0, 1)
    assert ok and "condition (b)" in why
    with pytest.raises(ValueError):
        calibratable_detail(A2, GENERIC, 0, 0)


def test_c2_condition_b_pattern():
    t = real_weight(C2, (F(1, 2), 0))
    # neither simple value is 1, and s_long t has the pattern (q^2, 1)
    assert not t.simple_value(0).is_one() and not t.simple_value(1).is_one()
    u = t.reflect(1)
    assert u.simple_value(1) == t.ctx.q_power(2) and u.simple_value(0).is_one()


def test_nonregular_a2_has_no_skew_shape():
    shapes = classify_calibrated(A2, NONREG)
    assert [(sorted(c.shape.J), c.dim, c.skew) for c in shapes] == [([], 1, False), ([0], 1, False), ([0, 2], 1, False)]
    assert "condition (a) fails" in shapes[1].reason
    assert not is_placed_skew_shape(A2, NONREG, [0])
    with pytest.raises(SkewShapeError, match="condition"):
        build_skew_module(A2, NONREG, [0])


def test_forced_nonskew_build_breaks_braid():
    mod = build_skew_module(A2, NONREG, [0], force=True)
    q = QContext(3).q()
    assert mod.dim == 1
    assert mod.rep.T[0][0, 0] == -1 / q and mod.rep.T[1][0, 0] == q
    assert [c.name for c in mod.report.failures()] == ["braid T1,T2 (m=3)"]


def test_generic_and_trivial_classification():
    [c] = classify_calibrated(A2, GENERIC)
    assert c.skew and c.dim == 6
    [c] = classify_calibrated(A2, real_weight(A2, (0, 0)))
    assert not c.skew


def test_generic_skew_module_matches_principal_series():
    mod = build_skew_module(A2, GENERIC, [])
    assert mod.dim == 6 and mod.report.ok
    rep = weight_space_analysis(principal_series(A2, GENERIC))
    assert sorted(map(repr, rep.support)) == sorted(map(repr, mod.rep.weights))


def test_c2_case_one():
    mod = build_skew_module(C2, real_weight(C2, (F(1, 2), 0)), [])
    q = QContext(1).q()
    assert mod.dim == 1
    assert (mod.rep.T[1][0, 0], mod.rep.T[0][0, 0]) == (-1 / q, q)


def test_g2_block():
    b = g2_case2_block()
    exp = g2_expected()
    assert (b.long_index, b.short_index) == (1, 0)
    for key in ("T_long", "T_short", "X_long", "X_short"):
        assert getattr(b, key) == exp[key]
    assert b.X_long != exp["X_long_unbalanced"]
    # the unbalanced matrices cannot hold: s_long sends alpha_long to its negative
    Xl = exp["X_long_unbalanced"]
    assert Xl[0, 0] * Xl[1, 1] != b.X_long.one


def test_skew_modules_satisfy_relations_and_certificates():
    for rs, c in [(A2, (F(1, 2), 0)), (C2, (F(1, 2), 0)), (C2, (F(1, 3), F(1, 3))), (G2, (0, 1)), (G2, (F(1, 2), F(1, 3)))]:
        t = real_weight(rs, c)
        g = build_graph(rs, t)
        for cs in classify_calibrated(rs, t):
            if not cs.skew:
                continue
            mod = build_skew_module(rs, t, cs.shape.J)
            assert verify_defining_relations(mod.rep).ok
            assert irreducibility_certificate(mod, g).ok
            # every weight of the support is calibratable for each simple pair
            for s in mod.rep.weights:
                assert is_calibratable_rank2(rs, s, 0, 1)
            # tau between nonzero weight spaces is a bijection
            ctx = TauContext(mod.rep)
            for s in ctx.spaces:
                for i in range(rs.rank):
                    if not s.simple_value(i).is_one() and ctx.basis(s.reflect(i)):
                        assert is_invertible(ctx.tau(i, s).matrix)


def test_direct_sum_is_not_certified():
    t = real_weight(A2, (F(1, 2), 0))
    shapes = [c for c in classify_calibrated(A2, t) if c.skew]
    assert len(shapes) >= 2
    a = build_skew_module(A2, t, shapes[0].shape.J)
    b = build_skew_module(A2, t, shapes[1].shape.J)
    cert = irreducibility_certificate(direct_sum(a.rep, b.rep), build_graph(A2, t))
    assert not cert.ok


def test_principal_series_certificate_matches_skew():
    g = build_graph(A2, GENERIC)
    c1 = irreducibility_certificate(principal_series(A2, GENERIC), g)
    c2 = irreducibility_certificate(build_skew_module(A2, GENERIC, []), g)
    assert c1.ok and c2.ok and c1.reasons == c2.reasons


@pytest.mark.parametrize("rs", [A2, C2, G2], ids=["A2", "C2", "G2"])
def test_tau_generic(rs):
    M = principal_series(rs, real_weight(rs, (F(1, 5), F(1, 7))))
    report = verify_tau_properties(M)
    assert report.ok
    assert not any(c.skipped for c in report.checks)


def test_tau_square_scalar_one_by_one():
    M = principal_series(A2, GENERIC)
    ctx = TauContext(M)
    op = tau_matrix(M, 0, GENERIC, ctx)
    back = tau_matrix(M, 0, op.target, ctx)
    sq = (back.matrix @ op.matrix)[0, 0]
    z = GENERIC.simple_value(0)
    q = GENERIC.ctx.q()
    assert op.matrix.shape == (1, 1)
    assert sq == (q - z / q) * (q - 1 / (z * q)) / ((1 - z) * (1 - 1 / z))


def test_tau_at_q_squared():
    t = real_weight(A2, (F(1, 2), 0))
    assert t.simple_value(0) == t.ctx.q_power(2)
    M = principal_series(A2, t)
    ctx = TauContext(M)
    op = ctx.tau(0, t)
    back = ctx.tau(0, op.target)
    assert (back.matrix @ op.matrix).is_zero()
    assert not (is_invertible(op.matrix) and is_invertible(back.matrix))
    assert verify_tau_properties(M).ok


def test_tau_skew_edge_invertible():
    mod = build_skew_module(A2, GENERIC, [])
    op = tau_matrix(mod.rep, 0, GENERIC)
    assert op.matrix.shape == (1, 1) and is_invertible(op.matrix)


def test_tau_undefined_rank_one():
    A1 = build_root_system("A1")
    t = real_weight(A1, (0,))
    M = principal_series(A1, t)
    with pytest.raises(TauUndefinedError):
        tau_matrix(M, 0, t)
    report = verify_tau_properties(M)
    assert report.checks and all(c.skipped and c.detail == "undefined" for c in report.checks)


def test_tau_non_semisimple_space():
    M = principal_series(A2, NONREG)
    assert verify_tau_properties(M).ok
