"""Field derivation against the printed polynomial systems.

The projected field (u, v) of every family is pinned against the general
closed forms printed for each Type class, and the three fully expanded
example systems.  Since the derivation here starts from the Ricci
components and clears denominators independently, agreement is a real
cross-check, not a tautology.
"""

import math
from fractions import Fraction

import pytest

from flagricci.catalog import (
    TYPE1_IDS,
    e6_family,
    reference_equilibria,
    so_family,
    su_family,
    type1_family,
)
from flagricci.flowgen import (
    cleared_field,
    clearing_factor_value,
    lyapunov_planar,
    lyapunov_value,
    projected_field,
    ricci_components,
    scalar_curvature,
)
from flagricci.polyalg import Poly

X = Poly.variable("x", 2)
Y = Poly.variable("y", 2)
ONE = Poly.constant(1, 2)


def C(c):
    return Poly.constant(c, 2)


# ----------------------------------------------------------------------
# printed general forms, entered from their factored shape


def su_printed(m, n, p):
    u = -X * (C(2) * X - ONE) * (
        C(m) * (C(4) * Y - ONE) * (X + Y - ONE)
        + C(n) * Y * (C(4) * X + C(4) * Y - C(3))
        + C(p) * (X * (C(4) * Y - ONE) + (ONE - C(2) * Y) * (ONE - C(2) * Y))
    )
    v = -Y * (C(2) * Y - ONE) * (
        C(m) * (C(4) * X - ONE) * (X + Y - ONE)
        + C(n) * (Y * (C(4) * X - ONE) + (ONE - C(2) * X) * (ONE - C(2) * X))
        + C(p) * X * (C(4) * X + C(4) * Y - C(3))
    )
    return u, v


def so_printed(ell):
    u = -X * (C(2) * X - ONE) * (
        C(ell) * (X * (C(8) * Y - ONE) + C(8) * Y * Y - C(7) * Y + ONE)
        - C(4) * Y * (C(2) * X + C(2) * Y - ONE)
    )
    v = -Y * (C(2) * Y - ONE) * (
        C(ell) * (C(8) * X * X + X * (C(8) * Y - C(7)) - Y + ONE)
        - C(4) * X * (C(2) * X + C(2) * Y - ONE)
    )
    return u, v


def type1_printed(d1, d2, d3):
    u = X * (
        C(-4 * d2 * d2 * d3) * (
            C(2) * X**3 * (Y - ONE) - (Y - ONE) * Y * Y
            + X * X * (C(3) - C(4) * Y + C(3) * Y * Y)
            + X * (-ONE + C(2) * Y - C(4) * Y * Y + Y**3)
        )
        - C(2 * d1 * d1) * (
            C(2 * d3) * (Y - ONE) * Y * (X * (Y - ONE) + Y * Y)
            + C(d2) * (
                (Y - ONE) * Y**3 + X**3 * (C(-4) + C(8) * Y)
                + C(2) * X * X * (C(3) - C(9) * Y + C(4) * Y * Y)
                + X * (C(-2) + C(8) * Y - C(6) * Y * Y + Y**3)
            )
        )
        + C(2 * d1 * d2) * (
            C(-2 * d2) * (
                (Y - ONE) * Y * Y + C(2) * X**3 * (C(-1) + C(7) * Y)
                + X * X * (C(3) - C(22) * Y + C(13) * Y * Y)
                - X * (ONE - C(7) * Y + C(4) * Y * Y + Y**3)
            )
            + C(d3) * (
                X**3 * (C(4) - C(64) * Y)
                + X * X * (C(-6) + C(86) * Y - C(60) * Y * Y)
                + Y * Y * (C(4) - C(5) * Y + Y * Y)
                + X * (C(2) - C(24) * Y + C(18) * Y * Y + C(5) * Y**3)
            )
        )
    )
    v = Y * (
        C(-4 * d2 * d2 * d3) * X * (
            C(2) * X * X * (Y - ONE) + (Y - ONE) * Y * Y
            + X * (ONE - C(2) * Y + C(3) * Y * Y)
        )
        - C(2 * d1 * d1) * (
            C(2 * d3) * (Y - ONE) * (Y - ONE) * (X * (Y - ONE) + Y * Y)
            + C(d2) * (
                (Y - ONE) * (Y - ONE) * Y * Y + X**3 * (C(-4) + C(8) * Y)
                + C(2) * X * X * (C(3) - C(8) * Y + C(4) * Y * Y)
                + X * (C(-2) + C(6) * Y - C(5) * Y * Y + Y**3)
            )
        )
        + C(2 * d1 * d2) * (
            C(2 * d2) * X * (
                ONE + X * X * (C(6) - C(14) * Y) - C(3) * Y + Y * Y + Y**3
                + X * (C(-7) + C(22) * Y - C(13) * Y * Y)
            )
            + C(d3) * (
                X**3 * (C(28) - C(64) * Y) + (Y - ONE) * (Y - ONE) * Y * Y
                + X * X * (C(-26) + C(88) * Y - C(60) * Y * Y)
                + X * (C(2) - C(6) * Y - Y * Y + C(5) * Y**3)
            )
        )
    )
    return u, v


@pytest.mark.parametrize("mnp", [(1, 1, 1), (2, 1, 1), (2, 2, 1), (3, 2, 1), (5, 3, 2), (4, 4, 4)])
def test_su_field_matches_printed_general_form(mnp):
    f = projected_field(su_family(*mnp))
    u, v = su_printed(*mnp)
    assert f.u == u
    assert f.v == v


@pytest.mark.parametrize("ell", [4, 5, 6, 9])
def test_so_field_matches_printed_general_form(ell):
    f = projected_field(so_family(ell))
    u, v = so_printed(ell)
    assert f.u == u
    assert f.v == v


@pytest.mark.parametrize("fid", TYPE1_IDS)
def test_type1_field_matches_printed_general_form(fid):
    fam = type1_family(fid)
    f = projected_field(fam)
    u, v = type1_printed(*fam.dims)
    assert f.u == u
    assert f.v == v


def test_e6_field_equals_su111_field():
    assert projected_field(e6_family()).u == projected_field(su_family(1, 1, 1)).u
    assert projected_field(e6_family()).v == projected_field(su_family(1, 1, 1)).v


# ----------------------------------------------------------------------
# the three expanded example systems


def test_su4_example_system_exact():
    f = projected_field(su_family(2, 1, 1))
    u_ex = X * (
        X * X * (C(6) - C(32) * Y)
        + X * (C(-32) * Y * Y + C(50) * Y - C(9))
        + C(16) * Y * Y - C(17) * Y + C(3)
    )
    v_ex = -Y * (C(2) * Y - ONE) * (
        C(16) * X * X + X * (C(16) * Y - C(17)) - C(3) * Y + C(3)
    )
    assert f.u == u_ex
    assert f.v == v_ex


def test_so12_example_system_exact():
    f = projected_field(so_family(6))
    u, v = so_printed(6)
    assert f.u == u
    assert f.v == v


def test_e8_su8_example_proportional_by_positive_rational():
    f = projected_field(type1_family("e8su8u1"))
    u_ex = -X * (
        C(4) * X**3 * (C(55) * Y - C(12))
        + X * X * (C(210) * Y * Y - C(370) * Y + C(72))
        + X * (C(-100) * Y * Y + C(135) * Y - C(24))
        + C(10) * (Y * Y - ONE) * Y * Y
    )
    v_ex = -Y * (
        C(20) * X**3 * (C(11) * Y - C(5))
        + C(2) * X * X * (C(105) * Y * Y - C(178) * Y + C(59))
        - C(27) * X * (C(2) * Y * Y - C(3) * Y + ONE)
        + C(10) * (Y - ONE) * (Y - ONE) * Y * Y
    )
    ratios = set()
    for mine, printed in ((f.u, u_ex), (f.v, v_ex)):
        assert set(mine.terms) == set(printed.terms)
        for key, coeff in printed.terms.items():
            ratios.add(mine.terms[key] / coeff)
    assert len(ratios) == 1
    scalar = ratios.pop()
    assert scalar > 0
    d1, d2, d3 = type1_family("e8su8u1").dims
    assert scalar == 2 * d1 * d2 * d3


# ----------------------------------------------------------------------
# structural properties of the derivation


def all_test_families():
    fams = [su_family(2, 1, 1), su_family(1, 1, 1), su_family(3, 2, 1),
            so_family(4), so_family(6), e6_family()]
    fams.extend(type1_family(fid) for fid in TYPE1_IDS)
    return fams


@pytest.mark.parametrize("fam", all_test_families(), ids=lambda f: f"{f.id}{f.params}")
def test_cleared_field_divisibility(fam):
    fp, gp, hp = cleared_field(fam)
    assert all(e[0] >= 1 for e in fp.terms), "x divides the first component"
    assert all(e[1] >= 1 for e in gp.terms), "y divides the second component"
    assert all(e[2] >= 1 for e in hp.terms), "z divides the third component"


@pytest.mark.parametrize("fam", all_test_families(), ids=lambda f: f"{f.id}{f.params}")
def test_projected_degree(fam):
    f = projected_field(fam)
    expected = 4 if fam.is_type_two else 5
    assert f.degree() == expected


@pytest.mark.parametrize("fam", all_test_families(), ids=lambda f: f"{f.id}{f.params}")
def test_projection_identity(fam):
    """u and v really are A and B with z eliminated."""
    fp, gp, hp = cleared_field(fam)
    total = fp + gp + hp
    xv = Poly.variable("x", 3)
    yv = Poly.variable("y", 3)
    a = fp - total * xv
    b = gp - total * yv
    f = projected_field(fam)
    assert f.u == a.substitute_z()
    assert f.v == b.substitute_z()


@pytest.mark.parametrize("fam", all_test_families(), ids=lambda f: f"{f.id}{f.params}")
def test_field_vanishes_exactly_at_exact_reference_equilibria(fam):
    f = projected_field(fam)
    for rec in reference_equilibria(fam):
        if not rec.position_exact:
            continue
        u0, v0 = f.eval_exact(*rec.position)
        assert u0 == 0, f"{rec.label}: u != 0"
        assert v0 == 0, f"{rec.label}: v != 0"


# ----------------------------------------------------------------------
# Ricci components, scalar curvature, Lyapunov quantity


SAMPLE_METRICS = [
    (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)),
    (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)),
    (Fraction(2, 7), Fraction(3, 7), Fraction(2, 7)),
    (Fraction(1), Fraction(2), Fraction(3)),
]


@pytest.mark.parametrize("fam", all_test_families(), ids=lambda f: f"{f.id}{f.params}")
def test_ricci_scaling_degree_minus_one(fam):
    """Ric(c g) = Ric(g) forces r_i(c m) = r_i(m) / c, exactly."""
    c = Fraction(5, 3)
    for m in SAMPLE_METRICS:
        base = ricci_components(fam, m)
        scaled = ricci_components(fam, tuple(c * v for v in m))
        assert scaled == tuple(r / c for r in base)


@pytest.mark.parametrize("fam", all_test_families(), ids=lambda f: f"{f.id}{f.params}")
def test_scalar_curvature_positive_and_scales(fam):
    for m in SAMPLE_METRICS:
        s = scalar_curvature(fam, m)
        assert s > 0
        assert scalar_curvature(fam, tuple(2 * v for v in m)) == s / 2


@pytest.mark.parametrize("fam", all_test_families(), ids=lambda f: f"{f.id}{f.params}")
def test_lyapunov_scale_invariant(fam):
    for m in SAMPLE_METRICS:
        base = lyapunov_value(fam, m)
        scaled = lyapunov_value(fam, tuple(Fraction(7, 2) * v for v in m))
        assert math.isfinite(base) and base < 0
        assert scaled == pytest.approx(base, rel=1e-12)


def test_lyapunov_planar_degenerate_conventions():
    fam = su_family(2, 1, 1)
    assert math.isfinite(lyapunov_planar(fam, 0.3, 0.3))
    assert lyapunov_planar(fam, 0.0, 0.5) == -math.inf
    assert lyapunov_planar(fam, 0.5, 0.5) == -math.inf
    assert lyapunov_planar(fam, 0.0, 0.0) == math.inf
    assert lyapunov_planar(fam, 0.0, 1.0) == math.inf


def test_ricci_rejects_nonpositive_metrics():
    fam = su_family(2, 1, 1)
    with pytest.raises(ValueError):
        ricci_components(fam, (Fraction(0), Fraction(1), Fraction(1)))
    with pytest.raises(ValueError):
        lyapunov_value(fam, (Fraction(-1), Fraction(1), Fraction(1)))


def test_clearing_factor_values():
    assert clearing_factor_value(su_family(2, 1, 1), (1, 1, 1)) == 8
    assert clearing_factor_value(so_family(6), (1, 1, 1)) == 20
    fam = type1_family("g2u2")
    d1, d2, d3 = fam.dims
    delta = d1 + 4 * d2 + 9 * d3
    assert clearing_factor_value(fam, (1, 1, 1)) == 4 * delta * d1 * d2


# ----------------------------------------------------------------------
# fast numeric evaluation agrees with the exact polynomials


@pytest.mark.parametrize("fam", [su_family(2, 1, 1), so_family(6), type1_family("g2u2")],
                         ids=lambda f: f"{f.id}{f.params}")
def test_compiled_rhs_and_jacobian_match_exact(fam):
    import numpy as np

    f = projected_field(fam)
    pts = np.array([[0.2, 0.3], [0.1, 0.7], [0.45, 0.45], [0.61, 0.11]])
    raw = f.rhs(pts, normalized=False)
    for k, (x, y) in enumerate(pts):
        ue = float(f.u.eval((x, y)))
        ve = float(f.v.eval((x, y)))
        assert raw[k, 0] == pytest.approx(ue, rel=1e-12, abs=1e-9)
        assert raw[k, 1] == pytest.approx(ve, rel=1e-12, abs=1e-9)
    jac = f.jacobian(pts)
    for k, (x, y) in enumerate(pts):
        assert jac[k, 0, 0] == pytest.approx(float(f.du_dx.eval((x, y))), rel=1e-12, abs=1e-9)
        assert jac[k, 0, 1] == pytest.approx(float(f.du_dy.eval((x, y))), rel=1e-12, abs=1e-9)
        assert jac[k, 1, 0] == pytest.approx(float(f.dv_dx.eval((x, y))), rel=1e-12, abs=1e-9)
        assert jac[k, 1, 1] == pytest.approx(float(f.dv_dy.eval((x, y))), rel=1e-12, abs=1e-9)
    norm = f.rhs(pts)
    assert np.allclose(norm * f.scale, raw, rtol=1e-12, atol=0)
    assert f.scale == max(
        max(abs(c) for c in f.u.terms.values()),
        max(abs(c) for c in f.v.terms.values()),
    )
