"""Theta factors, spec algebra, duals, and the modular relation."""

import math
from fractions import Fraction

import numpy as np
import pytest

from thetasum import qseries as qs
from thetasum import theta as th
from thetasum.errors import DomainError, InvalidSpec

from conftest import even_sum_counts, lattice_counts, signed_counts


def test_theta_series_kind3_counts_squares():
    a = th.theta_series(3, 36)
    assert a.denom_V == 1 and a.offset_A == 0
    for l in range(37):
        want = 2.0 if math.isqrt(l) ** 2 == l and l > 0 else (1.0 if l == 0 else 0.0)
        assert a.coeff(l) == want


def test_theta_series_kind4_signs():
    a = th.theta_series(4, 36)
    assert a.coeff(0) == 1.0
    assert a.coeff(1) == -2.0
    assert a.coeff(4) == 2.0
    assert a.coeff(9) == -2.0


def test_theta_series_kind2_grid():
    a = th.theta_series(2, 20)
    assert a.denom_V == 4
    assert a.offset_exponent() == 0.25
    # q^{1/4}(2 + 2 q^2 + 2 q^6 + ...)
    assert a.coeff(0) == 2.0
    assert a.coeff(8) == 2.0
    assert a.coeff(24) == 2.0


def test_theta_series_rejects_bad_kind():
    with pytest.raises(DomainError):
        th.theta_series(1, 10)


@pytest.mark.parametrize("kind", [2, 3, 4])
@pytest.mark.parametrize("q", [0.02, 0.1, 0.3, 0.5])
def test_product_form_matches_series(kind, q):
    series = th.theta_series(kind, 160)
    val = qs.evaluate(series, q)
    prod = th.theta_eval_product(kind, q)
    assert abs(val.value - prod) <= val.tail + 1e-13


def test_product_form_at_zero():
    assert th.theta_eval_product(3, 0.0) == 1.0
    assert th.theta_eval_product(4, 0.0) == 1.0
    assert th.theta_eval_product(2, 0.0) == 0.0


def test_product_form_domain():
    with pytest.raises(DomainError):
        th.theta_eval_product(3, 1.0)
    with pytest.raises(DomainError):
        th.theta_eval_product(3, -0.1)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_zd_preset_counts_lattice_vectors(d):
    series = th.build(th.preset("zd", d), 30)
    want = lattice_counts(d, 30)
    for l in range(31):
        assert series.coeff(l) == pytest.approx(want[l], abs=1e-10)


@pytest.mark.parametrize("d", [2, 3])
def test_dd_preset_counts_even_sum_vectors(d):
    series = th.build(th.preset("dd", d), 24)
    want = even_sum_counts(d, 24)
    for l in range(25):
        assert series.coeff(l) == pytest.approx(want[l], abs=1e-10)


@pytest.mark.parametrize("d", [2, 3])
def test_theta4d_preset_matches_signed_counts(d):
    series = th.build(th.preset("theta4d", d), 24)
    want = signed_counts(d, 24)
    for l in range(25):
        assert series.coeff(l) == pytest.approx(want[l], abs=1e-10)


def test_build_integer_scale_mix():
    # theta3(q) * theta3(q^2) counts x^2 + 2 y^2
    spec = th.ThetaSpec(
        terms=((1.0, (th.ThetaFactor(3, 1.0, Fraction(1)),
                      th.ThetaFactor(3, 1.0, Fraction(2)))),),
        dim_d=2.0,
    )
    series = th.build(spec, 20)
    want = [0] * 21
    for x in range(-5, 6):
        for y in range(-4, 5):
            n = x * x + 2 * y * y
            if n <= 20:
                want[n] += 1
    for l in range(21):
        assert series.coeff(l) == pytest.approx(want[l], abs=1e-10)


def test_build_noninteger_dimension_runs():
    series = th.build(th.preset("zd", 2.5), 12)
    # first shells: 1, then 2 * 2.5 = 5 at q^1
    assert series.coeff(0) == pytest.approx(1.0)
    assert series.coeff(1) == pytest.approx(5.0)


def test_spec_power_sum_must_match_dimension():
    with pytest.raises(InvalidSpec):
        th.ThetaSpec(
            terms=((1.0, (th.ThetaFactor(3, 2.0, Fraction(1)),)),),
            dim_d=3.0,
        )


def test_spec_dim_below_one_rejected():
    with pytest.raises(InvalidSpec):
        th.preset("zd", 0.5)


def test_dim_one_only_for_plain_cubic_form():
    assert th.preset("zd", 1).is_zd_form
    with pytest.raises(InvalidSpec):
        th.preset("dd", 1)


def test_preset_unknown_name():
    with pytest.raises(InvalidSpec):
        th.preset("e8", 2.0)


def test_dual_swaps_kinds_and_keeps_dim():
    spec = th.preset("dd", 2.4)
    dspec = th.dual(spec)
    kinds = sorted(f.kind for _, factors in dspec.terms for f in factors)
    assert kinds == [2, 3]
    assert dspec.dim_d == 2.4
    for coeff, _ in dspec.terms:
        assert coeff == 0.5  # unit scales leave coefficients alone


def test_dual_inverts_scales_and_rescales_coeff():
    spec = th.ThetaSpec(
        terms=((1.0, (th.ThetaFactor(3, 1.2, Fraction(1)),
                      th.ThetaFactor(4, 0.8, Fraction(3)))),),
        dim_d=2.0,
    )
    dspec = th.dual(spec)
    (coeff, factors), = dspec.terms
    by_kind = {f.kind: f for f in factors}
    assert by_kind[3].scale == Fraction(1)
    assert by_kind[2].scale == Fraction(1, 3)
    assert coeff == pytest.approx(3.0 ** -0.4, rel=1e-15)


@pytest.mark.parametrize("name,d", [("zd", 3.0), ("dd", 2.4), ("theta4d", 2.7)])
def test_dual_is_an_involution(name, d):
    spec = th.preset(name, d)
    back = th.dual(th.dual(spec))
    assert back.dim_d == spec.dim_d
    for (c1, f1), (c2, f2) in zip(back.terms, spec.terms):
        assert c1 == c2  # scale factors cancel exactly, not approximately
        assert f1 == f2


def test_json_roundtrip_is_bit_identical():
    spec = th.ThetaSpec(
        terms=((0.5, (th.ThetaFactor(3, 1.2, Fraction(1)),
                      th.ThetaFactor(4, 0.8, Fraction(1, 3)))),
               (-0.25, (th.ThetaFactor(2, 2.0, Fraction(7, 2)),))),
        dim_d=2.0,
    )
    back = th.ThetaSpec.from_json(spec.to_json())
    assert back == spec
    assert back.terms[0][1][1].scale == Fraction(1, 3)


def test_from_json_rejects_malformed():
    with pytest.raises(InvalidSpec):
        th.ThetaSpec.from_json("{}")
    with pytest.raises(InvalidSpec):
        th.ThetaSpec.from_json("not json")
    with pytest.raises(InvalidSpec):
        th.ThetaSpec.from_json('{"dim_d": 2.0, "terms": [{"coeff": 1.0}]}')


@pytest.mark.parametrize("kind", [2, 3, 4])
@pytest.mark.parametrize("t", [0.5, 0.8, 1.0, 1.6, 2.0])
def test_jacobi_residual_small(kind, t):
    assert th.jacobi_residual(kind, t) < 1e-12


def test_jacobi_residual_rejects_nonpositive_t():
    with pytest.raises(DomainError):
        th.jacobi_residual(3, 0.0)


def test_theta_values_at_exp_minus_pi():
    # self-dual point: kind 2 and kind 4 coincide, kind 3 is the classical value
    q = math.exp(-math.pi)
    v2 = qs.evaluate(th.theta_series(2, 200), q).value
    v4 = qs.evaluate(th.theta_series(4, 200), q).value
    assert v2 == pytest.approx(0.9135791381561168, abs=1e-14)
    assert v4 == pytest.approx(0.9135791381561168, abs=1e-14)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_coeff_bound_majorizes_counts(d):
    counts = lattice_counts(d, 60)
    for l in range(1, 61):
        assert counts[l] <= th.coeff_bound(d, l)


def test_coeff_bound_grows_subexponentially():
    # log bound is o(l): ratio at successive doublings shrinks
    r1 = math.log(th.coeff_bound(3, 50)) / 50
    r2 = math.log(th.coeff_bound(3, 100)) / 100
    r3 = math.log(th.coeff_bound(3, 200)) / 200
    assert r1 > r2 > r3
