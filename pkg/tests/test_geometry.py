import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from schatten_geom import geometry as geo
from schatten_geom import alpha, schatten_norm
from schatten_geom.errors import DegenerateOperand, DomainError, NumericalFailure
from schatten_geom.geometry import MeanKind, angle_suite, is_bj_orthogonal, is_parallel, mean_value

from conftest import PS, cgauss

SWAP = np.array([[0, 1], [1, 0]], dtype=complex)
D21 = np.diag([2.0, 1.0])
E1, E2 = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])


def test_bj_examples():
    for p in PS:
        assert is_bj_orthogonal(E1, E2, p)
        assert not is_bj_orthogonal(D21, D21, p)
    assert is_bj_orthogonal(D21, SWAP, 2)
    with pytest.raises(DegenerateOperand):
        is_bj_orthogonal(np.zeros((2, 2)), E1, 2)


def test_parallel_examples(rng):
    X = cgauss(rng, 3)
    for p in PS:
        assert is_parallel(X, (1 + 1j) * X, p)
        assert is_parallel((1 + 1j) * X, X, p)
    assert not is_parallel(E1, E2, 2)
    with pytest.raises(DegenerateOperand):
        is_parallel(X, np.zeros((3, 3)), 2)


@pytest.mark.parametrize("p", PS)
def test_parallel_scaling_invariance(p, rng):
    X = cgauss(rng, 3)
    Y = cgauss(rng, 3)
    for A, B in ((X, -2.5 * X), (X, Y)):
        base = is_parallel(A, B, p)
        for r, s in ((0.5, 3.0), (7.0, 0.1)):
            assert is_parallel(r * A, s * B, p) == base
        assert is_parallel(B, A, p) == base


@pytest.mark.parametrize("p", PS)
def test_alpha_one_iff_parallel(p, pairs):
    for X, Y in pairs:
        for B in (Y, (0.3 - 2j) * X):
            verdicts = {
                abs(abs(alpha(B, X, p)) - 1) <= geo.PARALLEL_TOL,
                is_parallel(X, B, p),
                is_parallel(B, X, p),
                abs(abs(alpha(X, B, p)) - 1) <= geo.PARALLEL_TOL,
            }
            assert len(verdicts) == 1


@pytest.mark.parametrize("p", PS)
def test_alpha_symmetric_for_real_multiples(p, rng):
    X = cgauss(rng, 4)
    for a in (-3.0, 0.5, 2.0):
        assert alpha(a * X, X, p) == pytest.approx(alpha(X, a * X, p), rel=1e-12)


@pytest.mark.parametrize("p", PS)
def test_mutual_orthogonality_iff_alphas_vanish(p, rng):
    X = np.zeros((4, 4), complex)
    Y = np.zeros((4, 4), complex)
    X[:2, :2], Y[2:, 2:] = cgauss(rng, 2), cgauss(rng, 2)
    assert abs(alpha(Y, X, p)) < 1e-12 and abs(alpha(X, Y, p)) < 1e-12
    assert is_bj_orthogonal(X, Y, p) and is_bj_orthogonal(Y, X, p)
    X2, Y2 = cgauss(rng, 4), cgauss(rng, 4)
    assert not (is_bj_orthogonal(X2, Y2, p) and is_bj_orthogonal(Y2, X2, p))


@pytest.mark.parametrize("p", PS)
def test_positive_orthogonal_pairs_have_zero_alpha(p, rng):
    # PSD with orthogonal ranges: X ⊥ Y and alpha vanishes both ways
    Q, _ = np.linalg.qr(cgauss(rng, 5))
    X = (Q[:, :2] * [3.0, 1.0]) @ Q[:, :2].conj().T
    Y = (Q[:, 2:] * [2.0, 0.5, 1.0]) @ Q[:, 2:].conj().T
    assert is_bj_orthogonal(X, Y, p)
    assert abs(alpha(Y, X, p)) < 1e-12 and abs(alpha(X, Y, p)) < 1e-12


def test_angle_suite_self():
    X = cgauss(np.random.default_rng(1), 3)
    r = angle_suite(X, X, 3)
    assert r.p_angle == pytest.approx(0, abs=1e-7)
    assert r.milicic == pytest.approx(0, abs=1e-7)
    for v in r.to_dict().values():
        if isinstance(v, float):
            assert 0 <= v <= 1e-7


def test_angle_suite_disjoint():
    for p in PS:
        r = angle_suite(E1, E2, p)
        assert r.p_angle == pytest.approx(math.pi / 2)
        assert r.milicic == pytest.approx(math.pi / 2)


@pytest.mark.parametrize("p", PS)
def test_p_angle_properties(p, pairs):
    for X, Y in pairs:
        r = angle_suite(X, Y, p)
        d = r.to_dict()
        assert all(0 <= d[k] <= math.pi for k in d if k != "mean")
        assert 0 <= r.p_angle <= math.pi / 2
        assert geo.p_angle(Y, X, p) == pytest.approx(r.p_angle, abs=1e-12)
        assert geo.p_angle(3j * X, -2 * Y, p) == pytest.approx(r.p_angle, abs=1e-10)
        assert r.p_angle <= r.gg + 1e-12
        lower, pa = geo.quadratic_mean_lower_bound(X, Y, p)
        assert pa == pytest.approx(r.p_angle)
        assert lower <= pa + 1e-12


@pytest.mark.parametrize("p", PS)
def test_angles_from_alpha_formulas(p, rng):
    X, Y = cgauss(rng, 3), 0.5 * cgauss(rng, 3)
    ayx, axy = alpha(Y, X, p), alpha(X, Y, p)
    nx, ny = schatten_norm(X, p), schatten_norm(Y, p)
    r = angle_suite(X, Y, p, MeanKind("qm"))
    assert r.milicic == pytest.approx(math.acos((ayx.real + axy.real) / 2))
    w = (nx**2 * ayx.real + ny**2 * axy.real) / (nx**2 + ny**2)
    assert r.weighted_g == pytest.approx(math.acos(w))
    assert r.gg == pytest.approx(math.acos(math.sqrt(abs(ayx.real) * abs(axy.real))))
    assert r.p_angle == pytest.approx(math.acos((abs(ayx) + abs(axy)) / 2))
    ww = (nx**2 * abs(ayx) + ny**2 * abs(axy)) / (nx**2 + ny**2)
    assert r.p_weighted == pytest.approx(math.acos(ww))
    assert r.gg_p == pytest.approx(math.acos(math.sqrt(abs(ayx) * abs(axy))))
    assert r.p_mean == pytest.approx(math.acos(math.sqrt((abs(ayx) ** 2 + abs(axy) ** 2) / 2)))
    assert r.mean == "qm"


def test_weighted_angle_defined_for_unequal_norms(rng):
    X = cgauss(rng, 3)
    r = angle_suite(X, 10 * X, 2)
    assert r.p_weighted == pytest.approx(0, abs=1e-7)


@pytest.mark.parametrize("p", PS)
def test_modulus_cauchy_schwarz_bounds(p, pairs):
    for X, Y in pairs:
        al = geo.moduli_alphas(X, Y, p)
        a = alpha(Y, X, p)
        bound = (al["adj_yx"] * al["abs_yx"]).real
        assert abs(a) ** 2 <= bound * (1 + 1e-9) + 1e-15
        assert a.real**2 <= al["adj_yx"].real * al["abs_yx"].real * (1 + 1e-9) + 1e-15


def test_quadratic_mean_bound_examples():
    X = cgauss(np.random.default_rng(5), 3)
    lo, pa = geo.quadratic_mean_lower_bound(X, X, 2)
    assert lo == pytest.approx(0, abs=1e-7) and pa == pytest.approx(0, abs=1e-7)
    lo, pa = geo.quadratic_mean_lower_bound(E1, E2, 3)
    assert lo == pytest.approx(math.pi / 2) and pa == pytest.approx(math.pi / 2)


def test_mean_examples():
    assert mean_value(MeanKind("am"), 3, 5) == 4
    assert mean_value(MeanKind("gm"), 4, 9) == 6
    a, b = 0.3, 0.8
    assert mean_value(MeanKind("heinz", 0.5), a, b) == pytest.approx(math.sqrt(a * b))
    assert geo.heinz_unnormalized(a, b, 0.5) == pytest.approx(2 * math.sqrt(a * b))
    assert mean_value(MeanKind("heinz", 0.0), a, b) == pytest.approx((a + b) / 2)
    assert mean_value(MeanKind("heinz", 1.0), a, b) == pytest.approx((a + b) / 2)
    with pytest.raises(DomainError):
        mean_value(MeanKind("hm"), 0.0, 1.0)
    with pytest.raises(DomainError):
        MeanKind("heinz", 1.5)
    with pytest.raises(DomainError):
        MeanKind("median")


def test_mean_parse():
    assert MeanKind.parse("heinz:0.25") == MeanKind("heinz", 0.25)
    assert MeanKind.parse("QM") == MeanKind("qm")
    assert MeanKind.parse("heinz").t == 0.5
    with pytest.raises(DomainError):
        MeanKind.parse("am:3")


@settings(max_examples=200, deadline=None)
@given(a=st.floats(1e-6, 1.0), b=st.floats(1e-6, 1.0), t=st.floats(0.0, 1.0))
def test_mean_chain(a, b, t):
    hm, gm, am, qm = (mean_value(MeanKind(k), a, b) for k in ("hm", "gm", "am", "qm"))
    eps = 1e-12
    assert min(a, b) - eps <= hm <= gm + eps <= am + 2 * eps <= qm + 3 * eps
    assert qm <= max(a, b) + eps
    ht = mean_value(MeanKind("heinz", t), a, b)
    assert gm - eps <= ht <= am + eps
    angles = [math.acos(min(1.0, m)) for m in (qm, am, gm, hm)]
    assert all(angles[i] <= angles[i + 1] + 1e-7 for i in range(3))


def test_safe_arccos():
    assert geo.safe_arccos(1 + 5e-10) == 0.0
    with pytest.raises(NumericalFailure):
        geo.safe_arccos(1 + 1e-6)
    with pytest.raises(NumericalFailure):
        geo.safe_arccos(float("nan"))
