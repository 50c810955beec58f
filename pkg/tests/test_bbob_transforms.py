import numpy as np
import pytest

from dynamorep.bbob import f_pen, lambda_scaling, t_asy, t_osz


def test_lambda_scaling_endpoints_d3():
    diag = lambda_scaling(100.0, 3)
    assert diag.shape == (3,)
    np.testing.assert_allclose(diag, [1.0, 100.0 ** 0.25, 10.0], rtol=1e-15)


def test_lambda_scaling_first_entry_is_one():
    for alpha in (10.0, 100.0, 1e6):
        for d in (2, 3, 5, 40):
            diag = lambda_scaling(alpha, d)
            assert diag[0] == 1.0
            assert diag[-1] == pytest.approx(np.sqrt(alpha), rel=1e-12)
            assert np.all(np.diff(diag) > 0)


def test_t_osz_fixes_zero_and_preserves_sign():
    x = np.array([-2.0, -1e-8, 0.0, 1e-8, 3.0])
    out = t_osz(x)
    assert out[2] == 0.0
    assert np.all(np.sign(out) == np.sign(x))


def test_t_osz_fixes_unit_points():
    # log(|x|) = 0 at |x| = 1, so both branches reduce to the identity
    np.testing.assert_allclose(t_osz(np.array([1.0, -1.0])), [1.0, -1.0],
                               atol=1e-15)


def test_t_osz_is_monotone():
    x = np.linspace(-4.0, 4.0, 4001)
    out = t_osz(x)
    assert np.all(np.diff(out) > 0)


def test_t_asy_identity_for_nonpositive():
    x = np.array([-3.0, -0.5, 0.0])
    np.testing.assert_array_equal(t_asy(x, 0.5), x)


def test_t_asy_first_component_unchanged():
    # ramp starts at 0, so component 0 keeps exponent 1
    x = np.array([2.0, 2.0, 2.0])
    out = t_asy(x, 0.2)
    assert out[0] == 2.0
    assert out[1] > 2.0
    assert out[2] > out[1]


def test_t_asy_batch_matches_single():
    rng = np.random.default_rng(3)
    batch = rng.uniform(-5, 5, (7, 4))
    out = t_asy(batch, 0.5)
    for k in range(7):
        np.testing.assert_array_equal(out[k], t_asy(batch[k], 0.5))


def test_f_pen_zero_inside_box():
    rng = np.random.default_rng(0)
    x = rng.uniform(-5, 5, (100, 3))
    np.testing.assert_array_equal(f_pen(x), np.zeros(100))
    assert f_pen(np.full(3, 5.0)) == 0.0
    assert f_pen(np.full(3, -5.0)) == 0.0


def test_f_pen_quadratic_outside():
    assert f_pen(np.array([6.0, 0.0, 0.0])) == pytest.approx(1.0)
    assert f_pen(np.array([-7.0, 6.0, 0.0])) == pytest.approx(4.0 + 1.0)
