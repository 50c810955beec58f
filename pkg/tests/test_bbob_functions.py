import numpy as np
import pytest

from dynamorep.bbob import (
    N_PROBLEMS,
    SIGN_PATTERN_CLASSES,
    evaluate,
    evaluate_batch,
    make_instance,
    true_optimum,
)


@pytest.mark.parametrize("problem_id", range(1, N_PROBLEMS + 1))
@pytest.mark.parametrize("instance_id", range(1, 11))
def test_optimum_value_attained(problem_id, instance_id):
    """f(argmin) equals the stored target value on every class."""
    inst = make_instance(problem_id, instance_id, 3)
    best = true_optimum(inst)
    assert abs(evaluate(inst, best) - inst.f_opt) <= 1e-8


@pytest.mark.parametrize("problem_id", sorted(SIGN_PATTERN_CLASSES))
def test_sign_pattern_classes_anchor_is_not_argmin(problem_id):
    # for these classes x_opt seeds the sign pattern; the optimum sits on a
    # grid point derived from it
    inst = make_instance(problem_id, 1, 3)
    best = true_optimum(inst)
    assert not np.allclose(best, inst.x_opt)
    assert evaluate(inst, best) <= evaluate(inst, inst.x_opt) + 1e-12


def test_optimum_is_local_min():
    rng = np.random.default_rng(11)
    for problem_id in (1, 2, 6, 8, 10, 14, 21):
        inst = make_instance(problem_id, 4, 3)
        best = true_optimum(inst)
        f0 = evaluate(inst, best)
        probes = best + rng.normal(0.0, 1e-4, (64, 3))
        assert np.all(evaluate_batch(inst, probes) >= f0 - 1e-10)


def test_sphere_hand_evaluation():
    inst = make_instance(1, 1, 3)
    x = np.array([0.5, -1.0, 2.0])
    expected = np.sum((x - inst.x_opt) ** 2) + inst.f_opt
    assert evaluate(inst, x) == pytest.approx(expected, rel=1e-14)


def test_linear_slope_hand_evaluation():
    # inside the box, away from the clamped edge, f5 is affine
    inst = make_instance(5, 1, 3)
    a = np.zeros(3)
    b = np.array([0.25, -0.5, 0.125])
    mid = (a + b) / 2
    fa, fb, fm = (evaluate(inst, p) for p in (a, b, mid))
    assert fm == pytest.approx((fa + fb) / 2, rel=1e-12)


def test_wrong_length_rejected():
    inst = make_instance(1, 1, 3)
    with pytest.raises(ValueError):
        evaluate(inst, np.zeros(4))
    with pytest.raises(ValueError):
        evaluate_batch(inst, np.zeros((5, 2)))
    with pytest.raises(ValueError):
        evaluate_batch(inst, np.zeros(3))


def test_batch_matches_single():
    # single rows go through a different BLAS kernel than batches, so
    # agreement is to rounding, not bitwise
    rng = np.random.default_rng(5)
    X = rng.uniform(-5, 5, (20, 3))
    for problem_id in range(1, N_PROBLEMS + 1):
        inst = make_instance(problem_id, 3, 3)
        batch = evaluate_batch(inst, X)
        singles = np.array([evaluate(inst, x) for x in X])
        np.testing.assert_allclose(batch, singles, rtol=1e-12, atol=1e-12)


def test_values_finite_in_box():
    rng = np.random.default_rng(17)
    X = rng.uniform(-5, 5, (200, 3))
    for problem_id in range(1, N_PROBLEMS + 1):
        inst = make_instance(problem_id, 9, 3)
        assert np.all(np.isfinite(evaluate_batch(inst, X))), problem_id


def test_evaluation_does_not_mutate_input():
    inst = make_instance(13, 2, 3)
    X = np.full((4, 3), 1.5)
    before = X.copy()
    evaluate_batch(inst, X)
    np.testing.assert_array_equal(X, before)
