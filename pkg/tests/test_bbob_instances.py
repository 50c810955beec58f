import numpy as np
import pytest

from dynamorep.bbob import N_PROBLEMS, make_instance


def test_identical_arguments_identical_instance():
    a = make_instance(8, 3, 3)
    b = make_instance(8, 3, 3)
    np.testing.assert_array_equal(a.x_opt, b.x_opt)
    np.testing.assert_array_equal(a.R, b.R)
    np.testing.assert_array_equal(a.Q, b.Q)
    assert a.f_opt == b.f_opt


@pytest.mark.parametrize("problem_id", [0, 25, -1])
def test_problem_id_out_of_range(problem_id):
    with pytest.raises(ValueError):
        make_instance(problem_id, 1, 3)


def test_instance_and_dimension_bounds():
    with pytest.raises(ValueError):
        make_instance(1, 0, 3)
    with pytest.raises(ValueError):
        make_instance(1, 1, 1)


def test_instances_distinct_across_ids():
    """Instances 1..100 of one class have pairwise distinct optima."""
    opts = np.array([make_instance(7, i, 3).x_opt for i in range(1, 101)])
    diffs = np.linalg.norm(opts[:, None, :] - opts[None, :, :], axis=-1)
    diffs[np.diag_indices(100)] = np.inf
    assert diffs.min() > 1e-9


def test_instances_distinct_across_problems():
    a = make_instance(3, 5, 3)
    b = make_instance(4, 5, 3)
    assert not np.array_equal(a.x_opt, b.x_opt)


def test_rotations_orthogonal():
    eye = np.eye(3)
    for problem_id in range(1, N_PROBLEMS + 1):
        inst = make_instance(problem_id, 2, 3)
        for m in (inst.R, inst.Q):
            assert np.abs(m @ m.T - eye).max() < 1e-9
            assert abs(abs(np.linalg.det(m)) - 1.0) < 1e-9


def test_x_opt_inside_search_box():
    for problem_id in range(1, N_PROBLEMS + 1):
        for instance_id in (1, 7, 42):
            inst = make_instance(problem_id, instance_id, 3)
            assert np.all(np.abs(inst.x_opt) <= 5.0), (problem_id, instance_id)


def test_f_opt_bounded():
    # target values are clamped to the usual +-1000 band
    for problem_id in range(1, N_PROBLEMS + 1):
        for instance_id in range(1, 21):
            inst = make_instance(problem_id, instance_id, 3)
            assert abs(inst.f_opt) <= 1000.0


def test_fields_immutable():
    inst = make_instance(1, 1, 3)
    with pytest.raises(ValueError):
        inst.x_opt[0] = 0.0
    with pytest.raises(ValueError):
        inst.R[0, 0] = 2.0
