import numpy as np
import pytest

from dynamorep.bbob import make_instance
from dynamorep.features import (
    STATISTICS,
    FeatureTable,
    feature_names,
    iteration_stats,
    read_feature_csv,
    trajectory_features,
    write_feature_csv,
)
from dynamorep.optimizers import run_trajectory


def brute_force_stats(points, values):
    xy = np.column_stack([points, values])
    return np.stack(
        [xy.min(axis=0), xy.max(axis=0), xy.mean(axis=0), xy.std(axis=0)]
    )


def test_iteration_stats_frozen_example():
    points = np.array([[-1.0], [1.0]])
    values = np.array([0.0, 2.0])
    out = iteration_stats(points, values)
    np.testing.assert_array_equal(
        out,
        np.array([[-1.0, 0.0], [1.0, 2.0], [0.0, 1.0], [1.0, 1.0]]),
    )


def test_iteration_stats_matches_brute_force():
    rng = np.random.default_rng(1)
    for _ in range(200):
        m = int(rng.integers(2, 40))
        d = int(rng.integers(1, 6))
        points = rng.normal(0.0, rng.uniform(0.1, 50.0), (m, d))
        values = rng.normal(0.0, 100.0, m)
        out = iteration_stats(points, values)
        expected = brute_force_stats(points, values)
        np.testing.assert_allclose(out, expected, rtol=0, atol=1e-12)


def test_iteration_stats_shape_validation():
    with pytest.raises(ValueError):
        iteration_stats(np.zeros((5, 3)), np.zeros(4))


def test_statistic_order():
    assert STATISTICS == ("min", "max", "mean", "std")


def test_trajectory_features_length_and_block_invariants():
    inst = make_instance(4, 1, 3)
    t = run_trajectory("DE", inst, seed=0, population=30, iterations=30)
    vec = trajectory_features(t)
    assert vec.shape == (480,)
    blocks = vec.reshape(30, 4, 4)
    mins, maxs, means, stds = (blocks[:, k, :] for k in range(4))
    assert np.all(mins <= means)
    assert np.all(means <= maxs)
    assert np.all(stds >= 0.0)


def test_trajectory_features_permutation_invariant():
    """Shuffling individuals within an iteration leaves the vector unchanged
    up to summation order."""
    inst = make_instance(9, 2, 3)
    t = run_trajectory("GA", inst, seed=1, population=10, iterations=6)
    vec = trajectory_features(t)

    rng = np.random.default_rng(0)
    x = t.x.copy()
    y = t.y.copy()
    for it in range(t.iterations):
        perm = rng.permutation(t.population) + it * t.population
        block = slice(it * t.population, (it + 1) * t.population)
        x[block] = x[perm]
        y[block] = y[perm]
    shuffled = type(t)(
        algorithm=t.algorithm,
        problem_id=t.problem_id,
        instance_id=t.instance_id,
        seed=t.seed,
        dimension=t.dimension,
        population=t.population,
        iterations=t.iterations,
        x=x,
        y=y,
    )
    # objective values reach 1e5 on some classes, so order-sensitive
    # accumulation error is relative, not absolute
    np.testing.assert_allclose(
        trajectory_features(shuffled), vec, rtol=1e-9, atol=1e-12
    )


def test_feature_names_complete():
    names = feature_names(3, 30)
    assert len(names) == 480
    assert names[:5] == [
        "it0_min_x0",
        "it0_min_x1",
        "it0_min_x2",
        "it0_min_y",
        "it0_max_x0",
    ]
    assert names[-1] == "it29_std_y"
    assert len(set(names)) == 480


def test_feature_names_one_dim_one_iteration():
    assert feature_names(1, 1) == [
        "it0_min_x0",
        "it0_min_y",
        "it0_max_x0",
        "it0_max_y",
        "it0_mean_x0",
        "it0_mean_y",
        "it0_std_x0",
        "it0_std_y",
    ]


def _tiny_table():
    rows = [
        (2, 1, 0, [1.0, np.nan]),
        (1, 2, 1, [3.0, 4.0]),
        (1, 1, 0, [5.0, 6.0]),
    ]
    return FeatureTable.from_rows("DE", ("a", "b"), rows)


def test_from_rows_sorts_by_identity():
    table = _tiny_table()
    np.testing.assert_array_equal(table.problem_ids, [1, 1, 2])
    np.testing.assert_array_equal(table.instance_ids, [1, 2, 1])
    np.testing.assert_array_equal(table.seeds, [0, 1, 0])
    assert table.values[0, 0] == 5.0


def test_table_select_and_with_features():
    table = _tiny_table()
    sub = table.select(table.problem_ids == 1)
    assert len(sub.problem_ids) == 2
    narrowed = table.with_features(np.array([True, False]))
    assert narrowed.feature_names == ("a",)
    assert narrowed.values.shape == (3, 1)


def test_feature_csv_round_trip_with_nan(tmp_path):
    table = _tiny_table()
    path = tmp_path / "t.csv"
    write_feature_csv(path, table, stamp="config=x version=0")
    back = read_feature_csv(path)
    assert back.algorithm == "DE"
    assert back.feature_names == ("a", "b")
    np.testing.assert_array_equal(back.problem_ids, table.problem_ids)
    assert np.isnan(back.values[2, 1])

    path2 = tmp_path / "t2.csv"
    write_feature_csv(path2, back, stamp="config=x version=0")
    assert path.read_bytes() == path2.read_bytes()


def test_feature_csv_rejects_mixed_algorithms(tmp_path):
    path = tmp_path / "t.csv"
    write_feature_csv(path, _tiny_table())
    lines = path.read_text().splitlines()
    lines[2] = lines[2].replace("DE,", "GA,", 1)
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(ValueError, match="mixed algorithms"):
        read_feature_csv(path)
