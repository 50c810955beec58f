"""Pure-numpy implementations of the two hot kernels.

The compiled extension (``_compiled.pyx``) implements the same two entry
points with the same observable behaviour:

- ``trajectory_stats``: per-iteration min/max/mean/std over a stacked
  population matrix (values may differ from the compiled kernel by summation
  order only, at the 1e-13 level);
- ``build_tree``: one CART classification tree. Trees are bit-identical
  across backends: both consume the same stateless splitmix64 draw sequence,
  compute gini proxies from exact integer sums of squares, and break ties
  toward the lower feature index, then the lower threshold.

Draw contract (shared): draw ``j`` (1-based) equals
``mix64(tree_seed + j * GOLDEN)``. A tree consumes ``n`` draws for bootstrap
row indices (``value % n``), then ``max_features`` draws per node, in
depth-first preorder with the left child processed first, for the partial
Fisher-Yates feature subsample.
"""

import numpy as np

BACKEND = "python"

GOLDEN = 0x9E3779B97F4A7C15
_GOLDEN2 = 0xD1B54A32D192ED03
_M64 = (1 << 64) - 1


def mix64(v):
    """splitmix64 finalizer on a python int, mod 2**64."""
    v &= _M64
    v ^= v >> 30
    v = (v * 0xBF58476D1CE4E5B9) & _M64
    v ^= v >> 27
    v = (v * 0x94D049BB133111EB) & _M64
    v ^= v >> 31
    return v


def tree_seed(forest_seed, tree_index):
    """Per-tree stream seed derived from the forest seed."""
    return mix64((forest_seed ^ ((tree_index + 1) * _GOLDEN2)) & _M64)


def _mix64_vec(v):
    v = v.astype(np.uint64, copy=True)
    v ^= v >> np.uint64(30)
    v *= np.uint64(0xBF58476D1CE4E5B9)
    v ^= v >> np.uint64(27)
    v *= np.uint64(0x94D049BB133111EB)
    v ^= v >> np.uint64(31)
    return v


def trajectory_stats(xy, lam):
    """Per-iteration statistics of a stacked (n*lam, c) matrix.

    Returns an (n, 4, c) array ordered min, max, mean, population std.
    """
    xy = np.asarray(xy, dtype=float)
    rows, c = xy.shape
    if lam < 1 or rows % lam != 0:
        raise ValueError(f"row count {rows} is not a multiple of lam={lam}")
    blocks = xy.reshape(rows // lam, lam, c)
    return np.stack(
        [
            blocks.min(axis=1),
            blocks.max(axis=1),
            blocks.mean(axis=1),
            blocks.std(axis=1),
        ],
        axis=1,
    )


class _DrawStream:
    """Stateless splitmix64 sequence consumed one value at a time."""

    __slots__ = ("seed", "counter")

    def __init__(self, seed):
        self.seed = seed & _M64
        self.counter = 0

    def next(self):
        self.counter += 1
        return mix64(self.seed + self.counter * GOLDEN)

    def next_block(self, count):
        start = self.counter + 1
        self.counter += count
        idx = np.arange(start, start + count, dtype=np.uint64)
        return _mix64_vec(np.uint64(self.seed) + idx * np.uint64(GOLDEN))


def _gini(sumsq, n, n_total):
    # identical expression in the compiled kernel; exact int64 -> float64
    return 1.0 - float(sumsq) / (float(n) * float(n))


def build_tree(X, y, n_classes, max_features, min_samples_split, seed):
    """Grow one gini CART tree on a bootstrap sample of (X, y).

    Returns a dict of flat arrays: ``feature`` (-1 at leaves), ``threshold``,
    ``left``, ``right``, ``leaf_class`` (-1 at internal nodes),
    ``n_samples`` per node, and ``importances`` (raw mean-decrease-in-gini
    accumulation, not normalized).
    """
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int32)
    n, p = X.shape
    q = min(max_features, p)
    stream = _DrawStream(seed)

    boot = (stream.next_block(n) % np.uint64(n)).astype(np.int64)
    bx = X[boot]
    by = y[boot]

    feature, threshold, left, right, leaf_class, n_samples = [], [], [], [], [], []
    importances = np.zeros(p, dtype=np.float64)
    samples = np.arange(n, dtype=np.int64)

    def counts_of(idx):
        return np.bincount(by[idx], minlength=n_classes).astype(np.int64)

    # Stack holds (start, end, parent, is_left); preorder, left child first.
    stack = [(0, n, -1, False)]
    while stack:
        start, end, parent, is_left = stack.pop()
        node_id = len(feature)
        if parent >= 0:
            (left if is_left else right)[parent] = node_id

        idx = samples[start:end]
        n_node = end - start
        cnt = counts_of(idx)
        majority = int(np.argmax(cnt))  # first max -> smallest class id

        split = None
        if n_node >= min_samples_split and int(cnt.max()) != n_node:
            split = _best_split(bx, by, idx, stream, p, q)

        if split is None:
            feature.append(-1)
            threshold.append(0.0)
            left.append(-1)
            right.append(-1)
            leaf_class.append(majority)
            n_samples.append(n_node)
            continue

        feat, thr = split
        go_left = bx[idx, feat] <= thr
        n_left = int(go_left.sum())
        samples[start:end] = np.concatenate([idx[go_left], idx[~go_left]])

        lcnt = counts_of(samples[start : start + n_left])
        rcnt = cnt - lcnt
        g_p = _gini(int(cnt @ cnt), n_node, n)
        g_l = _gini(int(lcnt @ lcnt), n_left, n)
        g_r = _gini(int(rcnt @ rcnt), n_node - n_left, n)
        importances[feat] += (
            n_node * g_p - n_left * g_l - (n_node - n_left) * g_r
        ) / n

        feature.append(feat)
        threshold.append(thr)
        left.append(-1)
        right.append(-1)
        leaf_class.append(-1)
        n_samples.append(n_node)
        stack.append((start + n_left, end, node_id, False))
        stack.append((start, start + n_left, node_id, True))

    return {
        "feature": np.asarray(feature, dtype=np.int32),
        "threshold": np.asarray(threshold, dtype=np.float64),
        "left": np.asarray(left, dtype=np.int32),
        "right": np.asarray(right, dtype=np.int32),
        "leaf_class": np.asarray(leaf_class, dtype=np.int32),
        "n_samples": np.asarray(n_samples, dtype=np.int32),
        "importances": importances,
    }


def _sample_features(stream, p, q):
    # partial Fisher-Yates; consumes exactly q draws
    pool = np.arange(p, dtype=np.int64)
    for i in range(q):
        r = i + int(stream.next() % (p - i))
        pool[i], pool[r] = pool[r], pool[i]
    sel = pool[:q].copy()
    sel.sort()
    return sel

def _best_split(bx, by, idx, stream, p, q):
    features = _sample_features(stream, p, q)
    n_node = idx.shape[0]
    nl = np.arange(1, n_node + 1, dtype=np.float64)
    best = (-np.inf, -1, 0.0)

    for feat in features:
        v = bx[idx, feat]
        if v.min() == v.max():
            continue
        order = np.argsort(v)
        sv = v[order]
        sl = by[idx[order]]

        onehot = np.zeros((n_node, int(sl.max()) + 1), dtype=np.int64)
        onehot[np.arange(n_node), sl] = 1
        cl = np.cumsum(onehot, axis=0)
        sumsq_l = np.einsum("ij,ij->i", cl, cl)
        cr = cl[-1] - cl
        sumsq_r = np.einsum("ij,ij->i", cr, cr)

        proxy = sumsq_l[:-1] / nl[:-1] + sumsq_r[:-1] / (n_node - nl[:-1])
        proxy[sv[:-1] == sv[1:]] = -np.inf
        i = int(np.argmax(proxy))
        if proxy[i] > best[0]:
            thr = (sv[i] + sv[i + 1]) / 2.0
            if thr == sv[i + 1]:
                thr = sv[i]  # adjacent floats: midpoint must stay left
            best = (proxy[i], int(feat), thr)

    if best[1] < 0:
        return None
    return best[1], best[2]
