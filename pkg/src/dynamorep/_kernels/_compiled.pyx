# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled implementations of the two hot kernels.

Mirrors ``_pyfallback`` exactly where exactness is promised: trees consume
the same splitmix64 draw sequence and apply the same tie rules (lower
feature index, then lower threshold), so forests are bit-identical across
backends. ``trajectory_stats`` matches the numpy fallback to summation
order, i.e. to ~1e-13 relative error.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset

import numpy as np

BACKEND = "compiled"

cdef unsigned long long GOLDEN = 0x9E3779B97F4A7C15ULL


cdef inline unsigned long long _mix(unsigned long long v) nogil:
    v ^= v >> 30
    v *= 0xBF58476D1CE4E5B9ULL
    v ^= v >> 27
    v *= 0x94D049BB133111EBULL
    v ^= v >> 31
    return v


# ---------------------------------------------------------------------------
# trajectory statistics

def trajectory_stats(xy, long lam):
    """Per-iteration statistics of a stacked (n*lam, c) matrix.

    Returns an (n, 4, c) array ordered min, max, mean, population std.
    """
    cdef double[:, ::1] data = np.ascontiguousarray(xy, dtype=np.float64)
    cdef long rows = data.shape[0]
    cdef long c = data.shape[1]
    if lam < 1 or rows % lam != 0:
        raise ValueError(f"row count {rows} is not a multiple of lam={lam}")
    cdef long n = rows // lam

    out_arr = np.empty((n, 4, c), dtype=np.float64)
    cdef double[:, :, ::1] out = out_arr
    cdef long t, i, j, base
    cdef double v, lo, hi, s, mean, dev, ssq

    with nogil:
        for t in range(n):
            base = t * lam
            for j in range(c):
                lo = data[base, j]
                hi = lo
                s = lo
                for i in range(1, lam):
                    v = data[base + i, j]
                    if v < lo:
                        lo = v
                    if v > hi:
                        hi = v
                    s += v
                mean = s / lam
                ssq = 0.0
                for i in range(lam):
                    dev = data[base + i, j] - mean
                    ssq += dev * dev
                out[t, 0, j] = lo
                out[t, 1, j] = hi
                out[t, 2, j] = mean
                out[t, 3, j] = (ssq / lam) ** 0.5
    return out_arr


# ---------------------------------------------------------------------------
# pair sort (values with attached labels): introsort as used for split scans

cdef inline void _pair_swap(double* v, int* l, long a, long b) nogil:
    cdef double tv = v[a]
    cdef int tl = l[a]
    v[a] = v[b]
    l[a] = l[b]
    v[b] = tv
    l[b] = tl


cdef void _insertion(double* v, int* l, long lo, long hi) nogil:
    cdef long i, j
    cdef double key
    cdef int keyl
    for i in range(lo + 1, hi):
        key = v[i]
        keyl = l[i]
        j = i - 1
        while j >= lo and v[j] > key:
            v[j + 1] = v[j]
            l[j + 1] = l[j]
            j -= 1
        v[j + 1] = key
        l[j + 1] = keyl


cdef void _sift(double* v, int* l, long root, long n) nogil:
    cdef long child
    while True:
        child = 2 * root + 1
        if child >= n:
            break
        if child + 1 < n and v[child + 1] > v[child]:
            child += 1
        if v[child] > v[root]:
            _pair_swap(v, l, root, child)
            root = child
        else:
            break


cdef void _heapsort(double* v, int* l, long n) nogil:
    cdef long i
    for i in range(n // 2 - 1, -1, -1):
        _sift(v, l, i, n)
    for i in range(n - 1, 0, -1):
        _pair_swap(v, l, 0, i)
        _sift(v, l, 0, i)


cdef void _intro(double* v, int* l, long lo, long hi, int depth) nogil:
    cdef long i, j, mid
    cdef double pivot
    while hi - lo > 16:
        if depth == 0:
            _heapsort(v + lo, l + lo, hi - lo)
            return
        depth -= 1
        # median-of-three, sorted in place so the ends act as sentinels
        mid = lo + (hi - lo) // 2
        if v[mid] < v[lo]:
            _pair_swap(v, l, lo, mid)
        if v[hi - 1] < v[lo]:
            _pair_swap(v, l, lo, hi - 1)
        if v[hi - 1] < v[mid]:
            _pair_swap(v, l, mid, hi - 1)
        pivot = v[mid]
        i = lo
        j = hi - 1
        while True:
            i += 1
            while v[i] < pivot:
                i += 1
            j -= 1
            while v[j] > pivot:
                j -= 1
            if i >= j:
                break
            _pair_swap(v, l, i, j)
        # recurse into the smaller side, loop on the larger
        if j + 1 - lo < hi - (j + 1):
            _intro(v, l, lo, j + 1, depth)
            lo = j + 1
        else:
            _intro(v, l, j + 1, hi, depth)
            hi = j + 1
    _insertion(v, l, lo, hi)


cdef void _intro_sort(double* v, int* l, long n) nogil:
    cdef int depth = 0
    cdef long m = n
    while m > 1:
        depth += 2
        m >>= 1
    _intro(v, l, 0, n, depth)


# LSD radix on sign-flipped double bits; faster than introsort on large nodes.
# Tie order differs from introsort, which is fine: equal values make the
# boundary scan insensitive to label order inside a tied run.

cdef inline unsigned long long _key_of(double x) nogil:
    cdef unsigned long long b = (<unsigned long long*>&x)[0]
    cdef unsigned long long mask = (
        <unsigned long long>(<long long>b >> 63)
        | 0x8000000000000000ULL
    )
    return b ^ mask

cdef inline double _key_back(unsigned long long k) nogil:
    cdef unsigned long long b
    if k & 0x8000000000000000ULL:
        b = k ^ 0x8000000000000000ULL
    else:
        b = ~k
    return (<double*>&b)[0]

cdef void _radix_sort(double* v, int* l, long n,
                      unsigned long long* ka, unsigned long long* kb,
                      int* la, int* lb) nogil:
    cdef long i, b, sh
    cdef long count[256]
    cdef long offs[256]
    cdef unsigned long long* src_k = ka
    cdef unsigned long long* dst_k = kb
    cdef unsigned long long* tmp_k
    cdef int* src_l = la
    cdef int* dst_l = lb
    cdef int* tmp_l
    cdef unsigned long long key
    for i in range(n):
        ka[i] = _key_of(v[i])
        la[i] = l[i]
    cdef bint skip
    for sh in range(0, 64, 8):
        for b in range(256):
            count[b] = 0
        for i in range(n):
            count[(src_k[i] >> sh) & 0xFF] += 1
        skip = False
        for b in range(256):
            if count[b] == n:
                skip = True  # single bucket: pass is a no-op
                break
        if skip:
            continue
        offs[0] = 0
        for b in range(1, 256):
            offs[b] = offs[b - 1] + count[b - 1]
        for i in range(n):
            key = src_k[i]
            b = (key >> sh) & 0xFF
            dst_k[offs[b]] = key
            dst_l[offs[b]] = src_l[i]
            offs[b] += 1
        tmp_k = src_k; src_k = dst_k; dst_k = tmp_k
        tmp_l = src_l; src_l = dst_l; dst_l = tmp_l
    for i in range(n):
        v[i] = _key_back(src_k[i])
        l[i] = src_l[i]


# ---------------------------------------------------------------------------
# CART tree builder

def build_tree(X, y, long n_classes, long max_features,
               long min_samples_split, seed):
    """Grow one gini CART tree on a bootstrap sample of (X, y).

    Same contract and same returned arrays as the fallback implementation.
    """
    # transposed copy: per-feature gathers then touch one contiguous column
    cdef double[:, ::1] Xv = np.ascontiguousarray(
        np.asarray(X, dtype=np.float64).T
    )
    cdef int[::1] yv = np.ascontiguousarray(y, dtype=np.int32)
    cdef long n = Xv.shape[1]
    cdef long p = Xv.shape[0]
    cdef long q = max_features if max_features < p else p
    cdef unsigned long long sd = <unsigned long long>(int(seed) & ((1 << 64) - 1))
    cdef unsigned long long counter = 0

    cdef long cap = 2 * n + 1
    feature_arr = np.empty(cap, dtype=np.int32)
    threshold_arr = np.empty(cap, dtype=np.float64)
    left_arr = np.empty(cap, dtype=np.int32)
    right_arr = np.empty(cap, dtype=np.int32)
    leaf_arr = np.empty(cap, dtype=np.int32)
    nsamp_arr = np.empty(cap, dtype=np.int32)
    imp_arr = np.zeros(p, dtype=np.float64)
    cdef int[::1] feature = feature_arr
    cdef double[::1] threshold = threshold_arr
    cdef int[::1] left = left_arr
    cdef int[::1] right = right_arr
    cdef int[::1] leaf = leaf_arr
    cdef int[::1] nsamp = nsamp_arr
    cdef double[::1] imp = imp_arr

    cdef long* samples = <long*>malloc(n * sizeof(long))
    cdef long* scratch = <long*>malloc(n * sizeof(long))
    cdef long* scratch2 = <long*>malloc(n * sizeof(long))
    cdef double* vals = <double*>malloc(n * sizeof(double))
    cdef int* labs = <int*>malloc(n * sizeof(int))
    cdef unsigned long long* rka = <unsigned long long*>malloc(n * sizeof(unsigned long long))
    cdef unsigned long long* rkb = <unsigned long long*>malloc(n * sizeof(unsigned long long))
    cdef int* rla = <int*>malloc(n * sizeof(int))
    cdef int* rlb = <int*>malloc(n * sizeof(int))
    cdef long* pool = <long*>malloc(p * sizeof(long))
    cdef long* cnt0 = <long*>malloc(n_classes * sizeof(long))
    cdef long* cl = <long*>malloc(n_classes * sizeof(long))
    cdef long* cr = <long*>malloc(n_classes * sizeof(long))
    # stack entries: start, end, parent, is_left
    cdef long* stack = <long*>malloc(4 * (2 * n + 8) * sizeof(long))
    if (samples == NULL or scratch == NULL or scratch2 == NULL or vals == NULL
            or labs == NULL or pool == NULL or cnt0 == NULL or cl == NULL
            or cr == NULL or stack == NULL or rka == NULL or rkb == NULL
            or rla == NULL or rlb == NULL):
        free(samples); free(scratch); free(scratch2); free(vals); free(labs)
        free(pool); free(cnt0); free(cl); free(cr); free(stack)
        free(rka); free(rkb); free(rla); free(rlb)
        raise MemoryError("tree scratch allocation failed")

    cdef long top = 0, n_nodes = 0
    cdef long start, end, parent, is_left, node_id, n_node
    cdef long i, k, fi, feat, r, i2, kclass
    cdef long majority, best_feat, n_left, n_right
    cdef long total_sumsq, sumsq_l, sumsq_r, cmax
    cdef double best_proxy, proxy, thr, best_thr, g_p, g_l, g_r
    cdef double gmin, gmax, v2
    cdef long key

    with nogil:
        for i in range(n):
            counter += 1
            samples[i] = <long>(_mix(sd + counter * GOLDEN) % <unsigned long long>n)

        stack[0] = 0
        stack[1] = n
        stack[2] = -1
        stack[3] = 0
        top = 1
        while top > 0:
            top -= 1
            start = stack[4 * top]
            end = stack[4 * top + 1]
            parent = stack[4 * top + 2]
            is_left = stack[4 * top + 3]
            node_id = n_nodes
            n_nodes += 1
            if parent >= 0:
                if is_left:
                    left[parent] = <int>node_id
                else:
                    right[parent] = <int>node_id

            n_node = end - start
            memset(cnt0, 0, n_classes * sizeof(long))
            for k in range(start, end):
                cnt0[yv[samples[k]]] += 1
            majority = 0
            cmax = cnt0[0]
            total_sumsq = cnt0[0] * cnt0[0]
            for k in range(1, n_classes):
                total_sumsq += cnt0[k] * cnt0[k]
                if cnt0[k] > cmax:
                    cmax = cnt0[k]
                    majority = k

            best_feat = -1
            best_thr = 0.0
            if n_node >= min_samples_split and cmax != n_node:
                for i in range(p):
                    pool[i] = i
                for i in range(q):
                    counter += 1
                    r = i + <long>(_mix(sd + counter * GOLDEN)
                                   % <unsigned long long>(p - i))
                    key = pool[i]
                    pool[i] = pool[r]
                    pool[r] = key
                # ascending feature order makes ties resolve to the lower index
                for i in range(1, q):
                    key = pool[i]
                    k = i - 1
                    while k >= 0 and pool[k] > key:
                        pool[k + 1] = pool[k]
                        k -= 1
                    pool[k + 1] = key

                best_proxy = -1.0
                for fi in range(q):
                    feat = pool[fi]
                    gmin = Xv[feat, samples[start]]
                    gmax = gmin
                    for k in range(n_node):
                        v2 = Xv[feat, samples[start + k]]
                        vals[k] = v2
                        if v2 < gmin:
                            gmin = v2
                        elif v2 > gmax:
                            gmax = v2
                    if gmin == gmax:
                        continue
                    for k in range(n_node):
                        labs[k] = yv[samples[start + k]]
                    if n_node >= 256:
                        _radix_sort(vals, labs, n_node, rka, rkb, rla, rlb)
                    else:
                        _intro_sort(vals, labs, n_node)
                    memset(cl, 0, n_classes * sizeof(long))
                    memcpy(cr, cnt0, n_classes * sizeof(long))
                    sumsq_l = 0
                    sumsq_r = total_sumsq
                    for i2 in range(n_node - 1):
                        kclass = labs[i2]
                        sumsq_l += 2 * cl[kclass] + 1
                        cl[kclass] += 1
                        sumsq_r -= 2 * cr[kclass] - 1
                        cr[kclass] -= 1
                        if vals[i2] != vals[i2 + 1]:
                            proxy = (<double>sumsq_l / <double>(i2 + 1)
                                     + <double>sumsq_r / <double>(n_node - i2 - 1))
                            if best_feat < 0 or proxy > best_proxy:
                                best_proxy = proxy
                                best_feat = feat
                                thr = (vals[i2] + vals[i2 + 1]) / 2.0
                                if thr == vals[i2 + 1]:
                                    thr = vals[i2]
                                best_thr = thr

            if best_feat < 0:
                feature[node_id] = -1
                threshold[node_id] = 0.0
                left[node_id] = -1
                right[node_id] = -1
                leaf[node_id] = <int>majority
                nsamp[node_id] = <int>n_node
                continue

            # stable partition: left block then right block, original order kept
            n_left = 0
            i = 0
            for k in range(start, end):
                if Xv[best_feat, samples[k]] <= best_thr:
                    scratch[n_left] = samples[k]
                    n_left += 1
                else:
                    scratch2[i] = samples[k]
                    i += 1
            n_right = n_node - n_left
            memcpy(samples + start, scratch, n_left * sizeof(long))
            memcpy(samples + start + n_left, scratch2, n_right * sizeof(long))

            memset(cl, 0, n_classes * sizeof(long))
            for k in range(start, start + n_left):
                cl[yv[samples[k]]] += 1
            sumsq_l = 0
            sumsq_r = 0
            for k in range(n_classes):
                sumsq_l += cl[k] * cl[k]
                r = cnt0[k] - cl[k]
                sumsq_r += r * r
            g_p = 1.0 - <double>total_sumsq / (<double>n_node * <double>n_node)
            g_l = 1.0 - <double>sumsq_l / (<double>n_left * <double>n_left)
            g_r = 1.0 - <double>sumsq_r / (<double>n_right * <double>n_right)
            imp[best_feat] += (<double>n_node * g_p - <double>n_left * g_l
                               - <double>n_right * g_r) / <double>n

            feature[node_id] = <int>best_feat
            threshold[node_id] = best_thr
            left[node_id] = -1
            right[node_id] = -1
            leaf[node_id] = -1
            nsamp[node_id] = <int>n_node
            stack[4 * top] = start + n_left
            stack[4 * top + 1] = end
            stack[4 * top + 2] = node_id
            stack[4 * top + 3] = 0
            top += 1
            stack[4 * top] = start
            stack[4 * top + 1] = start + n_left
            stack[4 * top + 2] = node_id
            stack[4 * top + 3] = 1
            top += 1

    free(samples); free(scratch); free(scratch2); free(vals); free(labs)
    free(pool); free(cnt0); free(cl); free(cr); free(stack)
    free(rka); free(rkb); free(rla); free(rlb)

    return {
        "feature": feature_arr[:n_nodes].copy(),
        "threshold": threshold_arr[:n_nodes].copy(),
        "left": left_arr[:n_nodes].copy(),
        "right": right_arr[:n_nodes].copy(),
        "leaf_class": leaf_arr[:n_nodes].copy(),
        "n_samples": nsamp_arr[:n_nodes].copy(),
        "importances": imp_arr,
    }
