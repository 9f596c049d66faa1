"""Hot numeric kernels: numba-jitted fast path with a pure-numpy fallback.

The numba path is used whenever numba imports cleanly; set
``INVERSEARCH_NO_NUMBA=1`` to force the numpy fallback. Both paths are
written to produce bit-identical floats: every running sum is accumulated
left to right over the same ordering, and np.cumsum accumulates
sequentially, so the fallback mirrors the jitted loops exactly.
``benchmarks/bench_split.py`` compares the two.

Split scores are evaluated twice. The per-feature scan ranks that
feature's candidate thresholds using prefix sums in sorted order; the
winning threshold is then re-scored with sums accumulated in member-index
order over the side containing member 0. The second pass makes the score
a function of the induced unordered partition alone (orientation and
sort-order independent), so two features that split the members
identically tie bit-exactly and the lowest feature index wins, as the
contract requires.
"""

from __future__ import annotations

import os

import numpy as np

_ENV_FLAG = "INVERSEARCH_NO_NUMBA"


def _numba_disabled() -> bool:
    return os.environ.get(_ENV_FLAG, "").strip().lower() in ("1", "true", "yes")


def numpy_best_split_scan(values: np.ndarray, labels: np.ndarray):
    """Best variance-reduction split over all (feature, midpoint) candidates.

    values: (n, h) float64, labels: (n,) float64, n >= 2. Candidate
    thresholds are midpoints between consecutive distinct sorted feature
    values; the score S_l^2/n_l + S_r^2/n_r is maximized, which is
    equivalent to maximizing the reduction in count-weighted label
    variance. Ties resolve to the lowest feature index, then the lowest
    threshold.

    Returns (feature_0based, threshold, reduction); feature is -1 when no
    candidate threshold exists.
    """
    n, h = values.shape
    total = float(np.cumsum(labels)[-1])
    best_f = -1
    best_thr = 0.0
    best_canon = -np.inf
    for f in range(h):
        order = np.argsort(values[:, f], kind="mergesort")
        v = values[order, f]
        boundary = v[:-1] != v[1:]
        if not boundary.any():
            continue
        s = np.cumsum(labels[order])[:-1]
        n_left = np.arange(1, n, dtype=np.float64)
        n_right = n - n_left
        score = s * s / n_left + (total - s) * (total - s) / n_right
        score = np.where(boundary, score, -np.inf)
        i = int(np.argmax(score))
        thr = float((v[i] + v[i + 1]) * 0.5)
        if not thr < v[i + 1]:  # midpoint of 1-ulp neighbors can round up
            thr = float(v[i])
        canon = _canonical_score_numpy(values[:, f], labels, thr, total, n)
        if canon > best_canon:
            best_canon = canon
            best_f = f
            best_thr = thr
    if best_f < 0:
        return -1, 0.0, 0.0
    reduction = (best_canon - total * total / n) / n
    return best_f, best_thr, reduction


def _canonical_score_numpy(column, labels, threshold, total, n):
    side0 = column <= threshold if column[0] <= threshold else column > threshold
    n_c = int(np.count_nonzero(side0))
    s_c = float(np.cumsum(labels[side0])[-1])
    s_rest = total - s_c
    return s_c * s_c / n_c + s_rest * s_rest / (n - n_c)


def numpy_label_mean_var(labels: np.ndarray):
    """Sequential-order mean and population variance of labels."""
    n = labels.shape[0]
    mean = float(np.cumsum(labels)[-1]) / n
    dev = labels - mean
    var = float(np.cumsum(dev * dev)[-1]) / n
    return mean, var


try:  # pragma: no cover - import guard exercised via env flag in tests
    if _numba_disabled():
        raise ImportError("numba disabled via %s" % _ENV_FLAG)
    from numba import njit

    @njit(cache=True, nogil=True)
    def _nb_best_split_scan(values, labels):
        n, h = values.shape
        total = 0.0
        for i in range(n):
            total += labels[i]
        best_f = -1
        best_thr = 0.0
        best_canon = -np.inf
        for f in range(h):
            order = np.argsort(values[:, f], kind="mergesort")
            s = 0.0
            f_best_i = -1
            f_best_score = -np.inf
            for i in range(n - 1):
                s += labels[order[i]]
                if values[order[i], f] == values[order[i + 1], f]:
                    continue
                n_left = float(i + 1)
                n_right = float(n - i - 1)
                r = total - s
                score = s * s / n_left + r * r / n_right
                if score > f_best_score:
                    f_best_score = score
                    f_best_i = i
            if f_best_i < 0:
                continue
            thr = (values[order[f_best_i], f] + values[order[f_best_i + 1], f]) * 0.5
            if not thr < values[order[f_best_i + 1], f]:
                thr = values[order[f_best_i], f]
            side0 = values[0, f] <= thr
            s_c = 0.0
            n_c = 0
            for i in range(n):
                if (values[i, f] <= thr) == side0:
                    s_c += labels[i]
                    n_c += 1
            s_rest = total - s_c
            canon = s_c * s_c / n_c + s_rest * s_rest / (n - n_c)
            if canon > best_canon:
                best_canon = canon
                best_f = f
                best_thr = thr
        if best_f < 0:
            return -1, 0.0, 0.0
        reduction = (best_canon - total * total / n) / n
        return best_f, best_thr, reduction

    @njit(cache=True, nogil=True)
    def _nb_label_mean_var(labels):
        n = labels.shape[0]
        s = 0.0
        for i in range(n):
            s += labels[i]
        mean = s / n
        acc = 0.0
        for i in range(n):
            d = labels[i] - mean
            acc += d * d
        return mean, acc / n

    numba_best_split_scan = _nb_best_split_scan
    numba_label_mean_var = _nb_label_mean_var
    best_split_scan = _nb_best_split_scan
    label_mean_var = _nb_label_mean_var
    USING_NUMBA = True
except ImportError:
    numba_best_split_scan = None
    numba_label_mean_var = None
    best_split_scan = numpy_best_split_scan
    label_mean_var = numpy_label_mean_var
    USING_NUMBA = False
