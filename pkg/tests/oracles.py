"""Independent brute-force reference implementations used as test oracles.

Everything here is deliberately written as straight-line loops over the
defining formulas, sharing no code with the library paths it checks.
"""

import math

import numpy as np


def brute_diff_stats(values):
    """Two-pass mean/std of first differences, plain loops."""
    diffs = [values[i + 1] - values[i] for i in range(len(values) - 1)]
    ex = sum(diffs) / len(diffs)
    var = sum((d - ex) ** 2 for d in diffs) / len(diffs)
    return ex, math.sqrt(var)


def brute_outlier_flags(values):
    """Indices removed by the 3-sigma first-difference rule (the flagged
    sample is the one following an abnormal difference)."""
    ex, sigma = brute_diff_stats(values)
    if sigma < 1e-12 * max(1.0, abs(ex)):
        return set()
    flagged = set()
    for i in range(len(values) - 1):
        d = values[i + 1] - values[i]
        if not (ex - 3 * sigma < d < ex + 3 * sigma):
            flagged.add(i + 1)
    return flagged


def lagrange_eval(xs, ys, x):
    """Lagrange form of the interpolating polynomial on the given nodes."""
    total = 0.0
    for i in range(len(xs)):
        term = ys[i]
        for j in range(len(xs)):
            if j != i:
                term *= (x - xs[j]) / (xs[i] - xs[j])
        total += term
    return total


def reference_adaptive_filter(x, k0, delta_a):
    """Scalar re-implementation of the adaptive smoother recurrence."""
    y = [x[0]]
    for n in range(1, len(x)):
        provisional = k0 * x[n] + (1 - k0) * y[-1]
        delta = provisional - y[-1]
        if abs(delta) > delta_a:
            m = (1 - delta_a / abs(delta)) * k0
            m = min(max(m, 0.0), k0)
        else:
            m = 0.0
        y.append(m * x[n] + (1 - m) * y[-1])
    return np.array(y)


def naive_channel_stats(x, pair):
    """The 15 per-channel statistics computed formula by formula."""
    n = len(x)
    mean = sum(x) / n
    variance = sum((v - mean) ** 2 for v in x) / n
    x_max, x_min = max(x), min(x)
    pv = x_max - x_min
    mean_square = sum(v * v for v in x) / n
    rms = math.sqrt(mean_square)
    mean_abs = sum(abs(v) for v in x) / n

    pmean = sum(pair) / n
    cov = sum((a - mean) * (b - pmean) for a, b in zip(x, pair)) / n
    sx = math.sqrt(variance)
    sp = math.sqrt(sum((b - pmean) ** 2 for b in pair) / n)

    def ratio(num, den):
        return 0.0 if abs(den) < 1e-12 else num / den

    corr = ratio(cov, sx * sp)
    crest = ratio(pv, rms)
    pulse = ratio(pv, mean_abs)
    margin = ratio(pv, (sum(math.sqrt(abs(v)) for v in x) / n) ** 2)
    kurtosis_factor = ratio(sum(v**4 for v in x) / n, rms)
    waveform = ratio(rms, mean_abs)
    skewness = ratio(sum((v - mean) ** 3 for v in x) / n, variance**1.5)
    kurt = ratio(sum((v - mean) ** 4 for v in x) / n, variance**2)
    kurtosis = kurt - 3.0 if kurt != 0.0 else 0.0
    return [
        mean,
        variance,
        x_max,
        x_min,
        pv,
        mean_square,
        rms,
        corr,
        crest,
        pulse,
        margin,
        kurtosis_factor,
        waveform,
        skewness,
        kurtosis,
    ]


def jacobi_eigh(A, tol=1e-12, max_sweeps=100):
    """Cyclic Jacobi rotations for a symmetric matrix; returns
    (eigenvalues desc, eigenvectors as columns)."""
    A = np.array(A, dtype=float)
    n = A.shape[0]
    V = np.eye(n)
    for _ in range(max_sweeps):
        off = math.sqrt(sum(A[i, j] ** 2 for i in range(n) for j in range(n) if i != j))
        if off < tol * max(1.0, np.abs(np.diag(A)).max()):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(A[p, q]) < 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2 * A[p, q])
                t = np.sign(theta) / (abs(theta) + math.sqrt(theta**2 + 1))
                if theta == 0:
                    t = 1.0
                c = 1 / math.sqrt(t**2 + 1)
                s = t * c
                J = np.eye(n)
                J[p, p] = J[q, q] = c
                J[p, q] = s
                J[q, p] = -s
                A = J.T @ A @ J
                V = V @ J
    order = np.argsort(np.diag(A))[::-1]
    return np.diag(A)[order], V[:, order]


def naive_forward(weights, biases, x):
    """Layer-by-layer MLP forward pass with explicit loops."""
    h = list(x)
    for layer in range(len(weights)):
        w, b = weights[layer], biases[layer]
        out = []
        for j in range(w.shape[1]):
            z = b[j] + sum(h[i] * w[i, j] for i in range(w.shape[0]))
            out.append(z)
        if layer < len(weights) - 1:
            h = [math.tanh(z) for z in out]
        else:
            mx = max(out)
            exps = [math.exp(z - mx) for z in out]
            total = sum(exps)
            h = [e / total for e in exps]
    return np.array(h)


def count_confusion(true, pred, n_classes=6):
    counts = [[0] * n_classes for _ in range(n_classes)]
    for t, p in zip(true, pred):
        counts[t][p] += 1
    return np.array(counts)
