"""Small numerical kernels shared by the modules.

Everything here is vectorised over numpy arrays where it matters; the
callers are scalar-heavy otherwise and the per-call overhead dominates.
"""

import math

import numpy as np

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0

# log-space bracket covering the positive normal doubles
LOG_TINY = -700.0
LOG_HUGE = 700.0


def golden_max(func, lo, hi, rtol=1e-10, maxiter=200):
    """Maximise a unimodal ``func`` on ``[lo, hi]`` by golden-section search.

    ``func`` is evaluated on arrays: ``lo`` and ``hi`` may be arrays of the
    same shape, in which case every bracket is refined simultaneously.
    Returns ``(argmax, max)``.
    """
    a = np.array(lo, dtype=float, copy=True)
    b = np.array(hi, dtype=float, copy=True)
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc = func(c)
    fd = func(d)
    for _ in range(maxiter):
        width = np.abs(b - a)
        scale = np.maximum(np.abs(a), np.abs(b))
        if np.all(width <= rtol * scale):
            break
        left = fc >= fd  # the maximum lies in [a, d]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        d_new = np.where(left, c, a + INVPHI * (b - a))
        c_new = np.where(left, b - INVPHI * (b - a), d)
        fd_old = fd
        fc_old = fc
        c, d = c_new, d_new
        # only one new evaluation per bracket is needed, but evaluating both
        # keeps the array code simple and costs at most a factor two
        fc = np.where(left, func(c), fd_old)
        fd = np.where(left, fc_old, func(d))
    x = np.where(fc >= fd, c, d)
    return x, func(x)


def golden_max_log(func, lo, hi, rtol=1e-10, maxiter=200):
    """Golden-section maximisation in ``log x`` for positive brackets."""
    x, fx = golden_max(lambda s: func(np.exp(s)), np.log(lo), np.log(hi),
                       rtol=0.0, maxiter=_iters_for(np.log(hi) - np.log(lo), rtol))
    return np.exp(x), fx


def _iters_for(width, rtol):
    width = float(np.max(np.abs(width))) if np.size(width) else 0.0
    if width <= rtol or rtol <= 0:
        return 200
    return int(math.ceil(math.log(rtol / width) / math.log(INVPHI))) + 2


def bisect_log(pred, lo=LOG_TINY, hi=LOG_HUGE, atol=1e-13, shape=None):
    """Threshold of a monotone predicate, bisected in log-space.

    ``pred(x)`` must be False for small ``x`` and True for large ``x``
    (elementwise on arrays).  Returns ``exp(s)`` where ``s`` is the
    log-threshold located to absolute accuracy ``atol``.  When the predicate
    already holds at ``exp(lo)`` the result is 0; when it fails at
    ``exp(hi)`` the result is ``inf``.
    """
    lo_arr = np.full(shape, lo, dtype=float) if shape is not None else np.asarray(lo, dtype=float)
    hi_arr = np.full(shape, hi, dtype=float) if shape is not None else np.asarray(hi, dtype=float)
    lo_arr, hi_arr = np.broadcast_arrays(lo_arr, hi_arr)
    lo_arr = lo_arr.astype(float).copy()
    hi_arr = hi_arr.astype(float).copy()
    at_lo = np.asarray(pred(np.exp(lo_arr)), dtype=bool)
    at_hi = np.asarray(pred(np.exp(hi_arr)), dtype=bool)
    n_iter = int(math.ceil(math.log2(max(float(np.max(hi_arr - lo_arr)), atol) / atol))) + 1
    for _ in range(n_iter):
        mid = 0.5 * (lo_arr + hi_arr)
        ok = np.asarray(pred(np.exp(mid)), dtype=bool)
        hi_arr = np.where(ok, mid, hi_arr)
        lo_arr = np.where(ok, lo_arr, mid)
    out = np.exp(hi_arr)
    out = np.where(at_lo, 0.0, out)
    out = np.where(at_hi, out, np.inf)
    return out


_GL_CACHE = {}


def gauss_legendre(n):
    if n not in _GL_CACHE:
        _GL_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GL_CACHE[n]


def segment_integrals(func, a, b, nodes=24):
    """Gauss-Legendre integrals of ``func`` over each segment ``[a_i, b_i]``.

    ``func`` receives a 2-D array of abscissae (segments x nodes) and must
    return values of the same shape.  Suitable for smooth integrands on
    short segments; callers split at kinks.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    x, w = gauss_legendre(nodes)
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    pts = mid[..., None] + half[..., None] * x
    vals = func(pts)
    return half * np.sum(vals * w, axis=-1)


def loglog_slope(x, y):
    """Slope of ``log y`` against ``log x`` between the two points."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return (np.log(y[1]) - np.log(y[0])) / (np.log(x[1]) - np.log(x[0]))


def end_slopes(x, y, decades=1.0):
    """Log-log slopes of a positive curve over the outermost decades.

    Returns ``(low_slope, high_slope)``; each compares the end point with the
    first grid point at least ``decades`` decades inside.  ``nan`` when the
    curve has non-positive or non-finite values there.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    lx = np.log10(x)
    slopes = []
    for end, inner in ((0, lx[0] + decades), (-1, lx[-1] - decades)):
        if end == 0:
            idx = np.nonzero(lx >= inner - 1e-12)[0]
            j = idx[0] if idx.size else len(x) - 1
        else:
            idx = np.nonzero(lx <= inner + 1e-12)[0]
            j = idx[-1] if idx.size else 0
        pair_x = (x[j], x[end]) if end == -1 else (x[end], x[j])
        pair_y = (y[j], y[end]) if end == -1 else (y[end], y[j])
        if not (np.all(np.isfinite(pair_y)) and np.all(np.asarray(pair_y) > 0)) or pair_x[0] == pair_x[1]:
            slopes.append(float("nan"))
        else:
            slopes.append(float(loglog_slope(pair_x, pair_y)))
    return slopes[0], slopes[1]


def golden_max_scalar(func, lo, hi, rtol=1e-10, maxiter=200):
    """Scalar golden-section maximisation with one evaluation per step.

    Meant for expensive objectives (each call may run a root finder).
    Returns ``(argmax, max)``; the best point seen is returned, so the
    result is never worse than either bracket end evaluated on entry.
    """
    a, b = float(lo), float(hi)
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = func(c), func(d)
    best = (c, fc) if fc >= fd else (d, fd)
    for _ in range(maxiter):
        if abs(b - a) <= rtol * max(abs(a), abs(b), 1e-300):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = func(c)
            if fc > best[1]:
                best = (c, fc)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = func(d)
            if fd > best[1]:
                best = (d, fd)
    return best
