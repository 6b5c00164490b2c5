"""Shared numerical primitives: Gaussian tails, log-domain binomials,
and relative-accuracy quadrature for sharply peaked integrands.

Everything that involves powers of tail probabilities (Q(x)^k for k in the
hundreds) is kept in the log domain until the final exponentiation, so that
deep-tail error rates around 1e-13 and below stay meaningful in doubles.
"""

import numpy as np
from scipy import integrate, optimize, special

LOG_ZERO = -np.inf


def q_func(x):
    """Gaussian tail probability Q(x) = P(N(0,1) > x)."""
    return special.ndtr(-np.asarray(x, dtype=float))


def log_q_func(x):
    """log Q(x), accurate far into the tail (uses log_ndtr)."""
    return special.log_ndtr(-np.asarray(x, dtype=float))


def log_norm_pdf(x, mean, std):
    """log density of N(mean, std^2) at x."""
    z = (np.asarray(x, dtype=float) - mean) / std
    return -0.5 * z * z - np.log(std) - 0.5 * np.log(2.0 * np.pi)


def log_binom(n, k):
    """log of the binomial coefficient, vectorized, exact enough for n ~ 1e4."""
    n = np.asarray(n, dtype=float)
    k = np.asarray(k, dtype=float)
    return special.gammaln(n + 1) - special.gammaln(k + 1) - special.gammaln(n - k + 1)


def binom_pmf_log(n, k, log_p, log_1mp):
    """Binomial pmf built from precomputed log probabilities.

    Returns log C(n,k) + k*log_p + (n-k)*log_1mp; safe for p down to 0
    (log_p = -inf handled by numpy semantics with k = 0 guarded).
    """
    k = np.asarray(k, dtype=float)
    out = log_binom(n, k)
    with np.errstate(invalid="ignore"):
        out = out + np.where(k > 0, k * log_p, 0.0)
        out = out + np.where(n - k > 0, (n - k) * log_1mp, 0.0)
    return out


def _find_peak(log_f, lo, hi):
    """Locate the maximum of log_f on [lo, hi] (either end may be infinite)."""
    # Probe on a generous grid first; the integrands here are unimodal in
    # practice but cheap enough that a dense probe costs nothing.
    a = lo if np.isfinite(lo) else hi - 60.0 if np.isfinite(hi) else -30.0
    b = hi if np.isfinite(hi) else lo + 60.0 if np.isfinite(lo) else 30.0
    grid = np.linspace(a, b, 257)
    vals = log_f(grid)
    i = int(np.argmax(vals))
    g_lo = grid[max(i - 1, 0)]
    g_hi = grid[min(i + 1, grid.size - 1)]
    if g_lo == g_hi:
        return grid[i], vals[i]
    res = optimize.minimize_scalar(
        lambda t: -log_f(np.asarray([t]))[0],
        bounds=(g_lo, g_hi),
        method="bounded",
        options={"xatol": 1e-12},
    )
    x0 = float(res.x)
    f0 = float(log_f(np.asarray([x0]))[0])
    if f0 < vals[i]:
        x0, f0 = float(grid[i]), float(vals[i])
    return x0, f0


def integrate_log_integrand(log_f, lo, hi, rel_tol=1e-12):
    """Integrate exp(log_f) over [lo, hi] with relative accuracy.

    The integrand is rescaled by its peak value so that adaptive quadrature
    works on an O(1) function; the result is exp(peak + log scaled_integral),
    which survives peaks far outside the double range in either direction.
    log_f must accept an ndarray and return an ndarray.
    """
    x0, f0 = _find_peak(log_f, lo, hi)
    if not np.isfinite(f0):
        return 0.0

    def scaled(t):
        return float(np.exp(log_f(np.asarray([t]))[0] - f0))

    pieces = []
    if lo < x0 < hi:
        pieces.append((lo, x0))
        pieces.append((x0, hi))
    else:
        pieces.append((lo, hi))
    total = 0.0
    for a, b in pieces:
        val, _ = integrate.quad(scaled, a, b, epsabs=1e-300, epsrel=rel_tol, limit=400)
        total += val
    if total <= 0.0:
        return 0.0
    return float(np.exp(f0 + np.log(total)))


def logsumexp_rows(a, axis=-1):
    """Thin wrapper so callers do not import scipy.special everywhere."""
    return special.logsumexp(a, axis=axis)


def db_to_lin(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


def lin_to_db(lin):
    return 10.0 * np.log10(np.asarray(lin, dtype=float))


def bisect_db(fn, target, lo_db, hi_db, tol_db=1e-3, increasing=False):
    """Find x_db in [lo_db, hi_db] with fn(x_db) = target to tol_db.

    fn is assumed monotone decreasing in x_db by default (error rates vs
    SNR); pass increasing=True for the opposite orientation. Raises if the
    bracket does not straddle the target.
    """
    f_lo, f_hi = fn(lo_db), fn(hi_db)
    sgn = 1.0 if increasing else -1.0
    if (sgn * (f_lo - target)) * (sgn * (f_hi - target)) > 0:
        raise ValueError(
            f"target {target:g} not bracketed on [{lo_db}, {hi_db}] dB "
            f"(endpoints {f_lo:g}, {f_hi:g})"
        )
    lo, hi = lo_db, hi_db
    while hi - lo > tol_db:
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if (sgn * (f_mid - target)) * (sgn * (f_lo - target)) <= 0:
            hi = mid
        else:
            lo = mid
            f_lo = f_mid
    return 0.5 * (lo + hi)
