"""Half-order Sobolev seminorms on the circle, in two equivalent forms.

Spectral form (general order s > 0):

    ||f||_s = ( sum_k |fhat(k)|^2 |k|^(2s) )^(1/2)

Difference-quotient form (order 1/2 only):

    |||f||| = ( int_0^{2pi} theta^-2 int_0^{2pi} |f(t+theta)-f(t)|^2 dt dtheta )^(1/2)

The double integral is discretized on the sample grid: the inner integral
is evaluated exactly (for grid data) as 2*pi times the mean of
|g(t+theta_m)-g(t)|^2 at each grid shift theta_m = 2*pi*m/N, and the outer
integral by the midpoint rule over the cells centred at theta_m, m >= 1
(the singular theta=0 cell is excluded).  The shift means are obtained for
all m at once through the circular autocorrelation (one FFT pair), which
is algebraically identical to the double loop.

Also here: moduli of continuity, Lipschitz-class checks, and the empirical
equivalence-constant scan between the two seminorm forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .core import TWO_PI, GridFunction, PiecewiseLinearFunction, _readonly, reduce_angle
from .fourier import SpectrumCoeffs

__all__ = [
    "ModulusSpec",
    "EquivalenceEstimate",
    "LipReport",
    "sobolev_spectral",
    "sobolev_integral",
    "modulus_of_continuity",
    "lip_check",
    "default_delta_grid",
    "equivalence_scan",
    "harmonic_shift_weight",
]


@dataclass(frozen=True)
class ModulusSpec:
    """A modulus of continuity: nondecreasing, subadditive, omega(0) = 0.

    Two kinds are supported: ``power`` (omega(d) = d**alpha, 0 < alpha <= 1,
    which satisfies the axioms analytically) and ``table`` (piecewise-linear
    interpolation of (delta, omega) pairs, validated at construction and
    extended by its last value beyond the tabulated range).
    """

    kind: str
    alpha: float | None = None
    deltas: np.ndarray | None = None
    omegas: np.ndarray | None = None

    @staticmethod
    def power(alpha: float) -> "ModulusSpec":
        alpha = float(alpha)
        if not (0.0 < alpha <= 1.0):
            raise ValueError(f"power modulus needs alpha in (0, 1], got {alpha}")
        return ModulusSpec(kind="power", alpha=alpha)

    @staticmethod
    def table(deltas, omegas) -> "ModulusSpec":
        deltas = np.asarray(deltas, dtype=float)
        omegas = np.asarray(omegas, dtype=float)
        if deltas.ndim != 1 or deltas.shape != omegas.shape or deltas.size < 2:
            raise ValueError("table modulus needs matching 1-d arrays with >= 2 points")
        if deltas[0] != 0.0 or omegas[0] != 0.0:
            raise ValueError("table modulus must start at (0, 0)")
        if not np.all(np.diff(deltas) > 0.0):
            raise ValueError("table deltas must be strictly increasing")
        if np.any(np.diff(omegas) < 0.0) or np.any(omegas < 0.0):
            raise ValueError("table modulus must be nonnegative and nondecreasing")
        # subadditivity omega(x+y) <= omega(x) + omega(y), checked on grid pairs
        sums = deltas[:, None] + deltas[None, :]
        vals = np.interp(sums, deltas, omegas, right=float(omegas[-1]))
        bound = omegas[:, None] + omegas[None, :]
        scale = max(1.0, float(omegas[-1]))
        if np.any(vals > bound + 1e-12 * scale):
            i, j = np.unravel_index(np.argmax(vals - bound), vals.shape)
            raise ValueError(
                f"table modulus not subadditive at ({deltas[i]}, {deltas[j]})"
            )
        return ModulusSpec(
            kind="table", deltas=_readonly(deltas.copy()), omegas=_readonly(omegas.copy())
        )

    def __call__(self, d):
        if self.kind == "power":
            return np.asarray(d, dtype=float) ** self.alpha if np.ndim(d) else float(d) ** self.alpha
        out = np.interp(d, self.deltas, self.omegas, right=float(self.omegas[-1]))
        return float(out) if np.ndim(d) == 0 else out

    def describe(self) -> str:
        if self.kind == "power":
            return f"power(alpha={self.alpha})"
        return f"table({self.deltas.size} points, support <= {self.deltas[-1]})"


@dataclass(frozen=True)
class EquivalenceEstimate:
    """Empirical bracket for the ratio integral-form / spectral-form."""

    ratio_min: float
    ratio_max: float
    sample_count: int

    def __post_init__(self):
        if not (0.0 < self.ratio_min <= self.ratio_max):
            raise ValueError("need 0 < ratio_min <= ratio_max")

    @property
    def spread(self) -> float:
        return self.ratio_max / self.ratio_min


def sobolev_spectral(c: SpectrumCoeffs, s: float) -> float:
    """Spectral seminorm ( sum |fhat(k)|^2 |k|^(2s) )^(1/2), s > 0."""
    s = float(s)
    if s <= 0.0:
        raise ValueError("order s must be positive")
    k = np.abs(c.k_values).astype(float)
    return math.sqrt(float(np.sum(np.abs(c.coeffs) ** 2 * k ** (2.0 * s))))


def _shift_energies(g: GridFunction) -> np.ndarray:
    """mean_j |g(t_j + theta_m) - g(t_j)|^2 for every grid shift m = 0..N-1,
    via the circular autocorrelation identity."""
    big = np.fft.fft(g.samples)
    corr = np.fft.ifft(np.abs(big) ** 2) / g.n_samples  # mean_j g_{j+m} conj(g_j)
    power = corr[0].real
    return np.maximum(2.0 * (power - corr.real), 0.0)


def sobolev_integral(g: GridFunction) -> float:
    """Difference-quotient seminorm of grid data (see module docstring)."""
    n = g.n_samples
    energies = _shift_energies(g)
    m = np.arange(1, n)
    thetas = m * (TWO_PI / n)
    total = np.sum((TWO_PI / n) * (TWO_PI * energies[1:]) / thetas**2)
    return math.sqrt(max(float(total), 0.0))


def _sparse_tables(a: np.ndarray, op):
    levels = [a]
    size = a.size
    l = 1
    while (1 << l) <= size:
        prev = levels[-1]
        half = 1 << (l - 1)
        levels.append(op(prev[:-half], prev[half:]))
        l += 1
    return levels


def _range_query(levels, lo: np.ndarray, hi: np.ndarray):
    """Extrema over inclusive index ranges [lo, hi] (lo <= hi assumed): the
    classic two-overlapping-blocks sparse-table lookup, grouped by level."""
    length = hi - lo + 1
    lev = np.floor(np.log2(length)).astype(int)
    left = np.empty(lo.shape, dtype=levels[0].dtype)
    right = np.empty_like(left)
    for l in np.unique(lev):
        mask = lev == l
        tab = levels[l]
        left[mask] = tab[lo[mask]]
        right[mask] = tab[hi[mask] - (1 << int(l)) + 1]
    return left, right


def modulus_of_continuity(f: PiecewiseLinearFunction, delta: float) -> float:
    """sup |f(t1) - f(t2)| over circle distance |t1 - t2| <= delta.

    For PL functions the supremum is attained with at least one point at a
    knot, the other at a knot or at distance exactly delta, so the search
    is exact over that finite candidate set.
    """
    delta = float(delta)
    if delta < 0.0 or delta > TWO_PI + 1e-12:
        raise ValueError("delta must lie in [0, 2*pi]")
    if delta == 0.0 or f.n_knots == 1:
        return 0.0
    t = f.knots
    if f.is_real:
        y = f.values.real
        if delta >= math.pi:
            return float(np.max(y) - np.min(y))
        best = _real_window_max(f, t, y, delta)
    else:
        v = f.values
        if delta >= math.pi:
            return _max_pairwise(v)
        best = _complex_window_max(f, t, v, delta)
    return best


def _edge_candidates(f, t, vals, delta):
    up = np.abs(f(reduce_angle(t + delta)) - vals)
    down = np.abs(f(reduce_angle(t - delta)) - vals)
    return max(float(np.max(up)), float(np.max(down)))


def _real_window_max(f, t, y, delta):
    n = t.size
    t_ext = np.concatenate([t, t + TWO_PI])
    y_ext = np.concatenate([y, y])
    hi = np.searchsorted(t_ext, t + delta, side="right") - 1
    lo = np.arange(n) + 1
    mask = hi >= lo
    best = 0.0
    if mask.any():
        tmax = _sparse_tables(y_ext, np.maximum)
        tmin = _sparse_tables(y_ext, np.minimum)
        a1, a2 = _range_query(tmax, lo[mask], hi[mask])
        b1, b2 = _range_query(tmin, lo[mask], hi[mask])
        wmax = np.maximum(a1, a2)
        wmin = np.minimum(b1, b2)
        yi = y[mask]
        best = float(np.max(np.maximum(wmax - yi, yi - wmin)))
    return max(best, _edge_candidates(f, t, y, delta))


def _complex_window_max(f, t, v, delta):
    n = t.size
    t_ext = np.concatenate([t, t + TWO_PI])
    v_ext = np.concatenate([v, v])
    hi = np.searchsorted(t_ext, t + delta, side="right") - 1
    best = 0.0
    for i in range(n):
        if hi[i] >= i + 1:
            best = max(best, float(np.max(np.abs(v_ext[i + 1 : hi[i] + 1] - v[i]))))
    return max(best, _edge_candidates(f, t, v, delta))


def _max_pairwise(v: np.ndarray) -> float:
    n = v.size
    best = 0.0
    step = max(1, 4_000_000 // max(n, 1))
    for s in range(0, n, step):
        block = v[s : s + step, None] - v[None, :]
        best = max(best, float(np.max(np.abs(block))))
    return best


def default_delta_grid(levels: int = 20) -> np.ndarray:
    """Geometric grid 2*pi * 2^-m, m = 1..levels."""
    return TWO_PI * 2.0 ** (-np.arange(1, levels + 1, dtype=float))


@dataclass(frozen=True)
class LipReport:
    """Per-delta moduli of a function against a reference modulus."""

    deltas: np.ndarray
    moduli: np.ndarray
    ratios: np.ndarray
    max_ratio: float

    def to_dict(self) -> dict:
        return {
            "deltas": self.deltas.tolist(),
            "moduli": self.moduli.tolist(),
            "ratios": self.ratios.tolist(),
            "max_ratio": self.max_ratio,
        }


def lip_check(f: PiecewiseLinearFunction, omega: ModulusSpec, delta_grid=None) -> LipReport:
    """sup over the grid of omega(f, delta) / omega(delta).

    Membership in the omega-Lipschitz class is asserted by the caller
    comparing ``max_ratio`` against its constant.
    """
    if delta_grid is None:
        delta_grid = default_delta_grid()
    deltas = np.asarray(delta_grid, dtype=float)
    if deltas.size == 0 or np.any(deltas <= 0.0) or np.any(deltas > TWO_PI + 1e-12):
        raise ValueError("delta grid must be nonempty with entries in (0, 2*pi]")
    moduli = np.array([modulus_of_continuity(f, d) for d in deltas])
    denom = np.array([omega(d) for d in deltas], dtype=float)
    ratios = np.where(denom > 0.0, moduli / np.where(denom > 0.0, denom, 1.0), np.where(moduli > 0.0, np.inf, 0.0))
    return LipReport(
        deltas=_readonly(deltas.copy()),
        moduli=_readonly(moduli),
        ratios=_readonly(ratios),
        max_ratio=float(np.max(ratios)),
    )


def equivalence_scan(test_set, n: int) -> EquivalenceEstimate:
    """Bracket the ratio sobolev_integral / sobolev_spectral over a family
    of bandlimited test functions synthesized on an n-grid."""
    from .fourier import synthesize

    specs = list(test_set)
    if not specs:
        raise ValueError("empty test set")
    ratios = []
    for c in specs:
        denom = sobolev_spectral(c, 0.5)
        if denom == 0.0:
            raise ValueError("degenerate (constant) test function in equivalence scan")
        g = synthesize(c, n)
        ratios.append(sobolev_integral(g) / denom)
    ratios = np.asarray(ratios)
    return EquivalenceEstimate(float(np.min(ratios)), float(np.max(ratios)), len(specs))


def harmonic_shift_weight(k: int) -> float:
    """w(k) = int_0^{2pi} 4 sin^2(k theta / 2) / theta^2 dtheta by adaptive
    quadrature, integrated piecewise over the oscillation periods.

    Independent scalar oracle for the difference-quotient seminorm of pure
    harmonics: |||e^{ikt}|||^2 = 2*pi*w(k).
    """
    k = int(k)
    if k == 0:
        return 0.0
    k = abs(k)

    def integrand(theta):
        return (2.0 * math.sin(0.5 * k * theta) / theta) ** 2

    edges = np.linspace(0.0, TWO_PI, k + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        val, _ = quad(integrand, a, b, limit=200)
        total += val
    return total
