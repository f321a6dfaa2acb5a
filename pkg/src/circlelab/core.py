"""Functions on the circle T = R/(2*pi*Z).

Two concrete carriers are used everywhere in this package:

* :class:`PiecewiseLinearFunction` -- an exact finite-knot representation
  (strictly increasing knot angles in [0, 2*pi), complex values, linear
  interpolation between knots, optional periodic wrap segment).
* :class:`GridFunction` -- uniform power-of-two sample grids, the carrier
  for FFT-based computations.

Values are stored as complex even for real-valued functions; operations
that only make sense for real functions check that the imaginary part is
exactly zero.  All objects are immutable after construction (backing
arrays are marked read-only), so everything here is safe for concurrent
read-only use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

__all__ = [
    "TWO_PI",
    "CircleInterval",
    "PiecewiseLinearFunction",
    "GridFunction",
    "triangle",
    "eval_pl",
    "sample",
    "total_variation",
    "simplify",
    "pl_sum",
    "reduce_angle",
]


def reduce_angle(t):
    """Reduce an angle (or array of angles) to [0, 2*pi).

    Inputs are expected to sit within a few periods of range; scalars are
    reduced by repeated subtraction, arrays by a masked modulo pass.
    """
    if np.isscalar(t) or np.ndim(t) == 0:
        x = float(t)
        while x >= TWO_PI:
            x -= TWO_PI
        while x < 0.0:
            x += TWO_PI
        # adding 2*pi to a tiny negative rounds up to exactly 2*pi
        return 0.0 if x >= TWO_PI else x
    arr = np.array(t, dtype=float)
    mask = (arr < 0.0) | (arr >= TWO_PI)
    if mask.any():
        arr[mask] = np.mod(arr[mask], TWO_PI)
        # mod can return 2*pi for tiny negative inputs
        arr[arr >= TWO_PI] -= TWO_PI
    return arr


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class CircleInterval:
    """Closed arc [a, b] with 0 <= a < b <= 2*pi."""

    a: float
    b: float

    def __post_init__(self):
        if not (0.0 <= self.a < self.b <= TWO_PI):
            raise ValueError(f"invalid interval [{self.a}, {self.b}]")

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def center(self) -> float:
        return 0.5 * (self.a + self.b)

    def contains(self, t: float) -> bool:
        return self.a <= t <= self.b


@dataclass(frozen=True)
class PiecewiseLinearFunction:
    """Piecewise-linear function on the circle.

    ``knots`` are strictly increasing angles in [0, 2*pi); ``values`` the
    complex value at each knot.  Between knots the function is the linear
    interpolant; if ``periodic``, the final segment wraps from the last
    knot to ``knots[0] + 2*pi`` where it takes ``values[0]`` again.
    """

    knots: np.ndarray
    values: np.ndarray
    periodic: bool = True

    def __post_init__(self):
        knots = np.atleast_1d(np.asarray(self.knots, dtype=float))
        values = np.atleast_1d(np.asarray(self.values, dtype=complex))
        if knots.ndim != 1 or values.shape != knots.shape:
            raise ValueError("knots and values must be 1-d arrays of equal length")
        if knots.size < 1:
            raise ValueError("need at least one knot")
        if not np.all(np.isfinite(knots)) or not np.all(np.isfinite(values)):
            raise ValueError("knots and values must be finite")
        if knots[0] < 0.0 or knots[-1] >= TWO_PI:
            raise ValueError("knots must lie in [0, 2*pi)")
        if knots.size > 1 and not np.all(np.diff(knots) > 0.0):
            raise ValueError("knots must be strictly increasing")
        object.__setattr__(self, "knots", _readonly(knots))
        object.__setattr__(self, "values", _readonly(values))

    @property
    def n_knots(self) -> int:
        return self.knots.size

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.values.imag == 0.0))

    def __call__(self, t):
        scalar = np.isscalar(t) or np.ndim(t) == 0
        tt = np.atleast_1d(reduce_angle(t))
        if self.knots.size == 1:
            if not self.periodic and np.any(tt != self.knots[0]):
                raise ValueError("evaluation outside domain of non-periodic function")
            out = np.full(tt.shape, self.values[0], dtype=complex)
            return out[0] if scalar else out
        if not self.periodic:
            if np.any(tt < self.knots[0]) or np.any(tt > self.knots[-1]):
                raise ValueError("evaluation outside domain of non-periodic function")
            t_ext = self.knots
            v_ext = self.values
            pos = np.minimum(tt, self.knots[-1])
        else:
            t_ext = np.concatenate([self.knots, [self.knots[0] + TWO_PI]])
            v_ext = np.concatenate([self.values, [self.values[0]]])
            pos = np.where(tt < self.knots[0], tt + TWO_PI, tt)
        idx = np.searchsorted(t_ext, pos, side="right") - 1
        idx = np.clip(idx, 0, t_ext.size - 2)
        t0 = t_ext[idx]
        t1 = t_ext[idx + 1]
        lam = (pos - t0) / (t1 - t0)
        out = v_ext[idx] + lam * (v_ext[idx + 1] - v_ext[idx])
        return out[0] if scalar else out

    def to_dict(self) -> dict:
        return {
            "knots": self.knots.tolist(),
            "re": self.values.real.tolist(),
            "im": self.values.imag.tolist(),
        }

    @staticmethod
    def from_dict(d: dict) -> "PiecewiseLinearFunction":
        knots = np.asarray(d["knots"], dtype=float)
        values = np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float)
        return PiecewiseLinearFunction(knots, values)


@dataclass(frozen=True)
class GridFunction:
    """Samples of a function at t_j = 2*pi*j/N for a power-of-two N."""

    n_samples: int
    samples: np.ndarray

    def __post_init__(self):
        n = int(self.n_samples)
        if n < 2 or n & (n - 1):
            raise ValueError(f"sample count must be a power of two >= 2, got {n}")
        samples = np.asarray(self.samples, dtype=complex)
        if samples.shape != (n,):
            raise ValueError("samples must be a 1-d array of length n_samples")
        if not np.all(np.isfinite(samples)):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "n_samples", n)
        object.__setattr__(self, "samples", _readonly(samples))

    def grid(self) -> np.ndarray:
        return np.arange(self.n_samples) * (TWO_PI / self.n_samples)


def triangle(interval: CircleInterval) -> PiecewiseLinearFunction:
    """Unit tent supported on ``interval``: 0 at the endpoints and outside,
    1 at the center, linear on each half.

    The interval must lie strictly inside (0, 2*pi) so the tent vanishes in
    a neighbourhood of the wrap point.
    """
    if interval.a <= 0.0 or interval.b >= TWO_PI:
        raise ValueError("interval must lie strictly inside (0, 2*pi)")
    knots = np.array([0.0, interval.a, interval.center, interval.b])
    values = np.array([0.0, 0.0, 1.0, 0.0], dtype=complex)
    return PiecewiseLinearFunction(knots, values)


def eval_pl(f: PiecewiseLinearFunction, t):
    """Evaluate ``f`` at angle(s) ``t`` (reduced mod 2*pi)."""
    return f(t)


def sample(f: PiecewiseLinearFunction, n: int) -> GridFunction:
    """Sample ``f`` exactly on the uniform grid t_j = 2*pi*j/n."""
    n = int(n)
    if n < 2 or n & (n - 1):
        raise ValueError(f"sample count must be a power of two >= 2, got {n}")
    t = np.arange(n) * (TWO_PI / n)
    return GridFunction(n, f(t))


def total_variation(f: PiecewiseLinearFunction) -> float:
    """Total variation of a real-valued PL function, wrap segment included."""
    if not f.is_real:
        raise ValueError("total variation is defined here for real-valued functions only")
    y = f.values.real
    if y.size == 1:
        return 0.0
    tv = float(np.sum(np.abs(np.diff(y))))
    if f.periodic:
        tv += abs(float(y[0] - y[-1]))
    return tv


def simplify(f: PiecewiseLinearFunction, tol: float = 1e-14) -> PiecewiseLinearFunction:
    """Drop knots that are collinear with their neighbours to within ``tol``
    (absolute, relative to the value scale).  The function is unchanged up
    to that tolerance."""
    if f.n_knots <= 2:
        return f
    knots = list(f.knots)
    values = list(f.values)
    scale = max(1.0, float(np.max(np.abs(f.values))))
    changed = True
    while changed and len(knots) > 2:
        changed = False
        i = 0
        while i < len(knots) and len(knots) > 2:
            m = len(knots)
            ip = (i - 1) % m
            inx = (i + 1) % m
            tp, tc, tn = knots[ip], knots[i], knots[inx]
            if not f.periodic and (i == 0 or i == m - 1):
                i += 1
                continue
            # unwrap neighbours across the periodic seam
            if tp >= tc:
                tp -= TWO_PI
            if tn <= tc:
                tn += TWO_PI
            lam = (tc - tp) / (tn - tp)
            pred = values[ip] + lam * (values[inx] - values[ip])
            if abs(pred - values[i]) <= tol * scale:
                del knots[i]
                del values[i]
                changed = True
            else:
                i += 1
    return PiecewiseLinearFunction(np.array(knots), np.array(values), periodic=f.periodic)


def pl_sum(functions, weights=None) -> PiecewiseLinearFunction:
    """Exact weighted sum of periodic PL functions on the union knot set."""
    fs = list(functions)
    if not fs:
        raise ValueError("need at least one function")
    if any(not f.periodic for f in fs):
        raise ValueError("pl_sum requires periodic functions")
    if weights is None:
        weights = [1.0] * len(fs)
    knots = np.unique(np.concatenate([f.knots for f in fs]))
    values = np.zeros(knots.shape, dtype=complex)
    for w, f in zip(weights, fs):
        values = values + w * f(knots)
    return PiecewiseLinearFunction(knots, values)
