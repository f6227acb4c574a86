"""Closed-form coherence factor |F(t)| and the sweeps built on top of it.

For a pair of central-qubit basis states ``(j, j')`` the chain evolves under
two different dressed fields. Each positive momentum mode contributes a factor
in [0, 1] and |F(t)| is the product of those factors over the momentum grid.

Two reference states for the chain are supported:

``"polarized"`` (default)
    The product formula with no dependence on the initial-field Bogoliubov
    angle. It is the exact overlap when every mode pair starts empty.
``"ground"``
    The same algebra carried out from the ground state of the undressed
    chain. The angle at the bare field enters through ``cos(theta_j - theta)``.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .spectrum import ChainParams, ModeData, _check_basis_index, mode_arrays, shifted_lambda

__all__ = [
    "CRITICAL_FIELD",
    "PairSelector",
    "CoherenceSeries",
    "SweepGrid",
    "ScalingMode",
    "ScalingRule",
    "mode_factor",
    "mode_factors",
    "coherence_factor",
    "coherence_curve",
    "coherence_series",
    "sweep",
    "size_scan",
    "apply_scaling",
    "scaling_residual",
    "time_grid",
    "default_time_step",
    "curve_minimum",
]

CRITICAL_FIELD = 1.0
REFERENCES = ("polarized", "ground")


class PairSelector(NamedTuple):
    j: int
    j_prime: int

    @classmethod
    def coerce(cls, pair) -> "PairSelector":
        j, jp = pair
        return cls(_check_basis_index(j), _check_basis_index(jp))


@dataclass(frozen=True)
class CoherenceSeries:
    params: ChainParams
    pair: PairSelector
    times: np.ndarray
    values: np.ndarray


@dataclass(frozen=True)
class SweepGrid:
    """|F| on a rectangular grid; ``values[i, n]`` is at ``axis1[i]``, ``times[n]``."""

    axis1_name: str
    axis1: np.ndarray
    times: np.ndarray
    values: np.ndarray

    @property
    def axis2_name(self) -> str:
        return "t"


class ScalingMode(str, enum.Enum):
    SCALE_N = "scale-N"
    SCALE_GAMMA = "scale-gamma"


@dataclass(frozen=True)
class ScalingRule:
    m: float
    mode: ScalingMode = ScalingMode.SCALE_N

    def __post_init__(self):
        if not (math.isfinite(self.m) and self.m > 0):
            raise ValueError(f"scale factor must be positive, got {self.m}")
        object.__setattr__(self, "mode", ScalingMode(self.mode))


def _check_reference(reference: str) -> str:
    if reference not in REFERENCES:
        raise ValueError(f"reference must be one of {REFERENCES}, got {reference!r}")
    return reference


def mode_factors(theta1, omega1, theta2, omega2, t, theta_ref=None):
    """Broadcasting kernel behind :func:`mode_factor`.

    With ``theta_ref=None`` the polarized-reference product formula is used
    verbatim; otherwise the reference state is the pair ground state with
    Bogoliubov angle ``theta_ref``.
    """
    wt_minus = (omega1 - omega2) * t
    wt_plus = (omega1 + omega2) * t
    half_diff = 0.5 * (theta1 - theta2)
    if theta_ref is None:
        half_sum = 0.5 * (theta1 + theta2)
        a = np.cos(half_diff) ** 2 * np.cos(wt_minus) + np.sin(half_diff) ** 2 * np.cos(wt_plus)
        b = (
            np.cos(half_sum) * np.cos(half_diff) * np.sin(wt_minus)
            - np.sin(half_sum) * np.sin(half_diff) * np.sin(wt_plus)
        )
    else:
        c1, s1 = np.cos(omega1 * t), np.sin(omega1 * t)
        c2, s2 = np.cos(omega2 * t), np.sin(omega2 * t)
        a = c1 * c2 + s1 * s2 * np.cos(theta1 - theta2)
        b = s1 * c2 * np.cos(theta1 - theta_ref) - c1 * s2 * np.cos(theta2 - theta_ref)
    return np.minimum(np.sqrt(a * a + b * b), 1.0)


def mode_factor(mode1: ModeData, mode2: ModeData, t: float) -> float:
    """Contribution of a single momentum mode to |F(t)|."""
    if mode1.k != mode2.k:
        raise ValueError(f"mode indices differ: {mode1.k} != {mode2.k}")
    return float(mode_factors(mode1.theta, mode1.omega, mode2.theta, mode2.omega, t))


def _log_product(factors: np.ndarray, axis: int = -1) -> np.ndarray:
    # log-space keeps the product finite when |F| decays towards zero for large N
    with np.errstate(divide="ignore"):
        logs = np.log(factors)
    return np.exp(np.sum(logs, axis=axis))


def coherence_curve(params: ChainParams, pair, times, reference: str = "polarized") -> np.ndarray:
    """|F| for every entry of ``times`` (no ordering requirement)."""
    j, jp = PairSelector.coerce(pair)
    _check_reference(reference)
    times = np.asarray(times, dtype=float)
    _, omega1, theta1 = mode_arrays(params, shifted_lambda(params.lam, params.g, j))
    _, omega2, theta2 = mode_arrays(params, shifted_lambda(params.lam, params.g, jp))
    theta_ref = mode_arrays(params, params.lam)[2] if reference == "ground" else None
    factors = mode_factors(theta1, omega1, theta2, omega2, times[..., None], theta_ref)
    return _log_product(factors)


def coherence_factor(params: ChainParams, pair, t: float, reference: str = "polarized") -> float:
    """|F(t)| for the pair ``(j, j')`` as a product over the momentum grid."""
    return float(coherence_curve(params, pair, np.array([t], dtype=float), reference)[0])


def coherence_series(params: ChainParams, pair, times, reference: str = "polarized") -> CoherenceSeries:
    times = np.asarray(times, dtype=float)
    if times.ndim != 1:
        raise ValueError("times must be one-dimensional")
    if times.size and (np.any(times < 0) or np.any(np.diff(times) < 0)):
        raise ValueError("times must be nonnegative and sorted ascending")
    values = coherence_curve(params, pair, times, reference)
    return CoherenceSeries(params, PairSelector.coerce(pair), times, values)


_SWEEP_AXES = {"lambda": "lam", "lam": "lam", "gamma": "gamma"}


def sweep(
    params: ChainParams,
    pair,
    axis: str,
    samples: Sequence[float],
    times: Sequence[float],
    reference: str = "polarized",
    workers: int | None = None,
) -> SweepGrid:
    """Evaluate |F| on ``samples`` of ``axis`` (``"lambda"`` or ``"gamma"``) times ``times``.

    Rows are independent; with ``workers > 1`` they are computed on a thread
    pool and written back by index.
    """
    if axis not in _SWEEP_AXES:
        raise ValueError(f"sweep axis must be 'lambda' or 'gamma', got {axis!r}")
    samples = np.asarray(samples, dtype=float)
    times = np.asarray(times, dtype=float)
    if samples.size == 0 or times.size == 0:
        raise ValueError("sweep ranges must be non-empty")
    field = _SWEEP_AXES[axis]

    def row(x):
        return coherence_curve(params.replace(**{field: float(x)}), pair, times, reference)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, samples))
    else:
        rows = [row(x) for x in samples]
    name = "lambda" if field == "lam" else "gamma"
    return SweepGrid(name, samples, times, np.vstack(rows))


def size_scan(
    params: ChainParams, pair, sizes: Sequence[int], times, reference: str = "polarized"
) -> list[CoherenceSeries]:
    """One series per chain length with every other parameter held fixed."""
    chains = [params.replace(n_sites=n) for n in sizes]
    return [coherence_series(p, pair, times, reference) for p in chains]


def _nearest_odd(x: float) -> int:
    lo = 2 * math.floor((x - 1) / 2) + 1
    hi = lo + 2
    n = hi if hi - x <= x - lo else lo
    return max(n, 3)


def apply_scaling(params: ChainParams, t: float, rule: ScalingRule):
    """Map ``(params, t)`` through t -> m t, delta -> delta/m, g -> g/m, gamma/N -> gamma/(m N).

    ``delta = 1 - lambda`` is the distance to the critical field. In scale-N
    mode the chain length becomes the odd integer nearest ``m N`` (ties go
    up); in scale-gamma mode the anisotropy is divided by ``m`` instead.
    """
    m = rule.m
    lam = CRITICAL_FIELD - (CRITICAL_FIELD - params.lam) / m
    if m == 1:
        new = params
    elif rule.mode is ScalingMode.SCALE_N:
        new = params.replace(n_sites=_nearest_odd(m * params.n_sites), lam=lam, g=params.g / m)
    else:
        new = params.replace(gamma=params.gamma / m, lam=lam, g=params.g / m)
    return new, m * t


def scaling_residual(
    params: ChainParams, pair, rule: ScalingRule, times, reference: str = "polarized"
) -> float:
    """Largest deviation between the original curve and the rescaled one."""
    times = np.asarray(times, dtype=float)
    scaled, _ = apply_scaling(params, 0.0, rule)
    base = coherence_curve(params, pair, times, reference)
    other = coherence_curve(scaled, pair, rule.m * times, reference)
    return float(np.max(np.abs(base - other))) if times.size else 0.0


def time_grid(stop: float, step: float, start: float = 0.0) -> np.ndarray:
    """Uniform grid ``start, start+step, ..., stop`` with the end point included."""
    if step <= 0:
        raise ValueError("step must be positive")
    if stop < start:
        raise ValueError("stop must not be below start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)


def default_time_step(params: ChainParams, points_per_period: int = 10) -> float:
    """Step resolving the fastest mode frequency with ``points_per_period`` samples."""
    top = abs(params.lam) + 1.5 * abs(params.g) + 1.0
    fastest = 2.0 * 2.0 * math.hypot(top, params.gamma)
    return 2.0 * math.pi / fastest / points_per_period


def curve_minimum(
    params: ChainParams,
    pair,
    t_max: float,
    step: float = 0.002,
    reference: str = "polarized",
    candidates: int = 8,
) -> tuple[float, float]:
    """Smallest |F| on ``[0, t_max]`` as ``(t, value)``.

    A dense grid locates the deepest local minima; the ``candidates`` lowest
    are polished with a bounded scalar search one grid step either side.
    """
    times = time_grid(t_max, step)
    values = coherence_curve(params, pair, times, reference)
    best = int(np.argmin(values))
    t_best, f_best = float(times[best]), float(values[best])
    inner = np.flatnonzero((values[1:-1] <= values[:-2]) & (values[1:-1] <= values[2:])) + 1
    for i in inner[np.argsort(values[inner])][:candidates]:
        lo, hi = times[i] - step, times[i] + step
        res = minimize_scalar(
            lambda t: coherence_curve(params, pair, np.array([t]), reference)[0],
            bounds=(lo, hi), method="bounded", options={"xatol": 1e-10},
        )
        if res.fun < f_best:
            t_best, f_best = float(res.x), float(res.fun)
    return t_best, f_best
