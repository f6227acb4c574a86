"""Momentum grid, dressed fields and Bogoliubov kinematics of the XY chain.

The chain Hamiltonian conditioned on central-qubit basis state ``|j>`` is the
XY chain with the transverse field replaced by a dressed value ``lambda_j``.
Every momentum pair ``(k, -k)`` with ``k = 1..(N-1)/2`` then contributes a
quasiparticle with energy ``Omega_k`` and a Bogoliubov angle ``theta_k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "BASIS_LABELS",
    "ChainParams",
    "ModeData",
    "momentum_grid",
    "shifted_lambda",
    "dressed_fields",
    "mode_data",
    "mode_arrays",
]

#: Central-qubit basis in the fixed ordering used everywhere (|1> ... |8>).
BASIS_LABELS = ("+++", "---", "++-", "+-+", "-++", "+--", "-+-", "--+")

# lambda_j = lambda + (g/2) * (sum of sigma^z over A, B, C)
_SPIN_SUM = tuple(sum(1 if s == "+" else -1 for s in label) for label in BASIS_LABELS)


@dataclass(frozen=True)
class ChainParams:
    """Physical parameters of the chain and its coupling to the central qubits.

    Attributes
    ----------
    n_sites : int
        Chain length N. Must be odd and at least 3.
    gamma : float
        In-plane anisotropy (1 is the Ising chain, 0 the XX chain).
    lam : float
        Transverse field. The critical point sits at ``lam = 1``.
    g : float
        Coupling between the central qubits and the chain.
    """

    n_sites: int
    gamma: float
    lam: float
    g: float

    def __post_init__(self):
        n = self.n_sites
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
            raise TypeError(f"n_sites must be an integer, got {n!r}")
        if n < 3 or n % 2 == 0:
            raise ValueError(f"n_sites must be odd and >= 3, got {n}")
        object.__setattr__(self, "n_sites", int(n))
        for name in ("gamma", "lam", "g"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)

    def replace(self, **changes) -> "ChainParams":
        fields = dict(n_sites=self.n_sites, gamma=self.gamma, lam=self.lam, g=self.g)
        fields.update(changes)
        return ChainParams(**fields)


@dataclass(frozen=True)
class ModeData:
    """Single-mode quantities for one dressed field."""

    k: int
    epsilon: float
    omega: float
    theta: float


def _check_basis_index(j) -> int:
    if isinstance(j, bool) or not isinstance(j, (int, np.integer)) or not 1 <= j <= 8:
        raise ValueError(f"basis index must be an integer in 1..8, got {j!r}")
    return int(j)


def momentum_grid(params: ChainParams) -> np.ndarray:
    """Positive momentum indices ``k = 1, ..., (N-1)/2``."""
    return np.arange(1, (params.n_sites - 1) // 2 + 1)


def shifted_lambda(lam: float, g: float, j: int) -> float:
    """Dressed transverse field seen by the chain when the qubits are in ``|j>``."""
    j = _check_basis_index(j)
    return lam + 0.5 * g * _SPIN_SUM[j - 1]


def dressed_fields(lam: float, g: float) -> np.ndarray:
    """All eight dressed fields, indexed 0..7 for ``j = 1..8``."""
    return lam + 0.5 * g * np.array(_SPIN_SUM, dtype=float)


@lru_cache(maxsize=64)
def _grid_trig(n_sites: int):
    q = 2.0 * np.pi * np.arange(1, (n_sites - 1) // 2 + 1) / n_sites
    cos_q, sin2_q = np.cos(q), np.sin(q) ** 2
    cos_q.flags.writeable = sin2_q.flags.writeable = False
    return cos_q, sin2_q


def mode_arrays(params: ChainParams, lambda_eff: float):
    """Vectorised ``(epsilon, omega, theta)`` over the full momentum grid."""
    cos_q, sin2_q = _grid_trig(params.n_sites)
    epsilon = lambda_eff - cos_q
    omega = 2.0 * np.sqrt(epsilon**2 + params.gamma**2 * sin2_q)
    # omega == 0 -> theta = 0 so the mode drops out of the product
    ratio = np.divide(2.0 * epsilon, omega, out=np.ones_like(epsilon), where=omega > 0)
    theta = np.arccos(np.maximum(np.minimum(ratio, 1.0), -1.0))
    return epsilon, omega, theta


def mode_data(params: ChainParams, lambda_eff: float, k: int) -> ModeData:
    """Dispersion and Bogoliubov angle of mode ``k`` at field ``lambda_eff``."""
    m = (params.n_sites - 1) // 2
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 1 <= k <= m:
        raise ValueError(f"k must be an integer in 1..{m}, got {k!r}")
    q = 2.0 * math.pi * k / params.n_sites
    epsilon = lambda_eff - math.cos(q)
    omega = 2.0 * math.sqrt(epsilon**2 + params.gamma**2 * math.sin(q) ** 2)
    theta = math.acos(max(-1.0, min(1.0, 2.0 * epsilon / omega))) if omega > 0 else 0.0
    return ModeData(k=int(k), epsilon=epsilon, omega=omega, theta=theta)
