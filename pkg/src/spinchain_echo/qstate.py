"""Reduced density matrix of the three central qubits and entanglement measures.

Matrices are stored in the fixed basis ``|1> ... |8>`` of
:data:`spinchain_echo.spectrum.BASIS_LABELS`. Partial traces and partial
transposes go through the computational product order (``+`` -> 0,
``-`` -> 1, qubits ordered A, B, C).
"""
from __future__ import annotations

import itertools
import warnings
from typing import Iterable

import numpy as np

from .coherence import coherence_curve
from .spectrum import BASIS_LABELS, ChainParams, dressed_fields

__all__ = [
    "QUBITS",
    "PSDWarning",
    "central_state",
    "preset_state",
    "coherence_matrix",
    "evolve_reduced",
    "partial_trace",
    "partial_transpose",
    "npt_negativity",
    "fidelity_with_pure",
    "von_neumann_entropy",
    "concurrence",
    "to_product_basis",
    "from_product_basis",
]

QUBITS = "ABC"
EIG_FLOOR = 1e-10


class PSDWarning(UserWarning):
    """Raised (as a warning) when the damped density matrix is not positive."""

    def __init__(self, min_eigenvalue: float):
        super().__init__(f"density matrix has eigenvalue {min_eigenvalue:.3e} < -{EIG_FLOOR:g}")
        self.min_eigenvalue = min_eigenvalue


def _product_index(label: str) -> int:
    return int("".join("0" if s == "+" else "1" for s in label), 2)


# _PERM[j] = product-basis index of basis state |j+1>
_PERM = np.array([_product_index(label) for label in BASIS_LABELS])


def to_product_basis(rho: np.ndarray) -> np.ndarray:
    out = np.empty_like(rho)
    out[np.ix_(_PERM, _PERM)] = rho
    return out


def from_product_basis(rho: np.ndarray) -> np.ndarray:
    return rho[np.ix_(_PERM, _PERM)]


def central_state(amplitudes, atol: float = 1e-9) -> np.ndarray:
    """Validate 8 amplitudes ``c_j`` over the ``|1> ... |8>`` basis."""
    c = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if c.shape != (8,):
        raise ValueError(f"expected 8 amplitudes, got {c.size}")
    norm = float(np.vdot(c, c).real)
    if abs(norm - 1.0) > atol:
        raise ValueError(f"amplitudes are not normalized (norm^2 = {norm!r})")
    return c


def preset_state(name: str) -> np.ndarray:
    """Named initial states: ``ghz`` = (|+++> + |--->)/sqrt2, ``w`` = (|++-> + |+-+> + |-++>)/sqrt3."""
    c = np.zeros(8, dtype=complex)
    if name == "ghz":
        c[[0, 1]] = 1 / np.sqrt(2)
    elif name == "w":
        c[[2, 3, 4]] = 1 / np.sqrt(3)
    else:
        raise ValueError(f"unknown preset {name!r}; choose 'ghz' or 'w'")
    return c


def coherence_matrix(params: ChainParams, t: float, reference: str = "polarized") -> np.ndarray:
    """Real symmetric 8x8 matrix of |F| for every pair of basis states.

    Only the four distinct dressed fields matter, so at most six curves are
    evaluated and then broadcast.
    """
    fields = dressed_fields(params.lam, params.g)
    # representatives for lambda+3g/2, lambda-3g/2, lambda+g/2, lambda-g/2
    reps = (1, 2, 3, 6)
    group = {1: 0, 2: 1, 3: 2, 4: 2, 5: 2, 6: 3, 7: 3, 8: 3}
    values = np.ones((4, 4))
    for a, b in itertools.combinations(range(4), 2):
        if fields[reps[a] - 1] == fields[reps[b] - 1]:
            continue
        f = coherence_curve(params, (reps[a], reps[b]), np.array([t]), reference)[0]
        values[a, b] = values[b, a] = f
    idx = np.array([group[j] for j in range(1, 9)])
    return values[np.ix_(idx, idx)]


def evolve_reduced(state, f: np.ndarray) -> np.ndarray:
    """``rho_jj' = c_j conj(c_j') f_jj'``; warns with :class:`PSDWarning` if not positive."""
    c = central_state(state)
    f = np.asarray(f, dtype=float)
    if f.shape != (8, 8):
        raise ValueError("coherence matrix must be 8x8")
    rho = np.outer(c, c.conj()) * f
    np.fill_diagonal(rho, np.abs(c) ** 2)
    lowest = float(np.linalg.eigvalsh(rho)[0])
    if lowest < -EIG_FLOOR:
        warnings.warn(PSDWarning(lowest), stacklevel=2)
    return rho


def _qubit_positions(qubits) -> list[int]:
    names = list(qubits)
    if any(q not in QUBITS for q in names) or len(set(names)) != len(names):
        raise ValueError(f"qubits must be distinct letters from {QUBITS!r}, got {qubits!r}")
    return sorted(QUBITS.index(q) for q in names)


def _n_qubits(rho: np.ndarray) -> int:
    n = int(round(np.log2(rho.shape[0])))
    if rho.shape != (2**n, 2**n):
        raise ValueError(f"not a qubit density matrix: shape {rho.shape}")
    return n


def partial_trace(rho: np.ndarray, keep: Iterable[str]) -> np.ndarray:
    """Reduce the 8x8 state to the qubits in ``keep``.

    Keeping all three qubits returns ``rho`` unchanged (``|1>...|8>`` order);
    smaller results are in product order, e.g. ``|++>, |+->, |-+>, |-->``.
    """
    kept = _qubit_positions(keep)
    if not kept:
        raise ValueError("keep must name at least one qubit")
    if len(kept) == 3:
        return np.array(rho, copy=True)
    t = to_product_basis(np.asarray(rho)).reshape([2] * 6)
    traced = [p for p in range(3) if p not in kept]
    # trace the highest axis first so earlier indices stay valid
    for p in sorted(traced, reverse=True):
        n_left = t.ndim // 2
        t = np.trace(t, axis1=p, axis2=p + n_left)
    dim = 2 ** len(kept)
    return t.reshape(dim, dim)


def partial_transpose(rho: np.ndarray, qubits) -> np.ndarray:
    """Transpose the listed qubits of an 8x8 state; result in ``|1>...|8>`` order."""
    pos = _qubit_positions(qubits)
    t = to_product_basis(np.asarray(rho)).reshape([2] * 6)
    axes = list(range(6))
    for p in pos:
        axes[p], axes[p + 3] = axes[p + 3], axes[p]
    return from_product_basis(t.transpose(axes).reshape(8, 8))


def _clean_eigenvalues(values: np.ndarray) -> np.ndarray:
    if values.min() < -EIG_FLOOR:
        raise ValueError(f"matrix is not positive semidefinite (eigenvalue {values.min():.3e})")
    return np.clip(values, 0.0, None)


def npt_negativity(rho: np.ndarray, partition="A") -> float:
    """Twice the magnitude of the negative spectrum of the partial transpose.

    ``partition`` names the transposed qubits, e.g. ``"A"`` or ``"BC"``; it
    must be a non-empty proper subset of ``"ABC"``.
    """
    if len(_qubit_positions(partition)) not in (1, 2):
        raise ValueError("partition must be a non-empty proper subset of 'ABC'")
    values = np.linalg.eigvalsh(partial_transpose(rho, partition))
    return float(-2.0 * values[values < 0].sum())


def fidelity_with_pure(rho: np.ndarray, phi) -> float:
    """``sqrt(<phi|rho|phi>)``."""
    phi = central_state(phi)
    overlap = np.vdot(phi, rho @ phi).real
    return float(np.sqrt(min(max(overlap, 0.0), 1.0)))


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy in bits; eigenvalues in [-1e-10, 0) are treated as zero."""
    p = _clean_eigenvalues(np.linalg.eigvalsh(rho))
    p = p[p > 0]
    return float(max(-(p * np.log2(p)).sum(), 0.0))


_SYSY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


def concurrence(rho2: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit state (product order)."""
    rho2 = np.asarray(rho2, dtype=complex)
    if _n_qubits(rho2) != 2:
        raise ValueError("concurrence needs a 4x4 two-qubit density matrix")
    rho_tilde = _SYSY @ rho2.conj() @ _SYSY
    ev = np.linalg.eigvals(rho2 @ rho_tilde).real
    roots = np.sort(np.sqrt(np.clip(ev, 0.0, None)))[::-1]
    return float(max(0.0, roots[0] - roots[1:].sum()))
