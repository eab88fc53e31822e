"""Quantum steering ellipsoid of a two-qubit state.

Measuring one qubit (the steering party) collapses the other onto a set of
Bloch vectors that forms an ellipsoid inside the Bloch ball.  This module
computes its center, orientation matrix, semiaxes and normalized volume,
plus the local-filtering canonical form that sets the steering party's
Bloch vector to zero without moving the ellipsoid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import (
    DEFAULT_TOL,
    PauliDecomposition,
    QuantumState,
    StateLike,
    StateValidationError,
    _bloch_arr,
    _density,
    _partial_trace_arr,
    _spin_corr_arr,
)

__all__ = [
    "DEGENERACY_THRESHOLD",
    "DegenerateMarginalError",
    "ZeroProbabilityError",
    "PovmElement",
    "SteeringEllipsoid",
    "canonical_form",
    "steering_ellipsoid",
    "normalized_volume",
    "steered_point",
]

#: A steering marginal with 1 - |a|^2 at or below this is treated as pure.
DEGENERACY_THRESHOLD = 1e-12

# Eigenvalues of 2*rho_A below this are floored before the inverse square
# root, keeping the filter stable for near-degenerate marginals.
_EIG_FLOOR = 1e-14


class DegenerateMarginalError(ValueError):
    """The steering qubit is pure, so the canonical form does not exist."""


class ZeroProbabilityError(ValueError):
    """The POVM element occurs with probability <= 0 on this state."""


@dataclass(frozen=True)
class PovmElement:
    """POVM element e0 (1 + e.sigma); requires e0 >= 0 and |e| <= 1."""

    e0: float
    e: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.e, dtype=float).reshape(3)
        object.__setattr__(self, "e", e)
        e.setflags(write=False)
        if self.e0 < 0:
            raise ValueError(f"e0 must be nonnegative, got {self.e0}")
        if np.linalg.norm(e) > 1 + DEFAULT_TOL:
            raise ValueError(f"|e| = {np.linalg.norm(e)} exceeds 1")


@dataclass(frozen=True)
class SteeringEllipsoid:
    """Center, orientation matrix Q, semiaxes (descending) and normalized volume.

    ``degenerate`` marks the point ellipsoid returned when the steering
    party's marginal is pure.
    """

    center: np.ndarray
    orientation: np.ndarray
    semiaxes: np.ndarray
    normalized_volume: float
    degenerate: bool

    def __post_init__(self):
        for arr in (self.center, self.orientation, self.semiaxes):
            arr.setflags(write=False)

    def to_dict(self) -> dict:
        return {
            "center": [float(x) for x in self.center],
            "Q": [[float(x) for x in row] for row in self.orientation],
            "semiaxes": [float(x) for x in self.semiaxes],
            "volume": float(self.normalized_volume),
            "degenerate": bool(self.degenerate),
        }


def _steering_abT(mat: np.ndarray, n: int, steering_qubit: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(a, b, T) with the steering qubit in the Alice slot of a 2-qubit matrix."""
    if n != 2:
        raise StateValidationError(f"expected a two-qubit state, got {n} qubits")
    if steering_qubit not in (0, 1):
        raise StateValidationError(f"steering_qubit must be 0 or 1, got {steering_qubit}")
    a = _bloch_arr(_partial_trace_arr(mat, [steering_qubit], 2))
    b = _bloch_arr(_partial_trace_arr(mat, [1 - steering_qubit], 2))
    T = _spin_corr_arr(mat)
    if steering_qubit == 1:
        T = T.T
    return a, b, T


def _volume_from_abT(a: np.ndarray, b: np.ndarray, T: np.ndarray) -> float:
    gamma = 1.0 - float(a @ a)
    if gamma <= DEGENERACY_THRESHOLD:
        return 0.0
    return float(abs(np.linalg.det(T - np.outer(a, b))) / gamma**2)


def canonical_form(rho: StateLike, steering_qubit: int = 0) -> QuantumState:
    """Local filter [(2 rho_A)^(-1/2) (x) 1] rho [(2 rho_A)^(-1/2) (x) 1].

    The filtered state has a maximally mixed marginal on the steering qubit
    and the same steering ellipsoid for every other party.  Works for any
    qubit count; ``steering_qubit`` selects the filtered tensor slot.

    Raises
    ------
    DegenerateMarginalError
        If the steering qubit's marginal is pure (1 - |a|^2 <= 1e-12).
    """
    mat, n = _density(rho)
    if steering_qubit < 0 or steering_qubit >= n:
        raise StateValidationError(f"steering_qubit {steering_qubit} out of range for {n} qubits")
    marginal = _partial_trace_arr(mat, [steering_qubit], n)
    a = _bloch_arr(marginal)
    if 1.0 - float(a @ a) <= DEGENERACY_THRESHOLD:
        raise DegenerateMarginalError(
            f"steering qubit {steering_qubit} has a pure marginal (|a| = {np.linalg.norm(a):.12g})"
        )
    vals, vecs = np.linalg.eigh(2.0 * marginal)
    inv_sqrt = (vecs * (1.0 / np.sqrt(np.maximum(vals, _EIG_FLOOR)))) @ vecs.conj().T
    filt = np.kron(
        np.kron(np.eye(2**steering_qubit), inv_sqrt),
        np.eye(2 ** (n - steering_qubit - 1)),
    )
    out = filt @ mat @ filt
    out = (out + out.conj().T) / 2.0
    return QuantumState(n, out)


def steering_ellipsoid(rho: StateLike, steering_qubit: int = 0) -> SteeringEllipsoid:
    """Ellipsoid of the steered qubit under all measurements on ``steering_qubit``.

    ``steering_qubit=0`` gives the ellipsoid of qubit 1 steered by qubit 0
    (B given A); ``steering_qubit=1`` swaps the roles.  A pure steering
    marginal factorizes the state and collapses the ellipsoid to the single
    point at the steered qubit's Bloch vector.
    """
    mat, n = _density(rho)
    a, b, T = _steering_abT(mat, n, steering_qubit)
    gamma = 1.0 - float(a @ a)
    if gamma <= DEGENERACY_THRESHOLD:
        return SteeringEllipsoid(
            center=b.copy(),
            orientation=np.zeros((3, 3)),
            semiaxes=np.zeros(3),
            normalized_volume=0.0,
            degenerate=True,
        )
    shifted = T - np.outer(a, b)
    center = (b - T.T @ a) / gamma
    q = shifted.T @ (np.eye(3) + np.outer(a, a) / gamma) @ shifted / gamma
    q = (q + q.T) / 2.0
    eigvals = np.clip(np.linalg.eigvalsh(q), 0.0, None)
    semiaxes = np.sqrt(eigvals)[::-1].copy()
    return SteeringEllipsoid(
        center=center,
        orientation=q,
        semiaxes=semiaxes,
        normalized_volume=_volume_from_abT(a, b, T),
        degenerate=False,
    )


def normalized_volume(rho: StateLike, steering_qubit: int = 0) -> float:
    """Ellipsoid volume over the Bloch-ball volume: |det(T - a b^T)| / (1 - a^2)^2.

    Returns 0 for a pure steering marginal.  Equals |det T| of the
    canonical form whenever the latter exists.
    """
    mat, n = _density(rho)
    a, b, T = _steering_abT(mat, n, steering_qubit)
    return _volume_from_abT(a, b, T)


def steered_point(decomp: PauliDecomposition, element: PovmElement) -> np.ndarray:
    """Bloch vector (b + T^t e) / (1 + a.e) of the steered qubit after outcome ``element``."""
    denom = 1.0 + float(decomp.a @ element.e)
    if denom <= 0:
        raise ZeroProbabilityError(f"POVM element has outcome probability factor {denom:.3g} <= 0")
    return (decomp.b + decomp.T.T @ element.e) / denom
