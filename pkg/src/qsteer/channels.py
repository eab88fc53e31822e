"""Local CPTP noise channels in Kraus form and their effect on ellipsoid volumes."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ellipsoid import normalized_volume
from .states import (
    PAULIS,
    QuantumState,
    SeedLike,
    StateLike,
    StateValidationError,
    _density,
    _haar_unitary,
    as_rng,
)

__all__ = [
    "COMPLETENESS_TOL",
    "KrausChannel",
    "identity_channel",
    "isotropic_channel",
    "random_channel",
    "apply_local",
    "noisy_w_volume",
    "monotonicity_check",
]

COMPLETENESS_TOL = 1e-10


@dataclass(frozen=True)
class KrausChannel:
    """Single-qubit CPTP map as a tuple of 2x2 Kraus operators.

    Trace preservation (sum of K^dag K equal to the identity within 1e-10)
    is checked at construction.
    """

    operators: tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.operators)
        object.__setattr__(self, "operators", ops)
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        for k in ops:
            if k.shape != (2, 2):
                raise ValueError(f"Kraus operators must be 2x2, got shape {k.shape}")
            k.setflags(write=False)
        total = sum(k.conj().T @ k for k in ops)
        err = float(np.max(np.abs(total - np.eye(2))))
        if err > COMPLETENESS_TOL:
            raise ValueError(f"Kraus completeness violated: max |sum K^dag K - 1| = {err:.3g}")

    def apply(self, rho2: np.ndarray) -> np.ndarray:
        """Act on a single-qubit density matrix."""
        out = np.zeros((2, 2), dtype=complex)
        for k in self.operators:
            out += k @ rho2 @ k.conj().T
        return out

    def to_dict(self) -> dict:
        return {
            "kraus": [[[float(z.real), float(z.imag)] for z in k.reshape(-1)] for k in self.operators]
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "KrausChannel":
        try:
            blocks = payload["kraus"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"channel payload missing field: {exc}") from exc
        ops = []
        for block in blocks:
            flat = np.array([complex(re, im) for re, im in block], dtype=complex)
            if flat.size != 4:
                raise ValueError(f"Kraus block has {flat.size} entries, expected 4")
            ops.append(flat.reshape(2, 2))
        return cls(tuple(ops))


def identity_channel() -> KrausChannel:
    return KrausChannel((np.eye(2, dtype=complex),))


def isotropic_channel(epsilon: float) -> KrausChannel:
    """Depolarizing map rho -> (eps/2) 1 + (1 - eps) rho; Bloch vectors shrink by 1 - eps.

    Kraus form {sqrt(1 - 3 eps/4) 1, sqrt(eps/4) sigma_x, sqrt(eps/4)
    sigma_y, sqrt(eps/4) sigma_z}.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon}")
    ops = [math.sqrt(1.0 - 0.75 * epsilon) * np.eye(2, dtype=complex)]
    if epsilon > 0.0:
        ops.extend(math.sqrt(epsilon / 4.0) * PAULIS[j] for j in range(3))
    return KrausChannel(tuple(ops))


def random_channel(seed: SeedLike = None) -> KrausChannel:
    """Random CPTP qubit channel from a Haar-random 8x2 Stinespring isometry.

    The isometry's four 2x2 row blocks are the Kraus operators, so
    completeness holds by construction; covers all qubit channels with an
    environment of dimension 4.
    """
    rng = as_rng(seed)
    isometry = _haar_unitary(8, rng)[:, :2]
    return KrausChannel(tuple(isometry[2 * i : 2 * i + 2, :] for i in range(4)))


def apply_local(channels, rho: StateLike) -> QuantumState:
    """Apply one single-qubit channel per qubit: rho' = (phi_0 (x) ... (x) phi_{n-1})(rho)."""
    mat, n = _density(rho)
    channels = list(channels)
    if len(channels) != n:
        raise StateValidationError(f"need {n} channels for {n} qubits, got {len(channels)}")
    out = mat
    for q, channel in enumerate(channels):
        left = np.eye(2**q)
        right = np.eye(2 ** (n - q - 1))
        acc = np.zeros_like(out)
        for k in channel.operators:
            full = np.kron(np.kron(left, k), right)
            acc += full @ out @ full.conj().T
        out = acc
    return QuantumState(n, (out + out.conj().T) / 2.0)


def noisy_w_volume(p: float, epsilon: float) -> float:
    """Closed-form steered volume of the symmetric W-family state under isotropic noise.

    v' = 4 p^4 (1-p^2)^2 (1-eps)^6 / [1 - (1-eps)^2 (1-2p^2)^2]^2 for
    noise strength eps on every qubit; equals 1/4 for eps = 0.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon}")
    shrink = 1.0 - epsilon
    denom = 1.0 - shrink**2 * (1.0 - 2.0 * p * p) ** 2
    return 4.0 * p**4 * (1.0 - p * p) ** 2 * shrink**6 / denom**2


def monotonicity_check(rho: StateLike, channels, tol: float = 1e-9) -> tuple[float, float, bool]:
    """Volumes before/after local noise on a two-qubit state, and whether v' <= v + tol."""
    mat, n = _density(rho)
    if n != 2:
        raise StateValidationError(f"monotonicity_check expects two qubits, got {n}")
    v_before = normalized_volume(mat)
    v_after = normalized_volume(apply_local(channels, mat))
    return v_before, v_after, v_after <= v_before + tol
