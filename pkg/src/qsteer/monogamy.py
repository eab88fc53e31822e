"""Volume monogamy relations, entanglement measures and reference state families.

Everything here reports raw left-hand sides or residuals; no bound is
enforced at computation time.  The bounds themselves (sqrt-volume sum <= 1
for pure 3-qubit states, 2/3-power sums, the concurrence and CKW
inequalities, ...) are exercised by the experiments module and the test
suite.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from .ellipsoid import _steering_abT, _volume_from_abT
from .states import (
    DEFAULT_TOL,
    PAULIS,
    QuantumState,
    StateLike,
    StateValidationError,
    _bloch_arr,
    _density,
    _partial_trace_arr,
    _spin_corr_arr,
)

__all__ = [
    "MonogamyReport",
    "SloccClass",
    "volume_monogamy_report",
    "pairwise_correlation_sum",
    "purity_identity_residuals_3q",
    "purity_identity_residuals_4q",
    "l_bcd",
    "polygon_residual",
    "concurrence",
    "concurrence_volume_residual",
    "ckw_residual",
    "three_tangle",
    "slocc_classify",
    "w_state",
    "ghz_state",
    "w_family",
    "ghz_family",
    "max_volume_state",
    "singlet_state",
    "werner_state",
    "counterexample_state",
    "purified_counterexample",
]

# Marginal eigenvalues below this count as rank deficiency, and 3-tangles
# below it count as zero, when assigning SLOCC classes.
RANK_TOL = 1e-9
TANGLE_TOL = 1e-9


@dataclass(frozen=True)
class MonogamyReport:
    """Normalized ellipsoid volumes steered from one hub qubit, plus aggregates.

    ``volumes`` is ordered by ascending steered-qubit index; ``sqrt_lhs`` and
    ``two_thirds_lhs`` are the sums of sqrt(v) and v**(2/3); ``n_bound`` is
    the general (n-1)/2 bound for the 2/3-power sum.
    """

    hub: int
    volumes: tuple[float, ...]
    sqrt_lhs: float
    two_thirds_lhs: float
    n_bound: float
    mean_volume: float

    def to_dict(self) -> dict:
        return {
            "hub": self.hub,
            "volumes": list(self.volumes),
            "sqrt_lhs": self.sqrt_lhs,
            "two_thirds_lhs": self.two_thirds_lhs,
            "n_bound": self.n_bound,
            "mean_volume": self.mean_volume,
        }


class SloccClass(enum.Enum):
    """The six entanglement classes of pure 3-qubit states under SLOCC."""

    FULLY_PRODUCT = "FullyProduct"
    BIPARTITE_A_BC = "Bipartite_A_BC"
    BIPARTITE_AB_C = "Bipartite_AB_C"
    BIPARTITE_AC_B = "Bipartite_AC_B"
    W_CLASS = "WClass"
    GHZ_CLASS = "GHZClass"


def _hub_volumes(mat: np.ndarray, n: int, hub: int) -> list[float]:
    volumes = []
    for other in range(n):
        if other == hub:
            continue
        reduced = _partial_trace_arr(mat, [hub, other], n)
        volumes.append(_volume_from_abT(*_steering_abT(reduced, 2, 0)))
    return volumes


def volume_monogamy_report(rho: StateLike, hub: int = 0) -> MonogamyReport:
    """Per-party normalized volumes v_{X|hub} and their aggregate left-hand sides."""
    mat, n = _density(rho)
    if n < 3:
        raise StateValidationError(f"monogamy report needs at least 3 qubits, got {n}")
    if hub < 0 or hub >= n:
        raise StateValidationError(f"hub {hub} out of range for {n} qubits")
    volumes = _hub_volumes(mat, n, hub)
    return MonogamyReport(
        hub=hub,
        volumes=tuple(volumes),
        sqrt_lhs=float(sum(math.sqrt(v) for v in volumes)),
        two_thirds_lhs=float(sum(v ** (2.0 / 3.0) for v in volumes)),
        n_bound=(n - 1) / 2.0,
        mean_volume=float(np.mean(volumes)),
    )


def _corr_strength(mat: np.ndarray, n: int, pair: Sequence[int]) -> float:
    """Tr[T^t T] of the reduced two-qubit state on ``pair``."""
    T = _spin_corr_arr(_partial_trace_arr(mat, list(pair), n))
    return float(np.sum(T * T))


def pairwise_correlation_sum(rho: StateLike, pairs: Sequence[tuple[int, int]] | None = None) -> float:
    """Sum of Tr[T^t T] over reduced two-qubit states; all unordered pairs by default."""
    mat, n = _density(rho)
    if pairs is None:
        pairs = list(combinations(range(n), 2))
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise StateValidationError(f"invalid qubit pair ({i}, {j}) for {n} qubits")
    return float(sum(_corr_strength(mat, n, pair) for pair in pairs))


def _pure_density(state: StateLike, n_expected: int | None = None) -> tuple[np.ndarray, int]:
    mat, n = _density(state)
    if n_expected is not None and n != n_expected:
        raise StateValidationError(f"expected {n_expected} qubits, got {n}")
    pur = float(np.einsum("ij,ji->", mat, mat).real)
    if pur < 1.0 - DEFAULT_TOL:
        raise StateValidationError(f"expected a pure state, got purity {pur:.12g}")
    return mat, n


def _bloch_norms_sq(mat: np.ndarray, n: int) -> np.ndarray:
    out = np.empty(n)
    for q in range(n):
        a = _bloch_arr(_partial_trace_arr(mat, [q], n))
        out[q] = float(a @ a)
    return out


def purity_identity_residuals_3q(psi: StateLike) -> np.ndarray:
    """Residuals of Tr[T_XY^t T_XY] + x^2 + y^2 - 1 - 2 z^2 for the three pair choices.

    All three vanish for pure 3-qubit states (Schmidt purity matching across
    each bipartition).
    """
    mat, _ = _pure_density(psi, 3)
    a2, b2, c2 = _bloch_norms_sq(mat, 3)
    t_ab = _corr_strength(mat, 3, (0, 1))
    t_ac = _corr_strength(mat, 3, (0, 2))
    t_bc = _corr_strength(mat, 3, (1, 2))
    return np.array(
        [
            t_ab + a2 + b2 - 1.0 - 2.0 * c2,
            t_ac + a2 + c2 - 1.0 - 2.0 * b2,
            t_bc + b2 + c2 - 1.0 - 2.0 * a2,
        ]
    )


@lru_cache(maxsize=1)
def _three_pauli_stack() -> np.ndarray:
    """All 27 operators 1 (x) sigma_l (x) sigma_m (x) sigma_n, shape (27, 16, 16)."""
    ops = []
    for l in range(3):
        for m in range(3):
            for p in range(3):
                ops.append(np.kron(np.eye(2), np.kron(PAULIS[l], np.kron(PAULIS[m], PAULIS[p]))))
    return np.stack(ops)


def l_bcd(rho: StateLike) -> float:
    """Tripartite correlation strength of qubits 1..3 of a 4-qubit state.

    Sum over l, m, n in {x, y, z} of Tr[rho 1 (x) sigma_l (x) sigma_m (x)
    sigma_n] squared.
    """
    mat, n = _density(rho)
    if n != 4:
        raise StateValidationError(f"l_bcd expects a 4-qubit state, got {n}")
    coeffs = np.einsum("ab,kba->k", mat, _three_pauli_stack()).real
    return float(np.sum(coeffs**2))


def purity_identity_residuals_4q(psi: StateLike) -> np.ndarray:
    """Residuals of the three bipartition purity identities plus the hub one.

    The first three compare x^2 + y^2 + Tr[T_XY^t T_XY] across complementary
    pairs; the fourth balances the strength of all correlations among qubits
    1..3 (including the tripartite term) against 3 + 4 a^2.  All four vanish
    for pure 4-qubit states.
    """
    mat, _ = _pure_density(psi, 4)
    a2, b2, c2, d2 = _bloch_norms_sq(mat, 4)
    t = {pair: _corr_strength(mat, 4, pair) for pair in combinations(range(4), 2)}
    return np.array(
        [
            (a2 + b2 + t[(0, 1)]) - (c2 + d2 + t[(2, 3)]),
            (a2 + c2 + t[(0, 2)]) - (b2 + d2 + t[(1, 3)]),
            (a2 + d2 + t[(0, 3)]) - (b2 + c2 + t[(1, 2)]),
            b2 + c2 + d2 + t[(1, 2)] + t[(1, 3)] + t[(2, 3)] + l_bcd(mat) - 3.0 - 4.0 * a2,
        ]
    )


def polygon_residual(psi: StateLike) -> float:
    """1 + a - b - c for the marginal Bloch lengths of a pure 3-qubit state.

    Nonnegative for every pure 3-qubit state (the marginal-problem polygon
    constraint on qubit 0).
    """
    mat, _ = _pure_density(psi, 3)
    a, b, c = np.sqrt(_bloch_norms_sq(mat, 3))
    return float(1.0 + a - b - c)


_SPIN_FLIP = np.kron(PAULIS[1], PAULIS[1])

# Eigenvalues of rho rho_tilde below this fraction of the largest one are
# rank-deficiency noise; without the floor their square roots inject ~1e-8
# errors into the concurrence of rank-deficient states.
_WOOTTERS_FLOOR = 1e-12


def _wootters_lambdas(mat: np.ndarray, rank_cap: int | None = None) -> np.ndarray:
    flipped = _SPIN_FLIP @ mat.conj() @ _SPIN_FLIP
    mu = np.sort(np.linalg.eigvals(mat @ flipped).real)[::-1]
    if mu[0] <= 0.0:
        return np.zeros(4)
    mu = np.where(mu < mu[0] * _WOOTTERS_FLOOR, 0.0, mu)
    if rank_cap is not None:
        mu[rank_cap:] = 0.0
    return np.sqrt(mu)


def concurrence(rho: StateLike) -> float:
    """Wootters concurrence of a two-qubit state.

    Spin-flips the complex conjugate, takes the descending square roots
    lambda_i of the eigenvalues of rho rho_tilde, and returns
    max(0, lambda_1 - lambda_2 - lambda_3 - lambda_4).
    """
    mat, n = _density(rho)
    if n != 2:
        raise StateValidationError(f"concurrence expects two qubits, got {n}")
    lam = _wootters_lambdas(mat)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence_volume_residual(rho: StateLike, steering_qubit: int = 0) -> float:
    """(1 - a^2) sqrt(v) - C^2 for a two-qubit state; nonnegative for all states."""
    mat, n = _density(rho)
    a, b, T = _steering_abT(mat, n, steering_qubit)
    v = _volume_from_abT(a, b, T)
    c = concurrence(mat)
    return float((1.0 - a @ a) * math.sqrt(v) - c * c)


def ckw_residual(rho: StateLike, hub: int = 0) -> float:
    """4 det(rho_hub) - C^2(hub, X) - C^2(hub, Y) for a 3-qubit state; nonnegative."""
    mat, n = _density(rho)
    if n != 3:
        raise StateValidationError(f"ckw_residual expects three qubits, got {n}")
    if hub not in (0, 1, 2):
        raise StateValidationError(f"hub must be 0, 1 or 2, got {hub}")
    others = [q for q in range(3) if q != hub]
    det_a = float(np.linalg.det(_partial_trace_arr(mat, [hub], 3)).real)
    total = 4.0 * det_a
    for other in others:
        total -= concurrence(_partial_trace_arr(mat, [hub, other], 3)) ** 2
    return total


def three_tangle(psi: StateLike) -> float:
    """Residual tripartite entanglement 4 det(rho_A) - C^2_AB - C^2_AC of a pure 3-qubit state.

    Zero exactly on the W class, positive on the GHZ class, 1 for the GHZ
    state itself.  The reductions of a pure 3-qubit state have rank at most
    2, so the two structurally zero spin-flip eigenvalues are dropped
    outright; this keeps the tangle of W-class states at machine-level zero
    instead of eigensolver noise.
    """
    mat, _ = _pure_density(psi, 3)
    det_a = float(np.linalg.det(_partial_trace_arr(mat, [0], 3)).real)
    total = 4.0 * det_a
    for other in (1, 2):
        lam = _wootters_lambdas(_partial_trace_arr(mat, [0, other], 3), rank_cap=2)
        total -= max(0.0, lam[0] - lam[1]) ** 2
    return total


def slocc_classify(psi: StateLike) -> SloccClass:
    """SLOCC class of a pure 3-qubit state via marginal ranks and the 3-tangle.

    A marginal eigenvalue below 1e-9 counts as rank 1 (that qubit factors
    out); with no factoring qubit the 3-tangle separates the W class (tangle
    ~ 0) from the GHZ class.
    """
    mat, _ = _pure_density(psi, 3)
    pure_marginals = []
    for q in range(3):
        eigs = np.linalg.eigvalsh(_partial_trace_arr(mat, [q], 3))
        pure_marginals.append(eigs[0] < RANK_TOL)
    count = sum(pure_marginals)
    # Two pure marginals force the third for a pure state, so >= 2 means
    # fully product up to numerical noise.
    if count >= 2:
        return SloccClass.FULLY_PRODUCT
    if count == 1:
        if pure_marginals[0]:
            return SloccClass.BIPARTITE_A_BC
        if pure_marginals[1]:
            return SloccClass.BIPARTITE_AC_B
        return SloccClass.BIPARTITE_AB_C
    if three_tangle(mat) <= TANGLE_TOL:
        return SloccClass.W_CLASS
    return SloccClass.GHZ_CLASS


# --- reference state families -------------------------------------------------


def _ket(n_qubits: int, amplitudes: dict[int, complex]) -> QuantumState:
    vec = np.zeros(2**n_qubits, dtype=complex)
    for idx, amp in amplitudes.items():
        vec[idx] = amp
    return QuantumState(n_qubits, vec)


def w_state() -> QuantumState:
    """(|100> + |010> + |001>) / sqrt(3)."""
    s = 1.0 / math.sqrt(3.0)
    return _ket(3, {4: s, 2: s, 1: s})


def ghz_state(n_qubits: int = 3) -> QuantumState:
    """(|0...0> + |1...1>) / sqrt(2)."""
    if n_qubits < 2:
        raise StateValidationError("ghz_state needs at least 2 qubits")
    s = 1.0 / math.sqrt(2.0)
    return _ket(n_qubits, {0: s, 2**n_qubits - 1: s})


def w_family(p: float) -> QuantumState:
    """p |100> + sqrt((1-p^2)/2) (|010> + |001>), p in (0, 1).

    A one-parameter family of W-class states, symmetric in qubits 1 and 2;
    every member saturates the sqrt-volume monogamy bound.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    s = math.sqrt((1.0 - p * p) / 2.0)
    return _ket(3, {4: p, 2: s, 1: s})


def ghz_family(alpha: float, beta: float) -> tuple[QuantumState, tuple[float, float]]:
    """Two-parameter GHZ-class family plus its predicted volume coordinates.

    Returns the state (sin(a)|100> + sin(b)|010> + cos(b)|001> +
    cos(a)|111>) / sqrt(2) for a, b in (0, pi/2), together with the
    predicted pair (v_{B|A}, v_{C|A}) = ((cos 2a + cos 2b)^2 / 4,
    (cos 2a - cos 2b)^2 / 4).
    """
    if not 0.0 < alpha < math.pi / 2.0:
        raise ValueError(f"alpha must lie in (0, pi/2), got {alpha}")
    if not 0.0 < beta < math.pi / 2.0:
        raise ValueError(f"beta must lie in (0, pi/2), got {beta}")
    s = 1.0 / math.sqrt(2.0)
    state = _ket(
        3,
        {
            4: math.sin(alpha) * s,
            2: math.sin(beta) * s,
            1: math.cos(beta) * s,
            7: math.cos(alpha) * s,
        },
    )
    ca, cb = math.cos(2.0 * alpha), math.cos(2.0 * beta)
    return state, ((ca + cb) ** 2 / 4.0, (ca - cb) ** 2 / 4.0)


def max_volume_state(theta: float) -> QuantumState:
    """(|100> + cos(t)|010> + sin(t)|001>) / sqrt(2), t in [0, pi/2].

    Canonical form of the states saturating the sqrt-volume monogamy bound;
    W class for interior t, bipartite at the endpoints.
    """
    if not 0.0 <= theta <= math.pi / 2.0:
        raise ValueError(f"theta must lie in [0, pi/2], got {theta}")
    s = 1.0 / math.sqrt(2.0)
    return _ket(3, {4: s, 2: math.cos(theta) * s, 1: math.sin(theta) * s})


def singlet_state() -> QuantumState:
    """(|01> - |10>) / sqrt(2)."""
    s = 1.0 / math.sqrt(2.0)
    return _ket(2, {1: s, 2: -s})


def werner_state() -> QuantumState:
    """(2/3) |psi-><psi-| + (1/3) 1/4: the two-qubit reduction of the counterexample.

    Its steering ellipsoid is the centered sphere of radius 2/3.
    """
    proj = singlet_state().matrix
    return QuantumState(2, (2.0 / 3.0) * proj + (1.0 / 3.0) * np.eye(4) / 4.0)


def counterexample_state() -> QuantumState:
    """Mixed 3-qubit state whose sqrt-volume sum from qubit 0 exceeds 1.

    An equal mixture of (|101> - 2|011> + |110>)/sqrt(6) and (|010> -
    2|100> + |001>)/sqrt(6); both two-qubit reductions from qubit 0 are the
    same Werner state, so sqrt(v) + sqrt(v) = 2 sqrt(8/27) ~ 1.0887.
    """
    s = 1.0 / math.sqrt(6.0)
    chi1 = _ket(3, {5: s, 3: -2.0 * s, 6: s})
    chi2 = _ket(3, {2: s, 4: -2.0 * s, 1: s})
    return QuantumState(3, 0.5 * (chi1.matrix + chi2.matrix))


def purified_counterexample() -> QuantumState:
    """Pure 4-qubit purification of :func:`counterexample_state`.

    Appends a flag qubit entangled with the two mixture branches; shows the
    sqrt-volume bound fails for pure states of four or more qubits.
    """
    s = 1.0 / math.sqrt(12.0)
    return _ket(4, {10: s, 6: -2.0 * s, 12: s, 5: s, 9: -2.0 * s, 3: s})
