"""Multi-qubit states as dense arrays: construction, reduction, Pauli extraction, sampling.

Qubit 0 is the leftmost tensor factor, so the computational basis index of
|abc> is a*4 + b*2 + c (big-endian).  All matrices are complex128 and
row-major.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "PAULIS",
    "StateValidationError",
    "QuantumState",
    "PauliDecomposition",
    "as_rng",
    "sample_rng",
    "ket_to_density",
    "partial_trace",
    "bloch_vector",
    "spin_correlation_matrix",
    "pauli_coefficient",
    "purity",
    "pauli_decomposition",
    "random_pure_state",
    "random_mixed_state",
    "random_separable_two_qubit",
]

DEFAULT_TOL = 1e-9

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

#: Pauli vector (sigma_1, sigma_2, sigma_3), shape (3, 2, 2).
PAULIS = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])

#: Identity plus Paulis, indexed 0..3, shape (4, 2, 2).
PAULIS_WITH_ID = np.concatenate([np.eye(2, dtype=complex)[None], PAULIS])

# Precomputed sigma_j (x) sigma_k stack, shape (3, 3, 4, 4); used by the
# two-qubit correlation extraction in hot Monte-Carlo loops.
_PAULI_PAIRS = np.einsum("jab,kcd->jkacbd", PAULIS, PAULIS).reshape(3, 3, 4, 4)

SeedLike = Union[int, Sequence[int], np.random.Generator, np.random.SeedSequence, None]


class StateValidationError(ValueError):
    """Raised when an array fails the quantum-state invariants."""


def as_rng(seed: SeedLike) -> np.random.Generator:
    """Coerce a seed (int, int sequence, SeedSequence or Generator) to a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_rng(master_seed: int, index: int) -> np.random.Generator:
    """Independent stream for one sample/worker, derived from (master_seed, index).

    Streams depend only on the pair, never on chunking, so parallel sweeps
    are reproducible for any worker count.
    """
    return np.random.default_rng([int(master_seed), int(index)])


def _check_n_qubits(dim: int) -> int:
    n = int(round(math.log2(dim)))
    if 2**n != dim or n < 1:
        raise StateValidationError(f"dimension {dim} is not 2**n for n >= 1")
    return n


@dataclass(frozen=True)
class QuantumState:
    """A pure amplitude vector or a density matrix over ``n_qubits`` qubits.

    Use :meth:`from_amplitudes` / :meth:`from_matrix` to validate input data;
    the bare constructor is reserved for values that are valid by
    construction (e.g. sampler output).
    """

    n_qubits: int
    data: np.ndarray

    def __post_init__(self):
        self.data.setflags(write=False)

    @property
    def is_pure(self) -> bool:
        return self.data.ndim == 1

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    @property
    def matrix(self) -> np.ndarray:
        """Density-matrix form (outer product for pure states)."""
        if self.is_pure:
            return np.outer(self.data, self.data.conj())
        return self.data

    @classmethod
    def from_amplitudes(cls, amplitudes, tol: float = DEFAULT_TOL) -> "QuantumState":
        vec = np.asarray(amplitudes, dtype=complex).reshape(-1).copy()
        n = _check_n_qubits(vec.size)
        norm_sq = float(np.vdot(vec, vec).real)
        if abs(norm_sq - 1.0) > tol:
            raise StateValidationError(f"amplitude vector has squared norm {norm_sq}, expected 1")
        return cls(n, vec)

    @classmethod
    def from_matrix(cls, matrix, tol: float = DEFAULT_TOL) -> "QuantumState":
        mat = np.asarray(matrix, dtype=complex).copy()
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise StateValidationError(f"expected a square matrix, got shape {mat.shape}")
        n = _check_n_qubits(mat.shape[0])
        herm_err = float(np.max(np.abs(mat - mat.conj().T)))
        if herm_err > tol:
            raise StateValidationError(f"matrix is not Hermitian (max deviation {herm_err:.3g})")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > tol:
            raise StateValidationError(f"matrix has trace {tr:.6g}, expected 1")
        min_eig = float(np.linalg.eigvalsh(mat)[0])
        if min_eig < -tol:
            raise StateValidationError(f"matrix is not positive semidefinite (min eigenvalue {min_eig:.3g})")
        return cls(n, mat)

    def to_dict(self) -> dict:
        """JSON form: {"n_qubits", "kind", "data": [[re, im], ...]} with row-major matrix entries."""
        flat = self.data.reshape(-1)
        return {
            "n_qubits": self.n_qubits,
            "kind": "pure" if self.is_pure else "mixed",
            "data": [[float(z.real), float(z.imag)] for z in flat],
        }

    @classmethod
    def from_dict(cls, payload: dict, tol: float = DEFAULT_TOL) -> "QuantumState":
        try:
            n = int(payload["n_qubits"])
            kind = payload["kind"]
            pairs = payload["data"]
        except (KeyError, TypeError) as exc:
            raise StateValidationError(f"state payload missing field: {exc}") from exc
        if kind not in ("pure", "mixed"):
            raise StateValidationError(f"unknown state kind {kind!r}")
        flat = np.array([complex(re, im) for re, im in pairs], dtype=complex)
        dim = 2**n
        if kind == "pure":
            if flat.size != dim:
                raise StateValidationError(f"pure state data has length {flat.size}, expected {dim}")
            return cls.from_amplitudes(flat, tol=tol)
        if flat.size != dim * dim:
            raise StateValidationError(f"mixed state data has length {flat.size}, expected {dim * dim}")
        return cls.from_matrix(flat.reshape(dim, dim), tol=tol)


StateLike = Union[QuantumState, np.ndarray]


def _density(state: StateLike) -> tuple[np.ndarray, int]:
    """Density matrix plus qubit count for a QuantumState, ket or matrix."""
    if isinstance(state, QuantumState):
        return state.matrix, state.n_qubits
    arr = np.asarray(state, dtype=complex)
    if arr.ndim == 1:
        n = _check_n_qubits(arr.size)
        return np.outer(arr, arr.conj()), n
    if arr.ndim == 2 and arr.shape[0] == arr.shape[1]:
        return arr, _check_n_qubits(arr.shape[0])
    raise StateValidationError(f"cannot interpret array of shape {arr.shape} as a state")


def ket_to_density(psi: StateLike, tol: float = DEFAULT_TOL) -> QuantumState:
    """Outer product |psi><psi| of a normalized amplitude vector."""
    if isinstance(psi, QuantumState):
        if not psi.is_pure:
            raise StateValidationError("ket_to_density expects an amplitude vector")
        vec, n = psi.data, psi.n_qubits
    else:
        vec = np.asarray(psi, dtype=complex).reshape(-1)
        n = _check_n_qubits(vec.size)
    norm_sq = float(np.vdot(vec, vec).real)
    if abs(norm_sq - 1.0) > tol:
        raise StateValidationError(f"amplitude vector has squared norm {norm_sq}, expected 1")
    return QuantumState(n, np.outer(vec, vec.conj()))


def _partial_trace_arr(mat: np.ndarray, keep: Sequence[int], n_qubits: int) -> np.ndarray:
    tensor = mat.reshape((2,) * (2 * n_qubits))
    row = list(range(n_qubits))
    col = list(range(n_qubits, 2 * n_qubits))
    for q in range(n_qubits):
        if q not in keep:
            col[q] = row[q]  # tying row/col axes traces that qubit out
    out_axes = [row[q] for q in keep] + [col[q] for q in keep]
    reduced = np.einsum(tensor, row + col, out_axes)
    d = 2 ** len(keep)
    return reduced.reshape(d, d)


def partial_trace(rho: StateLike, keep: Iterable[int]) -> QuantumState:
    """Reduced state on the qubits in ``keep``, in the order given.

    Parameters
    ----------
    rho : QuantumState or array
        State of n qubits (amplitudes or density matrix).
    keep : iterable of int
        Distinct qubit indices to retain; the output tensor order follows
        this list, so ``keep=[2, 0]`` puts qubit 2 first.
    """
    mat, n = _density(rho)
    keep = [int(q) for q in keep]
    if not keep:
        raise StateValidationError("keep list must not be empty")
    if len(set(keep)) != len(keep):
        raise StateValidationError(f"duplicate qubit indices in keep list {keep}")
    if any(q < 0 or q >= n for q in keep):
        raise StateValidationError(f"qubit index out of range in {keep} for {n} qubits")
    return QuantumState(len(keep), _partial_trace_arr(mat, keep, n))


def _bloch_arr(rho2: np.ndarray) -> np.ndarray:
    return np.einsum("jab,ba->j", PAULIS, rho2).real


def bloch_vector(rho: StateLike) -> np.ndarray:
    """Bloch vector (Tr[rho sigma_x], Tr[rho sigma_y], Tr[rho sigma_z]) of one qubit."""
    mat, n = _density(rho)
    if n != 1:
        raise StateValidationError(f"bloch_vector expects a single-qubit state, got {n} qubits")
    return _bloch_arr(mat)


def _spin_corr_arr(rho4: np.ndarray) -> np.ndarray:
    return np.einsum("jkab,ba->jk", _PAULI_PAIRS, rho4).real


def spin_correlation_matrix(rho: StateLike) -> np.ndarray:
    """Spin correlation matrix T_jk = Tr[rho sigma_j (x) sigma_k] of a two-qubit state."""
    mat, n = _density(rho)
    if n != 2:
        raise StateValidationError(f"spin_correlation_matrix expects two qubits, got {n}")
    return _spin_corr_arr(mat)


def pauli_coefficient(rho: StateLike, labels: Sequence[int]) -> float:
    """Expectation Tr[rho P_{l1} (x) ... (x) P_{ln}], label 0 meaning the identity.

    Labels 1, 2, 3 select sigma_x, sigma_y, sigma_z on the corresponding
    qubit.
    """
    mat, n = _density(rho)
    labels = [int(l) for l in labels]
    if len(labels) != n:
        raise StateValidationError(f"need {n} labels, got {len(labels)}")
    if any(l < 0 or l > 3 for l in labels):
        raise StateValidationError(f"pauli labels must be in 0..3, got {labels}")
    op = PAULIS_WITH_ID[labels[0]]
    for l in labels[1:]:
        op = np.kron(op, PAULIS_WITH_ID[l])
    return float(np.einsum("ab,ba->", mat, op).real)


def purity(rho: StateLike) -> float:
    """Tr[rho^2], between 2**-n (maximally mixed) and 1 (pure)."""
    mat, _ = _density(rho)
    return float(np.einsum("ij,ji->", mat, mat).real)


@dataclass(frozen=True)
class PauliDecomposition:
    """Bloch vectors and spin correlation matrix of a two-qubit state.

    Satisfies rho = (1/4) (1 + a.sigma (x) 1 + 1 (x) b.sigma + sum_jk T_jk
    sigma_j (x) sigma_k); see :meth:`reconstruct`.
    """

    a: np.ndarray
    b: np.ndarray
    T: np.ndarray

    def __post_init__(self):
        for arr in (self.a, self.b, self.T):
            arr.setflags(write=False)

    def reconstruct(self) -> np.ndarray:
        """Rebuild the 4x4 density matrix from (a, b, T)."""
        eye2 = np.eye(2, dtype=complex)
        mat = np.kron(eye2, eye2).astype(complex)
        mat += np.kron(np.einsum("j,jab->ab", self.a, PAULIS), eye2)
        mat += np.kron(eye2, np.einsum("k,kab->ab", self.b, PAULIS))
        mat += np.einsum("jk,jkab->ab", self.T, _PAULI_PAIRS)
        return mat / 4.0


def pauli_decomposition(rho: StateLike, tol: float = DEFAULT_TOL) -> PauliDecomposition:
    """Extract (a, b, T) of a two-qubit state, checking the physical ranges."""
    mat, n = _density(rho)
    if n != 2:
        raise StateValidationError(f"pauli_decomposition expects two qubits, got {n}")
    a = _bloch_arr(_partial_trace_arr(mat, [0], 2))
    b = _bloch_arr(_partial_trace_arr(mat, [1], 2))
    T = _spin_corr_arr(mat)
    if np.linalg.norm(a) > 1 + tol or np.linalg.norm(b) > 1 + tol:
        raise StateValidationError("Bloch vector norm exceeds 1")
    if np.max(np.abs(T)) > 1 + tol:
        raise StateValidationError("spin correlation entry outside [-1, 1]")
    return PauliDecomposition(a, b, T)


def _haar_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return vec / np.linalg.norm(vec)


def _haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """QR of a Ginibre matrix with the phase convention that makes it Haar."""
    ginibre = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(ginibre)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_pure_state(n_qubits: int, seed: SeedLike = None) -> QuantumState:
    """Haar-random pure state: normalized i.i.d. complex Gaussian amplitudes."""
    if n_qubits < 1:
        raise StateValidationError("n_qubits must be >= 1")
    rng = as_rng(seed)
    return QuantumState(n_qubits, _haar_vector(2**n_qubits, rng))


def random_mixed_state(n_qubits: int, ancilla_qubits: int | None = None, seed: SeedLike = None) -> QuantumState:
    """Induced-measure mixed state: trace an ancilla out of a Haar-random pure state.

    ``ancilla_qubits`` defaults to ``n_qubits`` (full-rank support);
    ``ancilla_qubits=0`` yields a pure projector.
    """
    if n_qubits < 1:
        raise StateValidationError("n_qubits must be >= 1")
    if ancilla_qubits is None:
        ancilla_qubits = n_qubits
    if ancilla_qubits < 0:
        raise StateValidationError("ancilla_qubits must be >= 0")
    rng = as_rng(seed)
    dim = 2**n_qubits
    vec = _haar_vector(dim * 2**ancilla_qubits, rng)
    # The ancilla occupies the trailing tensor factors, so the reduction is
    # a single matrix product on the reshaped amplitudes.
    block = vec.reshape(dim, -1)
    return QuantumState(n_qubits, block @ block.conj().T)


def random_separable_two_qubit(seed: SeedLike = None, max_terms: int = 4) -> QuantumState:
    """Convex mixture of up to ``max_terms`` random pure product states; separable by construction."""
    rng = as_rng(seed)
    terms = int(rng.integers(1, max_terms + 1))
    weights = rng.dirichlet(np.ones(terms))
    mat = np.zeros((4, 4), dtype=complex)
    for w in weights:
        vec = np.kron(_haar_vector(2, rng), _haar_vector(2, rng))
        mat += w * np.outer(vec, vec.conj())
    return QuantumState(2, mat)
