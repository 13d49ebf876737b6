"""Constructors and decompositions for the state families used in the library.

Pure states are normalized complex amplitude vectors annotated with a
subsystem dimension signature; density matrices are Hermitian, positive
semidefinite, unit-trace operators.  Construction validates the invariants
once, after which the wrapped arrays are immutable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import qlinalg
from .exceptions import (
    DimensionMismatch,
    FidelityOutOfRange,
    NotNormalized,
    ParameterOutOfRange,
    ParseError,
    RankTooLarge,
    ZeroVector,
)

NORM_TOL = 1e-10
INPUT_SLACK = 1e-6


def _check_dims(dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise DimensionMismatch(f"invalid dimension signature {dims}")
    return dims


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PureState:
    """Bipartite pure state: amplitudes of length dims[0] * dims[1]."""

    dims: tuple[int, ...]
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        if len(self.dims) != 2:
            raise DimensionMismatch(f"PureState needs a bipartite signature, got {self.dims}")
        if self.amps.shape != (self.dims[0] * self.dims[1],):
            raise DimensionMismatch("amplitude length does not match signature")
        if abs(np.linalg.norm(self.amps) - 1.0) > NORM_TOL:
            raise NotNormalized("pure state amplitudes not normalized")
        object.__setattr__(self, "amps", _frozen(self.amps))

    def density(self) -> np.ndarray:
        return np.outer(self.amps, self.amps.conj())

    def amplitude_matrix(self) -> np.ndarray:
        return self.amps.reshape(self.dims)


@dataclass(frozen=True)
class MultipartiteState:
    """Pure state over three or more subsystems."""

    dims: tuple[int, ...]
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        if len(self.dims) < 3:
            raise DimensionMismatch(f"MultipartiteState needs >= 3 parts, got {self.dims}")
        if self.amps.shape != (int(np.prod(self.dims)),):
            raise DimensionMismatch("amplitude length does not match signature")
        if abs(np.linalg.norm(self.amps) - 1.0) > NORM_TOL:
            raise NotNormalized("state amplitudes not normalized")
        object.__setattr__(self, "amps", _frozen(self.amps))

    def density(self) -> np.ndarray:
        return np.outer(self.amps, self.amps.conj())

    def split_first(self) -> PureState:
        """View as bipartite: first subsystem versus the rest."""
        rest = int(np.prod(self.dims[1:]))
        return PureState((self.dims[0], rest), self.amps.copy())

    def marginal(self, keep: Sequence[int]) -> np.ndarray:
        return qlinalg.partial_trace(self.density(), self.dims, keep)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, PSD, unit-trace operator with a dimension signature."""

    dims: tuple[int, ...]
    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = int(np.prod(self.dims))
        if self.mat.shape != (n, n):
            raise DimensionMismatch(f"matrix shape {self.mat.shape} != ({n}, {n})")
        if np.max(np.abs(self.mat - self.mat.conj().T)) > qlinalg.HERMITICITY_TOL:
            raise NotNormalized("density matrix not Hermitian within tolerance")
        w = np.linalg.eigvalsh(qlinalg.hermitianize(self.mat))
        if w.min() < -1e-10:
            raise NotNormalized(f"density matrix has eigenvalue {w.min():.3e} < -1e-10")
        if abs(np.trace(self.mat).real - 1.0) > NORM_TOL:
            raise NotNormalized("density matrix trace differs from 1")
        object.__setattr__(self, "mat", _frozen(self.mat))


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Descending squared Schmidt coefficients summing to one."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size == 0:
            raise DimensionMismatch("spectrum must be a nonempty vector")
        if np.any(np.diff(v) > 1e-12) or v.min() < -1e-12:
            raise NotNormalized("spectrum must be nonnegative and descending")
        if abs(v.sum() - 1.0) > NORM_TOL:
            raise NotNormalized("spectrum must sum to 1")
        object.__setattr__(self, "values", _frozen(np.clip(v, 0.0, 1.0)))

    def __len__(self) -> int:
        return self.values.size


def pure_from_amplitudes(amps, dims: Sequence[int]) -> PureState | MultipartiteState:
    """Build a pure state, renormalizing inputs within 1e-6 of unit norm."""
    dims = _check_dims(dims)
    a = np.asarray(amps, dtype=complex).ravel()
    if a.size != int(np.prod(dims)):
        raise DimensionMismatch(f"{a.size} amplitudes for signature {dims}")
    norm = np.linalg.norm(a)
    if norm < 1e-12:
        raise ZeroVector("amplitude vector has zero norm")
    if abs(norm - 1.0) > INPUT_SLACK * (1.0 + 1e-9):
        raise NotNormalized(f"norm {norm:.8f} deviates from 1 by more than {INPUT_SLACK}")
    a = a / norm
    if len(dims) == 2:
        return PureState(dims, a)
    return MultipartiteState(dims, a)


def schmidt_spectrum(psi: PureState) -> SchmidtSpectrum:
    """Squared singular values of the dA x dB amplitude matrix, descending."""
    s = np.linalg.svd(psi.amplitude_matrix(), compute_uv=False)
    lam = s * s
    lam[np.abs(lam) < qlinalg.EIGENVALUE_CLIP] = 0.0
    lam = np.clip(lam, 0.0, 1.0)
    lam = np.sort(lam)[::-1]
    # exact renormalization guards against accumulated SVD round-off
    lam = lam / lam.sum()
    return SchmidtSpectrum(lam)


def max_entangled(d: int) -> PureState:
    """|Phi+> = sum_k |kk> / sqrt(d)."""
    a = np.zeros(d * d, dtype=complex)
    a[:: d + 1] = 1.0 / np.sqrt(d)
    return PureState((d, d), a)


def isotropic(F: float, d: int) -> DensityMatrix:
    """Mixture of the maximally entangled state (weight by fidelity F) and noise."""
    if not 0.0 <= F <= 1.0:
        raise FidelityOutOfRange(f"fidelity {F} outside [0, 1]")
    if d < 2:
        raise DimensionMismatch("d must be >= 2")
    P = max_entangled(d).density()
    I = np.eye(d * d)
    rho = (1.0 - F) / (d * d - 1.0) * (I - P) + F * P
    return DensityMatrix((d, d), rho)


def _sym_anti_bases(d: int):
    ket = np.eye(d)
    sym = [np.kron(ket[i], ket[i]) for i in range(d)]
    plus, minus = [], []
    for l in range(d):
        for k in range(l + 1, d):
            plus.append((np.kron(ket[l], ket[k]) + np.kron(ket[k], ket[l])) / np.sqrt(2))
            minus.append((np.kron(ket[l], ket[k]) - np.kron(ket[k], ket[l])) / np.sqrt(2))
    return sym, plus, minus


def antisymmetric_projector(d: int) -> np.ndarray:
    """Projector onto the antisymmetric subspace of C^d x C^d."""
    _, _, minus = _sym_anti_bases(d)
    P = np.zeros((d * d, d * d))
    for v in minus:
        P += np.outer(v, v)
    return P


def werner(w: float, d: int) -> DensityMatrix:
    """Exchange-invariant state with antisymmetric-subspace weight ``w``."""
    if not 0.0 <= w <= 1.0:
        raise ParameterOutOfRange(f"mixing parameter {w} outside [0, 1]")
    if d < 2:
        raise DimensionMismatch("d must be >= 2")
    sym, plus, minus = _sym_anti_bases(d)
    rho = np.zeros((d * d, d * d))
    c_sym = 2.0 * (1.0 - w) / (d * (d + 1.0))
    c_anti = 2.0 * w / (d * (d - 1.0))
    for v in sym + plus:
        rho += c_sym * np.outer(v, v)
    for v in minus:
        rho += c_anti * np.outer(v, v)
    return DensityMatrix((d, d), rho)


def chain_state(theta: float) -> MultipartiteState:
    """Two elementary entangled pairs arranged in a chain, as a 4 x 2 x 2 state.

    (alpha|000> + beta|110> + alpha|201> + beta|311>) / sqrt(2) with
    alpha = cos(theta), beta = sin(theta).
    """
    alpha, beta = np.cos(theta), np.sin(theta)
    a = np.zeros(16, dtype=complex)
    # flat index = 4*A + 2*B + C for dims (4, 2, 2)
    a[4 * 0 + 2 * 0 + 0] = alpha  # |0,0,0>
    a[4 * 1 + 2 * 1 + 0] = beta   # |1,1,0>
    a[4 * 2 + 2 * 0 + 1] = alpha  # |2,0,1>
    a[4 * 3 + 2 * 1 + 1] = beta   # |3,1,1>
    a /= np.sqrt(2.0)
    return MultipartiteState((4, 2, 2), a)


def gen_schmidt_3qubit(nu: Sequence[float], phi: float = 0.0) -> MultipartiteState:
    """Three-qubit state nu0|000> + nu1 e^{i phi}|100> + nu2|101> + nu3|110> + nu4|111>."""
    nu = np.asarray(nu, dtype=float)
    if nu.shape != (5,):
        raise DimensionMismatch("expected 5 coefficients")
    if np.any(nu < 0):
        raise NotNormalized("coefficients must be nonnegative")
    ssq = float(np.sum(nu**2))
    if abs(ssq - 1.0) > INPUT_SLACK:
        raise NotNormalized(f"sum of squares {ssq:.8f} deviates from 1")
    nu = nu / np.sqrt(ssq)
    a = np.zeros(8, dtype=complex)
    a[0b000] = nu[0]
    a[0b100] = nu[1] * np.exp(1j * phi)
    a[0b101] = nu[2]
    a[0b110] = nu[3]
    a[0b111] = nu[4]
    return MultipartiteState((2, 2, 2), a)


def random_pure(dims: Sequence[int], seed: int) -> PureState | MultipartiteState:
    """Haar-distributed pure state: normalized complex Gaussian vector."""
    dims = _check_dims(dims)
    rng = np.random.default_rng(seed)
    n = int(np.prod(dims))
    a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    a /= np.linalg.norm(a)
    if len(dims) == 2:
        return PureState(dims, a)
    if len(dims) == 1:
        raise DimensionMismatch("need at least two subsystems")
    return MultipartiteState(dims, a)


def random_density(dims: Sequence[int], rank: int, seed: int) -> DensityMatrix:
    """Trace-normalized Wishart matrix G G^dagger of the given rank."""
    dims = _check_dims(dims)
    n = int(np.prod(dims))
    if rank < 1 or rank > n:
        raise RankTooLarge(f"rank {rank} invalid for dimension {n}")
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    rho = G @ G.conj().T
    rho /= np.trace(rho).real
    return DensityMatrix(dims, qlinalg.hermitianize(rho))


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian matrix."""
    Z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    Q, R = np.linalg.qr(Z)
    return Q * (np.diagonal(R) / np.abs(np.diagonal(R)))


# -- state file format: {"dims": [...], "kind": "pure"|"density", "re": [...], "im": [...]}


def state_to_dict(state) -> dict:
    if isinstance(state, (PureState, MultipartiteState)):
        arr, kind = state.amps, "pure"
    elif isinstance(state, DensityMatrix):
        arr, kind = state.mat.ravel(), "density"
    else:
        raise ParseError(f"cannot serialize object of type {type(state).__name__}")
    return {
        "dims": list(state.dims),
        "kind": kind,
        "re": arr.real.tolist(),
        "im": arr.imag.tolist(),
    }


def state_from_dict(obj: dict):
    try:
        dims = _check_dims(obj["dims"])
        kind = obj["kind"]
        data = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed state object: {exc}") from exc
    if kind == "pure":
        return pure_from_amplitudes(data, dims)
    if kind == "density":
        n = int(np.prod(dims))
        if data.size != n * n:
            raise ParseError(f"{data.size} entries for a {n} x {n} density matrix")
        return DensityMatrix(dims, data.reshape(n, n))
    raise ParseError(f"unknown state kind {kind!r}")


def save_state(state, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(state_to_dict(state), fh)


def load_state(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read state file {path}: {exc}") from exc
    return state_from_dict(obj)
