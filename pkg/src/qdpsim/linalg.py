"""Dense complex linear algebra for small multi-register quantum systems.

Operators are plain complex ndarrays in row-major computational-basis
ordering.  The tensor-factor structure of a register is never inferred from
the matrix shape; states carry an explicit tuple of factor dimensions, and
the partial operations take one as an argument.

Matrix exponentials of Hermitian generators go through the spectral
decomposition, so the results are unitary to roundoff regardless of the
generator norm.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvariantError

# Hermiticity handling: deviations up to HERM_WARN_ATOL are symmetrized
# silently, deviations in (HERM_WARN_ATOL, HERM_ATOL] are symmetrized with a
# warning, anything larger is rejected.
HERM_ATOL = 1e-10
HERM_WARN_ATOL = 1e-12

TRACE_ATOL = 1e-10
EIG_CLIP_ATOL = 1e-10
NORM_ATOL = 1e-10


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a matrix, got ndim={a.ndim}")
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise InvariantError("matrix contains non-finite entries")
    return a


def _as_square(m) -> np.ndarray:
    a = _as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    return a


def _check_factor_dims(factor_dims, dim: int) -> tuple[int, ...]:
    dims = tuple(int(d) for d in factor_dims)
    if not dims or any(d < 1 for d in dims):
        raise DimensionError(f"factor dims must be positive, got {dims}")
    if math.prod(dims) != dim:
        raise DimensionError(f"factor dims {dims} do not multiply to {dim}")
    return dims


def hermitize(m, atol: float = HERM_ATOL) -> np.ndarray:
    """Return the Hermitian part of ``m``, rejecting genuinely non-Hermitian input.

    Deviations inside the (HERM_WARN_ATOL, atol] window are symmetrized with a
    warning; accumulated roundoff over long channel compositions lands there.
    """
    a = _as_square(m)
    dev = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if dev > atol:
        raise InvariantError(f"matrix is not Hermitian: max deviation {dev:.3e}")
    if dev > HERM_WARN_ATOL:
        warnings.warn(
            f"symmetrizing matrix with Hermiticity deviation {dev:.3e}",
            RuntimeWarning,
            stacklevel=2,
        )
    return (a + a.conj().T) / 2.0


def kron(a, b) -> np.ndarray:
    """Tensor product of two operators."""
    return np.kron(_as_matrix(a), _as_matrix(b))


def partial_trace(m, factor_dims, keep) -> np.ndarray:
    """Trace out every tensor factor not listed in ``keep``.

    ``keep`` is a sequence of 0-based factor indices; kept factors stay in
    their original order. The full trace is preserved.
    """
    a = _as_square(m)
    dims = _check_factor_dims(factor_dims, a.shape[0])
    k = len(dims)
    keep = sorted(set(int(i) for i in (keep if np.iterable(keep) else [keep])))
    if any(i < 0 or i >= k for i in keep):
        raise DimensionError(f"keep indices {keep} out of range for {k} factors")
    t = a.reshape(dims + dims)
    # Trace out dropped factors from the back so axis numbers stay valid.
    n_left = k
    for i in reversed(range(k)):
        if i not in keep:
            t = np.trace(t, axis1=i, axis2=i + n_left)
            n_left -= 1
    d_keep = math.prod(dims[i] for i in keep) if keep else 1
    return t.reshape(d_keep, d_keep)


def partial_transpose(m, factor_dims, part: int) -> np.ndarray:
    """Transpose the indices of a single tensor factor; involutive."""
    a = _as_square(m)
    dims = _check_factor_dims(factor_dims, a.shape[0])
    k = len(dims)
    part = int(part)
    if part < 0 or part >= k:
        raise DimensionError(f"factor index {part} out of range for {k} factors")
    t = a.reshape(dims + dims)
    t = np.swapaxes(t, part, part + k)
    return t.reshape(a.shape)


def herm_exp(h, t: float) -> np.ndarray:
    """exp(-i*h*t) for Hermitian ``h`` via spectral decomposition."""
    hh = hermitize(h)
    w, v = np.linalg.eigh(hh)
    return (v * np.exp(-1j * w * float(t))) @ v.conj().T


def trace_distance(a, b) -> float:
    """Half the trace norm of ``a - b``, via singular values."""
    aa, bb = _as_square(a), _as_square(b)
    if aa.shape != bb.shape:
        raise DimensionError(f"shape mismatch {aa.shape} vs {bb.shape}")
    sv = np.linalg.svd(aa - bb, compute_uv=False)
    return float(np.sum(sv) / 2.0)


def hs_norm(a) -> float:
    """Hilbert-Schmidt (Frobenius) norm."""
    return float(np.linalg.norm(_as_matrix(a)))


def op_norm(a) -> float:
    """Operator norm of a Hermitian matrix: largest absolute eigenvalue."""
    h = hermitize(a)
    if h.shape[0] == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvalsh(h))))


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted non-increasing, with matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def spectrum(h) -> Spectrum:
    """Full spectral decomposition of a Hermitian matrix, sorted non-increasing."""
    hh = hermitize(h)
    w, v = np.linalg.eigh(hh)
    order = np.argsort(w)[::-1]
    return Spectrum(eigenvalues=w[order], eigenvectors=v[:, order])


class DensityMatrix:
    """Validated quantum state with explicit tensor-factor structure.

    Construction symmetrizes the matrix, requires the trace to be within
    ``TRACE_ATOL`` of one, and clips eigenvalues below ``-EIG_CLIP_ATOL`` to
    zero (renormalizing and recording the clip magnitude).  The stored matrix
    is read-only.
    """

    __slots__ = ("matrix", "factor_dims", "clip_magnitude")

    def __init__(self, matrix, factor_dims=None):
        a = hermitize(matrix)
        dim = a.shape[0]
        dims = _check_factor_dims(factor_dims, dim) if factor_dims is not None else (dim,)
        tr = float(np.real(np.trace(a)))
        if abs(tr - 1.0) > TRACE_ATOL:
            raise InvariantError(f"trace {tr!r} is not 1 within {TRACE_ATOL}")
        w, v = np.linalg.eigh(a)
        clip = 0.0
        if w.min() < -EIG_CLIP_ATOL:
            clip = float(-w.min())
            w = np.clip(w, 0.0, None)
            a = (v * w) @ v.conj().T
        a = a / np.real(np.trace(a))
        a = (a + a.conj().T) / 2.0
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "factor_dims", dims)
        object.__setattr__(self, "clip_magnitude", clip)

    def __setattr__(self, name, value):
        raise AttributeError("DensityMatrix is immutable")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues sorted non-increasing."""
        return np.sort(np.linalg.eigvalsh(self.matrix))[::-1]

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim}, factors={self.factor_dims})"


class PureState:
    """Normalized state vector with explicit tensor-factor structure."""

    __slots__ = ("amplitudes", "factor_dims")

    def __init__(self, amplitudes, factor_dims=None):
        v = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if not (np.all(np.isfinite(v.real)) and np.all(np.isfinite(v.imag))):
            raise InvariantError("amplitudes contain non-finite entries")
        n = float(np.linalg.norm(v))
        if abs(n - 1.0) > NORM_ATOL:
            raise InvariantError(f"norm {n!r} is not 1 within {NORM_ATOL}")
        dims = _check_factor_dims(factor_dims, v.size) if factor_dims is not None else (v.size,)
        v = v / n
        v.setflags(write=False)
        object.__setattr__(self, "amplitudes", v)
        object.__setattr__(self, "factor_dims", dims)

    def __setattr__(self, name, value):
        raise AttributeError("PureState is immutable")

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def density(self) -> DensityMatrix:
        return DensityMatrix(self.projector(), self.factor_dims)

    def overlap(self, other: "PureState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def __repr__(self):
        return f"PureState(dim={self.dim}, factors={self.factor_dims})"


def random_density(dim: int, seed) -> DensityMatrix:
    """Seed-deterministic full-rank random state (normalized Ginibre square)."""
    if dim < 1:
        raise DimensionError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return DensityMatrix(rho / np.real(np.trace(rho)))


def random_pure(dim: int, seed) -> PureState:
    """Seed-deterministic Haar-like random pure state."""
    if dim < 1:
        raise DimensionError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(v / np.linalg.norm(v))
