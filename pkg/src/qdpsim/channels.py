"""State-instructed channels built from Choi matrices.

A Hermitian-preserving linear map ``N`` is stored as its Choi matrix
``L = sum_jk |j><k| (x) N(|j><k|)`` over the unnormalized maximally entangled
pair.  The partial transpose of ``L`` on the first factor is a Hermitian
operator ``Nhat``, the *query generator*: conjugating a memory (x) working
pair by ``exp(-i Nhat s)`` and tracing out the memory register applies the
map's exponential to the working state up to O(s^2).

Sign conventions, fixed here once and relied on everywhere else:

* ``exact_memory_call`` with map ``N`` and duration ``s`` applies the unitary
  ``exp(+i s N(rho))``.
* ``memory_usage_query`` with duration ``s`` applies
  ``Tr_1[exp(-i Nhat s) (rho (x) sigma) exp(+i Nhat s)]``, whose first order
  is ``sigma - i s [N(rho), sigma]`` and whose many-query limit is therefore
  the unitary channel of ``exp(-i s N(rho))``.

The two directions are adjoint, so a memory-call of duration ``s`` is
realized by queries of total duration ``-s``.  ``exact_query_channel`` is the
query-side limit, used as the comparison point for error measurements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DimensionError, InvariantError
from .linalg import (
    DensityMatrix,
    herm_exp,
    hermitize,
    kron,
    op_norm,
    partial_transpose,
    random_pure,
    trace_distance,
    _as_square,
)

CHOI_HERM_ATOL = 1e-10


@dataclass(frozen=True)
class HermitianPreservingMap:
    """Linear Hermitian-preserving map held as a Choi matrix.

    ``commutator_form``, when set, records that the map is
    ``rho -> -i * s * [d, rho]`` for a Hermitian ``d``; the unfolding engine
    uses it to route such calls through group commutators.
    """

    d_in: int
    d_out: int
    choi: np.ndarray
    commutator_form: Optional[tuple[np.ndarray, float]] = None

    def __post_init__(self):
        choi = np.asarray(self.choi, dtype=complex)
        if choi.shape != (self.d_in * self.d_out, self.d_in * self.d_out):
            raise DimensionError(
                f"Choi matrix shape {choi.shape} does not match "
                f"d_in*d_out={self.d_in * self.d_out}"
            )
        dev = float(np.max(np.abs(choi - choi.conj().T)))
        if dev > CHOI_HERM_ATOL:
            raise InvariantError(
                f"Choi matrix is not Hermitian (deviation {dev:.3e}); "
                "the map is not Hermitian-preserving"
            )
        choi = (choi + choi.conj().T) / 2.0
        choi.setflags(write=False)
        object.__setattr__(self, "choi", choi)


def map_from_function(
    fn: Callable[[np.ndarray], np.ndarray], d_in: int, d_out: int, **kwargs
) -> HermitianPreservingMap:
    """Build the Choi matrix of ``fn`` by applying it to all matrix units."""
    choi = np.zeros((d_in * d_out, d_in * d_out), dtype=complex)
    choi4 = choi.reshape(d_in, d_out, d_in, d_out)
    unit = np.zeros((d_in, d_in), dtype=complex)
    for j in range(d_in):
        for k in range(d_in):
            unit[j, k] = 1.0
            out = np.asarray(fn(unit), dtype=complex)
            if out.shape != (d_out, d_out):
                raise DimensionError(f"map output shape {out.shape} != ({d_out},{d_out})")
            choi4[j, :, k, :] = out
            unit[j, k] = 0.0
    return HermitianPreservingMap(d_in=d_in, d_out=d_out, choi=choi, **kwargs)


def map_apply(m: HermitianPreservingMap, x) -> np.ndarray:
    """Apply the map to an operator, reconstructed from the Choi matrix."""
    a = _as_square(x)
    if a.shape[0] != m.d_in:
        raise DimensionError(f"input dim {a.shape[0]} != map d_in {m.d_in}")
    choi4 = m.choi.reshape(m.d_in, m.d_out, m.d_in, m.d_out)
    return np.einsum("jakb,jk->ab", choi4, a)


@dataclass(frozen=True)
class QueryGenerator:
    """Hermitian generator of memory-usage queries: the Choi partial transpose."""

    n_hat: np.ndarray
    d_in: int
    d_out: int

    def __post_init__(self):
        n_hat = hermitize(self.n_hat)
        if n_hat.shape[0] != self.d_in * self.d_out:
            raise DimensionError("generator dimension does not match d_in*d_out")
        n_hat.setflags(write=False)
        object.__setattr__(self, "n_hat", n_hat)

    @classmethod
    def from_map(cls, m: HermitianPreservingMap) -> "QueryGenerator":
        n_hat = partial_transpose(m.choi, (m.d_in, m.d_out), 0)
        return cls(n_hat=n_hat, d_in=m.d_in, d_out=m.d_out)


@dataclass(frozen=True)
class MemoryCallSpec:
    """One state-instructed unitary ``exp(i * duration * N(instruction))``.

    ``extra_instruction`` extends the instruction register: the map is fed
    ``state (x) extra_instruction`` instead of the bare recursion state, which
    is how lifted two-register maps (products of the state with a fixed
    resource state) are expressed.
    """

    map: HermitianPreservingMap
    duration: float = 1.0
    extra_instruction: Optional[DensityMatrix] = None

    def __post_init__(self):
        if not np.isfinite(self.duration):
            raise InvariantError("duration must be finite")

    def instruction_matrix(self, state: DensityMatrix) -> np.ndarray:
        if self.extra_instruction is None:
            mat = state.matrix
        else:
            mat = kron(state.matrix, self.extra_instruction.matrix)
        if mat.shape[0] != self.map.d_in:
            raise DimensionError(
                f"instruction dim {mat.shape[0]} != map d_in {self.map.d_in}"
            )
        return mat


# ---------------------------------------------------------------------------
# Map constructors


def make_identity_map(dim: int) -> HermitianPreservingMap:
    """The identity map; its query generator is the swap operator."""
    return map_from_function(lambda x: x, dim, dim)


def make_scaled_identity_map(alpha: float, dim: int) -> HermitianPreservingMap:
    """The map ``rho -> -alpha * rho``; generator ``-alpha * SWAP``."""
    a = float(alpha)
    return map_from_function(lambda x: -a * x, dim, dim)


def make_commutator_map(d, s: float) -> HermitianPreservingMap:
    """The map ``rho -> -i s [d, rho]`` for Hermitian ``d``."""
    dd = hermitize(d)
    ss = float(s)
    dim = dd.shape[0]
    return map_from_function(
        lambda x: -1j * ss * (dd @ x - x @ dd),
        dim,
        dim,
        commutator_form=(dd, ss),
    )


def make_osd_map(d_a, s: float, dims: tuple[int, int]) -> HermitianPreservingMap:
    """The map ``rho_AB -> -i s [d_a, Tr_B rho_AB] (x) 1_B``.

    ``d_a`` must be diagonal with pairwise distinct entries.
    """
    da, db = int(dims[0]), int(dims[1])
    dd = hermitize(d_a)
    if dd.shape[0] != da:
        raise DimensionError(f"diagonal operator dim {dd.shape[0]} != {da}")
    if np.max(np.abs(dd - np.diag(np.diag(dd)))) > 1e-12:
        raise InvariantError("instruction operator must be diagonal")
    mu = np.real(np.diag(dd))
    gaps = np.abs(mu[:, None] - mu[None, :]) + np.eye(da)
    if gaps.min() <= 1e-12:
        raise InvariantError("diagonal operator must be non-degenerate")
    ss = float(s)
    eye_b = np.eye(db, dtype=complex)

    def fn(x):
        xa = np.trace(x.reshape(da, db, da, db), axis1=1, axis2=3)
        return kron(-1j * ss * (dd @ xa - xa @ dd), eye_b)

    return map_from_function(fn, da * db, da * db)


def make_pair_commutator_map(dim: int, s: float) -> HermitianPreservingMap:
    """Degree-two lift of ``(rho, chi) -> -i s [rho, chi]`` to one linear map.

    The map acts on the doubled register and satisfies
    ``N(rho (x) chi) = -i s (rho chi - chi rho)``; on matrix units it
    contracts the two factors into an ordinary operator product, once in each
    order.
    """
    d = int(dim)
    ss = float(s)

    def fn(x):
        # x indexes as x4[v1, v2, w1, w2] over the doubled register.
        x4 = x.reshape(d, d, d, d)
        # |v1><w1| (x) |v2><w2|  ->  <w1|v2> |v1><w2|   (first * second)
        first_second = np.einsum("paaq->pq", x4)
        # |v1><w1| (x) |v2><w2|  ->  <w2|v1> |v2><w1|   (second * first)
        second_first = np.einsum("apqa->pq", x4)
        return -1j * ss * (first_second - second_first)

    return map_from_function(fn, d * d, d)


# ---------------------------------------------------------------------------
# Channels


def exact_memory_call(
    call: MemoryCallSpec, instruction: DensityMatrix, working: DensityMatrix
) -> DensityMatrix:
    """Apply ``exp(i * duration * N(instruction))`` to the working state."""
    if working.dim != call.map.d_out:
        raise DimensionError(f"working dim {working.dim} != map d_out {call.map.d_out}")
    gen = hermitize(map_apply(call.map, call.instruction_matrix(instruction)))
    u = herm_exp(gen, -call.duration)
    return DensityMatrix(u @ working.matrix @ u.conj().T, working.factor_dims)


def exact_query_channel(
    m: HermitianPreservingMap, memory: DensityMatrix, working: DensityMatrix, s: float
) -> DensityMatrix:
    """The unitary channel that memory-usage queries of total duration ``s``
    converge to: conjugation by ``exp(-i s N(memory))``."""
    if working.dim != m.d_out:
        raise DimensionError(f"working dim {working.dim} != map d_out {m.d_out}")
    gen = hermitize(map_apply(m, memory.matrix))
    u = herm_exp(gen, float(s))
    return DensityMatrix(u @ working.matrix @ u.conj().T, working.factor_dims)


def memory_usage_query(
    gen: QueryGenerator, memory: DensityMatrix, working: DensityMatrix, s: float
) -> DensityMatrix:
    """One query: consume a memory copy, evolve the working state.

    Computes ``Tr_1[exp(-i Nhat s) (memory (x) working) exp(+i Nhat s)]``.
    """
    if memory.dim != gen.d_in or working.dim != gen.d_out:
        raise DimensionError(
            f"memory/working dims ({memory.dim},{working.dim}) do not match "
            f"generator ({gen.d_in},{gen.d_out})"
        )
    w = herm_exp(gen.n_hat, float(s))
    joint = w @ kron(memory.matrix, working.matrix) @ w.conj().T
    d_in, d_out = gen.d_in, gen.d_out
    out = np.trace(joint.reshape(d_in, d_out, d_in, d_out), axis1=0, axis2=2)
    return DensityMatrix(out, working.factor_dims)


def dme_query(memory: DensityMatrix, working: DensityMatrix, s: float) -> DensityMatrix:
    """Swap-generated query in closed form:
    ``cos^2(s) sigma - i sin(s)cos(s) [rho, sigma] + sin^2(s) rho``."""
    if memory.dim != working.dim:
        raise DimensionError(f"dim mismatch {memory.dim} vs {working.dim}")
    c, sn = np.cos(float(s)), np.sin(float(s))
    rho, sigma = memory.matrix, working.matrix
    out = c * c * sigma - 1j * sn * c * (rho @ sigma - sigma @ rho) + sn * sn * rho
    return DensityMatrix(out, working.factor_dims)


def query_superoperator(gen: QueryGenerator, memory: DensityMatrix, s: float) -> np.ndarray:
    """Matrix of one query as a linear map on vectorized working states.

    Row-major vectorization; the returned matrix has shape
    ``(d_out^2, d_out^2)``.  Building it once and applying it repeatedly is
    how large query counts stay cheap.
    """
    d_in, d_out = gen.d_in, gen.d_out
    w4 = herm_exp(gen.n_hat, float(s)).reshape(d_in, d_out, d_in, d_out)
    t1 = np.einsum("akmi,mn->akni", w4, memory.matrix)
    sup = np.einsum("akni,alnj->klij", t1, w4.conj())
    return sup.reshape(d_out * d_out, d_out * d_out)


def repeated_queries(
    gen: QueryGenerator,
    memory: DensityMatrix,
    working: DensityMatrix,
    s: float,
    m: int,
) -> DensityMatrix:
    """Apply ``m`` queries of duration ``s/m`` with fresh identical memory."""
    m = int(m)
    if m < 1:
        raise InvariantError("query count must be >= 1")
    sup = query_superoperator(gen, memory, float(s) / m)
    vec = working.matrix.reshape(-1)
    for _ in range(m):
        vec = sup @ vec
    out = vec.reshape(working.dim, working.dim)
    return DensityMatrix(out, working.factor_dims)


def group_commutator(a, b, s: float) -> np.ndarray:
    """``exp(-i sqrt(s) b) exp(-i sqrt(s) a) exp(+i sqrt(s) b) exp(+i sqrt(s) a)``.

    Approximates ``exp(s [a, b])`` with operator-norm error bounded by
    ``s^1.5 (||[a,[a,b]]|| + ||[b,[b,a]]||)``.
    """
    if not s > 0:
        raise InvariantError("group commutator step must be positive")
    aa, bb = hermitize(a), hermitize(b)
    if aa.shape != bb.shape:
        raise DimensionError(f"shape mismatch {aa.shape} vs {bb.shape}")
    r = np.sqrt(float(s))
    return herm_exp(bb, r) @ herm_exp(aa, r) @ herm_exp(bb, -r) @ herm_exp(aa, -r)


def channel_error_probe(
    gen: QueryGenerator,
    map_spec: HermitianPreservingMap,
    memory: DensityMatrix,
    s: float,
    m: int,
    n_samples: int,
    seed,
) -> float:
    """Sampled lower bound on the trace-norm distance between ``m`` repeated
    queries and the exact unitary channel they approximate.

    Maximizes the output distance over seeded random pure working states, so
    the value reported never exceeds the true channel distance.
    """
    if n_samples < 1:
        raise InvariantError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(int(n_samples)):
        working = random_pure(gen.d_out, rng.integers(2**63)).density()
        approx = repeated_queries(gen, memory, working, s, m)
        exact = exact_query_channel(map_spec, memory, working, s)
        worst = max(worst, trace_distance(approx.matrix, exact.matrix))
    return worst


def query_error_bound(gen: QueryGenerator, s: float, m: int) -> tuple[float, bool]:
    """Analytic ceiling ``4 ||Nhat||^2 s^2 / m`` on the repeated-query error,
    and whether ``||Nhat|| |s| / m`` falls in the window where it is asserted."""
    norm = op_norm(gen.n_hat)
    bound = 4.0 * norm * norm * float(s) * float(s) / int(m)
    within = 0.0 < norm * abs(float(s)) / int(m) <= 0.8
    return bound, within
