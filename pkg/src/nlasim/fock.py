"""Truncated-Fock-space kernel.

States, diagonal operators, beam-splitter unitaries, pure-loss channels,
partial transposition and the negativity-based entanglement measures that
everything else in the package is built on.

Conventions
-----------
* Photon-number amplitudes are indexed ``n = 0 .. n_max`` (length
  ``n_max + 1`` arrays).
* Sub-normalised states and densities carry their heralding probability in
  the squared norm / trace; nothing is renormalised implicitly.
* Bipartite quantities live on the product basis ``|n>_A |m>_B`` flattened
  row-major, i.e. index ``i = n * (n_max + 1) + m`` with ``A`` the slow arm.
* Attenuation in dB maps to intensity transmissivity ``eta = 10**(-dB/10)``;
  two-mode squeezing in dB maps to the squeezing parameter through
  ``r_dB = (20 / ln 10) * r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.linalg import eigvalsh, expm
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from scipy.special import comb

Arm = Literal["A", "B"]

#: dB of squeezing per unit squeezing parameter, 20 / ln(10) = 8.68589...
SQUEEZING_DB_PER_UNIT = 20.0 / math.log(10.0)

_HERM_TOL = 1e-12
_TRACE_TOL = 1e-12
_PSD_TOL = 1e-10


class TruncationError(ValueError):
    """A requested cutoff cannot represent the state to tolerance."""


class NormalizationError(ValueError):
    """An operation that requires unit trace / unit norm got something else."""


def transmissivity_from_db(attenuation_db: float) -> float:
    """Intensity transmissivity of a channel with the given attenuation in dB."""
    return 10.0 ** (-attenuation_db / 10.0)


def squeezing_from_db(r_db: float) -> float:
    """Squeezing parameter r for a two-mode squeezing level quoted in dB."""
    return r_db / SQUEEZING_DB_PER_UNIT


def squeezing_to_db(r: float) -> float:
    return r * SQUEEZING_DB_PER_UNIT


def guard_truncation(populations: np.ndarray, limit: float = 1e-6,
                     what: str = "state") -> None:
    """Raise if the top Fock bin holds more than ``limit`` of the peak bin.

    Post-hoc guard against silently truncated output states; ``populations``
    is any non-negative per-bin weight vector (|amps|^2 or diagonal of a
    density matrix arm).
    """
    pops = np.asarray(populations, dtype=float)
    peak = pops.max(initial=0.0)
    if peak <= 0.0:
        return
    if pops[-1] > limit * peak:
        raise TruncationError(
            f"{what}: top-bin population {pops[-1]:.3e} exceeds "
            f"{limit:g} of the peak bin {peak:.3e}; increase n_max")


@dataclass(frozen=True)
class PureStateVector:
    """Single-mode state in the truncated Fock basis, possibly sub-normalised."""

    amps: np.ndarray

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amps, dtype=complex)
        if amps.ndim != 1 or amps.size == 0:
            raise ValueError("amps must be a non-empty 1-d array")
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("amps must be finite")
        nsq = float(np.vdot(amps, amps).real)
        if nsq > 1.0 + 1e-12:
            raise NormalizationError(f"squared norm {nsq} exceeds 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def n_max(self) -> int:
        return self.amps.size - 1

    @property
    def norm_sq(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def normalized(self) -> "PureStateVector":
        nsq = self.norm_sq
        if nsq <= 0.0:
            raise NormalizationError("cannot normalise the zero vector")
        return PureStateVector(self.amps / math.sqrt(nsq))

    def populations(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


@dataclass(frozen=True)
class DiagonalOperator:
    """Operator diagonal in the Fock basis, stored as its coefficient vector."""

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.ascontiguousarray(self.coeffs, dtype=float)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("coeffs must be a non-empty 1-d array")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coeffs must be finite")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def n_max(self) -> int:
        return self.coeffs.size - 1


def identity_diagonal(n_max: int) -> DiagonalOperator:
    return DiagonalOperator(np.ones(n_max + 1))


def vacuum_projection_diagonal(n_max: int) -> DiagonalOperator:
    coeffs = np.zeros(n_max + 1)
    coeffs[0] = 1.0
    return DiagonalOperator(coeffs)


def attenuator_diagonal(transmissivity: float, n_max: int) -> DiagonalOperator:
    """Noiseless attenuator sqrt(T)^(photon number): coefficients sqrt(T)^n."""
    if not 0.0 < transmissivity <= 1.0:
        raise ValueError("transmissivity must lie in (0, 1]")
    n = np.arange(n_max + 1)
    return DiagonalOperator(math.sqrt(transmissivity) ** n)


@dataclass(frozen=True)
class ChannelSpec:
    """Pure-loss channel specified by its attenuation in dB."""

    attenuation_db: float

    def __post_init__(self):
        if not math.isfinite(self.attenuation_db) or self.attenuation_db < 0:
            raise ValueError("attenuation_db must be finite and >= 0")

    @property
    def eta(self) -> float:
        return transmissivity_from_db(self.attenuation_db)


def coherent_state(alpha: complex, n_max: int,
                   tail_tol: float = 1e-8) -> PureStateVector:
    """Coherent-state amplitudes e^(-|a|^2/2) a^n / sqrt(n!) up to ``n_max``.

    Raises TruncationError when the neglected Poisson tail carries more than
    ``tail_tol`` probability.
    """
    amps = np.zeros(n_max + 1, dtype=complex)
    amps[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(1, n_max + 1):
        amps[n] = amps[n - 1] * alpha / math.sqrt(n)
    tail = 1.0 - float(np.vdot(amps, amps).real)
    if tail > tail_tol:
        raise TruncationError(
            f"coherent state |alpha|={abs(alpha):.4g} loses {tail:.3e} "
            f"probability beyond n_max={n_max}")
    return PureStateVector(amps)


def tmsv_schmidt(r: float, n_max: int, tail_tol: float = 1e-10) -> np.ndarray:
    """Schmidt coefficients tanh(r)^n / cosh(r) of a two-mode squeezed vacuum.

    The discarded tail mass is tanh(r)^(2 (n_max + 1)); raises
    TruncationError when it exceeds ``tail_tol``.
    """
    if r < 0:
        raise ValueError("squeezing parameter must be >= 0")
    th = math.tanh(r)
    tail = th ** (2 * (n_max + 1))
    if tail > tail_tol:
        raise TruncationError(
            f"TMSV r={r:.4g} keeps {tail:.3e} probability beyond "
            f"n_max={n_max}")
    return th ** np.arange(n_max + 1) / math.cosh(r)


@dataclass(frozen=True)
class BipartiteDensity:
    """Two-arm density matrix on the flattened |n>_A |m>_B product basis.

    Construction checks Hermiticity and the stored trace; positivity is
    guaranteed by the operations that produce densities and can be checked
    explicitly with :meth:`validate`.
    """

    matrix: np.ndarray
    trace_value: float = float("nan")

    def __post_init__(self):
        m = np.ascontiguousarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("matrix must be square")
        dim = m.shape[0]
        arm = math.isqrt(dim)
        if arm * arm != dim:
            raise ValueError("matrix dimension must be a perfect square")
        if not np.all(np.isfinite(m.view(float))):
            raise ValueError("matrix must be finite")
        if np.abs(m - m.conj().T).max() > _HERM_TOL:
            raise ValueError("matrix is not Hermitian to tolerance")
        tr = float(np.trace(m).real)
        stored = self.trace_value
        if math.isnan(stored):
            stored = tr
        elif abs(stored - tr) > _TRACE_TOL:
            raise ValueError(
                f"stored trace {stored} disagrees with matrix trace {tr}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "trace_value", stored)

    @property
    def arm_dim(self) -> int:
        return math.isqrt(self.matrix.shape[0])

    @property
    def n_max(self) -> int:
        return self.arm_dim - 1

    def normalized(self) -> "BipartiteDensity":
        if self.trace_value <= 0.0:
            raise NormalizationError("trace is not positive")
        return BipartiteDensity(self.matrix / self.trace_value, 1.0)

    def arm_populations(self, arm: Arm) -> np.ndarray:
        """Diagonal photon-number populations of one arm."""
        d = self.arm_dim
        t = self.matrix.reshape(d, d, d, d)
        if arm == "A":
            return np.einsum("nmnm->n", t).real.copy()
        if arm == "B":
            return np.einsum("nmnm->m", t).real.copy()
        raise ValueError("arm must be 'A' or 'B'")

    def validate(self) -> None:
        """Full invariant check including positivity (costs an eigensolve)."""
        evals = eigvalsh(self.matrix)
        if evals.min() < -_PSD_TOL:
            raise ValueError(f"matrix has eigenvalue {evals.min():.3e} < 0")


def tmsv_density(r: float, n_max: int, tail_tol: float = 1e-10,
                 normalize: bool = True) -> BipartiteDensity:
    """Two-mode squeezed vacuum |psi><psi| with Schmidt form sum_n c_n |nn>."""
    c = tmsv_schmidt(r, n_max, tail_tol)
    dim = n_max + 1
    vec = np.zeros(dim * dim, dtype=complex)
    vec[np.arange(dim) * dim + np.arange(dim)] = c
    if normalize:
        vec /= np.linalg.norm(vec)
    return BipartiteDensity(np.outer(vec, vec.conj()))


@dataclass(frozen=True)
class BeamSplitterUnitary:
    """Two-mode beam-splitter unitary organised in total-photon-number blocks.

    Generator exp[theta (x^dag y - x y^dag)] with cos(theta) = sqrt(T) for the
    ordered mode pair (x, y).  Block ``s`` acts on {|s-j, j> : j = 0..s} where
    ``j`` counts photons in the second mode.
    """

    transmissivity: float
    blocks: tuple

    def block(self, n_total: int) -> np.ndarray:
        if not 0 <= n_total < len(self.blocks):
            raise ValueError(f"no block for total photon number {n_total}")
        return self.blocks[n_total]

    def element(self, na: int, nb: int, ma: int, mb: int) -> float:
        """Matrix element <na, nb| U |ma, mb>; zero across photon sectors."""
        if na + nb != ma + mb:
            return 0.0
        return float(self.block(na + nb)[nb, mb])


def beam_splitter_unitary(transmissivity: float,
                          n_total_max: int) -> BeamSplitterUnitary:
    """Build the block-diagonal beam-splitter unitary up to ``n_total_max``."""
    if not 0.0 < transmissivity < 1.0:
        raise ValueError("transmissivity must lie strictly in (0, 1)")
    theta = math.acos(math.sqrt(transmissivity))
    blocks = []
    for s in range(n_total_max + 1):
        gen = np.zeros((s + 1, s + 1))
        for j in range(s + 1):
            # x^dag y : |s-j, j> -> |s-j+1, j-1>
            if j >= 1:
                gen[j - 1, j] += theta * math.sqrt(j * (s - j + 1))
            # x y^dag : |s-j, j> -> |s-j-1, j+1>
            if j <= s - 1:
                gen[j + 1, j] -= theta * math.sqrt((s - j) * (j + 1))
        blocks.append(expm(gen))
    for b in blocks:
        b.setflags(write=False)
    return BeamSplitterUnitary(transmissivity, tuple(blocks))


def loss_kraus_operators(eta: float, n_max: int) -> np.ndarray:
    """Kraus stack K[l] of the pure-loss channel with transmissivity ``eta``.

    K_l = sum_n sqrt(C(n, l)) eta^((n-l)/2) (1-eta)^(l/2) |n-l><n|.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError("eta must lie in [0, 1]")
    dim = n_max + 1
    kraus = np.zeros((dim, dim, dim))
    for l in range(dim):
        for n in range(l, dim):
            kraus[l, n - l, n] = math.sqrt(comb(n, l)) * \
                eta ** ((n - l) / 2.0) * (1.0 - eta) ** (l / 2.0)
    return kraus


def apply_loss(rho: BipartiteDensity, arm: Arm,
               channel: "ChannelSpec | float") -> BipartiteDensity:
    """Pure-loss channel on one arm; trace preserving for any ``eta``.

    ``channel`` may be a :class:`ChannelSpec` or a bare transmissivity in
    [0, 1] (the latter admits the exact eta = 0 limit).
    """
    eta = channel.eta if isinstance(channel, ChannelSpec) else float(channel)
    kraus = loss_kraus_operators(eta, rho.n_max)
    d = rho.arm_dim
    t = rho.matrix.reshape(d, d, d, d)
    out = np.zeros_like(t)
    for k in kraus:
        if arm == "B":
            # K rho K^dag on the second index pair
            tmp = np.tensordot(k, t, axes=([1], [1]))       # (m, a, A, B)
            tmp = np.tensordot(tmp, k.conj(), axes=([3], [1]))  # (m, a, A, M)
            out += tmp.transpose(1, 0, 2, 3)
        elif arm == "A":
            tmp = np.tensordot(k, t, axes=([1], [0]))       # (n, b, A, B)
            tmp = np.tensordot(tmp, k.conj(), axes=([2], [1]))  # (n, b, B, N)
            out += tmp.transpose(0, 1, 3, 2)
        else:
            raise ValueError("arm must be 'A' or 'B'")
    return BipartiteDensity(out.reshape(d * d, d * d))


def apply_diagonal(rho: BipartiteDensity, arm: Arm,
                   op: DiagonalOperator) -> BipartiteDensity:
    """Sandwich D rho D^dag with a Fock-diagonal operator on one arm.

    The result keeps the (generally reduced) post-selection trace.
    """
    if op.n_max < rho.n_max:
        raise ValueError("diagonal operator is shorter than the density arm")
    dvec = op.coeffs[:rho.arm_dim]
    d = rho.arm_dim
    t = rho.matrix.reshape(d, d, d, d)
    if arm == "B":
        out = t * dvec[None, :, None, None] * dvec[None, None, None, :]
    elif arm == "A":
        out = t * dvec[:, None, None, None] * dvec[None, None, :, None]
    else:
        raise ValueError("arm must be 'A' or 'B'")
    return BipartiteDensity(out.reshape(d * d, d * d))


def partial_transpose(rho: BipartiteDensity, arm: Arm = "B") -> np.ndarray:
    """Partial transpose over one arm; Hermitian, trace preserved."""
    d = rho.arm_dim
    t = rho.matrix.reshape(d, d, d, d)
    if arm == "B":
        out = t.transpose(0, 3, 2, 1)
    elif arm == "A":
        out = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError("arm must be 'A' or 'B'")
    return out.reshape(d * d, d * d).copy()


def _eigvalsh_by_blocks(h: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, solved per connected component.

    The sparsity pattern is split into connected components; the loss and
    post-selection pipelines produce matrices that are block diagonal under a
    photon-number-sum grading, which this exploits without assuming it.
    """
    pattern = csr_matrix(h != 0.0)
    n_comp, labels = connected_components(pattern, directed=False)
    if n_comp <= 1:
        return eigvalsh(h)
    sizes = np.bincount(labels, minlength=n_comp)
    out = np.empty(h.shape[0])
    pos = 0
    # singleton components are their own eigenvalues; no solver needed
    singles = np.flatnonzero(sizes[labels] == 1)
    out[:singles.size] = h[singles, singles].real
    pos = singles.size
    for c in np.flatnonzero(sizes > 1):
        idx = np.flatnonzero(labels == c)
        out[pos:pos + idx.size] = eigvalsh(h[np.ix_(idx, idx)])
        pos += idx.size
    return out


def negativity(rho: BipartiteDensity) -> float:
    """Entanglement negativity: |sum of negative eigenvalues| of rho^T_B.

    Requires a unit-trace density (tolerance 1e-10).
    """
    if abs(rho.trace_value - 1.0) > 1e-10:
        raise NormalizationError(
            f"negativity needs trace 1, got {rho.trace_value!r}")
    evals = _eigvalsh_by_blocks(partial_transpose(rho, "B"))
    return float(-evals[evals < 0.0].sum())


def log_negativity(rho: BipartiteDensity) -> float:
    """Logarithmic negativity log2(1 + 2 * negativity); >= 0."""
    return float(np.log2(1.0 + 2.0 * negativity(rho)))
