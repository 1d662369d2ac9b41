"""Composite Hilbert space of the transduction chain.

Everything in this package lives on a fixed three-factor tensor space,

    atom (4 levels)  x  resonator (fock_dim levels)  x  squbit (2 levels),

flattened with the atom index slowest and the squbit index fastest, so the
basis state (atom, n, sq) sits at row ``(atom * fock_dim + n) * 2 + sq``.
Atomic levels are ordered g, e, r, s; the superconducting qubit levels g, e.

Operators and states are plain dense complex arrays wrapped in thin,
immutable containers that carry the layout and run validity checks on
construction.  The largest space used anywhere (fock_dim 30) has dimension
240, small enough that dense algebra beats any sparse bookkeeping.
"""

import dataclasses
from collections.abc import Sequence

import numpy as np

from .errors import LayoutError, StateError

ATOM_G, ATOM_E, ATOM_R, ATOM_S = 0, 1, 2, 3
SQ_G, SQ_E = 0, 1

ATOM_DIM = 4
SQ_DIM = 2

SUBSYSTEMS = ("atom", "resonator", "squbit")

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-8
EIGENVALUE_FLOOR = 1e-8


@dataclasses.dataclass(frozen=True)
class HilbertLayout:
    """Dimension bookkeeping for the atom x resonator x squbit space.

    Parameters
    ----------
    fock_dim : int
        Resonator truncation. 10 is enough for vacuum-seeded protocols,
        thermal runs use 15 (truncation tail below 1e-4 for nbar = 0.6).
    """

    fock_dim: int = 10

    def __post_init__(self):
        if not isinstance(self.fock_dim, (int, np.integer)) or self.fock_dim < 2:
            raise LayoutError(f"fock_dim must be an integer >= 2, got {self.fock_dim!r}")

    @property
    def dims(self):
        return (ATOM_DIM, self.fock_dim, SQ_DIM)

    @property
    def total_dim(self):
        return ATOM_DIM * self.fock_dim * SQ_DIM

    def index(self, atom, n, sq):
        """Flattened row of the basis state |atom, n, sq>."""
        if not (0 <= atom < ATOM_DIM and 0 <= n < self.fock_dim and 0 <= sq < SQ_DIM):
            raise LayoutError(f"basis label ({atom}, {n}, {sq}) outside {self.dims}")
        return (atom * self.fock_dim + n) * SQ_DIM + sq

    def basis_vector(self, atom, n, sq):
        vec = np.zeros(self.total_dim, dtype=complex)
        vec[self.index(atom, n, sq)] = 1.0
        return vec


@dataclasses.dataclass(frozen=True)
class CompositeOperator:
    """Dense operator on the full space, tagged with its layout."""

    layout: HilbertLayout
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        dim = self.layout.total_dim
        if entries.shape != (dim, dim):
            raise LayoutError(
                f"operator shape {entries.shape} does not match layout dimension {dim}"
            )
        object.__setattr__(self, "entries", entries)

    @property
    def dag(self):
        return CompositeOperator(self.layout, self.entries.conj().T)

    def _check_layout(self, other):
        if self.layout != other.layout:
            raise LayoutError("operators live on different layouts")

    def __add__(self, other):
        self._check_layout(other)
        return CompositeOperator(self.layout, self.entries + other.entries)

    def __sub__(self, other):
        self._check_layout(other)
        return CompositeOperator(self.layout, self.entries - other.entries)

    def __neg__(self):
        return CompositeOperator(self.layout, -self.entries)

    def __mul__(self, scalar):
        return CompositeOperator(self.layout, self.entries * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._check_layout(other)
        return CompositeOperator(self.layout, self.entries @ other.entries)


@dataclasses.dataclass(frozen=True)
class DensityMatrix:
    """Validated density matrix, either on the full space or a single factor.

    Construction checks Hermiticity (1e-10), unit trace (1e-8) and
    positivity down to ``-eig_floor``.  Integrator output is allowed a
    slightly deeper floor (1e-7) than factory-built states (1e-8).
    """

    entries: np.ndarray
    eig_floor: float = EIGENVALUE_FLOOR

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise StateError(f"density matrix must be square, got shape {entries.shape}")
        herm = np.max(np.abs(entries - entries.conj().T))
        if herm > HERMITICITY_TOL:
            raise StateError(f"density matrix not Hermitian: max deviation {herm:.3e}")
        tr = np.trace(entries).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise StateError(f"density matrix trace {tr!r} differs from 1")
        lo = float(np.linalg.eigvalsh(entries)[0])
        if lo < -self.eig_floor:
            raise StateError(f"density matrix has negative eigenvalue {lo:.3e}")
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self):
        return self.entries.shape[0]

    def purity(self):
        return float(np.vdot(self.entries, self.entries).real)


def tensor(*factors):
    """Kronecker product of dense arrays, leftmost factor slowest."""
    out = np.asarray(factors[0], dtype=complex)
    for factor in factors[1:]:
        out = np.kron(out, np.asarray(factor, dtype=complex))
    return out


def ketbra(dim, i, j):
    """|i><j| on a single dim-dimensional factor."""
    op = np.zeros((dim, dim), dtype=complex)
    op[i, j] = 1.0
    return op


def annihilation(fock_dim):
    """Truncated bosonic annihilation operator, a|n> = sqrt(n)|n-1>."""
    return np.diag(np.sqrt(np.arange(1, fock_dim, dtype=float)), k=1).astype(complex)


def embed(op, subsystem, layout):
    """Lift a single-factor operator to the full space.

    Parameters
    ----------
    op : ndarray
        Square matrix on the named factor.
    subsystem : {"atom", "resonator", "squbit"}
    layout : HilbertLayout

    Returns
    -------
    CompositeOperator
    """
    if subsystem not in SUBSYSTEMS:
        raise LayoutError(f"unknown subsystem {subsystem!r}, expected one of {SUBSYSTEMS}")
    op = np.asarray(op, dtype=complex)
    factors = [np.eye(d, dtype=complex) for d in layout.dims]
    slot = SUBSYSTEMS.index(subsystem)
    if op.shape != factors[slot].shape:
        raise LayoutError(
            f"operator shape {op.shape} does not fit {subsystem!r} of dim {layout.dims[slot]}"
        )
    factors[slot] = op
    return CompositeOperator(layout, tensor(*factors))


def _factor_vector(value, dim, name):
    """Coerce a basis index or amplitude sequence to a normalized vector."""
    if isinstance(value, (int, np.integer)):
        if not 0 <= value < dim:
            raise StateError(f"{name} basis index {value} outside dimension {dim}")
        vec = np.zeros(dim, dtype=complex)
        vec[value] = 1.0
        return vec
    vec = np.asarray(value, dtype=complex)
    if vec.shape != (dim,):
        raise StateError(f"{name} amplitudes must have length {dim}, got shape {vec.shape}")
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > 1e-10:
        raise StateError(f"{name} amplitudes not normalized, |psi| = {norm!r}")
    return vec


def ket(atom, resonator, squbit, layout):
    """Product state vector on the full space.

    Each factor is either a basis index or a normalized amplitude vector
    of the factor dimension.
    """
    return tensor(
        _factor_vector(atom, ATOM_DIM, "atom"),
        _factor_vector(resonator, layout.fock_dim, "resonator"),
        _factor_vector(squbit, SQ_DIM, "squbit"),
    )


def pure_state(atom, resonator, squbit, layout):
    """Density matrix of a product state, see :func:`ket`."""
    psi = ket(atom, resonator, squbit, layout)
    return DensityMatrix(np.outer(psi, psi.conj()))


def partial_trace(rho, keep, layout, eig_floor=EIGENVALUE_FLOOR):
    """Trace out every factor not named in ``keep``.

    Parameters
    ----------
    rho : DensityMatrix or ndarray
        State on the full layout.
    keep : str or sequence of str
        Subsystems to retain; the reduced state keeps the layout's
        ordering of the retained factors.
    layout : HilbertLayout
    eig_floor : float
        Positivity floor for the reduced state; integrator output may
        need the relaxed floor it was produced under.

    Returns
    -------
    DensityMatrix
    """
    if isinstance(keep, str):
        keep = (keep,)
    keep = tuple(keep)
    for name in keep:
        if name not in SUBSYSTEMS:
            raise LayoutError(f"unknown subsystem {name!r} in keep={keep}")
    if not keep:
        raise LayoutError("keep must name at least one subsystem")
    entries = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    dim = layout.total_dim
    if entries.shape != (dim, dim):
        raise LayoutError(f"state shape {entries.shape} does not match layout dimension {dim}")
    dims = layout.dims
    tensor_form = entries.reshape(dims + dims)
    bra = [0, 1, 2]
    ket_ = [3, 4, 5]
    out = []
    for slot, name in enumerate(SUBSYSTEMS):
        if name in keep:
            out.append(slot)
        else:
            ket_[slot] = bra[slot]
    reduced = np.einsum(tensor_form, bra + ket_, [bra[s] for s in out] + [s + 3 for s in out])
    kept_dim = int(np.prod([dims[s] for s in out]))
    return DensityMatrix(reduced.reshape(kept_dim, kept_dim), eig_floor=eig_floor)


def thermal_state(nbar, fock_dim):
    """Truncated thermal resonator state with mean photon number nbar.

    Weights follow nbar^n / (nbar + 1)^(n + 1) and are renormalized over
    the kept levels; use :func:`thermal_truncation_weight` to see how much
    probability the truncation discards.
    """
    if nbar < 0:
        raise StateError(f"nbar must be nonnegative, got {nbar}")
    n = np.arange(fock_dim)
    if nbar == 0:
        weights = np.zeros(fock_dim)
        weights[0] = 1.0
    else:
        weights = np.exp(n * np.log(nbar) - (n + 1) * np.log(nbar + 1.0))
    weights = weights / weights.sum()
    return DensityMatrix(np.diag(weights).astype(complex))


def thermal_truncation_weight(nbar, fock_dim):
    """Probability mass above the truncation, (nbar / (nbar + 1))^fock_dim."""
    if nbar <= 0:
        return 0.0
    return float((nbar / (nbar + 1.0)) ** fock_dim)
