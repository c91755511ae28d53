"""Hermitian eigensolvers for banded operators.

Dispatch: diagonal input is sorted directly; real tridiagonal input goes to
LAPACK's tridiagonal solver; everything else goes through LAPACK's banded
Hermitian driver, which reduces to tridiagonal form by banded Householder
transformations before the implicit QL/QR sweep. Ground states are polished
by inverse iteration.
"""

from __future__ import annotations

import logging
import struct
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from spin_semiclassics.quantization.dicke import DickeVector
from spin_semiclassics.quantization.operators import QuantizedOperator
from spin_semiclassics.quantization.reflections import Reflection
from spin_semiclassics.utils.exceptions import NumericalError, PreconditionError, SerializationError

logger = logging.getLogger(__name__)

DEGENERACY_TOLERANCE = 1e-10
PHASE_THRESHOLD = 1e-8
INVERSE_ITERATIONS = 3
SPECTRUM_MAGIC = b"SSSP"
SPECTRUM_VERSION = 1
_PREFIX = struct.Struct("<4sHQ")


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Sorted eigenvalues of an (N+1)×(N+1) Hermitian operator.

    Attributes:
        n_sites: Number of spins N.
        eigenvalues: Read-only ascending array of length N+1.
    """

    n_sites: int
    eigenvalues: np.ndarray

    def __post_init__(self) -> None:
        """Sort and freeze."""
        values = np.sort(np.asarray(self.eigenvalues, dtype=float))
        if values.shape != (self.n_sites + 1,):
            raise PreconditionError(
                f"Spectrum for N={self.n_sites} needs {self.n_sites + 1} values, got {values.shape}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "eigenvalues", values)

    @property
    def lo(self) -> float:
        """Smallest eigenvalue."""
        return float(self.eigenvalues[0])

    @property
    def hi(self) -> float:
        """Largest eigenvalue."""
        return float(self.eigenvalues[-1])

    def records(self) -> list[dict[str, float | int]]:
        """CSV rows ``N,index,eigenvalue``."""
        return [{"N": self.n_sites, "index": i, "eigenvalue": float(v)} for i, v in enumerate(self.eigenvalues)]

    def to_bytes(self) -> bytes:
        """Size-prefixed binary encoding (magic ``SSSP``)."""
        payload = struct.pack("<Q", self.n_sites) + self.eigenvalues.astype("<f8").tobytes()
        return _PREFIX.pack(SPECTRUM_MAGIC, SPECTRUM_VERSION, len(payload)) + payload

    @classmethod
    def from_bytes(cls, blob: bytes) -> Spectrum:
        """Decode the binary encoding.

        Raises:
            SerializationError: On a bad magic, version or size.
        """
        if len(blob) < _PREFIX.size + 8:
            raise SerializationError("Binary spectrum payload is truncated")
        magic, version, size = _PREFIX.unpack_from(blob)
        if magic != SPECTRUM_MAGIC or version != SPECTRUM_VERSION:
            raise SerializationError(f"Not a version-{SPECTRUM_VERSION} spectrum payload: {magic!r} v{version}")
        if len(blob) != _PREFIX.size + size:
            raise SerializationError(f"Size prefix {size} does not match payload length {len(blob) - _PREFIX.size}")
        (n_sites,) = struct.unpack_from("<Q", blob, _PREFIX.size)
        values = np.frombuffer(blob, dtype="<f8", offset=_PREFIX.size + 8)
        if len(values) != n_sites + 1:
            raise SerializationError(f"Spectrum payload holds {len(values)} values, expected {n_sites + 1}")
        return cls(int(n_sites), values.astype(float))


@dataclass(frozen=True, eq=False)
class EigenPair:
    """An eigenvalue with its unit eigenvector.

    The vector's first component of magnitude above ``1e-8`` is real positive.

    Attributes:
        value: Eigenvalue (Rayleigh quotient of ``vector``).
        vector: Unit eigenvector.
        index: Position in the (sector) spectrum.
        gap: Distance to the next eigenvalue in the same sector, when known.
        degenerate: Whether ``gap`` is below ``1e-10·‖H‖``.
        residual: ``‖H v − λ v‖``.
        sector: Symmetry sector used, if any.
    """

    value: float
    vector: DickeVector
    index: int = 0
    gap: float | None = None
    degenerate: bool = False
    residual: float = 0.0
    sector: int | None = None


def _require_hermitian(operator: QuantizedOperator) -> QuantizedOperator:
    if not operator.is_hermitian(1e-12):
        raise PreconditionError(f"{operator!r} is not Hermitian")
    return operator.trimmed()


def _norm_bound(operator: QuantizedOperator) -> float:
    """Largest absolute row sum, an upper bound on the operator norm."""
    rows = np.zeros(operator.dimension)
    for o in range(-operator.halfband, operator.halfband + 1):
        band = np.abs(operator.band(o))
        if o >= 0:
            rows[: len(band)] += band
        else:
            rows[-o:] += band
    return float(rows.max(initial=0.0))


def _solve(
    operator: QuantizedOperator, select: tuple[int, int] | None, vectors: bool
) -> tuple[np.ndarray, np.ndarray | None]:
    h = operator.halfband
    n = operator.dimension
    try:
        if h == 0:
            diag = operator.band(0).real
            order = np.argsort(diag, kind="stable")
            if select is not None:
                order = order[select[0] : select[1] + 1]
            vecs = np.eye(n)[:, order] if vectors else None
            return diag[order], vecs
        kwargs = {"select": "i", "select_range": select} if select is not None else {}
        if h == 1 and operator.is_real:
            result = linalg.eigh_tridiagonal(
                operator.band(0).real, operator.band(1).real, eigvals_only=not vectors, **kwargs
            )
        else:
            ab = operator.upper_banded()
            if operator.is_real:
                ab = ab.real
            result = linalg.eig_banded(ab, lower=False, eigvals_only=not vectors, **kwargs)
    except (linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"Eigensolver failed for {operator!r}: {exc}") from exc
    if vectors:
        return result[0], result[1]
    return result, None


def eigh(operator: QuantizedOperator) -> Spectrum:
    """Full spectrum of a Hermitian banded operator.

    Raises:
        PreconditionError: If the operator is not Hermitian.
        NumericalError: If LAPACK reports non-convergence.
    """
    op = _require_hermitian(operator)
    values, _ = _solve(op, None, vectors=False)
    return Spectrum(op.n_sites, values)


def eigenvectors(operator: QuantizedOperator) -> tuple[np.ndarray, np.ndarray]:
    """All eigenvalues (ascending) and eigenvectors as columns."""
    op = _require_hermitian(operator)
    values, vecs = _solve(op, None, vectors=True)
    return values, vecs


def _general_banded(operator: QuantizedOperator, shift: float) -> np.ndarray:
    """``solve_banded`` storage of ``A − shift·I``: ``ab[h − o, j] = A[j − o, j]``."""
    h = operator.halfband
    n = operator.dimension
    ab = np.zeros((2 * h + 1, n), dtype=complex)
    for o in range(-h, h + 1):
        band = operator.band(o)
        if o >= 0:
            ab[h - o, o:] = band
        else:
            ab[h - o, : n + o] = band
    ab[h] -= shift
    return ab


def _fix_phase(vector: np.ndarray) -> np.ndarray:
    big = np.flatnonzero(np.abs(vector) > PHASE_THRESHOLD)
    if len(big) == 0:
        return vector
    lead = vector[big[0]]
    return vector * (np.conj(lead) / abs(lead))


def _refine(operator: QuantizedOperator, value: float, vector: np.ndarray, scale: float) -> tuple[float, np.ndarray]:
    """Inverse iteration with a shift just below ``value``, then a Rayleigh quotient."""
    h = operator.halfband
    shift = value - max(scale, 1e-300) * 1e-9
    ab = _general_banded(operator, shift)
    x = vector.astype(complex)
    try:
        for _ in range(INVERSE_ITERATIONS):
            x = linalg.solve_banded((h, h), ab, x)
            x /= np.linalg.norm(x)
    except (linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"Inverse iteration failed for {operator!r}: {exc}") from exc
    rayleigh = float(np.vdot(x, operator.matvec(x)).real)
    return rayleigh, x


def _pair(
    operator: QuantizedOperator,
    index: int,
    values: np.ndarray,
    vector: np.ndarray,
    scale: float,
    refine: bool,
) -> tuple[float, np.ndarray, float | None]:
    value = float(values[index])
    if refine and operator.halfband > 0:
        value, vector = _refine(operator, value, vector, scale)
    gap = float(values[index + 1] - values[index]) if index + 1 < len(values) else None
    return value, vector, gap


def _lowest_in(operator: QuantizedOperator | np.ndarray) -> tuple[float, np.ndarray, float | None, float]:
    """Lowest eigenpair of a (possibly 1×1) operator with gap and norm scale."""
    if isinstance(operator, np.ndarray):
        return float(operator[0, 0].real), np.ones(1, dtype=complex), None, abs(float(operator[0, 0].real))
    op = _require_hermitian(operator)
    scale = _norm_bound(op)
    upper = min(1, op.dimension - 1)
    values, vecs = _solve(op, (0, upper), vectors=True)
    value, vector, gap = _pair(op, 0, values, vecs[:, 0], scale, refine=True)
    return value, vector, gap, scale


def ground_state(
    operator: QuantizedOperator,
    symmetry: Reflection | None = None,
    sector: int | None = None,
) -> EigenPair:
    """Lowest eigenpair, optionally inside a symmetry sector.

    With ``symmetry`` and no ``sector`` both sectors are solved and the lower
    ground energy wins (ties go to +1). Inside a sector, exponentially small
    tunnel splittings between sectors no longer make the problem degenerate.

    Args:
        operator: Hermitian operator.
        symmetry: Reflection commuting with the operator.
        sector: +1 or −1.

    Returns:
        The refined ground eigenpair with gap and degeneracy flag.
    """
    if sector is not None and symmetry is None:
        raise PreconditionError("A symmetry sector needs a symmetry")
    if symmetry is not None and sector is None:
        candidates = []
        for s in (1, -1):
            if symmetry.sector_basis(operator.n_sites, s).shape[1] > 0:
                candidates.append(ground_state(operator, symmetry, s))
        return min(candidates, key=lambda pair: (round(pair.value, 14), -(pair.sector or 0)))

    if symmetry is not None:
        reduced = symmetry.restrict(operator, sector)
        value, coords, gap, _ = _lowest_in(reduced)
        vector = symmetry.lift(coords, operator.n_sites, sector).coeffs
    else:
        value, vector, gap, _ = _lowest_in(operator)

    scale = max(_norm_bound(operator), np.finfo(float).tiny)
    vector = _fix_phase(vector / np.linalg.norm(vector))
    residual = float(np.linalg.norm(operator.matvec(vector) - value * vector))
    degenerate = gap is not None and gap < DEGENERACY_TOLERANCE * scale
    if degenerate:
        logger.warning("Ground state of %r is degenerate within %.3g (gap %.3g)", operator, DEGENERACY_TOLERANCE, gap)
    return EigenPair(
        value=value,
        vector=DickeVector(operator.n_sites, vector),
        index=0,
        gap=gap,
        degenerate=degenerate,
        residual=residual,
        sector=sector,
    )


def eigenpair(
    operator: QuantizedOperator,
    index: int | None = None,
    energy: float | None = None,
    symmetry: Reflection | None = None,
    sector: int | None = None,
) -> EigenPair:
    """Eigenpair selected by position or by nearest energy.

    Args:
        operator: Hermitian operator.
        index: Position in the ascending (sector) spectrum.
        energy: Target energy; the closest eigenvalue is taken.
        symmetry: Optional reflection defining sectors.
        sector: Sector to diagonalize in (requires ``symmetry``).

    Returns:
        The eigenpair as returned by the banded solver, with its residual.
    """
    if (index is None) == (energy is None):
        raise PreconditionError("Select an eigenpair by exactly one of index or energy")
    if sector is not None and symmetry is None:
        raise PreconditionError("A symmetry sector needs a symmetry")
    target: QuantizedOperator | np.ndarray = operator
    if symmetry is not None and sector is not None:
        target = symmetry.restrict(operator, sector)
    if isinstance(target, np.ndarray):
        values, vecs = np.array([target[0, 0].real]), np.ones((1, 1), dtype=complex)
        op = None
    else:
        op = _require_hermitian(target)
        values, vecs = _solve(op, None, vectors=True)
    position = int(index) if index is not None else int(np.argmin(np.abs(values - energy)))
    if not 0 <= position < len(values):
        raise PreconditionError(f"Eigen index {position} outside 0..{len(values) - 1}")
    scale = _norm_bound(operator)
    if op is None:
        value, vector, gap = float(values[0]), vecs[:, 0], None
    else:
        value, vector, gap = _pair(op, position, values, vecs[:, position], scale, refine=False)
    if symmetry is not None and sector is not None:
        vector = symmetry.lift(vector, operator.n_sites, sector).coeffs
    vector = _fix_phase(vector / np.linalg.norm(vector))
    residual = float(np.linalg.norm(operator.matvec(vector) - value * vector))
    below = float(values[position] - values[position - 1]) if position > 0 else None
    gaps = [g for g in (gap, below) if g is not None]
    min_gap = min(gaps) if gaps else None
    return EigenPair(
        value=value,
        vector=DickeVector(operator.n_sites, vector),
        index=position,
        gap=min_gap,
        degenerate=min_gap is not None and min_gap < DEGENERACY_TOLERANCE * max(scale, np.finfo(float).tiny),
        residual=residual,
        sector=sector,
    )


def operator_norm(operator: QuantizedOperator) -> float:
    """Spectral norm.

    Hermitian operators use their extreme eigenvalues; others the largest
    eigenvalue of ``A*A``, which is Hermitian with twice the halfband.
    """
    op = operator.trimmed()
    if op.scale == 0.0:
        return 0.0
    if op.is_hermitian(1e-13):
        values, _ = _solve(op.hermitized(), None, vectors=False)
        return float(max(abs(values[0]), abs(values[-1])))
    gram = (op.adjoint() @ op).hermitized().trimmed()
    values, _ = _solve(gram, None, vectors=False)
    return float(np.sqrt(max(values[-1], 0.0)))
