"""Banded operators on the symmetric subspace and their file formats.

Storage layout: ``diagonals`` has shape ``(2h + 1, N + 1)`` where ``h`` is the
halfband. Row ``h + o`` holds the diagonal with offset ``o = col − row``; entry
``(j, j + o)`` sits at index ``min(j, j + o)``, so every diagonal is
left-aligned and zero-padded on the right.

Text format::

    # quantized-operator v1
    N <int>
    halfband <int>
    <o> <re_0> <im_0> <re_1> <im_1> ...      (one line per offset, −h..h)

Binary format: magic ``b"SSQO"``, ``uint16`` version, ``uint64`` payload size,
then the payload: ``uint64`` N, ``uint64`` halfband and the padded diagonals as
little-endian ``complex128``.
"""

from __future__ import annotations

import logging
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import sparse

from spin_semiclassics.quantization.dicke import DickeVector
from spin_semiclassics.utils.exceptions import PreconditionError, SerializationError

logger = logging.getLogger(__name__)

TEXT_HEADER = "# quantized-operator v1"
BINARY_MAGIC = b"SSQO"
BINARY_VERSION = 1
_PREFIX = struct.Struct("<4sHQ")
_HEADER = struct.Struct("<QQ")


@dataclass(frozen=True, eq=False)
class QuantizedOperator:
    """An (N+1)×(N+1) matrix stored by diagonals.

    Quantizations of real symbols are Hermitian; commutators and other
    intermediate results need not be.

    Attributes:
        n_sites: Number of spins N.
        diagonals: Read-only complex array of shape ``(2 * halfband + 1, N + 1)``.
    """

    n_sites: int
    diagonals: np.ndarray

    def __post_init__(self) -> None:
        """Validate the band layout and freeze storage."""
        bands = np.array(self.diagonals, dtype=complex)
        if bands.ndim != 2 or bands.shape[1] != self.n_sites + 1 or bands.shape[0] % 2 != 1:
            raise PreconditionError(
                f"Band storage for N={self.n_sites} must have shape (2h+1, {self.n_sites + 1}), got {bands.shape}"
            )
        h = bands.shape[0] // 2
        if h > self.n_sites:
            raise PreconditionError(f"Halfband {h} exceeds N={self.n_sites}")
        for o in range(-h, h + 1):
            bands[h + o, self.n_sites + 1 - abs(o) :] = 0.0
        bands.setflags(write=False)
        object.__setattr__(self, "diagonals", bands)

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def zeros(cls, n_sites: int, halfband: int = 0) -> QuantizedOperator:
        """Zero operator with the given band width."""
        return cls(n_sites, np.zeros((2 * halfband + 1, n_sites + 1), dtype=complex))

    @classmethod
    def identity(cls, n_sites: int) -> QuantizedOperator:
        """Identity on the (N+1)-dimensional space."""
        return cls(n_sites, np.ones((1, n_sites + 1), dtype=complex))

    @classmethod
    def diagonal(cls, values: np.ndarray) -> QuantizedOperator:
        """Diagonal operator from its N+1 diagonal entries."""
        values = np.asarray(values)
        return cls(len(values) - 1, values[None, :])

    @classmethod
    def from_bands(cls, n_sites: int, bands: dict[int, np.ndarray]) -> QuantizedOperator:
        """Build from ``offset -> diagonal`` (each of length ``N + 1 − |offset|``)."""
        h = max((abs(o) for o in bands), default=0)
        store = np.zeros((2 * h + 1, n_sites + 1), dtype=complex)
        for o, values in bands.items():
            values = np.asarray(values)
            if values.shape != (n_sites + 1 - abs(o),):
                raise PreconditionError(f"Diagonal {o} needs {n_sites + 1 - abs(o)} entries, got {values.shape}")
            store[h + o, : len(values)] = values
        return cls(n_sites, store)

    @classmethod
    def from_sparse(cls, matrix: sparse.spmatrix | np.ndarray, tol: float = 0.0) -> QuantizedOperator:
        """Build from a square sparse or dense matrix.

        Args:
            matrix: Square matrix of size N+1.
            tol: Entries with magnitude at most ``tol`` do not widen the band.

        Returns:
            The banded operator with the narrowest halfband holding every
            entry above ``tol``.
        """
        coo = sparse.coo_matrix(matrix)
        if coo.shape[0] != coo.shape[1] or coo.shape[0] < 2:
            raise PreconditionError(f"Expected a square matrix of size at least 2, got {coo.shape}")
        n_sites = coo.shape[0] - 1
        mask = np.abs(coo.data) > tol
        rows, cols, data = coo.row[mask], coo.col[mask], coo.data[mask]
        offsets = cols - rows
        h = int(np.abs(offsets).max()) if len(offsets) else 0
        store = np.zeros((2 * h + 1, n_sites + 1), dtype=complex)
        np.add.at(store, (h + offsets, np.minimum(rows, cols)), data)
        return cls(n_sites, store)

    # ------------------------------------------------------------------
    # Views
    # ------------------------------------------------------------------

    @property
    def halfband(self) -> int:
        """Largest stored |offset|."""
        return self.diagonals.shape[0] // 2

    @property
    def dimension(self) -> int:
        """N + 1."""
        return self.n_sites + 1

    @property
    def scale(self) -> float:
        """Largest entry magnitude."""
        return float(np.abs(self.diagonals).max(initial=0.0))

    @property
    def is_real(self) -> bool:
        """Whether every stored entry has exactly zero imaginary part."""
        return not np.any(self.diagonals.imag)

    def band(self, offset: int) -> np.ndarray:
        """Diagonal with the given offset (length ``N + 1 − |offset|``)."""
        h = self.halfband
        length = self.n_sites + 1 - abs(offset)
        if abs(offset) > h:
            return np.zeros(max(length, 0), dtype=complex)
        return self.diagonals[h + offset, :length]

    def entry(self, row: int, col: int) -> complex:
        """Matrix entry ``(row, col)``."""
        offset = col - row
        if abs(offset) > self.halfband:
            return 0j
        return complex(self.diagonals[self.halfband + offset, min(row, col)])

    def effective_halfband(self, tol: float = 0.0) -> int:
        """Largest offset carrying an entry above ``tol`` in magnitude."""
        h = self.halfband
        for o in range(h, 0, -1):
            if np.abs(self.diagonals[h + o]).max() > tol or np.abs(self.diagonals[h - o]).max() > tol:
                return o
        return 0

    def to_sparse(self) -> sparse.csr_matrix:
        """CSR matrix."""
        h = self.halfband
        offsets = list(range(-h, h + 1))
        return sparse.diags(
            [self.band(o) for o in offsets], offsets, shape=(self.dimension, self.dimension), format="csr"
        )

    def to_dense(self) -> np.ndarray:
        """Dense complex matrix."""
        return self.to_sparse().toarray()

    def upper_banded(self) -> np.ndarray:
        """LAPACK upper band storage: ``ab[h − o, o + i] = A[i, i + o]``."""
        h = self.halfband
        ab = np.zeros((h + 1, self.dimension), dtype=complex)
        for o in range(h + 1):
            ab[h - o, o:] = self.band(o)
        return ab

    # ------------------------------------------------------------------
    # Algebra
    # ------------------------------------------------------------------

    def with_halfband(self, halfband: int) -> QuantizedOperator:
        """Same matrix stored with a wider band."""
        h = self.halfband
        if halfband < h:
            raise PreconditionError(f"Cannot narrow halfband {h} to {halfband}; use trimmed()")
        store = np.zeros((2 * halfband + 1, self.dimension), dtype=complex)
        store[halfband - h : halfband + h + 1] = self.diagonals
        return QuantizedOperator(self.n_sites, store)

    def trimmed(self, tol: float = 0.0) -> QuantizedOperator:
        """Drop outer diagonals whose entries are all at most ``tol``."""
        h = self.halfband
        keep = self.effective_halfband(tol)
        return QuantizedOperator(self.n_sites, self.diagonals[h - keep : h + keep + 1])

    def _aligned(self, other: QuantizedOperator) -> tuple[np.ndarray, np.ndarray]:
        if other.n_sites != self.n_sites:
            raise PreconditionError(f"Operator sizes differ: N={self.n_sites} vs N={other.n_sites}")
        h = max(self.halfband, other.halfband)
        return self.with_halfband(h).diagonals, other.with_halfband(h).diagonals

    def __add__(self, other: QuantizedOperator) -> QuantizedOperator:
        a, b = self._aligned(other)
        return QuantizedOperator(self.n_sites, a + b)

    def __sub__(self, other: QuantizedOperator) -> QuantizedOperator:
        a, b = self._aligned(other)
        return QuantizedOperator(self.n_sites, a - b)

    def __neg__(self) -> QuantizedOperator:
        return QuantizedOperator(self.n_sites, -self.diagonals)

    def __mul__(self, scalar: complex) -> QuantizedOperator:
        return QuantizedOperator(self.n_sites, self.diagonals * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar: complex) -> QuantizedOperator:
        return QuantizedOperator(self.n_sites, self.diagonals / scalar)

    def __matmul__(self, other: QuantizedOperator | DickeVector | np.ndarray):
        if isinstance(other, QuantizedOperator):
            if other.n_sites != self.n_sites:
                raise PreconditionError(f"Operator sizes differ: N={self.n_sites} vs N={other.n_sites}")
            return QuantizedOperator.from_sparse(self.to_sparse() @ other.to_sparse())
        if isinstance(other, DickeVector):
            return DickeVector(self.n_sites, self.matvec(other.coeffs))
        return self.matvec(other)

    def matvec(self, vector: np.ndarray) -> np.ndarray:
        """Apply the operator to a coefficient vector (or to the columns of a matrix)."""
        x = np.asarray(vector)
        if x.shape[0] != self.dimension:
            raise PreconditionError(f"Vector length {x.shape[0]} does not match dimension {self.dimension}")
        extra = (slice(None),) + (None,) * (x.ndim - 1)
        out = np.zeros(x.shape, dtype=complex)
        n1 = self.dimension
        for o in range(-self.halfband, self.halfband + 1):
            d = self.band(o)
            if o >= 0:
                out[: n1 - o] += d[extra] * x[o:]
            else:
                out[-o:] += d[extra] * x[: n1 + o]
        return out

    def adjoint(self) -> QuantizedOperator:
        """Conjugate transpose (offset ``o`` becomes ``−o``, same storage index)."""
        return QuantizedOperator(self.n_sites, np.conj(self.diagonals[::-1]))

    def hermitized(self) -> QuantizedOperator:
        """Hermitian part ``(A + A*)/2``."""
        return QuantizedOperator(self.n_sites, 0.5 * (self.diagonals + np.conj(self.diagonals[::-1])))

    def commutator(self, other: QuantizedOperator) -> QuantizedOperator:
        """``[self, other] = self·other − other·self``."""
        return (self @ other) - (other @ self)

    def is_hermitian(self, tol: float = 1e-13) -> bool:
        """Hermiticity within ``tol`` relative to the largest entry."""
        diff = np.abs(self.diagonals - np.conj(self.diagonals[::-1])).max(initial=0.0)
        return diff <= tol * max(self.scale, 1.0)

    def trace(self) -> complex:
        """Sum of the diagonal."""
        return complex(self.band(0).sum())

    def expectation(self, vector: DickeVector) -> complex:
        """``⟨v, A v⟩``."""
        return complex(np.vdot(vector.coeffs, self.matvec(vector.coeffs)))

    def max_abs_difference(self, other: QuantizedOperator) -> float:
        """Largest entrywise deviation."""
        a, b = self._aligned(other)
        return float(np.abs(a - b).max(initial=0.0))

    def allclose(self, other: QuantizedOperator, atol: float = 1e-12) -> bool:
        """Entrywise comparison."""
        return self.max_abs_difference(other) <= atol

    def __repr__(self) -> str:
        return f"QuantizedOperator(N={self.n_sites}, halfband={self.halfband})"

    # ------------------------------------------------------------------
    # Text format
    # ------------------------------------------------------------------

    def to_text(self) -> str:
        """Render in the documented text format."""
        lines = [TEXT_HEADER, f"N {self.n_sites}", f"halfband {self.halfband}"]
        for o in range(-self.halfband, self.halfband + 1):
            values = " ".join(f"{v.real!r} {v.imag!r}" for v in self.band(o).tolist())
            lines.append(f"{o} {values}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> QuantizedOperator:
        """Parse the documented text format.

        Raises:
            SerializationError: On any malformed header or diagonal line.
        """
        lines = [line for line in text.splitlines() if line.strip()]
        if len(lines) < 3 or lines[0].strip() != TEXT_HEADER:
            raise SerializationError("Missing quantized-operator text header")
        try:
            n_key, n_value = lines[1].split()
            h_key, h_value = lines[2].split()
            if n_key != "N" or h_key != "halfband":
                raise ValueError("header keys")
            n_sites, halfband = int(n_value), int(h_value)
            if len(lines) != 3 + 2 * halfband + 1:
                raise ValueError(f"expected {2 * halfband + 1} diagonal lines, got {len(lines) - 3}")
            bands: dict[int, np.ndarray] = {}
            for line in lines[3:]:
                fields = line.split()
                offset = int(fields[0])
                raw = np.array([float(v) for v in fields[1:]])
                bands[offset] = raw[0::2] + 1j * raw[1::2]
        except ValueError as exc:
            raise SerializationError(f"Malformed quantized-operator text: {exc}") from exc
        if sorted(bands) != list(range(-halfband, halfband + 1)):
            raise SerializationError("Diagonal offsets do not cover -halfband..halfband")
        try:
            return cls.from_bands(n_sites, bands).with_halfband(halfband)
        except PreconditionError as exc:
            raise SerializationError(f"Malformed quantized-operator text: {exc}") from exc

    # ------------------------------------------------------------------
    # Binary format
    # ------------------------------------------------------------------

    def to_bytes(self) -> bytes:
        """Encode in the size-prefixed binary format."""
        payload = _HEADER.pack(self.n_sites, self.halfband) + self.diagonals.astype("<c16").tobytes()
        return _PREFIX.pack(BINARY_MAGIC, BINARY_VERSION, len(payload)) + payload

    @classmethod
    def from_bytes(cls, blob: bytes) -> QuantizedOperator:
        """Decode the binary format.

        Raises:
            SerializationError: On a bad magic, version or size.
        """
        if len(blob) < _PREFIX.size + _HEADER.size:
            raise SerializationError("Binary operator payload is truncated")
        magic, version, size = _PREFIX.unpack_from(blob)
        if magic != BINARY_MAGIC:
            raise SerializationError(f"Bad magic {magic!r}, expected {BINARY_MAGIC!r}")
        if version != BINARY_VERSION:
            raise SerializationError(f"Unsupported operator format version {version}")
        if len(blob) != _PREFIX.size + size:
            raise SerializationError(f"Size prefix {size} does not match payload length {len(blob) - _PREFIX.size}")
        n_sites, halfband = _HEADER.unpack_from(blob, _PREFIX.size)
        start = _PREFIX.size + _HEADER.size
        expected = (2 * halfband + 1) * (n_sites + 1) * 16
        if len(blob) - start != expected:
            raise SerializationError(f"Band data has {len(blob) - start} bytes, expected {expected}")
        bands = np.frombuffer(blob, dtype="<c16", offset=start).reshape(2 * halfband + 1, n_sites + 1)
        return cls(int(n_sites), bands.astype(complex))


def write_operator(operator: QuantizedOperator, path: Path, binary: bool = False) -> Path:
    """Write an operator in the text or binary format."""
    path.parent.mkdir(parents=True, exist_ok=True)
    if binary:
        path.write_bytes(operator.to_bytes())
    else:
        path.write_text(operator.to_text(), encoding="utf-8")
    logger.info("Wrote %r to %s", operator, path)
    return path


def read_operator(path: Path) -> QuantizedOperator:
    """Read an operator, sniffing the binary magic."""
    blob = path.read_bytes()
    if blob.startswith(BINARY_MAGIC):
        return QuantizedOperator.from_bytes(blob)
    return QuantizedOperator.from_text(blob.decode("utf-8"))
