"""Bit-packed linear algebra over GF(2).

Vectors and matrix rows are Python ints used as bitsets: coordinate ``i``
lives in bit ``i``.  Everything here is pure and immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


def _mask(length: int) -> int:
    return (1 << length) - 1


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def iter_bits(x: int):
    """Yield the indices of set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits set beyond vector length")

    @classmethod
    def from_list(cls, entries: Sequence[int]) -> "BitVector":
        bits = 0
        for i, e in enumerate(entries):
            if e & 1:
                bits |= 1 << i
        return cls(len(entries), bits)

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, 0)

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    __add__ = __xor__

    def dot(self, other: "BitVector") -> int:
        if self.length != other.length:
            raise ValueError("length mismatch")
        return parity(self.bits & other.bits)

    def support(self) -> list[int]:
        return list(iter_bits(self.bits))

    def is_zero(self) -> bool:
        return self.bits == 0

    def __str__(self) -> str:
        return "".join(str(b) for b in self.to_list())


@dataclass(frozen=True)
class BitMatrix:
    """Dense matrix whose rows are packed ints of width ``cols``."""

    rows: int
    cols: int
    data: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.data)}")
        limit = self.cols
        for r in self.data:
            if r < 0 or r >> limit:
                raise ValueError("row wider than cols")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        if cols is None:
            cols = len(entries[0]) if entries else 0
        data = tuple(BitVector.from_list(row).bits for row in entries)
        return cls(len(entries), cols, data)

    @classmethod
    def from_rows(cls, rows: Iterable[BitVector], cols: int) -> "BitMatrix":
        data = []
        for v in rows:
            if v.length != cols:
                raise ValueError("row length differs from cols")
            data.append(v.bits)
        return cls(len(data), cols, tuple(data))

    @classmethod
    def from_columns(cls, columns: Sequence[int], rows: int) -> "BitMatrix":
        """Build a ``rows x len(columns)`` matrix from packed column ints."""
        data = [0] * rows
        for c, col in enumerate(columns):
            for r in iter_bits(col):
                if r >= rows:
                    raise ValueError("column taller than rows")
                data[r] |= 1 << c
        return cls(rows, len(columns), tuple(data))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.data[i])

    @property
    def row_vectors(self) -> list[BitVector]:
        return [BitVector(self.cols, r) for r in self.data]

    def column(self, j: int) -> BitVector:
        bits = 0
        for i, r in enumerate(self.data):
            if (r >> j) & 1:
                bits |= 1 << i
        return BitVector(self.rows, bits)

    def to_lists(self) -> list[list[int]]:
        return [BitVector(self.cols, r).to_list() for r in self.data]

    def matvec(self, x: BitVector) -> BitVector:
        if x.length != self.cols:
            raise ValueError("dimension mismatch")
        bits = 0
        for i, r in enumerate(self.data):
            if parity(r & x.bits):
                bits |= 1 << i
        return BitVector(self.rows, bits)

    def vecmat(self, y: BitVector) -> BitVector:
        """Left product ``y^T A``."""
        if y.length != self.rows:
            raise ValueError("dimension mismatch")
        acc = 0
        for i in iter_bits(y.bits):
            acc ^= self.data[i]
        return BitVector(self.cols, acc)


@dataclass(frozen=True)
class RrefResult:
    matrix: BitMatrix
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _eliminate(rows: list[int], ncols: int, track: list[int] | None = None) -> list[int]:
    """In-place Gauss-Jordan on packed rows, pivoting on columns ``< ncols``.

    Pivot rows are moved to the top in pivot order.  ``track`` receives the
    same row operations when given.
    """
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        bit = 1 << col
        pr = next((r for r in range(top, len(rows)) if rows[r] & bit), None)
        if pr is None:
            continue
        rows[top], rows[pr] = rows[pr], rows[top]
        if track is not None:
            track[top], track[pr] = track[pr], track[top]
        prow = rows[top]
        for r in range(len(rows)):
            if r != top and rows[r] & bit:
                rows[r] ^= prow
                if track is not None:
                    track[r] ^= track[top]
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return pivots


def rref(m: BitMatrix) -> RrefResult:
    rows = list(m.data)
    pivots = _eliminate(rows, m.cols)
    return RrefResult(BitMatrix(m.rows, m.cols, tuple(rows)), tuple(pivots))


def rank(m: BitMatrix) -> int:
    return rref(m).rank


@dataclass(frozen=True)
class SolveResult:
    """Outcome of ``solve``.

    ``x`` is None for an inconsistent system; then ``certificate`` is a row
    combination ``y`` with ``y^T A = 0`` and ``y . b = 1``, and
    ``inconsistent_row`` is the index of the offending row in the reduced
    augmented system.
    """

    x: BitVector | None
    nullspace: tuple[BitVector, ...]
    certificate: BitVector | None = None
    inconsistent_row: int | None = None

    @property
    def consistent(self) -> bool:
        return self.x is not None


def nullspace(m: BitMatrix) -> list[BitVector]:
    res = rref(m)
    return _nullspace_from(res.matrix.data, res.pivots, m.cols)


def _nullspace_from(rows: Sequence[int], pivots: Sequence[int], ncols: int) -> list[BitVector]:
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for r, p in enumerate(pivots):
            if (rows[r] >> free) & 1:
                v |= 1 << p
        basis.append(BitVector(ncols, v))
    return basis


def solve(a: BitMatrix, b: BitVector) -> SolveResult:
    """Solve ``a x = b``; free variables are set to zero."""
    if b.length != a.rows:
        raise ValueError("b.length must equal a.rows")
    n = a.cols
    rows = [r | (((b.bits >> i) & 1) << n) for i, r in enumerate(a.data)]
    track = [1 << i for i in range(a.rows)]
    pivots = _eliminate(rows, n, track)
    coeff_mask = _mask(n)
    for r in range(len(pivots), len(rows)):
        if rows[r] >> n:
            # every row past the pivots is zero on the coefficient side
            return SolveResult(
                None,
                tuple(_nullspace_from([x & coeff_mask for x in rows], pivots, n)),
                certificate=BitVector(a.rows, track[r]),
                inconsistent_row=r,
            )
    x = 0
    for r, p in enumerate(pivots):
        if rows[r] >> n:
            x |= 1 << p
    null = _nullspace_from([x_ & coeff_mask for x_ in rows], pivots, n)
    return SolveResult(BitVector(n, x), tuple(null))


__all__ = [
    "BitVector",
    "BitMatrix",
    "RrefResult",
    "SolveResult",
    "iter_bits",
    "nullspace",
    "parity",
    "rank",
    "rref",
    "solve",
]
