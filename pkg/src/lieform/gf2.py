"""Dense linear algebra over GF(2) on bit-packed rows.

Vectors are Python integers used as bitsets: bit ``i`` holds coordinate ``i``.
XOR on machine-word limbs is done by the interpreter, which keeps elimination
on matrices with a few thousand columns fast enough for every complex in this
package.

Echelon forms use the *lowest* set bit of a row as its pivot.  The canonical
form of a subspace is its fully reduced echelon basis sorted by pivot.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class DimensionError(ValueError):
    """Raised on shape or ambient-dimension mismatches."""


def _mask(n: int) -> int:
    return (1 << n) - 1


def bits_of(x: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def parity(x: int) -> int:
    return x.bit_count() & 1


@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise DimensionError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise DimensionError(f"payload exceeds length {self.length}")

    @classmethod
    def zero(cls, length: int) -> BitVector:
        return cls(length, 0)

    @classmethod
    def unit(cls, length: int, i: int) -> BitVector:
        if not 0 <= i < length:
            raise DimensionError(f"index {i} out of range for length {length}")
        return cls(length, 1 << i)

    @classmethod
    def from_list(cls, values: Sequence[int]) -> BitVector:
        bits = 0
        for i, v in enumerate(values):
            if v & 1:
                bits |= 1 << i
        return cls(len(values), bits)

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> BitVector:
        bits = 0
        for i in support:
            if not 0 <= i < length:
                raise DimensionError(f"index {i} out of range for length {length}")
            bits ^= 1 << i
        return cls(length, bits)

    def __add__(self, other: BitVector) -> BitVector:
        if self.length != other.length:
            raise DimensionError(f"length {self.length} != {other.length}")
        return BitVector(self.length, self.bits ^ other.bits)

    __sub__ = __add__

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __len__(self) -> int:
        return self.length

    def __bool__(self) -> bool:
        return self.bits != 0

    def dot(self, other: BitVector) -> int:
        if self.length != other.length:
            raise DimensionError(f"length {self.length} != {other.length}")
        return parity(self.bits & other.bits)

    def support(self) -> list[int]:
        return list(bits_of(self.bits))

    def weight(self) -> int:
        return self.bits.bit_count()

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]

    def __repr__(self) -> str:
        return "BitVector(" + "".join(map(str, self.to_list())) + ")"


@dataclass(frozen=True)
class BitMatrix:
    """Row-major GF(2) matrix; ``rows[i]`` is the bitset of row ``i``."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise DimensionError(f"expected {self.nrows} rows, got {len(self.rows)}")
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise DimensionError(f"row exceeds {self.ncols} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> BitMatrix:
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        packed = []
        for r in rows:
            if len(r) != ncols:
                raise DimensionError("ragged rows")
            packed.append(BitVector.from_list(r).bits)
        return cls(len(rows), ncols, tuple(packed))

    @classmethod
    def from_int_rows(cls, rows: Sequence[int], ncols: int) -> BitMatrix:
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def from_columns(cls, columns: Sequence[int], nrows: int) -> BitMatrix:
        return cls(len(columns), nrows, tuple(columns)).transpose()

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i])

    def column_bits(self, j: int) -> int:
        col = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                col |= 1 << i
        return col

    def columns(self) -> list[int]:
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            for j in bits_of(r):
                cols[j] |= 1 << i
        return cols

    def transpose(self) -> BitMatrix:
        return BitMatrix(self.ncols, self.nrows, tuple(self.columns()))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def apply(self, v: BitVector) -> BitVector:
        if v.length != self.ncols:
            raise DimensionError(f"vector length {v.length} != {self.ncols} columns")
        out = 0
        for i, r in enumerate(self.rows):
            if parity(r & v.bits):
                out |= 1 << i
        return BitVector(self.nrows, out)

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            return self.apply(other)
        if other.nrows != self.ncols:
            raise DimensionError(f"inner dimensions {self.ncols} != {other.nrows}")
        out = []
        for r in self.rows:
            acc = 0
            for k in bits_of(r):
                acc ^= other.rows[k]
            out.append(acc)
        return BitMatrix(self.nrows, other.ncols, tuple(out))

    def __add__(self, other: BitMatrix) -> BitMatrix:
        if self.shape != other.shape:
            raise DimensionError(f"shape {self.shape} != {other.shape}")
        return BitMatrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    def hstack(self, other: BitMatrix) -> BitMatrix:
        if self.nrows != other.nrows:
            raise DimensionError("row counts differ")
        return BitMatrix(
            self.nrows,
            self.ncols + other.ncols,
            tuple(a | (b << self.ncols) for a, b in zip(self.rows, other.rows)),
        )

    def to_lists(self) -> list[list[int]]:
        return [BitVector(self.ncols, r).to_list() for r in self.rows]


# ---------------------------------------------------------------------------
# elimination kernels on raw bitsets
# ---------------------------------------------------------------------------


def rank_of(vectors: Iterable[int]) -> int:
    """GF(2) rank of a family of bitsets."""
    pivots: dict[int, int] = {}
    for v in vectors:
        while v:
            low = v & -v
            p = pivots.get(low)
            if p is None:
                pivots[low] = v
                break
            v ^= p
    return len(pivots)


def reduced_echelon(vectors: Iterable[int]) -> list[int]:
    """Fully reduced echelon basis of the span, sorted by pivot (lowest bit)."""
    pivots: dict[int, int] = {}
    for v in vectors:
        while v:
            low = v & -v
            p = pivots.get(low)
            if p is None:
                pivots[low] = v
                break
            v ^= p
    order = sorted(pivots)
    basis = [pivots[k] for k in order]
    # back-substitution, processed from the highest pivot down
    for i in range(len(basis) - 1, -1, -1):
        piv = order[i]
        for j in range(i):
            if basis[j] & piv:
                basis[j] ^= basis[i]
    return basis


def reduce_against(v: int, basis: Sequence[int]) -> int:
    """Reduce ``v`` by a reduced echelon basis (as returned by ``reduced_echelon``)."""
    for b in basis:
        if v & b & -b:
            v ^= b
    return v


def column_kernel(columns: Sequence[int]) -> list[int]:
    """Basis of ``{x : XOR of columns[j] over bits j of x == 0}``.

    Each returned bitset is indexed by column position.
    """
    pivots: dict[int, tuple[int, int]] = {}
    kernel = []
    for j, col in enumerate(columns):
        v, combo = col, 1 << j
        while v:
            low = v & -v
            p = pivots.get(low)
            if p is None:
                pivots[low] = (v, combo)
                break
            v ^= p[0]
            combo ^= p[1]
        if not v:
            kernel.append(combo)
    return kernel


class EchelonBasis:
    """Incremental echelon basis, used for membership tests and extensions.

    Each stored row remembers which inserted vectors it is built from, so
    ``express`` can recover coordinates of a vector in the inserted family.
    """

    def __init__(self, track: bool = False):
        self._pivots: dict[int, tuple[int, int]] = {}
        self._count = 0
        self._track = track

    def __len__(self) -> int:
        return len(self._pivots)

    def reduce(self, v: int) -> tuple[int, int]:
        combo = 0
        while v:
            low = v & -v
            p = self._pivots.get(low)
            if p is None:
                break
            v ^= p[0]
            combo ^= p[1]
        return v, combo

    def add(self, v: int) -> bool:
        """Insert ``v``; returns True if it enlarged the span."""
        tag = 1 << self._count if self._track else 0
        self._count += 1
        r, combo = self.reduce(v)
        if not r:
            return False
        self._pivots[r & -r] = (r, combo ^ tag)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    def express(self, v: int) -> int | None:
        """Coordinates of ``v`` in the inserted family, or None if outside the span."""
        if not self._track:
            raise RuntimeError("basis built without tracking")
        r, combo = self.reduce(v)
        return None if r else combo

    def vectors(self) -> list[int]:
        return [p[0] for p in self._pivots.values()]


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """Subspace of GF(2)^ambient in canonical reduced echelon form."""

    ambient: int
    basis: tuple[int, ...]

    @classmethod
    def span(cls, ambient: int, vectors: Iterable[int | BitVector]) -> Subspace:
        raw = []
        for v in vectors:
            if isinstance(v, BitVector):
                if v.length != ambient:
                    raise DimensionError(f"vector length {v.length} != ambient {ambient}")
                v = v.bits
            elif v < 0 or v >> ambient:
                raise DimensionError(f"vector exceeds ambient dimension {ambient}")
            raw.append(v)
        return cls(ambient, tuple(reduced_echelon(raw)))

    @classmethod
    def zero(cls, ambient: int) -> Subspace:
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> Subspace:
        return cls(ambient, tuple(1 << i for i in range(ambient)))

    @classmethod
    def coordinate(cls, ambient: int, indices: Iterable[int]) -> Subspace:
        return cls.span(ambient, [1 << i for i in indices])

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [(b & -b).bit_length() - 1 for b in self.basis]

    def matrix(self) -> BitMatrix:
        return BitMatrix(len(self.basis), self.ambient, self.basis)

    def vectors(self) -> list[BitVector]:
        return [BitVector(self.ambient, b) for b in self.basis]

    def reduce(self, v: int) -> int:
        return reduce_against(v, self.basis)

    def coordinates(self, v: int) -> int | None:
        """Coordinates of ``v`` in ``basis`` (bit k = coefficient of basis[k])."""
        coords = 0
        for k, b in enumerate(self.basis):
            if v & b & -b:
                v ^= b
                coords |= 1 << k
        return None if v else coords

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __le__(self, other: Subspace) -> bool:
        _check_ambient(self, other)
        return all(other.reduce(b) == 0 for b in self.basis)


def _check_ambient(s: Subspace, t: Subspace) -> None:
    if s.ambient != t.ambient:
        raise DimensionError(f"ambient {s.ambient} != {t.ambient}")


def rank(m: BitMatrix) -> int:
    return rank_of(m.rows)


def nullspace(m: BitMatrix) -> Subspace:
    return Subspace.span(m.ncols, column_kernel(m.columns()))


def image(m: BitMatrix) -> Subspace:
    """Column space of ``m``."""
    return Subspace.span(m.nrows, m.columns())


def solve(m: BitMatrix, b: BitVector) -> BitVector | None:
    """Some ``x`` with ``m @ x == b``, or None when the system is inconsistent."""
    if b.length != m.nrows:
        raise DimensionError(f"right-hand side length {b.length} != {m.nrows} rows")
    basis = EchelonBasis(track=True)
    for col in m.columns():
        basis.add(col)
    combo = basis.express(b.bits)
    if combo is None:
        return None
    return BitVector(m.ncols, combo)


def sum_(s: Subspace, t: Subspace) -> Subspace:
    _check_ambient(s, t)
    return Subspace.span(s.ambient, s.basis + t.basis)


def intersect(s: Subspace, t: Subspace) -> Subspace:
    """Zassenhaus sum-intersection: reduce rows (s|s) and (t|0)."""
    _check_ambient(s, t)
    n = s.ambient
    rows = [b | (b << n) for b in s.basis] + list(t.basis)
    low = _mask(n)
    inter = [r >> n for r in reduced_echelon(rows) if not r & low]
    return Subspace.span(n, inter)


def contains(s: Subspace, v: BitVector | int) -> bool:
    if isinstance(v, BitVector):
        if v.length != s.ambient:
            raise DimensionError(f"vector length {v.length} != ambient {s.ambient}")
        v = v.bits
    return s.reduce(v) == 0


def quotient_dim(s: Subspace, t: Subspace) -> int:
    """dim(s/t); requires t to be a subspace of s."""
    _check_ambient(s, t)
    if not t <= s:
        raise DimensionError("quotient requires t to lie inside s")
    return s.dim - t.dim


def complement_basis(s: Subspace, t: Subspace) -> list[int]:
    """Vectors of ``s`` whose classes form a basis of s/t."""
    basis = EchelonBasis()
    for b in t.basis:
        basis.add(b)
    out = []
    for b in s.basis:
        if basis.add(b):
            out.append(b)
    return out
