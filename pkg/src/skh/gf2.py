"""Bit-packed linear algebra over GF(2).

Vectors are Python ints used as bitsets (bit i = coordinate i).  A matrix
stores its columns as ints; column c holds the image of source basis
vector c, so composition and "apply to a vector" are XOR folds.
"""

from __future__ import annotations

from dataclasses import dataclass


def lowest_bit(v: int) -> int:
    """Index of the lowest set bit of a nonzero int."""
    return (v & -v).bit_length() - 1


def iter_bits(v: int):
    """Yield indices of the set bits of v, lowest first."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


@dataclass(frozen=True)
class F2Matrix:
    """GF(2) matrix with ``nrows`` rows and ``len(cols)`` columns."""

    nrows: int
    cols: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cols", tuple(self.cols))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> F2Matrix:
        return cls(nrows, (0,) * ncols)

    @classmethod
    def identity(cls, n: int) -> F2Matrix:
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows) -> F2Matrix:
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [0] * ncols
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for c, e in enumerate(row):
                if e & 1:
                    cols[c] |= 1 << r
        return cls(nrows, tuple(cols))

    @property
    def ncols(self) -> int:
        return len(self.cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, len(self.cols))

    def entry(self, r: int, c: int) -> int:
        return (self.cols[c] >> r) & 1

    def apply(self, vec: int) -> int:
        """Image of a source bitset under the matrix."""
        out = 0
        for c in iter_bits(vec):
            out ^= self.cols[c]
        return out

    def __matmul__(self, other: F2Matrix) -> F2Matrix:
        if other.nrows != self.ncols:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        return F2Matrix(self.nrows, tuple(self.apply(c) for c in other.cols))

    def __add__(self, other: F2Matrix) -> F2Matrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} + {other.shape}")
        return F2Matrix(self.nrows, tuple(a ^ b for a, b in zip(self.cols, other.cols)))

    def is_zero(self) -> bool:
        return not any(self.cols)

    def rows(self) -> list[int]:
        out = [0] * self.nrows
        for c, col in enumerate(self.cols):
            for r in iter_bits(col):
                out[r] |= 1 << c
        return out

    def __str__(self) -> str:
        return "\n".join(
            "".join(str(self.entry(r, c)) for c in range(self.ncols))
            for r in range(self.nrows)
        )


class Eliminator:
    """Incremental Gaussian elimination with combination tracking.

    Pivots are chosen at the lowest set bit.  ``reduce`` returns the
    residual of a vector against the pivots seen so far together with the
    bitset of input indices that produced it.
    """

    def __init__(self):
        self.pivots: dict[int, tuple[int, int]] = {}
        self.count = 0

    def reduce(self, vec: int, combo: int = 0) -> tuple[int, int]:
        while vec:
            lead = lowest_bit(vec)
            hit = self.pivots.get(lead)
            if hit is None:
                break
            vec ^= hit[0]
            combo ^= hit[1]
        return vec, combo

    def add(self, vec: int, combo: int = 0) -> tuple[int, int]:
        """Reduce and, if independent, install a new pivot."""
        vec, combo = self.reduce(vec, combo)
        if vec:
            self.pivots[lowest_bit(vec)] = (vec, combo)
            self.count += 1
        return vec, combo

    @property
    def rank(self) -> int:
        return self.count


def rank(m: F2Matrix) -> int:
    elim = Eliminator()
    for col in m.cols:
        elim.add(col)
    return elim.rank


def kernel_basis(m: F2Matrix) -> list[int]:
    """Source-coordinate bitsets spanning the kernel, deterministic order."""
    elim = Eliminator()
    out = []
    for c, col in enumerate(m.cols):
        vec, combo = elim.add(col, 1 << c)
        if not vec:
            out.append(combo)
    return out


def image_basis(m: F2Matrix) -> list[int]:
    """Independent columns (as target bitsets) spanning the image."""
    elim = Eliminator()
    out = []
    for col in m.cols:
        vec, _ = elim.add(col)
        if vec:
            out.append(col)
    return out


class Solver:
    """Solve ``sum of chosen columns == b`` over GF(2) for a fixed column list."""

    def __init__(self, columns):
        self._elim = Eliminator()
        for c, col in enumerate(columns):
            self._elim.add(col, 1 << c)

    def solve(self, b: int) -> int | None:
        """Bitset of column indices reproducing b, or None if unsolvable."""
        vec, combo = self._elim.reduce(b)
        if vec:
            return None
        return combo
