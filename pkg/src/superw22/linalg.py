"""Exact sparse linear algebra over the Gaussian rationals.

The workhorse is :func:`rref`, an incremental sparse reduced row echelon
form.  Rows are fed one at a time, reduced against the pivots found so far,
and the new pivot is cleared from every earlier row.  Because the reduced
echelon form of a row space is unique, the result does not depend on the
row order; pivots always sit at the lowest-index nonzero column of their
row, so the free columns (and hence the nullspace basis) are deterministic.

The systems assembled elsewhere in the package have three or four nonzeros
per row and a small nullity, which keeps the echelon rows short.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = ["Matrix", "Echelon", "rref", "rank", "nullspace", "span_rank"]

SparseRow = dict  # column -> Scalar, zeros never stored


@dataclass(frozen=True)
class Matrix:
    """A ``rows x cols`` matrix stored as a tuple of sparse rows."""

    rows: int
    cols: int
    data: tuple = field(repr=False)

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise ValueError("row count does not match data")
        for r in self.data:
            for c in r:
                if not 0 <= c < self.cols:
                    raise ValueError(f"column {c} outside 0..{self.cols - 1}")

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = []
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged dense matrix")
            data.append({c: s for c, v in enumerate(row) if (s := as_scalar(v))})
        return cls(len(data), cols, tuple(data))

    @classmethod
    def from_sparse(cls, rows: Iterable[Mapping[int, object]], cols: int) -> "Matrix":
        data = tuple({c: s for c, v in r.items() if (s := as_scalar(v))} for r in rows)
        return cls(len(data), cols, data)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple({i: ONE} for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple({} for _ in range(rows)))

    def __getitem__(self, rc: tuple[int, int]) -> Scalar:
        r, c = rc
        return self.data[r].get(c, ZERO)

    def __iter__(self) -> Iterator[dict]:
        return iter(self.data)

    def to_dense(self) -> list[list[Scalar]]:
        return [[r.get(c, ZERO) for c in range(self.cols)] for r in self.data]

    def matvec(self, v: Sequence) -> list[Scalar]:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        out = []
        for r in self.data:
            acc = ZERO
            for c, a in r.items():
                x = v[c]
                if x:
                    acc = acc + a * x
            out.append(acc)
        return out


class Echelon:
    """Incrementally maintained reduced row echelon form.

    ``pivots`` maps pivot column -> normalised row (pivot entry 1, every other
    pivot column absent).
    """

    def __init__(self, cols: int):
        self.cols = cols
        self.pivots: dict[int, SparseRow] = {}
        # column -> set of pivot columns whose row has a nonzero there
        self._occ: dict[int, set] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[int, Scalar]) -> SparseRow:
        """Reduce ``row`` modulo the current row space (returns a new dict)."""
        r = {c: v for c, v in row.items() if v}
        pivots = self.pivots
        todo = sorted(c for c in r if c in pivots)
        while todo:
            pc = todo.pop()
            coef = r.pop(pc, None)
            if not coef:
                continue
            for c, v in pivots[pc].items():
                if c == pc:
                    continue
                nv = r.get(c, ZERO) - coef * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        return r

    def add(self, row: Mapping[int, Scalar]) -> bool:
        """Insert a row; return True if it increased the rank."""
        r = self.reduce(row)
        if not r:
            return False
        pc = min(r)
        inv = r[pc].inverse()
        if inv != ONE:
            r = {c: v * inv for c, v in r.items()}
        r[pc] = ONE
        # clear the new pivot column from earlier rows
        for other_pc in sorted(self._occ.pop(pc, ())):
            orow = self.pivots[other_pc]
            coef = orow.pop(pc)
            for c, v in r.items():
                if c == pc:
                    continue
                nv = orow.get(c, ZERO) - coef * v
                if nv:
                    if c not in orow:
                        self._occ.setdefault(c, set()).add(other_pc)
                    orow[c] = nv
                elif c in orow:
                    del orow[c]
                    self._occ[c].discard(other_pc)
        self.pivots[pc] = r
        for c in r:
            if c != pc:
                self._occ.setdefault(c, set()).add(pc)
        return True

    def free_columns(self) -> list[int]:
        return [c for c in range(self.cols) if c not in self.pivots]

    def rows(self) -> list[SparseRow]:
        """Echelon rows ordered by pivot column."""
        return [self.pivots[c] for c in sorted(self.pivots)]

    def nullspace(self) -> list[list[Scalar]]:
        basis = []
        for fc in self.free_columns():
            v = [ZERO] * self.cols
            v[fc] = ONE
            for pc in self._occ.get(fc, ()):
                v[pc] = -self.pivots[pc][fc]
            basis.append(v)
        return basis


def rref(m: Matrix) -> Echelon:
    e = Echelon(m.cols)
    for row in m.data:
        e.add(row)
    return e


def rank(m: Matrix) -> int:
    return rref(m).rank


def nullspace(m: Matrix) -> list[list[Scalar]]:
    """Basis of ``{v : m v = 0}``, one vector per free column (ascending).

    Each basis vector has a 1 in its free column and 0 in every other free
    column.  An empty list means the nullspace is trivial.
    """
    return rref(m).nullspace()


def span_rank(vectors: Iterable[Sequence[Scalar]], length: int) -> Echelon:
    """Echelon form of the span of ``vectors`` (treated as rows)."""
    e = Echelon(length)
    for v in vectors:
        e.add({i: x for i, x in enumerate(v) if x})
    return e
