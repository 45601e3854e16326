"""Sparse exact matrices over a field.

Entries are any exact field elements supporting ``+ - * /`` and truthiness
as a nonzero test (``FieldElem`` or ``fractions.Fraction``).  Rows are
stored as ``{column: value}`` dicts with no zero entries.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from .scalars import FieldElem

Vec = dict  # {index: nonzero entry}


class LinAlgError(ArithmeticError):
    pass


def _cost(x) -> int:
    if isinstance(x, FieldElem):
        return x._n.degree() + x._d.degree() + (0 if x._d.is_one() else 8)
    if isinstance(x, Fraction):
        return x.numerator.bit_length() + x.denominator.bit_length()
    return 0


class Matrix:
    """An ``nrows x ncols`` matrix; column ``j`` is the image of basis vector ``j``."""

    __slots__ = ("nrows", "ncols", "rows", "one")

    def __init__(self, nrows: int, ncols: int, rows: list[Vec], one):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows
        self.one = one

    # ---- construction -------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int, one) -> "Matrix":
        return cls(nrows, ncols, [{} for _ in range(nrows)], one)

    @classmethod
    def identity(cls, n: int, one) -> "Matrix":
        return cls(n, n, [{i: one} for i in range(n)], one)

    @classmethod
    def diag(cls, entries: Sequence, one) -> "Matrix":
        n = len(entries)
        return cls(n, n, [({i: e} if e else {}) for i, e in enumerate(entries)], one)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], one) -> "Matrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise LinAlgError("ragged matrix")
            rows.append({j: x for j, x in enumerate(r) if x})
        return cls(nrows, ncols, rows, one)

    @classmethod
    def from_columns(cls, nrows: int, cols: Sequence[Vec], one) -> "Matrix":
        rows: list[Vec] = [{} for _ in range(nrows)]
        for j, c in enumerate(cols):
            for i, x in c.items():
                rows[i][j] = x
        return cls(nrows, len(cols), rows, one)

    def copy(self) -> "Matrix":
        return Matrix(self.nrows, self.ncols, [dict(r) for r in self.rows], self.one)

    # ---- access -------------------------------------------------------
    def zero(self):
        return self.one - self.one

    def __getitem__(self, ij):
        i, j = ij
        x = self.rows[i].get(j)
        return self.zero() if x is None else x

    def to_dense(self) -> list[list]:
        z = self.zero()
        return [[r.get(j, z) for j in range(self.ncols)] for r in self.rows]

    def column(self, j: int) -> Vec:
        return {i: r[j] for i, r in enumerate(self.rows) if j in r}

    def columns(self) -> list[Vec]:
        cols: list[Vec] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                cols[j][i] = x
        return cols

    def transpose(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, self.columns(), self.one)

    def entries(self) -> Iterable[tuple[int, int, Any]]:
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                yield i, j, x

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_diagonal(self) -> bool:
        return all(set(r) <= {i} for i, r in enumerate(self.rows))

    # ---- arithmetic ---------------------------------------------------
    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise LinAlgError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix(self.nrows, self.ncols, [vec_add(a, b) for a, b in zip(self.rows, other.rows)], self.one)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix(
            self.nrows, self.ncols, [vec_axpy(a, b, -self.one) for a, b in zip(self.rows, other.rows)], self.one
        )

    def __neg__(self) -> "Matrix":
        return Matrix(self.nrows, self.ncols, [{j: -x for j, x in r.items()} for r in self.rows], self.one)

    def scale(self, c) -> "Matrix":
        if not c:
            return Matrix.zeros(self.nrows, self.ncols, self.one)
        return Matrix(self.nrows, self.ncols, [{j: c * x for j, x in r.items()} for r in self.rows], self.one)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise LinAlgError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        orows = other.rows
        for r in self.rows:
            acc: Vec = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    v = acc.get(j)
                    acc[j] = a * b if v is None else v + a * b
            out.append({j: x for j, x in acc.items() if x})
        return Matrix(self.nrows, other.ncols, out, self.one)

    def apply(self, v: Vec) -> Vec:
        """Matrix times the column vector ``v``."""
        out: Vec = {}
        for i, r in enumerate(self.rows):
            acc = None
            for j, x in v.items():
                a = r.get(j)
                if a is not None:
                    acc = a * x if acc is None else acc + a * x
            if acc:
                out[i] = acc
        return out

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            return inverse(self) ** (-k)
        result = Matrix.identity(self.nrows, self.one)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix) or self.shape != other.shape:
            return False
        for a, b in zip(self.rows, other.rows):
            if a.keys() != b.keys():
                return False
            for j, x in a.items():
                if x != b[j]:
                    return False
        return True

    __hash__ = None  # mutable container

    def map(self, f: Callable, one=None) -> "Matrix":
        rows = []
        for r in self.rows:
            nr = {}
            for j, x in r.items():
                y = f(x)
                if y:
                    nr[j] = y
            rows.append(nr)
        return Matrix(self.nrows, self.ncols, rows, f(self.one) if one is None else one)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        cidx = {c: k for k, c in enumerate(cols)}
        out = []
        for i in rows:
            out.append({cidx[j]: x for j, x in self.rows[i].items() if j in cidx})
        return Matrix(len(rows), len(cols), out, self.one)

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols}, nnz={sum(len(r) for r in self.rows)})"


# ---- sparse vectors ---------------------------------------------------
def vec_add(a: Vec, b: Vec) -> Vec:
    out = dict(a)
    for j, x in b.items():
        v = out.get(j)
        if v is None:
            out[j] = x
        else:
            s = v + x
            if s:
                out[j] = s
            else:
                del out[j]
    return out


def vec_axpy(a: Vec, b: Vec, c) -> Vec:
    """``a + c*b``."""
    out = dict(a)
    for j, x in b.items():
        y = c * x
        v = out.get(j)
        if v is None:
            if y:
                out[j] = y
        else:
            s = v + y
            if s:
                out[j] = s
            else:
                del out[j]
    return out


def vec_scale(a: Vec, c) -> Vec:
    if not c:
        return {}
    return {j: c * x for j, x in a.items()}


# ---- elimination ------------------------------------------------------
def rref(m: Matrix) -> tuple[list[Vec], list[int]]:
    """Reduced row echelon form: nonzero rows and their pivot columns.

    Pivots are chosen per column by lowest entry complexity to limit growth
    of rational-function entries.
    """
    rows = [dict(r) for r in m.rows if r]
    pivots: list[int] = []
    done: list[Vec] = []
    for col in range(m.ncols):
        best = None
        for k, r in enumerate(rows):
            x = r.get(col)
            if x is not None:
                c = _cost(x)
                if best is None or c < best[0]:
                    best = (c, k)
        if best is None:
            continue
        prow = rows.pop(best[1])
        inv = m.one / prow[col]
        prow = {j: inv * x for j, x in prow.items()}
        prow[col] = m.one
        for k, r in enumerate(rows):
            f = r.get(col)
            if f is not None:
                rows[k] = vec_axpy(r, prow, -f)
        for k, r in enumerate(done):
            f = r.get(col)
            if f is not None:
                done[k] = vec_axpy(r, prow, -f)
        done.append(prow)
        pivots.append(col)
        rows = [r for r in rows if r]
        if not rows:
            break
    return done, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel(m: Matrix) -> list[Vec]:
    """Basis of the right null space.

    Each basis vector has a 1 in its own free column and 0 in every other
    free column, so the free columns give coordinates directly.
    """
    red, pivots = rref(m)
    pset = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pset:
            continue
        v: Vec = {f: m.one}
        for row, p in zip(red, pivots):
            x = row.get(f)
            if x is not None:
                v[p] = -x
        basis.append(v)
    return basis


def stack(mats: Sequence[Matrix]) -> Matrix:
    ncols = mats[0].ncols
    rows: list[Vec] = []
    for m in mats:
        if m.ncols != ncols:
            raise LinAlgError("cannot stack matrices with different column counts")
        rows.extend(m.rows)
    return Matrix(len(rows), ncols, rows, mats[0].one)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise LinAlgError("inverse of a non-square matrix")
    n = m.nrows
    if m.is_diagonal():
        if any(not m.rows[i] for i in range(n)):
            raise LinAlgError("matrix is singular")
        return Matrix(n, n, [{i: m.one / m.rows[i][i]} for i in range(n)], m.one)
    aug = Matrix(n, 2 * n, [vec_add(r, {n + i: m.one}) for i, r in enumerate(m.rows)], m.one)
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise LinAlgError("matrix is singular")
    return Matrix(n, n, [{j - n: x for j, x in r.items() if j >= n} for r in red[:n]], m.one)


def is_invertible(m: Matrix) -> bool:
    return m.is_square() and rank(m) == m.nrows


class EchelonBasis:
    """Incrementally maintained basis of a subspace of ``F^n``.

    Stored vectors are normalised to 1 at distinct pivot positions and each
    is reduced against the pivots of the vectors stored before it.
    """

    def __init__(self, n: int, one):
        self.n = n
        self.one = one
        self.vectors: list[Vec] = []
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.vectors)

    def reduce(self, v: Vec) -> Vec:
        for b, p in zip(self.vectors, self.pivots):
            f = v.get(p)
            if f is not None:
                v = vec_axpy(v, b, -f)
        return v

    def add(self, v: Vec) -> bool:
        """Insert ``v``; return whether the span grew."""
        v = self.reduce(v)
        if not v:
            return False
        p = min(v, key=lambda j: (_cost(v[j]), j))
        inv = self.one / v[p]
        v = {j: inv * x for j, x in v.items()}
        v[p] = self.one
        self.vectors.append(v)
        self.pivots.append(p)
        return True

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)


def restrict(m: Matrix, source: Sequence[Vec], target: Sequence[Vec], target_pivots: Sequence[int]) -> Matrix:
    """Matrix of ``m`` from span(source) to span(target).

    ``target`` must be in reduced echelon form with the given pivots, so the
    coordinates of a vector are its entries at the pivots.  Raises if some
    image leaves the target span.
    """
    zero = m.one - m.one
    cols = []
    for b in source:
        img = m.apply(b)
        coords = {k: img[p] for k, p in enumerate(target_pivots) if p in img}
        recon: Vec = {}
        for k, c in coords.items():
            recon = vec_axpy(recon, target[k], c)
        if recon.keys() != img.keys() or any(recon[j] != img[j] for j in img):
            raise LinAlgError("image is not contained in the target subspace")
        cols.append(coords)
    return Matrix.from_columns(len(target), cols, m.one)
