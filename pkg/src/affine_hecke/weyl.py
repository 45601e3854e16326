"""Weyl group elements as integer matrices acting on omega-coordinates."""

from __future__ import annotations

import os
from functools import lru_cache
from typing import Iterable, Sequence

from .roots import RootSystem, Vector

DEFAULT_CAP = 50_000


class WeylCapError(RuntimeError):
    """Enumeration would exceed the configured element cap."""


def default_cap() -> int:
    env = os.environ.get("HECKE_WEYL_CAP")
    if env:
        try:
            cap = int(env)
        except ValueError:
            raise ValueError(f"HECKE_WEYL_CAP must be an integer, got {env!r}") from None
        if cap < 1:
            raise ValueError("HECKE_WEYL_CAP must be positive")
        return cap
    return DEFAULT_CAP


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _matvec(a, v):
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)


def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


class WeylElement:
    """An element ``w`` of W, stored as its action on the weight lattice.

    Two elements are equal exactly when their action matrices agree.  The
    lexicographically least reduced word is computed on construction from the
    orbit of ``rho = (1, ..., 1)``.
    """

    __slots__ = ("rs", "matrix", "word", "_inv", "_inversions", "_hash")

    def __init__(self, rs: RootSystem, matrix):
        self.rs = rs
        self.matrix = tuple(tuple(r) for r in matrix)
        self.word = _reduced_word(rs, self.matrix)
        self._inv = None
        self._inversions = None
        self._hash = hash(self.matrix)

    @classmethod
    def identity(cls, rs: RootSystem) -> "WeylElement":
        return cls(rs, _identity(rs.rank))

    @classmethod
    def simple(cls, rs: RootSystem, i: int) -> "WeylElement":
        return cls(rs, _simple_matrix(rs, i))

    @classmethod
    def from_word(cls, rs: RootSystem, word: Iterable[int]) -> "WeylElement":
        m = _identity(rs.rank)
        for i in word:
            m = _matmul(m, _simple_matrix(rs, i))
        return cls(rs, m)

    @property
    def length(self) -> int:
        return len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return WeylElement(self.rs, _matmul(self.matrix, other.matrix))
        return NotImplemented

    def act(self, lam: Sequence[int]) -> Vector:
        return _matvec(self.matrix, lam)

    def inverse(self) -> "WeylElement":
        if self._inv is None:
            self._inv = WeylElement.from_word(self.rs, reversed(self.word))
            self._inv._inv = self
        return self._inv

    def inversion_mask(self) -> int:
        """Bitmask over positive-root indices of ``R(w) = {a > 0 : w a < 0}``."""
        if self._inversions is None:
            mask = 0
            for r in self.rs.positive_roots:
                img = self.rs.lookup_omega(self.act(r.omega))
                if img.sign < 0:
                    mask |= 1 << r.index
            self._inversions = mask
        return self._inversions

    def is_left_descent(self, i: int) -> bool:
        """``l(s_i w) < l(w)``, i.e. ``w^-1(alpha_i) < 0``."""
        return _sends_negative(self.inverse(), self.rs, i)

    def is_right_descent(self, i: int) -> bool:
        """``l(w s_i) < l(w)``, i.e. ``w(alpha_i) < 0``."""
        return _sends_negative(self, self.rs, i)

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"WeylElement({word_label(self.word)})"

    def sort_key(self):
        return (len(self.word), self.word)


def _sends_negative(w: WeylElement, rs: RootSystem, i: int) -> bool:
    return rs.lookup_omega(w.act(rs.simple_root(i))).sign < 0


@lru_cache(maxsize=None)
def _simple_matrix(rs: RootSystem, i: int):
    n = rs.rank
    a = rs.simple_root(i)
    # s_i(lam) = lam - lam_i * alpha_i
    return tuple(
        tuple(int(r == c) - (a[r] if c == i else 0) for c in range(n)) for r in range(n)
    )


def _reduced_word(rs: RootSystem, matrix) -> tuple[int, ...]:
    n = rs.rank
    v = list(_matvec(matrix, (1,) * n))
    word = []
    while True:
        for i in range(n):
            if v[i] < 0:
                break
        else:
            return tuple(word)
        word.append(i)
        a = rs.simple_root(i)
        k = v[i]
        for j in range(n):
            v[j] -= k * a[j]


def word_label(word: Sequence[int]) -> str:
    """``s2s1`` style label, 1-based; the identity is ``1``."""
    return "".join(f"s{i + 1}" for i in word) or "1"


def inversion_set(rs: RootSystem, w: WeylElement) -> frozenset[int]:
    """``R(w)`` as a set of positive-root indices."""
    mask = w.inversion_mask()
    return frozenset(k for k in range(rs.n_positive) if mask >> k & 1)


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for k in indices:
        m |= 1 << k
    return m


class WeylGroup:
    """The enumerated group with right-multiplication tables."""

    def __init__(self, rs: RootSystem, cap: int | None = None):
        cap = default_cap() if cap is None else cap
        if cap < 1:
            raise ValueError("cap must be positive")
        self.rs = rs
        n = rs.rank
        e = WeylElement.identity(rs)
        seen = {e.matrix}
        elements = [e]
        frontier = [e]
        gens = [_simple_matrix(rs, i) for i in range(n)]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(n):
                    m = _matmul(w.matrix, gens[i])
                    if m in seen:
                        continue
                    seen.add(m)
                    x = WeylElement(rs, m)
                    elements.append(x)
                    nxt.append(x)
                    if len(elements) > cap:
                        raise WeylCapError(
                            f"Weyl group of {rs.kind} exceeds cap {cap} "
                            f"({len(elements)} elements generated so far)"
                        )
            frontier = nxt
        elements.sort(key=WeylElement.sort_key)
        self.elements = elements
        self.index = {w: k for k, w in enumerate(elements)}
        self._right = [[self.index[w * WeylElement.simple(rs, i)] for i in range(n)] for w in elements]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def by_length(self) -> list[list[WeylElement]]:
        out: list[list[WeylElement]] = []
        for w in self.elements:
            while len(out) <= w.length:
                out.append([])
            out[w.length].append(w)
        return out

    def longest(self) -> WeylElement:
        return self.elements[-1]

    def right_mult(self, k: int, i: int) -> int:
        return self._right[k][i]


_GROUPS: dict = {}


def weyl_group(rs: RootSystem, cap: int | None = None) -> WeylGroup:
    """Cached enumeration of W; raises ``WeylCapError`` beyond ``cap``."""
    cap = default_cap() if cap is None else cap
    W = _GROUPS.get(rs.kind)
    if W is None:
        W = WeylGroup(rs, cap)
        _GROUPS[rs.kind] = W
    elif len(W) > cap:
        raise WeylCapError(f"Weyl group of {rs.kind} has {len(W)} elements, above cap {cap}")
    return W


def enumerate_group(rs: RootSystem, cap: int | None = None) -> list[list[WeylElement]]:
    """Elements of W grouped by length, each group in lexicographic word order."""
    return weyl_group(rs, cap).by_length()


def compose_and_act(a: WeylElement, b):
    """``a * b`` for an element, ``a(b)`` for an omega-coordinate vector."""
    if isinstance(b, WeylElement):
        return a * b
    return a.act(b)


def min_coset_reps(rs: RootSystem, Z: Iterable[int], cap: int | None = None) -> list[WeylElement]:
    """All ``w`` with ``R(w)`` disjoint from ``Z`` (positive-root indices).

    Suffixes of reduced words have smaller inversion sets, so the set is
    reached from the identity by left multiplications that never add an
    inversion in ``Z``.
    """
    cap = default_cap() if cap is None else cap
    zmask = mask_of(Z)
    n = rs.rank
    e = _identity(n)
    # (matrix of w, matrix of w^-1)
    seen = {e}
    found = [(e, e)]
    frontier = [(e, e)]
    while frontier:
        nxt = []
        for w, winv in frontier:
            for i in range(n):
                beta = rs.lookup_omega(_matvec(winv, rs.simple_root(i)))
                if beta.sign < 0 or zmask >> beta.index & 1:
                    continue
                s = _simple_matrix(rs, i)
                m = _matmul(s, w)
                if m in seen:
                    continue
                seen.add(m)
                pair = (m, _matmul(winv, s))
                found.append(pair)
                nxt.append(pair)
                if len(found) > cap:
                    raise WeylCapError(f"coset enumeration exceeds cap {cap} ({len(found)} so far)")
        frontier = nxt
    out = [WeylElement(rs, m) for m, _ in found]
    out.sort(key=WeylElement.sort_key)
    return out
