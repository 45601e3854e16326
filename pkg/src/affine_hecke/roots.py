"""Cartan data and positive roots for the finite reduced irreducible types.

Weights are integer vectors in fundamental-weight coordinates
(``omega``-coordinates).  Simple indices are 0-based in the Python API; labels
shown to users (``a1``, ``s2``) are 1-based, Bourbaki numbering.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from typing import Sequence, Union

Vector = tuple[int, ...]

_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: 6 <= n <= 8,
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

_BRAID = {0: 2, 1: 3, 2: 4, 3: 6}


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True)
class CartanKind:
    family: str
    rank: int

    def __post_init__(self):
        fam = self.family.upper() if isinstance(self.family, str) else self.family
        object.__setattr__(self, "family", fam)
        if fam not in _RANK_OK:
            raise RootSystemError(f"unknown Cartan family {self.family!r}")
        if not isinstance(self.rank, int) or not _RANK_OK[fam](self.rank):
            raise RootSystemError(f"invalid rank {self.rank!r} for type {fam}")

    @classmethod
    def parse(cls, text: str) -> "CartanKind":
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", text)
        if not m:
            raise RootSystemError(f"cannot parse Cartan type {text!r}")
        return cls(m.group(1), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def cartan_matrix(kind: CartanKind) -> tuple[tuple[int, ...], ...]:
    """Entry ``(i, j)`` is ``<alpha_j, alpha_i^vee>`` (Bourbaki numbering)."""
    n = kind.rank
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, a_ij=-1, a_ji=-1):
        A[i][j] = a_ij
        A[j][i] = a_ji

    fam = kind.family
    if fam in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if fam == "B":
            # alpha_n short
            A[n - 1][n - 2] = -2
        elif fam == "C":
            # alpha_n long
            A[n - 2][n - 1] = -2
    elif fam == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif fam == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif fam == "F":
        link(0, 1)
        link(1, 2, a_ij=-1, a_ji=-2)
        link(2, 3)
    elif fam == "G":
        # alpha_1 short, alpha_2 long
        link(0, 1, a_ij=-3, a_ji=-1)
    return tuple(tuple(r) for r in A)


def _symmetrizer(A: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Minimal positive integers ``d`` with ``d_i A_ij = d_j A_ji``."""
    n = len(A)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and A[i][j] != 0 and d[j] is None:
                d[j] = d[i] * A[i][j] / A[j][i]
                stack.append(j)
    den = lcm(*(x.denominator for x in d))
    ints = [int(x * den) for x in d]
    g = reduce(gcd, ints)
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class PositiveRoot:
    index: int
    simple: Vector
    omega: Vector
    long: bool

    @property
    def height(self) -> int:
        return sum(self.simple)


@dataclass(frozen=True)
class Root:
    """``sign * positive_roots[index]``."""

    index: int
    sign: int = 1

    def __neg__(self) -> "Root":
        return Root(self.index, -self.sign)


@dataclass(frozen=True, eq=False)
class RootSystem:
    kind: CartanKind
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[PositiveRoot, ...]
    symmetrizer: tuple[int, ...]
    _by_omega: dict = field(repr=False, compare=False, default_factory=dict)
    _by_simple: dict = field(repr=False, compare=False, default_factory=dict)

    @property
    def rank(self) -> int:
        return self.kind.rank

    @property
    def n_positive(self) -> int:
        return len(self.positive_roots)

    def simple_root(self, i: int) -> Vector:
        """omega-coordinates of ``alpha_i`` (column ``i`` of the Cartan matrix)."""
        return tuple(self.cartan[r][i] for r in range(self.rank))

    def root_omega(self, r: Root) -> Vector:
        v = self.positive_roots[r.index].omega
        return v if r.sign > 0 else tuple(-x for x in v)

    def lookup_omega(self, v: Sequence[int]) -> Root | None:
        """Root with the given omega-coordinates, or ``None``."""
        v = tuple(v)
        k = self._by_omega.get(v)
        if k is not None:
            return Root(k, 1)
        k = self._by_omega.get(tuple(-x for x in v))
        if k is not None:
            return Root(k, -1)
        return None

    def lookup_simple(self, v: Sequence[int]) -> int:
        return self._by_simple[tuple(v)]

    def to_omega(self, simple: Sequence[int]) -> Vector:
        n = self.rank
        return tuple(sum(self.cartan[i][j] * simple[j] for j in range(n)) for i in range(n))

    def simple_index_of(self, k: int) -> int | None:
        s = self.positive_roots[k].simple
        if sum(s) == 1:
            return s.index(1)
        return None

    def norm(self, simple: Sequence[int]) -> int:
        """Squared length in units of the minimal symmetrised form."""
        n = self.rank
        return sum(
            simple[i] * simple[j] * self.symmetrizer[i] * self.cartan[i][j]
            for i in range(n)
            for j in range(n)
        )

    def label(self, k: int) -> str:
        """``a1+2a2`` style label of positive root ``k`` (1-based indices)."""
        parts = []
        for i, c in enumerate(self.positive_roots[k].simple):
            if c:
                parts.append(f"a{i + 1}" if c == 1 else f"{c}a{i + 1}")
        return "+".join(parts)

    def parse_label(self, text: str) -> int:
        coeffs = [0] * self.rank
        for tok in text.replace(" ", "").split("+"):
            m = re.fullmatch(r"(\d*)(?:a|alpha)(\d+)", tok)
            if not m:
                raise RootSystemError(f"cannot parse root label {text!r}")
            i = int(m.group(2)) - 1
            if not 0 <= i < self.rank:
                raise RootSystemError(f"simple index out of range in {text!r}")
            coeffs[i] += int(m.group(1) or 1)
        try:
            return self.lookup_simple(coeffs)
        except KeyError:
            raise RootSystemError(f"{text!r} is not a positive root of {self.kind}") from None

    def subsystem(self, idx: Sequence[int]) -> list[int]:
        """Positive roots supported on the simple indices ``idx``."""
        allowed = set(idx)
        return [
            r.index
            for r in self.positive_roots
            if all(c == 0 or i in allowed for i, c in enumerate(r.simple))
        ]

    def __hash__(self):
        return hash(self.kind)

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.kind == other.kind


@lru_cache(maxsize=None)
def build_root_system(kind: CartanKind) -> RootSystem:
    """Positive roots by reflection closure of the simple roots."""
    if isinstance(kind, str):
        kind = CartanKind.parse(kind)
    A = cartan_matrix(kind)
    n = kind.rank

    def reflect_simple(i, beta):
        # <beta, alpha_i^vee> = i-th omega-coordinate of beta
        p = sum(A[i][j] * beta[j] for j in range(n))
        out = list(beta)
        out[i] -= p
        return tuple(out)

    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                gamma = reflect_simple(i, beta)
                if gamma not in seen:
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    pos = [b for b in seen if all(c >= 0 for c in b)]
    if 2 * len(pos) != len(seen):
        raise RootSystemError(f"reflection closure for {kind} is not sign-symmetric")
    pos.sort(key=lambda b: (sum(b), tuple(-c for c in b)))

    d = _symmetrizer(A)

    def norm(b):
        return sum(b[i] * b[j] * d[i] * A[i][j] for i in range(n) for j in range(n))

    norms = [norm(b) for b in pos]
    top = max(norms)
    roots = []
    for k, b in enumerate(pos):
        omega = tuple(sum(A[i][j] * b[j] for j in range(n)) for i in range(n))
        roots.append(PositiveRoot(k, b, omega, norms[k] == top))
    rs = RootSystem(kind, A, tuple(roots), d)
    for r in roots:
        rs._by_omega[r.omega] = r.index
        rs._by_simple[r.simple] = r.index
    return rs


def pairing(rs: RootSystem, lam: Sequence[int], i: int) -> int:
    """``<lam, alpha_i^vee>`` for ``lam`` in omega-coordinates."""
    return lam[i]


def reflect(rs: RootSystem, i: int, x: Union[Sequence[int], Root]):
    """Simple reflection ``s_i`` on a weight (omega-coordinates) or a ``Root``."""
    if isinstance(x, Root):
        image = reflect(rs, i, rs.root_omega(x))
        r = rs.lookup_omega(image)
        assert r is not None
        return r
    a = rs.simple_root(i)
    k = x[i]
    return tuple(x[j] - k * a[j] for j in range(rs.rank))


def braid_order(rs: RootSystem, i: int, j: int) -> int:
    """Length of each side of the braid relation between ``s_i`` and ``s_j``."""
    if i == j:
        raise RootSystemError("braid order needs distinct indices")
    return _BRAID[rs.cartan[i][j] * rs.cartan[j][i]]


EXPECTED_POSITIVE_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}
