"""Points of the torus: characters of the weight lattice with values in Q(u)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .roots import RootSystem
from .scalars import FieldElem, QContext, Rational, make_context, q_power
from .weyl import WeylCapError, WeylElement, default_cap, mask_of


class WeightError(ValueError):
    pass


class Weight:
    """A point ``t`` of the torus, stored by its values on the ``X^{omega_i}``.

    Real weights also carry ``gamma``: ``t(X^lam) = q^(2 <gamma, lam>)`` where
    ``<gamma, lam> = sum_i gamma_i lam_i`` in omega-coordinates.
    """

    __slots__ = ("rs", "values", "gamma", "D", "_hash", "_cache")

    def __init__(self, rs: RootSystem, values: Sequence[FieldElem], gamma: Sequence[Fraction] | None = None):
        if len(values) != rs.rank:
            raise WeightError(f"expected {rs.rank} values, got {len(values)}")
        for v in values:
            if v.is_zero():
                raise WeightError("torus values must be nonzero")
        D = lcm(*(v.D for v in values))
        self.rs = rs
        self.values = tuple(v.lift(D) for v in values)
        self.gamma = None if gamma is None else tuple(Fraction(g) for g in gamma)
        self.D = D
        self._hash = None
        self._cache: dict = {}

    @property
    def ctx(self) -> QContext:
        return QContext(self.D)

    @property
    def is_real(self) -> bool:
        return self.gamma is not None

    def value(self, lam: Sequence[int]) -> FieldElem:
        """``t(X^lam)``."""
        if self.gamma is not None:
            e = 2 * sum(g * l for g, l in zip(self.gamma, lam))
            return q_power(self.ctx, e)
        out = FieldElem.const(self.D, 1)
        for v, k in zip(self.values, lam):
            if k:
                out = out * v**k
        return out

    def root_value(self, k: int) -> FieldElem:
        """``t(X^alpha)`` for positive root ``k``."""
        cache = self._cache.setdefault("roots", {})
        val = cache.get(k)
        if val is None:
            val = cache[k] = self.value(self.rs.positive_roots[k].omega)
        return val

    def simple_value(self, i: int) -> FieldElem:
        return self.value(self.rs.simple_root(i))

    def root_exponent(self, lam: Sequence[int]) -> Fraction:
        """``<gamma, lam>``; real weights only."""
        if self.gamma is None:
            raise WeightError("exponent functional needs a real weight")
        return sum((g * l for g, l in zip(self.gamma, lam)), Fraction(0))

    def reflect(self, i: int) -> "Weight":
        """``s_i t``; only the value on ``omega_i`` changes."""
        a = self.simple_value(i)
        vals = list(self.values)
        vals[i] = vals[i] / a
        gamma = None
        if self.gamma is not None:
            g = list(self.gamma)
            g[i] -= self.root_exponent(self.rs.simple_root(i))
            gamma = g
        return Weight(self.rs, vals, gamma)

    def masks(self) -> tuple[int, int]:
        """Bitmasks of ``Z(t)`` and ``P(t)`` over positive-root indices."""
        m = self._cache.get("masks")
        if m is None:
            one = FieldElem.const(self.D, 1)
            q2 = q_power(self.ctx, 2)
            qm2 = q_power(self.ctx, -2)
            z = p = 0
            for k in range(self.rs.n_positive):
                v = self.root_value(k)
                if v == one:
                    z |= 1 << k
                elif v == q2 or v == qm2:
                    p |= 1 << k
            m = self._cache["masks"] = (z, p)
        return m

    def key(self) -> tuple:
        return (self.rs.kind, self.values)

    def __eq__(self, other) -> bool:
        return isinstance(other, Weight) and self.rs == other.rs and self.values == other.values

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self) -> str:
        if self.gamma is not None:
            return f"Weight({self.rs.kind}, gamma=({', '.join(str(g) for g in self.gamma)}))"
        return f"Weight({self.rs.kind}, values=({', '.join(str(v) for v in self.values)}))"


def real_weight(rs: RootSystem, c: Sequence[Rational]) -> Weight:
    """``t(X^{omega_i}) = q^(2 c_i)``."""
    c = [Fraction(x) for x in c]
    if len(c) != rs.rank:
        raise WeightError(f"expected {rs.rank} exponents, got {len(c)}")
    ctx = make_context([1] + [2 * x for x in c])
    return Weight(rs, [q_power(ctx, 2 * x) for x in c], c)


def weight_value(t: Weight, lam: Sequence[int]) -> FieldElem:
    return t.value(lam)


def weyl_act(w: WeylElement, t: Weight) -> Weight:
    """``(w t)(X^lam) = t(X^{w^-1 lam})``."""
    out = t
    for i in reversed(w.word):
        out = out.reflect(i)
    return out


def zero_pole_sets(rs: RootSystem, t: Weight) -> tuple[frozenset[int], frozenset[int]]:
    z, p = t.masks()
    return (
        frozenset(k for k in range(rs.n_positive) if z >> k & 1),
        frozenset(k for k in range(rs.n_positive) if p >> k & 1),
    )


def orbit(rs: RootSystem, t: Weight, cap: int | None = None) -> list[tuple[WeylElement, Weight]]:
    """The orbit ``Wt`` with minimal-length coset representatives.

    Breadth-first search over simple reflections; the first element reaching
    a weight has minimal length in its coset ``w W_t``.
    """
    cap = default_cap() if cap is None else cap
    e = WeylElement.identity(rs)
    seen = {t: e}
    frontier = [(e, t)]
    while frontier:
        nxt = []
        for w, s in frontier:
            for i in range(rs.rank):
                if s.simple_value(i).is_one():
                    continue
                s2 = s.reflect(i)
                if s2 in seen:
                    continue
                w2 = WeylElement.simple(rs, i) * w
                seen[s2] = w2
                nxt.append((w2, s2))
                if len(seen) > cap:
                    raise WeylCapError(f"orbit exceeds cap {cap} ({len(seen)} weights so far)")
        frontier = nxt
    out = [(w, s) for s, w in seen.items()]
    out.sort(key=lambda ws: ws[0].sort_key())
    return out


def dominant_rep(rs: RootSystem, t: Weight) -> Weight:
    """The orbit element whose exponent functional is nonnegative on simple roots."""
    return dominant_with_element(rs, t)[1]


def dominant_with_element(rs: RootSystem, t: Weight) -> tuple[WeylElement, Weight]:
    if not t.is_real:
        raise WeightError("dominant representative is defined for real weights only")
    word: list[int] = []
    s = t
    while True:
        for i in range(rs.rank):
            if s.root_exponent(rs.simple_root(i)) < 0:
                break
        else:
            return WeylElement.from_word(rs, reversed(word)), s
        s = s.reflect(i)
        word.append(i)


@dataclass(frozen=True)
class PlacedShape:
    """A pair ``(t, J)`` with ``J`` inside ``P(t)`` realised by some tableau."""

    weight: Weight
    J: frozenset[int]
    tableaux: tuple[WeylElement, ...]

    def __post_init__(self):
        if not self.tableaux:
            raise WeightError("a placed shape needs a nonempty tableau set")
        _, p = self.weight.masks()
        if mask_of(self.J) & ~p:
            raise WeightError("J must be a subset of P(t)")

    @property
    def dim(self) -> int:
        return len(self.tableaux)
