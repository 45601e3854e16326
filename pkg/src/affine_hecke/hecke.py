"""Normal-form arithmetic in the affine Hecke algebra and matrix modules.

Elements are written ``sum c T_w X^lam`` with the lattice part on the right.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .linalg import EchelonBasis, LinAlgError, Matrix, Vec, inverse, kernel, rank, rref, vec_axpy
from .roots import RootSystem, Vector, braid_order
from .scalars import FieldElem, QContext
from .weights import Weight, orbit
from .weyl import WeylElement, weyl_group

DEFAULT_DIM_CAP = 64


def _add_vec(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def geometric_terms(rs: RootSystem, i: int, lam: Sequence[int]) -> list[tuple[int, Vector]]:
    """Expansion of ``(X^lam - X^{s_i lam}) / (1 - X^{-alpha_i})`` as ``[(sign, nu)]``."""
    k = lam[i]
    a = rs.simple_root(i)
    lam = tuple(lam)
    if k >= 1:
        return [(1, tuple(l - j * x for l, x in zip(lam, a))) for j in range(k)]
    if k <= -1:
        return [(-1, tuple(l + j * x for l, x in zip(lam, a))) for j in range(1, -k + 1)]
    return []


# ---- the commutative part ---------------------------------------------
class GroupAlgebraElem:
    """``sum c_lam X^lam`` with exact coefficients."""

    __slots__ = ("rs", "D", "terms")

    def __init__(self, rs: RootSystem, D: int, terms: Mapping[Sequence[int], Any] | None = None):
        self.rs = rs
        self.D = D
        self.terms: dict[Vector, FieldElem] = {}
        for lam, c in (terms or {}).items():
            c = c if isinstance(c, FieldElem) else FieldElem.const(D, c)
            if c:
                lam = tuple(lam)
                v = self.terms.get(lam)
                s = c if v is None else v + c
                if s:
                    self.terms[lam] = s
                else:
                    self.terms.pop(lam, None)

    @classmethod
    def monomial(cls, rs: RootSystem, D: int, lam: Sequence[int], c: Any = 1) -> "GroupAlgebraElem":
        return cls(rs, D, {tuple(lam): c})

    def __add__(self, other: "GroupAlgebraElem") -> "GroupAlgebraElem":
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out[lam] + c if lam in out else c
        return GroupAlgebraElem(self.rs, self.D, out)

    def __mul__(self, other: "GroupAlgebraElem") -> "GroupAlgebraElem":
        out: dict[Vector, FieldElem] = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                lam = _add_vec(a, b)
                out[lam] = out[lam] + c * d if lam in out else c * d
        return GroupAlgebraElem(self.rs, self.D, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupAlgebraElem) and self.terms == other.terms

    def __repr__(self) -> str:
        return " + ".join(f"({c})X^{lam}" for lam, c in sorted(self.terms.items())) or "0"


def weight_orbit(rs: RootSystem, lam: Sequence[int]) -> list[Vector]:
    """The W-orbit of a weight, by closure under simple reflections."""
    start = tuple(lam)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for mu in frontier:
            for i in range(rs.rank):
                a = rs.simple_root(i)
                nu = tuple(m - mu[i] * x for m, x in zip(mu, a))
                if nu not in seen:
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return sorted(seen, reverse=True)


def orbit_sum(rs: RootSystem, lam: Sequence[int], D: int = 1) -> GroupAlgebraElem:
    """``sum of X^mu`` over the W-orbit of ``lam``; a W-invariant element."""
    return GroupAlgebraElem(rs, D, {mu: 1 for mu in weight_orbit(rs, lam)})


# ---- the full algebra ---------------------------------------------------
class HeckeElem:
    """``sum c T_w X^lam`` keyed by ``(w, lam)``."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "AffineHeckeAlgebra", terms: Mapping[tuple[WeylElement, Vector], FieldElem] | None = None):
        self.alg = alg
        self.terms: dict[tuple[WeylElement, Vector], FieldElem] = {}
        if terms:
            _accumulate(self.terms, terms.items())

    def __add__(self, other: "HeckeElem") -> "HeckeElem":
        out = dict(self.terms)
        _accumulate(out, other.terms.items())
        return HeckeElem(self.alg, out)

    def __sub__(self, other: "HeckeElem") -> "HeckeElem":
        out = dict(self.terms)
        _accumulate(out, ((k, -c) for k, c in other.terms.items()))
        return HeckeElem(self.alg, out)

    def scale(self, c) -> "HeckeElem":
        c = self.alg.coerce(c)
        return HeckeElem(self.alg, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "HeckeElem") -> "HeckeElem":
        return self.alg.multiply(self, other)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElem):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self) -> str:
        parts = []
        for (w, lam), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1])):
            parts.append(f"({c})T[{w.word}]X^{lam}")
        return " + ".join(parts) or "0"


def _accumulate(out: dict, items: Iterable) -> None:
    for key, c in items:
        if not c:
            continue
        v = out.get(key)
        if v is None:
            out[key] = c
        else:
            s = v + c
            if s:
                out[key] = s
            else:
                del out[key]


class AffineHeckeAlgebra:
    """The affine Hecke algebra with lattice P over ``Q(u)``, ``q = u^D``."""

    def __init__(self, rs: RootSystem, D: int = 1):
        self.rs = rs
        self.ctx = QContext(D)
        self.D = D
        self.qmq = self.ctx.qmq()
        self.e = WeylElement.identity(rs)
        self.zero_weight: Vector = (0,) * rs.rank
        self._rmul: dict = {}

    def coerce(self, c) -> FieldElem:
        if isinstance(c, FieldElem):
            return c.lift(self.D) if c.D != self.D else c
        return FieldElem.const(self.D, c)

    # generators
    def T(self, i: int) -> HeckeElem:
        return HeckeElem(self, {(WeylElement.simple(self.rs, i), self.zero_weight): self.ctx.one()})

    def T_w(self, w: WeylElement) -> HeckeElem:
        return HeckeElem(self, {(w, self.zero_weight): self.ctx.one()})

    def X(self, lam: Sequence[int]) -> HeckeElem:
        return HeckeElem(self, {(self.e, tuple(lam)): self.ctx.one()})

    def one(self) -> HeckeElem:
        return self.X(self.zero_weight)

    def from_group_algebra(self, f: GroupAlgebraElem) -> HeckeElem:
        return HeckeElem(self, {(self.e, lam): self.coerce(c) for lam, c in f.terms.items()})

    def _right_simple(self, w: WeylElement, i: int) -> tuple[WeylElement, bool]:
        key = (w, i)
        r = self._rmul.get(key)
        if r is None:
            r = self._rmul[key] = (w * WeylElement.simple(self.rs, i), w.is_right_descent(i))
        return r

    def right_mult_T(self, terms: Mapping, i: int) -> dict:
        """``(sum c T_w X^lam) * T_i`` in normal form."""
        out: dict = {}
        qmq = self.qmq
        a = self.rs.simple_root(i)
        for (w, lam), c in terms.items():
            k = lam[i]
            slam = tuple(l - k * x for l, x in zip(lam, a)) if k else lam
            ws, descent = self._right_simple(w, i)
            _accumulate(out, [((ws, slam), c)])
            if descent:
                _accumulate(out, [((w, slam), qmq * c)])
            if k:
                g = qmq * c
                _accumulate(out, (((w, nu), g if s > 0 else -g) for s, nu in geometric_terms(self.rs, i, lam)))
        return out

    def multiply(self, a: HeckeElem, b: HeckeElem) -> HeckeElem:
        out: dict = {}
        for (w, lam), c1 in a.terms.items():
            for (v, mu), c2 in b.terms.items():
                part = {(w, lam): c1 * c2}
                for j in v.word:
                    part = self.right_mult_T(part, j)
                _accumulate(out, (((u, _add_vec(nu, mu)), c) for (u, nu), c in part.items()))
        return HeckeElem(self, out)

    def bernstein_commute(self, i: int, lam: Sequence[int]) -> HeckeElem:
        """``X^lam T_i`` rewritten with the lattice part on the right."""
        return HeckeElem(self, self.right_mult_T({(self.e, tuple(lam)): self.ctx.one()}, i))


def bernstein_commute(rs: RootSystem, i: int, lam: Sequence[int], D: int = 1) -> HeckeElem:
    return AffineHeckeAlgebra(rs, D).bernstein_commute(i, lam)


def multiply(a: HeckeElem, b: HeckeElem) -> HeckeElem:
    return a.alg.multiply(a, b)


def is_central(rs: RootSystem, f: GroupAlgebraElem, cap: int | None = None) -> bool:
    """Whether ``f`` commutes with every ``T_i`` and every ``X^{omega_k}``."""
    weyl_group(rs, cap)
    alg = AffineHeckeAlgebra(rs, f.D)
    F = alg.from_group_algebra(f)
    gens = [alg.T(i) for i in range(rs.rank)]
    gens += [alg.X(tuple(int(j == k) for j in range(rs.rank))) for k in range(rs.rank)]
    return all(alg.multiply(F, g) == alg.multiply(g, F) for g in gens)


# ---- matrix modules -----------------------------------------------------
@dataclass
class MatrixRep:
    """A finite-dimensional module given by generator matrices.

    ``weights[b]`` is the weight of basis vector ``b`` when the basis consists
    of simultaneous eigenvectors; ``candidates`` lists the weights that may
    occur, used by the weight-space analysis.
    """

    rs: RootSystem
    labels: list
    T: list[Matrix]
    X: list[Matrix]
    q: Any
    X_inv: list[Matrix] | None = None
    weights: list[Weight] | None = None
    candidates: list[Weight] | None = None
    kind: str = "module"
    _xcache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def one(self):
        return self.q / self.q

    @property
    def qmq(self):
        return self.q - self.one / self.q

    def identity(self) -> Matrix:
        return Matrix.identity(self.dim, self.one)

    def x_inverse(self, k: int) -> Matrix:
        if self.X_inv is None:
            self.X_inv = [None] * len(self.X)
        if self.X_inv[k] is None:
            self.X_inv[k] = inverse(self.X[k])
        return self.X_inv[k]

    def x_power(self, lam: Sequence[int]) -> Matrix:
        """Matrix of ``X^lam``."""
        lam = tuple(lam)
        m = self._xcache.get(lam)
        if m is None:
            m = self.identity()
            for k, e in enumerate(lam):
                if e > 0:
                    m = m @ (self.X[k] ** e)
                elif e < 0:
                    m = m @ (self.x_inverse(k) ** (-e))
            self._xcache[lam] = m
        return m

    def generators(self) -> list[Matrix]:
        return list(self.T) + list(self.X)

    def evaluate(self, u0) -> "MatrixRep":
        """The same module with ``u`` specialised to the rational ``u0``."""
        f = lambda x: x.evaluate(u0)
        one = Fraction(1)
        return MatrixRep(
            self.rs,
            list(self.labels),
            [m.map(f, one) for m in self.T],
            [m.map(f, one) for m in self.X],
            f(self.q),
            None if self.X_inv is None or None in self.X_inv else [m.map(f, one) for m in self.X_inv],
            kind=f"{self.kind}@u={Fraction(u0)}",
        )

    def change_basis(self, basis: Sequence[Vec], coords, labels: list | None = None, weights: list | None = None) -> "MatrixRep":
        """The module on a new basis; ``coords(v)`` gives coordinates of ``v`` in it."""
        def conj(m: Matrix) -> Matrix:
            return Matrix.from_columns(len(basis), [coords(m.apply(b)) for b in basis], m.one)

        return MatrixRep(
            self.rs,
            list(labels) if labels is not None else list(range(len(basis))),
            [conj(m) for m in self.T],
            [conj(m) for m in self.X],
            self.q,
            weights=weights,
            candidates=self.candidates,
            kind=self.kind,
        )


def principal_series(rs: RootSystem, t: Weight, cap: int | None = None) -> MatrixRep:
    """The module induced from the character ``t`` on the basis ``T_w v_t``."""
    W = weyl_group(rs, cap)
    alg = AffineHeckeAlgebra(rs, t.D)
    elems = W.elements
    index = W.index
    n = len(elems)
    one = alg.ctx.one()
    qmq = alg.qmq

    T = []
    for i in range(rs.rank):
        si = WeylElement.simple(rs, i)
        cols = []
        for w in elems:
            col = {index[si * w]: one}
            if w.is_left_descent(i):
                col[index[w]] = qmq
            cols.append(col)
        T.append(Matrix.from_columns(n, cols, one))

    def lattice_action(lam):
        cols = []
        cache: dict = {}
        for w in elems:
            part = {(alg.e, lam): one}
            for j in w.word:
                part = alg.right_mult_T(part, j)
            col: Vec = {}
            for (u, nu), c in part.items():
                val = cache.get(nu)
                if val is None:
                    val = cache[nu] = t.value(nu)
                r = index[u]
                x = col.get(r)
                y = c * val
                s = y if x is None else x + y
                if s:
                    col[r] = s
                else:
                    col.pop(r, None)
            cols.append(col)
        return Matrix.from_columns(n, cols, one)

    X, Xi = [], []
    for k in range(rs.rank):
        omega = tuple(int(j == k) for j in range(rs.rank))
        X.append(lattice_action(omega))
        Xi.append(lattice_action(tuple(-x for x in omega)))
    cands = [s for _, s in orbit(rs, t, cap)]
    return MatrixRep(rs, list(elems), T, X, alg.ctx.q(), Xi, candidates=cands, kind="principal")


# ---- weight spaces ------------------------------------------------------
def joint_kernel(mats: Sequence[Matrix], n: int, one) -> list[Vec]:
    """Basis of the common null space of ``mats`` (each with ``n`` columns).

    Returned in reduced echelon form: each vector is 1 at its own pivot
    coordinate and 0 at the pivots of the others (see ``pivots_of``).
    """
    B = Matrix.identity(n, one)
    for A in mats:
        if B.ncols == 0:
            return []
        ker = kernel(A @ B)
        B = B @ Matrix.from_columns(B.ncols, ker, one)
    if B.ncols == 0:
        return []
    return rref(B.transpose())[0]


def pivots_of(basis: Sequence[Vec]) -> list[int]:
    """Pivot coordinate of each vector of a reduced echelon basis."""
    return [min(v) for v in basis]


@dataclass
class WeightSpace:
    weight: Weight
    genuine: list[Vec]
    generalized: list[Vec]

    @property
    def genuine_dim(self) -> int:
        return len(self.genuine)

    @property
    def generalized_dim(self) -> int:
        return len(self.generalized)


@dataclass
class WeightReport:
    dim: int
    spaces: list[WeightSpace]

    @property
    def support(self) -> list[Weight]:
        return [s.weight for s in self.spaces]

    @property
    def complete(self) -> bool:
        return sum(s.generalized_dim for s in self.spaces) == self.dim

    @property
    def calibrated(self) -> bool:
        return self.complete and all(s.genuine_dim == s.generalized_dim for s in self.spaces)

    def space(self, t: Weight) -> WeightSpace | None:
        for s in self.spaces:
            if s.weight == t:
                return s
        return None


def _shifted(M: MatrixRep, s: Weight) -> list[Matrix]:
    I = M.identity()
    return [M.X[k] - I.scale(s.values[k]) for k in range(M.rs.rank)]


def _stable_power(A: Matrix, cap: int) -> Matrix:
    """``A^m`` where ``m`` is the first exponent at which the kernel stops growing."""
    P = A
    r = rank(P)
    for _ in range(cap):
        P2 = P @ A
        r2 = rank(P2)
        if r2 == r:
            return P
        P, r = P2, r2
    return P


def weight_space_analysis(M: MatrixRep, dim_cap: int = DEFAULT_DIM_CAP) -> WeightReport:
    """Genuine and generalized simultaneous eigenspaces of the ``X^{omega_k}``."""
    if M.dim > dim_cap:
        raise LinAlgError(f"module dimension {M.dim} exceeds analysis cap {dim_cap}")
    cands = M.candidates
    if cands is None:
        cands = list(dict.fromkeys(M.weights)) if M.weights is not None else []
    n, one = M.dim, M.one
    genuine = {}
    for s in cands:
        basis = joint_kernel(_shifted(M, s), n, one)
        if basis:
            genuine[s] = basis
    total = sum(len(b) for b in genuine.values())
    spaces = []
    if total == n:
        for s, b in genuine.items():
            spaces.append(WeightSpace(s, b, b))
    else:
        for s in cands:
            powers = [_stable_power(A, n) for A in _shifted(M, s)]
            gen = joint_kernel(powers, n, one)
            if gen:
                spaces.append(WeightSpace(s, genuine.get(s, []), gen))
    return WeightReport(n, spaces)


def weight_basis(M: MatrixRep, report: WeightReport | None = None):
    """A basis of generalized weight vectors and a coordinate function for it.

    Coordinates come from the left generalized weight spaces: for each weight
    the pairing between left and right spaces is nondegenerate, and left
    vectors of one weight annihilate right vectors of every other weight.
    """
    report = report or weight_space_analysis(M)
    if not report.complete:
        raise LinAlgError("generalized weight spaces do not span the module")
    n, one = M.dim, M.one
    vecs, wts, blocks = [], [], []
    for sp in report.spaces:
        shifted = _shifted(M, sp.weight)
        if sp.genuine_dim == sp.generalized_dim:
            mats = [A.transpose() for A in shifted]
        else:
            mats = [_stable_power(A, n).transpose() for A in shifted]
        left = joint_kernel(mats, n, one)
        if len(left) != sp.generalized_dim:
            raise LinAlgError("left and right generalized weight spaces differ in dimension")
        gram = Matrix.from_dense([[_dot(y, b, one) for b in sp.generalized] for y in left], one)
        blocks.append((len(vecs), left, inverse(gram)))
        for v in sp.generalized:
            vecs.append(v)
            wts.append(sp.weight)

    def coords(v: Vec) -> Vec:
        out: Vec = {}
        for start, left, ginv in blocks:
            proj = {k: x for k, y in enumerate(left) if (x := _dot(y, v, one))}
            if proj:
                for k, x in ginv.apply(proj).items():
                    out[start + k] = x
        return out

    return vecs, wts, coords


def _dot(a: Vec, b: Vec, one):
    if len(a) > len(b):
        a, b = b, a
    acc = one - one
    for j, x in a.items():
        y = b.get(j)
        if y is not None:
            acc = acc + x * y
    return acc


def in_weight_basis(M: MatrixRep, report: WeightReport | None = None) -> MatrixRep:
    """``M`` rewritten on a basis of generalized weight vectors."""
    vecs, wts, coords = weight_basis(M, report)
    return M.change_basis(vecs, coords, labels=list(range(len(vecs))), weights=wts)


def cyclic_closure(M: MatrixRep, v: Vec | Sequence[Vec]) -> int:
    """Dimension of the submodule generated by ``v`` (a vector or a list of vectors)."""
    seeds = [v] if isinstance(v, dict) else list(v)
    basis = EchelonBasis(M.dim, M.one)
    queue = []
    for s in seeds:
        if basis.add(s):
            queue.append(basis.vectors[-1])
    if not basis.vectors:
        raise ValueError("cyclic closure of the zero vector")
    gens = M.generators()
    while queue and len(basis) < M.dim:
        x = queue.pop()
        for g in gens:
            if basis.add(g.apply(x)):
                queue.append(basis.vectors[-1])
                if len(basis) == M.dim:
                    break
    return len(basis)


def _weight_moves(M: MatrixRep, report: WeightReport) -> dict[Weight, list[Weight]] | None:
    if not (report.complete and report.calibrated) or any(sp.genuine_dim != 1 for sp in report.spaces):
        return None
    vec = {sp.weight: sp.genuine[0] for sp in report.spaces}
    n = M.rs.rank
    moves: dict[Weight, list[Weight]] = {r: [] for r in vec}
    for r, e in vec.items():
        for i in range(n):
            r2 = r.reflect(i)
            if r2 == r or r2 not in vec:
                continue
            k = next(k for k in range(n) if r.values[k] != r2.values[k])
            img = M.T[i].apply(e)
            if vec_axpy(M.X[k].apply(img), img, -r.values[k]):
                moves[r].append(r2)
    return moves


def weight_closures(M: MatrixRep, report: WeightReport) -> dict[Weight, int] | None:
    """Dimension of the submodule generated by each weight vector.

    Only for modules whose weight spaces are genuine lines spanning ``M``:
    such a submodule is a sum of weight lines, and ``T_i`` moves the line at
    ``r`` into the line at ``s_i r`` exactly when ``(X_k - r(X_k)) T_i e_r``
    is nonzero for a ``k`` separating ``r`` from ``s_i r``.  Returns ``None``
    for other modules.
    """
    moves = _weight_moves(M, report)
    if moves is None:
        return None
    out = {}
    for s in moves:
        seen, queue = {s}, [s]
        while queue:
            for r2 in moves[queue.pop()]:
                if r2 not in seen:
                    seen.add(r2)
                    queue.append(r2)
        out[s] = len(seen)
    return out


# ---- defining relations -------------------------------------------------
@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    skipped: bool = False


@dataclass
class RelationReport:
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def summary(self) -> str:
        bad = self.failures()
        if not bad:
            return f"all {len(self.checks)} checks pass"
        return f"{len(bad)} of {len(self.checks)} checks fail: " + ", ".join(c.name for c in bad)


def _alternating(A: Matrix, B: Matrix, m: int, one) -> Matrix:
    out = Matrix.identity(A.nrows, one)
    for k in range(m):
        out = out @ (A if k % 2 == 0 else B)
    return out


def verify_defining_relations(M: MatrixRep) -> RelationReport:
    """Quadratic, braid, Bernstein (for every ``omega_k``) and commutativity checks."""
    rs = M.rs
    n = rs.rank
    I = M.identity()
    qmq = M.qmq
    one = M.one
    checks: list[Check] = []
    for i in range(n):
        Ti = M.T[i]
        checks.append(Check(f"quadratic T{i + 1}", Ti @ Ti == Ti.scale(qmq) + I))
    for i in range(n):
        for j in range(i + 1, n):
            m = braid_order(rs, i, j)
            lhs = _alternating(M.T[i], M.T[j], m, one)
            rhs = _alternating(M.T[j], M.T[i], m, one)
            checks.append(Check(f"braid T{i + 1},T{j + 1} (m={m})", lhs == rhs))
    for a in range(n):
        for b in range(a + 1, n):
            checks.append(Check(f"commute X{a + 1},X{b + 1}", M.X[a] @ M.X[b] == M.X[b] @ M.X[a]))
    for i in range(n):
        a = rs.simple_root(i)
        for k in range(n):
            lam = tuple(int(j == k) for j in range(n))
            slam = tuple(l - lam[i] * x for l, x in zip(lam, a))
            rhs = M.T[i] @ M.x_power(slam)
            geo = Matrix.zeros(M.dim, M.dim, one)
            for s, nu in geometric_terms(rs, i, lam):
                geo = geo + M.x_power(nu) if s > 0 else geo - M.x_power(nu)
            rhs = rhs + geo.scale(qmq)
            checks.append(Check(f"bernstein X^w{k + 1} T{i + 1}", M.X[k] @ M.T[i] == rhs))
    return RelationReport(checks)
