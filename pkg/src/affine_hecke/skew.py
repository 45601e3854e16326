"""Calibratable weights, placed skew shapes and their explicit modules.

Includes the tau intertwiners on generalized weight spaces and the
certificates used to check irreducibility and classification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .calibration import CalibrationGraph, build_graph, components_and_shapes, placed_shapes, root_set_label, tableaux
from .hecke import (
    Check,
    MatrixRep,
    RelationReport,
    WeightReport,
    cyclic_closure,
    pivots_of,
    verify_defining_relations,
    weight_space_analysis,
)
from .linalg import LinAlgError, Matrix, inverse, is_invertible, restrict
from .roots import RootSystem, braid_order
from .scalars import FieldElem, q_power
from .weights import PlacedShape, Weight, WeightError, weyl_act
from .weyl import WeylElement, word_label


class SkewShapeError(ValueError):
    pass


class TauUndefinedError(ValueError):
    pass


# ---- calibratable weights ---------------------------------------------
def _dihedral_images(t: Weight, i: int, j: int, m: int) -> list[tuple[tuple[int, ...], Weight]]:
    """``(word, u t)`` for every ``u`` in the subgroup generated by ``s_i, s_j``."""
    out = [((), t)]
    for first, second in ((i, j), (j, i)):
        s, word = t, []
        for k in range(m):
            r = first if k % 2 == 0 else second
            word.insert(0, r)
            s = s.reflect(r)
            out.append((tuple(word), s))
    return out


def calibratable_detail(rs: RootSystem, t: Weight, i: int, j: int) -> tuple[bool, str]:
    """Whether ``t`` is calibratable for the rank-two subsystem on ``i, j``, with a reason."""
    if i == j:
        raise ValueError("calibratable test needs distinct simple indices")
    roots = rs.subsystem([i, j])
    ones = [k for k in roots if t.root_value(k).is_one()]
    if not ones:
        return True, "condition (a): no root of the subsystem has value 1"
    m = braid_order(rs, i, j)
    why_a = f"condition (a) fails: value 1 on {root_set_label(rs, ones)}"
    if m not in (4, 6):
        return False, why_a + "; condition (b) needs type C2 or G2"
    if t.simple_value(i).is_one() or t.simple_value(j).is_one():
        return False, why_a + "; condition (b) needs both simple values different from 1"
    li, lj = rs.positive_roots[i].long, rs.positive_roots[j].long
    roles = [(i, j)] if li and not lj else [(j, i)] if lj and not li else [(i, j), (j, i)]
    q2 = q_power(t.ctx, 2)
    for long_, short in roles:
        for word, s in _dihedral_images(t, i, j, m):
            if s.simple_value(long_) == q2 and s.simple_value(short).is_one():
                return True, f"condition (b) via u={word_label(word)}"
    return False, why_a + "; condition (b): no u gives the pattern (q^2, 1)"


def is_calibratable_rank2(rs: RootSystem, t: Weight, i: int, j: int) -> bool:
    return calibratable_detail(rs, t, i, j)[0]


def _weight_calibratable(rs: RootSystem, s: Weight) -> tuple[bool, str]:
    if rs.rank == 1:
        if s.simple_value(0).is_one():
            return False, "value 1 on a1"
        return True, "rank one, value different from 1"
    for i in range(rs.rank):
        for j in range(i + 1, rs.rank):
            ok, why = calibratable_detail(rs, s, i, j)
            if not ok:
                return False, f"pair (a{i + 1}, a{j + 1}): {why}"
    return True, "calibratable for every pair"


def skew_shape_detail(rs: RootSystem, t: Weight, J: Iterable[int], cap: int | None = None) -> tuple[bool, str]:
    F = tableaux(rs, t, J, cap)
    if not F:
        raise SkewShapeError("not a placed shape: no standard tableaux")
    for w in F:
        ok, why = _weight_calibratable(rs, weyl_act(w, t))
        if not ok:
            return False, f"tableau {word_label(w.word)}: {why}"
    return True, "every tableau weight is calibratable"


def is_placed_skew_shape(rs: RootSystem, t: Weight, J: Iterable[int], cap: int | None = None) -> bool:
    return skew_shape_detail(rs, t, J, cap)[0]


# ---- the explicit module ----------------------------------------------
@dataclass
class SkewModule:
    rep: MatrixRep
    shape: PlacedShape
    weight_map: dict
    report: RelationReport

    @property
    def dim(self) -> int:
        return self.rep.dim

    @property
    def tableaux(self) -> tuple[WeylElement, ...]:
        return self.shape.tableaux


def skew_matrices(rs: RootSystem, t: Weight, F: Sequence[WeylElement]) -> MatrixRep:
    """Diagonal lattice action and two-term ``T_i`` action on ``span{v_w : w in F}``."""
    ctx = t.ctx
    one = ctx.one()
    qmq = ctx.qmq()
    qinv = q_power(ctx, -1)
    index = {w: k for k, w in enumerate(F)}
    wts = [weyl_act(w, t) for w in F]
    n = len(F)
    X = [Matrix.diag([s.values[k] for s in wts], one) for k in range(rs.rank)]
    X_inv = [Matrix.diag([one / s.values[k] for s in wts], one) for k in range(rs.rank)]
    T = []
    for i in range(rs.rank):
        si = WeylElement.simple(rs, i)
        cols = []
        for w, s in zip(F, wts):
            v = s.simple_value(i)
            if v.is_one():
                raise SkewShapeError(f"(wt)(X^a{i + 1}) = 1 at w={word_label(w.word)}; T{i + 1} undefined")
            d = qmq / (one - one / v)
            col = {index[w]: d}
            k = index.get(si * w)
            if k is not None:
                off = qinv + d
                if off:
                    col[k] = off
            cols.append(col)
        T.append(Matrix.from_columns(n, cols, one))
    return MatrixRep(rs, list(F), T, X, ctx.q(), X_inv, weights=wts, candidates=list(dict.fromkeys(wts)), kind="skew")


def build_skew_module(
    rs: RootSystem, t: Weight, J: Iterable[int], cap: int | None = None, force: bool = False
) -> SkewModule:
    """The module on the standard tableaux of ``(t, J)``; every relation is checked.

    With ``force`` the calibratable precondition is skipped and relation
    failures are returned in the report instead of raised.
    """
    J = frozenset(J)
    F = tableaux(rs, t, J, cap)
    if not F:
        raise SkewShapeError("not a placed shape: no standard tableaux")
    if not force:
        ok, why = skew_shape_detail(rs, t, J, cap)
        if not ok:
            raise SkewShapeError(f"not a placed skew shape: {why}")
    rep = skew_matrices(rs, t, F)
    report = verify_defining_relations(rep)
    if not report.ok and not force:
        raise SkewShapeError(f"relation check failed: {report.summary()}")
    shape = PlacedShape(t, J, tuple(F))
    return SkewModule(rep, shape, dict(zip(F, rep.weights)), report)


def direct_sum(a: MatrixRep, b: MatrixRep) -> MatrixRep:
    na = a.dim

    def block(x: Matrix, y: Matrix) -> Matrix:
        rows = [dict(r) for r in x.rows] + [{j + na: v for j, v in r.items()} for r in y.rows]
        return Matrix(na + b.dim, na + b.dim, rows, x.one)

    inv = None
    if a.X_inv is not None and b.X_inv is not None and None not in a.X_inv and None not in b.X_inv:
        inv = [block(x, y) for x, y in zip(a.X_inv, b.X_inv)]
    weights = a.weights + b.weights if a.weights is not None and b.weights is not None else None
    cands = None
    if a.candidates is not None and b.candidates is not None:
        cands = list(dict.fromkeys(a.candidates + b.candidates))
    return MatrixRep(
        a.rs,
        [("L", x) for x in a.labels] + [("R", x) for x in b.labels],
        [block(x, y) for x, y in zip(a.T, b.T)],
        [block(x, y) for x, y in zip(a.X, b.X)],
        a.q,
        inv,
        weights=weights,
        candidates=cands,
        kind="direct-sum",
    )


# ---- tau operators ------------------------------------------------------
@dataclass
class TauOperator:
    source: Weight
    target: Weight
    i: int
    matrix: Matrix  # target coordinates x source coordinates


class TauContext:
    """Generalized weight spaces of a module, with restricted operators."""

    def __init__(self, M: MatrixRep, report: WeightReport | None = None):
        self.M = M
        self.report = report or weight_space_analysis(M)
        self.spaces = {sp.weight: sp.generalized for sp in self.report.spaces}
        self.pivots = {s: pivots_of(b) for s, b in self.spaces.items()}
        self._tau: dict = {}
        self._restr: dict = {}

    def basis(self, s: Weight) -> list:
        return self.spaces.get(s, [])

    def restricted(self, lam: Sequence[int], s: Weight) -> Matrix:
        key = (tuple(lam), s)
        m = self._restr.get(key)
        if m is None:
            B = self.basis(s)
            m = self._restr[key] = restrict(self.M.x_power(lam), B, B, self.pivots.get(s, []))
        return m

    def tau(self, i: int, s: Weight) -> TauOperator:
        key = (i, s)
        op = self._tau.get(key)
        if op is not None:
            return op
        M = self.M
        if s.simple_value(i).is_one():
            raise TauUndefinedError(f"tau_{i + 1} undefined: value 1 on a{i + 1}")
        src = self.basis(s)
        if not src:
            raise TauUndefinedError("source weight space is zero")
        tgt_w = s.reflect(i)
        tgt = self.basis(tgt_w)
        d = len(src)
        a = M.rs.simple_root(i)
        Y = self.restricted(tuple(-x for x in a), s)
        one = M.one
        R = inverse(Matrix.identity(d, one) - Y)
        # tau on each source basis vector, in ambient coordinates
        imgs = []
        for j, b in enumerate(src):
            v = M.T[i].apply(b)
            for k, c in R.column(j).items():
                for r, x in src[k].items():
                    y = v.get(r)
                    z = -(M.qmq * c * x) if y is None else y - M.qmq * c * x
                    if z:
                        v[r] = z
                    else:
                        v.pop(r, None)
            imgs.append(v)
        ident = Matrix.from_columns(M.dim, imgs, one)
        piv = self.pivots.get(tgt_w, [])
        mat = restrict(ident, [{j: one} for j in range(d)], tgt, piv)
        op = self._tau[key] = TauOperator(s, tgt_w, i, mat)
        return op


def tau_matrix(M: MatrixRep, i: int, s: Weight, ctx: TauContext | None = None) -> TauOperator:
    """Matrix of ``T_i - (q - q^-1)(1 - X^{-alpha_i})^{-1}`` from the space at ``s`` to that at ``s_i s``."""
    return (ctx or TauContext(M)).tau(i, s)


def _scalar_of_pair(ctx: TauContext, i: int, s: Weight) -> Matrix:
    """``(q - q^-1 Z)(q - q^-1 Z^-1) / ((1 - Z)(1 - Z^-1))`` for ``Z = X^{alpha_i}`` on the space at ``s``."""
    M = ctx.M
    a = M.rs.simple_root(i)
    Z = ctx.restricted(a, s)
    Zi = ctx.restricted(tuple(-x for x in a), s)
    d = Z.nrows
    I = Matrix.identity(d, M.one)
    qinv = M.one / M.q
    num = (I.scale(M.q) - Z.scale(qinv)) @ (I.scale(M.q) - Zi.scale(qinv))
    den = (I - Z) @ (I - Zi)
    return num @ inverse(den)


def verify_tau_properties(M: MatrixRep, report: WeightReport | None = None) -> RelationReport:
    """Intertwining, square, invertibility and braid checks for every tau on the support."""
    ctx = TauContext(M, report)
    rs = M.rs
    n = rs.rank
    checks: list[Check] = []
    support = list(ctx.spaces)
    for s in support:
        q2 = q_power(s.ctx, 2)
        qm2 = q_power(s.ctx, -2)
        for i in range(n):
            tag = f"{s} i={i + 1}"
            if s.simple_value(i).is_one():
                checks.append(Check(f"tau undefined {tag}", True, "undefined", skipped=True))
                continue
            op = ctx.tau(i, s)
            t2 = op.target
            # intertwining with every fundamental weight
            ok = True
            a = rs.simple_root(i)
            for k in range(n):
                lam = tuple(int(j == k) for j in range(n))
                slam = tuple(l - lam[i] * x for l, x in zip(lam, a))
                lhs = ctx.restricted(lam, t2) @ op.matrix
                rhs = op.matrix @ ctx.restricted(slam, s)
                ok = ok and lhs == rhs
            checks.append(Check(f"intertwining {tag}", ok))
            back = ctx.tau(i, t2) if ctx.basis(t2) else None
            sq = back.matrix @ op.matrix if back is not None else Matrix.zeros(op.matrix.ncols, op.matrix.ncols, M.one)
            checks.append(Check(f"square scalar {tag}", sq == _scalar_of_pair(ctx, i, s)))
            v = s.simple_value(i)
            pole = v == q2 or v == qm2
            if ctx.restricted(a, s).is_diagonal():
                checks.append(Check(f"square vanishes iff q^+-2 {tag}", sq.is_zero() == pole))
            else:
                # X^{alpha_i} is not semisimple here, so the square is at best nilpotent
                nil = (sq ** sq.nrows).is_zero()
                checks.append(Check(f"square nilpotent iff q^+-2 {tag}", nil == pole))
            both = is_invertible(op.matrix) and back is not None and is_invertible(back.matrix)
            checks.append(Check(f"invertible both ways iff not q^+-2 {tag}", both == (not pole)))
    for i in range(n):
        for j in range(i + 1, n):
            m = braid_order(rs, i, j)
            for s in support:
                paths = []
                for first, second in ((i, j), (j, i)):
                    cur, prod = s, None
                    for k in range(m):
                        r = first if k % 2 == 0 else second
                        if cur.simple_value(r).is_one() or not ctx.basis(cur):
                            prod = None
                            break
                        op = ctx.tau(r, cur)
                        prod = op.matrix if prod is None else op.matrix @ prod
                        cur = op.target
                    paths.append(prod)
                tag = f"braid tau{i + 1},tau{j + 1} at {s}"
                if paths[0] is None or paths[1] is None:
                    checks.append(Check(tag, True, "undefined", skipped=True))
                else:
                    checks.append(Check(tag, paths[0] == paths[1]))
    return RelationReport(checks)


# ---- certificates -------------------------------------------------------
@dataclass
class Certificate:
    ok: bool
    reasons: list[str] = field(default_factory=list)


def irreducibility_certificate(M: MatrixRep | SkewModule, g: CalibrationGraph) -> Certificate:
    """Support is one graph component, weight spaces are genuine lines, every weight vector generates."""
    rep = M.rep if isinstance(M, SkewModule) else M
    reasons = []
    analysis = weight_space_analysis(rep)
    if not analysis.complete:
        reasons.append("weight spaces do not span the module")
    if not analysis.calibrated:
        reasons.append("some generalized weight space is not genuine")
    if any(sp.generalized_dim != 1 for sp in analysis.spaces):
        reasons.append("some weight space has dimension other than 1")
    comp = components_and_shapes(g)
    pos = {s: k for k, (_, s) in enumerate(g.vertices)}
    try:
        idx = sorted(pos[s] for s in analysis.support)
    except KeyError:
        idx = None
        reasons.append("support leaves the orbit of the graph")
    if idx is not None and idx not in comp.components:
        reasons.append("support is not a single connected component")
    if not reasons:
        for sp in analysis.spaces:
            for v in sp.genuine:
                d = cyclic_closure(rep, v)
                if d != rep.dim:
                    reasons.append(f"weight vector at {sp.weight} generates a submodule of dimension {d}")
    return Certificate(not reasons, reasons)


@dataclass
class ClassifiedShape:
    shape: PlacedShape
    skew: bool
    reason: str

    @property
    def dim(self) -> int:
        return self.shape.dim


def classify_calibrated(rs: RootSystem, t: Weight, cap: int | None = None) -> list[ClassifiedShape]:
    """All placed shapes of ``t`` tagged by whether they are skew."""
    out = []
    for sh in placed_shapes(rs, t, cap):
        ok, why = skew_shape_detail(rs, t, sh.J, cap)
        out.append(ClassifiedShape(sh, ok, why))
    return out


# ---- the two-dimensional G2 block --------------------------------------
G2_DEMO_GAMMA = (0, 1)


@dataclass
class G2Block:
    module: SkewModule
    w: WeylElement
    long_index: int
    short_index: int
    T_long: Matrix
    T_short: Matrix
    X_long: Matrix
    X_short: Matrix


def g2_case2_block(cap: int | None = None) -> G2Block:
    """The G2 skew module whose tableaux ``w, s_i w`` carry ``X^{alpha_long} = diag(q^4, q^-4)``.

    Returns the generator matrices restricted to ``span{v_w, v_{s_i w}}``
    with ``i`` the long simple root.
    """
    from .roots import build_root_system
    from .weights import real_weight

    rs = build_root_system("G2")
    long_ = next(k for k in range(2) if rs.positive_roots[k].long)
    short = 1 - long_
    t = real_weight(rs, G2_DEMO_GAMMA)
    mod = build_skew_module(rs, t, frozenset(), cap)
    q4 = q_power(t.ctx, 4)
    F = list(mod.tableaux)
    si = WeylElement.simple(rs, long_)
    for k, w in enumerate(F):
        s = mod.weight_map[w]
        if s.simple_value(long_) == q4 and si * w in mod.weight_map:
            pair = [k, F.index(si * w)]
            break
    else:
        raise SkewShapeError("no tableau pair with the expected eigenvalue pattern")
    sub = lambda m: m.submatrix(pair, pair)
    rep = mod.rep
    for m in rep.T + rep.X:
        for c in pair:
            if not set(m.column(c)) <= set(pair):
                raise SkewShapeError("the tableau pair does not span an invariant subspace")
    return G2Block(
        mod,
        F[pair[0]],
        long_,
        short,
        sub(rep.T[long_]),
        sub(rep.T[short]),
        sub(rep.x_power(rs.simple_root(long_))),
        sub(rep.x_power(rs.simple_root(short))),
    )
