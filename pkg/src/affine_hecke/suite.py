"""Weight sweeps and the acceptance checks."""

from __future__ import annotations

import itertools
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .calibration import build_graph, components_and_shapes
from .hecke import (
    AffineHeckeAlgebra,
    GroupAlgebraElem,
    MatrixRep,
    cyclic_closure,
    is_central,
    orbit_sum,
    principal_series,
    verify_defining_relations,
    weight_closures,
    weight_space_analysis,
)
from .linalg import Matrix
from .roots import build_root_system
from .scalars import QContext, format_rational, parse_rational
from .serialize import weight_to_json
from .skew import (
    SkewShapeError,
    build_skew_module,
    classify_calibrated,
    g2_case2_block,
    irreducibility_certificate,
    verify_tau_properties,
)
from .weights import real_weight
from .weyl import weyl_group

NUMERIC_POINT = Fraction(13, 10)


@dataclass
class SweepConfig:
    kinds: list[str] = field(default_factory=lambda: ["A2", "C2", "G2"])
    max_den: int = 3
    lo: Fraction = Fraction(0)
    hi: Fraction = Fraction(2)
    cap: int | None = None
    out_dir: str | None = None
    jobs: int = 1
    corrupt: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.lo = Fraction(self.lo)
        self.hi = Fraction(self.hi)
        for k in self.kinds:
            build_root_system(k)
        if self.max_den < 1:
            raise ValueError("max_den must be positive")
        if self.lo > self.hi:
            raise ValueError("empty exponent range")
        if self.cap is not None and self.cap < 1:
            raise ValueError("cap must be positive")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")

    @classmethod
    def from_dict(cls, d: dict) -> "SweepConfig":
        known = {"kinds", "max_den", "lo", "hi", "cap", "out_dir", "jobs", "corrupt"}
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        d = dict(d)
        for key in ("lo", "hi"):
            if key in d:
                d[key] = parse_rational(str(d[key]))
        return cls(**d)

    def grid(self) -> list[Fraction]:
        vals = set()
        for den in range(1, self.max_den + 1):
            lo = (self.lo * den).__ceil__()
            hi = (self.hi * den).__floor__()
            vals.update(Fraction(p, den) for p in range(lo, hi + 1))
        return sorted(vals)

    def cases(self) -> list[tuple[str, tuple[Fraction, ...]]]:
        g = self.grid()
        out = []
        for k in self.kinds:
            rank = build_root_system(k).rank
            out.extend((k, c) for c in itertools.product(g, repeat=rank))
        return out


@dataclass
class CaseResult:
    input: dict
    shapes: list[dict]
    failures: list[str]
    modules: int
    injected: bool
    seconds: float

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass
class RunReport:
    cases: list[CaseResult]
    seconds: float

    @property
    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "cases": len(self.cases),
            "failed_cases": len(self.failures),
            "shapes": sum(len(c.shapes) for c in self.cases),
            "skew_shapes": sum(sum(1 for s in c.shapes if s["skew"]) for c in self.cases),
            "modules": sum(c.modules for c in self.cases),
            "seconds": round(self.seconds, 3),
        }

    def to_json(self) -> dict:
        return {
            "summary": self.summary(),
            "failures": [asdict(c) for c in self.failures],
            "cases": [asdict(c) for c in self.cases],
        }


def _perturb(M: MatrixRep) -> MatrixRep:
    T0 = M.T[0].copy()
    T0.rows[0][0] = T0[0, 0] + M.one
    if not T0.rows[0][0]:
        del T0.rows[0][0]
    return MatrixRep(M.rs, M.labels, [T0] + M.T[1:], M.X, M.q, M.X_inv, M.weights, M.candidates, M.kind)


def run_case(kind: str, gamma, cap: int | None = None, corrupt: bool = False, keep: list | None = None) -> CaseResult:
    """Graph partition, skew-shape construction and certificates for one weight."""
    start = time.perf_counter()
    rs = build_root_system(kind)
    t = real_weight(rs, gamma)
    failures: list[str] = []
    shapes: list[dict] = []
    built = 0
    injected = False
    g = build_graph(rs, t, cap)
    if not components_and_shapes(g).consistent:
        failures.append("graph components differ from the inversion-set partition")
    for cs in classify_calibrated(rs, t, cap):
        J = [rs.label(k) for k in sorted(cs.shape.J)]
        shapes.append({"J": J, "dim": cs.dim, "skew": cs.skew})
        if not cs.skew:
            continue
        try:
            mod = build_skew_module(rs, t, cs.shape.J, cap)
        except SkewShapeError as exc:
            failures.append(f"shape {J}: {exc}")
            continue
        built += 1
        rep = mod.rep
        if corrupt and not injected:
            rep = _perturb(rep)
            injected = True
            rel = verify_defining_relations(rep)
            if not rel.ok:
                failures.append(f"shape {J}: {rel.summary()}")
        if mod.dim != len(cs.shape.tableaux):
            failures.append(f"shape {J}: dimension {mod.dim} != {len(cs.shape.tableaux)} tableaux")
        cert = irreducibility_certificate(mod, g)
        if not cert.ok:
            failures.append(f"shape {J}: certificate failed: {'; '.join(cert.reasons)}")
        if keep is not None:
            keep.append(mod.rep)
    return CaseResult(weight_to_json(t), shapes, failures, built, injected, time.perf_counter() - start)


def _run_case_args(args) -> CaseResult:
    return run_case(*args)


def run_sweep(config: SweepConfig, keep: list | None = None) -> RunReport:
    start = time.perf_counter()
    bad = set(config.corrupt)
    jobs = [(k, c, config.cap, n in bad) for n, (k, c) in enumerate(config.cases())]
    if config.jobs > 1 and keep is None:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_run_case_args, jobs, chunksize=4))
    else:
        results = [run_case(*j, keep=keep) for j in jobs]
    report = RunReport(results, time.perf_counter() - start)
    if config.out_dir:
        import json
        import os

        os.makedirs(config.out_dir, exist_ok=True)
        with open(os.path.join(config.out_dir, "report.json"), "w") as fh:
            json.dump(report.to_json(), fh, sort_keys=True, indent=1)
    return report


# ---- acceptance criteria ----------------------------------------------
@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.detail}; {self.seconds:.2f}s)"


def _timed(number: int, title: str, fn: Callable[[], tuple[bool, str]]) -> CriterionResult:
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, reported as such
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CriterionResult(number, title, ok, detail, time.perf_counter() - start)


def g2_expected(D: int = 1) -> dict:
    """The G2 two-dimensional block, with the consistent lattice matrices and an unbalanced variant."""
    ctx = QContext(D)
    q, one = ctx.q(), ctx.one()
    qi = one / q
    m = lambda rows: Matrix.from_dense(rows, one)
    return {
        "T_long": m(
            [
                [(q - qi) / (1 - q**-4), (q - q**3) / (1 - q**4)],
                [(q - q**-5) / (1 - q**-4), (q - qi) / (1 - q**4)],
            ]
        ),
        "T_short": m([[-qi, 0 * q], [0 * q, q]]),
        "X_long": m([[q**4, 0 * q], [0 * q, q**-4]]),
        "X_short": m([[q**-2, 0 * q], [0 * q, q**2]]),
        "X_long_unbalanced": m([[q**4, 0 * q], [0 * q, q**-2]]),
        "X_short_unbalanced": m([[q**-4, 0 * q], [0 * q, q**2]]),
    }


@lru_cache(maxsize=None)
def _c2_modules():
    rs = build_root_system("C2")
    t = real_weight(rs, (Fraction(1, 2), 0))
    return build_skew_module(rs, t, frozenset()), build_skew_module(rs, t, frozenset({0}))


def criterion_1() -> tuple[bool, str]:
    b = g2_case2_block()
    exp = g2_expected(b.T_long.one.D)
    problems = []
    for key in ("T_long", "T_short", "X_long", "X_short"):
        if getattr(b, key) != exp[key]:
            problems.append(f"G2 {key} differs")
    if b.X_long == exp["X_long_unbalanced"] or b.X_short == exp["X_short_unbalanced"]:
        problems.append("unbalanced lattice matrices unexpectedly consistent")
    rs = build_root_system("C2")
    long_ = next(k for k in range(2) if rs.positive_roots[k].long)
    short = 1 - long_
    case1, case2 = _c2_modules()
    ctx = case1.rep.T[0].one
    q = QContext(ctx.D).q()
    qi = 1 / q
    for mod, tl, ts, xl, xs in ((case1, -qi, q, q**-2, q**2), (case2, q, -qi, q**2, q**-2)):
        rep = mod.rep
        if rep.dim != 1:
            problems.append("C2 module is not one-dimensional")
            continue
        got = (rep.T[long_][0, 0], rep.T[short][0, 0])
        xs_got = (rep.x_power(rs.simple_root(long_))[0, 0], rep.x_power(rs.simple_root(short))[0, 0])
        if got != (tl, ts) or xs_got != (xl, xs):
            problems.append(f"C2 eigenvalues {got} {xs_got}")
    return not problems, "; ".join(problems) or "G2 block and C2 eigenvalues exact"


def rank2_config() -> SweepConfig:
    return SweepConfig(kinds=["A2", "C2", "G2"], max_den=3)


@lru_cache(maxsize=None)
def _rank2_sweep():
    keep: list = []
    return run_sweep(rank2_config(), keep=keep), keep


def criterion_2() -> tuple[bool, str]:
    report, _ = _rank2_sweep()
    s = report.summary()
    return report.ok, f"{s['cases']} weights, {s['skew_shapes']} skew shapes built, {s['failed_cases']} failures"


@lru_cache(maxsize=None)
def _a3_objects():
    rs = build_root_system("A3")
    t = real_weight(rs, (Fraction(1, 5), Fraction(1, 7), Fraction(1, 11)))
    M = principal_series(rs, t)
    S = build_skew_module(rs, t, frozenset())
    return rs, t, M, S


def criterion_3() -> tuple[bool, str]:
    rs, t, M, S = _a3_objects()
    problems = []
    g = build_graph(rs, t)
    comps = components_and_shapes(g).components
    if len(comps) != 1:
        problems.append(f"graph has {len(comps)} components")
    order = len(weyl_group(rs))
    if S.dim != order:
        problems.append(f"skew module dimension {S.dim}")
    if not verify_defining_relations(M).ok:
        problems.append("principal series relations fail")
    rep = weight_space_analysis(M)
    if not rep.calibrated or len(rep.spaces) != order or any(sp.genuine_dim != 1 for sp in rep.spaces):
        problems.append("principal series is not calibrated with one-dimensional spaces")
    if Counter(rep.support) != Counter(S.rep.weights):
        problems.append("weight multisets differ")
    closures = weight_closures(M, rep) or {}
    closures = [closures.get(s) for s in rep.support]
    if any(d != order for d in closures):
        problems.append(f"principal series closure dimensions {sorted(set(map(str, closures)))}")
    skew_closures = {cyclic_closure(S.rep, {k: S.rep.one}) for k in range(S.dim)}
    if skew_closures != {order}:
        problems.append(f"skew module closure dimensions {sorted(skew_closures)}")
    return not problems, "; ".join(problems) or f"{order} weights, closure {order} from each"


def criterion_4() -> tuple[bool, str]:
    rs = build_root_system("A2")
    t = real_weight(rs, (Fraction(2, 3), Fraction(1, 3)))
    rep = weight_space_analysis(principal_series(rs, t))
    dims = [sp.generalized_dim for sp in rep.spaces]
    stab = len(weyl_group(rs)) // len(rep.spaces) if rep.spaces else 0
    ok = len(dims) == 3 and all(d == 2 for d in dims) and stab == 2
    return ok, f"generalized dims {dims}, |W_t| = {stab}"


TAU_WEIGHTS = {
    "A2": [(Fraction(1, 5), Fraction(1, 7)), (Fraction(1, 10), Fraction(9, 10)), (Fraction(1, 2), Fraction(0))],
    "C2": [(Fraction(1, 5), Fraction(1, 7)), (Fraction(1, 10), Fraction(3, 5))],
    "G2": [(Fraction(1, 5), Fraction(1, 7)), (Fraction(1, 10), Fraction(11, 10))],
}


def criterion_5() -> tuple[bool, str]:
    problems = []
    n_checks = vanishing = 0
    for kind, gammas in TAU_WEIGHTS.items():
        rs = build_root_system(kind)
        for c in gammas:
            M = principal_series(rs, real_weight(rs, c))
            rep = verify_tau_properties(M)
            n_checks += len(rep.checks)
            if rep.checks and all(ch.skipped for ch in rep.checks):
                problems.append(f"{kind} {c}: nothing checked")
            for ch in rep.failures():
                problems.append(f"{kind} {c}: {ch.name}")
            M_an = weight_space_analysis(M)
            for s in M_an.support:
                for i in range(rs.rank):
                    v = s.simple_value(i)
                    if v == s.ctx.q_power(2) or v == s.ctx.q_power(-2):
                        vanishing += 1
    if vanishing == 0:
        problems.append("no weight exercised the vanishing square")
    return not problems, "; ".join(problems[:5]) or f"{n_checks} checks, {vanishing} vanishing squares"


def criterion_6() -> tuple[bool, str]:
    problems = []
    for kind in ("A2", "C2"):
        rs = build_root_system(kind)
        w1 = tuple(int(j == 0) for j in range(rs.rank))
        if not is_central(rs, orbit_sum(rs, w1)):
            problems.append(f"{kind} orbit sum not central")
        if is_central(rs, GroupAlgebraElem.monomial(rs, 1, w1)):
            problems.append(f"{kind} X^omega1 reported central")
        if not is_central(rs, GroupAlgebraElem.monomial(rs, 1, (0,) * rs.rank)):
            problems.append(f"{kind} constant not central")
    return not problems, "; ".join(problems) or "orbit sums central, X^omega1 not"


def criterion_modules() -> list[MatrixRep]:
    """Every module built by criteria 1 to 3."""
    mods = [g2_case2_block().module.rep]
    mods.extend(m.rep for m in _c2_modules())
    mods.extend(_rank2_sweep()[1])
    _, _, M, S = _a3_objects()
    mods.extend([M, S.rep])
    return mods


def criterion_7() -> tuple[bool, str]:
    mods = criterion_modules()
    bad = []
    for M in mods:
        E = M.evaluate(NUMERIC_POINT)
        r = verify_defining_relations(E)
        if not r.ok:
            bad.append(f"{M.kind} {M.rs.kind}: {r.summary()}")
    return not bad, "; ".join(bad[:5]) or f"{len(mods)} modules hold at u = {format_rational(NUMERIC_POINT)}"


def criterion_8() -> tuple[bool, str]:
    report = run_sweep(SweepConfig(kinds=["B3"], max_den=2))
    s = report.summary()
    return report.ok, f"{s['cases']} weights, {s['skew_shapes']} skew shapes built, {s['failed_cases']} failures"


CRITERIA = {
    1: ("explicit G2 and C2 matrices", criterion_1),
    2: ("rank-2 sweep", criterion_2),
    3: ("A3 principal series vs construction", criterion_3),
    4: ("multiplicity of generalized weight spaces", criterion_4),
    5: ("tau operator identities", criterion_5),
    6: ("center spot-check", criterion_6),
    7: ("exact numeric consistency", criterion_7),
    8: ("B3 smoke sweep", criterion_8),
}


def run_criterion(number: int) -> CriterionResult:
    title, fn = CRITERIA[number]
    return _timed(number, title, fn)


def run_acceptance(numbers=None) -> list[CriterionResult]:
    return [run_criterion(n) for n in (numbers or sorted(CRITERIA))]
