"""Calibration graphs, placed shapes and standard tableaux."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .roots import RootSystem
from .scalars import q_power
from .weights import PlacedShape, Weight, WeightError, orbit, zero_pole_sets
from .weyl import WeylElement, mask_of, min_coset_reps, word_label


@dataclass
class CalibrationGraph:
    rs: RootSystem
    weight: Weight
    vertices: list[tuple[WeylElement, Weight]]
    edges: list[tuple[int, int, int]]  # (a, b, i) with a < b

    def neighbours(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.vertices]
        for a, b, _ in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def index_of(self, s: Weight) -> int | None:
        for k, (_, v) in enumerate(self.vertices):
            if v == s:
                return k
        return None


def build_graph(rs: RootSystem, t: Weight, cap: int | None = None) -> CalibrationGraph:
    """Vertices are the orbit of ``t``; ``wt -- s_i wt`` unless ``(wt)(X^{alpha_i})`` is ``q^{+-2}``."""
    verts = orbit(rs, t, cap)
    pos = {s: k for k, (_, s) in enumerate(verts)}
    q2 = q_power(t.ctx, 2)
    qm2 = q_power(t.ctx, -2)
    edges = set()
    for a, (_, s) in enumerate(verts):
        for i in range(rs.rank):
            v = s.simple_value(i)
            if v.is_one() or v == q2 or v == qm2:
                continue
            b = pos[s.reflect(i)]
            edges.add((min(a, b), max(a, b), i))
    return CalibrationGraph(rs, t, verts, sorted(edges))


@dataclass
class ComponentReport:
    components: list[list[int]]
    J: list[frozenset[int]]
    consistent: bool


def _bfs_components(g: CalibrationGraph) -> list[list[int]]:
    adj = g.neighbours()
    seen = [False] * len(g.vertices)
    comps = []
    for start in range(len(g.vertices)):
        if seen[start]:
            continue
        seen[start] = True
        comp, queue = [], deque([start])
        while queue:
            a = queue.popleft()
            comp.append(a)
            for b in adj[a]:
                if not seen[b]:
                    seen[b] = True
                    queue.append(b)
        comps.append(sorted(comp))
    return comps


def components_and_shapes(g: CalibrationGraph) -> ComponentReport:
    """Graph components next to the classes of ``R(w) & P(t)``, and whether they agree."""
    comps = _bfs_components(g)
    z, p = g.weight.masks()
    classes: dict[int, list[int]] = {}
    for k, (w, _) in enumerate(g.vertices):
        inv = w.inversion_mask()
        if inv & z:
            raise WeightError(f"orbit representative {word_label(w.word)} has an inversion in Z(t)")
        classes.setdefault(inv & p, []).append(k)
    by_class = sorted(sorted(c) for c in classes.values())
    consistent = by_class == sorted(comps)
    Js = []
    for comp in comps:
        masks = {g.vertices[k][0].inversion_mask() & p for k in comp}
        m = masks.pop() if len(masks) == 1 else None
        Js.append(frozenset(r for r in range(g.rs.n_positive) if m is not None and m >> r & 1))
        consistent = consistent and m is not None
    return ComponentReport(comps, Js, consistent)


def tableaux(rs: RootSystem, t: Weight, J: Iterable[int], cap: int | None = None) -> list[WeylElement]:
    """Standard tableaux: ``w`` with ``R(w)`` missing ``Z(t)`` and meeting ``P(t)`` in ``J``."""
    z, p = t.masks()
    jm = mask_of(J)
    if jm & ~p:
        raise WeightError("J must be a subset of P(t)")
    Z, _ = zero_pole_sets(rs, t)
    return [w for w in min_coset_reps(rs, Z, cap) if w.inversion_mask() & p == jm]


def placed_shapes(rs: RootSystem, t: Weight, cap: int | None = None) -> list[PlacedShape]:
    """Every placed shape of ``t``, ordered by their first tableau."""
    g = build_graph(rs, t, cap)
    rep = components_and_shapes(g)
    if not rep.consistent:
        raise WeightError("graph components disagree with the inversion-set classification")
    out = []
    for comp, J in zip(rep.components, rep.J):
        tabs = sorted((g.vertices[k][0] for k in comp), key=WeylElement.sort_key)
        out.append(PlacedShape(t, J, tuple(tabs)))
    out.sort(key=lambda s: s.tableaux[0].sort_key())
    return out


def root_set_label(rs: RootSystem, J: Iterable[int]) -> str:
    return "{" + ",".join(rs.label(k) for k in sorted(J)) + "}"


def to_dot(g: CalibrationGraph) -> str:
    _, p = g.weight.masks()
    lines = ["graph calibration {"]
    for k, (w, _) in enumerate(g.vertices):
        J = [r for r in range(g.rs.n_positive) if (w.inversion_mask() & p) >> r & 1]
        lines.append(f'  v{k} [label="{word_label(w.word)} | {root_set_label(g.rs, J)}"];')
    for a, b, i in g.edges:
        lines.append(f'  v{a} -- v{b} [label="{i + 1}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
