from __future__ import annotations

import pytest

from affine_hecke.roots import (
    CartanKind,
    RootSystemError,
    braid_order,
    build_root_system,
    cartan_matrix,
    pairing,
    reflect,
)
from affine_hecke.weyl import (
    WeylCapError,
    WeylElement,
    enumerate_group,
    inversion_set,
    min_coset_reps,
    weyl_group,
    word_label,
)

# entry (i, j) is <alpha_j, alpha_i^vee>, the transpose of the Bourbaki tables
CARTAN = {
    "A2": [[2, -1], [-1, 2]],
    "C2": [[2, -2], [-1, 2]],
    "G2": [[2, -3], [-1, 2]],
    "B3": [[2, -1, 0], [-1, 2, -1], [0, -2, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
}


def closure_oracle(A):
    """Positive roots in simple coordinates by closing the simple roots under reflections."""
    n = len(A)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                # <r, alpha_i^vee> = sum_j r_j A[i][j]
                k = sum(r[j] * A[i][j] for j in range(n))
                img = tuple(r[j] - (k if j == i else 0) for j in range(n))
                if all(x >= 0 for x in img) and img not in roots:
                    roots.add(img)
                    nxt.append(img)
        frontier = nxt
    return roots


def group_oracle(A):
    n = len(A)
    gens = []
    for i in range(n):
        # action on omega-coordinates: lam -> lam - lam_i * alpha_i, alpha_i = column i of A
        gens.append(tuple(tuple(int(r == c) - (A[r][i] if c == i else 0) for c in range(n)) for r in range(n)))
    mul = lambda a, b: tuple(tuple(sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n)) for r in range(n))
    e = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
    seen, frontier = {e: 0}, [e]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                m = mul(w, g)
                if m not in seen:
                    seen[m] = seen[w] + 1
                    nxt.append(m)
        frontier = nxt
    return seen


@pytest.mark.parametrize("name", sorted(CARTAN))
def test_cartan_matches_bourbaki(name):
    assert [list(r) for r in cartan_matrix(CartanKind.parse(name))] == CARTAN[name]


@pytest.mark.parametrize("name", sorted(CARTAN))
def test_positive_roots_match_closure(name):
    rs = build_root_system(name)
    assert {r.simple for r in rs.positive_roots} == closure_oracle(CARTAN[name])


@pytest.mark.parametrize("name, count", [("A2", 3), ("G2", 6), ("B3", 9), ("C3", 9), ("D4", 12), ("F4", 24)])
def test_positive_counts(name, count):
    assert build_root_system(name).n_positive == count


def test_a2_labels_and_order():
    rs = build_root_system("A2")
    assert [rs.label(k) for k in range(3)] == ["a1", "a2", "a1+a2"]
    assert rs.parse_label("a1+a2") == 2
    with pytest.raises(RootSystemError):
        rs.parse_label("2a1")


def test_lengths():
    for name in ("C2", "G2", "B3"):
        rs = build_root_system(name)
        longs = [rs.positive_roots[i].long for i in range(rs.rank)]
        expected = {"C2": [False, True], "G2": [False, True], "B3": [True, True, False]}[name]
        assert longs == expected


@pytest.mark.parametrize("bad", [("A", 0), ("B", 1), ("D", 3), ("E", 5), ("G", 3), ("Q", 2)])
def test_invalid_rank(bad):
    with pytest.raises(RootSystemError):
        CartanKind(*bad)


def test_pairing_and_reflect():
    rs = build_root_system("A2")
    w1, a1 = (1, 0), rs.simple_root(0)
    assert pairing(rs, w1, 1) == 0
    assert pairing(rs, a1, 0) == 2
    assert pairing(rs, a1, 1) == -1
    assert reflect(rs, 0, a1) == (-2, 1)
    assert reflect(rs, 0, w1) == (-1, 1)


def test_g2_long_reflects_short():
    rs = build_root_system("G2")
    i, j = 1, 0  # alpha_2 long
    img = reflect(rs, i, rs.simple_root(j))
    assert img == tuple(x + y for x, y in zip(rs.simple_root(i), rs.simple_root(j)))


@pytest.mark.parametrize("name, m", [("A2", 3), ("C2", 4), ("G2", 6)])
def test_braid_order(name, m):
    assert braid_order(build_root_system(name), 0, 1) == m


def test_braid_order_same_index():
    with pytest.raises(RootSystemError):
        braid_order(build_root_system("A2"), 0, 0)


@pytest.mark.parametrize("name, size", [("A2", 6), ("C2", 8), ("G2", 12), ("B3", 48), ("A3", 24)])
def test_group_size_matches_oracle(name, size):
    rs = build_root_system(name)
    W = weyl_group(rs)
    oracle = group_oracle(CARTAN[name])
    assert len(W) == len(oracle) == size
    assert {w.matrix: w.length for w in W} == oracle


def test_a2_length_profile():
    rs = build_root_system("A2")
    assert [len(x) for x in enumerate_group(rs)] == [1, 2, 2, 1]


def test_elements_and_words():
    rs = build_root_system("A2")
    s1 = WeylElement.simple(rs, 0)
    assert s1 * s1 == WeylElement.identity(rs)
    assert s1.act((1, 0)) == (-1, 1)
    w = WeylElement.from_word(rs, [1, 0])
    assert word_label(w.word) == "s2s1"
    assert w.inverse() * w == WeylElement.identity(rs)
    # reduced words are re-derived from the matrix
    assert WeylElement.from_word(rs, [0, 1, 0]).word == (0, 1, 0)
    assert WeylElement.from_word(rs, [1, 0, 1]) == WeylElement.from_word(rs, [0, 1, 0])


def test_inversion_sets():
    rs = build_root_system("A2")
    e = WeylElement.identity(rs)
    assert inversion_set(rs, e) == frozenset()
    assert inversion_set(rs, WeylElement.simple(rs, 0)) == {0}
    assert inversion_set(rs, WeylElement.from_word(rs, [1, 0])) == {0, 2}


@pytest.mark.parametrize("name", ["A2", "C2", "G2", "B3"])
def test_inversion_count_is_length(name):
    rs = build_root_system(name)
    for w in weyl_group(rs):
        assert len(inversion_set(rs, w)) == w.length == len(w.word)


def test_min_coset_reps():
    rs = build_root_system("A2")
    assert len(min_coset_reps(rs, [])) == 6
    reps = min_coset_reps(rs, [1])
    assert sorted(word_label(w.word) for w in reps) == ["1", "s1", "s2s1"]
    assert min_coset_reps(rs, range(3)) == [WeylElement.identity(rs)]


@pytest.mark.parametrize("name", ["C2", "G2", "B3"])
def test_min_coset_reps_filter_oracle(name):
    rs = build_root_system(name)
    for Z in ([0], [1], [0, 1]):
        got = {w for w in min_coset_reps(rs, Z)}
        want = {w for w in weyl_group(rs) if not inversion_set(rs, w) & set(Z)}
        assert got == want


def test_cap(monkeypatch):
    rs = build_root_system("F4")
    with pytest.raises(WeylCapError, match="elements generated so far"):
        weyl_group(rs, cap=100)
    monkeypatch.setenv("HECKE_WEYL_CAP", "5")
    with pytest.raises(WeylCapError):
        weyl_group(build_root_system("B2"))
