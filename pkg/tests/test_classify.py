import random

import pytest
import sympy as sp

from draws import PARAMS, random_family
from singtwin.classify import (
    FamilyMatch,
    Invalid,
    Unmatched,
    classify_blocks,
    classify_point_n2,
    generate_equations_n2,
    grid_classify,
    normalize_sign,
)
from singtwin.linalg import Matrix

a, b, c, d, w, x, y, z = sp.symbols("a b c d w x y z")
HAND = [
    a**2 + b*c - 1,
    a*b + b*d,
    a*c + c*d,
    b*c + d**2 - 1,
    -c*x + b*y,
    b*w - a*x + d*x - b*z,
    c*w - a*y + d*y - c*z,
]


def test_equations_match_hand_list():
    sysm = generate_equations_n2()
    gens = sysm.unknowns
    derived = {normalize_sign(e, gens) for e in sysm.equations}
    hand = {normalize_sign(e, gens) for e in HAND}
    assert len(sysm.equations) == 7
    assert derived == hand
    assert sp.expand(sysm.inequations[0] - (a*d - b*c)) == 0


def test_equation_examples():
    eqs = generate_equations_n2().equations
    gens = (a, b, c, d, w, x, y, z)
    assert normalize_sign(a**2 + b*c - 1, gens) in eqs
    assert normalize_sign(b*w - a*x + d*x - b*z, gens) in eqs


def pt(**kw):
    return {k: str(v) for k, v in kw.items()}


def test_point_gamma6():
    r = classify_point_n2(pt(a=1, b=0, c=0, d=1, w=2, x=1, y=3, z=5))
    assert isinstance(r, FamilyMatch) and r.family == "gamma6"


def test_point_gamma3():
    # a = -1, d = 1, b = 0, c = 2: S T = T S forces x = 0 and z = w + y
    r = classify_point_n2(pt(a=-1, b=0, c=2, d=1, w=3, x=0, y=4, z=7))
    assert isinstance(r, FamilyMatch) and r.family == "gamma3"
    assert r.params["c"] == 2


def test_point_gamma1_or_2_with_bc_one():
    r = classify_point_n2(pt(a=0, b=1, c=1, d=0, w=2, x=1, y=1, z=2))
    assert isinstance(r, FamilyMatch)
    assert {r.family, *r.alternatives} >= {"gamma1", "gamma2"}


def test_point_invalid():
    assert isinstance(classify_point_n2(pt(a=1, b=1, c=1, d=1, w=1, x=0, y=0, z=1)), Invalid)
    assert isinstance(classify_point_n2(pt(a=1, b=0, c=0, d=1, w=1, x=1, y=1, z=1)), Invalid)


def test_minus_identity_is_unmatched():
    r = classify_point_n2(pt(a=-1, b=0, c=0, d=-1, w=1, x=0, y=0, z=2))
    assert isinstance(r, Unmatched)


def test_swap_equivalence():
    r = classify_point_n2(pt(a=1, b=0, c=0, d=-1, w=2, x=0, y=0, z=3))
    assert isinstance(r, FamilyMatch) and r.family == "gamma5" and r.equivalence == "swap"


@pytest.mark.parametrize("family", [f for f in PARAMS if f.startswith("gamma")])
def test_round_trip_n2(family):
    rng = random.Random(family)
    for _ in range(20):
        rep = random_family(rng, family, 2)
        S, T = rep.s[0], rep.tau[0]
        vals = dict(zip("abcd", (str(v) for row in S.tolist() for v in row)))
        vals.update(zip("wxyz", (str(v) for row in T.tolist() for v in row)))
        r = classify_point_n2(vals)
        assert isinstance(r, FamilyMatch)
        names = {r.family, *r.alternatives}
        pair = {"gamma1", "gamma2"}
        # gamma1(a) and gamma2(-a) are the same matrices
        assert family in names or (family in pair and names & pair), (family, r)


@pytest.mark.parametrize("family", [f for f in PARAMS if f.startswith("theta")])
def test_round_trip_theta(family):
    rng = random.Random(family)
    for n in (3, 4):
        for _ in range(10):
            rep = random_family(rng, family, n)
            S = Matrix([[rep.s[0][0, 0], rep.s[0][0, 1]], [rep.s[0][1, 0], rep.s[0][1, 1]]])
            T = Matrix([[rep.tau[0][0, 0], rep.tau[0][0, 1]], [rep.tau[0][1, 0], rep.tau[0][1, 1]]])
            r = classify_blocks(S, T, n)
            assert r is not None
            names = {r.family, *r.alternatives}
            twins = {"theta2", "theta3"}
            assert family in names or (family in twins and names & twins), (family, r)


def test_grid_examples_small():
    rep = grid_classify("general", 3, ["0", "1", "-1"])
    assert rep.unmatched == []
    assert rep.checked == 3 ** 8
    assert rep.valid == rep.matched > 0
    m = classify_blocks(Matrix([[0, 1], [1, 0]]), Matrix([[0, 1], [1, 0]]), 3)
    assert m.family == "theta1" and m.params["b"] == 1 and m.params["w"] == 0 and m.params["x"] == 1


@pytest.mark.parametrize("n", [3, 4])
def test_grid_gaussian_units(n):
    rep = grid_classify("general", n, ["0", "1", "-1", "i", "-i"])
    assert rep.checked == 5 ** 8
    assert rep.unmatched == []
    assert rep.valid == rep.matched


def test_grid_n2_finds_only_minus_identity():
    rep = grid_classify("n2", 2, ["0", "1", "-1"])
    assert rep.unmatched
    assert all(u["s"] == [["-1+0i", "0+0i"], ["0+0i", "-1+0i"]] for u in rep.unmatched)


def test_grid_budget_truncates():
    rep = grid_classify("general", 3, ["0", "1", "-1"], budget=100)
    assert rep.truncated and rep.checked == 100
