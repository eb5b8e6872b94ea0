import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

import oracles
from draws import PARAMS, gaussian, random_family
from singtwin.linalg import Matrix
from singtwin.reps import (
    ConstraintViolation,
    LocalBlock,
    construct_family,
    embed_local,
    evaluate_word,
    local_representation,
    verify_relations,
)
from singtwin.scalar import Scalar
from singtwin.words import GroupKind, IllegalLetter, IndexOutOfRange, Word, parse_word


def to_sympy(m: Matrix) -> sp.Matrix:
    def conv(x):
        a, b, _, _ = x.parts
        return sp.Rational(a.numerator, a.denominator) + sp.I * sp.Rational(b.numerator, b.denominator)
    return sp.Matrix([[conv(x) for x in row] for row in m.tolist()])


def test_embed_identity_block():
    assert embed_local(LocalBlock(Matrix.identity(2), 1), 4) == Matrix.identity(4)


def test_embed_burau():
    rep = construct_family("burau", 3, t=2)
    assert rep.s[0] == Matrix([[-1, 2, 0], [1, 0, 0], [0, 0, 1]])


def test_embed_f_block_grows():
    rep = construct_family("f", 3, t=2)
    assert rep.dim == 4 and rep.s[0].rows == 4


def test_embed_out_of_range():
    with pytest.raises(IndexOutOfRange):
        embed_local(LocalBlock(Matrix.identity(2), 3), 3)
    with pytest.raises(IndexOutOfRange):
        embed_local(LocalBlock(Matrix.identity(2), 0), 3)


def test_theta5_all_identity():
    for n in (3, 4, 6):
        rep = construct_family("theta5", n)
        assert all(m == Matrix.identity(n) for m in rep.images())


def test_theta4():
    rep = construct_family("theta4", 3)
    assert rep.s[0] == Matrix.diag([-1, -1, 1])
    assert rep.s[1] == Matrix.diag([1, -1, -1])
    assert all(m == Matrix.identity(3) for m in rep.tau)


def test_gamma1_forced_a():
    rep = construct_family("gamma1", 2, a=1, b=1, w=1, x=0)
    assert rep.s[0] == Matrix([[-1, 1], [0, 1]])
    assert rep.s[0] @ rep.s[0] == Matrix.identity(2)


def test_constraint_violations_name_the_inequality():
    with pytest.raises(ConstraintViolation, match="b != 0"):
        construct_family("theta1", 3, b=0, w=1, x=1)
    with pytest.raises(ConstraintViolation, match="singular"):
        construct_family("theta1", 3, b=1, w=1, x=1)
    with pytest.raises(ConstraintViolation, match="f != 0"):
        construct_family("n2", 3, f=0)
    with pytest.raises(ConstraintViolation):
        construct_family("gamma1", 3, a=0, b=1, w=1, x=0)
    with pytest.raises(ConstraintViolation, match="a = \\+-1"):
        construct_family("theta2", 3, a=2, b=0, c=1)


def test_theta2_b_zero_path():
    rep = construct_family("theta2", 3, a=1, b=0, c=5)
    assert verify_relations(rep).ok


def test_theta3_is_theta2_negated():
    r2 = construct_family("theta2", 4, a=Fraction(1, 3), b=2)
    r3 = construct_family("theta3", 4, a=Fraction(-1, 3), b=2)
    assert r2.images() == r3.images()


def test_monoid_allows_singular_tau():
    rep = construct_family("theta1", 3, monoid=True, b=1, w=1, x=1)
    assert rep.group.kind.is_monoid
    assert verify_relations(rep).ok


def test_verify_theta1_st3():
    report = verify_relations(construct_family("theta1", 3, b=1, w=0, x=1))
    assert report.ok and len(report.checks) >= 6


def test_verify_burau_n4():
    assert verify_relations(construct_family("burau", 4, t=3)).ok


def test_tampered_theta1_fails_involution():
    rep = construct_family("theta1", 3, b=1, w=0, x=1)
    bad = rep.s[0].tolist()
    bad[0][1] = Scalar(2)
    tampered = type(rep)(rep.group, rep.dim, [Matrix(bad), *rep.s[1:]], rep.tau)
    report = verify_relations(tampered)
    assert not report.ok
    assert "involution[1]" in [c.name for c in report.failures]
    assert all(c.difference is not None for c in report.failures)


def test_evaluate_examples():
    rep = construct_family("theta5", 3)
    assert evaluate_word(rep, Word(rep.group, ())) == Matrix.identity(3)
    assert evaluate_word(rep, parse_word(rep.group, "s1 t1")) == Matrix.identity(3)
    rep = construct_family("theta2", 3, a=2, b=1)
    lhs = evaluate_word(rep, parse_word(rep.group, "s2 s1") * 3)
    rhs = evaluate_word(rep, (parse_word(rep.group, "s1 s2") * 3).inverse())
    assert lhs == rhs


def test_evaluate_alphabet_mismatch():
    rep = construct_family("burau", 3, t=2)
    other = GroupKind("stn", 3)
    with pytest.raises((IllegalLetter, ValueError)):
        evaluate_word(rep, parse_word(other, "t1"))


@pytest.mark.parametrize("family", sorted(PARAMS))
def test_random_draws_satisfy_relations(family):
    rng = random.Random(family)
    n = 2 if family.startswith("gamma") else 3
    for _ in range(50):
        rep = random_family(rng, family, n)
        assert verify_relations(rep).ok


def test_gamma_templates_match_sympy():
    rng = random.Random(11)
    for _ in range(10):
        a = Fraction(rng.randint(1, 9), rng.randint(1, 4))
        b = Fraction(rng.randint(1, 9), rng.randint(1, 4)) * rng.choice([1, -1])
        w, x = Fraction(rng.randint(-5, 5)), Fraction(rng.randint(1, 5))
        c = (1 - a * a) / b
        sb, sc, sw, sx = (sp.Rational(v.numerator, v.denominator) for v in (b, c, w, x))
        for fam, ref in (("gamma1", oracles.gamma1_blocks_bc), ("gamma2", oracles.gamma2_blocks_bc)):
            try:
                rep = construct_family(fam, 2, a=a, b=b, w=w, x=x)
            except ConstraintViolation:
                continue
            S, T = ref(sb, sc, sw, sx)
            assert to_sympy(rep.s[0]) == S and to_sympy(rep.tau[0]) == T
        S, _ = oracles.theta2_blocks_bc(sb, sc)
        rep = construct_family("theta2", 3, a=a, b=b)
        assert to_sympy(rep.s[0]) == oracles.embed(S, 3, 1)


def test_theta1_sympy_relations():
    b, w, x = sp.Rational(2, 3), sp.Integer(1), sp.Integer(3)
    S, T = oracles.theta1_blocks(b, w, x)
    assert oracles.twin_relations_ok(4, S, T)
    rep = construct_family("theta1", 4, b=Fraction(2, 3), w=1, x=3)
    assert to_sympy(rep.tau[2]) == oracles.embed(T, 4, 3)


def test_classic_families_sympy():
    for t in (sp.Integer(2), sp.Rational(-1, 3)):
        assert oracles.braid_relations_ok(4, oracles.burau_block(t))
        assert oracles.braid_relations_ok(4, oracles.f_block(t))
        assert oracles.twin_relations_ok(4, oracles.n1_block(t))


@given(st.lists(st.sampled_from(["s1", "s2", "t1", "t2", "T1", "T2"]), max_size=6),
       st.lists(st.sampled_from(["s1", "s2", "t1", "t2"]), max_size=6))
def test_evaluate_is_homomorphism(u, v):
    rep = construct_family("theta1", 3, b=2, w=1, x=Fraction(1, 2))
    g = rep.group
    wu, wv = parse_word(g, " ".join(u)), parse_word(g, " ".join(v))
    assert evaluate_word(rep, wu + wv) == evaluate_word(rep, wu) @ evaluate_word(rep, wv)


@given(st.fractions(min_value=-9, max_value=9, max_denominator=7).filter(bool),
       st.integers(min_value=2, max_value=6))
def test_n2_involutions(f, n):
    rep = construct_family("n2", n, f=f)
    assert all(m @ m == Matrix.identity(n) for m in rep.s)
    assert verify_relations(rep).ok


def test_n1_twin_relations():
    rng = random.Random(5)
    ts = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(10)]
    for n in range(2, 7):
        for t in ts:
            assert verify_relations(construct_family("n1", n, t=t)).ok


def test_classic_braid_relations():
    for n in range(2, 6):
        for t in (2, 3, -1, Fraction(1, 2)):
            assert verify_relations(construct_family("burau", n, t=t)).ok
            assert verify_relations(construct_family("f", n, t=t)).ok


def test_local_representation_shares_block():
    S = Matrix([[0, 1], [1, 0]])
    rep = local_representation(GroupKind("twin", 4), S)
    assert rep.s[0] == embed_local(LocalBlock(S, 1), 4)
    assert rep.s[2] == embed_local(LocalBlock(S, 3), 4)
