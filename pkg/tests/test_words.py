import random

import pytest
from hypothesis import given, strategies as st

from oracles import perm_of_word
from singtwin.reps import construct_family, evaluate_word
from singtwin.words import (
    GroupKind,
    IllegalLetter,
    IndexOutOfRange,
    Kind,
    Letter,
    Word,
    compose,
    equal_length_orbit,
    free_reduce,
    identity_perm,
    is_pure,
    parse_word,
    permutation_image,
    prove_equal,
    pure_braid_generator,
    relation_catalog,
)

ST3 = GroupKind(Kind.SINGULAR_TWIN_GROUP, 3)


def W(text, group=ST3):
    return parse_word(group, text)


def test_free_reduce_examples():
    assert free_reduce(W("s1 s1")).letters == ()
    assert free_reduce(W("t1 T1 s2")) == W("s2")
    cube = W("s2 s1") * 3 + W("s1 s2") * 3
    assert free_reduce(cube).letters == ()


def test_permutation_examples():
    assert permutation_image(W("s1 t1")) == identity_perm(3)
    # leftmost letter acts first: 1 -> 2 -> 3, 2 -> 1, 3 -> 2
    assert permutation_image(W("s1 s2")) == (3, 1, 2)
    assert permutation_image(W("")) == identity_perm(3)


def test_is_pure_examples():
    assert is_pure(W("s1 t1"))
    assert not is_pure(W("s1"))
    assert is_pure(pure_braid_generator(1, 3, 3))


def test_pure_braid_generator_words():
    b3 = GroupKind(Kind.BRAID, 3)
    assert pure_braid_generator(1, 2, 3) == parse_word(b3, "g1 g1")
    assert pure_braid_generator(1, 3, 3) == parse_word(b3, "g2 g1 g1 G2")
    with pytest.raises(IndexOutOfRange):
        pure_braid_generator(2, 2, 3)
    for n in range(2, 6):
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                assert is_pure(pure_braid_generator(i, j, n))


def test_alphabets():
    stm = GroupKind(Kind.SINGULAR_TWIN_MONOID, 3)
    with pytest.raises(IllegalLetter):
        parse_word(stm, "T1")
    with pytest.raises(IllegalLetter):
        parse_word(GroupKind(Kind.TWIN, 3), "t1")
    with pytest.raises(IllegalLetter):
        parse_word(GroupKind(Kind.BRAID, 3), "s1")
    with pytest.raises(IndexOutOfRange):
        parse_word(ST3, "s3")
    with pytest.raises(IllegalLetter):
        parse_word(ST3, "x1")
    assert Letter("s", 1, 1).inverse() == Letter("s", 1, 1)


def test_catalog_sizes():
    # involution 2, tau_commute 2, one slide pair each way
    assert len(relation_catalog(ST3)) == 6
    assert len(relation_catalog(GroupKind(Kind.SINGULAR_TWIN_GROUP, 4))) == 14
    names = {r.name.split("[")[0] for r in relation_catalog(GroupKind(Kind.SINGULAR_TWIN_GROUP, 5))}
    assert {"involution", "far", "tau_far", "tau_mixed_far", "tau_commute",
            "tau_slide_up", "tau_slide_down"} <= names
    assert all(r.name.startswith(("braid", "far")) for r in relation_catalog(GroupKind(Kind.BRAID, 4)))


def test_prove_examples():
    assert prove_equal(W("t1 s2 s1"), W("s2 s1 t2")).proved
    assert prove_equal(W("s2 t1 s1 s2"), W("s2 s1 t1 s2")).proved
    res = prove_equal(W("s1"), W("s2"))
    assert not res.proved and res.reason == "permutation images differ" and res.expansions == 0


def test_prove_with_insertion_phase():
    # t1 T1 cancels only after inserting a pair: needs the second phase
    res = prove_equal(W("s1 s2 s1 s2 s1 s2"), W("s1 s2 t2 s1 s2 T1 s1 s2"))
    assert res.proved


def test_proof_path_is_a_chain():
    res = prove_equal(W("s1 s2 t1 s1 s2 s1"), W("t2 s1 s2 s1 s2 s1"))
    assert res.proved
    assert res.path[0] == "s1 s2 t1 s1 s2 s1" and res.path[-1] == "t2 s1 s2 s1 s2 s1"
    assert len(res.path) == res.steps + 1


def test_orbit_canonical():
    assert str(equal_length_orbit(W("t1 s1"))[0]) == "s1 t1"
    assert str(equal_length_orbit(W("s1 t2 s2 s1"))[0]) == "s1 s2 t2 s1"


letters_st4 = st.lists(
    st.sampled_from(GroupKind(Kind.SINGULAR_TWIN_GROUP, 4).letters()), max_size=10)


@given(letters_st4, letters_st4)
def test_permutation_homomorphism(u, v):
    g = GroupKind(Kind.SINGULAR_TWIN_GROUP, 4)
    wu, wv = Word(g, tuple(u)), Word(g, tuple(v))
    assert permutation_image(wu + wv) == compose(permutation_image(wu), permutation_image(wv))
    assert permutation_image(free_reduce(wu)) == permutation_image(wu)
    assert permutation_image(wu) == perm_of_word(4, [x.index for x in u])


def _random_proved_pairs(count, seed):
    """Apply random relation moves to random words; every pair is then equal."""
    rng = random.Random(seed)
    cat = relation_catalog(ST3)
    pairs = []
    while len(pairs) < count:
        w = [rng.choice(ST3.letters()) for _ in range(rng.randint(1, 5))]
        rel = rng.choice(cat)
        lhs, rhs = (rel.lhs, rel.rhs) if rng.random() < 0.5 else (rel.rhs, rel.lhs)
        pos = rng.randint(0, len(w))
        left = Word(ST3, tuple(w[:pos]) + lhs.letters + tuple(w[pos:]))
        right = Word(ST3, tuple(w[:pos]) + rhs.letters + tuple(w[pos:]))
        res = prove_equal(left, right, budget=20000)
        if res.proved:
            pairs.append((left, right))
    return pairs


def test_proved_pairs_agree_under_representations():
    reps = [construct_family("theta1", 3, b="2", w="1/3", x="i"),
            construct_family("theta2", 3, a="1/2+i", b="3")]
    for left, right in _random_proved_pairs(200, 11):
        assert permutation_image(left) == permutation_image(right)
        for rep in reps:
            assert evaluate_word(rep, left) == evaluate_word(rep, right)


@given(letters_st4, letters_st4)
def test_never_proves_across_permutations(u, v):
    g = GroupKind(Kind.SINGULAR_TWIN_GROUP, 4)
    wu, wv = Word(g, tuple(u)), Word(g, tuple(v))
    if permutation_image(wu) != permutation_image(wv):
        assert not prove_equal(wu, wv, budget=50).proved
