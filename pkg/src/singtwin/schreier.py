"""Reidemeister-Schreier generators for the pure subgroups.

The pure subgroup is the kernel of the map to S_n sending every generator
to ``(i i+1)``; its index is ``n!`` and a transversal assigns one word to
each permutation.  For a coset representative ``lam`` and a generator ``x``
the Schreier generator is ``lam x rep(lam x)^-1``.

:func:`reduce_to_basis` then rewrites the non-trivial generators as products
of a small set of target words, proving every claimed equality with
:func:`~singtwin.words.prove_equal`.
"""
from __future__ import annotations

import itertools
import logging
import random
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .reps import construct_family, evaluate_word
from .words import (
    DEFAULT_BUDGET,
    GroupKind,
    Kind,
    Letter,
    ProofResult,
    Word,
    WordError,
    compose,
    equal_length_orbit,
    free_reduce,
    identity_perm,
    is_pure,
    permutation_image,
    prove_equal,
    shortlex_key,
    transposition,
)

__all__ = [
    "Transversal",
    "SchreierGenerator",
    "Expression",
    "CosetNotInTransversal",
    "BudgetExhausted",
    "standard_transversal",
    "schreier_generator",
    "all_schreier_generators",
    "reduce_to_basis",
    "displayed_identities",
    "schreier_report",
]

log = logging.getLogger(__name__)


class CosetNotInTransversal(WordError):
    pass


class BudgetExhausted(RuntimeError):
    def __init__(self, unresolved):
        self.unresolved = list(unresolved)
        names = ", ".join(str(g.word) for g in self.unresolved)
        super().__init__(f"could not prove a reduction for: {names}")


@dataclass
class Transversal:
    group: GroupKind
    representatives: dict  # Permutation -> Word

    def __post_init__(self):
        n = self.group.n
        if self.representatives.get(identity_perm(n)) is None or \
                len(self.representatives[identity_perm(n)]) != 0:
            raise WordError("the identity coset must be represented by the empty word")
        for perm, w in self.representatives.items():
            if permutation_image(w) != perm:
                raise WordError(f"representative {w} does not map to {perm}")

    def __contains__(self, w: Word) -> bool:
        rep = self.representatives.get(permutation_image(w))
        return rep is not None and rep.letters == w.letters

    def __iter__(self):
        return iter(self.representatives.values())

    def __len__(self):
        return len(self.representatives)

    def representative(self, perm) -> Word:
        return self.representatives[perm]


def standard_transversal(group: GroupKind) -> Transversal:
    """Shortlex-least positive word in the base letters for every permutation.

    Breadth-first over S_n, so the result is prefix-closed (a Schreier
    transversal).  For n = 3 this is ``{e, s1, s2, s1 s2, s2 s1, s1 s2 s1}``.
    """
    n = group.n
    base = [Letter(group.kind.base_family, i, 1) for i in range(1, n)]
    reps = {identity_perm(n): Word(group, ())}
    queue = deque([()])
    while queue:
        letters = queue.popleft()
        perm = permutation_image(Word(group, letters))
        for x in base:
            nxt = compose(perm, transposition(n, x.index))
            if nxt not in reps:
                reps[nxt] = Word(group, letters + (x,))
                queue.append(letters + (x,))
    return Transversal(group, dict(sorted(reps.items(), key=lambda kv: shortlex_key(kv[1].letters))))


@dataclass
class Expression:
    """Product of target words; ``factors`` holds ``(target index, +-1)`` pairs."""
    factors: tuple[tuple[int, int], ...]

    def word(self, targets: list[Word], group: GroupKind) -> Word:
        out = Word(group, ())
        for k, e in self.factors:
            out = out + (targets[k] if e == 1 else targets[k].inverse())
        return out

    def text(self, names: list[str]) -> str:
        if not self.factors:
            return "e"
        return " ".join(names[k] + ("" if e == 1 else "^-1") for k, e in self.factors)


@dataclass
class SchreierGenerator:
    coset: Word
    letter: Letter
    word: Word
    representative: Word
    trivial: bool = False
    reduced_form: Word | None = None
    expression: Expression | None = None
    proof: ProofResult | None = None
    duplicate_of: int | None = None
    notes: list[str] = field(default_factory=list)


def schreier_generator(t: Transversal, coset: Word, x: Letter) -> SchreierGenerator:
    if coset not in t:
        raise CosetNotInTransversal(f"{coset} is not a representative of the transversal")
    prod = coset + Word(t.group, (x,))
    rep = t.representative(permutation_image(prod))
    word = prod + rep.inverse()
    assert is_pure(word)
    return SchreierGenerator(coset, x, word, rep, trivial=not free_reduce(word).letters)


def all_schreier_generators(kind: GroupKind | Kind | str, n: int | None = None,
                            t: Transversal | None = None) -> list[SchreierGenerator]:
    """Every ``(coset, generator)`` pair, in transversal order then letter order."""
    group = kind if isinstance(kind, GroupKind) else GroupKind(kind, n)
    t = t or standard_transversal(group)
    if t.group != group:
        raise WordError("transversal belongs to another group")
    return [schreier_generator(t, lam, x) for lam in t for x in group.generators()]


# reduction ---------------------------------------------------------------------

def _probe_reps(group: GroupKind, count: int, seed: int):
    """Random float representations used only to discard impossible products.

    Theta1 alone identifies some distinct words (``s2 s1 t1 s2`` and
    ``s1 s2 t2 s1`` have equal images), so Theta2 draws are mixed in.
    """
    rng = random.Random(seed)
    out = []
    if group.kind not in (Kind.SINGULAR_TWIN_GROUP, Kind.SINGULAR_TWIN_MONOID) or group.n < 3:
        return out

    def q():
        return f"{rng.randint(-9, 9)}/{rng.randint(1, 5)}+{rng.randint(-9, 9)}/{rng.randint(1, 5)}i"

    for family, keys in (("theta1", ("b", "w", "x")), ("theta2", ("a", "b"))):
        made = 0
        while made < count:
            try:
                rep = construct_family(family, group.n, monoid=group.kind.is_monoid,
                                       **{k: q() for k in keys})
            except ValueError:
                continue
            out.append(rep.to_float())
            made += 1
    return out


def _value(rep, w: Word) -> np.ndarray:
    return evaluate_word(rep, w).to_numpy()


def reduce_to_basis(gens: list[SchreierGenerator], budget: int = DEFAULT_BUDGET,
                    max_factors: int = 3, probes: int = 3, seed: int = 0) -> list[Word]:
    """Greedy generating set for the subgroup spanned by ``gens``.

    Non-trivial generators are visited shortest first.  Each one is written
    as a product of at most ``max_factors`` current targets and inverses
    (candidates are screened in random Theta1 representations, then proved
    by rewriting); if none works its shortlex-least equal-length form
    becomes a new target.  ``gens`` are annotated in place with the reduced
    form, the expression and the proof.  Raises :class:`BudgetExhausted` if
    a candidate passed screening but its proof search ran out of budget.
    """
    todo = [g for g in gens if not g.trivial]
    if not todo:
        return []
    group = todo[0].word.group
    if not all(is_pure(g.word) for g in todo):
        raise WordError("reduce_to_basis expects pure words")
    reps = _probe_reps(group, probes, seed)
    targets: list[Word] = []
    target_vals: list[list[np.ndarray]] = []
    unresolved = []
    seen_forms: dict[tuple, int] = {}
    order = sorted(range(len(gens)), key=lambda k: shortlex_key(free_reduce(gens[k].word).letters))
    for k in order:
        g = gens[k]
        if g.trivial:
            continue
        word = free_reduce(g.word)
        vals = [_value(r, word) for r in reps]
        found = None
        out_of_budget = []
        for expr in _candidates(len(targets), max_factors):
            if reps and not _matches(expr, target_vals, vals):
                continue
            cand = expr.word(targets, group)
            proof = prove_equal(word, cand, budget)
            if proof.proved:
                found = (expr, cand, proof)
                break
            if proof.reason == "budget exhausted":
                out_of_budget.append(cand)
            g.notes.append(f"screened candidate {cand} not proved ({proof.reason})")
        if found is None and out_of_budget:
            log.warning("no proof for %s within budget", word)
            unresolved.append(g)
            continue
        if found is None:
            canon = equal_length_orbit(word)[0]
            targets.append(canon)
            target_vals.append([_value(r, canon) for r in reps])
            expr = Expression(((len(targets) - 1, 1),))
            found = (expr, canon, prove_equal(word, canon, budget))
            log.info("new target %s from %s", canon, word)
        g.expression, g.reduced_form, g.proof = found
        key = g.expression.factors
        if key in seen_forms:
            g.duplicate_of = seen_forms[key]
        else:
            seen_forms[key] = k
    if unresolved:
        raise BudgetExhausted(unresolved)
    return targets


def _candidates(count: int, max_factors: int):
    symbols = [(k, e) for k in range(count) for e in (1, -1)]
    for length in range(1, max_factors + 1):
        for combo in itertools.product(symbols, repeat=length):
            # skip products with an adjacent x x^-1
            if any(a[0] == b[0] and a[1] == -b[1] for a, b in zip(combo, combo[1:])):
                continue
            yield Expression(tuple(combo))


def _matches(expr: Expression, target_vals, vals, tol: float = 1e-6) -> bool:
    for r, want in enumerate(vals):
        acc = np.eye(want.shape[0], dtype=complex)
        for k, e in expr.factors:
            m = target_vals[k][r]
            acc = acc @ (m if e == 1 else np.linalg.inv(m))
        if not np.allclose(acc, want, atol=tol * max(1.0, float(np.abs(want).max()))):
            return False
    return True


# the hand computation for ST_3 -------------------------------------------------

_DISPLAYED = [
    ("s2 s1 s2 s1 s2 s1", "s2 s1 s2 s1 s2 s1"),
    ("s1 s2 s1 s2 s1 s2", "s1 s2 s1 s2 s1 s2"),
    ("s1 t1 s1 s1", "s1 t1"),
    ("s2 t1 s1 s2", "s2 s1 t1 s2"),
    ("s1 s2 t1 s1 s2 s1", "t2 s1 s2 s1 s2 s1"),
    ("t2 s1 s2 s1 s2 s1", "t2 s2 s2 s1 s2 s1 s2 s1"),
    ("t2 s2 s2 s1 s2 s1 s2 s1", "s2 t2 s2 s1 s2 s1 s2 s1"),
    ("s1 s2 s1 t1 s2 s1", "s1 s2 s1 s2 s1 s2 s2 t2"),
    ("s1 t2 s2 s1", "s1 s2 t2 s1"),
    ("s2 s1 t2 s1 s2 s1", "s1 t1"),
    ("s1 s2 s1 t2 s1 s2", "s1 t1"),
    ("s2 s1 s2 s1 s2 s1", "s2 s1 s2 s1 s2 s1"),
    ("s1 s2 s1 s2 s1 s2", "s1 s2 t2 s1 s2 T1 s1 s2"),
]


def displayed_identities(group: GroupKind | None = None) -> list[tuple[Word, Word]]:
    """The equalities used in the hand reduction of SPT_3 to ``a, b, c, d``.

    Includes ``(s2 s1)^3 = ((s1 s2)^3)^-1``, which holds because twin
    generators are involutions: the inverse of ``(s1 s2)^3`` reads
    ``(s2 s1)^3``.
    """
    group = group or GroupKind(Kind.SINGULAR_TWIN_GROUP, 3)
    pairs = [(Word.parse(group, a), Word.parse(group, b)) for a, b in _DISPLAYED]
    cube = Word.parse(group, "s1 s2") * 3
    pairs[11] = (pairs[11][0], cube.inverse())
    return pairs


def schreier_report(gens: list[SchreierGenerator], targets: list[Word]) -> dict:
    names = [f"x{k + 1}" for k in range(len(targets))]
    rows = []
    for k, g in enumerate(gens):
        row = {
            "index": k,
            "coset": str(g.coset),
            "letter": str(g.letter),
            "coset_permutation": list(permutation_image(g.coset)),
            "product_permutation": list(permutation_image(g.coset + Word(g.word.group, (g.letter,)))),
            "representative": str(g.representative),
            "word": str(g.word),
            "free_reduced": str(free_reduce(g.word)),
            "trivial": g.trivial,
            "reduced_form": None if g.reduced_form is None else str(g.reduced_form),
            "expression": None if g.expression is None else g.expression.text(names),
            "proof_steps": None if g.proof is None else g.proof.steps,
            "proof_expansions": None if g.proof is None else g.proof.expansions,
            "duplicate_of": g.duplicate_of,
        }
        rows.append(row)
    return {
        "group": str(gens[0].word.group) if gens else None,
        "raw_count": len(gens),
        "nontrivial_count": sum(not g.trivial for g in gens),
        "generators": rows,
        "basis": {name: str(w) for name, w in zip(names, targets)},
    }
