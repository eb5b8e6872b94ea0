"""Words over the braid, twin and singular generator alphabets.

Letters are ``(family, index, exponent)`` triples.  Families are ``"g"``
(Artin generator sigma), ``"s"`` (twin generator) and ``"t"`` (singular
generator tau).  Text syntax: ``s1``, ``t3``, ``T3`` (tau inverse), ``g2``,
``G2`` (sigma inverse); ``e`` or the empty string is the empty word.

Permutations compose in word order: the leftmost letter acts first, so
``permutation_image(u + v) == compose(permutation_image(u), permutation_image(v))``
with ``compose(p, q)`` meaning "apply p, then q".
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "Kind",
    "GroupKind",
    "Letter",
    "Word",
    "WordError",
    "IllegalLetter",
    "IndexOutOfRange",
    "Relation",
    "relation_catalog",
    "free_reduce",
    "permutation_image",
    "compose",
    "identity_perm",
    "is_pure",
    "pure_braid_generator",
    "parse_word",
    "ProofResult",
    "prove_equal",
    "equal_length_orbit",
    "shortlex_key",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 200_000


class WordError(ValueError):
    pass


class IllegalLetter(WordError):
    pass


class IndexOutOfRange(WordError):
    pass


class Kind(enum.Enum):
    BRAID = "braid"
    TWIN = "twin"
    SINGULAR_BRAID_MONOID = "sbm"
    SINGULAR_BRAID_GROUP = "sbn"
    SINGULAR_TWIN_MONOID = "stm"
    SINGULAR_TWIN_GROUP = "stn"

    @property
    def base_family(self) -> str:
        return "g" if self in _BRAID_LIKE else "s"

    @property
    def has_tau(self) -> bool:
        return self not in (Kind.BRAID, Kind.TWIN)

    @property
    def is_monoid(self) -> bool:
        return self in (Kind.SINGULAR_BRAID_MONOID, Kind.SINGULAR_TWIN_MONOID)


_BRAID_LIKE = (Kind.BRAID, Kind.SINGULAR_BRAID_MONOID, Kind.SINGULAR_BRAID_GROUP)


@dataclass(frozen=True)
class GroupKind:
    kind: Kind
    n: int

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", Kind(self.kind))
        if self.n < 2:
            raise WordError(f"strand count must be >= 2, got {self.n}")

    def letters(self) -> list["Letter"]:
        """Positive generators followed by the formal inverses, in index order."""
        out = []
        base = self.kind.base_family
        for i in range(1, self.n):
            out.append(Letter(base, i, 1))
        if self.kind.has_tau:
            for i in range(1, self.n):
                out.append(Letter("t", i, 1))
        if base == "g":
            out += [Letter("g", i, -1) for i in range(1, self.n)]
        if self.kind.has_tau and not self.kind.is_monoid:
            out += [Letter("t", i, -1) for i in range(1, self.n)]
        return out

    def generators(self) -> list["Letter"]:
        return [x for x in self.letters() if x.exponent == 1]

    def check(self, letter: "Letter") -> None:
        fam = letter.family
        if fam not in ("g", "s", "t"):
            raise IllegalLetter(f"unknown family {fam!r}")
        if fam == "t":
            if not self.kind.has_tau:
                raise IllegalLetter(f"tau letters are not in {self.kind.value}")
            if letter.exponent == -1 and self.kind.is_monoid:
                raise IllegalLetter(f"tau inverse is not in the monoid {self.kind.value}")
        elif fam != self.kind.base_family:
            raise IllegalLetter(f"letter family {fam!r} is not in {self.kind.value}")
        if not 1 <= letter.index <= self.n - 1:
            raise IndexOutOfRange(f"index {letter.index} outside 1..{self.n - 1}")

    def __str__(self):
        return f"{self.kind.value}{self.n}"


class Letter(NamedTuple):
    family: str
    index: int
    exponent: int = 1

    def inverse(self) -> "Letter":
        if self.family == "s":
            return self
        return Letter(self.family, self.index, -self.exponent)

    def __str__(self):
        name = self.family if self.exponent == 1 else self.family.upper()
        return f"{name}{self.index}"


# Sort key used for canonical (shortlex) representatives: s < g < t, index, +1 < -1.
_FAMILY_ORDER = {"s": 0, "g": 1, "t": 2}


def _letter_key(x: Letter):
    return (_FAMILY_ORDER[x.family], x.index, -x.exponent)


def shortlex_key(letters: Sequence[Letter]):
    return (len(letters), tuple(_letter_key(x) for x in letters))


@dataclass(frozen=True)
class Word:
    group: GroupKind
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple(Letter(*x) if not isinstance(x, Letter) else x for x in self.letters)
        for x in letters:
            self.group.check(x)
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, group: GroupKind, text: str) -> "Word":
        return parse_word(group, text)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "Word") -> "Word":
        if other.group != self.group:
            raise WordError(f"cannot concatenate {self.group} and {other.group} words")
        return Word(self.group, self.letters + other.letters)

    def __mul__(self, k: int) -> "Word":
        return Word(self.group, self.letters * k)

    def inverse(self) -> "Word":
        if self.group.kind.is_monoid and any(x.family == "t" for x in self.letters):
            raise IllegalLetter("tau has no inverse in a monoid")
        return Word(self.group, tuple(x.inverse() for x in reversed(self.letters)))

    def reduced(self) -> "Word":
        return free_reduce(self)

    def __str__(self):
        return " ".join(str(x) for x in self.letters) if self.letters else "e"


_TOKEN_FAMILIES = {"s": ("s", 1), "t": ("t", 1), "T": ("t", -1), "g": ("g", 1), "G": ("g", -1)}


def parse_word(group: GroupKind, text: str) -> Word:
    letters = []
    for token in text.split():
        if token in ("e", "1", "ε"):
            continue
        head, tail = token[0], token[1:]
        if head not in _TOKEN_FAMILIES or not tail.isdigit():
            raise IllegalLetter(f"bad token {token!r}")
        fam, exp = _TOKEN_FAMILIES[head]
        letters.append(Letter(fam, int(tail), exp))
    return Word(group, tuple(letters))


def _reduce_letters(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for x in letters:
        if stack:
            top = stack[-1]
            if top.family == x.family and top.index == x.index:
                if x.family == "s" or top.exponent == -x.exponent:
                    stack.pop()
                    continue
        stack.append(x)
    return tuple(stack)


def free_reduce(w: Word) -> Word:
    """Cancel adjacent ``x x^-1`` pairs and ``s_i s_i``."""
    return Word(w.group, _reduce_letters(w.letters))


# relations ----------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    name: str
    lhs: Word
    rhs: Word

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


def relation_catalog(group: GroupKind) -> list[Relation]:
    """Defining relations instantiated for every admissible index.

    Braid: braid and far commutation.  Twin: ``s_i^2 = 1`` for every
    ``1 <= i <= n-1`` and far commutation.  Singular kinds add far
    commutation of tau with tau and with the base generator, ``tau_i x_i =
    x_i tau_i`` and the two mixed three-letter relations.
    """
    n = group.n
    kind = group.kind
    x = kind.base_family
    W = lambda *ls: Word(group, tuple(Letter(f, i) for f, i in ls))  # noqa: E731
    rels: list[Relation] = []
    far = [(i, j) for i in range(1, n) for j in range(i + 2, n)]
    if x == "g":
        for i in range(1, n - 1):
            rels.append(Relation(f"braid[{i}]", W(("g", i), ("g", i + 1), ("g", i)),
                                 W(("g", i + 1), ("g", i), ("g", i + 1))))
        for i, j in far:
            rels.append(Relation(f"far[{i},{j}]", W(("g", i), ("g", j)), W(("g", j), ("g", i))))
    else:
        for i in range(1, n):
            rels.append(Relation(f"involution[{i}]", W(("s", i), ("s", i)), W()))
        for i, j in far:
            rels.append(Relation(f"far[{i},{j}]", W(("s", i), ("s", j)), W(("s", j), ("s", i))))
    if kind.has_tau:
        for i, j in far:
            rels.append(Relation(f"tau_far[{i},{j}]", W(("t", i), ("t", j)), W(("t", j), ("t", i))))
        for i in range(1, n):
            for j in range(1, n):
                if abs(i - j) >= 2:
                    rels.append(Relation(f"tau_mixed_far[{i},{j}]", W(("t", i), (x, j)),
                                         W((x, j), ("t", i))))
        for i in range(1, n):
            rels.append(Relation(f"tau_commute[{i}]", W(("t", i), (x, i)), W((x, i), ("t", i))))
        for i in range(1, n - 1):
            rels.append(Relation(f"tau_slide_up[{i}]", W((x, i), (x, i + 1), ("t", i)),
                                 W(("t", i + 1), (x, i), (x, i + 1))))
        for i in range(1, n - 1):
            rels.append(Relation(f"tau_slide_down[{i}]", W(("t", i), (x, i + 1), (x, i)),
                                 W((x, i + 1), (x, i), ("t", i + 1))))
    return rels


# permutations -------------------------------------------------------------

Permutation = tuple  # images of 1..n, each in 1..n


def identity_perm(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    return tuple(q[p[k] - 1] for k in range(len(p)))


def transposition(n: int, i: int) -> Permutation:
    images = list(range(1, n + 1))
    images[i - 1], images[i] = images[i], images[i - 1]
    return tuple(images)


def _perm_of_letters(n: int, letters: Iterable[Letter]) -> Permutation:
    # images[k] is where point k+1 currently sits; each letter acts afterwards
    images = list(range(1, n + 1))
    for x in letters:
        i = x.index
        for k in range(n):
            if images[k] == i:
                images[k] = i + 1
            elif images[k] == i + 1:
                images[k] = i
    return tuple(images)


def permutation_image(w: Word) -> Permutation:
    """Image in S_n; sigma_i, s_i and tau_i all map to the transposition (i i+1)."""
    return _perm_of_letters(w.group.n, w.letters)


def is_pure(w: Word) -> bool:
    return permutation_image(w) == identity_perm(w.group.n)


def pure_braid_generator(i: int, j: int, n: int) -> Word:
    """``A_ij = g_{j-1} ... g_{i+1} g_i^2 g_{i+1}^-1 ... g_{j-1}^-1`` in B_n."""
    if not 1 <= i < j <= n:
        raise IndexOutOfRange(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    group = GroupKind(Kind.BRAID, n)
    prefix = [Letter("g", k, 1) for k in range(j - 1, i, -1)]
    middle = [Letter("g", i, 1), Letter("g", i, 1)]
    suffix = [Letter("g", k, -1) for k in range(i + 1, j)]
    return Word(group, tuple(prefix + middle + suffix))


# bounded equality prover ----------------------------------------------------

@dataclass
class ProofResult:
    proved: bool
    expansions: int
    steps: int | None = None
    reason: str = ""
    path: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.proved


def _rewrite_rules(group: GroupKind) -> list[tuple[tuple[Letter, ...], tuple[Letter, ...]]]:
    """Directed replacement rules with both sides non-empty.

    Every catalog relation is used in both directions.  In group kinds the
    inverted relation ``lhs^-1 = rhs^-1`` is added too, so that tau inverse
    letters can be moved.  Relations with an empty side are handled by free
    reduction (deletion) and by the optional insertion phase.
    """
    rules = set()
    for rel in relation_catalog(group):
        pairs = [(rel.lhs.letters, rel.rhs.letters)]
        if not group.kind.is_monoid:
            pairs.append((rel.lhs.inverse().letters, rel.rhs.inverse().letters))
        for lhs, rhs in pairs:
            if lhs and rhs and lhs != rhs:
                rules.add((lhs, rhs))
                rules.add((rhs, lhs))
    return sorted(rules, key=lambda r: (shortlex_key(r[0]), shortlex_key(r[1])))


def _neighbours(word, rules, insertions, max_len):
    L = len(word)
    for lhs, rhs in rules:
        k = len(lhs)
        first = lhs[0]
        for p in range(L - k + 1):
            if word[p] == first and word[p:p + k] == lhs:
                yield _reduce_letters(word[:p] + rhs + word[p + k:])
    if insertions and L + 2 <= max_len:
        for pair in insertions:
            for p in range(L + 1):
                yield word[:p] + pair + word[p:]


def prove_equal(lhs: Word, rhs: Word, budget: int = DEFAULT_BUDGET,
                insertion_slack: int = 2) -> ProofResult:
    """Bounded bidirectional search for a rewriting proof of ``lhs == rhs``.

    Moves replace one occurrence of a relation side by the other and keep
    words freely reduced.  A first phase uses only these moves (finite
    orbits, since the non-trivial relations preserve length); if it exhausts
    without meeting, a second phase also inserts ``x x^-1`` pairs up to
    ``insertion_slack`` letters beyond the longer input.  ``NotFound`` is
    never a disproof.
    """
    if lhs.group != rhs.group:
        raise WordError("words belong to different groups")
    group = lhs.group
    if permutation_image(lhs) != permutation_image(rhs):
        return ProofResult(False, 0, reason="permutation images differ")
    a = _reduce_letters(lhs.letters)
    b = _reduce_letters(rhs.letters)
    if a == b:
        return ProofResult(True, 0, steps=0, path=[_fmt(a)])
    rules = _rewrite_rules(group)
    used = 0
    result = _bidirectional(a, b, rules, (), 0, budget)
    used += result.expansions
    if result.proved or result.reason != "exhausted":
        return result
    pairs = []
    for x in group.letters():
        if x.family == "s":
            pairs.append((x, x))
        elif not (x.family == "t" and group.kind.is_monoid):
            pairs.append((x, x.inverse()))
    max_len = max(len(a), len(b)) + insertion_slack
    result = _bidirectional(a, b, rules, tuple(pairs), max_len, budget - used)
    result.expansions += used
    return result


def equal_length_orbit(w: Word, limit: int = 100000) -> list[Word]:
    """Freely reduced words reachable from ``w`` by length-preserving relation moves.

    Sorted shortlex, so the first entry is a canonical representative.
    Raises :class:`WordError` when the orbit exceeds ``limit`` words.
    """
    rules = [(l, r) for l, r in _rewrite_rules(w.group) if len(l) == len(r)]
    start = _reduce_letters(w.letters)
    seen = {start}
    queue = deque([start])
    while queue:
        word = queue.popleft()
        for nxt in _neighbours(word, rules, (), 0):
            if len(nxt) == len(start) and nxt not in seen:
                seen.add(nxt)
                if len(seen) > limit:
                    raise WordError(f"orbit of {w} exceeds {limit} words")
                queue.append(nxt)
    return [Word(w.group, x) for x in sorted(seen, key=shortlex_key)]


def _fmt(letters) -> str:
    return " ".join(str(x) for x in letters) if letters else "e"


def _bidirectional(a, b, rules, insertions, max_len, budget) -> ProofResult:
    parents = [{a: None}, {b: None}]
    frontiers = [deque([a]), deque([b])]
    expansions = 0
    # an exhausted side means its whole reachable set was seen without meeting
    while frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        queue, seen, other = frontiers[side], parents[side], parents[1 - side]
        for _ in range(len(queue)):
            if expansions >= budget:
                return ProofResult(False, expansions, reason="budget exhausted")
            word = queue.popleft()
            expansions += 1
            for nxt in _neighbours(word, rules, insertions, max_len):
                if nxt in seen:
                    continue
                seen[nxt] = word
                if nxt in other:
                    path = _join(parents, nxt)
                    return ProofResult(True, expansions, steps=len(path) - 1, path=path)
                queue.append(nxt)
    return ProofResult(False, expansions, reason="exhausted")


def _join(parents, meet):
    def chain(d, w):
        out = []
        while w is not None:
            out.append(w)
            w = d[w]
        return out

    left = chain(parents[0], meet)
    right = chain(parents[1], meet)
    path = list(reversed(left)) + right[1:]
    return [_fmt(w) for w in path]
