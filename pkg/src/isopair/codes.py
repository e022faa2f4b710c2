"""Ternary codes in F_3^4 and the Kleinian four-group acting on them.

Words are 4-tuples over {0, 1, 2}; the sign convention maps -1 to 2.  A code
here is always a 2-dimensional linear subspace of F_3^4 (9 words), self-dual
when the standard bilinear form vanishes on it.  Of the 130 two-dimensional
subspaces exactly eight are self-dual.  The four-group K4 acts on F_3^4
through signed permutation matrices and permutes the eight codes in two
orbits of four; joining two codes whenever their intersection has dimension
one yields the complete bipartite graph on the two orbits.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

Word = tuple[int, int, int, int]
Matrix = tuple[tuple[int, int, int, int], ...]


def normalize(w) -> Word:
    w = tuple(x % 3 for x in w)
    if len(w) != 4:
        raise ValueError(f"words live in F_3^4, got {w!r}")
    return w


def word_add(u: Word, v: Word) -> Word:
    return tuple((a + b) % 3 for a, b in zip(u, v))


def word_neg(u: Word) -> Word:
    return tuple((-a) % 3 for a in u)


def word_dot(u: Word, v: Word) -> int:
    return sum(a * b for a, b in zip(u, v)) % 3


def _matvec(m: Matrix, v) -> tuple[int, ...]:
    return tuple(sum(m[i][k] * v[k] for k in range(4)) for i in range(4))


def _matmul(m: Matrix, n: Matrix) -> Matrix:
    return tuple(tuple(sum(m[i][k] * n[k][j] for k in range(4)) for j in range(4)) for i in range(4))


@dataclass(frozen=True)
class K4Element:
    """One of the four involutions: a signed permutation on standard
    coordinates, a diagonal sign matrix on eigenbasis coordinates."""

    name: str
    standard: Matrix
    diag: tuple[int, int, int, int]

    def apply_standard(self, v) -> tuple[int, ...]:
        return _matvec(self.standard, v)

    def apply_word(self, w: Word) -> Word:
        return normalize(_matvec(self.standard, w))

    def apply_diag(self, v) -> tuple[int, ...]:
        return tuple(d * x for d, x in zip(self.diag, v))

    def __str__(self):
        return self.name


_ID = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
_G1 = ((0, 0, 1, 0), (0, 0, 0, -1), (1, 0, 0, 0), (0, -1, 0, 0))
_G2 = ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, -1), (0, 0, -1, 0))

K4 = (
    K4Element("g0", _ID, (1, 1, 1, 1)),
    K4Element("g1", _G1, (-1, 1, -1, 1)),
    K4Element("g2", _G2, (-1, -1, 1, 1)),
    K4Element("g3", _matmul(_G2, _G1), (1, -1, -1, 1)),
)


def span_pair(g1: Word, g2: Word) -> frozenset[Word]:
    """All 9 words i*g1 + j*g2; requires the generators to be independent."""
    g1, g2 = normalize(g1), normalize(g2)
    words = frozenset(
        tuple((i * a + j * b) % 3 for a, b in zip(g1, g2)) for i in range(3) for j in range(3)
    )
    if len(words) != 9:
        raise ValueError(f"{g1} and {g2} do not span a 2-dimensional subspace")
    return words


def _echelon_pair(words: frozenset[Word]) -> tuple[Word, Word]:
    # reduced echelon basis of a 2-dimensional word set: unique, so it can
    # serve as the canonical generator pair
    basis: list[list[int]] = []
    for w in sorted(words):
        row = list(w)
        for b in basis:
            lead = next(i for i, x in enumerate(b) if x)
            if row[lead]:
                f = row[lead]
                row = [(x - f * y) % 3 for x, y in zip(row, b)]
        if any(row):
            lead = next(i for i, x in enumerate(row) if x)
            inv = 1 if row[lead] == 1 else 2  # inverse mod 3
            basis.append([(inv * x) % 3 for x in row])
        if len(basis) == 2:
            break
    # back-substitute to reduced form
    lead1 = next(i for i, x in enumerate(basis[1]) if x)
    if basis[0][lead1]:
        f = basis[0][lead1]
        basis[0] = [(x - f * y) % 3 for x, y in zip(basis[0], basis[1])]
    basis.sort(key=lambda b: next(i for i, x in enumerate(b) if x))
    return tuple(basis[0]), tuple(basis[1])


class TernaryCode:
    """A 2-dimensional code, stored as its word set plus canonical
    (reduced echelon) generator pair."""

    __slots__ = ("words", "generators")

    def __init__(self, words: frozenset[Word]):
        if len(words) != 9:
            raise ValueError("a 2-dimensional code has exactly 9 words")
        self.words = frozenset(normalize(w) for w in words)
        self.generators = _echelon_pair(self.words)

    @classmethod
    def from_generators(cls, g1: Word, g2: Word) -> "TernaryCode":
        return cls(span_pair(g1, g2))

    def __contains__(self, w) -> bool:
        return normalize(w) in self.words

    @property
    def is_selfdual(self) -> bool:
        g1, g2 = self.generators
        return word_dot(g1, g1) == word_dot(g2, g2) == word_dot(g1, g2) == 0

    def intersection_dim(self, other: "TernaryCode") -> int:
        common = len(self.words & other.words)
        return {1: 0, 3: 1, 9: 2}[common]

    def transformed(self, g: K4Element) -> "TernaryCode":
        return TernaryCode(frozenset(g.apply_word(w) for w in self.words))

    def __eq__(self, other):
        if not isinstance(other, TernaryCode):
            return NotImplemented
        return self.words == other.words

    def __hash__(self):
        return hash(self.words)

    def __repr__(self):
        return f"TernaryCode{self.generators}"


# Canonical numbering C1..C8 of the eight self-dual codes, by generator pair.
SELFDUAL_GENERATORS: tuple[tuple[Word, Word], ...] = (
    ((1, 0, -1, -1), (0, 1, 1, -1)),
    ((1, 0, -1, 1), (0, 1, 1, 1)),
    ((1, 0, -1, 1), (0, 1, -1, -1)),
    ((1, 0, 1, 1), (0, 1, 1, -1)),
    ((1, 0, 1, -1), (0, 1, 1, 1)),
    ((1, 0, -1, -1), (0, 1, -1, 1)),
    ((1, 0, 1, 1), (0, 1, -1, 1)),
    ((1, 0, 1, -1), (0, 1, -1, -1)),
)

# Labeled nonzero words of C1 and C2: the unique K4 element mapping the i-th
# C1 word into C2 is K4[i], and it exchanges the two words.
C1_LABELED_WORDS: tuple[Word, ...] = tuple(
    normalize(w) for w in ((1, -1, 1, 0), (0, 1, 1, -1), (-1, 0, 1, 1), (-1, -1, 0, -1))
)
C2_LABELED_WORDS: tuple[Word, ...] = tuple(
    normalize(w) for w in ((1, -1, 1, 0), (1, 1, 0, -1), (0, -1, -1, -1), (1, 0, -1, 1))
)


def two_dim_subspaces() -> frozenset[frozenset[Word]]:
    """All 2-dimensional subspaces of F_3^4 (there are 130)."""
    nonzero = [w for w in product(range(3), repeat=4) if any(w)]
    seen: set[frozenset[Word]] = set()
    for i, g1 in enumerate(nonzero):
        for g2 in nonzero[i + 1 :]:
            try:
                seen.add(span_pair(g1, g2))
            except ValueError:
                continue  # dependent pair
    return frozenset(seen)


def selfdual_codes() -> tuple[TernaryCode, ...]:
    """The eight self-dual codes, found by exhaustive search and returned in
    canonical numbering."""
    found = {ws for ws in two_dim_subspaces() if TernaryCode(ws).is_selfdual}
    expected = [span_pair(*gens) for gens in SELFDUAL_GENERATORS]
    if found != set(expected):
        raise AssertionError("self-dual census does not match the canonical list")
    return tuple(TernaryCode(ws) for ws in expected)


def orbit_partition(codes: tuple[TernaryCode, ...]) -> tuple[frozenset[int], frozenset[int]]:
    """The two K4 orbits, as 0-based index sets; the orbit of the first code
    comes first."""
    index = {code: i for i, code in enumerate(codes)}
    orbits: list[frozenset[int]] = []
    assigned: set[int] = set()
    for i, code in enumerate(codes):
        if i in assigned:
            continue
        orbit = frozenset(index[code.transformed(g)] for g in K4)
        orbits.append(orbit)
        assigned |= orbit
    if len(orbits) != 2:
        raise AssertionError(f"expected two orbits, found {len(orbits)}")
    return orbits[0], orbits[1]


def intersection_graph(codes: tuple[TernaryCode, ...]) -> frozenset[frozenset[int]]:
    """Edges {i, j} joining codes whose intersection has dimension one."""
    edges = set()
    for i in range(len(codes)):
        for j in range(i + 1, len(codes)):
            if codes[i].intersection_dim(codes[j]) == 1:
                edges.add(frozenset({i, j}))
    return frozenset(edges)


def matching_element(w: Word) -> K4Element:
    """The unique K4 element carrying a nonzero word of C1 into C2."""
    w = normalize(w)
    c1 = TernaryCode.from_generators(*SELFDUAL_GENERATORS[0])
    c2 = TernaryCode.from_generators(*SELFDUAL_GENERATORS[1])
    if w not in c1 or not any(w):
        raise ValueError(f"{w} is not a nonzero word of C1")
    hits = [g for g in K4 if g.apply_word(w) in c2]
    if len(hits) != 1:
        raise AssertionError(f"expected exactly one match for {w}, got {len(hits)}")
    return hits[0]
