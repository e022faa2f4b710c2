"""The rank-4 lattice family behind the isospectral pair.

All lattice vectors carry integer coordinates with respect to the orthogonal
eigenbasis of the four-group action, in which the Gram matrix is
diag(a, b, c, d) and the group acts by diagonal sign matrices.  The base
lattice L, the two index-9 sublattices L1 and L2 cut out by the self-dual
codes C1 and C2, their intersection L12, and the common sublattice M = 3L
are all generated by fixed integer matrices.  The construction is therefore
parameter-independent: one integral lattice serves every parameter point,
and inner products become one-line formulas
``<v, w> = a*v0*w0 + b*v1*w1 + c*v2*w2 + d*v3*w3``.

The norm-preserving bijection ``psi`` from L1 onto L2 is the identity on M
and acts on the coset class of the i-th representative by the i-th diagonal
sign matrix.  It preserves the squared-coordinate tuple ``phi`` of every
vector exactly, which is what makes the two lattices isospectral at every
parameter point, but it is not additive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .codes import C1_LABELED_WORDS, C2_LABELED_WORDS, K4, K4Element, Word, normalize
from .qarith import Expo, ParamPoint, ParamPolynomial, exact

Vec = tuple[int, int, int, int]
Matrix = tuple[tuple[int, int, int, int], ...]

# Columns of the standard-basis generator matrix of L (determinant +1, so L
# is the full integer lattice in standard coordinates).
STANDARD_BASIS_COLUMNS: tuple[Vec, ...] = (
    (1, -1, 1, 0),
    (0, 1, 1, -1),
    (1, 1, 0, -1),
    (1, 0, 1, -1),
)

# J - 2I, where J is the all-ones matrix: four times the eigenbasis matrix U
# (columns u_i = (all-ones - 2 e_i)/4) and at the same time its integer
# inverse, since (J - 2I)^2 = 4I.
_J_MINUS_2I: Matrix = (
    (-1, 1, 1, 1),
    (1, -1, 1, 1),
    (1, 1, -1, 1),
    (1, 1, 1, -1),
)


def _matvec(m: Matrix, v) -> tuple:
    return tuple(sum(m[i][k] * v[k] for k in range(4)) for i in range(4))


def _columns(m: Matrix) -> tuple[Vec, ...]:
    return tuple(tuple(m[i][j] for i in range(4)) for j in range(4))


def _from_columns(cols) -> Matrix:
    return tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))


def _det3(r) -> int:
    return (
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
        - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    )


def _det(m: Matrix) -> int:
    total = 0
    for j in range(4):
        minor = tuple(tuple(m[i][k] for k in range(4) if k != j) for i in range(1, 4))
        total += (-1) ** j * m[0][j] * _det3(minor)
    return total


def _adjugate(m: Matrix) -> Matrix:
    cof = [[0] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            minor = tuple(
                tuple(m[r][c] for c in range(4) if c != j) for r in range(4) if r != i
            )
            cof[i][j] = (-1) ** (i + j) * _det3(minor)
    return tuple(tuple(cof[j][i] for j in range(4)) for i in range(4))  # transpose


def hermite_normal_form(rows) -> Matrix:
    """Canonical basis of the integer row span of a nonsingular 4x4 matrix.

    Upper triangular with positive diagonal; in each column the entries above
    the pivot are reduced to [0, pivot).  Two generator matrices span the
    same lattice exactly when their forms coincide.
    """
    m = [list(r) for r in rows]
    n = len(m)
    for col in range(n):
        while True:
            nz = [r for r in range(col, n) if m[r][col] != 0]
            if not nz:
                raise ValueError("matrix is singular")
            r0 = min(nz, key=lambda r: abs(m[r][col]))
            m[col], m[r0] = m[r0], m[col]
            rest = [r for r in range(col + 1, n) if m[r][col] != 0]
            if not rest:
                break
            for r in rest:
                q = m[r][col] // m[col][col]
                m[r] = [x - q * y for x, y in zip(m[r], m[col])]
        if m[col][col] < 0:
            m[col] = [-x for x in m[col]]
        for r in range(col):
            q = m[r][col] // m[col][col]
            if q:
                m[r] = [x - q * y for x, y in zip(m[r], m[col])]
    return tuple(tuple(r) for r in m)


class Lattice:
    """An integer lattice of full rank in eigenbasis coordinates.

    ``generators`` are four integer vectors; the cached Hermite normal form
    identifies the lattice as a set, so equality is set equality.
    """

    __slots__ = ("name", "generators", "hnf", "covolume", "_adj", "_gen_det", "_shells")

    def __init__(self, generators, name: str = ""):
        gens = tuple(tuple(int(x) for x in g) for g in generators)
        if len(gens) != 4 or any(len(g) != 4 for g in gens):
            raise ValueError("need four integer 4-vectors")
        self.name = name
        self.generators = gens
        self.hnf = hermite_normal_form(gens)
        self.covolume = self.hnf[0][0] * self.hnf[1][1] * self.hnf[2][2] * self.hnf[3][3]
        gen_matrix = _from_columns(gens)
        self._gen_det = _det(gen_matrix)
        self._adj = _adjugate(gen_matrix)
        self._shells: dict[int, tuple[Vec, ...]] = {}

    def contains(self, v) -> bool:
        """Whether v is an integer combination of the generators."""
        v = tuple(v)
        d = self._gen_det
        return all(sum(row[k] * v[k] for k in range(4)) % d == 0 for row in self._adj)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.hnf == other.hnf

    def __hash__(self):
        return hash(self.hnf)

    def index_in(self, ambient: "Lattice") -> int:
        """The index [ambient : self]; requires containment."""
        if not all(ambient.contains(g) for g in self.generators):
            raise ValueError(f"{self.name or 'lattice'} is not a sublattice of {ambient.name}")
        return self.covolume // ambient.covolume

    def transformed(self, g: K4Element) -> "Lattice":
        """Image under a four-group element (diagonal in this basis)."""
        return Lattice(
            tuple(g.apply_diag(gen) for gen in self.generators),
            name=f"{g.name}({self.name})" if self.name else "",
        )

    def vectors(self, budget: int) -> tuple[Vec, ...]:
        """All lattice vectors whose squared coordinates sum to at most
        ``budget``, in lexicographic order.

        The bound is parameter-free; since every evaluated square norm is at
        least a times the coordinate-square sum, a budget of at least T/a
        captures every vector of norm up to T at a point (a, b, c, d).
        """
        if budget < 0:
            raise ValueError("budget must be non-negative")
        cached = self._shells.get(budget)
        if cached is None:
            cached = tuple(self._scan(budget))
            self._shells[budget] = cached
        return cached

    def _scan(self, budget: int):
        # pruned box scan: coordinate intervals shrink with the remaining
        # square budget, membership checked at the leaves
        r0 = math.isqrt(budget)
        for x0 in range(-r0, r0 + 1):
            b1 = budget - x0 * x0
            r1 = math.isqrt(b1)
            for x1 in range(-r1, r1 + 1):
                b2 = b1 - x1 * x1
                r2 = math.isqrt(b2)
                for x2 in range(-r2, r2 + 1):
                    b3 = b2 - x2 * x2
                    r3 = math.isqrt(b3)
                    for x3 in range(-r3, r3 + 1):
                        v = (x0, x1, x2, x3)
                        if self.contains(v):
                            yield v

    def __repr__(self):
        return f"Lattice({self.name or self.generators!r})"


def _scale(v: Vec, c: int) -> Vec:
    return tuple(c * x for x in v)


@dataclass(frozen=True)
class LatticeFamily:
    """The five lattices of the construction, all in eigenbasis coordinates."""

    L: Lattice
    L1: Lattice
    L2: Lattice
    L12: Lattice
    M: Lattice

    def __iter__(self):
        return iter((self.L, self.L1, self.L2, self.L12, self.M))


@lru_cache(maxsize=1)
def build_family() -> LatticeFamily:
    """Construct L, L1, L2, L12 and M from the fixed integer generators.

    The base generators are the eigenbasis coordinates of the standard-basis
    columns, i.e. (J - 2I) times ``STANDARD_BASIS_COLUMNS``; scaling the
    third and fourth (resp. second and fourth, resp. all but the first) by 3
    produces L1, L2 and L12, and M is 3L.
    """
    l_gens = tuple(_matvec(_J_MINUS_2I, col) for col in STANDARD_BASIS_COLUMNS)
    l0, l1, l2, l3 = l_gens
    return LatticeFamily(
        L=Lattice(l_gens, "L"),
        L1=Lattice((l0, l1, _scale(l2, 3), _scale(l3, 3)), "L1"),
        L2=Lattice((l0, _scale(l1, 3), l2, _scale(l3, 3)), "L2"),
        L12=Lattice((l0, _scale(l1, 3), _scale(l2, 3), _scale(l3, 3)), "L12"),
        M=Lattice(tuple(_scale(g, 3) for g in l_gens), "M"),
    )


# Alternative generator matrices for the pair (columns).  ALT_L2_COLUMNS is
# the classical presentation of the second lattice; the classical first
# lattice is SIGN_FLIP applied to ALT_L1_COLUMNS, an isometry of every
# diagonal form diag(a, b, c, d).
ALT_L2_COLUMNS: tuple[Vec, ...] = _columns(
    ((-3, 1, 1, 1), (-1, -3, -1, 1), (-1, 1, -3, -1), (-1, -1, 1, -3))
)
ALT_L1_COLUMNS: tuple[Vec, ...] = _columns(
    ((3, 1, 1, 1), (1, -3, 1, -1), (-1, 1, 3, -1), (-1, -1, 1, 3))
)
SIGN_FLIP: Vec = (1, -1, 1, 1)

# Representatives of the nine cosets of M in L1: zero and +-rep_i.
COSET_REPS: tuple[Vec, ...] = (
    (-1, 3, -1, 1),
    (1, -1, -1, 3),
    (3, 1, -1, -1),
    (-1, -1, -3, -1),
)


@dataclass(frozen=True)
class GramParams:
    """The symmetric-form parameters (r, alpha, beta, gamma); equivalent to a
    parameter point via an invertible linear change."""

    r: Fraction
    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def __post_init__(self):
        for name in ("r", "alpha", "beta", "gamma"):
            object.__setattr__(self, name, exact(getattr(self, name)))


def gram_from_abcd(p: ParamPoint) -> GramParams:
    a, b, c, d = p.coords
    return GramParams(
        r=a + b + c + d,
        alpha=c + d - a - b,
        beta=b - a - c + d,
        gamma=b - a + c - d,
    )


def abcd_from_gram(g: GramParams) -> ParamPoint:
    """Inverse of :func:`gram_from_abcd`; rejects parameters that do not give
    a positive definite form."""
    quarter = Fraction(1, 4)
    a = quarter * (g.r - g.alpha - g.beta - g.gamma)
    b = quarter * (g.r - g.alpha + g.beta + g.gamma)
    c = quarter * (g.r + g.alpha - g.beta + g.gamma)
    d = quarter * (g.r + g.alpha + g.beta - g.gamma)
    if any(x <= 0 for x in (a, b, c, d)):
        raise ValueError(f"not positive definite: diagonal entries ({a}, {b}, {c}, {d})")
    return ParamPoint(a, b, c, d)


def phi(v) -> Expo:
    """Squared coordinates: the parameter-free shadow of the square norm."""
    return tuple(x * x for x in v)


def inner(v, w, p: ParamPoint) -> Fraction:
    return sum(x * y * s for x, y, s in zip(v, w, p.coords))


def norm2(v, p: ParamPoint) -> Fraction:
    return inner(v, v, p)


def inner_poly(v, w) -> ParamPolynomial:
    """The inner product as a linear polynomial in (a, b, c, d)."""
    return ParamPolynomial.linear(tuple(x * y for x, y in zip(v, w)))


def norm_poly(v) -> ParamPolynomial:
    return inner_poly(v, v)


def to_standard(v) -> Vec:
    """Standard coordinates of an eigenbasis-coordinate vector of L."""
    t = _matvec(_J_MINUS_2I, v)
    if any(x % 4 for x in t):
        raise ValueError(f"{tuple(v)} is not in the base lattice")
    return tuple(x // 4 for x in t)


def from_standard(x) -> Vec:
    """Eigenbasis coordinates of a standard-coordinate integer vector."""
    return _matvec(_J_MINUS_2I, x)


def project_mod3(v) -> Word:
    """The mod-3 image of a base-lattice vector in standard coordinates.

    This is the surjection whose kernel is M = 3L; its fibers over the codes
    C1 and C2 are L1 and L2.
    """
    return normalize(to_standard(v))


@dataclass(frozen=True)
class CosetLabel:
    """One of the nine classes of L1 modulo M: zero, or (index, sign) naming
    a signed representative."""

    index: int | None
    sign: int

    def __post_init__(self):
        if self.index is None:
            if self.sign != 0:
                raise ValueError("the zero class has sign 0")
        elif self.index not in (0, 1, 2, 3) or self.sign not in (-1, 1):
            raise ValueError(f"bad coset label ({self.index}, {self.sign})")

    @classmethod
    def zero(cls) -> "CosetLabel":
        return cls(None, 0)

    @property
    def is_zero(self) -> bool:
        return self.index is None

    def __neg__(self) -> "CosetLabel":
        return self if self.is_zero else CosetLabel(self.index, -self.sign)

    def representative(self) -> Vec:
        if self.is_zero:
            return (0, 0, 0, 0)
        rep = COSET_REPS[self.index]
        return rep if self.sign > 0 else tuple(-x for x in rep)

    def __str__(self):
        if self.is_zero:
            return "[0]"
        return f"[{'+' if self.sign > 0 else '-'}v{self.index}]"


ALL_LABELS: tuple[CosetLabel, ...] = (CosetLabel.zero(),) + tuple(
    CosetLabel(i, s) for i in range(4) for s in (1, -1)
)

_WORD_TO_LABEL = {
    (0, 0, 0, 0): CosetLabel.zero(),
    **{C1_LABELED_WORDS[i]: CosetLabel(i, 1) for i in range(4)},
    **{normalize(tuple(-x for x in C1_LABELED_WORDS[i])): CosetLabel(i, -1) for i in range(4)},
}
_WORD_TO_LABEL_L2 = {
    (0, 0, 0, 0): CosetLabel.zero(),
    **{C2_LABELED_WORDS[i]: CosetLabel(i, 1) for i in range(4)},
    **{normalize(tuple(-x for x in C2_LABELED_WORDS[i])): CosetLabel(i, -1) for i in range(4)},
}


def coset_label(v) -> CosetLabel:
    """The class of a vector of L1 modulo M."""
    fam = build_family()
    if not fam.L1.contains(v):
        raise ValueError(f"{tuple(v)} is not in L1")
    return _WORD_TO_LABEL[project_mod3(v)]


def _coset_label_l2(w) -> CosetLabel:
    fam = build_family()
    if not fam.L2.contains(w):
        raise ValueError(f"{tuple(w)} is not in L2")
    return _WORD_TO_LABEL_L2[project_mod3(w)]


def psi(v) -> Vec:
    """The norm-preserving bijection from L1 to L2: identity on M, the i-th
    diagonal sign matrix on the class of the i-th representative."""
    label = coset_label(v)
    if label.is_zero:
        return tuple(v)
    return K4[label.index].apply_diag(v)


def psi_inv(w) -> Vec:
    """Inverse bijection from L2 to L1, by the same recipe on classes of
    L2 modulo M."""
    label = _coset_label_l2(w)
    if label.is_zero:
        return tuple(w)
    return K4[label.index].apply_diag(w)
