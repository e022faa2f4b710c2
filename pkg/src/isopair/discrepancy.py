"""The discrepancy series and the non-isometry certificate.

The discrepancy is 1/128 times the difference of the degree-2 invariants of
the pair.  Because the bijection ``psi`` matches L2 vectors to L1 vectors of
identical squared-coordinate tuples, the norm terms of the two invariants
cancel and the discrepancy collapses to a single sum over L1 x L1::

    delta = 1/8 * sum_{(l,k)} (<l,k>^2 - <psi(l),psi(k)>^2) q^(phi(l)+phi(k)).

Splitting the sum by the coset classes of l and k modulo M gives class
series; those indexed by equal or opposite classes or by the zero class
vanish, and the whole series is the sum of the six class series with
distinct positive representatives.

The leading term is controlled by the suffix-sum partial order: a search of
the budget shell finds the order-minimal vectors of each class, pairs of
them from distinct classes realize the candidate leading exponents, and
exactly two of the eighteen candidates are order-minimal.  Their
coefficients are -12(b-a)(d-c) and -96a(c-b), both strictly negative on the
admissible cone, so the collapsed series has a nonzero leading coefficient
at every pairwise-distinct positive parameter point: the pair is isospectral
but never isometric there.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lattices import (
    ALL_LABELS,
    COSET_REPS,
    CosetLabel,
    Vec,
    build_family,
    coset_label,
    inner_poly,
    phi,
    psi,
)
from .qarith import (
    Cmp,
    Expo,
    FormalQSeries,
    ParamPoint,
    ParamPolynomial,
    exp_cmp,
    sigma,
)
from .theta import Kernel, theta11


class Route(enum.Enum):
    FROM_THETA = "theta"
    FROM_PSI_KERNEL = "psi"


class Verdict(enum.Enum):
    NON_ISOMETRIC = "NonIsometric"
    INCONCLUSIVE = "Inconclusive"


def pair_discrepancy_kernel(l, k) -> ParamPolynomial:
    """<l,k>^2 - <psi(l),psi(k)>^2 for vectors of L1."""
    ip = inner_poly(l, k)
    ipp = inner_poly(psi(l), psi(k))
    return ip * ip - ipp * ipp


@lru_cache(maxsize=None)
def _labelled_shell(budget: int) -> dict[CosetLabel, tuple[Vec, ...]]:
    members: dict[CosetLabel, list[Vec]] = {label: [] for label in ALL_LABELS}
    for v in build_family().L1.vectors(budget):
        members[coset_label(v)].append(v)
    return {label: tuple(vs) for label, vs in members.items()}


def class_members(label: CosetLabel, budget: int) -> tuple[Vec, ...]:
    """The vectors of one coset class within the budget shell."""
    return _labelled_shell(budget)[label]


def _pair_sum(first, second, budget: int) -> FormalQSeries:
    psis = {v: psi(v) for v in first}
    psis.update((v, psi(v)) for v in second)
    acc: dict[Expo, ParamPolynomial] = {}
    for l in first:
        pl = phi(l)
        pil = psis[l]
        for k in second:
            pk = phi(k)
            e = (pl[0] + pk[0], pl[1] + pk[1], pl[2] + pk[2], pl[3] + pk[3])
            if sum(e) > budget:
                continue
            ip = inner_poly(l, k)
            ipp = inner_poly(pil, psis[k])
            value = ip * ip - ipp * ipp
            if not value:
                continue
            seen = acc.get(e)
            value = value if seen is None else seen + value
            if value:
                acc[e] = value
            else:
                acc.pop(e, None)
    return FormalQSeries(budget, acc)


@lru_cache(maxsize=None)
def class_pair_series(label1: CosetLabel, label2: CosetLabel, budget: int) -> FormalQSeries:
    """The discrepancy contribution of one ordered pair of coset classes
    (no prefactor)."""
    shell = _labelled_shell(budget)
    return _pair_sum(shell[label1], shell[label2], budget)


@dataclass(frozen=True)
class ClassPair:
    """An unordered pair of distinct positive classes, i < j."""

    i: int
    j: int

    def __post_init__(self):
        if not (0 <= self.i < self.j <= 3):
            raise ValueError(f"need 0 <= i < j <= 3, got ({self.i}, {self.j})")


def delta_class(pair: ClassPair, budget: int) -> FormalQSeries:
    return class_pair_series(CosetLabel(pair.i, 1), CosetLabel(pair.j, 1), budget)


@lru_cache(maxsize=None)
def delta_series(budget: int, route: Route = Route.FROM_PSI_KERNEL) -> FormalQSeries:
    """The discrepancy series at the given budget.

    ``FROM_PSI_KERNEL`` sums the pair kernel over L1 x L1 and scales by 1/8;
    ``FROM_THETA`` takes 1/128 of the difference of the two invariants,
    enumerating L2 independently.  The two routes agree exactly.
    """
    if route is Route.FROM_THETA:
        fam = build_family()
        diff = theta11(fam.L1, budget, Kernel.PAIRWISE) - theta11(fam.L2, budget, Kernel.PAIRWISE)
        return diff.scaled(Fraction(1, 128))
    shell = build_family().L1.vectors(budget)
    return _pair_sum(shell, shell, budget).scaled(Fraction(1, 8))


@dataclass(frozen=True)
class RelationReport:
    """Outcome of the class-series identity checks."""

    ok: bool
    checked: int
    violated: str | None = None
    labels: tuple[str, ...] = ()
    witness: Expo | None = None


def check_relations(budget: int) -> RelationReport:
    """Verify the four class-series identities on the truncation:

    (1) equal classes give zero; (2) the series is symmetric in its classes;
    (3) negating one class changes nothing; (4) the zero class gives zero.
    Stops at the first violation, reporting a witness exponent.
    """
    checked = 0

    def witness_of(series: FormalQSeries) -> Expo:
        return min(series.terms)

    for label in ALL_LABELS:
        series = class_pair_series(label, label, budget)
        checked += 1
        if not series.is_zero:
            return RelationReport(False, checked, "equal-classes", (str(label),), witness_of(series))
    for label1 in ALL_LABELS:
        for label2 in ALL_LABELS:
            forward = class_pair_series(label1, label2, budget)
            backward = class_pair_series(label2, label1, budget)
            checked += 1
            if forward != backward:
                diff = forward - backward
                return RelationReport(
                    False, checked, "symmetry", (str(label1), str(label2)), witness_of(diff)
                )
            negated = class_pair_series(label1, -label2, budget)
            checked += 1
            if forward != negated:
                diff = forward - negated
                return RelationReport(
                    False, checked, "sign-invariance", (str(label1), str(label2)), witness_of(diff)
                )
    zero = CosetLabel.zero()
    for label in ALL_LABELS:
        series = class_pair_series(zero, label, budget)
        checked += 1
        if not series.is_zero:
            return RelationReport(False, checked, "zero-class", (str(label),), witness_of(series))
    return RelationReport(True, checked)


def _strictly_below(e: Expo, f: Expo) -> bool:
    return exp_cmp(e, f) is Cmp.LESS


def minimal_vectors(label: CosetLabel, budget: int) -> tuple[Vec, ...]:
    """Order-minimal vectors of a coset class within the budget shell.

    A vector is minimal when no class member's squared-coordinate tuple lies
    strictly below its own in the suffix-sum order.  Domination can only come
    from vectors of smaller or equal coordinate-square sum, so enlarging the
    budget never retracts a reported vector; it can only add minimal vectors
    of larger square sum.
    """
    members = class_members(label, budget)
    out = []
    for v in members:
        pv = phi(v)
        if not any(_strictly_below(phi(w), pv) for w in members):
            out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class PairRow:
    """One candidate leading exponent: global indices of two minimal vectors
    from distinct classes and the sum of their squared-coordinate tuples."""

    i: int
    j: int
    exponent: Expo


def _numbered_minimal_vectors(budget: int) -> tuple[dict[int, Vec], dict[int, int]]:
    # global numbering: class representatives keep their class index 0..3,
    # further minimal vectors get 4, 5, ... in class order
    vectors: dict[int, Vec] = {}
    class_of: dict[int, int] = {}
    extras: list[tuple[int, Vec]] = []
    for i in range(4):
        for v in minimal_vectors(CosetLabel(i, 1), budget):
            if v == COSET_REPS[i]:
                vectors[i] = v
                class_of[i] = i
            else:
                extras.append((i, v))
    index = 4
    for i, v in sorted(extras):
        vectors[index] = v
        class_of[index] = i
        index += 1
    return vectors, class_of


def minimal_pair_table(budget: int) -> tuple[PairRow, ...]:
    """All exponent candidates from pairs of minimal vectors in distinct
    classes, with the global numbering."""
    if budget < 36:
        raise ValueError("pair table needs budget >= 36 to see every minimal vector")
    vectors, class_of = _numbered_minimal_vectors(budget)
    rows = []
    for i in sorted(vectors):
        for j in sorted(vectors):
            if i < j and class_of[i] != class_of[j]:
                e = tuple(x + y for x, y in zip(phi(vectors[i]), phi(vectors[j])))
                rows.append(PairRow(i, j, e))
    return tuple(rows)


def minimal_rows(table: tuple[PairRow, ...]) -> tuple[PairRow, ...]:
    """The rows whose exponents are order-minimal within the table."""
    return tuple(
        row
        for row in table
        if not any(_strictly_below(other.exponent, row.exponent) for other in table)
    )


@dataclass(frozen=True)
class CertTerm:
    exponent_vector: Expo
    polynomial: ParamPolynomial
    value: Fraction


@dataclass(frozen=True)
class Certificate:
    """Witness that the pair at a parameter point is not isometric.

    ``NON_ISOMETRIC`` requires a nonzero total coefficient at the minimal
    collapsed exponent of the discrepancy; repeated parameter values yield
    ``INCONCLUSIVE`` and no terms.
    """

    params: tuple[Fraction, ...]
    sorted_params: tuple[Fraction, ...]
    permutation: tuple[int, ...]
    budget: int
    min_exponent: Fraction | None
    terms: tuple[CertTerm, ...]
    total: Fraction | None
    verdict: Verdict

    def to_json_dict(self) -> dict:
        return {
            "params": [str(x) for x in self.params],
            "sorted_params": [str(x) for x in self.sorted_params],
            "permutation": list(self.permutation),
            "budget": self.budget,
            "min_exponent": None if self.min_exponent is None else str(self.min_exponent),
            "terms": [
                {
                    "exponent_vector": list(term.exponent_vector),
                    "polynomial": [
                        [list(mono), str(coeff)] for mono, coeff in term.polynomial.as_pairs()
                    ],
                    "value": str(term.value),
                }
                for term in self.terms
            ],
            "total": None if self.total is None else str(self.total),
            "verdict": self.verdict.value,
        }


def certify(p: ParamPoint, budget: int = 40, route: Route = Route.FROM_PSI_KERNEL) -> Certificate:
    """Certify non-isometry of the pair at a parameter point.

    The parameters must be positive rationals; a repeated value falls outside
    the family's hypothesis and gives an inconclusive certificate.  Distinct
    values are sorted into the canonical increasing chain first.  The
    collapsed discrepancy's minimal exponent must agree with the minimum of
    the two order-minimal pair exponents, whose stored coefficients are also
    cross-checked against the direct two-vector kernels; ties are resolved by
    summing coefficients at the common collapsed exponent.
    """
    if budget < 36:
        raise ValueError("certification needs budget >= 36 to cover the minimal pair table")
    ordered, permutation = p.sorted()
    if not p.pairwise_distinct:
        return Certificate(
            params=p.coords,
            sorted_params=ordered.coords,
            permutation=permutation,
            budget=budget,
            min_exponent=None,
            terms=(),
            total=None,
            verdict=Verdict.INCONCLUSIVE,
        )

    table = minimal_pair_table(budget)
    leading_rows = minimal_rows(table)
    series = delta_series(budget, route)
    vectors, _ = _numbered_minimal_vectors(budget)

    by_sigma: dict[Fraction, list[tuple[PairRow, ParamPolynomial]]] = {}
    for row in leading_rows:
        poly = series.coefficient(row.exponent)
        direct = pair_discrepancy_kernel(vectors[row.i], vectors[row.j])
        if poly != direct:
            raise AssertionError(
                f"coefficient at {row.exponent} disagrees with the minimal-pair kernel"
            )
        by_sigma.setdefault(sigma(row.exponent, ordered), []).append((row, poly))

    min_exponent = min(by_sigma)
    collapsed = series.collapse(ordered)
    if not collapsed or collapsed[0][0] != min_exponent:
        raise AssertionError("collapsed series does not lead at the minimal pair exponent")

    terms = tuple(
        CertTerm(row.exponent, poly, poly.evaluate(ordered))
        for row, poly in by_sigma[min_exponent]
    )
    total = sum((term.value for term in terms), Fraction(0))
    if collapsed[0][1] != total:
        raise AssertionError("leading coefficient does not match the certificate terms")

    verdict = Verdict.NON_ISOMETRIC if total != 0 else Verdict.INCONCLUSIVE
    return Certificate(
        params=p.coords,
        sorted_params=ordered.coords,
        permutation=permutation,
        budget=budget,
        min_exponent=min_exponent,
        terms=terms,
        total=total,
        verdict=verdict,
    )
