import math
import random
from fractions import Fraction
from itertools import product

import pytest

from isopair import (
    ALL_LABELS,
    COSET_REPS,
    CosetLabel,
    GramParams,
    K4,
    Lattice,
    ParamPoint,
    abcd_from_gram,
    build_family,
    coset_label,
    gram_from_abcd,
    inner,
    inner_poly,
    norm2,
    phi,
    project_mod3,
    psi,
    psi_inv,
)
from isopair.codes import SELFDUAL_GENERATORS, TernaryCode
from isopair.lattices import (
    ALT_L1_COLUMNS,
    ALT_L2_COLUMNS,
    SIGN_FLIP,
    STANDARD_BASIS_COLUMNS,
    from_standard,
    hermite_normal_form,
    to_standard,
)
from isopair.qarith import ParamPolynomial

from conftest import SCHIEMANN, random_admissible_point

# The base-lattice generator matrix in eigenbasis coordinates (columns).
BASE_GENERATORS = ((-1, 3, -1, 1), (1, -1, -1, 3), (-1, -1, 1, 3), (-1, 1, -1, 3))


# ---------------------------------------------------------------------------
# independent oracles: Fraction Gaussian solve for membership, naive box scan
# for enumeration, mutual membership for lattice equality
# ---------------------------------------------------------------------------

def solve_membership(generators, v):
    m = [[Fraction(generators[j][i]) for j in range(4)] + [Fraction(v[i])] for i in range(4)]
    for col in range(4):
        piv = next((r for r in range(col, 4) if m[r][col]), None)
        if piv is None:
            return False
        m[col], m[piv] = m[piv], m[col]
        m[col] = [x / m[col][col] for x in m[col]]
        for r in range(4):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return all(m[r][4].denominator == 1 for r in range(4))


def naive_shell(generators, budget):
    r = math.isqrt(budget)
    out = []
    for v in product(range(-r, r + 1), repeat=4):
        if sum(x * x for x in v) <= budget and solve_membership(generators, v):
            out.append(v)
    return out


def same_span(gens_a, gens_b):
    return all(solve_membership(gens_a, v) for v in gens_b) and all(
        solve_membership(gens_b, v) for v in gens_a
    )


class TestGramParameters:
    def test_symmetric_point(self):
        g = gram_from_abcd(ParamPoint(1, 1, 1, 1))
        assert (g.r, g.alpha, g.beta, g.gamma) == (4, 0, 0, 0)

    def test_integral_example(self):
        g = gram_from_abcd(SCHIEMANN)
        assert g.r == 40
        assert abcd_from_gram(g) == SCHIEMANN

    def test_round_trip(self):
        rng = random.Random(41)
        for _ in range(20):
            p = random_admissible_point(rng)
            assert abcd_from_gram(gram_from_abcd(p)) == p

    def test_rejects_indefinite(self):
        with pytest.raises(ValueError, match="positive"):
            abcd_from_gram(GramParams(4, 8, 0, 0))


class TestBasisChange:
    def test_generators_match_converted_columns(self):
        fam = build_family()
        assert fam.L.generators == BASE_GENERATORS
        assert tuple(from_standard(col) for col in STANDARD_BASIS_COLUMNS) == BASE_GENERATORS

    def test_standard_matrix_unimodular(self):
        # the standard-basis columns change nothing: |det| = 1
        hnf = hermite_normal_form(STANDARD_BASIS_COLUMNS)
        assert hnf == ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))

    def test_standard_round_trip(self):
        fam = build_family()
        for v in fam.L.vectors(12):
            assert from_standard(to_standard(v)) == v

    def test_group_diagonal_on_eigenvectors(self):
        # columns of (J - 2I)/4 are the common eigenvectors; conjugation by
        # them turns the signed permutations into the stored diagonals
        jm2i = ((-1, 1, 1, 1), (1, -1, 1, 1), (1, 1, -1, 1), (1, 1, 1, -1))
        for g in K4:
            for j in range(4):
                u = tuple(Fraction(jm2i[i][j], 4) for i in range(4))
                image = tuple(sum(Fraction(g.standard[i][k]) * u[k] for k in range(4)) for i in range(4))
                assert image == tuple(g.diag[j] * x for x in u)


class TestLatticeEquality:
    def test_unimodular_mix(self):
        rng = random.Random(43)
        fam = build_family()
        for lat in (fam.L, fam.L1, fam.M):
            gens = [list(g) for g in lat.generators]
            for _ in range(30):  # random elementary column operations
                i, j = rng.sample(range(4), 2)
                op = rng.choice(("add", "sub", "swap", "neg"))
                if op == "add":
                    gens[i] = [x + y for x, y in zip(gens[i], gens[j])]
                elif op == "sub":
                    gens[i] = [x - y for x, y in zip(gens[i], gens[j])]
                elif op == "swap":
                    gens[i], gens[j] = gens[j], gens[i]
                else:
                    gens[i] = [-x for x in gens[i]]
            assert Lattice(gens) == lat

    def test_distinct_lattices_differ(self):
        fam = build_family()
        assert fam.L1 != fam.L2
        assert fam.L1 != fam.M

    def test_alternative_generators(self):
        fam = build_family()
        assert Lattice(ALT_L2_COLUMNS) == fam.L2
        assert same_span(ALT_L2_COLUMNS, fam.L2.generators)
        assert Lattice(ALT_L1_COLUMNS) == fam.L1
        assert same_span(ALT_L1_COLUMNS, fam.L1.generators)

    def test_classical_first_lattice_needs_the_sign_flip(self):
        fam = build_family()
        flip = lambda v: tuple(s * x for s, x in zip(SIGN_FLIP, v))
        classical = tuple(flip(col) for col in ALT_L1_COLUMNS)
        assert Lattice(tuple(flip(col) for col in classical)) == fam.L1
        # without the flip the columns do not even lie in the base lattice
        assert not any(fam.L.contains(col) for col in classical)


class TestStructure:
    def test_indices(self):
        fam = build_family()
        assert fam.L1.index_in(fam.L) == 9
        assert fam.L2.index_in(fam.L) == 9
        assert fam.L12.index_in(fam.L1) == 3
        assert fam.L12.index_in(fam.L2) == 3
        assert fam.M.index_in(fam.L1) == 9

    def test_tripled_base_equals_m(self):
        fam = build_family()
        tripled = Lattice(tuple(tuple(3 * x for x in g) for g in fam.L.generators))
        assert tripled == fam.M
        assert same_span(tripled.generators, fam.M.generators)

    def test_index_requires_containment(self):
        fam = build_family()
        with pytest.raises(ValueError):
            fam.L.index_in(fam.M)


class TestContains:
    def test_examples(self):
        fam = build_family()
        assert fam.L1.contains((3, 1, -1, -1))
        assert not fam.M.contains((1, 0, 0, 0))
        for lat in fam:
            assert lat.contains((0, 0, 0, 0))

    def test_matches_solver(self):
        rng = random.Random(47)
        fam = build_family()
        for lat in fam:
            for _ in range(200):
                v = tuple(rng.randint(-9, 9) for _ in range(4))
                assert lat.contains(v) == solve_membership(lat.generators, v)


class TestEnumeration:
    def test_nine_shortest_in_l1(self):
        fam = build_family()
        got = fam.L1.vectors(12)
        expected = tuple(sorted(
            [(0, 0, 0, 0)]
            + list(COSET_REPS)
            + [tuple(-x for x in v) for v in COSET_REPS]
        ))
        assert got == expected
        assert all(v == (0, 0, 0, 0) or sum(phi(v)) == 12 for v in got)

    def test_budget_zero(self):
        fam = build_family()
        assert fam.L.vectors(0) == ((0, 0, 0, 0),)

    def test_m_has_no_short_vectors(self):
        fam = build_family()
        assert fam.M.vectors(35) == ((0, 0, 0, 0),)
        assert len(fam.M.vectors(36)) == 9

    def test_matches_naive_scan(self):
        fam = build_family()
        for lat in fam:
            for budget in (0, 5, 8, 12):
                assert list(lat.vectors(budget)) == naive_shell(lat.generators, budget)

    def test_lexicographic_and_deterministic(self):
        fam = build_family()
        shell = fam.L1.vectors(24)
        assert list(shell) == sorted(shell)
        assert fam.L1.vectors(24) == shell

    def test_rejects_negative_budget(self):
        with pytest.raises(ValueError):
            build_family().L.vectors(-1)


class TestProjection:
    def test_m_projects_to_zero(self):
        fam = build_family()
        for v in fam.M.vectors(36):
            assert project_mod3(v) == (0, 0, 0, 0)

    def test_l1_is_the_fiber_over_c1(self):
        fam = build_family()
        c1 = TernaryCode.from_generators(*SELFDUAL_GENERATORS[0])
        for v in fam.L.vectors(8):
            assert fam.L1.contains(v) == (project_mod3(v) in c1)

    def test_l2_is_the_fiber_over_c2(self):
        fam = build_family()
        c2 = TernaryCode.from_generators(*SELFDUAL_GENERATORS[1])
        for v in fam.L.vectors(8):
            assert fam.L2.contains(v) == (project_mod3(v) in c2)

    def test_first_generator_lands_in_c1(self):
        fam = build_family()
        c1 = TernaryCode.from_generators(*SELFDUAL_GENERATORS[0])
        image = project_mod3(fam.L.generators[0])
        assert any(image) and image in c1

    def test_additive(self):
        rng = random.Random(53)
        fam = build_family()
        shell = fam.L.vectors(20)
        for _ in range(100):
            v, w = rng.choice(shell), rng.choice(shell)
            total = tuple(a + b for a, b in zip(v, w))
            expected = tuple((a + b) % 3 for a, b in zip(project_mod3(v), project_mod3(w)))
            assert project_mod3(total) == expected

    def test_rejects_non_members(self):
        with pytest.raises(ValueError):
            project_mod3((1, 0, 0, 0))


class TestNorms:
    def test_phi_of_first_representative(self):
        assert phi((-1, 3, -1, 1)) == (1, 9, 1, 1)

    def test_inner_poly_example(self):
        expected = ParamPolynomial.linear((-3, 3, 1, -1))
        assert inner_poly((-1, 3, -1, 1), (3, 1, -1, -1)) == expected

    def test_norm_zero(self):
        assert norm2((0, 0, 0, 0), SCHIEMANN) == 0

    def test_inner_matches_poly_evaluation(self):
        rng = random.Random(59)
        for _ in range(50):
            v = tuple(rng.randint(-5, 5) for _ in range(4))
            w = tuple(rng.randint(-5, 5) for _ in range(4))
            p = random_admissible_point(rng)
            assert inner(v, w, p) == inner_poly(v, w).evaluate(p)
            assert norm2(v, p) == inner_poly(v, v).evaluate(p)


class TestCosetLabels:
    def test_representative_labels(self):
        for i, rep in enumerate(COSET_REPS):
            assert coset_label(rep) == CosetLabel(i, 1)
            assert coset_label(tuple(-x for x in rep)) == CosetLabel(i, -1)

    def test_examples(self):
        assert coset_label((-4, 0, 2, -2)) == CosetLabel(0, 1)
        assert coset_label((4, 2, 2, 0)) == CosetLabel(1, 1)
        fam = build_family()
        for m in fam.M.vectors(36):
            assert coset_label(m).is_zero

    def test_negation(self):
        fam = build_family()
        for v in fam.L1.vectors(24):
            assert coset_label(tuple(-x for x in v)) == -coset_label(v)

    def test_labels_partition_the_shell(self):
        fam = build_family()
        shell = fam.L1.vectors(24)
        seen = {label: 0 for label in ALL_LABELS}
        for v in shell:
            seen[coset_label(v)] += 1
        assert sum(seen.values()) == len(shell)
        assert len(ALL_LABELS) == 9

    def test_label_matches_rep_difference(self):
        # v minus its signed representative lies in M
        fam = build_family()
        for v in fam.L1.vectors(24):
            rep = coset_label(v).representative()
            assert fam.M.contains(tuple(x - y for x, y in zip(v, rep)))

    def test_rejects_non_members(self):
        with pytest.raises(ValueError):
            coset_label((1, 0, 0, 0))


class TestPsi:
    def test_identity_on_m(self):
        fam = build_family()
        for m in fam.M.vectors(36):
            assert psi(m) == m

    def test_diagonal_action_example(self):
        assert psi((3, 1, -1, -1)) == (-3, -1, -1, -1)

    def test_round_trip(self):
        fam = build_family()
        for v in fam.L1.vectors(20):
            assert psi_inv(psi(v)) == v
        for w in fam.L2.vectors(20):
            assert psi(psi_inv(w)) == w

    def test_preserves_squared_coordinates(self):
        fam = build_family()
        for v in fam.L1.vectors(24):
            assert phi(psi(v)) == phi(v)

    def test_bijection_between_shells(self):
        fam = build_family()
        for budget in (12, 24):
            image = sorted(psi(v) for v in fam.L1.vectors(budget))
            assert image == list(fam.L2.vectors(budget))

    def test_odd(self):
        fam = build_family()
        for v in fam.L1.vectors(24):
            assert psi(tuple(-x for x in v)) == tuple(-x for x in psi(v))

    def test_not_additive(self):
        v, w = (-1, 3, -1, 1), (1, -1, -1, 3)
        total = tuple(a + b for a, b in zip(v, w))
        assert psi(total) == (0, -2, -2, 4)
        assert tuple(a + b for a, b in zip(psi(v), psi(w))) == (-2, 2, 0, 4)
        assert psi(total) != tuple(a + b for a, b in zip(psi(v), psi(w)))

    def test_rejects_non_members(self):
        with pytest.raises(ValueError):
            psi((1, 0, 0, 0))
        with pytest.raises(ValueError):
            psi_inv((1, -1, -1, 3))  # in L1 but not in L2

    def test_defined_on_the_intersection_consistently(self):
        fam = build_family()
        shared = (-1, 3, -1, 1)  # generator of both sublattices
        assert fam.L1.contains(shared) and fam.L2.contains(shared)
        assert psi_inv(psi(shared)) == shared


class TestHermiteNormalForm:
    def test_canonical_shape(self):
        fam = build_family()
        for lat in fam:
            hnf = lat.hnf
            for i in range(4):
                assert hnf[i][i] > 0
                for j in range(i):
                    assert hnf[i][j] == 0
                for r in range(i):
                    assert 0 <= hnf[r][i] < hnf[i][i]

    def test_equality_matches_mutual_membership(self):
        rng = random.Random(61)
        fam = build_family()
        lattices = list(fam)
        for _ in range(20):
            a, b = rng.choice(lattices), rng.choice(lattices)
            assert (a == b) == same_span(a.generators, b.generators)

    def test_singular_rejected(self):
        with pytest.raises(ValueError):
            hermite_normal_form(((1, 0, 0, 0), (2, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)))
