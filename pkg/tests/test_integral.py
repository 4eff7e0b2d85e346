from fractions import Fraction

import pytest

import ordmeasure as om
from ordmeasure.errors import (
    CertificationError,
    HypothesisError,
    NotIntegrableError,
    ValidationError,
)
from ordmeasure.integral import ElementaryFunction, combine, integrate_elementary
from ordmeasure.measures import mask_to_points
from ordmeasure.rationals import INFINITY
from ordmeasure.sequences import (
    DeclaredLimit,
    DivergesToInfinity,
    SequenceSpec,
    from_terms,
)

from conftest import nonneg_rational, random_algebra, random_measure

C2 = om.coord(2)


def fin(x, y):
    return om.finite(om.element(C2, [x, y]))


def basic_measure():
    space = om.power_set_space(2)
    return om.Measure(space, C2, {1: fin(1, 0), 2: fin(0, 1)})


def null_atom_measure():
    space = om.power_set_space(3)
    return om.Measure(space, C2, {1: fin(1, 0), 2: fin(0, 1), 4: fin(0, 0)})


class TestMeasurability:
    def test_non_measurable_function_rejected(self):
        space = om.generate_sigma_algebra([0b011], 2)  # atoms: {0,1}
        with pytest.raises(ValidationError, match="not measurable"):
            om.ext_function(space, [0, 1])

    def test_measurable_mixed_infinity(self):
        space = om.generate_sigma_algebra([0b011], 3)
        om.ext_function(space, [1, 1, INFINITY])
        with pytest.raises(ValidationError):
            om.ext_function(space, [1, INFINITY, 0])

    def test_signed_measurability(self):
        space = om.generate_sigma_algebra([0b011], 2)
        with pytest.raises(ValidationError):
            om.signed_function(space, [-1, 1])


class TestElementary:
    def test_two_representations_one_value(self):
        mu = basic_measure()
        rep1 = ElementaryFunction(mu.space, ((Fraction(2), 0b11),))
        rep2 = ElementaryFunction(mu.space,
                                  ((Fraction(2), 0b01), (Fraction(2), 0b10)))
        assert integrate_elementary(rep1, mu) == fin(2, 2)
        assert integrate_elementary(rep2, mu) == fin(2, 2)

    def test_zero_function(self):
        mu = basic_measure()
        assert integrate_elementary(ElementaryFunction(mu.space, ()), mu) == fin(0, 0)

    def test_infinite_support(self):
        space = om.power_set_space(3)
        mu = om.Measure(space, C2, {1: fin(1, 0), 2: fin(0, 1), 4: om.infinity(C2)})
        phi = ElementaryFunction(space, ((Fraction(1), 0b100),))
        assert integrate_elementary(phi, mu) == om.infinity(C2)

    def test_overlapping_representation(self):
        mu = basic_measure()
        # 1*X + 2*{0} has dense values (3, 1)
        phi = ElementaryFunction(mu.space, ((Fraction(1), 0b11), (Fraction(2), 0b01)))
        assert integrate_elementary(phi, mu) == fin(3, 1)

    def test_random_rerepresentations(self, rng):
        for _ in range(40):
            ground = rng.randint(1, 5)
            space = random_algebra(rng, ground)
            mu = random_measure(rng, space, C2)
            members = space.members()
            terms = tuple(
                (nonneg_rational(rng), rng.choice(members))
                for _ in range(rng.randint(0, 4))
            )
            phi = ElementaryFunction(space, terms)
            base = integrate_elementary(phi, mu)
            # re-representation: split every set into its atoms, shuffled,
            # plus a zero-coefficient set
            split = []
            for coeff, mask in terms:
                for atom in space.atoms_inside(mask):
                    split.append((coeff, atom))
            rng.shuffle(split)
            split.append((Fraction(0), members[-1]))
            assert integrate_elementary(ElementaryFunction(space, tuple(split)),
                                        mu) == base

    def test_key_inequality_random(self, rng):
        # an elementary function below the pointwise supremum of an
        # increasing elementary ladder integrates below the ladder's sup
        for _ in range(30):
            ground = rng.randint(1, 4)
            space = om.power_set_space(ground)
            mu = random_measure(rng, space, C2)
            target = [nonneg_rational(rng, hi=3) for _ in range(ground)]
            dominating = [v + nonneg_rational(rng, hi=2) for v in target]
            phi = ElementaryFunction.from_dense(space, target)
            ladder = [
                ElementaryFunction.from_dense(
                    space, [v * Fraction(n, 3) for v in dominating])
                for n in (1, 2, 3)
            ]
            values = [integrate_elementary(p, mu) for p in ladder]
            sup = values[-1]
            assert all(om.ext_leq(v, sup) for v in values)
            assert om.ext_leq(integrate_elementary(phi, mu), sup)


class TestIntegrateExtended:
    def test_infinity_on_null_atom(self):
        mu = null_atom_measure()
        f = om.ext_function(mu.space, [0, 0, INFINITY])
        report = om.integrate_extended(f, mu)
        assert report.value == fin(0, 0)

    def test_constant_one(self):
        mu = basic_measure()
        f = om.ext_function(mu.space, [1, 1])
        assert om.integrate_extended(f, mu).value == fin(1, 1)

    def test_growing_function_series_measure(self):
        c4 = om.coord(4)
        space = om.power_set_space(4)
        atoms = {
            1 << i: om.finite(om.element(
                c4, [Fraction(1, i + 1) if j == i else 0 for j in range(4)]))
            for i in range(4)
        }
        mu = om.Measure(space, c4, atoms)
        f = om.ext_function(space, [1, 2, 3, 4])
        assert om.integrate_extended(f, mu).value == om.finite(
            om.element(c4, [1, 1, 1, 1]))

    def test_infinite_value_on_real_atom(self):
        mu = basic_measure()
        f = om.ext_function(mu.space, [INFINITY, 0])
        report = om.integrate_extended(f, mu)
        assert report.value == om.infinity(C2)
        assert report.trail["mode"] == "divergent"

    def test_positive_value_on_infinite_atom(self):
        space = om.power_set_space(2)
        mu = om.Measure(space, C2, {1: om.infinity(C2), 2: fin(0, 1)})
        f = om.ext_function(space, [Fraction(1, 3), 0])
        assert om.integrate_extended(f, mu).value == om.infinity(C2)

    def test_zero_value_on_infinite_atom(self):
        space = om.power_set_space(2)
        mu = om.Measure(space, C2, {1: om.infinity(C2), 2: fin(0, 1)})
        f = om.ext_function(space, [0, 2])
        assert om.integrate_extended(f, mu).value == fin(0, 2)

    def test_oracle_agreement_random(self, rng):
        values_pool = [Fraction(0), Fraction(1, 2), Fraction(2), Fraction(7, 3),
                       INFINITY]
        for _ in range(60):
            ground = rng.randint(1, 5)
            space = om.power_set_space(ground)
            mu = random_measure(rng, space, C2, inf_prob=0.25)
            f = om.ext_function(space,
                                [rng.choice(values_pool) for _ in range(ground)])
            report = om.integrate_extended(f, mu)
            assert report.closed_form == report.ladder


class TestIntegrateSigned:
    def test_two_sided(self):
        mu = basic_measure()
        f = om.signed_function(mu.space, [1, -1])
        assert om.integrate_signed(f, mu) == om.element(C2, [1, -1])

    def test_zero(self):
        mu = basic_measure()
        assert om.integrate_signed(om.signed_function(mu.space, [0, 0]), mu) == \
            om.zero(C2)

    def test_not_integrable_with_infinite_atom(self):
        space = om.power_set_space(2)
        mu = om.Measure(space, C2, {1: om.infinity(C2), 2: fin(0, 1)})
        with pytest.raises(NotIntegrableError):
            om.integrate_signed(om.signed_function(space, [1, 1]), mu)

    def test_integrable_when_zero_on_infinite_atom(self):
        space = om.power_set_space(2)
        mu = om.Measure(space, C2, {1: om.infinity(C2), 2: fin(2, 1)})
        f = om.signed_function(space, [0, -3])
        assert om.integrate_signed(f, mu) == om.element(C2, [-6, -3])

    def test_random_linearity(self, rng):
        for _ in range(30):
            ground = rng.randint(1, 4)
            space = random_algebra(rng, ground)
            mu = random_measure(rng, space, C2, inf_prob=0)
            atoms = space.atoms
            dense1 = [Fraction(0)] * ground
            dense2 = [Fraction(0)] * ground
            for atom in atoms:
                v1, v2 = rng.randint(-3, 3), rng.randint(-3, 3)
                for x in mask_to_points(atom):
                    dense1[x], dense2[x] = Fraction(v1), Fraction(v2)
            f = om.signed_function(space, dense1)
            g = om.signed_function(space, dense2)
            assert om.integrate_signed(f + g, mu) == om.add(
                om.integrate_signed(f, mu), om.integrate_signed(g, mu))


class TestLawsAndAe:
    def test_laws_zero_coefficients(self):
        mu = basic_measure()
        f = om.ext_function(mu.space, [1, 2])
        g = om.ext_function(mu.space, [3, 1])
        assert om.check_integral_laws(mu, f, g, 0, 0).ok

    def test_laws_with_infinity(self):
        space = om.power_set_space(3)
        mu = om.Measure(space, C2, {1: fin(1, 0), 2: fin(0, 1), 4: om.infinity(C2)})
        f = om.ext_function(space, [1, 0, 2])
        g = om.ext_function(space, [0, 1, 0])
        assert om.check_integral_laws(mu, f, g, Fraction(2), Fraction(1, 3)).ok

    def test_laws_random(self, rng):
        for _ in range(30):
            ground = rng.randint(1, 4)
            space = om.power_set_space(ground)
            mu = random_measure(rng, space, C2, inf_prob=0.2)
            pool = [Fraction(0), Fraction(1), Fraction(5, 2), INFINITY]
            f = om.ext_function(space, [rng.choice(pool) for _ in range(ground)])
            g = om.ext_function(space, [rng.choice(pool) for _ in range(ground)])
            r1 = nonneg_rational(rng, hi=3)
            r2 = nonneg_rational(rng, hi=3)
            assert om.check_integral_laws(mu, f, g, r1, r2).ok

    def test_ae_finite_integral_forces_null_infinity_set(self):
        mu = null_atom_measure()
        f = om.ext_function(mu.space, [1, 2, INFINITY])
        report = om.ae_analysis(f, mu)
        assert report.ok
        assert report.details["ae_finite"] == "holds"

    def test_ae_zero_iff_null_support(self):
        mu = null_atom_measure()
        f = om.ext_function(mu.space, [0, 0, 5])
        report = om.ae_analysis(f, mu)
        assert report.ok
        assert report.details["integral"] == {"finite": ["0", "0"]}

    def test_ae_equal_functions_same_integral(self):
        mu = null_atom_measure()
        f1 = om.ext_function(mu.space, [1, 2, 0])
        f2 = om.ext_function(mu.space, [1, 2, 9])
        assert om.integrate_extended(f1, mu).value == \
            om.integrate_extended(f2, mu).value


def geometric_ext_sequence(space, limit_values, horizon=64):
    def gen(n):
        return om.ext_function(
            space, [v * (1 - Fraction(1, 2**n)) for v in limit_values])
    return SequenceSpec(gen, horizon=horizon, metadata=DeclaredLimit(None),
                        monotonicity="increasing")


class TestMct:
    def test_constant_sequence(self):
        mu = basic_measure()
        f = om.ext_function(mu.space, [2, 3])
        seq = from_terms([f])
        assert om.mct(mu, seq, f).ok

    def test_geometric(self):
        mu = basic_measure()
        f = om.ext_function(mu.space, [1, 1])
        seq = geometric_ext_sequence(mu.space, [Fraction(1), Fraction(1)])
        report = om.mct(mu, seq, f)
        assert report.ok
        assert report.details["certification"]["mode"] == "gap-certified"

    def test_divergent(self):
        mu = basic_measure()
        f = om.ext_function(mu.space, [INFINITY, 0])
        seq = SequenceSpec(lambda n: om.ext_function(mu.space, [n, 0]),
                           metadata=DivergesToInfinity(),
                           monotonicity="increasing")
        report = om.mct(mu, seq, f)
        assert report.ok
        assert report.details["certification"]["mode"] == "divergence-certified"

    def test_null_exceptions_allowed(self):
        mu = null_atom_measure()
        f = om.ext_function(mu.space, [1, 1, 0])
        # violates monotonicity only on the null atom {2}
        def gen(n):
            wiggle = Fraction(1) if n % 2 else Fraction(2)
            scalev = 1 - Fraction(1, 2**n)
            return om.ext_function(mu.space, [scalev, scalev, wiggle])
        seq = SequenceSpec(gen, metadata=DeclaredLimit(None),
                           monotonicity="increasing")
        assert om.mct(mu, seq, f).ok

    def test_monotonicity_violation_detected(self):
        mu = basic_measure()
        f = om.ext_function(mu.space, [1, 1])
        def gen(n):
            v = Fraction(1) if n % 2 else Fraction(1, 2)
            return om.ext_function(mu.space, [v, v])
        seq = SequenceSpec(gen, metadata=DeclaredLimit(None),
                           monotonicity="increasing")
        with pytest.raises(CertificationError):
            om.mct(mu, seq, f)


class TestMctDecreasing:
    def test_geometric_to_zero(self):
        mu = basic_measure()
        zero_f = om.ext_function(mu.space, [0, 0])
        def gen(n):
            return om.ext_function(mu.space, [Fraction(1, 2**n)] * 2)
        seq = SequenceSpec(gen, metadata=DeclaredLimit(None),
                           monotonicity="decreasing")
        report = om.mct_decreasing(mu, seq, zero_f)
        assert report.ok

    def test_infinite_first_integral_rejected(self):
        space = om.power_set_space(2)
        mu = om.Measure(space, C2, {1: om.infinity(C2), 2: fin(0, 1)})
        f = om.ext_function(space, [0, 0])
        seq = SequenceSpec(lambda n: om.ext_function(space, [Fraction(1, n)] * 2),
                           metadata=DeclaredLimit(None),
                           monotonicity="decreasing")
        with pytest.raises(HypothesisError):
            om.mct_decreasing(mu, seq, f)

    def test_dipping_below_limit_rejected(self):
        mu = basic_measure()
        limit = om.ext_function(mu.space, [1, 1])
        seq = SequenceSpec(
            lambda n: om.ext_function(mu.space, [1 + Fraction(1, n), Fraction(0)]),
            metadata=DeclaredLimit(None), monotonicity="decreasing")
        with pytest.raises(CertificationError, match="dips below"):
            om.mct_decreasing(mu, seq, limit)


class TestFatouDct:
    def test_fatou_strict_alternating(self):
        space = om.power_set_space(2)
        mu = om.Measure(space, C2, {1: fin(1, 1), 2: fin(1, 1)})
        f1 = om.ext_function(space, [1, 0])
        f2 = om.ext_function(space, [0, 1])
        seq = SequenceSpec(lambda n: f1 if n % 2 else f2, horizon=16)
        report = om.fatou(mu, seq)
        assert report.ok
        assert report.details["strict"]
        assert report.details["lhs"] == {"finite": ["0", "0"]}
        assert report.details["rhs"] == {"finite": ["1", "1"]}

    def test_fatou_equality_constant(self):
        mu = basic_measure()
        f = om.ext_function(mu.space, [2, 3])
        seq = SequenceSpec(lambda n: f, horizon=8)
        report = om.fatou(mu, seq)
        assert report.ok and not report.details["strict"]

    def test_fatou_rejects_loewner(self):
        l2 = om.loewner_sym(2)
        space = om.power_set_space(1)
        mu = om.Measure(space, l2, {1: om.finite(om.sym_matrix([[1, 0], [0, 1]]))})
        f = om.ext_function(space, [1])
        seq = SequenceSpec(lambda n: f, horizon=8)
        with pytest.raises(HypothesisError, match="sigma-Dedekind"):
            om.fatou(mu, seq)

    def test_dct_stabilizing(self):
        mu = basic_measure()
        f = om.signed_function(mu.space, [1, -1])
        g = om.ext_function(mu.space, [2, 2])
        seq = from_terms([om.signed_function(mu.space, [0, 0]), f])
        report = om.dct(mu, seq, f, g)
        assert report.ok
        assert report.details["part3_mode"]["mode"] == "stabilized"

    def test_dct_geometric_parts(self):
        mu = basic_measure()
        f = om.signed_function(mu.space, [1, 1])
        g = om.ext_function(mu.space, [2, 2])
        def gen(n):
            v = 1 + Fraction(-1, 2) ** n
            return om.signed_function(mu.space, [v, v])
        seq = SequenceSpec(gen, metadata=DeclaredLimit(f))
        report = om.dct(mu, seq, f, g)
        assert report.ok
        gaps = report.details["part3_mode"]["gaps"]
        assert gaps[-1]["epsilon"] == "1/65536"

    def test_dct_domination_violation(self):
        mu = basic_measure()
        f = om.signed_function(mu.space, [0, 0])
        g = om.ext_function(mu.space, [1, 1])
        seq = from_terms([om.signed_function(mu.space, [2, 0]), f])
        with pytest.raises(HypothesisError, match="domination"):
            om.dct(mu, seq, f, g)

    def test_dct_unbounded_dominator(self):
        space = om.power_set_space(2)
        mu = om.Measure(space, C2, {1: om.infinity(C2), 2: fin(0, 1)})
        f = om.signed_function(space, [0, 0])
        g = om.ext_function(space, [1, 1])
        seq = from_terms([f])
        with pytest.raises(HypothesisError, match="finite integral"):
            om.dct(mu, seq, f, g)

    def test_dct_rejects_loewner(self):
        l2 = om.loewner_sym(2)
        space = om.power_set_space(1)
        mu = om.Measure(space, l2, {1: om.finite(om.sym_matrix([[1, 0], [0, 1]]))})
        f = om.signed_function(space, [1])
        g = om.ext_function(space, [2])
        seq = from_terms([f])
        with pytest.raises(HypothesisError, match="sigma-Dedekind"):
            om.dct(mu, seq, f, g)

    def test_dct_sandwich_matches_liminf_limsup(self):
        # on a stabilizing sequence the part-4 sandwich value agrees with the
        # exact liminf/limsup of the integral sequence
        mu = basic_measure()
        f = om.signed_function(mu.space, [1, -1])
        g = om.ext_function(mu.space, [2, 2])
        terms = [om.signed_function(mu.space, [0, 0]), f]
        seq = from_terms(terms)
        report = om.dct(mu, seq, f, g)
        assert report.ok
        ints = SequenceSpec(
            lambda n: om.integrate_signed(terms[min(n, len(terms)) - 1], mu),
            horizon=16)
        lo, hi = om.ext_liminf_limsup(ints)
        assert lo == hi == om.integrate_signed(f, mu)


class TestTriangle:
    def test_nonnegative_equality(self):
        mu = basic_measure()
        f = om.signed_function(mu.space, [2, 3])
        report = om.triangle_inequality(mu, f)
        assert report.ok
        assert report.details["abs_of_integral"] == ["2", "3"]

    def test_cancellation(self):
        space = om.power_set_space(2)
        mu = om.Measure(space, C2, {1: fin(1, 1), 2: fin(1, 1)})
        f = om.signed_function(space, [1, -1])
        report = om.triangle_inequality(mu, f)
        assert report.ok
        assert report.details["abs_of_integral"] == ["0", "0"]
        assert report.details["integral_of_abs"] == {"finite": ["2", "2"]}

    def test_sign_symmetry(self):
        mu = basic_measure()
        f = om.signed_function(mu.space, [1, -2])
        g = om.signed_function(mu.space, [-1, 2])
        assert om.integrate_extended(f.abs(), mu).value == \
            om.integrate_extended(g.abs(), mu).value

    def test_rejects_loewner(self):
        l2 = om.loewner_sym(2)
        space = om.power_set_space(1)
        mu = om.Measure(space, l2, {1: om.finite(om.sym_matrix([[1, 0], [0, 1]]))})
        with pytest.raises(HypothesisError, match="sigma-Dedekind"):
            om.triangle_inequality(mu, om.signed_function(space, [1]))


class TestPushForward:
    def test_identity_map(self):
        mu = basic_measure()
        f = om.ext_function(mu.space, [1, 2])
        report = om.push_forward(mu, [["1", "0"], ["0", "1"]], C2, f)
        assert report.ok

    def test_sum_map(self):
        mu = basic_measure()
        f = om.ext_function(mu.space, [1, 1])
        report = om.push_forward(mu, [[1, 1]], om.reals(), f)
        assert report.ok
        assert report.details["image_integral"] == ["2"]

    def test_zero_map(self):
        mu = basic_measure()
        f = om.ext_function(mu.space, [1, 1])
        report = om.push_forward(mu, [[0, 0]], om.reals(), f)
        assert report.ok
        assert report.details["image_integral"] == ["0"]

    def test_signed_function(self):
        mu = basic_measure()
        f = om.signed_function(mu.space, [1, -1])
        assert om.push_forward(mu, [[1, 1]], om.reals(), f).ok

    def test_requires_finite_measure(self):
        space = om.power_set_space(1)
        mu = om.Measure(space, C2, {1: om.infinity(C2)})
        with pytest.raises(HypothesisError, match="finite"):
            om.push_forward(mu, [[1, 1]], om.reals())

    def test_rejects_negative_entries(self):
        mu = basic_measure()
        with pytest.raises(ValidationError):
            om.push_forward(mu, [[1, -1]], om.reals())

    def test_additivity_over_maps(self, rng):
        # pushing through T1 + T2 equals the atomwise sum of the two images
        for _ in range(20):
            ground = rng.randint(1, 4)
            space = random_algebra(rng, ground)
            mu = random_measure(rng, space, C2, inf_prob=0)
            t1 = [[nonneg_rational(rng, hi=2) for _ in range(2)]]
            t2 = [[nonneg_rational(rng, hi=2) for _ in range(2)]]
            tsum = [[a + b for a, b in zip(t1[0], t2[0])]]
            dense = [Fraction(0)] * ground
            for atom in space.atoms:
                v = nonneg_rational(rng, 3)
                for x in mask_to_points(atom):
                    dense[x] = v
            f = om.ext_function(space, dense)
            rs = om.push_forward(mu, tsum, om.reals(), f)
            r1 = om.push_forward(mu, t1, om.reals(), f)
            r2 = om.push_forward(mu, t2, om.reals(), f)
            assert rs.ok and r1.ok and r2.ok
            total = Fraction(rs.details["image_integral"][0])
            assert total == Fraction(r1.details["image_integral"][0]) + \
                Fraction(r2.details["image_integral"][0])


class TestL1Quotient:
    def test_null_bump_same_class(self):
        mu = null_atom_measure()
        f = om.signed_function(mu.space, [1, -1, 0])
        g = om.signed_function(mu.space, [1, -1, 4])
        report = om.l1_quotient(mu, [f, g])
        assert report.ok
        assert report.details["classes"] == [[0, 1]]

    def test_strict_positivity(self):
        mu = null_atom_measure()
        h = om.signed_function(mu.space, [0, 0, 2])
        report = om.l1_quotient(mu, [h])
        assert report.ok

    def test_zero_class_integral(self):
        mu = null_atom_measure()
        z = om.signed_function(mu.space, [0, 0, 0])
        assert om.integrate_signed(z, mu) == om.zero(C2)

    def test_rejects_non_integrable(self):
        space = om.power_set_space(2)
        mu = om.Measure(space, C2, {1: om.infinity(C2), 2: fin(0, 1)})
        with pytest.raises(NotIntegrableError):
            om.l1_quotient(mu, [om.signed_function(space, [1, 0])])

    def test_lattice_ops_descend(self, rng):
        mu = null_atom_measure()
        for _ in range(20):
            core = [rng.randint(-3, 3), rng.randint(-3, 3)]
            f1 = om.signed_function(mu.space, core + [rng.randint(-3, 3)])
            f2 = om.signed_function(mu.space, core + [rng.randint(-3, 3)])
            g = om.signed_function(mu.space, [rng.randint(-3, 3) for _ in range(3)])
            assert om.l1_quotient(mu, [f1, f2, g]).ok
