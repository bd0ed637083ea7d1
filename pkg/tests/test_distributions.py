import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_genlaguerre, eval_jacobi

from bosecount.distributions import (
    OccupancyDistribution,
    RareEventSpec,
    TransferSpec,
    _rare_limit_entry_pathway_sum,
    bose_amplitude_probability,
    bose_exact,
    bose_jacobi_probability,
    bose_rare_limit,
    classical_exact,
    classical_rare_limit,
    jacobi_polynomial,
    recapture_probability,
    transfer_probabilities,
)

P_GRID = (0.1, 0.3, 0.5, 0.7, 0.9)


def exact_general_binomial(top: int, k: int) -> Fraction:
    if k < 0:
        return Fraction(0)
    num = Fraction(1)
    for j in range(k):
        num *= Fraction(top - j)
    return num / math.factorial(k)


def jacobi_exact(degree: int, a: int, b: int, x: Fraction) -> Fraction:
    """Terminating hypergeometric sum in exact rationals."""
    total = Fraction(0)
    for s in range(degree + 1):
        total += (exact_general_binomial(degree + a, degree - s)
                  * exact_general_binomial(degree + b, s)
                  * ((x - 1) / 2) ** s * ((x + 1) / 2) ** (degree - s))
    return total


def laguerre_exact(degree: int, a: int, x: Fraction) -> Fraction:
    return sum(Fraction((-1) ** k * math.comb(degree + a, degree - k),
                        math.factorial(k)) * x ** k
               for k in range(degree + 1))


class TestSpecs:
    def test_transfer_spec_validation(self):
        with pytest.raises(ValueError):
            TransferSpec(0, 0, 0.5)
        with pytest.raises(ValueError):
            TransferSpec(5, 6, 0.5)
        with pytest.raises(ValueError):
            TransferSpec(5, -1, 0.5)
        with pytest.raises(ValueError):
            TransferSpec(5, 2, 1.5)

    def test_rare_event_spec_validation(self):
        with pytest.raises(ValueError):
            RareEventSpec(-0.1, 0)
        with pytest.raises(ValueError):
            RareEventSpec(1.0, -1)

    def test_distribution_support_and_lookup(self):
        d = OccupancyDistribution("oracle", 2, np.array([0.25, 0.75]))
        assert list(d.support) == [2, 3]
        assert d.probability(3) == 0.75
        assert d.probability(4) == 0.0
        assert d.total() == 1.0

    def test_distribution_rejects_bad_probs(self):
        with pytest.raises(ValueError):
            OccupancyDistribution("oracle", 0, np.array([1.5]))
        with pytest.raises(ValueError):
            OccupancyDistribution("nonsense", 0, np.array([1.0]))


class TestClassicalExact:
    def test_two_coins_balanced(self):
        # p**2 + (1-p)**2 at p = 1/2: enumeration over the 4 outcomes
        d = classical_exact(TransferSpec(2, 1, 0.5))
        assert d.probs[1] == pytest.approx(0.5, abs=1e-15)
        assert d.probs[0] == pytest.approx(0.25, abs=1e-15)

    @given(st.floats(min_value=0.01, max_value=0.99))
    def test_empty_start_is_binomial(self, p):
        d = classical_exact(TransferSpec(3, 0, p))
        for mp in range(4):
            expected = math.comb(3, mp) * p ** mp * (1 - p) ** (3 - mp)
            assert d.probs[mp] == pytest.approx(expected, rel=1e-13)

    def test_rare_regime_single_recapture_entry(self):
        # leading pathway: one of the three marked particles leaves,
        # nothing enters; cross-checked against the exact sum at 30
        # significant digits
        n, m, p = 100000, 3, 3e-5
        d = classical_exact(TransferSpec(n, m, p))
        with mpmath.workdps(30):
            exact = mpmath.fsum(
                mpmath.binomial(3, mu) * mpmath.binomial(n - 3, mu - 1)
                * mpmath.mpf(p) ** (2 * mu - 1) * (1 - mpmath.mpf(p)) ** (n + 1 - 2 * mu)
                for mu in range(1, 4))
        assert d.probs[2] == pytest.approx(float(exact), rel=1e-10)
        assert d.probs[2] == pytest.approx(4.48e-6, rel=2e-3)

    def test_normalization_grid(self):
        for n in (1, 2, 7, 40, 100):
            for m in range(0, n + 1, max(1, n // 4)):
                for p in P_GRID:
                    d = classical_exact(TransferSpec(n, m, p))
                    assert abs(d.total() - 1.0) < 1e-10

    def test_deterministic_boundaries(self):
        d0 = classical_exact(TransferSpec(6, 2, 0.0))
        assert d0.probs[2] == 1.0 and d0.total() == 1.0
        d1 = classical_exact(TransferSpec(6, 2, 1.0))
        assert d1.probs[4] == 1.0 and d1.total() == 1.0

    def test_mode_relabel_symmetry(self):
        for n, p in [(9, 0.3), (40, 0.7), (100, 0.5)]:
            for m in range(0, n + 1, 3):
                a = classical_exact(TransferSpec(n, m, p)).probs
                b = classical_exact(TransferSpec(n, n - m, p)).probs
                assert np.abs(a - b[::-1]).max() < 1e-12

    def test_reversal_asymmetry_is_real(self):
        # The classical transfer matrix is not symmetric: with one empty
        # mode there are two ways in but only one way back.
        p = 0.3
        d_up = classical_exact(TransferSpec(2, 0, p)).probs[1]
        d_down = classical_exact(TransferSpec(2, 1, p)).probs[0]
        assert d_up == pytest.approx(2 * p * (1 - p), rel=1e-13)
        assert d_down == pytest.approx(p * (1 - p), rel=1e-13)
        assert abs(d_up - d_down) > 0.1


class TestClassicalRareLimit:
    def test_no_events(self):
        d = classical_rare_limit(RareEventSpec(0.0, 2))
        assert d.start == 2
        assert d.probs[0] == 1.0

    def test_poisson_values(self):
        d = classical_rare_limit(RareEventSpec(3.0, 0))
        assert d.probs[0] == pytest.approx(math.exp(-3), rel=1e-14)
        assert d.probs[2] == pytest.approx(9 * math.exp(-3) / 2, rel=1e-14)

    def test_truncation_and_mass(self):
        d = classical_rare_limit(RareEventSpec(3.0, 5))
        assert d.start == 5
        assert d.meta["tail_bound"] < 1e-14
        assert abs(d.total() - 1.0) < 1e-13

    def test_support_shifts_with_m_but_values_do_not(self):
        a = classical_rare_limit(RareEventSpec(2.5, 0))
        b = classical_rare_limit(RareEventSpec(2.5, 7))
        assert b.start == 7
        assert np.array_equal(a.probs, b.probs)


class TestBoseAmplitude:
    @pytest.mark.parametrize("p", P_GRID)
    def test_two_boson_same_count(self, p):
        got = bose_amplitude_probability(TransferSpec(2, 1, p), 1)
        assert got == pytest.approx((1 - 2 * p) ** 2, abs=1e-13)

    def test_two_boson_interference_null(self):
        assert bose_amplitude_probability(TransferSpec(2, 1, 0.5), 1) == 0.0

    @pytest.mark.parametrize("p", P_GRID)
    def test_single_particle(self, p):
        assert bose_amplitude_probability(TransferSpec(1, 1, p), 1) == pytest.approx(1 - p, rel=1e-13)

    @pytest.mark.parametrize("p", P_GRID)
    def test_two_boson_down_transfer(self, p):
        got = bose_amplitude_probability(TransferSpec(2, 1, p), 0)
        assert got == pytest.approx(2 * p * (1 - p), rel=1e-13)

    def test_point_masses(self):
        assert bose_amplitude_probability(TransferSpec(4, 1, 0.0), 1) == 1.0
        assert bose_amplitude_probability(TransferSpec(4, 1, 1.0), 3) == 1.0


class TestBoseExact:
    def test_two_boson_balanced_distribution(self):
        d = bose_exact(TransferSpec(2, 1, 0.5))
        assert d.probs[0] == pytest.approx(0.5, abs=1e-14)
        assert d.probs[1] == 0.0
        assert d.probs[2] == pytest.approx(0.5, abs=1e-14)

    @pytest.mark.parametrize("p", P_GRID)
    def test_single_particle_unitarity(self, p):
        d = bose_exact(TransferSpec(1, 1, p))
        assert d.probs[0] == pytest.approx(p, rel=1e-13)
        assert d.probs[1] == pytest.approx(1 - p, rel=1e-13)

    def test_empty_mode_coincides_with_classical_bitwise(self):
        for n, p in [(1, 0.3), (7, 0.5), (300, 0.9), (10000, 0.1)]:
            b = bose_exact(TransferSpec(n, 0, p))
            c = classical_exact(TransferSpec(n, 0, p))
            assert np.array_equal(b.probs, c.probs)

    def test_full_mode_coincides_with_classical_bitwise(self):
        for n, p in [(5, 0.4), (120, 0.8)]:
            b = bose_exact(TransferSpec(n, n, p))
            c = classical_exact(TransferSpec(n, n, p))
            assert np.array_equal(b.probs, c.probs)

    def test_reversal_symmetry_exact(self):
        for n, p in [(17, 0.3), (64, 0.7), (1000, 0.5)]:
            table = [bose_exact(TransferSpec(n, m, p)).probs for m in range(0, 9)]
            for m in range(9):
                for mp in range(9):
                    assert table[m][mp] == table[mp][m]

    def test_mode_relabel_symmetry_exact(self):
        n = 500
        for p in (0.2, 0.8):
            for m in (0, 1, 5):
                a = bose_exact(TransferSpec(n, m, p)).probs
                b = bose_exact(TransferSpec(n, n - m, p)).probs
                assert np.array_equal(a, b[::-1])

    def test_normalization_grid(self):
        for n in (1, 2, 7, 40, 100):
            for m in range(0, n + 1, max(1, n // 4)):
                for p in P_GRID:
                    d = bose_exact(TransferSpec(n, m, p))
                    assert abs(d.total() - 1.0) < 1e-10

    def test_deterministic_boundaries(self):
        d = bose_exact(TransferSpec(6, 2, 0.0))
        assert d.probs[2] == 1.0
        d = bose_exact(TransferSpec(6, 2, 1.0))
        assert d.probs[4] == 1.0

    def test_matches_scalar_pathway_sum(self):
        # kernel vs the compensated SignedLog sum, everywhere the sum is
        # well conditioned (all N <= 30); tolerance is relative with a
        # 4e-12 absolute floor for interference-cancelled entries
        for n in (1, 2, 3, 5, 8, 13, 21, 30):
            for m in range(n + 1):
                for p in P_GRID:
                    spec = TransferSpec(n, m, p)
                    probs = bose_exact(spec).probs
                    for mp in range(n + 1):
                        ref = probs[mp]
                        amp = bose_amplitude_probability(spec, mp)
                        assert abs(amp - ref) <= 1e-10 * ref + 4e-12

    def test_matches_jacobi_closed_form_channel(self):
        for n in (1, 2, 3, 5, 8, 13, 21, 30):
            for m in range(n + 1):
                for p in P_GRID:
                    spec = TransferSpec(n, m, p)
                    probs = bose_exact(spec).probs
                    for mp in range(n + 1):
                        ref = probs[mp]
                        jac = bose_jacobi_probability(spec, mp)
                        assert abs(jac - ref) <= 1e-10 * ref + 4e-12

    def test_range_query_matches_full(self):
        spec = TransferSpec(200, 7, 0.4)
        full = bose_exact(spec).probs
        part = transfer_probabilities(spec, 5, 30, bose=True)
        assert np.array_equal(full[5:31], part)

    @given(st.integers(min_value=1, max_value=40),
           st.data(),
           st.floats(min_value=0.01, max_value=0.99))
    @settings(max_examples=150, deadline=None)
    def test_random_specs_normalized_and_symmetric(self, n, data, p):
        m = data.draw(st.integers(min_value=0, max_value=n))
        mp = data.draw(st.integers(min_value=0, max_value=n))
        d = bose_exact(TransferSpec(n, m, p))
        assert abs(d.total() - 1.0) < 1e-10
        assert float(d.probs.min()) >= 0.0
        rev = bose_exact(TransferSpec(n, mp, p))
        assert d.probs[mp] == rev.probs[m]


class TestJacobiPolynomial:
    def test_degree_zero(self):
        got = jacobi_polynomial(0, 7, -3, 0.4)
        assert got.sign == 1 and got.log_magnitude == 0.0

    @given(st.floats(min_value=-1.0, max_value=1.0))
    def test_degree_one_legendre(self, x):
        got = jacobi_polynomial(1, 0, 0, x).to_linear()
        assert got == pytest.approx(x, abs=1e-15)

    def test_degree_two_example(self):
        # exact rational value of the degree-2, (3,1) polynomial at 1/5
        # is 12/25 = 0.48
        exact = jacobi_exact(2, 3, 1, Fraction(1, 5))
        assert exact == Fraction(12, 25)
        got = jacobi_polynomial(2, 3, 1, 0.2).to_linear()
        assert got == pytest.approx(0.48, rel=1e-13)
        assert got == pytest.approx(float(exact), rel=1e-13)

    @given(st.integers(min_value=0, max_value=25),
           st.integers(min_value=0, max_value=30),
           st.integers(min_value=0, max_value=30),
           st.floats(min_value=-1.0, max_value=1.0))
    @settings(max_examples=200)
    def test_matches_scipy_for_nonnegative_params(self, n, a, b, x):
        ref = eval_jacobi(n, a, b, x)
        got = jacobi_polynomial(n, a, b, x).to_linear()
        assert got == pytest.approx(ref, rel=1e-10, abs=1e-10)

    @given(st.integers(min_value=0, max_value=12),
           st.integers(min_value=-12, max_value=12),
           st.integers(min_value=-12, max_value=12),
           st.fractions(min_value=-1, max_value=1))
    @settings(max_examples=200)
    def test_matches_exact_rational_any_integer_params(self, n, a, b, x):
        ref = jacobi_exact(n, a, b, x)
        got = jacobi_polynomial(n, a, b, float(x)).to_linear()
        if ref == 0:
            assert abs(got) < 1e-12
        else:
            assert got == pytest.approx(float(ref), rel=1e-9, abs=1e-12)

    def test_large_parameters_stay_finite(self):
        got = jacobi_polynomial(12, 99976, 12, 2 * 3e-5 - 1.0)
        assert got.sign != 0
        assert math.isfinite(got.log_magnitude)


class TestBoseRareLimit:
    def test_empty_start_reduces_to_poisson(self):
        d = bose_rare_limit(RareEventSpec(3.0, 0), 20)
        poisson = classical_rare_limit(RareEventSpec(3.0, 0))
        take = min(len(d.probs), len(poisson.probs))
        assert np.abs(d.probs[:take] - poisson.probs[:take]).max() < 1e-14

    def test_single_marked_same_count(self):
        # two interfering pathways: (1 - w)**2 prefactor shape
        got = bose_rare_limit(RareEventSpec(3.0, 1), 3).probs[1]
        assert got == pytest.approx(4 * math.exp(-3), rel=1e-13)
        assert got == pytest.approx(0.1991483, rel=1e-6)

    def test_two_marked_same_count(self):
        got = bose_rare_limit(RareEventSpec(3.0, 2), 3).probs[2]
        assert got == pytest.approx(0.25 * math.exp(-3), rel=1e-13)
        assert got == pytest.approx(0.0124468, rel=1e-5)

    def test_no_events_point_mass(self):
        d = bose_rare_limit(RareEventSpec(0.0, 2), 5)
        assert d.probs[2] == 1.0 and d.total() == 1.0

    def test_auto_truncation_is_normalized(self):
        for w in (0.5, 3.0, 5.0):
            for m in (0, 1, 4, 9):
                d = bose_rare_limit(RareEventSpec(w, m))
                assert abs(d.total() - 1.0) < 1e-10
                assert d.meta["tail_bound"] < 1e-10

    def test_structured_zero_for_single_marked(self):
        # with one marked particle the final count m + 2 is forbidden at
        # w = q + 1: for w = 3 the entry m' = 3 vanishes
        d = bose_rare_limit(RareEventSpec(3.0, 1), 6)
        assert d.probs[3] < 1e-25
        assert d.probs[4] > 0.05

    def test_matches_exact_rational_oracle(self):
        for w in (1, 3, 5):
            for m in range(13):
                d = bose_rare_limit(RareEventSpec(float(w), m), m + 14)
                for q in range(14):
                    mp = m + q
                    lag = laguerre_exact(m, q, Fraction(w))
                    ref = float(Fraction(w) ** q
                                * Fraction(math.factorial(m), math.factorial(mp))
                                * lag * lag) * math.exp(-w)
                    assert abs(d.probs[mp] - ref) <= 1e-12 * ref + 1e-16

    def test_laguerre_identity_against_scipy(self):
        # independent evaluation of the q >= 0 closed form
        for w in (1.0, 3.0):
            for m in range(13):
                d = bose_rare_limit(RareEventSpec(w, m), m + 12)
                for q in range(12):
                    mp = m + q
                    lag = eval_genlaguerre(m, q, w)
                    ref = (w ** q * math.exp(-w)
                           * math.exp(math.lgamma(m + 1) - math.lgamma(mp + 1))
                           * lag * lag)
                    assert abs(d.probs[mp] - ref) <= 1e-12 * max(ref, 1e-3)

    def test_pathway_sum_cross_check(self):
        # the literal alternating sum agrees wherever it is conditioned
        for w in (0.5, 1.0, 3.0):
            for m in range(10):
                d = bose_rare_limit(RareEventSpec(w, m), 12)
                for mp in range(13):
                    ref = d.probs[mp]
                    alt = _rare_limit_entry_pathway_sum(w, m, mp)
                    assert abs(alt - ref) <= 1e-9 * ref + 1e-10

    def test_matches_finite_n_at_large_n(self):
        n = 10 ** 5
        for m in (0, 1, 3, 7):
            exact = bose_exact(TransferSpec(n, m, 3.0 / n)).probs[:11]
            lim = bose_rare_limit(RareEventSpec(3.0, m), 10).probs
            assert np.abs(exact - lim).max() < 1e-3


class TestRecapture:
    def test_nothing_to_transfer(self):
        assert recapture_probability(RareEventSpec(0.0, 0)) == 1.0

    def test_headline_value(self):
        got = recapture_probability(RareEventSpec(3.0, 3))
        assert got == pytest.approx(27 * math.exp(-3) / 6, rel=1e-15)
        assert got == pytest.approx(0.2240418, rel=1e-6)
        # just under a quarter of all cases
        assert 0.22 < got < 0.25

    def test_single_marked(self):
        assert recapture_probability(RareEventSpec(3.0, 1)) == pytest.approx(
            3 * math.exp(-3), rel=1e-14)

    def test_bit_for_bit_with_limit_distribution(self):
        for w in (0.0, 0.4, 3.0, 7.5):
            for m in (0, 1, 3, 10):
                lhs = recapture_probability(RareEventSpec(w, m))
                rhs = bose_rare_limit(RareEventSpec(w, m), max(m, 1)).probs[0]
                assert lhs == rhs

    def test_poisson_shape_in_m(self):
        # recapture as a function of m is itself Poisson with mean w
        w = 3.0
        values = [recapture_probability(RareEventSpec(w, m)) for m in range(20)]
        assert sum(values) == pytest.approx(1.0, abs=1e-10)
        # integer mean puts the two modes at w - 1 and w
        assert values[2] == values[3]
        assert values.index(max(values)) in (2, 3)
        for m in range(20):
            expected = w ** m * math.exp(-w) / math.factorial(m)
            assert values[m] == pytest.approx(expected, rel=1e-13)


class TestDocumentedClosedFormDefect:
    """The (1-p) exponent in the Jacobi closed form must be n - m' - m.

    The sign-flipped variant n - m' + m breaks unitarity already for a
    single particle; this pins the corrected exponent so a 'fix' back to
    the broken form cannot pass silently.
    """

    @pytest.mark.parametrize("p", P_GRID)
    def test_broken_exponent_fails_unitarity(self, p):
        n = m = m_prime = 1
        jac = jacobi_polynomial(m, n - m_prime - m, m_prime - m, 2 * p - 1)
        broken = math.exp(
            math.log(math.factorial(m)) + math.log(math.factorial(n - m))
            - math.log(math.factorial(m_prime)) - math.log(math.factorial(n - m_prime))
            + (m_prime - m) * math.log(p)
            + (n - m_prime + m) * math.log1p(-p)) * jac.to_linear() ** 2
        assert broken == pytest.approx((1 - p) ** 3, rel=1e-12)
        assert abs(broken - (1 - p)) > 0.05

    @pytest.mark.parametrize("p", P_GRID)
    def test_corrected_exponent_passes_unitarity(self, p):
        spec = TransferSpec(1, 1, p)
        assert bose_jacobi_probability(spec, 1) == pytest.approx(1 - p, abs=1e-12)
        assert bose_exact(spec).probs[1] == pytest.approx(1 - p, abs=1e-12)
