import random
from fractions import Fraction as F
from math import factorial

import pytest

from gkz1 import (
    LogSeries,
    exponent_set_prime,
    gauss_oracle,
    log_solution,
    phi_series,
    scalar_relation_check,
    solution_bundle,
)
from gkz1.errors import (
    ExcludedCase,
    HypothesisViolated,
    MismatchDetected,
    NotMinimalSupport,
    RNotLessThanMultiplicity,
    SigmaIntegral,
)

from conftest import random_config, random_nonresonant_beta

GOLDEN = {0: F(1), 1: F(56, 3), 2: F(70), 3: F(56), 4: F(14, 3)}


def rising(a, m):
    out = F(1)
    for i in range(m):
        out *= a + i
    return out


class TestPhiSeries:
    def test_golden_polynomial(self, triangle):
        phi = phi_series(triangle, (F(2), F(0), F(8)), (0, 0, 0), (), (0, 10))
        assert phi.log_part(0) == GOLDEN
        assert phi.base_exponent == (2, 0, 8)

    def test_corner_log_companion(self, corner):
        phi = phi_series(corner, (F(0),) * 3, (0, 0, 0), (2,), (0, 6))
        expected = {z: F((-1) ** (z - 1), z * factorial(z)) for z in range(1, 7)}
        assert phi.log_part(0) == expected

    def test_alternate_exponent_polynomial(self, corner):
        phi = phi_series(corner, (F(0), F(-2), F(1)), (0, 0, 0), (), (0, 8))
        assert phi.log_part(0) == {0: F(1), 1: F(-1)}
        assert phi.base_exponent == (0, -2, 1)

    def test_vanishing_series(self, corner):
        phi = phi_series(corner, (F(0),) * 3, (0, 0, 0), (0,), (0, 6))
        assert phi.is_zero

    def test_minimal_support_required(self, corner):
        with pytest.raises(NotMinimalSupport):
            phi_series(corner, (F(2), F(0), F(-1)), (0, 0, 0), (1,), (0, 6))

    def test_excluded_case_propagates(self, corner):
        # negative integer on the positive side inside an index set that
        # keeps the shift alive pushes a factor into the excluded regime
        with pytest.raises(ExcludedCase):
            phi_series(corner, (F(-1), F(0), F(1, 2)), (0, 0, 0), (0,), (0, 6))


class TestLogSolution:
    def test_degree_zero_equals_phi(self, triangle):
        v = (F(2), F(0), F(8))
        assert log_solution(triangle, v, (0, 0, 0), 0, (0, 10)).terms == phi_series(
            triangle, v, (0, 0, 0), (), (0, 10)
        ).terms

    def test_corner_log_solution(self, corner):
        solution = log_solution(corner, (F(0),) * 3, (0, 0, 0), 1, (0, 12))
        expected = {(0, 1): F(1)}
        for z in range(1, 13):
            expected[(z, 0)] = F((-1) ** z, z * factorial(z))
        assert solution.terms == expected

    def test_top_log_coefficient_is_phi(self, triangle, corner, gauss):
        cases = [
            (triangle, (F(2), F(0), F(8)), 1),
            (corner, (F(0), F(0), F(0)), 1),
            (gauss, (F(0), F(1), F(-1, 2), F(-1, 3)), 1),
        ]
        for config, v, r in cases:
            zero = (0,) * config.n
            solution = log_solution(config, v, zero, r, (-3, 8))
            phi = phi_series(config, v, zero, (), (-3, 8))
            assert solution.log_part(r) == phi.log_part(0)

    def test_degree_capped_by_multiplicity(self, triangle):
        with pytest.raises(RNotLessThanMultiplicity):
            log_solution(triangle, (F(2), F(0), F(8)), (0, 0, 0), 2, (0, 5))

    def test_hypothesis_failure_reported(self, corner):
        with pytest.raises(HypothesisViolated) as info:
            log_solution(corner, (F(2), F(0), F(-1)), (0, 0, 0), 1, (0, 5))
        assert frozenset({0, 2}) in info.value.failing_sets

    def test_gauss_integer_sigma_log_solution(self, gauss):
        # the sigma = 2 branch: log part, finite negative tail, harmonic part
        t1, t2, sg = F(1, 2), F(1, 3), F(2)
        v = (F(0), sg - 1, -t1, -t2)
        solution = log_solution(gauss, v, (0,) * 4, 1, (-4, 8))
        for z in range(0, 9):
            assert solution.coefficient(z, 1) == rising(t1, z) * rising(t2, z) / (
                rising(sg, z) * factorial(z)
            )
        tail = -factorial(0) * rising(1 - sg, 1) / (rising(1 - t1, 1) * rising(1 - t2, 1))
        assert solution.coefficient(-1, 0) == tail
        assert solution.coefficient(-2, 0) == 0
        for z in range(1, 9):
            harmonic = sum(
                1 / (t1 + s) + 1 / (t2 + s) - 1 / (sg + s) - F(1, 1 + s)
                for s in range(z)
            )
            base = rising(t1, z) * rising(t2, z) / (rising(sg, z) * factorial(z))
            assert solution.coefficient(z, 0) == base * harmonic


class TestSolutionBundle:
    def test_triangle_two_solutions(self, triangle):
        report = solution_bundle(triangle, [10, 8], window=(0, 10))
        assert report.total_solutions == 2 == report.expected_total
        assert report.complete
        bundle = report.bundles[0]
        assert [s.max_log_degree for s in bundle.solutions] == [0, 1]
        assert not bundle.phi_empty

    def test_vanishing_leading_series_flagged(self, corner):
        report = solution_bundle(corner, [0, 0], u=(-1, -1), window=(0, 8))
        assert report.bundles[0].phi_empty
        assert not report.complete

    def test_nonresonant_always_complete(self):
        rng = random.Random(31)
        for _ in range(15):
            config = random_config(rng)
            beta = random_nonresonant_beta(rng, config)
            report = solution_bundle(config, beta, window=(-2, 4))
            assert report.complete
            assert report.total_solutions == config.positive_sum

    def test_capped_degree_with_diagnostics(self, corner):
        report = solution_bundle(corner, [1, -1], window=(0, 8))
        bundle = report.bundles[0]
        assert len(bundle.solutions) == 1
        assert bundle.hypothesis_failures
        assert not report.complete

    def test_explicit_lift_matches_u(self, corner):
        by_u = solution_bundle(corner, [0, 0], u=(-1, -1), window=(0, 6))
        by_lift = solution_bundle(corner, [0, 0], u_lift=(-1, -1, 0), window=(0, 6))
        assert by_u.bundles[0].solutions == by_lift.bundles[0].solutions
        with pytest.raises(ValueError):
            solution_bundle(corner, [0, 0], u=(1, 1), u_lift=(-1, -1, 0))

    def test_certificates_cover_hypothesis_sets(self, triangle):
        report = solution_bundle(triangle, [10, 8], window=(0, 6))
        bundle = report.bundles[0]
        index_sets = {v.indices for v in bundle.certificates}
        n = triangle.n
        assert frozenset(range(n)) in index_sets
        assert all(len(s) >= n - (bundle.exponent.multiplicity - 1) for s in index_sets)


class TestGaussOracle:
    def test_leading_terms(self):
        first, second = gauss_oracle(F(1, 2), F(1, 3), F(1, 5), 4)
        assert first.coefficient(0) == 1
        assert second.coefficient(0) == 1
        assert first.coefficient(1) == F(5, 6)

    def test_second_base_exponent_shift(self):
        t1, t2, sg = F(1, 2), F(1, 3), F(1, 5)
        first, second = gauss_oracle(t1, t2, sg, 4)
        relation = (1, 1, -1, -1)
        shift = tuple(
            b + (1 - sg) * e for b, e in zip(first.base_exponent, relation)
        )
        assert second.base_exponent == shift

    def test_integral_sigma_rejected(self):
        with pytest.raises(SigmaIntegral):
            gauss_oracle(F(1, 2), F(1, 3), 2, 4)

    def test_matches_series_machinery(self, gauss):
        t1, t2, sg = F(1, 2), F(1, 3), F(1, 5)
        beta = (-t1, -t2, sg - 1)
        oracles = {s.base_exponent: s for s in gauss_oracle(t1, t2, sg, 10)}
        for v in exponent_set_prime(gauss, beta).exponents:
            phi = phi_series(gauss, v, (0,) * 4, (), (0, 10))
            assert phi.terms == oracles[v.vector].terms


class TestScalarRelation:
    def test_zero_shift(self, corner):
        beta = (F(1, 2), F(1, 3))
        v = exponent_set_prime(corner, beta).exponents[0]
        assert scalar_relation_check(corner, beta, (0, 0), v, v, (0, 8)) == 1

    def test_gauss_column_shift(self, gauss):
        from gkz1 import match_exponent

        beta = (F(-1, 2), F(-1, 3), F(1, 5) - 1)
        u = gauss.columns[2]
        v = exponent_set_prime(gauss, beta).exponents[0]
        matched, _ = match_exponent(gauss, beta, u, v)
        scalar = scalar_relation_check(gauss, beta, u, v, matched, (0, 8))
        assert scalar != 0

    def test_relation_survives_relation_shift(self, corner):
        # shifting by the relation itself stays consistent: the single-step
        # factors compose coordinatewise when no entry crosses a negative
        # integer, so the check passes even though v' is not normalized
        beta = (F(1, 2), F(1, 3))
        v = exponent_set_prime(corner, beta).exponents[0]
        shifted = tuple(x + e for x, e in zip(v.vector, corner.relation))
        u = corner.column_combination((0,) * 3)
        scalar = scalar_relation_check(corner, beta, u, v, shifted, (0, 8))
        assert scalar == F(3, 5)

    def test_wrong_match_detected(self, corner):
        # dropping the integral coordinate below zero kills the scalar while
        # the shifted series itself does not vanish
        beta = (F(1, 2), F(1, 3))
        v = exponent_set_prime(corner, beta).exponents[0]
        assert v.vector[0] == 0
        bad = (v.vector[0] - 1, v.vector[1], v.vector[2])
        u = tuple(-x for x in corner.columns[0])
        with pytest.raises(MismatchDetected):
            scalar_relation_check(corner, beta, u, v, bad, (0, 8))

    def test_nonintegral_difference_rejected(self, corner):
        beta = (F(1, 2), F(1, 3))
        v = exponent_set_prime(corner, beta).exponents[0]
        off = tuple(x + F(1, 2) for x in v.vector)
        with pytest.raises(ValueError):
            scalar_relation_check(corner, beta, (0, 0), v, off, (0, 4))


class TestSeriesStructure:
    def test_nonresonant_coefficients_all_nonzero(self):
        rng = random.Random(41)
        for _ in range(15):
            config = random_config(rng)
            beta = random_nonresonant_beta(rng, config)
            zero = (0,) * config.n
            for v in exponent_set_prime(config, beta).exponents:
                from gkz1 import support_verdict

                verdict = support_verdict(config, v, range(config.n), zero)
                phi = phi_series(config, v, zero, (), (-4, 6))
                for z in verdict.membership.clip(-4, 6):
                    assert phi.coefficient(z) != 0

    def test_distinct_top_degrees(self, triangle):
        report = solution_bundle(triangle, [10, 8], window=(0, 8))
        bundle = report.bundles[0]
        degrees = [s.max_log_degree for s in bundle.solutions]
        assert degrees == sorted(set(degrees))
        for r, series in enumerate(bundle.solutions):
            assert series.log_part(r)

    def test_json_round_trip(self, triangle):
        solution = log_solution(triangle, (F(2), F(0), F(8)), (0, 0, 0), 1, (-5, 10))
        data = solution.to_json_dict()
        assert LogSeries.from_json_dict(data) == solution
        # rationals survive as exact strings
        assert all(isinstance(t["coeff"], str) for t in data["terms"])

    def test_window_is_restriction(self, triangle):
        wide = phi_series(triangle, (F(2), F(0), F(8)), (0, 0, 0), (), (-10, 20))
        narrow = phi_series(triangle, (F(2), F(0), F(8)), (0, 0, 0), (), (1, 3))
        for z in range(1, 4):
            assert narrow.coefficient(z) == wide.coefficient(z)

    def test_degree_two_matches_raw_product_expansion(self):
        # Oracle for the multiset collapse: expand the weighted product of
        # iterated integrals over raw index sequences, tracking per-variable
        # log degrees, and compare after rewriting log x0 multinomially.
        # Repeated indices only enter at degree two, where the collapse
        # weight is r(r-1)...(r-s+1) * prod(relation entries), not the
        # plain count of sequences realizing the multiset.
        from collections import defaultdict
        from itertools import product

        from gkz1 import build_config
        from gkz1.coefficients import coefficient_M, falling_factorial

        config = build_config([(2, -2, 1), (0, 1, -1), (-4, 3, -1)])
        rel = config.relation
        assert rel == (2, 1, 1)
        v = (F(2), F(1), F(0))
        n, r = 3, 2

        direct = defaultdict(F)  # (z, per-variable log degrees) -> coeff
        for seq in product(range(n), repeat=r):
            weight = 1
            for p in seq:
                weight *= rel[p]
            rho = [seq.count(i) for i in range(n)]
            for z in range(-6, 7):
                terms = [(F(1), ())]
                for i in range(n):
                    level = z * rel[i]
                    factors = [
                        (
                            coefficient_M(level, s, v[i])
                            * falling_factorial(rho[i], s),
                            rho[i] - s,
                        )
                        for s in range(rho[i] + 1)
                    ]
                    terms = [
                        (c0 * c, degs + (d,))
                        for c0, degs in terms
                        for c, d in factors
                        if c0 * c != 0
                    ]
                    if not terms:
                        break
                for c, degs in terms:
                    direct[(z, degs)] += weight * c

        solution = log_solution(config, v, (0, 0, 0), r, (-6, 6))
        expanded = defaultdict(F)
        for (z, rr), c in solution.terms.items():
            for degs in product(range(rr + 1), repeat=n):
                if sum(degs) != rr:
                    continue
                count = factorial(rr)
                weight = 1
                for mu in range(n):
                    count //= factorial(degs[mu])
                    weight *= rel[mu] ** degs[mu]
                expanded[(z, degs)] += c * count * weight
        assert {k: c for k, c in direct.items() if c} == {
            k: c for k, c in expanded.items() if c
        }
