from fractions import Fraction as F

import pytest

from puiseux import (
    INF,
    Branch,
    ExpandOptions,
    LPoly,
    MonotonicityError,
    StepData,
    Val,
    WeightMatrix,
    defining_data,
    denominator_lcm,
    expand,
    monomials_of,
    ramify,
    recenter,
    starting_data,
    substitute_y,
    verify_residual,
    weighted_order,
)
from tutils import lp, xm

W1 = WeightMatrix.identity(1)
W2 = WeightMatrix.identity(2)

NODAL = lp(1, 1, (1, (F(0),), (2,)), (-1, (F(2),), (0,)), (-1, (F(3),), (0,)))
SURFACE = lp(2, 1, (1, (F(0), F(0)), (2,)), (-1, (F(1), F(1)), (0,)))


def root_branch(gens):
    ny = gens[0].ny
    return Branch(
        gens=tuple(gens),
        step=0,
        cum_ram=1,
        acc=((),) * ny,
        retired=frozenset(),
        history=(),
        floor=None,
    )


class TestStepData:
    def test_defining_data_of_monomial_tuple(self):
        m = (xm(2, 3, 3, 3, 0), xm(2, 3, 7, 2, 1), LPoly.zero(2, 3))
        d = defining_data(m, W2)
        assert d.eta == (Val((3, 0)), Val((2, 1)), INF)
        assert d.gamma == ((F(3), F(0)), (F(2), F(1)), None)
        assert d.c == (F(3), F(7), F(0))

    def test_defining_data_of_zero_tuple(self):
        d = defining_data((LPoly.zero(2, 2), LPoly.zero(2, 2)), W2)
        assert d.eta == (INF, INF)
        assert d.c == (F(0), F(0))

    def test_round_trip(self):
        for gamma, c in [
            (((F(1), F(0)), (F(1, 2), F(3))), (F(2), F(-1, 3))),
            (((F(0), F(-1)), None), (F(5), F(0))),
        ]:
            eta = tuple(
                INF if g is None else W2.value_of(g) for g in gamma
            )
            d = StepData(eta, gamma, c)
            assert defining_data(monomials_of(d, 2), W2) == d

    def test_monomials_of(self):
        d = StepData(
            (Val((1, 0)), Val((1, 0)), INF),
            ((F(1), F(0)), (F(1), F(0)), None),
            (F(1), F(1), F(0)),
        )
        assert monomials_of(d, 2) == (
            xm(2, 3, 1, 1, 0),
            xm(2, 3, 1, 1, 0),
            LPoly.zero(2, 3),
        )

    def test_scaling_identity(self):
        # the tuple of {eta, gamma, c} evaluated at x^r equals the tuple of
        # {r*eta, r*gamma, c}
        gamma = ((F(1, 2), F(1)),)
        d = StepData((W2.value_of(gamma[0]),), gamma, (F(2),))
        r = 3
        scaled = StepData(
            (d.eta[0].scale(r),), ((F(3, 2), F(3)),), d.c
        )
        want = tuple(ramify(m, r) for m in monomials_of(d, 2))
        assert monomials_of(scaled, 2) == want

    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            StepData((Val((1,)),), ((F(1),),), (F(0),))  # active with zero coeff
        with pytest.raises(ValueError):
            StepData((INF,), ((F(1),),), (F(0),))  # retired with finite row
        with pytest.raises(ValueError):
            StepData((INF,), (None,), (F(2),))  # retired with nonzero coeff

    def test_denominator_lcm(self):
        assert denominator_lcm(((F(1, 2), F(1, 2)),)) == 2
        assert denominator_lcm(((F(1), F(0)), (F(2), F(3)))) == 1
        assert denominator_lcm(((F(1, 2), F(0)), (F(0), F(1, 3)))) == 6
        assert denominator_lcm((None, None)) == 1


class TestStartingData:
    def test_nodal_cubic_two_starts(self):
        sets, info = starting_data(root_branch([NODAL]), W1, ExpandOptions())
        assert [d.c for d in sets] == [(F(-1),), (F(1),)]
        assert all(d.eta == (Val((1,)),) for d in sets)
        assert all(d.gamma == ((F(1),),) for d in sets)
        assert info.candidates == 1

    def test_surface_start_is_ramified(self):
        sets, _ = starting_data(root_branch([SURFACE]), W2, ExpandOptions())
        assert [d.c for d in sets] == [(F(-1),), (F(1),)]
        assert all(d.eta == (Val((F(1, 2), F(1, 2))),) for d in sets)

    def test_mixed_weights_need_validation(self):
        g1 = lp(2, 2, (1, (F(0), F(0)), (1, 0)), (-1, (F(1), F(0)), (0, 0)))
        g2 = lp(
            2,
            2,
            (1, (F(0), F(0)), (0, 1)),
            (-1, (F(0), F(1)), (0, 0)),
            (1, (F(0), F(0)), (1, 0)),
        )
        sets, _ = starting_data(root_branch([g1, g2]), W2, ExpandOptions())
        assert len(sets) == 1
        (d,) = sets
        assert d.eta == (Val((1, 0)), Val((0, 1)))
        assert d.c == (F(1), F(1))

    def test_irrational_coefficients_flagged(self):
        f = lp(1, 1, (1, (F(0),), (2,)), (-2, (F(2),), (0,)))  # y^2 - 2x^2
        sets, info = starting_data(root_branch([f]), W1, ExpandOptions())
        assert sets == []
        assert info.irrational

    def test_strict_increase_filter(self):
        b = root_branch([NODAL])
        b_after = recenter(
            b,
            StepData((Val((1,)),), ((F(1),),), (F(1),)),
            W1,
        )
        sets, info = starting_data(b_after, W1, ExpandOptions())
        # y^2 + 2xy - x^3 has candidates at 1 (floor) and 2 (valid)
        assert [d.eta for d in sets] == [(Val((2,)),)]
        assert info.rejected_increase == 1


class TestRecenter:
    def test_plane_shift(self):
        b = root_branch([NODAL])
        d = StepData((Val((1,)),), ((F(1),),), (F(1),))
        nb = recenter(b, d, W1)
        want = lp(1, 1, (1, (F(0),), (2,)), (2, (F(1),), (1,)), (-1, (F(3),), (0,)))
        assert nb.gens == (want,)
        assert nb.cum_ram == 1
        assert nb.acc == (((F(1), (F(1),)),),)

    def test_ramified_shift(self):
        b = root_branch([SURFACE])
        d = StepData(
            (Val((F(1, 2), F(1, 2))),), ((F(1, 2), F(1, 2)),), (F(1),)
        )
        nb = recenter(b, d, W2)
        want = lp(2, 1, (1, (F(0), F(0)), (2,)), (2, (F(1), F(1)), (1,)))
        assert nb.gens == (want,)
        assert nb.cum_ram == 2
        assert nb.acc == (((F(1), (F(1, 2), F(1, 2))),),)

    def test_retirement_substitutes_zero(self):
        g1 = LPoly.y_var(2, 2, 0)  # y1, absorbed on retirement
        g2 = lp(2, 2, (1, (F(0), F(0)), (0, 1)), (1, (F(1), F(0)), (0, 0)))
        b = root_branch([g1, g2])
        d = StepData(
            (INF, Val((1, 0))),
            (None, (F(1), F(0))),
            (F(0), F(-1)),
        )
        nb = recenter(b, d, W2)
        assert nb.retired == frozenset({0})
        assert nb.gens == (LPoly.y_var(2, 2, 1),)
        assert nb.acc[0] == ()
        assert nb.acc[1] == ((F(-1), (F(1), F(0))),)

    def test_monotonicity_violation_raises(self):
        b = root_branch([NODAL])
        d = StepData((Val((1,)),), ((F(1),),), (F(1),))
        nb = recenter(b, d, W1)
        with pytest.raises(MonotonicityError):
            recenter(nb, d, W1)

    def test_zero_coefficient_step_rejected_by_invariants(self):
        with pytest.raises(ValueError):
            StepData((Val((1,)),), ((F(1),),), (F(0),))


class TestExpand:
    def test_surface_exact_pair(self):
        res = expand([SURFACE], W2, ExpandOptions(max_terms=3))
        assert len(res.solutions) == 2
        for s, c in zip(res.solutions, (F(-1), F(1))):
            assert s.exact
            assert s.ramification == 2
            assert s.residual_order.is_inf
            assert s.coords == (((c, (F(1, 2), F(1, 2))),),)

    def test_binomial_square_root_series(self):
        f = lp(1, 1, (1, (F(0),), (2,)), (-1, (F(2),), (0,)), (-1, (F(3),), (0,)))
        res = expand([f], W1, ExpandOptions(max_terms=4))
        assert len(res.solutions) == 2
        plus = res.solutions[1]
        assert [c for c, _ in plus.coords[0]] == [F(1), F(1, 2), F(-1, 8), F(1, 16)]
        assert [e[0] for _, e in plus.coords[0]] == [F(1), F(2), F(3), F(4)]
        assert plus.residual_order == Val((6,))
        minus = res.solutions[0]
        assert [c for c, _ in minus.coords[0]] == [F(-1), F(-1, 2), F(1, 8), F(-1, 16)]

    def test_linear_chain_back_substitution(self):
        g1 = lp(2, 2, (1, (F(0), F(0)), (1, 0)), (-1, (F(1), F(0)), (0, 0)))
        g2 = lp(
            2,
            2,
            (1, (F(0), F(0)), (0, 1)),
            (-1, (F(0), F(1)), (0, 0)),
            (1, (F(0), F(0)), (1, 0)),
        )
        res = expand([g1, g2], W2, ExpandOptions(max_terms=5))
        assert len(res.solutions) == 1
        (s,) = res.solutions
        assert s.exact
        assert s.coords[0] == ((F(1), (F(1), F(0))),)
        assert s.coords[1] == ((F(1), (F(0), F(1))), (F(-1), (F(1), F(0))))

    def test_branch_through_zero_is_found(self):
        # y(y - x): the zero series and the line both solve the system
        f = lp(1, 1, (1, (F(0),), (2,)), (-1, (F(1),), (1,)))
        res = expand([f], W1, ExpandOptions(max_terms=4))
        assert len(res.solutions) == 2
        assert res.solutions[0].coords == ((),)
        assert res.solutions[0].exact
        assert res.solutions[1].coords == (((F(1), (F(1),)),),)
        assert res.solutions[1].exact

    def test_dead_branch_reports_irrational(self):
        f = lp(1, 1, (1, (F(0),), (2,)), (-2, (F(2),), (0,)))
        res = expand([f], W1, ExpandOptions(max_terms=4))
        assert res.solutions == ()
        assert len(res.dead_branches) == 1
        d = res.dead_branches[0]
        assert d.reason == "no_rational_torus_solution"
        assert d.irrational_roots_detected
        assert res.irrational_roots_detected

    def test_no_candidates_reported(self):
        f = LPoly.x_var(2, 1, 0) - LPoly.x_var(2, 1, 1)
        res = expand([f], W2, ExpandOptions(max_terms=2))
        assert res.solutions == ()
        assert res.dead_branches[0].reason == "no_prevariety_candidate"

    def test_branch_budget(self):
        from puiseux import BranchBudgetExceeded

        with pytest.raises(BranchBudgetExceeded):
            expand([NODAL], W1, ExpandOptions(max_terms=4, max_branches=2))

    def test_monotonicity_along_traces(self):
        res = expand([NODAL], W1, ExpandOptions(max_terms=4))
        for s in res.solutions:
            floor = None
            for t in s.trace:
                for i, e in enumerate(t.data.eta):
                    if e.is_inf:
                        continue
                    if floor is not None:
                        assert e > floor[i]
                floor = tuple(
                    INF if e.is_inf else e.scale(t.dgamma) for e in t.data.eta
                )

    def test_zero_generator_rejected(self):
        with pytest.raises(ValueError):
            expand([LPoly.zero(1, 1)], W1)

    def test_accumulated_exponents_live_in_ramification_lattice(self):
        f = lp(1, 1, (1, (F(0),), (3,)), (-1, (F(2),), (0,)))  # y^3 - x^2
        res = expand([f], W1, ExpandOptions(max_terms=4))
        (s,) = res.solutions
        assert s.exact
        assert s.ramification == 3
        assert s.coords == (((F(1), (F(2, 3),)),),)
        for c, e in s.coords[0]:
            assert (e[0] * s.ramification).denominator == 1
        assert res.irrational_roots_detected  # the conjugate branches


class TestVerify:
    def test_exact_certificate(self):
        coords = (((F(1), (F(1, 2), F(1, 2))),),)
        assert verify_residual([SURFACE], coords, W2).is_inf

    def test_two_term_truncation(self):
        coords = (((F(1), (F(1),)), (F(1, 2), (F(2),))),)
        assert verify_residual([NODAL], coords, W1) == Val((4,))

    def test_empty_series(self):
        f = lp(1, 1, (1, (F(0),), (1,)), (-1, (F(1),), (0,)))
        assert verify_residual([f], ((),), W1) == Val((1,))

    def test_residual_growth_on_truncations(self):
        res = expand([NODAL], W1, ExpandOptions(max_terms=4))
        s = res.solutions[1]
        orders = []
        for k in range(1, 5):
            coords = (s.coords[0][:k],)
            orders.append(verify_residual([NODAL], coords, W1))
        assert orders == [Val((3,)), Val((4,)), Val((5,)), Val((6,))]
        assert all(a < b for a, b in zip(orders, orders[1:]))

    def test_zero_correspondence_under_recentering(self):
        # a residual certificate for the recentered system transfers to the
        # parent after adding the step monomial and ramifying
        b = root_branch([NODAL])
        d = StepData((Val((1,)),), ((F(1),),), (F(1),))
        nb = recenter(b, d, W1)
        child_coords = (((F(1, 2), (F(2),)),),)
        child_res = verify_residual(list(nb.gens), child_coords, W1)
        parent_coords = (((F(1), (F(1),)), (F(1, 2), (F(2),))),)
        parent_res = verify_residual([NODAL], parent_coords, W1)
        assert child_res == parent_res == Val((4,))

    def test_zero_correspondence_with_ramification(self):
        b = root_branch([SURFACE])
        d = StepData(
            (Val((F(1, 2), F(1, 2))),), ((F(1, 2), F(1, 2)),), (F(1),)
        )
        nb = recenter(b, d, W2)
        # child residual of the zero series vs parent residual of the step
        child_res = verify_residual(list(nb.gens), ((),), W2)
        parent_res = verify_residual(
            [SURFACE], (((F(1), (F(1, 2), F(1, 2))),),), W2
        )
        assert child_res.is_inf and parent_res.is_inf


class TestSubstituteConsistency:
    def test_recentered_generators_match_direct_substitution(self):
        # f(x, s + y) evaluated at y = t equals f(x, s + t)
        b = root_branch([NODAL])
        d = StepData((Val((1,)),), ((F(1),),), (F(1),))
        nb = recenter(b, d, W1)
        t = LPoly.x_var(1, 1, 0, power=2).scale(F(1, 2))
        via_child = substitute_y(nb.gens[0], [t])
        s_plus_t = LPoly.x_var(1, 1, 0) + t
        via_parent = substitute_y(NODAL, [s_plus_t])
        assert via_child == via_parent
