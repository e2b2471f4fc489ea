"""Pricing-curve tests.

Each quoting rule the package solves numerically is checked here against an
independently derived closed form ("one code path, many oracles"):

    constant product   dy = r_out - (r_in * r_out) / (r_in + dx)
    geometric mean     x_out' = (c0 / prod_known(r^w))^(1/w_out)
    constant sum       dy = dx
    product-sum        D from an independent pure-bisection solver
    power sum          x_out' = (c0 - sum_known(r^(1-t)))^(1/(1-t))
    LMSR               share buy inverted in closed log form
    price adoption     piecewise-quadratic integrals done by hand
    bonding            r(S) = S^kappa / c evaluated directly
"""

from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ammlab.core import DepletionError, DomainError, UnsupportedOperation
from ammlab.curves import (
    ConstantPowerSum,
    ConstantProduct,
    ConstantProductSum,
    ConstantSum,
    Exponential,
    GeometricMean,
    Lmsr,
    PriceAdoption,
    bonding_trade,
    invariant_value,
    lmsr_trade_cost,
    pmm_trade_cost,
    quote_exact_in,
    quote_exact_out,
    solve_stableswap_d,
    spot_price,
)

REL = 1e-9

CP = ConstantProduct()
CS = ConstantSum()


def close(a, b, rel=REL, abs_=1e-12):
    return math.isclose(a, b, rel_tol=rel, abs_tol=abs_)


# --- independent oracles ----------------------------------------------------


def cp_out(r_in, r_out, dx):
    return r_out - (r_in * r_out) / (r_in + dx)


def gm_out(weights, r_in, r_out, i, j, dx):
    c0 = r_in ** weights[i] * r_out ** weights[j]
    return r_out - (c0 / (r_in + dx) ** weights[i]) ** (1.0 / weights[j])


def bisect_d(reserves, chi, iters=200):
    """Pure-bisection StableSwap solver; bracket from AM-GM bounds."""
    n = len(reserves)
    s = sum(reserves)
    p = math.prod(reserves)
    if chi == 0.0:
        return n * p ** (1.0 / n)

    def g(d):
        return chi * d ** (n - 1) * s + p - chi * d**n - (d / n) ** n

    lo, hi = n * p ** (1.0 / n), s
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if g(mid) >= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def lmsr_buy_closed(b, q, j, spend):
    """Shares received for `spend` collateral, inverted in closed form."""
    c_target = invariant_value(Lmsr(b=b), q) + spend
    rest = sum(math.exp(qi / b) for i, qi in enumerate(q) if i != j)
    return b * math.log(math.exp(c_target / b) - rest) - q[j]


# ---------------------------------------------------------------------------
# invariant_value
# ---------------------------------------------------------------------------


class TestInvariantValue:
    def test_constant_product(self):
        assert invariant_value(CP, (100.0, 100.0)) == 10000.0

    def test_lmsr_cost_at_origin(self):
        # C(0,0) = b ln 2
        assert close(invariant_value(Lmsr(b=100.0), (0.0, 0.0)), 100.0 * math.log(2.0))

    def test_geometric_mean_equal_weights(self):
        spec = GeometricMean(weights=(0.5, 0.5))
        assert close(invariant_value(spec, (100.0, 100.0)), 100.0)

    def test_constant_sum(self):
        assert invariant_value(CS, (3.0, 7.0, 5.0)) == 15.0

    def test_power_sum(self):
        # 9^0.5 + 16^0.5 = 7
        assert close(invariant_value(ConstantPowerSum(t=0.5), (9.0, 16.0)), 7.0)

    def test_product_sum_returns_d(self):
        spec = ConstantProductSum(chi=7.0)
        assert close(invariant_value(spec, (100.0, 100.0)), 200.0)

    def test_exponential_is_solvency_constant(self):
        # reserves convention: (reserve balance, circulating supply)
        spec = Exponential(kappa=2.0, c=1.0)
        assert close(invariant_value(spec, (100.0, 10.0)), 1.0)

    def test_price_adoption_unsupported(self):
        spec = PriceAdoption(k=0.5, target_reserves=(100.0, 1000.0))
        with pytest.raises(UnsupportedOperation):
            invariant_value(spec, (100.0, 1000.0))

    def test_nonpositive_reserve_rejected(self):
        with pytest.raises(DomainError):
            invariant_value(CP, (0.0, 100.0))


# ---------------------------------------------------------------------------
# spot_price
# ---------------------------------------------------------------------------


class TestSpotPrice:
    def test_constant_product_ratio(self):
        assert spot_price(CP, (100.0, 200.0), 0, 1) == 2.0

    def test_geometric_mean_worked_example(self):
        spec = GeometricMean(weights=(0.8, 0.2))
        assert close(spot_price(spec, (80.0, 20.0), 0, 1), 1.0)

    def test_geometric_mean_general(self):
        # dy/dx = (w_in r_out) / (w_out r_in)
        spec = GeometricMean(weights=(0.6, 0.4))
        assert close(spot_price(spec, (120.0, 30.0), 0, 1), (0.6 * 30.0) / (0.4 * 120.0))

    def test_constant_sum_unity(self):
        assert spot_price(CS, (17.0, 3.0), 0, 1) == 1.0

    def test_lmsr_symmetric_outcome_price(self):
        # price of an outcome in collateral units, collateral leg = None
        assert close(spot_price(Lmsr(b=100.0), (0.0, 0.0), 0, None), 0.5)

    def test_lmsr_prices_follow_softmax(self):
        b, q = 50.0, (30.0, 10.0, 0.0)
        z = sum(math.exp(qi / b) for qi in q)
        for j in range(3):
            assert close(spot_price(Lmsr(b=b), q, j, None), math.exp(q[j] / b) / z)

    def test_power_sum_ratio(self):
        spec = ConstantPowerSum(t=0.5)
        assert close(spot_price(spec, (100.0, 25.0), 0, 1), 0.5)

    def test_product_sum_limits(self):
        r = (100.0, 50.0)
        assert close(spot_price(ConstantProductSum(chi=0.0), r, 0, 1), 0.5)
        assert close(spot_price(ConstantProductSum(chi=1e6), r, 0, 1), 1.0, rel=1e-4)

    def test_exponential_marginal(self):
        # issued -> reserve: dr/dS = kappa S^(kappa-1) / c
        spec = Exponential(kappa=2.0, c=1.0)
        assert close(spot_price(spec, (100.0, 10.0), 1, 0), 20.0)
        assert close(spot_price(spec, (100.0, 10.0), 0, 1), 1.0 / 20.0)

    def test_price_adoption_directional(self):
        """Deficit pool: buying the scarce token costs a surcharge, selling
        it in pays the plain adopted price."""
        spec = PriceAdoption(k=0.5, target_reserves=(100.0, 1000.0))
        r = (80.0, 800.0)
        # offered price of token 0 is p(1 + k*(t0-r0)/t0) = 11; quoting the
        # buy-base direction returns base-per-quote, i.e. 1/11
        assert close(spot_price(spec, r, 1, 0, adopted_price=10.0), 1.0 / 11.0)
        assert close(spot_price(spec, r, 0, 1, adopted_price=10.0), 10.0)

    def test_price_adoption_surplus_side(self):
        spec = PriceAdoption(k=0.5, target_reserves=(100.0, 1000.0))
        r = (120.0, 800.0)
        # surplus of token 0: selling it in gets the discounted 9.0
        assert close(spot_price(spec, r, 0, 1, adopted_price=10.0), 9.0)
        assert close(spot_price(spec, r, 1, 0, adopted_price=10.0), 1.0 / 10.0)

    def test_price_adoption_requires_oracle(self):
        spec = PriceAdoption(k=0.5, target_reserves=(100.0, 1000.0))
        with pytest.raises(DomainError):
            spot_price(spec, (100.0, 1000.0), 0, 1)


# ---------------------------------------------------------------------------
# quote_exact_in
# ---------------------------------------------------------------------------


class TestQuoteExactIn:
    def test_constant_product_worked_example(self):
        dy = quote_exact_in(CP, (100.0, 100.0), 0, 1, 10.0)
        assert close(dy, 100.0 - 10000.0 / 110.0)

    def test_constant_sum_one_to_one(self):
        assert close(quote_exact_in(CS, (100.0, 100.0), 0, 1, 10.0), 10.0)

    def test_product_sum_chi_zero_matches_constant_product(self):
        spec = ConstantProductSum(chi=0.0)
        for r, dx in [((100.0, 100.0), 10.0), ((250.0, 40.0), 3.0), ((5.0, 900.0), 1.0)]:
            assert close(quote_exact_in(spec, r, 0, 1, dx), cp_out(r[0], r[1], dx))

    def test_product_sum_chi_large_matches_constant_sum(self):
        spec = ConstantProductSum(chi=1e6)
        dy = quote_exact_in(spec, (100.0, 100.0), 0, 1, 10.0)
        assert close(dy, 10.0, rel=1e-4)

    def test_geometric_mean_against_closed_form(self):
        spec = GeometricMean(weights=(0.3, 0.7))
        r = (200.0, 50.0)
        assert close(quote_exact_in(spec, r, 0, 1, 7.0), gm_out((0.3, 0.7), r[0], r[1], 0, 1, 7.0))

    def test_lmsr_buy_worked_example(self):
        # spending b*ln((e^0.1 + 1)/2) collateral on outcome 0 yields 10 shares
        spend = 100.0 * math.log((math.exp(0.1) + 1.0) / 2.0)
        shares = quote_exact_in(Lmsr(b=100.0), (0.0, 0.0), None, 0, spend)
        assert close(shares, 10.0)

    def test_lmsr_sell_is_cost_difference(self):
        spend = 100.0 * math.log((math.exp(0.1) + 1.0) / 2.0)
        payout = quote_exact_in(Lmsr(b=100.0), (10.0, 0.0), 0, None, 10.0)
        assert close(payout, spend)

    def test_price_adoption_k_zero_is_flat(self):
        spec = PriceAdoption(k=0.0, target_reserves=(100.0, 1000.0))
        assert close(quote_exact_in(spec, (80.0, 800.0), 1, 0, 10.0, adopted_price=10.0), 1.0)
        assert close(quote_exact_in(spec, (80.0, 800.0), 0, 1, 1.0, adopted_price=10.0), 10.0)

    def test_price_adoption_buy_integral(self):
        # ask(u) = 10 + 0.05 (100 - u); buying 10 base from r0 = 80 costs
        # 10*10 + 0.05*(20*10 + 10^2/2) = 112.5
        spec = PriceAdoption(k=0.5, target_reserves=(100.0, 1000.0))
        dy = quote_exact_in(spec, (80.0, 800.0), 1, 0, 112.5, adopted_price=10.0)
        assert close(dy, 10.0)

    def test_price_adoption_sell_across_target(self):
        # selling 40 base from r0 = 80: par leg 20*10, then discounted leg
        # integral of 10 - 0.05 (u - 100) over [100, 120] = 200 - 10 = 190
        spec = PriceAdoption(k=0.5, target_reserves=(100.0, 1000.0))
        dy = quote_exact_in(spec, (80.0, 800.0), 0, 1, 40.0, adopted_price=10.0)
        assert close(dy, 390.0)

    def test_price_adoption_buy_across_target(self):
        # buying 40 base from r0 = 120: par leg 20*10, surcharge leg
        # integral of 10 + 0.05 (100 - u) over [80, 100] = 210; total 410
        spec = PriceAdoption(k=0.5, target_reserves=(100.0, 1000.0))
        dy = quote_exact_in(spec, (120.0, 800.0), 1, 0, 410.0, adopted_price=10.0)
        assert close(dy, 40.0)

    def test_exponential_buy_and_sell(self):
        spec = Exponential(kappa=2.0, c=1.0)
        # spending 21 reserve at S=10 mints exactly 1 (121 - 100 = 21)
        assert close(quote_exact_in(spec, (100.0, 10.0), 0, 1, 21.0), 1.0)
        # selling the whole supply drains the reserve
        assert close(quote_exact_in(spec, (100.0, 10.0), 1, 0, 10.0), 100.0)

    def test_constant_sum_legal_depletion(self):
        assert close(quote_exact_in(CS, (100.0, 100.0), 0, 1, 100.0), 100.0)

    def test_constant_sum_depletion_error(self):
        with pytest.raises(DepletionError):
            quote_exact_in(CS, (100.0, 100.0), 0, 1, 150.0)

    def test_negative_input_rejected(self):
        with pytest.raises(DomainError):
            quote_exact_in(CP, (100.0, 100.0), 0, 1, -1.0)


# ---------------------------------------------------------------------------
# quote_exact_out
# ---------------------------------------------------------------------------


class TestQuoteExactOut:
    def test_constant_product_inverse_of_worked_example(self):
        dy = 100.0 - 10000.0 / 110.0
        assert close(quote_exact_out(CP, (100.0, 100.0), 0, 1, dy), 10.0)

    def test_constant_sum(self):
        assert close(quote_exact_out(CS, (100.0, 100.0), 0, 1, 10.0), 10.0)

    def test_zero_out_costs_zero(self):
        assert quote_exact_out(CP, (100.0, 100.0), 0, 1, 0.0) == 0.0

    def test_depletion_rejected(self):
        with pytest.raises(DepletionError):
            quote_exact_out(CP, (100.0, 100.0), 0, 1, 100.0)

    def test_price_adoption_buy_quadratic(self):
        spec = PriceAdoption(k=0.5, target_reserves=(100.0, 1000.0))
        dx = quote_exact_out(spec, (80.0, 800.0), 1, 0, 10.0, adopted_price=10.0)
        assert close(dx, 112.5)

    def test_lmsr_buy_exact_out_is_direct_cost(self):
        b, q = 100.0, (0.0, 0.0)
        cost = quote_exact_out(Lmsr(b=b), q, None, 0, 10.0)
        assert close(cost, 100.0 * math.log((math.exp(0.1) + 1.0) / 2.0))


# ---------------------------------------------------------------------------
# solve_stableswap_d
# ---------------------------------------------------------------------------


class TestStableswapD:
    @pytest.mark.parametrize("chi", [0.0, 1.0, 10.0, 1e6])
    def test_symmetric_reserves(self, chi):
        assert close(solve_stableswap_d((100.0, 100.0), chi), 200.0)

    def test_chi_zero_constant_product_limit(self):
        assert close(solve_stableswap_d((100.0, 50.0), 0.0), 2.0 * math.sqrt(5000.0))

    def test_chi_huge_constant_sum_limit(self):
        assert close(solve_stableswap_d((100.0, 50.0), 1e6), 150.0, rel=1e-4)

    def test_three_token_symmetric(self):
        assert close(solve_stableswap_d((100.0, 100.0, 100.0), 10.0), 300.0)

    def test_matches_bisection_oracle(self):
        rng = random.Random(7)
        for _ in range(50):
            n = rng.choice([2, 3])
            reserves = tuple(rng.uniform(1.0, 1e4) for _ in range(n))
            chi = rng.choice([0.0, 0.01, 1.0, 10.0, 100.0])
            got = solve_stableswap_d(reserves, chi)
            want = bisect_d(reserves, chi)
            assert close(got, want, rel=1e-10)


# ---------------------------------------------------------------------------
# lmsr_trade_cost
# ---------------------------------------------------------------------------


class TestLmsrTradeCost:
    def test_worked_example(self):
        cost = lmsr_trade_cost(100.0, (0.0, 0.0), (10.0, 0.0))
        assert close(cost, 100.0 * math.log((math.exp(0.1) + 1.0) / 2.0))

    def test_zero_trade(self):
        assert lmsr_trade_cost(100.0, (5.0, 3.0), (0.0, 0.0)) == 0.0

    def test_negative_resulting_quantity_rejected(self):
        with pytest.raises(DomainError):
            lmsr_trade_cost(100.0, (5.0, 3.0), (-6.0, 0.0))

    @given(
        a=st.floats(min_value=0.0, max_value=500.0),
        q0=st.floats(min_value=0.0, max_value=300.0),
        q1=st.floats(min_value=0.0, max_value=300.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_translation_identity(self, a, q0, q1):
        """Buying the same amount of every outcome costs exactly that amount."""
        cost = lmsr_trade_cost(100.0, (q0, q1), (a, a))
        assert math.isclose(cost, a, rel_tol=REL, abs_tol=1e-9)


# ---------------------------------------------------------------------------
# pmm_trade_cost
# ---------------------------------------------------------------------------


class TestPmmTradeCost:
    SPEC = dict(k=0.5, target_reserves=(100.0, 1000.0), adopted_price=10.0)

    def test_k_zero_flat_pricing(self):
        out = pmm_trade_cost(0.0, (100.0, 1000.0), (80.0, 800.0), 10.0, 1, 0, 10.0)
        assert close(out, 1.0)

    def test_buy_output_from_hand_integral(self):
        out = pmm_trade_cost(0.5, (100.0, 1000.0), (80.0, 800.0), 10.0, 1, 0, 112.5)
        assert close(out, 10.0)

    def test_sell_output_from_hand_integral(self):
        out = pmm_trade_cost(0.5, (100.0, 1000.0), (80.0, 800.0), 10.0, 0, 1, 40.0)
        assert close(out, 390.0)

    def test_full_extraction_is_legal_then_errors(self):
        # cost of all 80 base from r0=80: integral of ask over [0, 80]
        full = 10.0 * 80.0 + 0.05 * (20.0 * 80.0 + 80.0**2 / 2.0)
        out = pmm_trade_cost(0.5, (100.0, 1000.0), (80.0, 800.0), 10.0, 1, 0, full)
        assert close(out, 80.0)
        with pytest.raises(DepletionError):
            pmm_trade_cost(0.5, (100.0, 1000.0), (80.0, 800.0), 10.0, 1, 0, full + 1.0)


# ---------------------------------------------------------------------------
# bonding_trade
# ---------------------------------------------------------------------------


class TestBondingTrade:
    def test_mint_step(self):
        assert close(bonding_trade(2.0, 1.0, 10.0, 1.0), 21.0)

    def test_mint_from_zero(self):
        assert close(bonding_trade(2.0, 1.0, 0.0, 10.0), 100.0)

    def test_zero_trade(self):
        assert bonding_trade(2.0, 1.0, 10.0, 0.0) == 0.0

    def test_burn_below_zero_rejected(self):
        with pytest.raises(DomainError):
            bonding_trade(2.0, 1.0, 10.0, -11.0)

    @given(
        s=st.floats(min_value=0.0, max_value=1e3),
        d=st.floats(min_value=0.0, max_value=1e3),
        kappa=st.sampled_from([1.5, 2.0, 3.0]),
    )
    @settings(max_examples=200, deadline=None)
    def test_round_trip_uses_one_closed_form(self, s, d, kappa):
        # mint cost and the burn payout that undoes it come from the same
        # closed form; only (s+d)-d rounding can separate them
        up = bonding_trade(kappa, 2.0, s, d)
        down = bonding_trade(kappa, 2.0, s + d, -d)
        assert math.isclose(up, down, rel_tol=1e-12, abs_tol=1e-9)


# ---------------------------------------------------------------------------
# cross-curve properties
# ---------------------------------------------------------------------------

CONSERVATION_CASES = [
    ConstantProduct(),
    GeometricMean(weights=(0.25, 0.75)),
    ConstantSum(),
    ConstantProductSum(chi=10.0),
    ConstantPowerSum(t=0.4),
]


def _random_state(rng):
    return (rng.uniform(10.0, 1e4), rng.uniform(10.0, 1e4))


class TestConservation:
    @pytest.mark.parametrize("spec", CONSERVATION_CASES, ids=lambda s: type(s).__name__)
    def test_zero_fee_trades_preserve_invariant(self, spec):
        rng = random.Random(42)
        for _ in range(300):
            r = _random_state(rng)
            i, j = rng.choice([(0, 1), (1, 0)])
            dx = rng.uniform(1e-4, 0.1) * min(r)
            dy = quote_exact_in(spec, r, i, j, dx)
            after = list(r)
            after[i] += dx
            after[j] -= dy
            assert close(invariant_value(spec, after), invariant_value(spec, r))


class TestInverseConsistency:
    @pytest.mark.parametrize("spec", CONSERVATION_CASES, ids=lambda s: type(s).__name__)
    def test_exact_out_inverts_exact_in(self, spec):
        rng = random.Random(1234)
        for _ in range(100):
            r = _random_state(rng)
            dx = rng.uniform(1e-4, 0.1) * min(r)
            dy = quote_exact_in(spec, r, 0, 1, dx)
            back = quote_exact_out(spec, r, 0, 1, dy)
            assert close(back, dx)

    def test_pmm_exact_out_inverts_exact_in(self):
        spec = PriceAdoption(k=0.5, target_reserves=(100.0, 1000.0))
        rng = random.Random(5)
        for _ in range(100):
            r = (rng.uniform(50.0, 150.0), rng.uniform(500.0, 1500.0))
            dx = rng.uniform(0.01, 10.0)
            for i, j in [(0, 1), (1, 0)]:
                dy = quote_exact_in(spec, r, i, j, dx, adopted_price=10.0)
                back = quote_exact_out(spec, r, i, j, dy, adopted_price=10.0)
                assert close(back, dx)


class TestSpotConsistency:
    def test_marginal_quote_matches_spot(self):
        """quote(eps)/eps agrees with spot_price to 1e-4 at eps = 1e-6*reserve."""
        rng = random.Random(99)
        for spec in CONSERVATION_CASES:
            for _ in range(20):
                r = _random_state(rng)
                eps = 1e-6 * min(r)
                ratio = quote_exact_in(spec, r, 0, 1, eps) / eps
                spot = spot_price(spec, r, 0, 1)
                assert close(ratio, spot, rel=1e-4)

    def test_lmsr_marginal(self):
        b, q = 75.0, (12.0, 40.0, 3.0)
        eps = 1e-6 * b
        payout = quote_exact_in(Lmsr(b=b), q, 0, None, eps)
        assert close(payout / eps, spot_price(Lmsr(b=b), q, 0, None), rel=1e-4)

    def test_pmm_marginal_both_sides(self):
        spec = PriceAdoption(k=0.5, target_reserves=(100.0, 1000.0))
        r = (80.0, 800.0)
        eps = 1e-6 * 100.0
        sell = quote_exact_in(spec, r, 0, 1, eps, adopted_price=10.0)
        assert close(sell / eps, spot_price(spec, r, 0, 1, adopted_price=10.0), rel=1e-4)
        buy = quote_exact_in(spec, r, 1, 0, eps, adopted_price=10.0)
        assert close(buy / eps, spot_price(spec, r, 1, 0, adopted_price=10.0), rel=1e-4)


class TestLimitEquivalences:
    def test_geometric_mean_equal_weights_is_constant_product(self):
        spec = GeometricMean(weights=(0.5, 0.5))
        rng = random.Random(3)
        for _ in range(50):
            r = _random_state(rng)
            dx = rng.uniform(1e-3, 0.1) * min(r)
            assert close(
                quote_exact_in(spec, r, 0, 1, dx), quote_exact_in(CP, r, 0, 1, dx)
            )

    def test_power_sum_small_t_approaches_constant_sum(self):
        spec = ConstantPowerSum(t=1e-9)
        dy = quote_exact_in(spec, (100.0, 60.0), 0, 1, 5.0)
        assert close(dy, 5.0, rel=1e-6)


class TestLmsrPriceLaws:
    @given(
        q0=st.floats(min_value=0.0, max_value=400.0),
        q1=st.floats(min_value=0.0, max_value=400.0),
        q2=st.floats(min_value=0.0, max_value=400.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_prices_sum_to_one(self, q0, q1, q2):
        spec = Lmsr(b=100.0)
        prices = [spot_price(spec, (q0, q1, q2), j, None) for j in range(3)]
        assert all(0.0 < p < 1.0 for p in prices)
        assert abs(sum(prices) - 1.0) <= 1e-12

    def test_buy_inversion_matches_closed_form(self):
        rng = random.Random(11)
        for _ in range(100):
            b = rng.uniform(10.0, 500.0)
            q = (rng.uniform(0.0, 300.0), rng.uniform(0.0, 300.0))
            spend = rng.uniform(1e-3, 50.0)
            got = quote_exact_in(Lmsr(b=b), q, None, 0, spend)
            assert close(got, lmsr_buy_closed(b, q, 0, spend))


class TestCurveSpecDomains:
    def test_weights_must_sum_to_one(self):
        with pytest.raises(DomainError):
            GeometricMean(weights=(0.5, 0.6))

    def test_weights_must_be_positive(self):
        with pytest.raises(DomainError):
            GeometricMean(weights=(1.2, -0.2))

    def test_chi_nonnegative(self):
        with pytest.raises(DomainError):
            ConstantProductSum(chi=-1.0)

    def test_power_sum_t_domain(self):
        with pytest.raises(DomainError):
            ConstantPowerSum(t=1.0)
        with pytest.raises(DomainError):
            ConstantPowerSum(t=-0.1)

    def test_lmsr_b_positive(self):
        with pytest.raises(DomainError):
            Lmsr(b=0.0)

    def test_pmm_k_domain(self):
        with pytest.raises(DomainError):
            PriceAdoption(k=1.5, target_reserves=(1.0, 1.0))

    def test_exponential_domains(self):
        with pytest.raises(DomainError):
            Exponential(kappa=0.0, c=1.0)
        with pytest.raises(DomainError):
            Exponential(kappa=2.0, c=0.0)
