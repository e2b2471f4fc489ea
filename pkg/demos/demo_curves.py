"""Tour of the eight pricing curves.

For each curve family this prints how the quoted output and the spot price
respond to a growing trade, highlighting what makes each family distinct:
constant-sum trades at par until depletion, the product family steepens,
the scoring rule keeps prices in (0, 1), and the bonding curve has no
depth limit at all.

Run:  python3 demos/demo_curves.py
"""

from ammlab.curves import (
    ConstantPowerSum,
    ConstantProduct,
    ConstantProductSum,
    ConstantSum,
    Exponential,
    GeometricMean,
    Lmsr,
    PriceAdoption,
    lmsr_trade_cost,
    quote_exact_in,
    spot_price,
)

TWO_TOKEN_STATE = (100.0, 100.0)
TRADE_SIZES = (1.0, 10.0, 50.0, 90.0)


def show(title, rows):
    print(f"\n{title}")
    print(f"  {'trade in':>10} {'amount out':>12} {'mean price':>12} {'spot after':>12}")
    for row in rows:
        print("  {:>10.2f} {:>12.6f} {:>12.6f} {:>12.6f}".format(*row))


def conservation_rows(curve, state=TWO_TOKEN_STATE, adopted=None):
    rows = []
    for dx in TRADE_SIZES:
        dy = quote_exact_in(curve, state, 0, 1, dx, adopted)
        after = (state[0] + dx, state[1] - dy)
        rows.append((dx, dy, dy / dx, spot_price(curve, after, 0, 1, adopted)))
    return rows


def main():
    print("Eight pricing curves, one balanced (100, 100) starting point")
    print("=" * 62)

    show("constant product  x*y = k  (price worsens smoothly)",
         conservation_rows(ConstantProduct()))

    show("geometric mean  x^0.2 * y^0.8 = k  (80/20 weighting)",
         conservation_rows(GeometricMean(weights=(0.2, 0.8))))

    show("constant sum  x + y = k  (par until the reserve runs out)",
         conservation_rows(ConstantSum()))

    show("constant product-sum, leverage chi=10 (flat middle, curved edges)",
         conservation_rows(ConstantProductSum(chi=10.0)))

    show("constant power-sum, t=0.5  (curvature between sum and product)",
         conservation_rows(ConstantPowerSum(t=0.5)))

    pmm = PriceAdoption(k=0.5, target_reserves=(100.0, 1000.0))
    show("price adoption, oracle at 10, surcharge k=0.5 (sell side)",
         conservation_rows(pmm, state=(100.0, 1000.0), adopted=10.0))

    print("\nlogarithmic market scoring, b=100, three outcomes")
    print(f"  {'buy outcome0':>12} {'cost':>10} {'p(out0)':>9} {'p(out1)':>9} {'p(out2)':>9}")
    lmsr = Lmsr(b=100.0)
    for shares in (0.0, 50.0, 150.0, 400.0):
        state = [shares, 0.0, 0.0]
        cost = lmsr_trade_cost(100.0, [0.0, 0.0, 0.0], (shares, 0.0, 0.0))
        prices = [1.0 / spot_price(lmsr, state, None, i) for i in range(3)]
        print("  {:>12.0f} {:>10.4f} {:>9.4f} {:>9.4f} {:>9.4f}".format(
            shares, cost, *prices))
    print("  prices always sum to 1 and stay inside (0, 1)")

    print("\nexponential bonding curve  r(S) = S^2 / 1")
    exp = Exponential(kappa=2.0, c=1.0)
    print(f"  {'supply':>8} {'reserve':>10} {'marginal price':>15}")
    for supply in (10.0, 20.0, 40.0, 80.0):
        reserve = supply**2
        print("  {:>8.0f} {:>10.0f} {:>15.2f}".format(
            supply, reserve, spot_price(exp, (reserve, supply), 1, 0)))
    print("  the price grows without bound; every sale is backed by reserve")


if __name__ == "__main__":
    main()
