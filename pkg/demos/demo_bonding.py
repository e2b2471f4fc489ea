"""Supply-sovereign issuance on an exponential bonding curve.

The pool mints its own token: buying bonds reserve into the curve
r(S) = S^kappa / c and mints supply, selling burns supply and pays reserve
back out.  The marginal price is kappa * S^(kappa-1) / c, so it rises with
every purchase — and because the reserve always equals the integral under
the curve, even a total exit is covered to the last drop.

Run:  python3 demos/demo_bonding.py
"""

from ammlab.core import balance_of, ledger_mint
from ammlab.curves import spot_price
from ammlab.engine import curve_buy, curve_sell, load_pool


def marginal(pool):
    state = (pool.reserves[0], pool.circulating_supply)
    return spot_price(pool.curve, state, 1, 0)


def main():
    pool, ledgers = load_pool("bancor-like")  # r = S^2, primed at S=10, r=100
    ledgers["RESERVE"] = ledger_mint(ledgers["RESERVE"], "dana", 10_000.0)

    print("Bonding curve r = S^2: reserve, supply, and price after each action")
    print("=" * 68)
    print(f"  {'action':<26} {'reserve':>10} {'supply':>10} {'price':>10}")
    print(f"  {'genesis':<26} {pool.reserves[0]:>10.2f} "
          f"{pool.circulating_supply:>10.4f} {marginal(pool):>10.2f}")

    for amount in (50.0, 100.0, 250.0):
        pool, minted, ledgers = curve_buy(pool, "dana", amount, ledgers)
        print(f"  {'dana bonds %-6g' % amount:<26} {pool.reserves[0]:>10.2f} "
              f"{pool.circulating_supply:>10.4f} {marginal(pool):>10.2f}"
              f"   (+{minted:.4f} tokens)")

    held = balance_of(ledgers["ISSUED"], "dana")
    half = held / 2.0
    pool, payout, ledgers = curve_sell(pool, "dana", half, ledgers)
    print(f"  {'dana sells half':<26} {pool.reserves[0]:>10.2f} "
          f"{pool.circulating_supply:>10.4f} {marginal(pool):>10.2f}"
          f"   (-> {payout:.4f} reserve)")

    print("\nTotal exit: every holder sells every token")
    peak = pool.reserves[0]
    for holder in ("dana", "bootstrap"):
        tokens = balance_of(ledgers["ISSUED"], holder)
        if tokens > 0.0:
            pool, payout, ledgers = curve_sell(pool, holder, tokens, ledgers)
            print(f"  {holder:<10} sells {tokens:12.6f} tokens "
                  f"for {payout:12.6f} reserve")
    print(f"\n  residual reserve after the drain: {pool.reserves[0]:.3e}"
          f"  ({pool.reserves[0] / peak:.1e} of the peak {peak:.2f})")
    print("  the curve is solvent: payouts always sum to what was bonded")


if __name__ == "__main__":
    main()
