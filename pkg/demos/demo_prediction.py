"""A prediction-market lifecycle on the scoring-rule pool.

Uses the built-in three-outcome market: traders buy outcome shares with
collateral, prices shift toward what the crowd is buying while always
summing to one, and resolution pays a unit of collateral per winning share
and sweeps the residual subsidy back to the creator.

Run:  python3 demos/demo_prediction.py
"""

from ammlab.core import balance_of
from ammlab.engine import EXACT_IN, TradeOrder, execute_swap, load_pool, resolve_prediction
from ammlab.core import ledger_mint
from ammlab.curves import spot_price


def prices(pool):
    return [spot_price(pool.curve, pool.reserves[1:], i, None) for i in range(3)]


def show(label, pool):
    p = prices(pool)
    print(f"  {label:<34} p = ({p[0]:.4f}, {p[1]:.4f}, {p[2]:.4f})  sum {sum(p):.12f}")


def main():
    pool, ledgers = load_pool("augur-like")
    for trader, cash in (("ada", 200.0), ("ben", 200.0), ("cyn", 200.0)):
        ledgers["CASH"] = ledger_mint(ledgers["CASH"], trader, cash)

    print("Three-outcome market, liquidity parameter b=100, subsidy 109.86")
    print("=" * 64)
    show("opening (uniform)", pool)

    pool, r1, ledgers = execute_swap(
        pool, TradeOrder("ada", "CASH", "OUT0", 60.0, EXACT_IN), ledgers
    )
    show("ada spends 60 CASH on OUT0", pool)

    pool, r2, ledgers = execute_swap(
        pool, TradeOrder("ben", "CASH", "OUT1", 40.0, EXACT_IN), ledgers
    )
    show("ben spends 40 CASH on OUT1", pool)

    pool, r3, ledgers = execute_swap(
        pool, TradeOrder("cyn", "CASH", "OUT0", 80.0, EXACT_IN), ledgers
    )
    show("cyn spends 80 CASH on OUT0", pool)

    print(f"\n  ada holds  {balance_of(ledgers['OUT0'], 'ada'):8.4f} OUT0")
    print(f"  ben holds  {balance_of(ledgers['OUT1'], 'ben'):8.4f} OUT1")
    print(f"  cyn holds  {balance_of(ledgers['OUT0'], 'cyn'):8.4f} OUT0")
    print(f"  collateral escrowed in the pool: "
          f"{balance_of(ledgers['CASH'], pool.account):.4f}")

    creator_before = balance_of(ledgers["CASH"], "creator")
    pool, ledgers = resolve_prediction(pool, 0, ledgers)  # OUT0 wins
    print("\nOutcome 0 wins; every OUT0 share pays 1 CASH")
    for trader in ("ada", "ben", "cyn"):
        print(f"  {trader} ends with {balance_of(ledgers['CASH'], trader):9.4f} CASH")
    swept = balance_of(ledgers["CASH"], "creator") - creator_before
    print(f"  leftover subsidy swept to the creator: {swept:.4f} CASH")
    print(f"  pool closed: {pool.closed}")


if __name__ == "__main__":
    main()
