"""Divergence loss: why passive liquidity underperforms holding.

A zero-fee constant-product pool starts balanced at price 1.  The external
reference price doubles, an arbitrageur immediately realigns the pool, and
the liquidity providers end up holding a basket worth 2*sqrt(2)/3 - 1 =
-5.719% less than if they had simply kept their initial tokens.  The same
scenario is then repeated across a range of price moves.

Run:  python3 demos/demo_divergence.py
"""

import math
import os
import tempfile

from ammlab.sim import metrics_to_csv, parse_price_series, parse_scenario, run_scenario

POOL_TEXT = """
archetype = price-discovering-lp-based
curve = constant-product
tokens = T0, T1
reserves = 100, 100
fee = 0
"""


def run_move(pool_path, price):
    scenario = parse_scenario(
        f"pool {pool_path}\n"
        "account arb T0 1000000\n"
        "account arb T1 1000000\n"
        "1 arb arb\n"
    )
    series = parse_price_series(f"step,price\n0,1.0\n1,{price!r}\n")
    return run_scenario(scenario, price_series=series)


def closed_form(ratio):
    return 2.0 * math.sqrt(ratio) / (1.0 + ratio) - 1.0


def main():
    handle = tempfile.NamedTemporaryFile(
        "w", suffix=".pool", delete=False, encoding="utf-8"
    )
    handle.write(POOL_TEXT)
    handle.close()
    try:
        print("Price doubles: the full metrics row")
        print("-" * 36)
        metrics = run_move(handle.name, 2.0)
        print(metrics_to_csv(metrics))
        record = metrics.records[-1]
        print(f"measured divergence loss: {record.divergence_loss * 100.0:+.4f}%")
        print(f"closed form 2*sqrt(2)/3-1: {closed_form(2.0) * 100.0:+.4f}%")

        print("\nDivergence loss across price moves (closed form in parentheses)")
        print("-" * 64)
        for ratio in (0.25, 0.5, 0.8, 1.0, 1.25, 2.0, 4.0, 10.0):
            metrics = run_move(handle.name, ratio)
            measured = metrics.records[-1].divergence_loss
            print(
                f"  price x{ratio:<5g} loss {measured * 100.0:+8.4f}%"
                f"   ({closed_form(ratio) * 100.0:+8.4f}%)"
            )
        print("\nAny move away from the entry price loses; only fees compensate.")
    finally:
        os.unlink(handle.name)


if __name__ == "__main__":
    main()
