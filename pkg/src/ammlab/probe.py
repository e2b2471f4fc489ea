"""Behavioral classification of pool specs along twelve design dimensions.

Seven dimensions are measured by black-box trading experiments against the
pool's pricing rule; five are read directly off the pool spec.  Probed
dimensions canonicalize every experiment to signed displacements of one
canonical asset per pricing family:

* conservation curves and price adoption displace token 0 against token 1
  (buys are exact-out, sells exact-in, so a displacement multiset reaches the
  same terminal token-0 balance in any order);
* the market-scoring rule displaces outstanding shares of outcome 0;
* the bonding rule displaces circulating supply.

All mechanism probes run fee-free: they characterize the pricing rule, not the
fee plumbing.  The one exception is path deficiency, which runs at the spec's
own fee rate because the strict form of the property only appears when fees
are retained.  Every probe is deterministic for a fixed (pool spec, dimension,
seed, trials) tuple: the generator is seeded from the seed and the dimension's
position, never from object hashes.

Deviations are reported relative to the pool's characteristic scale (smallest
initial reserve, liquidity parameter b, or circulating supply), trade sizes
are drawn log-uniformly from [1e-4, 1e-1] of that scale, and verdicts require
clear separation: at most 1e-6 to call a dimension invariant, at least 1e-3 to
call it variant, with the gap reported as Indeterminate.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import math
import random
from dataclasses import dataclass
from typing import Sequence

from .core import DepletionError, DomainError
from .curves import (
    CurveSpec,
    ConstantProduct,
    ConstantProductSum,
    ConstantPowerSum,
    ConstantSum,
    Exponential,
    GeometricMean,
    Lmsr,
    PriceAdoption,
    invariant_value,
    lmsr_trade_cost,
    quote_exact_in,
    quote_exact_out,
    spot_price,
)
from .engine import (
    PRICE_ADOPTING_LP_BASED,
    PRICE_DISCOVERING_SUPPLY_SOVEREIGN,
    PoolConfig,
)

DIM_INFORMATION = "Information Incorporation"
DIM_SENSITIVITY = "Liquidity Sensitivity"
DIM_DEFICIENCY = "Path Deficiency"
DIM_INDEPENDENCE = "Path Independence"
DIM_BOUNDING = "Price Bounding"
DIM_DISCOVERY = "Price Discovery"
DIM_PRICE_SOURCE = "Token Price Source"
DIM_TRANSLATION = "Translation Invariance"
DIM_VOLUME = "Volume Dependency"
DIM_TOKENS = "Number of Tokens per Liquidity Pool"
DIM_RISK = "Risk Management"
DIM_LIQUIDITY_SOURCE = "Source of Liquidity"

DIMENSION_ORDER = (
    DIM_INFORMATION,
    DIM_SENSITIVITY,
    DIM_DEFICIENCY,
    DIM_INDEPENDENCE,
    DIM_BOUNDING,
    DIM_DISCOVERY,
    DIM_PRICE_SOURCE,
    DIM_TRANSLATION,
    DIM_VOLUME,
    DIM_TOKENS,
    DIM_RISK,
    DIM_LIQUIDITY_SOURCE,
)

PROBED_DIMENSIONS = (
    DIM_INFORMATION,
    DIM_SENSITIVITY,
    DIM_DEFICIENCY,
    DIM_INDEPENDENCE,
    DIM_BOUNDING,
    DIM_TRANSLATION,
    DIM_VOLUME,
)

STATIC_DIMENSIONS = (
    DIM_DISCOVERY,
    DIM_PRICE_SOURCE,
    DIM_TOKENS,
    DIM_RISK,
    DIM_LIQUIDITY_SOURCE,
)

INDETERMINATE = "Indeterminate"

TOL_INVARIANT = 1e-6
TOL_VARIANT = 1e-3
TOL_DEFICIENCY = 1e-9

DEFAULT_TRIALS = 128
MIN_TRIALS = 100

# log-uniform trade-size bands, relative to the pool's characteristic scale
_SIZE_LO, _SIZE_HI = 1e-4, 1e-1
_WALK_LO, _WALK_HI = 1e-3, 1e-2

CSV_HEADER = ("dimension", "characteristic", "max_deviation", "trials", "tolerance")


@dataclass(frozen=True, slots=True)
class DimensionVerdict:
    """Outcome of classifying one dimension.

    Probed dimensions carry the binding deviation statistic, the trial count,
    and the tolerance it was judged against; dimensions read off the spec
    carry None evidence and zero trials.
    """

    dimension: str
    characteristic: str
    max_deviation: float | None
    trials: int
    tolerance: float | None


@dataclass(frozen=True, slots=True)
class TaxonomyReport:
    """Verdicts for every dimension, in the published taxonomy row order."""

    pool: str
    verdicts: tuple[DimensionVerdict, ...]


# ---------------------------------------------------------------------------
# per-family probe harnesses
# ---------------------------------------------------------------------------


def _draw(rng: random.Random, lo: float, hi: float, scale: float) -> float:
    return scale * math.exp(rng.uniform(math.log(lo), math.log(hi)))


def _shift(before: Sequence[float], after: Sequence[float]) -> float:
    return max(
        abs(b - a) / abs(a) if a != 0.0 else abs(b - a) for a, b in zip(before, after)
    )


class _ConservationProbe:
    """Displaces token 0 against token 1 on a conservation curve."""

    def __init__(self, curve: CurveSpec, reserves: tuple[float, ...]):
        self.curve = curve
        self.state0 = reserves
        self.scale = min(reserves)

    def _swap(self, state, d0: float, d1: float):
        out = list(state)
        out[0] += d0
        out[1] += d1
        return tuple(out)

    def buy(self, state, qty: float):
        dx = quote_exact_out(self.curve, state, 1, 0, qty)
        return self._swap(state, -qty, dx)

    def sell(self, state, qty: float):
        dy = quote_exact_in(self.curve, state, 0, 1, qty)
        return self._swap(state, qty, -dy)

    def can_sell(self, state, qty: float) -> bool:
        return True

    def path_base(self):
        return self.state0

    def spots(self, state) -> tuple[float, ...]:
        return (spot_price(self.curve, state, 0, 1),)

    def basket_cost(self, state, amount: float) -> float:
        total = 1.0  # one unit of the numeraire token 1
        for i in range(len(state)):
            if i != 1:
                total += spot_price(self.curve, state, i, 1)
        return amount * total

    def mean_price(self, state, volume: float) -> float:
        return quote_exact_in(self.curve, state, 0, 1, volume) / volume

    def tenx(self):
        return _ConservationProbe(self.curve, tuple(10.0 * r for r in self.state0))

    def walk_up(self, state, fraction: float):
        return self.buy(state, fraction * state[0])

    def walk_down(self, state, fraction: float):
        dy = fraction * state[1]
        dx = quote_exact_out(self.curve, state, 0, 1, dy)
        return self._swap(state, dx, -dy)

    def fee_buy(self, state, qty: float, fee: float):
        dx = quote_exact_out(self.curve, state, 1, 0, qty) / (1.0 - fee)
        return self._swap(state, -qty, dx)

    def fee_sell(self, state, qty: float, fee: float):
        dy = quote_exact_in(self.curve, state, 0, 1, qty * (1.0 - fee))
        return self._swap(state, qty, -dy)

    def deficiency_value(self, state) -> float:
        return invariant_value(self.curve, state)

    def deficiency_ref(self) -> float:
        return invariant_value(self.curve, self.state0)


class _AdoptionProbe:
    """Displaces token 0 against token 1 under an adopted external price."""

    def __init__(self, curve: PriceAdoption, reserves: tuple[float, ...], price: float):
        self.curve = curve
        self.state0 = (reserves[0], reserves[1])
        self.price = price
        self.scale = min(curve.target_reserves)

    def buy(self, state, qty: float):
        dx = quote_exact_out(self.curve, state, 1, 0, qty, self.price)
        return (state[0] - qty, state[1] + dx)

    def sell(self, state, qty: float):
        dy = quote_exact_in(self.curve, state, 0, 1, qty, self.price)
        return (state[0] + qty, state[1] - dy)

    def can_sell(self, state, qty: float) -> bool:
        return True

    def path_base(self):
        return self.state0

    def spots(self, state) -> tuple[float, ...]:
        bid = spot_price(self.curve, state, 0, 1, self.price)
        ask = 1.0 / spot_price(self.curve, state, 1, 0, self.price)
        return (bid, ask)

    def basket_cost(self, state, amount: float) -> float:
        k, t0 = self.curve.k, self.curve.target_reserves[0]
        mid = self.price * (1.0 + k * (t0 - state[0]) / t0)
        return amount * (1.0 + mid)

    def mean_price(self, state, volume: float) -> float:
        return quote_exact_in(self.curve, state, 0, 1, volume, self.price) / volume

    def tenx(self):
        scaled = dataclasses.replace(
            self.curve,
            target_reserves=tuple(10.0 * t for t in self.curve.target_reserves),
        )
        return _AdoptionProbe(
            scaled, tuple(10.0 * r for r in self.state0), self.price
        )

    def walk_up(self, state, fraction: float):
        return self.buy(state, fraction * state[0])

    def walk_down(self, state, fraction: float):
        k, t0 = self.curve.k, self.curve.target_reserves[0]
        if k > 0.0:
            # walk toward the reserve level where the bid floors at zero
            span = t0 * (1.0 + 1.0 / k) - state[0]
            if span > 0.0:
                try:
                    return self.sell(state, fraction * span)
                except DepletionError:
                    pass  # the quote reserve runs out first; drain that instead
        dy = fraction * state[1]
        dx = quote_exact_out(self.curve, state, 0, 1, dy, self.price)
        return (state[0] + dx, state[1] - dy)

    def fee_buy(self, state, qty: float, fee: float):
        dx = quote_exact_out(self.curve, state, 1, 0, qty, self.price) / (1.0 - fee)
        return (state[0] - qty, state[1] + dx)

    def fee_sell(self, state, qty: float, fee: float):
        dy = quote_exact_in(self.curve, state, 0, 1, qty * (1.0 - fee), self.price)
        return (state[0] + qty, state[1] - dy)

    def deficiency_value(self, state) -> float:
        return state[1] + self.price * state[0]

    def deficiency_ref(self) -> float:
        return self.deficiency_value(self.state0)


class _ScoringProbe:
    """Displaces outstanding shares of outcome 0 against collateral."""

    def __init__(self, curve: Lmsr, reserves: tuple[float, ...]):
        self.curve = curve
        self.state0 = reserves  # (collateral held, *outstanding shares)
        self.scale = curve.b

    def _q(self, state) -> tuple[float, ...]:
        return state[1:]

    def _apply(self, state, dq: Sequence[float]):
        cost = lmsr_trade_cost(self.curve.b, self._q(state), dq)
        q = tuple(v + d for v, d in zip(self._q(state), dq))
        return (state[0] + cost, *q)

    def _delta(self, qty: float) -> tuple[float, ...]:
        return (qty,) + (0.0,) * (len(self.state0) - 2)

    def buy(self, state, qty: float):
        return self._apply(state, self._delta(qty))

    def sell(self, state, qty: float):
        return self._apply(state, self._delta(-qty))

    def can_sell(self, state, qty: float) -> bool:
        return state[1] >= qty

    def path_base(self):
        # sell headroom for outcome 0 in every permutation of a displacement set
        return self.buy(self.state0, self.curve.b)

    def spots(self, state) -> tuple[float, ...]:
        return (spot_price(self.curve, self._q(state), 0, None),)

    def basket_cost(self, state, amount: float) -> float:
        n = len(self.state0) - 1
        return lmsr_trade_cost(self.curve.b, self._q(state), (amount,) * n)

    def mean_price(self, state, volume: float) -> float:
        return lmsr_trade_cost(self.curve.b, self._q(state), self._delta(volume)) / volume

    def tenx(self):
        scaled = dataclasses.replace(self.curve, b=10.0 * self.curve.b)
        return _ScoringProbe(scaled, tuple(10.0 * v for v in self.state0))

    def walk_up(self, state, fraction: float):
        return self.buy(state, 2.0 * self.curve.b / (1.0 - fraction) * fraction)

    def walk_down(self, state, fraction: float):
        qty = 2.0 * self.curve.b / (1.0 - fraction) * fraction
        dq = (0.0,) + (qty,) * (len(self.state0) - 2)
        return self._apply(state, dq)

    def fee_buy(self, state, qty: float, fee: float):
        cost = lmsr_trade_cost(self.curve.b, self._q(state), self._delta(qty))
        q = self._q(self._apply(state, self._delta(qty)))
        return (state[0] + cost / (1.0 - fee), *q)

    def fee_sell(self, state, qty: float, fee: float):
        raw = -lmsr_trade_cost(self.curve.b, self._q(state), self._delta(-qty))
        q = self._q(self._apply(state, self._delta(-qty)))
        return (state[0] - raw * (1.0 - fee), *q)

    def deficiency_value(self, state) -> float:
        return state[0] - invariant_value(self.curve, self._q(state))

    def deficiency_ref(self) -> float:
        return self.curve.b


class _BondingProbe:
    """Displaces circulating supply against the bonded reserve."""

    def __init__(self, curve: Exponential, bonded: float):
        if not bonded > 0.0:
            raise DomainError(
                f"probing a bonding pool requires a positive reserve: {bonded}"
            )
        self.curve = curve
        supply = (curve.c * bonded) ** (1.0 / curve.kappa)
        self.state0 = (bonded, supply)
        self.scale = supply

    def buy(self, state, qty: float):
        cost = quote_exact_out(self.curve, state, 0, 1, qty)
        return (state[0] + cost, state[1] + qty)

    def sell(self, state, qty: float):
        payout = quote_exact_in(self.curve, state, 1, 0, qty)
        return (state[0] - payout, state[1] - qty)

    def can_sell(self, state, qty: float) -> bool:
        return state[1] > qty

    def path_base(self):
        return self.state0

    def spots(self, state) -> tuple[float, ...]:
        return (spot_price(self.curve, state, 1, 0),)

    def basket_cost(self, state, amount: float) -> float:
        return amount * (1.0 + self.spots(state)[0])

    def mean_price(self, state, volume: float) -> float:
        return quote_exact_out(self.curve, state, 0, 1, volume) / volume

    def tenx(self):
        return _BondingProbe(self.curve, 10.0 * self.state0[0])

    def walk_up(self, state, fraction: float):
        target = state[1] / (1.0 - fraction)
        return self.buy(state, target - state[1])

    def walk_down(self, state, fraction: float):
        return self.sell(state, fraction * state[1])

    def fee_buy(self, state, qty: float, fee: float):
        # the fee is charged on top of the bond cost and kept outside it
        return self.buy(state, qty)

    def fee_sell(self, state, qty: float, fee: float):
        # the fee is withheld from the payout and kept outside the reserve
        return self.sell(state, qty)

    def deficiency_value(self, state) -> float:
        return state[0] - state[1] ** self.curve.kappa / self.curve.c

    def deficiency_ref(self) -> float:
        return self.state0[0]


def _build_probe(config: PoolConfig):
    if not config.reserves:
        raise DomainError("probing requires a pool spec with initial reserves")
    curve = config.curve
    if isinstance(curve, PriceAdoption):
        if config.oracle_price is None:
            raise DomainError("probing a price-adopting pool requires an oracle price")
        return _AdoptionProbe(curve, config.reserves, config.oracle_price)
    if isinstance(curve, Lmsr):
        return _ScoringProbe(curve, config.reserves)
    if isinstance(curve, Exponential):
        return _BondingProbe(curve, config.reserves[0])
    return _ConservationProbe(curve, config.reserves)


def _prime(probe, rng: random.Random):
    """Walk to a randomized nearby state without drifting far from start."""
    state = probe.state0
    for _ in range(rng.randint(1, 4)):
        qty = _draw(rng, _WALK_LO, _WALK_HI, probe.scale)
        if rng.random() < 0.5 and probe.can_sell(state, qty):
            state = probe.sell(state, qty)
        else:
            state = probe.buy(state, qty)
    return state


# ---------------------------------------------------------------------------
# probe procedures
# ---------------------------------------------------------------------------


def _classify_variant(deviation: float, variant: str, invariant: str) -> str:
    if deviation > TOL_VARIANT:
        return variant
    if deviation < TOL_INVARIANT:
        return invariant
    return INDETERMINATE


def _probe_information(probe, rng, trials):
    worst = 0.0
    for _ in range(trials):
        state = _prime(probe, rng)
        qty = _draw(rng, _SIZE_LO, _SIZE_HI, probe.scale)
        worst = max(worst, _shift(probe.spots(state), probe.spots(probe.buy(state, qty))))
    return _classify_variant(worst, "Incorporative", "Non-incorporative"), worst


def _probe_sensitivity(probe, rng, trials):
    big = probe.tenx()
    worst = 0.0
    for _ in range(trials):
        qty = _draw(rng, _SIZE_LO, _SIZE_HI, probe.scale)
        impact_base = _shift(probe.spots(probe.state0), probe.spots(probe.buy(probe.state0, qty)))
        impact_big = _shift(big.spots(big.state0), big.spots(big.buy(big.state0, qty)))
        worst = max(worst, abs(impact_base - impact_big))
    return _classify_variant(worst, "Sensitive", "Insensitive"), worst


def _probe_deficiency(probe, rng, trials, fee):
    ref = probe.deficiency_ref()
    floor = math.inf
    for _ in range(trials):
        state = _prime(probe, rng)
        qty = _draw(rng, _WALK_LO, _WALK_HI, probe.scale)
        bought = probe.fee_buy(state, qty, fee)
        sold = probe.fee_sell(bought, qty, fee)
        w0 = probe.deficiency_value(state)
        w1 = probe.deficiency_value(bought)
        w2 = probe.deficiency_value(sold)
        floor = min(floor, (w1 - w0) / ref, (w2 - w1) / ref)
    if floor > TOL_DEFICIENCY:
        label = "Strictly Deficient"
    elif floor >= -TOL_DEFICIENCY:
        label = "Deficient"
    else:
        label = INDETERMINATE
    return label, floor


def _probe_independence(probe, rng, trials):
    base = probe.path_base()
    worst = 0.0
    for _ in range(trials):
        ops = [
            (rng.random() < 0.5, _draw(rng, _SIZE_LO, _SIZE_HI, probe.scale))
            for _ in range(rng.randint(4, 8))
        ]
        shuffled = list(ops)
        rng.shuffle(shuffled)
        terminals = []
        for order in (ops, shuffled):
            state = base
            for is_buy, qty in order:
                state = probe.buy(state, qty) if is_buy else probe.sell(state, qty)
            terminals.append(state)
        a, b = terminals
        worst = max(worst, max(abs(x - y) for x, y in zip(a, b)) / probe.scale)
    return _classify_variant(worst, "Path Dependent", "Path Independent"), worst


def _probe_bounding(probe, rng, trials):
    start = probe.spots(probe.state0)
    up = down = 0.0
    for _ in range(trials):
        fraction = rng.uniform(0.90, 0.99)
        up = max(up, _shift(start, probe.spots(probe.walk_up(probe.state0, fraction))))
        down = max(
            down, _shift(start, probe.spots(probe.walk_down(probe.state0, fraction)))
        )
    responds_up, flat_up = up > TOL_VARIANT, up < TOL_INVARIANT
    responds_dn, flat_dn = down > TOL_VARIANT, down < TOL_INVARIANT
    if responds_up and responds_dn:
        label = "Bounded from Above and Below"
    elif flat_up and flat_dn:
        label = "Bounded from Below"
    elif responds_up and flat_dn:
        label = "Bounded from Above"
    elif responds_dn and flat_up:
        label = "Bounded from Below"
    else:
        label = INDETERMINATE
    return label, max(up, down)


def _probe_translation(probe, rng, trials):
    amount = 0.01 * probe.scale
    reference = probe.basket_cost(probe.state0, amount)
    worst = 0.0
    for _ in range(trials):
        state = _prime(probe, rng)
        cost = probe.basket_cost(state, amount)
        worst = max(worst, abs(cost - reference) / abs(reference))
    return (
        _classify_variant(worst, "Non-translation Invariant", "Translation Invariant"),
        worst,
    )


def _probe_volume(probe, rng, trials):
    worst = 0.0
    for _ in range(trials):
        state = _prime(probe, rng)
        volume = _draw(rng, _SIZE_LO, _SIZE_HI / 10.0, probe.scale)
        small = probe.mean_price(state, volume)
        large = probe.mean_price(state, 10.0 * volume)
        worst = max(worst, abs(small - large) / abs(small))
    return _classify_variant(worst, "Volume-dependent", "Volume-independent"), worst


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------


def run_dimension_probe(
    config: PoolConfig,
    dimension: str,
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
) -> DimensionVerdict:
    """Measure one probeable dimension of a pool spec."""
    if dimension not in DIMENSION_ORDER:
        raise DomainError(f"unknown taxonomy dimension: {dimension!r}")
    if dimension not in PROBED_DIMENSIONS:
        raise DomainError(
            f"dimension {dimension!r} is read off the pool spec, not probed"
        )
    if trials < MIN_TRIALS:
        raise DomainError(f"at least {MIN_TRIALS} trials required: {trials}")

    probe = _build_probe(config)
    rng = random.Random(seed * 7919 + DIMENSION_ORDER.index(dimension))
    tolerance = TOL_VARIANT
    if dimension == DIM_INFORMATION:
        label, deviation = _probe_information(probe, rng, trials)
    elif dimension == DIM_SENSITIVITY:
        label, deviation = _probe_sensitivity(probe, rng, trials)
    elif dimension == DIM_DEFICIENCY:
        label, deviation = _probe_deficiency(probe, rng, trials, config.fee_rate)
        tolerance = TOL_DEFICIENCY
    elif dimension == DIM_INDEPENDENCE:
        label, deviation = _probe_independence(probe, rng, trials)
    elif dimension == DIM_BOUNDING:
        label, deviation = _probe_bounding(probe, rng, trials)
    elif dimension == DIM_TRANSLATION:
        label, deviation = _probe_translation(probe, rng, trials)
    else:
        label, deviation = _probe_volume(probe, rng, trials)
    return DimensionVerdict(dimension, label, deviation, trials, tolerance)


_DISCOVERY_LABELS = {
    ConstantProduct: "Constant-product",
    GeometricMean: "Geometric Mean",
    ConstantSum: "Constant-sum",
    ConstantProductSum: "Constant-product-sum",
    ConstantPowerSum: "Constant-power-sum",
    Lmsr: "Logarithmic Market Scoring",
    PriceAdoption: "Price Adoption",
    Exponential: "Exponential Function",
}


def _static_characteristic(config: PoolConfig, dimension: str) -> str:
    if dimension == DIM_DISCOVERY:
        return _DISCOVERY_LABELS[type(config.curve)]
    if dimension == DIM_PRICE_SOURCE:
        return "External" if config.archetype == PRICE_ADOPTING_LP_BASED else "Internal"
    if dimension == DIM_TOKENS:
        return "Two" if len(config.tokens) == 2 else "Three or More"
    if dimension == DIM_RISK:
        if isinstance(config.curve, PriceAdoption) and config.curve.k > 0.0:
            return "Imbalance Surcharges"
        return "No Risk Management"
    if dimension == DIM_LIQUIDITY_SOURCE:
        return (
            "Internal"
            if config.archetype == PRICE_DISCOVERING_SUPPLY_SOVEREIGN
            else "External"
        )
    raise DomainError(f"not a static dimension: {dimension!r}")


def classify(
    config: PoolConfig,
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
    pool_name: str | None = None,
) -> TaxonomyReport:
    """Classify a pool spec along every taxonomy dimension."""
    verdicts = []
    for dimension in DIMENSION_ORDER:
        if dimension in PROBED_DIMENSIONS:
            verdicts.append(run_dimension_probe(config, dimension, seed, trials))
        else:
            verdicts.append(
                DimensionVerdict(
                    dimension, _static_characteristic(config, dimension), None, 0, None
                )
            )
    name = pool_name or f"{config.archetype}:{type(config.curve).__name__}"
    return TaxonomyReport(pool=name, verdicts=tuple(verdicts))


def report_to_csv(report: TaxonomyReport) -> str:
    """Render a report as CSV, one row per dimension in taxonomy order."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for v in report.verdicts:
        writer.writerow(
            [
                v.dimension,
                v.characteristic,
                "" if v.max_deviation is None else repr(v.max_deviation),
                str(v.trials),
                "" if v.tolerance is None else repr(v.tolerance),
            ]
        )
    return buffer.getvalue()
