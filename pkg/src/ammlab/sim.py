"""Scenario simulator: reference price series, scripted events, arbitrageur.

A scenario is a small text file: a preamble naming the pool, funding
accounts, and fixing a seed, followed by one event per step.  Steps are
strictly increasing; the reference price for a step is the latest series
entry at or before it (undefined before the first entry).

The arbitrageur is curve-agnostic: it searches trade sizes numerically
(golden-section over a doubling-expanded bracket) against the engine's own
fee-inclusive quotes and trades only when the best marked profit is
strictly positive.  After an arb step on a two-token pool the spot price
therefore sits within the no-trade fee band around the reference:
|spot - reference| / max(spot, reference) <= fee.

Metrics mark portfolios to the reference: the risky asset (token0 for
conservation and price-adoption pools, the issued token for
supply-sovereign pools) is valued at the reference price and everything
else at par.  Cells that need an undefined reference are left empty.
Divergence loss compares the pool's current holdings to a buy-and-hold
baseline that grows with deposits and shrinks pro rata with withdrawals,
so a deposit-only scenario reports exactly zero.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

from .core import (
    AmmError,
    DomainError,
    Ledger,
    UnsupportedOperation,
    ledger_mint,
    new_ledger,
)
from .curves import Exponential, Lmsr, PriceAdoption, invariant_value, spot_price
from .engine import (
    EXACT_IN,
    EXACT_OUT,
    PRICE_DISCOVERING_SUPPLY_SOVEREIGN,
    Ledgers,
    PoolState,
    TradeOrder,
    TradeReceipt,
    deposit_liquidity,
    execute_swap,
    load_pool,
    quote,
    resolve_prediction,
    set_oracle_price,
    withdraw_liquidity,
)

PRICE_HEADER = "step,price"
METRICS_HEADER = (
    "step",
    "event",
    "spot",
    "reference",
    "tracking_error",
    "invariant",
    "lp_value",
    "divergence_loss",
    "fees_cum",
)

EVENT_VERBS = frozenset({"trade", "deposit", "withdraw", "oracle", "arb", "resolve"})

CREATOR_ACCOUNT = "creator"

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_SEARCH_TOL = 1e-9
_MAX_EXPANSIONS = 200


# ---------------------------------------------------------------------------
# reference price series
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class PriceSeries:
    """Step-indexed reference prices; values carry forward between steps."""

    entries: tuple[tuple[int, float], ...]

    def at(self, step: int) -> float | None:
        """Latest price at or before `step`, or None before the first entry."""
        index = bisect_right(self.entries, step, key=lambda e: e[0])
        return None if index == 0 else self.entries[index - 1][1]


def parse_price_series(text: str) -> PriceSeries:
    """Parse `step,price` CSV text; steps strictly increasing, prices > 0."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != PRICE_HEADER:
        raise DomainError(f"price series line 1: expected header {PRICE_HEADER!r}")
    entries: list[tuple[int, float]] = []
    for number, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise DomainError(f"price series line {number}: expected step,price")
        try:
            step = int(parts[0])
            price = float(parts[1])
        except ValueError:
            raise DomainError(
                f"price series line {number}: cannot parse {line!r}"
            ) from None
        if not (math.isfinite(price) and price > 0.0):
            raise DomainError(f"price series line {number}: price must be > 0")
        if entries and step <= entries[-1][0]:
            raise DomainError(
                f"price series line {number}: steps must strictly increase"
            )
        entries.append((step, price))
    return PriceSeries(entries=tuple(entries))


def load_price_series(path: str) -> PriceSeries:
    with open(path, encoding="utf-8") as handle:
        return parse_price_series(handle.read())


# ---------------------------------------------------------------------------
# scenario scripts
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ScenarioEvent:
    step: int
    verb: str
    args: tuple[str, ...]
    line: int


@dataclass(frozen=True, slots=True)
class Scenario:
    pool_source: str
    endowments: tuple[tuple[str, str, float], ...]
    seed: int
    events: tuple[ScenarioEvent, ...]


def _parse_float(token: str, line: int, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise DomainError(f"scenario line {line}: bad {what} {token!r}") from None
    if not math.isfinite(value):
        raise DomainError(f"scenario line {line}: bad {what} {token!r}")
    return value


_EVENT_ARITY = {
    "trade": (4, 4),
    "deposit": (2, None),
    "withdraw": (2, 2),
    "oracle": (1, 1),
    "arb": (1, 1),
    "resolve": (1, 1),
}

# argument positions holding account names, per verb
_ACCOUNT_ARG = {"trade": 0, "deposit": 0, "withdraw": 0, "arb": 0}


def parse_scenario(text: str) -> Scenario:
    """Parse a scenario script; see the module docstring for the format."""
    pool_source: str | None = None
    seed = 0
    seed_seen = False
    endowments: list[tuple[str, str, float]] = []
    accounts: set[str] = {CREATOR_ACCOUNT}
    events: list[ScenarioEvent] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")

        if head == "pool":
            if pool_source is not None:
                raise DomainError(f"scenario line {number}: duplicate pool directive")
            if not rest.strip():
                raise DomainError(f"scenario line {number}: pool needs a source")
            pool_source = rest.strip()
            continue
        if head == "account":
            parts = rest.split()
            if len(parts) != 3:
                raise DomainError(
                    f"scenario line {number}: expected account <name> <token> <amount>"
                )
            amount = _parse_float(parts[2], number, "amount")
            if amount < 0.0:
                raise DomainError(f"scenario line {number}: negative endowment")
            endowments.append((parts[0], parts[1], amount))
            accounts.add(parts[0])
            continue
        if head == "seed":
            if seed_seen:
                raise DomainError(f"scenario line {number}: duplicate seed directive")
            try:
                seed = int(rest.strip())
            except ValueError:
                raise DomainError(
                    f"scenario line {number}: bad seed {rest.strip()!r}"
                ) from None
            seed_seen = True
            continue

        try:
            step = int(head)
        except ValueError:
            raise DomainError(
                f"scenario line {number}: expected a directive or a step number, "
                f"got {head!r}"
            ) from None
        parts = rest.split()
        if not parts:
            raise DomainError(f"scenario line {number}: step {step} has no verb")
        verb, args = parts[0], tuple(parts[1:])
        if verb not in EVENT_VERBS:
            raise DomainError(f"scenario line {number}: unknown verb {verb!r}")
        low, high = _EVENT_ARITY[verb]
        if len(args) < low or (high is not None and len(args) > high):
            raise DomainError(
                f"scenario line {number}: wrong argument count for {verb!r}"
            )
        if events and step <= events[-1].step:
            raise DomainError(
                f"scenario line {number}: steps must strictly increase"
            )
        account_pos = _ACCOUNT_ARG.get(verb)
        if account_pos is not None and args[account_pos] not in accounts:
            raise DomainError(
                f"scenario line {number}: undeclared account {args[account_pos]!r}"
            )
        if verb == "trade":
            _parse_float(args[3], number, "amount")
        elif verb == "deposit":
            for token in args[1:]:
                _parse_float(token, number, "amount")
        elif verb == "withdraw":
            _parse_float(args[1], number, "share amount")
        elif verb == "oracle":
            price = _parse_float(args[0], number, "price")
            if not price > 0.0:
                raise DomainError(f"scenario line {number}: price must be > 0")
        events.append(ScenarioEvent(step=step, verb=verb, args=args, line=number))

    if pool_source is None:
        raise DomainError("scenario has no pool directive")
    return Scenario(
        pool_source=pool_source,
        endowments=tuple(endowments),
        seed=seed,
        events=tuple(events),
    )


def load_scenario(path: str) -> Scenario:
    with open(path, encoding="utf-8") as handle:
        return parse_scenario(handle.read())


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class MetricsRecord:
    """One row of observations, taken after the event executed."""

    step: int
    event: str
    spot: float | None
    reference: float | None
    tracking_error: float | None
    invariant: float | None
    lp_value: float | None
    divergence_loss: float | None
    fees_cum: float | None


@dataclass(frozen=True, slots=True)
class Metrics:
    records: tuple[MetricsRecord, ...]


def metrics_to_csv(metrics: Metrics) -> str:
    """Render metrics as CSV; undefined cells are empty strings."""
    lines = [",".join(METRICS_HEADER)]
    for record in metrics.records:
        cells = [str(record.step), record.event]
        for value in (
            record.spot,
            record.reference,
            record.tracking_error,
            record.invariant,
            record.lp_value,
            record.divergence_loss,
            record.fees_cum,
        ):
            cells.append("" if value is None else repr(value))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


class ScenarioError(AmmError):
    """An event failed; carries the failing index and the metrics so far."""

    def __init__(self, message: str, event_index: int, metrics: Metrics) -> None:
        super().__init__(message)
        self.event_index = event_index
        self.metrics = metrics


# ---------------------------------------------------------------------------
# arbitrageur
# ---------------------------------------------------------------------------


def _golden_max(profit, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Maximize a unimodal function on [lo, hi]; returns (argmax, max)."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = profit(c), profit(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = profit(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = profit(d)
    x = (a + b) / 2.0
    return x, profit(x)


def _best_size(profit, cap: float, tol: float, start: float) -> tuple[float, float]:
    """Expand a bracket by doubling, then refine with golden section."""
    if not cap > 0.0:
        return 0.0, -math.inf
    hi = min(cap, max(tol, start))
    best = profit(hi)
    for _ in range(_MAX_EXPANSIONS):
        if hi >= cap:
            break
        grown = min(cap, hi * 2.0)
        value = profit(grown)
        if value < best and value != -math.inf:
            hi = grown  # keep one step past the peak inside the bracket
            break
        if value == -math.inf:
            break
        hi, best = grown, value
    return _golden_max(profit, 0.0, hi, tol)


def _risky_index(pool: PoolState) -> int:
    if pool.archetype == PRICE_DISCOVERING_SUPPLY_SOVEREIGN:
        return 1
    return 0


def arbitrage_step(
    pool: PoolState,
    reference_price: float,
    arb_account: str,
    ledgers: Ledgers,
) -> tuple[PoolState, Ledgers, TradeReceipt | None]:
    """Trade the pool toward the reference price if profitable.

    Searches both directions for the trade size with the highest profit at
    reference marks (risky asset valued at `reference_price`, the other
    token at par) and executes it only when the maximum is strictly
    positive.  Works on any two-token pool; prediction markets have no
    single risky asset and are rejected.
    """
    if pool.closed:
        raise UnsupportedOperation("pool is closed")
    if isinstance(pool.curve, Lmsr):
        raise UnsupportedOperation(
            "arbitrage needs a two-token pool, not a prediction market"
        )
    if not (math.isfinite(reference_price) and reference_price > 0.0):
        raise DomainError(f"reference price must be > 0: {reference_price}")

    risky = _risky_index(pool)
    risky_token = pool.tokens[risky]
    numeraire_token = pool.tokens[1 - risky]
    if pool.archetype == PRICE_DISCOVERING_SUPPLY_SOVEREIGN:
        held = pool.circulating_supply
        scale = max(held, 1.0)
    else:
        held = pool.reserves[risky]
        scale = held
    tol = _SEARCH_TOL * scale

    def buy_profit(amount: float) -> float:
        if not amount > 0.0:
            return 0.0
        order = TradeOrder(arb_account, numeraire_token, risky_token, amount, EXACT_OUT)
        try:
            return amount * reference_price - quote(pool, order).amount_in
        except AmmError:
            return -math.inf

    def sell_profit(amount: float) -> float:
        if not amount > 0.0:
            return 0.0
        order = TradeOrder(arb_account, risky_token, numeraire_token, amount, EXACT_IN)
        try:
            return quote(pool, order).amount_out - amount * reference_price
        except AmmError:
            return -math.inf

    if pool.archetype == PRICE_DISCOVERING_SUPPLY_SOVEREIGN:
        buy_cap = 1e15 * scale  # minting is unbounded
    else:
        buy_cap = pool.reserves[risky] * (1.0 - 1e-9)
    sell_cap = held * (1.0 - 1e-12) if risky == 1 else 1e15 * scale

    start = 1e-6 * scale
    buy_size, buy_value = _best_size(buy_profit, buy_cap, tol, start)
    sell_size, sell_value = _best_size(sell_profit, sell_cap, tol, start)

    if max(buy_value, sell_value) <= 0.0:
        return pool, ledgers, None
    if buy_value >= sell_value:
        order = TradeOrder(
            arb_account, numeraire_token, risky_token, buy_size, EXACT_OUT
        )
    else:
        order = TradeOrder(
            arb_account, risky_token, numeraire_token, sell_size, EXACT_IN
        )
    pool, receipt, ledgers = execute_swap(pool, order, ledgers)
    return pool, ledgers, receipt


# ---------------------------------------------------------------------------
# scenario execution
# ---------------------------------------------------------------------------


def _resolve_outcome_index(pool: PoolState, token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        pass
    if token in pool.tokens[1:]:
        return pool.tokens.index(token) - 1
    raise DomainError(f"scenario line {line}: unknown outcome {token!r}")


def _is_lp_pool(pool: PoolState) -> bool:
    if pool.archetype == PRICE_DISCOVERING_SUPPLY_SOVEREIGN:
        return False
    return not isinstance(pool.curve, Lmsr)


def _observe_spot(pool: PoolState) -> float | None:
    try:
        if isinstance(pool.curve, Lmsr):
            return spot_price(pool.curve, pool.reserves[1:], 0, None)
        if isinstance(pool.curve, Exponential):
            if not pool.circulating_supply > 0.0:
                return None
            state = (pool.reserves[0], pool.circulating_supply)
            return spot_price(pool.curve, state, 1, 0)
        if isinstance(pool.curve, PriceAdoption):
            if pool.oracle_price is None:
                return None
            return spot_price(pool.curve, pool.reserves, 0, 1, pool.oracle_price)
        return spot_price(pool.curve, pool.reserves, 0, 1)
    except AmmError:
        return None


def _observe_invariant(pool: PoolState) -> float | None:
    try:
        if isinstance(pool.curve, Lmsr):
            return invariant_value(pool.curve, pool.reserves[1:])
        if isinstance(pool.curve, Exponential):
            state = (pool.reserves[0], pool.circulating_supply)
            return invariant_value(pool.curve, state)
        if isinstance(pool.curve, PriceAdoption):
            return None
        return invariant_value(pool.curve, pool.reserves)
    except AmmError:
        return None


def _mark(pool: PoolState, amounts, reference: float | None) -> float | None:
    """Value a token vector at the reference; None when that needs an
    undefined reference."""
    risky = _risky_index(pool)
    value = 0.0
    for index, amount in enumerate(amounts):
        if index == risky and amount != 0.0:
            if reference is None:
                return None
            value += amount * reference
        elif index != risky:
            value += amount
    return value


def _observe(
    pool: PoolState,
    event: ScenarioEvent,
    reference: float | None,
    hold: list[float],
    fees_vector,
) -> MetricsRecord:
    closed = pool.closed
    spot = None if closed else _observe_spot(pool)
    invariant = None if closed else _observe_invariant(pool)
    tracking = None
    if spot is not None and reference is not None:
        tracking = abs(spot - reference) / reference
    lp_value = None
    divergence = None
    if _is_lp_pool(pool) and not closed:
        lp_value = _mark(pool, pool.reserves, reference)
        hold_value = _mark(pool, hold, reference)
        if lp_value is not None and hold_value:
            divergence = lp_value / hold_value - 1.0
    fees_cum = _mark(pool, fees_vector, reference)
    return MetricsRecord(
        step=event.step,
        event=event.verb,
        spot=spot,
        reference=reference,
        tracking_error=tracking,
        invariant=invariant,
        lp_value=lp_value,
        divergence_loss=divergence,
        fees_cum=fees_cum,
    )


def run_scenario(
    scenario: Scenario,
    ledgers: Ledgers | None = None,
    price_series: PriceSeries | None = None,
) -> Metrics:
    """Execute a scenario and return per-event metrics.

    The pool and its funding come from `load_pool` on the scenario's pool
    source; endowments from the preamble are minted on top, as are any
    balances in the optional `ledgers` argument.  A failing event raises
    ScenarioError carrying the event index and the metrics gathered so far.
    """
    pool, working = load_pool(scenario.pool_source)
    working = dict(working)
    if ledgers is not None:
        for token, extra in ledgers.items():
            base = working.get(token, new_ledger(token))
            for account, amount in extra.balances.items():
                if amount > 0.0:
                    base = ledger_mint(base, account, amount)
            working[token] = base
    for account, token, amount in scenario.endowments:
        base = working.get(token)
        if base is None:
            raise DomainError(f"endowment for unknown token {token!r}")
        if amount > 0.0:
            working[token] = ledger_mint(base, account, amount)

    hold = list(pool.reserves)
    records: list[MetricsRecord] = []
    for index, event in enumerate(scenario.events):
        reference = (
            price_series.at(event.step) if price_series is not None else None
        )
        try:
            if event.verb == "trade":
                account, token_in, token_out, raw = event.args
                order = TradeOrder(account, token_in, token_out, float(raw), EXACT_IN)
                pool, _, working = execute_swap(pool, order, working)
            elif event.verb == "deposit":
                account = event.args[0]
                amounts = tuple(float(a) for a in event.args[1:])
                pool, _, working = deposit_liquidity(pool, account, amounts, working)
                hold = [h + a for h, a in zip(hold, amounts)]
            elif event.verb == "withdraw":
                account, raw = event.args
                shares = float(raw)
                supply_before = pool.lp_share_supply
                pool, _, working = withdraw_liquidity(pool, account, shares, working)
                fraction = shares / supply_before
                hold = [h * (1.0 - fraction) for h in hold]
            elif event.verb == "oracle":
                pool = set_oracle_price(pool, float(event.args[0]))
            elif event.verb == "arb":
                if reference is None:
                    raise DomainError(
                        "arb event needs a reference price; none is defined "
                        f"at step {event.step}"
                    )
                pool, working, _ = arbitrage_step(
                    pool, reference, event.args[0], working
                )
            else:  # resolve
                winning = _resolve_outcome_index(pool, event.args[0], event.line)
                pool, working = resolve_prediction(pool, winning, working)
        except AmmError as error:
            raise ScenarioError(
                f"event {index} (scenario line {event.line}): {error}",
                index,
                Metrics(records=tuple(records)),
            ) from error
        records.append(
            _observe(pool, event, reference, hold, pool.accumulated_fees)
        )
    return Metrics(records=tuple(records))
