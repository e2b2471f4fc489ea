"""Pool orchestration: fees, settlement, LP accounting, oracle adoption.

Three archetypes share one pool abstraction:

  price-discovering-lp-based        conservation-function curves and LMSR
  price-adopting-lp-based           the price-adoption (oracle + surcharge) curve
  price-discovering-supply-sovereign  the exponential bonding curve

Conventions chosen here (the pricing layer itself lives in curves.py):

  * Fees are charged on the input amount before curve math and retained by
    the pool, except that payout-side mechanisms (LMSR sells, bonding-curve
    sells) charge the fee on the collateral/reserve payout instead, and
    supply-sovereign pools keep fees out of the bonded reserve so the
    solvency identity reserves[0] = S**kappa / c stays exact.
  * The first liquidity provider mints the geometric mean of the deposit;
    later deposits must be reserve-proportional (1e-9 relative) and mint
    pro rata. Withdrawals pay a pro-rata slice of every reserve.
  * LMSR pools hold tokens = (collateral, outcome_0, ..., outcome_{n-1}) and
    reserves = (collateral_held, outstanding_0, ..., outstanding_{n-1}).
    Creation requires a collateral subsidy of at least C(0) = b*ln(n), the
    worst-case resolution liability; outcome shares are minted and burned by
    the pool, and deposit/withdraw are not supported after creation.
  * Resolution pays 1 collateral per winning share, burns the redeemed
    shares, sweeps leftover collateral to the creator, and closes the pool.

All operations are pure: they return new PoolState / ledger values and on
failure raise without having changed anything the caller holds.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace
from types import MappingProxyType
from typing import Mapping, Sequence

from .core import (
    AccountId,
    DepletionError,
    DomainError,
    FeeParams,
    InsufficientBalance,
    Ledger,
    TokenId,
    UnsupportedOperation,
    balance_of,
    ledger_burn,
    ledger_mint,
    ledger_transfer,
    new_ledger,
)
from .curves import (
    CONSERVATION_CURVES,
    ConstantProduct,
    ConstantProductSum,
    ConstantPowerSum,
    ConstantSum,
    CurveSpec,
    Exponential,
    GeometricMean,
    Lmsr,
    PriceAdoption,
    quote_exact_in,
    quote_exact_out,
    spot_price,
)

PRICE_DISCOVERING_LP_BASED = "price-discovering-lp-based"
PRICE_ADOPTING_LP_BASED = "price-adopting-lp-based"
PRICE_DISCOVERING_SUPPLY_SOVEREIGN = "price-discovering-supply-sovereign"

ARCHETYPES = frozenset(
    {
        PRICE_DISCOVERING_LP_BASED,
        PRICE_ADOPTING_LP_BASED,
        PRICE_DISCOVERING_SUPPLY_SOVEREIGN,
    }
)

EXACT_IN = "exact-in"
EXACT_OUT = "exact-out"

PROPORTIONAL_TOL = 1e-9

Ledgers = Mapping[TokenId, Ledger]


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class PoolConfig:
    """Static pool description, the parsed form of a pool specification file."""

    archetype: str
    tokens: tuple[TokenId, ...]
    curve: CurveSpec
    fee_rate: float = 0.0
    reserves: tuple[float, ...] = ()
    oracle_price: float | None = None

    def __post_init__(self) -> None:
        if self.archetype not in ARCHETYPES:
            raise DomainError(
                f"unknown archetype {self.archetype!r}; expected one of "
                f"{sorted(ARCHETYPES)}"
            )
        object.__setattr__(self, "tokens", tuple(str(t) for t in self.tokens))
        if len(self.tokens) < 2:
            raise DomainError("a pool needs at least two tokens")
        if len(set(self.tokens)) != len(self.tokens):
            raise DomainError(f"duplicate token ids: {self.tokens}")
        if any(not t for t in self.tokens):
            raise DomainError("token ids must be non-empty")
        object.__setattr__(self, "reserves", tuple(float(r) for r in self.reserves))
        if self.reserves and len(self.reserves) != len(self.tokens):
            raise DomainError(
                f"{len(self.reserves)} reserves for {len(self.tokens)} tokens"
            )
        if any(r < 0.0 or not math.isfinite(r) for r in self.reserves):
            raise DomainError(f"reserves out of range: {self.reserves}")
        FeeParams(trade_fee=self.fee_rate)  # validates the rate
        if self.oracle_price is not None and not self.oracle_price > 0.0:
            raise DomainError(f"oracle price must be positive: {self.oracle_price}")


@dataclass(frozen=True, slots=True)
class PoolState:
    archetype: str
    tokens: tuple[TokenId, ...]
    curve: CurveSpec
    reserves: tuple[float, ...]
    fee: FeeParams
    lp_share_supply: float
    lp_shares: Mapping[AccountId, float]
    circulating_supply: float
    oracle_price: float | None
    accumulated_fees: tuple[float, ...]
    account: AccountId
    creator: AccountId
    closed: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "reserves", tuple(self.reserves))
        object.__setattr__(
            self, "accumulated_fees", tuple(self.accumulated_fees)
        )
        if not isinstance(self.lp_shares, MappingProxyType):
            object.__setattr__(
                self, "lp_shares", MappingProxyType(dict(self.lp_shares))
            )


@dataclass(frozen=True, slots=True)
class TradeOrder:
    trader: AccountId
    token_in: TokenId
    token_out: TokenId
    amount: float
    kind: str  # "exact-in" | "exact-out"


@dataclass(frozen=True, slots=True)
class Quote:
    amount_in: float
    amount_out: float
    fee_paid: float
    surcharge_component: float
    spot_before: float
    spot_after: float
    mean_price: float


@dataclass(frozen=True, slots=True)
class TradeReceipt:
    quote: Quote
    reserves_after: tuple[float, ...]
    trader_deltas: Mapping[TokenId, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "reserves_after", tuple(self.reserves_after))
        if not isinstance(self.trader_deltas, MappingProxyType):
            object.__setattr__(
                self, "trader_deltas", MappingProxyType(dict(self.trader_deltas))
            )


# ---------------------------------------------------------------------------
# creation
# ---------------------------------------------------------------------------


def _check_compat(archetype: str, curve: CurveSpec, n_tokens: int) -> None:
    if archetype == PRICE_ADOPTING_LP_BASED:
        if not isinstance(curve, PriceAdoption):
            raise DomainError("price-adopting pools need a price-adoption curve")
        if n_tokens != 2:
            raise DomainError("price adoption is a two-token mechanism")
    elif archetype == PRICE_DISCOVERING_SUPPLY_SOVEREIGN:
        if not isinstance(curve, Exponential):
            raise DomainError("supply-sovereign pools need an exponential curve")
        if n_tokens != 2:
            raise DomainError("supply-sovereign pools hold (reserve, issued) tokens")
    elif archetype == PRICE_DISCOVERING_LP_BASED:
        if isinstance(curve, Lmsr):
            if n_tokens < 3:
                raise DomainError(
                    "an LMSR pool needs a collateral token and at least two outcomes"
                )
        elif isinstance(curve, CONSERVATION_CURVES):
            if isinstance(curve, GeometricMean) and len(curve.weights) != n_tokens:
                raise DomainError(
                    f"{len(curve.weights)} weights for {n_tokens} tokens"
                )
        else:
            raise DomainError(
                "price-discovering LP pools need a conservation-function or LMSR curve"
            )
    else:  # pragma: no cover - PoolConfig already rejects unknown archetypes
        raise DomainError(f"unknown archetype {archetype!r}")


def _with(ledgers: Ledgers, *updated: Ledger) -> dict[TokenId, Ledger]:
    out = dict(ledgers)
    for ledger in updated:
        out[ledger.token] = ledger
    return out


def _ledger_for(ledgers: Ledgers, token: TokenId) -> Ledger:
    found = ledgers.get(token)
    return found if found is not None else new_ledger(token)


def create_pool(
    config: PoolConfig,
    initial_deposit: Sequence[float],
    creator: AccountId,
    ledgers: Ledgers,
) -> tuple[PoolState, dict[TokenId, Ledger]]:
    """Open a pool, settling the creator's initial deposit against ledgers."""
    tokens = config.tokens
    n = len(tokens)
    _check_compat(config.archetype, config.curve, n)
    deposit = tuple(float(a) for a in initial_deposit)
    if len(deposit) != n:
        raise DomainError(f"{len(deposit)} deposit amounts for {n} tokens")
    if any(a < 0.0 or not math.isfinite(a) for a in deposit):
        raise DomainError(f"deposit amounts out of range: {deposit}")

    surcharge_k = config.curve.k if isinstance(config.curve, PriceAdoption) else 0.0
    fee = FeeParams(trade_fee=config.fee_rate, surcharge_k=surcharge_k)
    account = "pool:" + "/".join(tokens)
    updated = {t: _ledger_for(ledgers, t) for t in ledgers}
    for t in tokens:
        updated.setdefault(t, new_ledger(t))

    if config.archetype == PRICE_DISCOVERING_SUPPLY_SOVEREIGN:
        if any(a != 0.0 for a in deposit):
            raise DomainError("supply-sovereign pools start with zero supply")
        reserves = (0.0, 0.0)
        lp_supply, lp_shares = 0.0, {}
    elif isinstance(config.curve, Lmsr):
        subsidy = deposit[0]
        liability = config.curve.b * math.log(n - 1)
        if subsidy < liability - 1e-9:
            raise DomainError(
                f"collateral subsidy {subsidy} is below the worst-case "
                f"resolution liability b*ln({n - 1}) = {liability}"
            )
        if any(a != 0.0 for a in deposit[1:]):
            raise DomainError("LMSR pools start with zero outstanding shares")
        updated[tokens[0]] = ledger_transfer(
            updated[tokens[0]], creator, account, subsidy
        )
        reserves = (subsidy,) + (0.0,) * (n - 1)
        lp_supply, lp_shares = 0.0, {}
    else:
        if any(not a > 0.0 for a in deposit):
            raise DomainError(
                f"LP-based pools need strictly positive initial deposits: {deposit}"
            )
        for t, amount in zip(tokens, deposit):
            updated[t] = ledger_transfer(updated[t], creator, account, amount)
        reserves = deposit
        lp_supply = math.prod(deposit) ** (1.0 / n)
        lp_shares = {creator: lp_supply}

    pool = PoolState(
        archetype=config.archetype,
        tokens=tokens,
        curve=config.curve,
        reserves=reserves,
        fee=fee,
        lp_share_supply=lp_supply,
        lp_shares=lp_shares,
        circulating_supply=0.0,
        oracle_price=config.oracle_price,
        accumulated_fees=(0.0,) * n,
        account=account,
        creator=creator,
    )
    return pool, updated


# ---------------------------------------------------------------------------
# quoting
# ---------------------------------------------------------------------------


def _token_index(pool: PoolState, token: TokenId) -> int:
    try:
        return pool.tokens.index(token)
    except ValueError:
        raise DomainError(f"unknown token {token!r}; pool holds {pool.tokens}") from None


def _validate_order(pool: PoolState, order: TradeOrder) -> tuple[int, int]:
    if order.kind not in (EXACT_IN, EXACT_OUT):
        raise DomainError(f"order kind must be exact-in or exact-out: {order.kind!r}")
    if not order.amount > 0.0:
        raise DomainError(f"order amount must be positive: {order.amount}")
    i = _token_index(pool, order.token_in)
    j = _token_index(pool, order.token_out)
    if i == j:
        raise DomainError("token_in and token_out must differ")
    return i, j


def _safe_spot(
    curve: CurveSpec,
    reserves: Sequence[float],
    leg_in: int | None,
    leg_out: int | None,
    adopted_price: float | None,
) -> float:
    try:
        return spot_price(curve, reserves, leg_in, leg_out, adopted_price)
    except DomainError:
        return math.nan


def quote(pool: PoolState, order: TradeOrder) -> Quote:
    """Price an order against the pool without changing any state."""
    if pool.closed:
        raise UnsupportedOperation("pool is closed")
    i, j = _validate_order(pool, order)
    if pool.archetype == PRICE_DISCOVERING_SUPPLY_SOVEREIGN:
        return _quote_sovereign(pool, order, i, j)
    if isinstance(pool.curve, Lmsr):
        return _quote_lmsr(pool, order, i, j)
    return _quote_lp(pool, order, i, j)


def _quote_lp(pool: PoolState, order: TradeOrder, i: int, j: int) -> Quote:
    curve = pool.curve
    adopting = isinstance(curve, PriceAdoption)
    p = pool.oracle_price if adopting else None
    if adopting and p is None:
        raise DomainError("no oracle price set; call set_oracle_price first")
    fee = pool.fee.trade_fee
    reserves = pool.reserves

    if order.kind == EXACT_IN:
        amount_in = order.amount
        effective = amount_in * (1.0 - fee)
        fee_paid = amount_in - effective
        amount_out = quote_exact_in(curve, reserves, i, j, effective, p)
    else:
        amount_out = order.amount
        dx_curve = quote_exact_out(curve, reserves, i, j, amount_out, p)
        amount_in = dx_curve / (1.0 - fee)
        fee_paid = amount_in - dx_curve

    surcharge = 0.0
    if adopting:
        # counterfactual at k = 0: trade at the flat adopted price
        if order.kind == EXACT_IN:
            effective = amount_in * (1.0 - fee)
            flat_out = effective * p if i == 0 else effective / p
            surcharge = max(0.0, flat_out - amount_out)
        else:
            flat_in = amount_out / p if i == 0 else amount_out * p
            surcharge = max(0.0, (amount_in * (1.0 - fee)) - flat_in)

    after = list(reserves)
    after[i] += amount_in
    after[j] -= amount_out
    return Quote(
        amount_in=amount_in,
        amount_out=amount_out,
        fee_paid=fee_paid,
        surcharge_component=surcharge,
        spot_before=_safe_spot(curve, reserves, i, j, p),
        spot_after=_safe_spot(curve, after, i, j, p),
        mean_price=amount_out / amount_in,
    )


def _quote_lmsr(pool: PoolState, order: TradeOrder, i: int, j: int) -> Quote:
    if i != 0 and j != 0:
        raise UnsupportedOperation("LMSR trades one outcome against collateral")
    curve = pool.curve
    q = pool.reserves[1:]
    fee = pool.fee.trade_fee
    buying = i == 0
    leg_in, leg_out = (None, j - 1) if buying else (i - 1, None)

    if buying:
        if order.kind == EXACT_IN:
            amount_in = order.amount
            effective = amount_in * (1.0 - fee)
            fee_paid = amount_in - effective
            amount_out = quote_exact_in(curve, q, None, j - 1, effective)
        else:
            amount_out = order.amount
            cost = quote_exact_out(curve, q, None, j - 1, amount_out)
            amount_in = cost / (1.0 - fee)
            fee_paid = amount_in - cost
        q_after = list(q)
        q_after[j - 1] += amount_out
    else:
        # fee comes out of the collateral payout
        if order.kind == EXACT_IN:
            amount_in = order.amount
            raw = quote_exact_in(curve, q, i - 1, None, amount_in)
            amount_out = raw * (1.0 - fee)
            fee_paid = raw - amount_out
        else:
            amount_out = order.amount
            raw = amount_out / (1.0 - fee)
            fee_paid = raw - amount_out
            amount_in = quote_exact_out(curve, q, i - 1, None, raw)
        q_after = list(q)
        q_after[i - 1] -= amount_in

    return Quote(
        amount_in=amount_in,
        amount_out=amount_out,
        fee_paid=fee_paid,
        surcharge_component=0.0,
        spot_before=_safe_spot(curve, q, leg_in, leg_out, None),
        spot_after=_safe_spot(curve, q_after, leg_in, leg_out, None),
        mean_price=amount_out / amount_in,
    )


def _quote_sovereign(pool: PoolState, order: TradeOrder, i: int, j: int) -> Quote:
    curve = pool.curve
    state = (pool.reserves[0], pool.circulating_supply)
    fee = pool.fee.trade_fee

    if i == 0:  # bond reserve, receive issued tokens
        if order.kind == EXACT_IN:
            amount_in = order.amount
            bonded = amount_in * (1.0 - fee)
            fee_paid = amount_in - bonded
            amount_out = quote_exact_in(curve, state, 0, 1, bonded)
        else:
            amount_out = order.amount
            bonded = quote_exact_out(curve, state, 0, 1, amount_out)
            amount_in = bonded / (1.0 - fee)
            fee_paid = amount_in - bonded
        after = (state[0] + amount_in * (1.0 - fee), state[1] + amount_out)
    else:  # burn issued tokens, receive reserve (fee off the payout)
        if order.kind == EXACT_IN:
            amount_in = order.amount
            raw = quote_exact_in(curve, state, 1, 0, amount_in)
            amount_out = raw * (1.0 - fee)
            fee_paid = raw - amount_out
        else:
            amount_out = order.amount
            raw = amount_out / (1.0 - fee)
            fee_paid = raw - amount_out
            amount_in = quote_exact_out(curve, state, 1, 0, raw)
        after = (state[0] - (amount_out + fee_paid), state[1] - amount_in)

    return Quote(
        amount_in=amount_in,
        amount_out=amount_out,
        fee_paid=fee_paid,
        surcharge_component=0.0,
        spot_before=_safe_spot(curve, state, i, j, None),
        spot_after=_safe_spot(curve, after, i, j, None),
        mean_price=amount_out / amount_in,
    )


# ---------------------------------------------------------------------------
# settlement
# ---------------------------------------------------------------------------


def execute_swap(
    pool: PoolState, order: TradeOrder, ledgers: Ledgers
) -> tuple[PoolState, TradeReceipt, dict[TokenId, Ledger]]:
    """Quote the order, move tokens, and advance the pool state atomically."""
    q = quote(pool, order)
    i, j = _token_index(pool, order.token_in), _token_index(pool, order.token_out)
    trader = order.trader

    if pool.archetype == PRICE_DISCOVERING_SUPPLY_SOVEREIGN:
        if i == 0:
            pool2, _, updated = curve_buy(pool, trader, q.amount_in, ledgers)
        else:
            pool2, _, updated = curve_sell(pool, trader, q.amount_in, ledgers)
    elif isinstance(pool.curve, Lmsr):
        tin, tout = pool.tokens[i], pool.tokens[j]
        fees = list(pool.accumulated_fees)
        reserves = list(pool.reserves)
        if i == 0:  # buy shares with collateral
            cash = ledger_transfer(
                _ledger_for(ledgers, tin), trader, pool.account, q.amount_in
            )
            shares = ledger_mint(_ledger_for(ledgers, tout), trader, q.amount_out)
            reserves[0] += q.amount_in
            reserves[j] += q.amount_out
            fees[0] += q.fee_paid
        else:  # sell shares for collateral
            shares = ledger_burn(_ledger_for(ledgers, tin), trader, q.amount_in)
            cash = ledger_transfer(
                _ledger_for(ledgers, tout), pool.account, trader, q.amount_out
            )
            reserves[0] -= q.amount_out
            reserves[i] -= q.amount_in
            fees[0] += q.fee_paid
        updated = _with(ledgers, cash, shares)
        pool2 = replace(
            pool, reserves=tuple(reserves), accumulated_fees=tuple(fees)
        )
    else:
        tin, tout = pool.tokens[i], pool.tokens[j]
        led_in = ledger_transfer(
            _ledger_for(ledgers, tin), trader, pool.account, q.amount_in
        )
        led_out = ledger_transfer(
            _ledger_for(ledgers, tout), pool.account, trader, q.amount_out
        )
        updated = _with(ledgers, led_in, led_out)
        reserves = list(pool.reserves)
        reserves[i] += q.amount_in
        reserves[j] -= q.amount_out
        fees = list(pool.accumulated_fees)
        fees[i] += q.fee_paid
        pool2 = replace(
            pool, reserves=tuple(reserves), accumulated_fees=tuple(fees)
        )

    receipt = TradeReceipt(
        quote=q,
        reserves_after=pool2.reserves,
        trader_deltas={
            order.token_in: -q.amount_in,
            order.token_out: q.amount_out,
        },
    )
    return pool2, receipt, updated


# ---------------------------------------------------------------------------
# LP accounting
# ---------------------------------------------------------------------------


def _require_lp_archetype(pool: PoolState) -> None:
    if pool.archetype == PRICE_DISCOVERING_SUPPLY_SOVEREIGN:
        raise UnsupportedOperation("supply-sovereign pools have no LP shares")
    if isinstance(pool.curve, Lmsr):
        raise UnsupportedOperation(
            "LMSR pools are funded by the creation subsidy only"
        )


def deposit_liquidity(
    pool: PoolState, provider: AccountId, amounts: Sequence[float], ledgers: Ledgers
) -> tuple[PoolState, float, dict[TokenId, Ledger]]:
    """Add reserve-proportional liquidity, minting LP shares pro rata."""
    _require_lp_archetype(pool)
    if pool.closed:
        raise UnsupportedOperation("pool is closed")
    deposit = tuple(float(a) for a in amounts)
    if len(deposit) != len(pool.tokens):
        raise DomainError(f"{len(deposit)} amounts for {len(pool.tokens)} tokens")
    if any(a < 0.0 or not math.isfinite(a) for a in deposit):
        raise DomainError(f"deposit amounts out of range: {deposit}")
    if all(a == 0.0 for a in deposit):
        return pool, 0.0, dict(ledgers)

    if pool.lp_share_supply == 0.0:
        if any(not a > 0.0 for a in deposit):
            raise DomainError("the first deposit must fund every token")
        minted = math.prod(deposit) ** (1.0 / len(deposit))
    else:
        ratios = [a / r for a, r in zip(deposit, pool.reserves)]
        ratio = ratios[0]
        if any(abs(x - ratio) > PROPORTIONAL_TOL * max(ratio, x) for x in ratios):
            raise DomainError(
                f"deposit {deposit} is not proportional to reserves {pool.reserves}"
            )
        minted = pool.lp_share_supply * ratio

    updated = dict(ledgers)
    for t, amount in zip(pool.tokens, deposit):
        updated[t] = ledger_transfer(_ledger_for(updated, t), provider, pool.account, amount)
    shares = dict(pool.lp_shares)
    shares[provider] = shares.get(provider, 0.0) + minted
    pool2 = replace(
        pool,
        reserves=tuple(r + a for r, a in zip(pool.reserves, deposit)),
        lp_share_supply=pool.lp_share_supply + minted,
        lp_shares=shares,
    )
    return pool2, minted, updated


def withdraw_liquidity(
    pool: PoolState, provider: AccountId, shares: float, ledgers: Ledgers
) -> tuple[PoolState, tuple[float, ...], dict[TokenId, Ledger]]:
    """Burn LP shares for a pro-rata slice of every reserve."""
    _require_lp_archetype(pool)
    if not shares >= 0.0:
        raise DomainError(f"share amount must be non-negative: {shares}")
    if shares == 0.0:
        return pool, (0.0,) * len(pool.tokens), dict(ledgers)
    held = pool.lp_shares.get(provider, 0.0)
    if shares > held:
        raise InsufficientBalance(
            f"{provider!r} holds {held} LP shares, cannot burn {shares}"
        )
    fraction = shares / pool.lp_share_supply
    amounts = tuple(fraction * r for r in pool.reserves)
    updated = dict(ledgers)
    for t, amount in zip(pool.tokens, amounts):
        updated[t] = ledger_transfer(_ledger_for(updated, t), pool.account, provider, amount)
    new_shares = dict(pool.lp_shares)
    remaining = held - shares
    if remaining > 0.0:
        new_shares[provider] = remaining
    else:
        del new_shares[provider]
    pool2 = replace(
        pool,
        reserves=tuple(r - a for r, a in zip(pool.reserves, amounts)),
        lp_share_supply=pool.lp_share_supply - shares,
        lp_shares=new_shares,
    )
    return pool2, amounts, updated


# ---------------------------------------------------------------------------
# supply-sovereign mint/burn
# ---------------------------------------------------------------------------


def _require_sovereign(pool: PoolState) -> None:
    if pool.archetype != PRICE_DISCOVERING_SUPPLY_SOVEREIGN:
        raise UnsupportedOperation(
            "curve buy/sell applies only to supply-sovereign pools"
        )


def curve_buy(
    pool: PoolState, buyer: AccountId, reserve_in: float, ledgers: Ledgers
) -> tuple[PoolState, float, dict[TokenId, Ledger]]:
    """Bond reserve tokens into the pool, minting issued tokens to the buyer."""
    _require_sovereign(pool)
    if not reserve_in >= 0.0:
        raise DomainError(f"amount must be non-negative: {reserve_in}")
    if reserve_in == 0.0:
        return pool, 0.0, dict(ledgers)
    fee_amount = reserve_in * pool.fee.trade_fee
    bonded = reserve_in - fee_amount
    minted = quote_exact_in(
        pool.curve, (pool.reserves[0], pool.circulating_supply), 0, 1, bonded
    )
    reserve_token, issued_token = pool.tokens
    led_reserve = ledger_transfer(
        _ledger_for(ledgers, reserve_token), buyer, pool.account, reserve_in
    )
    led_issued = ledger_mint(_ledger_for(ledgers, issued_token), buyer, minted)
    fees = list(pool.accumulated_fees)
    fees[0] += fee_amount
    pool2 = replace(
        pool,
        reserves=(pool.reserves[0] + bonded, 0.0),
        circulating_supply=pool.circulating_supply + minted,
        accumulated_fees=tuple(fees),
    )
    return pool2, minted, _with(ledgers, led_reserve, led_issued)


def curve_sell(
    pool: PoolState, seller: AccountId, tokens_in: float, ledgers: Ledgers
) -> tuple[PoolState, float, dict[TokenId, Ledger]]:
    """Burn issued tokens, paying out unbonded reserve minus the fee."""
    _require_sovereign(pool)
    if not tokens_in >= 0.0:
        raise DomainError(f"amount must be non-negative: {tokens_in}")
    if tokens_in == 0.0:
        return pool, 0.0, dict(ledgers)
    reserve_token, issued_token = pool.tokens
    held = balance_of(_ledger_for(ledgers, issued_token), seller)
    if tokens_in > held:
        raise InsufficientBalance(
            f"{seller!r} holds {held} issued tokens, cannot sell {tokens_in}"
        )
    burn = tokens_in
    if burn > pool.circulating_supply:
        # float dust between the supply tracker and independently
        # accumulated ledger balances; anything larger is an inconsistency
        excess = burn - pool.circulating_supply
        if excess > 1e-9 * max(1.0, pool.circulating_supply):
            raise DepletionError(
                f"selling {tokens_in} exceeds the circulating supply "
                f"{pool.circulating_supply}"
            )
        burn = pool.circulating_supply
    raw = quote_exact_in(
        pool.curve, (pool.reserves[0], pool.circulating_supply), 1, 0, burn
    )
    payout = raw * (1.0 - pool.fee.trade_fee)
    fee_amount = raw - payout
    led_issued = ledger_burn(_ledger_for(ledgers, issued_token), seller, tokens_in)
    led_reserve = ledger_transfer(
        _ledger_for(ledgers, reserve_token), pool.account, seller, payout
    )
    new_reserve = pool.reserves[0] - raw
    if new_reserve < 0.0:
        # float dust from a full drain; anything larger is a real inconsistency
        if new_reserve < -1e-9 * max(1.0, pool.reserves[0]):
            raise DepletionError(f"bonded reserve underflow: {new_reserve}")
        new_reserve = 0.0
    fees = list(pool.accumulated_fees)
    fees[0] += fee_amount
    pool2 = replace(
        pool,
        reserves=(new_reserve, 0.0),
        circulating_supply=max(pool.circulating_supply - tokens_in, 0.0),
        accumulated_fees=tuple(fees),
    )
    return pool2, payout, _with(ledgers, led_reserve, led_issued)


# ---------------------------------------------------------------------------
# oracle adoption and prediction resolution
# ---------------------------------------------------------------------------


def set_oracle_price(pool: PoolState, price: float) -> PoolState:
    """Adopt a new external price; reserves are untouched."""
    if pool.archetype != PRICE_ADOPTING_LP_BASED:
        raise UnsupportedOperation("only price-adopting pools take oracle prices")
    if not price > 0.0:
        raise DomainError(f"oracle price must be positive: {price}")
    return replace(pool, oracle_price=price)


def resolve_prediction(
    pool: PoolState, winning_outcome: int, ledgers: Ledgers
) -> tuple[PoolState, dict[TokenId, Ledger]]:
    """Settle an LMSR market: 1 collateral per winning share, then close."""
    if not isinstance(pool.curve, Lmsr):
        raise UnsupportedOperation("only LMSR pools resolve to an outcome")
    if pool.closed:
        raise UnsupportedOperation("market already resolved")
    n_outcomes = len(pool.tokens) - 1
    if not 0 <= winning_outcome < n_outcomes:
        raise DomainError(
            f"outcome index {winning_outcome} out of range for {n_outcomes} outcomes"
        )
    collateral_token = pool.tokens[0]
    winning_token = pool.tokens[1 + winning_outcome]
    cash = _ledger_for(ledgers, collateral_token)
    win = _ledger_for(ledgers, winning_token)
    for holder, held in sorted(win.balances.items()):
        if holder == pool.account or held == 0.0:
            continue
        cash = ledger_transfer(cash, pool.account, holder, held)
        win = ledger_burn(win, holder, held)
    leftover = balance_of(cash, pool.account)
    if leftover > 0.0:
        cash = ledger_transfer(cash, pool.account, pool.creator, leftover)
    pool2 = replace(pool, reserves=(0.0,) * len(pool.tokens), closed=True)
    return pool2, _with(ledgers, cash, win)


# ---------------------------------------------------------------------------
# pool specification files and built-in pools
# ---------------------------------------------------------------------------

_POOL_KEYS = frozenset(
    {
        "archetype",
        "curve",
        "tokens",
        "reserves",
        "fee",
        "weights",
        "chi",
        "t",
        "b",
        "k",
        "target_reserves",
        "kappa",
        "c",
        "oracle_price",
    }
)

_CURVE_PARAMS = {
    "constant-product": (),
    "geometric-mean": ("weights",),
    "constant-sum": (),
    "constant-product-sum": ("chi",),
    "constant-power-sum": ("t",),
    "lmsr": ("b",),
    "price-adoption": ("k", "target_reserves"),
    "exponential": ("kappa", "c"),
}


def _parse_float(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise DomainError(f"{key}: not a number: {value!r}") from None


def _parse_floats(key: str, value: str) -> tuple[float, ...]:
    return tuple(_parse_float(key, part.strip()) for part in value.split(","))


def parse_pool_spec(text: str) -> PoolConfig:
    """Parse `key = value` pool-specification text into a PoolConfig."""
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"line {lineno}: expected `key = value`: {raw.strip()!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in entries:
            raise DomainError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = value

    unknown = sorted(set(entries) - _POOL_KEYS)
    if unknown:
        raise DomainError(f"unknown keys: {', '.join(unknown)}")
    for required in ("archetype", "curve", "tokens", "reserves"):
        if required not in entries:
            raise DomainError(f"missing required key {required!r}")

    curve_name = entries["curve"]
    if curve_name not in _CURVE_PARAMS:
        raise DomainError(
            f"unknown curve {curve_name!r}; expected one of "
            f"{sorted(_CURVE_PARAMS)}"
        )
    needed = _CURVE_PARAMS[curve_name]
    for param in needed:
        if param not in entries:
            raise DomainError(f"curve {curve_name!r} requires key {param!r}")
    all_params = {"weights", "chi", "t", "b", "k", "target_reserves", "kappa", "c"}
    stray = sorted(set(entries) & (all_params - set(needed)))
    if stray:
        raise DomainError(
            f"keys {', '.join(stray)} do not apply to curve {curve_name!r}"
        )

    if curve_name == "constant-product":
        curve: CurveSpec = ConstantProduct()
    elif curve_name == "geometric-mean":
        curve = GeometricMean(weights=_parse_floats("weights", entries["weights"]))
    elif curve_name == "constant-sum":
        curve = ConstantSum()
    elif curve_name == "constant-product-sum":
        curve = ConstantProductSum(chi=_parse_float("chi", entries["chi"]))
    elif curve_name == "constant-power-sum":
        curve = ConstantPowerSum(t=_parse_float("t", entries["t"]))
    elif curve_name == "lmsr":
        curve = Lmsr(b=_parse_float("b", entries["b"]))
    elif curve_name == "price-adoption":
        curve = PriceAdoption(
            k=_parse_float("k", entries["k"]),
            target_reserves=_parse_floats("target_reserves", entries["target_reserves"]),
        )
    else:
        curve = Exponential(
            kappa=_parse_float("kappa", entries["kappa"]),
            c=_parse_float("c", entries["c"]),
        )

    tokens = tuple(tok.strip() for tok in entries["tokens"].split(","))
    oracle = entries.get("oracle_price")
    return PoolConfig(
        archetype=entries["archetype"],
        tokens=tokens,
        curve=curve,
        fee_rate=_parse_float("fee", entries.get("fee", "0")),
        reserves=_parse_floats("reserves", entries["reserves"]),
        oracle_price=_parse_float("oracle_price", oracle) if oracle is not None else None,
    )


_BUILTIN_POOL_TEXT = {
    "uniswap-v2-like": """
archetype = price-discovering-lp-based
curve = constant-product
tokens = TOKEN0, TOKEN1
reserves = 100, 100
fee = 0.003
""",
    "curve-v1-like": """
archetype = price-discovering-lp-based
curve = constant-product-sum
tokens = STABLE0, STABLE1
reserves = 100, 100
fee = 0.003
chi = 10
""",
    "mstable-2021-like": """
archetype = price-discovering-lp-based
curve = constant-sum
tokens = STABLE0, STABLE1
reserves = 100, 100
fee = 0.003
""",
    "dodo-like": """
archetype = price-adopting-lp-based
curve = price-adoption
tokens = BASE, QUOTE
reserves = 100, 1000
fee = 0.003
k = 0.5
target_reserves = 100, 1000
oracle_price = 10
""",
    "bancor-like": """
archetype = price-discovering-supply-sovereign
curve = exponential
tokens = RESERVE, ISSUED
reserves = 100, 0
fee = 0
kappa = 2
c = 1
""",
    "augur-like": """
archetype = price-discovering-lp-based
curve = lmsr
tokens = CASH, OUT0, OUT1, OUT2
# the collateral entry is the creation subsidy b*ln(3)
reserves = 109.86122886681098, 0, 0, 0
fee = 0
b = 100
""",
}

BUILTIN_POOLS: Mapping[str, PoolConfig] = MappingProxyType(
    {name: parse_pool_spec(text) for name, text in _BUILTIN_POOL_TEXT.items()}
)

BOOTSTRAP_ACCOUNT = "bootstrap"


def materialize_pool(
    config: PoolConfig, creator: AccountId = "creator"
) -> tuple[PoolState, dict[TokenId, Ledger]]:
    """Stand up a live pool at the reserves a PoolConfig describes.

    LP-based pools mint the deposit to the creator and open normally.
    Supply-sovereign pools open empty and are then primed to the configured
    bonded reserve by minting the implied supply to a bootstrap account.
    """
    if not config.reserves:
        raise DomainError("pool configuration carries no reserves")
    if config.archetype == PRICE_DISCOVERING_SUPPLY_SOVEREIGN:
        if any(r != 0.0 for r in config.reserves[1:]):
            raise DomainError("supply-sovereign reserves are (bonded_reserve, 0)")
        pool, ledgers = create_pool(config, (0.0, 0.0), creator, {})
        r0 = config.reserves[0]
        if r0 > 0.0:
            curve = config.curve
            supply = (curve.c * r0) ** (1.0 / curve.kappa)
            reserve_token, issued_token = config.tokens
            ledgers[reserve_token] = ledger_mint(
                ledgers[reserve_token], pool.account, r0
            )
            ledgers[issued_token] = ledger_mint(
                ledgers[issued_token], BOOTSTRAP_ACCOUNT, supply
            )
            pool = replace(pool, reserves=(r0, 0.0), circulating_supply=supply)
        return pool, ledgers
    ledgers = {
        token: new_ledger(token, {creator: amount} if amount > 0.0 else {})
        for token, amount in zip(config.tokens, config.reserves)
    }
    return create_pool(config, config.reserves, creator, ledgers)


def load_pool_config(source: str) -> PoolConfig:
    """Resolve a built-in name or a specification file path to a PoolConfig."""
    if source in BUILTIN_POOLS:
        return BUILTIN_POOLS[source]
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return parse_pool_spec(fh.read())
    raise DomainError(
        f"{source!r} is neither a built-in pool name {sorted(BUILTIN_POOLS)} "
        "nor a readable file"
    )


def load_pool(
    source: str, creator: AccountId = "creator"
) -> tuple[PoolState, dict[TokenId, Ledger]]:
    """Materialize a pool from a built-in name or a specification file path."""
    return materialize_pool(load_pool_config(source), creator)
