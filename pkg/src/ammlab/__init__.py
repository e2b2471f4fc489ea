"""Deterministic automated-market-maker engine, taxonomy probe, and simulator."""

from .core import (
    AmmError,
    DepletionError,
    DomainError,
    FeeParams,
    InsufficientBalance,
    Ledger,
    SolverError,
    UnsupportedOperation,
    balance_of,
    ledger_burn,
    ledger_mint,
    ledger_transfer,
    new_ledger,
)
from .curves import (
    ConstantPowerSum,
    ConstantProduct,
    ConstantProductSum,
    ConstantSum,
    CurveSpec,
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
from .engine import (
    BUILTIN_POOLS,
    PoolConfig,
    PoolState,
    Quote,
    TradeOrder,
    TradeReceipt,
    create_pool,
    curve_buy,
    curve_sell,
    deposit_liquidity,
    execute_swap,
    load_pool,
    materialize_pool,
    parse_pool_spec,
    quote,
    resolve_prediction,
    set_oracle_price,
    withdraw_liquidity,
)
from .probe import (
    DIMENSION_ORDER,
    DimensionVerdict,
    TaxonomyReport,
    classify,
    report_to_csv,
    run_dimension_probe,
)
from .sim import (
    Metrics,
    MetricsRecord,
    PriceSeries,
    Scenario,
    ScenarioError,
    ScenarioEvent,
    arbitrage_step,
    load_price_series,
    load_scenario,
    metrics_to_csv,
    parse_price_series,
    parse_scenario,
    run_scenario,
)

__version__ = "0.1.0"
