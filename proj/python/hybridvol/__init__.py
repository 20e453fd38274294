"""Option pricing under Heston volatility with a CIR short rate."""

from ._core import (
    CirRateParams,
    HestonParams,
    McConfig,
    McEstimate,
    NumericalError,
    OptionKind,
    PricingResult,
    QuadratureConfig,
    VanillaOption,
    bs_price,
    cir_bond_price,
    deterministic_average_rate,
    feller_satisfied,
    heston_call_price,
    heston_price,
    hybrid_call_price,
    hybrid_price,
    marginal_density,
    mc_price_heston_euler,
    mc_price_hybrid,
    price_via_density,
    risk_neutral_map,
    simulate_heston_logreturns,
)

__all__ = [name for name in dir() if not name.startswith("_")]
