"""Few-weight trace codes over GF(p) and the character sums behind them."""

from .code import TraceCode, WeightDistribution, build_code, weight_distribution
from .field import FieldCtx, FieldElement
from .theory import predicted_distribution, predicted_length, verify

__version__ = "0.1.0"

__all__ = [
    "FieldCtx",
    "FieldElement",
    "TraceCode",
    "WeightDistribution",
    "build_code",
    "predicted_distribution",
    "predicted_length",
    "verify",
    "weight_distribution",
]
