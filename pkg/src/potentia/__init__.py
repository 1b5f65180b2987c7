"""Numerical potential theory on the disk: Green's functions, Hardy norms,
Phragmen-Lindelof checks, product identities and a Brownian oracle."""

from .errors import (DomainError, InsufficientDataError, MonotonicityError,
                     PotentiaError, SingularityError, StepCapExceeded, TruncationError)
from .greens import (TruncatedSeriesResult, greens_disk_closed, greens_disk_series,
                     greens_halfplane, removable_singularity_probe)
from .hardy import dichotomy, hansen_threshold, integral_mean, largest_arc
from .phragmen import boundary_sup, growth_fit, pl_verdict, subharmonic_residual
from .products import (ProductParams, ProductResult, cosh_product, mirror_product,
                       sin_cos_products, sinh_product)
from .brownian import MCConfig, greens_constant_fit, occupation_estimate

__version__ = "0.1.0"

__all__ = [
    "DomainError", "InsufficientDataError", "MonotonicityError", "PotentiaError",
    "SingularityError", "StepCapExceeded", "TruncationError",
    "TruncatedSeriesResult", "greens_disk_closed", "greens_disk_series",
    "greens_halfplane", "removable_singularity_probe",
    "dichotomy", "hansen_threshold", "integral_mean", "largest_arc",
    "boundary_sup", "growth_fit", "pl_verdict", "subharmonic_residual",
    "ProductParams", "ProductResult", "cosh_product", "mirror_product",
    "sin_cos_products", "sinh_product",
    "MCConfig", "greens_constant_fit", "occupation_estimate",
]
