"""Information geometry of the Freund bivariate exponential family."""

from .distribution import (
    correlation,
    covariance,
    joint_density,
    marginal_x,
    marginal_x_cdf,
    marginal_y,
    marginal_y_cdf,
)
from .geometry import (
    RicciTensor,
    christoffel_lower,
    christoffel_upper,
    curvature_tensor,
    fisher_metric,
    fisher_metric_inverse,
    mean_curvatures,
    ricci_tensor,
    scalar_curvature,
    sectional_curvatures,
)
from .params import DomainError, FreundParams
from .quadrature import QuadratureConfig, QuadratureError
from .tensors import FiniteDiffConfig

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "FiniteDiffConfig",
    "FreundParams",
    "QuadratureConfig",
    "QuadratureError",
    "RicciTensor",
    "christoffel_lower",
    "christoffel_upper",
    "correlation",
    "covariance",
    "curvature_tensor",
    "fisher_metric",
    "fisher_metric_inverse",
    "joint_density",
    "marginal_x",
    "marginal_x_cdf",
    "marginal_y",
    "marginal_y_cdf",
    "mean_curvatures",
    "ricci_tensor",
    "scalar_curvature",
    "sectional_curvatures",
]
