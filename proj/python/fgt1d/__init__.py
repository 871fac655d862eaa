"""Sum-of-exponentials Gaussian kernel approximations and a linear-time
discrete Gauss transform.

The heavy lifting lives in the compiled extension ``fgt1d._core``; this
package re-exports its public names.
"""

from ._core import (
    ErrorReport,
    NumericalError,
    ReductionReport,
    SoeApprox,
    SoeForm,
    cf_soe,
    contour_soe,
    direct_transform,
    evaluate,
    fold,
    gauss_transform,
    load_coefficient_table,
    max_error,
    max_error_extended,
    reduce,
    save_coefficient_table,
    stabilized_reduced_soe,
    unfold,
    uniform_points,
)

__all__ = [
    "ErrorReport",
    "NumericalError",
    "ReductionReport",
    "SoeApprox",
    "SoeForm",
    "cf_soe",
    "contour_soe",
    "direct_transform",
    "evaluate",
    "fold",
    "gauss_transform",
    "load_coefficient_table",
    "max_error",
    "max_error_extended",
    "reduce",
    "save_coefficient_table",
    "stabilized_reduced_soe",
    "unfold",
    "uniform_points",
]

__version__ = "1.0.0"
