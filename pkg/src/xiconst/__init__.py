"""Arbitrary-precision constants of the Riemann xi function.

Stieltjes constants gamma_k, log-derivative coefficients eta_j, Li/Keiper
constants lambda_n, the reduced constants c_n and the Gamma coefficients
d_n, each by several independent routes, plus checks tying them together.
"""

from .errors import (
    CapError,
    DomainError,
    InconclusiveError,
    InsufficientDataError,
    PoleError,
    PrecisionError,
    XiConstError,
    ZeroFileError,
)
from .numeric_kernel import (
    DEFAULT_POLICY,
    Approximation,
    MangoldtTable,
    PrecisionPolicy,
    digamma_half,
    hurwitz_zeta,
    mangoldt_table,
    polygamma_half,
    zeta,
)
from .stieltjes import StieltjesTable, stieltjes_table, zeta_laurent_eval
from .series import (
    TruncatedPowerSeries,
    eta_series,
    f_series,
    lambda_series,
    loggamma_half_series,
    series_exp,
    series_log,
    series_mul,
    series_recip,
)
from .contour import (
    ContourPlan,
    ZeroOrdinates,
    bundled_zeros,
    c_contour,
    f_eval,
    f_from_zeros,
    load_zeros,
    parse_zeros,
)
from .constants import (
    ConstantsRecord,
    c_from_stieltjes,
    d_asymptotic,
    d_exact,
    eta_from_stieltjes,
    lambda_from_S,
    lambda_from_stieltjes,
    lambda_from_zeros,
    s1,
    s2,
)

__version__ = "0.1.0"
