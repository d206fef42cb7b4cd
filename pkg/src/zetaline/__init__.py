"""zetaline: extremal short-interval norms of zeta-like Euler products on Re(s) = 1.

Numerical laboratory for the sign-twisted extremal product zeta_delta, its
closed-form constants, short-interval norm scans, near-extremal shift
searches, and the growth-exponent framework for general multiplicative
coefficient sequences (Dirichlet characters, Hecke eigenvalue models).
"""

__version__ = "0.1.0"

from .constants import EULER_GAMMA, MERTENS, PI, ZETA2
from .errors import (
    ConvergenceError,
    PathError,
    PoleError,
    PrecisionError,
    ZetalineError,
)
