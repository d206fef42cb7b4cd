"""Mathematical constants used across the package (double precision)."""

import math

# Euler-Mascheroni constant
EULER_GAMMA = 0.5772156649015329

PI = math.pi
LOG2 = math.log(2.0)

# zeta(2) = pi^2 / 6
ZETA2 = math.pi**2 / 6.0

# Mertens constant: lim_N (sum_{p<=N} 1/p - log log N)
MERTENS = 0.2614972128476428

# Stieltjes constants gamma_1, gamma_2 for the Laurent expansion of zeta at s=1:
#   zeta(s) = 1/(s-1) + sum_{n>=0} (-1)^n gamma_n (s-1)^n / n!
STIELTJES_1 = -0.0728158454836767
STIELTJES_2 = -0.009690363192872318
