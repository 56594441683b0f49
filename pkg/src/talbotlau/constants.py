"""Physical constants (CODATA 2018, SI units).

Only primitive constants live here so the module is importable from any
layer without side effects.
"""

import math

# Planck constant, exact by SI definition
PLANCK = 6.62607015e-34  # J s

HBAR = PLANCK / (2.0 * math.pi)  # J s

# Unified atomic mass unit
ATOMIC_MASS = 1.66053906660e-27  # kg

# Local gravitational acceleration used by the built-in presets
STANDARD_GRAVITY = 9.81  # m/s^2

# First positive zero of the zero-order Bessel function; reduction factors
# built on J0 are monotone in their argument only below this point.
J0_FIRST_ZERO = 2.404825557695773
