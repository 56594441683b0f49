"""Independent reference for the Bessel kernel: plain power series summed in
high-precision arithmetic. Written before the float64 implementation and kept
deliberately naive; precision is raised with the argument so the cancellation
of the series never eats into the requested accuracy.
"""

import mpmath as mp


def j0_reference(x, digits=None):
    """Zero-order Bessel function via sum((-x^2/4)^k / (k!)^2)."""
    x = abs(float(x))
    if digits is None:
        # the largest series term grows like e^(2x); keep headroom past it
        digits = 30 + int(x)
    with mp.workdps(digits):
        q = -(mp.mpf(x) ** 2) / 4
        term = mp.mpf(1)
        total = mp.mpf(1)
        k = 0
        while True:
            k += 1
            term *= q / (k * k)
            total += term
            if abs(term) < mp.mpf(10) ** (-digits):
                return float(total)
