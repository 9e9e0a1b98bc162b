"""Frozen closed-form reference cases used by the verify suites and the test battery.

Each unrestricted case freezes f(x) = exp(-beta*n*x/2) * x^alpha * P(x)/D as
(poly ascending, divisor); each fixed-trace case freezes
f_F(x) = (1-nx)^tail * x^alpha * scale * P(x) with P ascending.  Symbolic
entries (beta = e, pi) carry coefficient-builder callables evaluated at a
requested float precision.
"""

from fractions import Fraction

import gmpy2

from .fields import precision_bits, to_mpfr

# (n, alpha, beta) -> (ascending integer polynomial multiplying x^alpha, divisor)
UNRESTRICTED_EXACT = {
    (4, 3, Fraction(1, 2)): (
        [1490227200, 958003200, 300174336, 60230016, 8297856, 804384, 54768, 2520, 72, 1],
        217945728000,
    ),
    (3, 4, Fraction(1)): (
        [6652800, 5322240, 2056320, 504000, 85680, 10080, 800, 40, 1],
        464486400,
    ),
    (5, 2, Fraction(2)): (
        [302400, 604800, 524160, 241920, 64800, 10320, 960, 48, 1],
        17280,
    ),
    (3, 3, Fraction(4)): (
        [16 * c for c in (6615, 11340, 8400, 3360, 735, 84, 4)],
        1575,
    ),
}

# (n, alpha) -> (tail exponent offset handled by caller, scale, ascending polynomial)
# f_F(x) = scale * (1-n x)^tail * x^alpha * P(x); tail = gamma - n*alpha - 2.
FIXED_TRACE_EXACT = {
    (3, 4, Fraction(1, 5)): (
        Fraction(220712943321, 305834375),
        [77, -440, 1276, -2120, 1998, -16200, 74044, -122040, 68397],
    ),
    (4, 3, Fraction(1)): (
        -36480,
        [-12, -27, -112, 728, 12768, -77728, 197120, -288960, 159488, 94976],
    ),
    (5, 2, Fraction(2)): (
        628320,
        [1, 22, 142, -1234, -580, 4676, 29788, -92420, 75355],
    ),
    (4, 3, Fraction(4)): (
        7238088,
        [3, 27, 43, -749, -2940, 23884, -53204, 63564, -44528, 3472],
    ),
}


def unrestricted_e_case(bits=256):
    """(n=3, alpha=2, beta=e): kappa_j coefficients for j = 2..6 at `bits` precision."""
    with precision_bits(bits):
        e = gmpy2.exp(to_mpfr(1))
        den = 64 * (e + 1) * (e + 2) ** 2 * (e + 4)
        # coefficients of x^2..x^6 in the bracketed polynomial
        nums = [
            192 * e**3 + 720 * e**4 + 960 * e**5 + 540 * e**6 + 108 * e**7,
            192 * e**4 + 624 * e**5 + 648 * e**6 + 216 * e**7,
            96 * e**5 + 240 * e**6 + 144 * e**7,
            24 * e**6 + 36 * e**7,
            3 * e**7,
        ]
        return [v / den for v in nums]


def fixed_trace_pi_case(bits=256):
    """(n=3, alpha=2, beta=pi): (tail, coefficients of x^2..x^6 in the polynomial factor)."""
    with precision_bits(bits):
        pi = gmpy2.const_pi()
        scale = 9 * (3 * pi + 2) * (3 * pi + 4) * (3 * pi + 7) * (3 * pi + 8) / (
            2 * (pi + 2) * (pi + 4)
        )
        poly = [pi + 2, to_mpfr(-4), 8 - 6 * pi, to_mpfr(-36), 42 + 9 * pi]
        return 3 * pi + 1, [scale * c for c in poly]


# (n, alpha, beta as text) -> (x, printed value)
HYP1F1_VALUES = [
    (3, 6, "1/3", 10, 22.6555),
    (4, 5, "1", 5, 335.899),
    (5, 3, "2", 8, 87447.5),
    (5, 4, "3", 2, 320.040),
    (7, 3, "4", 1, 72.2218),
    (3, 2, "5pi", 7, 203.910),
]

# Worked partition example: (n=5, alpha=3, beta=2), r=7 and the four mixed moments.
PARTITION_EXAMPLE = {
    "params": (5, 3, 2),
    "r": 7,
    "kappa_r": Fraction(159, 16),
    "mixed_moments": [
        ((0, 2, 3, 3), 3175200),
        ((1, 1, 3, 3), 1360800),
        ((1, 2, 2, 3), 680400),
        ((2, 2, 2, 2), 302400),
    ],
}
