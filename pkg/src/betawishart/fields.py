"""Coefficient scalars for the exact and high-precision float backends.

Exact mode works over ``fractions.Fraction`` (arbitrary precision, no
rounding).  Float mode works over ``gmpy2.mpfr`` at a fixed mantissa
precision, needed when beta is irrational (beta = e, pi, ...) or when exact
arithmetic would be too slow at very high polynomial degree.
"""

from contextlib import contextmanager
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

DEFAULT_PRECISION_BITS = 256

EXACT = "exact"
FLOAT = "float"


class MixedFieldError(TypeError):
    """Raised when exact-rational and float scalars are mixed in one polynomial operation."""


@contextmanager
def precision_bits(bits):
    """Run a block with the gmpy2 working precision set to ``bits``."""
    ctx = gmpy2.context(precision=int(bits))
    with ctx:
        yield ctx


def is_exact_scalar(x):
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def field_of(values):
    """Return EXACT, FLOAT, or None (all plain ints, compatible with either)."""
    has_frac = False
    has_float = False
    for v in values:
        if isinstance(v, Fraction):
            has_frac = True
        elif isinstance(v, (mpfr, float)):
            has_float = True
        elif not isinstance(v, int):
            raise TypeError(f"unsupported coefficient type {type(v).__name__}")
    if has_frac and has_float:
        raise MixedFieldError("cannot mix exact-rational and float coefficients")
    if has_frac:
        return EXACT
    if has_float:
        return FLOAT
    return None


def to_mpfr(x, bits=None):
    """Convert an int/Fraction/float/mpfr to mpfr at the given (or current) precision."""
    if bits is None:
        bits = gmpy2.get_context().precision
    if isinstance(x, Fraction):
        return mpfr(gmpy2.mpq(x.numerator, x.denominator), bits)
    return mpfr(x, bits)


def to_float(x):
    """Lossy conversion to a Python float (for reporting and plotting paths)."""
    if isinstance(x, Fraction):
        return x.numerator / x.denominator
    return float(x)


def parse_real(text, bits=DEFAULT_PRECISION_BITS):
    """Parse a scalar given as ``p/q``, a decimal literal, or ``pi``/``e`` tokens.

    ``p/q`` and decimal literals produce exact Fractions; the symbolic tokens
    (optionally with an integer multiplier, e.g. ``5pi``) produce mpfr values
    at ``bits`` precision.
    """
    text = text.strip().lower()
    for token, make in (("pi", gmpy2.const_pi), ("e", lambda: gmpy2.exp(1))):
        if text.endswith(token):
            head = text[: -len(token)]
            mult = Fraction(head) if head and head != "+" else Fraction(-1 if head == "-" else 1)
            with precision_bits(bits):
                return to_mpfr(mult) * make()
    return Fraction(text)


def format_scalar(x):
    """Canonical text form: ``p/q`` for exact values, repr-float otherwise."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if isinstance(x, int):
        return str(x)
    return repr(float(x))
