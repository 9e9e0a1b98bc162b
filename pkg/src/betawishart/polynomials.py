"""Dense univariate polynomials over an exact-rational or big-float scalar type.

Coefficients are stored low degree first; the zero polynomial is the empty
coefficient list.  Everything here is pure and immutable-by-convention:
operations return new polynomials.
"""

from fractions import Fraction

from .fields import field_of


def _trim(coeffs):
    i = len(coeffs)
    while i > 0 and coeffs[i - 1] == 0:
        i -= 1
    return list(coeffs[:i])


class DensePolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim(list(coeffs))

    @property
    def degree(self):
        """Degree, with the convention degree(0) = -1."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, DensePolynomial):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __add__(self, other):
        field_of(self.coeffs + other.coeffs)  # reject exact/float mixtures
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return DensePolynomial(out)

    def __neg__(self):
        return DensePolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        if s == 0:
            return DensePolynomial()
        return DensePolynomial([c * s for c in self.coeffs])

    def shift_up(self):
        """Multiply by x."""
        if not self.coeffs:
            return DensePolynomial()
        zero = self.coeffs[0] * 0
        return DensePolynomial([zero] + self.coeffs)

    def derivative(self):
        return DensePolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; exact when coefficients and x are rational."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def coefficient(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __repr__(self):
        return f"DensePolynomial({self.coeffs!r})"

    def pretty(self, var="x"):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*{var}" if c != 1 else var)
            else:
                terms.append(f"{c}*{var}^{i}" if c != 1 else f"{var}^{i}")
        return " + ".join(terms)


def constant(value):
    return DensePolynomial([value])


def combine_recursion_step(s1, s0, a, b, c):
    """Return (x + a)*s1 - b*x*s1' + c*x*s0 in canonical form.

    This is the elementary update of the smallest-eigenvalue recursion; the
    three contributions collapse into one pass over the coefficients:
    out[k] = s1[k-1] + (a - b*k)*s1[k] + c*s0[k-1].
    """
    field_of(s1.coeffs + s0.coeffs + [v for v in (a, b, c) if not isinstance(v, int)])
    p, q = s1.coeffs, s0.coeffs
    out_len = max(len(p) + 1, len(q) + 1) if (p or q) else 0
    out = [0] * out_len
    for k in range(len(p)):
        out[k + 1] = p[k]
        out[k] = out[k] + (a - b * k) * p[k]
    if c != 0:
        for k in range(len(q)):
            out[k + 1] = out[k + 1] + c * q[k]
    return DensePolynomial(out)


def from_int_coeffs(values):
    """Convenience: build an exact polynomial from ints/strings like '3/2'."""
    return DensePolynomial([Fraction(v) for v in values])
