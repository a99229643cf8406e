"""Univariate polynomials over the rationals and Sturm root counting.

Squarefree parts and Sturm sequences come from sympy; values stay ``Fraction``.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import sympy
from sympy import QQ

LAMBDA = sympy.Symbol("λ")


class EndpointIsRoot(ValueError):
    def __init__(self, endpoint: Fraction):
        super().__init__(f"Interval endpoint {endpoint} is a root of the polynomial")
        self.endpoint = endpoint


def _trim(coefficients: Iterable) -> tuple[Fraction, ...]:
    values = [Fraction(c) for c in coefficients]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


def to_sympy_rational(value) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def from_sympy_rational(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True)
class UnivariatePolynomial:
    """Coefficients in ascending degree; the zero polynomial is empty."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _trim(self.coefficients))

    @classmethod
    def from_sympy(cls, poly: sympy.Poly) -> "UnivariatePolynomial":
        return cls(tuple(from_sympy_rational(c) for c in reversed(poly.all_coeffs())))

    @classmethod
    def from_roots(cls, roots: Sequence) -> "UnivariatePolynomial":
        result = sympy.Poly(1, LAMBDA, domain=QQ)
        for root in roots:
            result *= sympy.Poly([1, -to_sympy_rational(root)], LAMBDA, domain=QQ)
        return cls.from_sympy(result)

    def as_sympy(self) -> sympy.Poly:
        descending = [to_sympy_rational(c) for c in reversed(self.coefficients)]
        return sympy.Poly(descending or [0], LAMBDA, domain=QQ)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other: "UnivariatePolynomial") -> "UnivariatePolynomial":
        return UnivariatePolynomial.from_sympy(self.as_sympy() + other.as_sympy())

    def __neg__(self) -> "UnivariatePolynomial":
        return UnivariatePolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "UnivariatePolynomial") -> "UnivariatePolynomial":
        return UnivariatePolynomial.from_sympy(self.as_sympy() - other.as_sympy())

    def __mul__(self, other) -> "UnivariatePolynomial":
        if isinstance(other, UnivariatePolynomial):
            return UnivariatePolynomial.from_sympy(self.as_sympy() * other.as_sympy())
        return UnivariatePolynomial(tuple(c * Fraction(other) for c in self.coefficients))

    __rmul__ = __mul__

    def derivative(self) -> "UnivariatePolynomial":
        return UnivariatePolynomial.from_sympy(self.as_sympy().diff(LAMBDA))

    def squarefree_part(self) -> "UnivariatePolynomial":
        if self.degree < 1:
            return self
        return UnivariatePolynomial.from_sympy(self.as_sympy().sqf_part())

    def cauchy_bound(self) -> Fraction:
        """1 + max |c_i / c_deg|; every root lies strictly inside (-bound, bound)."""
        if self.degree < 1:
            return Fraction(1)
        lead = abs(self.leading)
        return 1 + max(abs(c) / lead for c in self.coefficients[:-1])

    def render(self, variable: str = "λ") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for power in reversed(range(len(self.coefficients))):
            c = self.coefficients[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if power == 0:
                body = str(magnitude)
            else:
                head = "" if magnitude == 1 else f"{magnitude}·"
                body = head + (variable if power == 1 else f"{variable}^{power}")
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


@dataclass(frozen=True)
class SturmChain:
    polys: tuple[UnivariatePolynomial, ...]

    @classmethod
    def of(cls, p: UnivariatePolynomial) -> "SturmChain":
        return cls(tuple(UnivariatePolynomial.from_sympy(q) for q in p.as_sympy().sturm()))

    def variations(self, x: Fraction) -> int:
        signs = [v > 0 for v in (p(x) for p in self.polys) if v != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(
    p: UnivariatePolynomial,
    lo: Fraction | None = None,
    hi: Fraction | None = None,
) -> int:
    """Number of distinct real roots of p in (lo, hi]; None is an infinite endpoint."""
    if p.is_zero():
        raise ValueError("sturm_count needs a nonzero polynomial")
    base = p.squarefree_part()
    for endpoint in (lo, hi):
        if endpoint is not None and base(Fraction(endpoint)) == 0:
            raise EndpointIsRoot(Fraction(endpoint))
    if base.degree < 1:
        return 0

    bound = base.cauchy_bound()
    left = -bound if lo is None else Fraction(lo)
    right = bound if hi is None else Fraction(hi)
    if left >= right:
        return 0

    chain = SturmChain.of(base)
    return chain.variations(left) - chain.variations(right)


def real_root_count(p: UnivariatePolynomial) -> int:
    return sturm_count(p, None, None)


def count_per_interval(
    p: UnivariatePolynomial, cuts: Sequence[Fraction]
) -> tuple[int, ...]:
    """Root counts on (-inf, c1), (c1, c2), ..., (ck, inf) for ascending cuts."""
    bounds: list[Fraction | None] = [None, *cuts, None]
    return tuple(sturm_count(p, lo, hi) for lo, hi in zip(bounds, bounds[1:]))
