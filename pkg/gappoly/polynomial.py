"""Sparse integer polynomials in the positive gap variables g1..gk."""

import math
from collections import defaultdict
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

_FIELD_BITS = 16
_FIELD_MASK = (1 << _FIELD_BITS) - 1

Exponents = tuple[int, ...]


class NonPositiveGap(ValueError):
    pass


class GapPolynomial:
    """Immutable map from dense exponent vectors to nonzero integer coefficients."""

    __slots__ = ("nvars", "_terms", "_packed", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponents, int] | None = None):
        clean: dict[Exponents, int] = {}
        for exponents, coefficient in (terms or {}).items():
            exponents = tuple(exponents)
            if len(exponents) != nvars:
                raise ValueError(
                    f"Exponent vector {exponents} does not have length {nvars}"
                )
            if any(e < 0 for e in exponents):
                raise ValueError(f"Negative exponent in {exponents}")
            if coefficient:
                clean[exponents] = clean.get(exponents, 0) + int(coefficient)
        self.nvars = nvars
        self._terms = {e: c for e, c in clean.items() if c}
        self._packed = None
        self._hash = None

    @classmethod
    def _from_clean(cls, nvars: int, terms: dict[Exponents, int]) -> "GapPolynomial":
        poly = cls.__new__(cls)
        poly.nvars = nvars
        poly._terms = terms
        poly._packed = None
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, nvars: int) -> "GapPolynomial":
        return cls._from_clean(nvars, {})

    @classmethod
    def constant(cls, value: int, nvars: int) -> "GapPolynomial":
        value = int(value)
        return cls._from_clean(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def variable(cls, index: int, nvars: int) -> "GapPolynomial":
        """The gap variable g_{index+1} (0-based index)."""
        exponents = [0] * nvars
        exponents[index] = 1
        return cls._from_clean(nvars, {tuple(exponents): 1})

    @classmethod
    def gap_sum(cls, indices: Iterable[int], nvars: int) -> "GapPolynomial":
        terms: dict[Exponents, int] = {}
        for index in indices:
            exponents = [0] * nvars
            exponents[index] = 1
            key = tuple(exponents)
            terms[key] = terms.get(key, 0) + 1
        return cls._from_clean(nvars, terms)

    @property
    def terms(self) -> Mapping[Exponents, int]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (
            len(self._terms) == 1 and not any(next(iter(self._terms)))
        )

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("Polynomial is not constant")
        return next(iter(self._terms.values()), 0)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def coefficients(self) -> list[int]:
        return list(self._terms.values())

    def _check(self, other: "GapPolynomial") -> None:
        if other.nvars != self.nvars:
            raise ValueError(
                f"Gap polynomials over {self.nvars} and {other.nvars} variables"
            )

    def _coerce(self, other) -> "GapPolynomial":
        if isinstance(other, GapPolynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return GapPolynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other) -> "GapPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            total = terms.get(e, 0) + c
            if total:
                terms[e] = total
            else:
                terms.pop(e, None)
        return GapPolynomial._from_clean(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "GapPolynomial":
        return GapPolynomial._from_clean(
            self.nvars, {e: -c for e, c in self._terms.items()}
        )

    def __sub__(self, other) -> "GapPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "GapPolynomial":
        return (-self) + other

    def scale(self, factor: int) -> "GapPolynomial":
        if not factor:
            return GapPolynomial.zero(self.nvars)
        return GapPolynomial._from_clean(
            self.nvars, {e: c * factor for e, c in self._terms.items()}
        )

    def content(self) -> int:
        """Positive gcd of the coefficients (0 for the zero polynomial)."""
        return math.gcd(*self._terms.values())

    def divide_integer(self, divisor: int) -> "GapPolynomial":
        if any(c % divisor for c in self._terms.values()):
            raise ValueError(f"{divisor} does not divide every coefficient")
        return GapPolynomial._from_clean(
            self.nvars, {e: c // divisor for e, c in self._terms.items()}
        )

    def _packed_terms(self) -> list[tuple[int, int]]:
        if self._packed is None:
            self._packed = [
                (sum(e << (_FIELD_BITS * i) for i, e in enumerate(exponents)), c)
                for exponents, c in self._terms.items()
            ]
        return self._packed

    def _unpack(self, key: int) -> Exponents:
        return tuple(
            (key >> (_FIELD_BITS * i)) & _FIELD_MASK for i in range(self.nvars)
        )

    def __mul__(self, other) -> "GapPolynomial":
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return GapPolynomial.zero(self.nvars)
        if self.is_constant():
            return other.scale(self.constant_value())
        if other.is_constant():
            return self.scale(other.constant_value())

        # exponent vectors packed into one int so monomial products are int additions
        acc: dict[int, int] = defaultdict(int)
        right = other._packed_terms()
        for ka, ca in self._packed_terms():
            for kb, cb in right:
                acc[ka + kb] += ca * cb
        terms = {self._unpack(k): c for k, c in acc.items() if c}
        return GapPolynomial._from_clean(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "GapPolynomial":
        if exponent < 0:
            raise ValueError("Negative powers are not polynomials")
        result = GapPolynomial.constant(1, self.nvars)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == GapPolynomial.constant(other, self.nvars)
        if not isinstance(other, GapPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def evaluate(self, gaps: Sequence[Fraction]) -> Fraction:
        """Exact value at a strictly positive gap vector."""
        if len(gaps) != self.nvars:
            raise ValueError(f"Expected {self.nvars} gaps, got {len(gaps)}")
        if any(g <= 0 for g in gaps):
            raise NonPositiveGap(f"Gap values must be strictly positive: {list(gaps)}")
        return Fraction(self._evaluate_raw([Fraction(g) for g in gaps]))

    def _evaluate_raw(self, gaps: Sequence) -> Fraction | int:
        powers: list[dict[int, Fraction | int]] = [{0: 1} for _ in gaps]
        total = 0
        for exponents, coefficient in self._terms.items():
            term = coefficient
            for i, e in enumerate(exponents):
                if e:
                    cached = powers[i].get(e)
                    if cached is None:
                        cached = gaps[i] ** e
                        powers[i][e] = cached
                    term *= cached
            total += term
        return total

    def sorted_terms(self) -> list[tuple[Exponents, int]]:
        """Terms in graded-lex order: higher total degree first, then lex."""
        return sorted(
            self._terms.items(), key=lambda item: (-sum(item[0]), [-e for e in item[0]])
        )

    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exponents, coefficient in self.sorted_terms():
            factors = [
                f"g{i + 1}" if e == 1 else f"g{i + 1}^{e}"
                for i, e in enumerate(exponents)
                if e
            ]
            magnitude = abs(coefficient)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "·".join(factors)
            else:
                body = f"{magnitude}·" + "·".join(factors)
            pieces.append(("-" if coefficient < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"GapPolynomial({self.nvars}, {self.render()!r})"

    def coefficients_in(self, index: int) -> dict[int, "GapPolynomial"]:
        """Split into powers of g_{index+1}: {power: cofactor free of that variable}."""
        parts: dict[int, dict[Exponents, int]] = defaultdict(dict)
        for exponents, coefficient in self._terms.items():
            power = exponents[index]
            rest = exponents[:index] + (0,) + exponents[index + 1 :]
            parts[power][rest] = coefficient
        return {
            power: GapPolynomial._from_clean(self.nvars, terms)
            for power, terms in parts.items()
        }

    def divide_by_gap_run(self, first: int, last: int) -> "GapPolynomial | None":
        """Exact quotient by g_first + ... + g_last (0-based, inclusive), or None.

        Synthetic division in the variable g_first by (g_first + s).
        """
        if self.is_zero():
            return self
        tail = GapPolynomial.gap_sum(range(first + 1, last + 1), self.nvars)
        parts = self.coefficients_in(first)
        top = max(parts)
        if top == 0:
            return None
        lead = GapPolynomial.variable(first, self.nvars)
        quotient_parts: dict[int, GapPolynomial] = {}
        carry = GapPolynomial.zero(self.nvars)
        for power in range(top, 0, -1):
            current = parts.get(power, GapPolynomial.zero(self.nvars)) - carry
            quotient_parts[power - 1] = current
            carry = tail * current
        remainder = parts.get(0, GapPolynomial.zero(self.nvars)) - carry
        if not remainder.is_zero():
            return None
        quotient = GapPolynomial.zero(self.nvars)
        for power, cofactor in quotient_parts.items():
            quotient = quotient + cofactor * (lead**power)
        return quotient
