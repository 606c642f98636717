"""
Exact integer Laurent polynomials in one variable ``z``.

Values are immutable and store only nonzero coefficients, so two
polynomials are equal exactly when their term maps are equal.
"""
import re
from typing import Dict, Iterator, Mapping, Optional, Tuple

from .exceptions import PolynomialParseException, ValidationException

_TERM_RE = re.compile(r'(?P<coeff>\d+)?(?P<var>z(?:\^(?P<exp>-?\d+))?)?')


class LaurentPoly:
    """Integer-coefficient Laurent polynomial stored as exponent -> coefficient."""

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms: Optional[Mapping[int, int]] = None):
        cleaned = {}
        for exp, coeff in (terms or {}).items():
            if not isinstance(exp, int) or not isinstance(coeff, int):
                raise TypeError("exponents and coefficients must be integers")
            if coeff:
                cleaned[exp] = coeff
        self._terms: Tuple[Tuple[int, int], ...] = tuple(sorted(cleaned.items()))
        self._hash = None

    # Constructors

    @classmethod
    def zero(cls) -> 'LaurentPoly':
        return cls()

    @classmethod
    def one(cls) -> 'LaurentPoly':
        return cls({0: 1})

    @classmethod
    def constant(cls, c: int) -> 'LaurentPoly':
        return cls({0: c})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> 'LaurentPoly':
        return cls({exp: coeff})

    @classmethod
    def loop_factor(cls) -> 'LaurentPoly':
        """The value of a single circle, ``z^-1 + z``."""
        return cls({-1: 1, 1: 1})

    # Introspection

    @property
    def terms(self) -> Dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(self._terms)

    def coefficient(self, exp: int) -> int:
        return dict(self._terms).get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def min_degree(self) -> Optional[int]:
        return self._terms[0][0] if self._terms else None

    def max_degree(self) -> Optional[int]:
        return self._terms[-1][0] if self._terms else None

    # Arithmetic

    def __add__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        other = _coerce(other)
        result = dict(self._terms)
        for exp, coeff in other._terms:
            result[exp] = result.get(exp, 0) + coeff
        return LaurentPoly(result)

    __radd__ = __add__

    def __neg__(self) -> 'LaurentPoly':
        return LaurentPoly({exp: -coeff for exp, coeff in self._terms})

    def __sub__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        return self + (-_coerce(other))

    def __rsub__(self, other) -> 'LaurentPoly':
        return _coerce(other) - self

    def __mul__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        other = _coerce(other)
        result: Dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                result[e1 + e2] = result.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(result)

    __rmul__ = __mul__

    def scale(self, c: int) -> 'LaurentPoly':
        return LaurentPoly({exp: coeff * c for exp, coeff in self._terms})

    def shift(self, k: int) -> 'LaurentPoly':
        """Multiply by ``z^k``."""
        return LaurentPoly({exp + k: coeff for exp, coeff in self._terms})

    def __pow__(self, n: int) -> 'LaurentPoly':
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def eval_at_one(self) -> int:
        return sum(coeff for _, coeff in self._terms)

    # Comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # Serialization

    def to_text(self) -> str:
        """Canonical text: ascending exponents, unit coefficients omitted."""
        if not self._terms:
            return "0"

        parts = []
        for index, (exp, coeff) in enumerate(self._terms):
            magnitude = abs(coeff)
            if exp == 0:
                body = str(magnitude)
            else:
                var = "z" if exp == 1 else f"z^{exp}"
                body = var if magnitude == 1 else f"{magnitude}{var}"

            if index == 0:
                parts.append(f"-{body}" if coeff < 0 else body)
            else:
                parts.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(parts)

    @classmethod
    def from_text(cls, text: str) -> 'LaurentPoly':
        """Parse the canonical text form; raises with the offending position."""
        s = text.strip()
        offset = len(text) - len(text.lstrip())
        if not s:
            raise PolynomialParseException("empty polynomial text", offset)
        if s == "0":
            return cls.zero()

        result: Dict[int, int] = {}
        pos = 0
        first = True
        while pos < len(s):
            sign = 1
            if first:
                if s[pos] == '-':
                    sign = -1
                    pos += 1
            else:
                if s[pos:pos + 3] == ' + ':
                    pos += 3
                elif s[pos:pos + 3] == ' - ':
                    sign = -1
                    pos += 3
                else:
                    raise PolynomialParseException("expected ' + ' or ' - '", offset + pos)

            match = _TERM_RE.match(s, pos)
            if not match or match.end() == pos:
                raise PolynomialParseException("expected a term", offset + pos)

            coeff_text, var, exp_text = match.group('coeff'), match.group('var'), match.group('exp')
            if coeff_text is not None and int(coeff_text) == 0:
                raise PolynomialParseException("zero coefficient", offset + pos)
            coeff = int(coeff_text) if coeff_text is not None else 1
            if var is None:
                exp = 0
            elif exp_text is None:
                exp = 1
            else:
                exp = int(exp_text)
            if exp in result:
                raise PolynomialParseException(f"repeated exponent {exp}", offset + pos)

            result[exp] = sign * coeff
            pos = match.end()
            first = False

        return cls(result)

    def to_json(self) -> Dict[str, int]:
        return {str(exp): coeff for exp, coeff in self._terms}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> 'LaurentPoly':
        try:
            return cls({int(exp): int(coeff) for exp, coeff in data.items()})
        except (TypeError, ValueError, AttributeError) as e:
            raise ValidationException(f"Invalid polynomial JSON: {e}") from e

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"

    def __reduce__(self):
        return (LaurentPoly, (dict(self._terms),))


def _coerce(value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly.constant(value)
    raise TypeError(f"cannot combine LaurentPoly with {type(value).__name__}")


def loop_factor() -> LaurentPoly:
    return LaurentPoly.loop_factor()


def eval_at_one(p: LaurentPoly) -> int:
    return p.eval_at_one()


def to_text(p: LaurentPoly) -> str:
    return p.to_text()


def from_text(s: str) -> LaurentPoly:
    return LaurentPoly.from_text(s)


Z = LaurentPoly.monomial(1)
