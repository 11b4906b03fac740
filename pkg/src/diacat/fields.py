"""Coefficient fields for exact linear algebra.

Scalars are plain Python values: ``fractions.Fraction`` over the rationals
(always kept in lowest terms with positive denominator) and ints in
``[0, p)`` over a prime field.  Containers (matrices, tensors, algebras)
carry the ``Field`` descriptor; the descriptor supplies the arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError


class Field:
    name: str

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def of(self, x):
        """Coerce an int (or scalar of this field) into the field."""
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero()

    def parse(self, text):
        """Parse a coefficient string such as "5", "-2" or "3/7"."""
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def elements(self):
        """Iterate all field elements; only finite fields support this."""
        raise NotImplementedError(f"{self.name} is not finite")

    def __repr__(self):
        return self.name


class Rationals(Field):
    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def of(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def is_zero(self, a):
        return a == 0

    def parse(self, text):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational coefficient {text!r}: {exc}") from exc

    def format(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"

    def zero(self):
        return 0

    def one(self):
        return 1 % self.p

    def of(self, x):
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def parse(self, text):
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                d = self.of(int(den))
                if d == 0:
                    raise ParseError(f"bad coefficient {text!r}: zero denominator mod {self.p}")
                return self.mul(self.of(int(num)), self.inv(d))
            return self.of(int(text))
        except ValueError as exc:
            raise ParseError(f"bad coefficient {text!r} over {self.name}: {exc}") from exc

    def format(self, a):
        return str(a % self.p)

    def elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


QQ = Rationals()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def field_from_name(name, p=None) -> Field:
    """Resolve the document encoding of a field ("Q", or "Fp" plus p)."""
    if name == "Q":
        return QQ
    if name == "Fp":
        if not isinstance(p, int):
            raise ParseError('field "Fp" needs an integer "p" entry')
        try:
            return GF(p)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown field {name!r} (expected 'Q' or 'Fp')")
