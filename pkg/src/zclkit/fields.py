"""Exact scalar arithmetic over prime fields F_p and the rationals.

Scalars are plain Python values: residues in ``range(p)`` for a prime
field, :class:`fractions.Fraction` for the rationals.  All normalization
rules (canonical residues, lowest terms with positive denominator) are
therefore enforced by construction; keeping scalars unboxed keeps the
row-reduction inner loops fast.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .errors import FieldMismatchError, ValidationError

Scalar = Union[int, Fraction]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for anything we will ever see."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """F_p when ``p`` is a prime, the rationals when ``p`` is ``None``."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None:
            if not isinstance(self.p, int) or isinstance(self.p, bool):
                raise ValidationError("field modulus must be an integer")
            if not is_prime(self.p):
                raise ValidationError(f"field modulus {self.p} is not prime")

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return self.p if self.p is not None else 0

    @property
    def zero(self) -> Scalar:
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.p is not None else Fraction(1)

    def __str__(self) -> str:
        return f"F{self.p}" if self.p is not None else "Q"

    # -- element admission -------------------------------------------------

    def check(self, x: Scalar) -> Scalar:
        """Return ``x`` if it is a canonical element of this field, else raise."""
        if self.p is not None:
            if isinstance(x, int) and not isinstance(x, bool) and 0 <= x < self.p:
                return x
            raise FieldMismatchError(
                f"{x!r} is not a canonical residue of {self} (expected int in [0, {self.p}))"
            )
        if isinstance(x, Fraction):
            return x
        raise FieldMismatchError(f"{x!r} is not a rational scalar (expected Fraction)")

    def coerce(self, x: Scalar | str) -> Scalar:
        """Normalize an int, Fraction, or scalar literal into this field."""
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool):
            raise FieldMismatchError("booleans are not scalars")
        if self.p is not None:
            if isinstance(x, int):
                return x % self.p
            if isinstance(x, Fraction) and x.denominator == 1:
                return x.numerator % self.p
            raise FieldMismatchError(f"cannot coerce {x!r} into {self}")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise FieldMismatchError(f"cannot coerce {x!r} into {self}")

    # -- arithmetic (operands assumed canonical) ---------------------------

    def add(self, x: Scalar, y: Scalar) -> Scalar:
        return (x + y) % self.p if self.p is not None else x + y

    def sub(self, x: Scalar, y: Scalar) -> Scalar:
        return (x - y) % self.p if self.p is not None else x - y

    def mul(self, x: Scalar, y: Scalar) -> Scalar:
        return (x * y) % self.p if self.p is not None else x * y

    def neg(self, x: Scalar) -> Scalar:
        return (-x) % self.p if self.p is not None else -x

    def inv(self, x: Scalar) -> Scalar:
        if not x:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        return pow(x, -1, self.p) if self.p is not None else 1 / x

    def div(self, x: Scalar, y: Scalar) -> Scalar:
        if not y:
            raise ZeroDivisionError(f"division by zero in {self}")
        return x * pow(y, -1, self.p) % self.p if self.p is not None else x / y

    def arith(self, op: str, x: Scalar, y: Scalar) -> Scalar:
        """Checked entry point: validates operands, then computes ``x op y``."""
        x = self.check(x)
        y = self.check(y)
        if op == "add":
            return self.add(x, y)
        if op == "sub":
            return self.sub(x, y)
        if op == "mul":
            return self.mul(x, y)
        if op == "div":
            return self.div(x, y)
        raise ValidationError(f"unknown scalar operation {op!r}")

    # -- text form ----------------------------------------------------------

    def parse(self, text: str) -> Scalar:
        """Parse ``[-]digits`` or ``[-]digits/digits`` into a canonical scalar."""
        s = text.strip().replace("−", "-")
        num, slash, den = s.partition("/")
        try:
            n = int(num, 10)
        except ValueError:
            raise ValidationError(f"malformed scalar literal {text!r}") from None
        if not slash:
            return n % self.p if self.p is not None else Fraction(n)
        den = den.strip()
        if not den.isdigit():
            raise ValidationError(f"malformed scalar literal {text!r}")
        d = int(den, 10)
        if d == 0:
            raise ZeroDivisionError(f"zero denominator in scalar literal {text!r}")
        if self.p is not None:
            if d % self.p == 0:
                raise ZeroDivisionError(
                    f"denominator of {text!r} is zero in {self}"
                )
            return n * pow(d, -1, self.p) % self.p
        return Fraction(n, d)

    def format(self, x: Scalar) -> str:
        return str(x)

    def iter_elements(self) -> Iterator[Scalar]:
        """All field elements; prime fields only (used by exhaustive tests)."""
        if self.p is None:
            raise ValidationError("cannot enumerate the rationals")
        return iter(range(self.p))


QQ = Field.rationals()
GF2 = Field.prime(2)
GF3 = Field.prime(3)
GF5 = Field.prime(5)
