"""Ground fields: the rationals and prime fields GF(p).

All arithmetic in the engine is exact.  Rational coefficients are
``fractions.Fraction``; prime-field coefficients are plain ints in [0, p).
"""

from fractions import Fraction

DEFAULT_PRIME = 32003


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """A ground field, either QQ (characteristic 0) or GF(p)."""

    __slots__ = ("p",)

    def __init__(self, characteristic=0):
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or prime, got {characteristic}")
        self.p = characteristic

    @property
    def kind(self):
        return "rationals" if self.p == 0 else "prime-field"

    @property
    def characteristic(self):
        return self.p

    def __call__(self, n):
        """Coerce an int (or Fraction over QQ) into the field."""
        if self.p:
            return int(n) % self.p
        return Fraction(n)

    def zero(self):
        return 0 if self.p else Fraction(0)

    def one(self):
        return 1 if self.p else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if self.p:
            if a % self.p == 0:
                raise ZeroDivisionError("inverse of zero in GF(p)")
            return pow(a, self.p - 2, self.p)
        if a == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return Fraction(1) / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"


QQ = Field(0)


def GF(p):
    return Field(p)
