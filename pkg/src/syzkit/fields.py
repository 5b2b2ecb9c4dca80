"""Exact scalar arithmetic: rationals and prime fields.

A field object owns the element representation: rationals are
``fractions.Fraction`` (stdlib keeps lowest terms and a positive
denominator), mod-p residues are plain ints in ``[0, p)``.  Containers
(matrices, polynomials) carry their field and refuse to mix variants.
"""

from fractions import Fraction

from .errors import UnsupportedFieldError, VariantMismatchError

DEFAULT_PRIME = 32003


def _is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin, valid far beyond 64 bits of input
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
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


class RationalField:
    """The field Q; elements are Fraction."""

    name = "QQ"
    characteristic = 0

    def __call__(self, a, b=None):
        if b is not None:
            return Fraction(a, b)
        if isinstance(a, (int, Fraction)):
            return Fraction(a)
        raise UnsupportedFieldError(f"cannot coerce {a!r} into QQ")

    zero = Fraction(0)
    one = Fraction(1)

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
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def is_zero(self, a):
        return a == 0

    def to_str(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The field F_p; elements are ints in [0, p)."""

    characteristic = None  # set per instance

    def __init__(self, p):
        if not _is_prime(p):
            raise UnsupportedFieldError(f"modulus {p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1 % p

    def __call__(self, a, b=None):
        p = self.p
        if b is not None:
            return a % p * pow(b % p, p - 2, p) % p
        if isinstance(a, int):
            return a % p
        if isinstance(a, Fraction):
            if a.denominator % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return self(a.numerator, a.denominator)
        raise UnsupportedFieldError(f"cannot coerce {a!r} into {self.name}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in {self.name}")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def to_str(self, a):
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()

_gf_cache = {}


def GF(p=DEFAULT_PRIME):
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def check_same_field(f1, f2, where="operation"):
    if f1 != f2:
        raise VariantMismatchError(
            f"{where} mixes scalars over {f1!r} and {f2!r}", left=f1, right=f2
        )
