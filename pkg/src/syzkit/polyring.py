"""Homogeneous multivariate polynomials over an exact field.

Variables are x0..xn (n+1 of them for P^n).  Monomials are exponent
tuples; supported orders are grevlex (default) and lex.  Every polynomial
is homogeneous: graded pieces are the whole data model, so inhomogeneous
input is rejected at construction.
"""

from math import comb

from .errors import HomogeneityError, ParseError, RingMismatchError
from .fields import check_same_field


def grevlex_key(exps):
    # larger key = larger monomial: graded, ties broken so the last nonzero
    # entry of the difference is negative
    return (sum(exps), tuple(-e for e in reversed(exps)))


def lex_key(exps):
    return exps


ORDER_KEYS = {"grevlex": grevlex_key, "lex": lex_key}


class PolyRing:
    """k[x0..xn] with a monomial order."""

    def __init__(self, field, num_vars, order="grevlex"):
        if order not in ORDER_KEYS:
            raise ParseError(f"unknown monomial order {order!r}")
        self.field = field
        self.num_vars = num_vars
        self.order = order
        self.key = ORDER_KEYS[order]
        self._mon_cache = {}

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.num_vars == other.num_vars and self.order == other.order)

    def __hash__(self):
        return hash((self.field, self.num_vars, self.order))

    def __repr__(self):
        return f"{self.field!r}[x0..x{self.num_vars - 1}]/{self.order}"

    def with_order(self, order):
        return PolyRing(self.field, self.num_vars, order)

    def gens(self):
        n = self.num_vars
        return [self.monomial(tuple(1 if j == i else 0 for j in range(n)))
                for i in range(n)]

    def zero(self, degree=None):
        return GradedPoly(self, {}, degree)

    def one(self):
        return self.monomial((0,) * self.num_vars)

    def monomial(self, exps, coeff=None):
        c = self.field.one if coeff is None else coeff
        return GradedPoly(self, {tuple(exps): c})

    def from_terms(self, terms, degree=None):
        return GradedPoly(self, dict(terms), degree)

    def monomials_of_degree(self, d):
        """All degree-d monomials sorted descending in the ring order."""
        if d < 0:
            return []
        if d not in self._mon_cache:
            n = self.num_vars
            mons = [e for e in _compositions(d, n)]
            mons.sort(key=self.key, reverse=True)
            assert len(mons) == comb(d + n - 1, n - 1)
            self._mon_cache[d] = mons
        return self._mon_cache[d]

    def piece_dim(self, d):
        if d < 0:
            return 0
        return comb(d + self.num_vars - 1, self.num_vars - 1)

    def to_vector(self, poly, degree=None):
        """Coefficient vector of a homogeneous poly in the degree basis."""
        d = poly.degree if degree is None else degree
        if poly.is_zero():
            return [self.field.zero] * self.piece_dim(d)
        if poly.degree != d:
            raise HomogeneityError(f"degree {poly.degree} piece requested at {d}")
        return [poly.coeffs.get(m, self.field.zero) for m in self.monomials_of_degree(d)]

    def parse(self, text):
        return _parse_poly(self, text)


def _compositions(d, n):
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, n - 1):
            yield (first,) + rest


class GradedPoly:
    """Homogeneous polynomial: dict of exponent-tuple -> nonzero coefficient."""

    __slots__ = ("ring", "coeffs", "_degree")

    def __init__(self, ring, coeffs, degree=None):
        self.ring = ring
        field = ring.field
        clean = {}
        deg = degree
        for exps, c in coeffs.items():
            if field.is_zero(c):
                continue
            e = tuple(exps)
            if len(e) != ring.num_vars:
                raise HomogeneityError(f"exponent tuple {e} has wrong arity")
            d = sum(e)
            if deg is None:
                deg = d
            elif d != deg:
                raise HomogeneityError(
                    f"mixed degrees {deg} and {d} in one graded polynomial")
            clean[e] = c
        self.coeffs = clean
        self._degree = deg

    @property
    def degree(self):
        return self._degree

    def is_zero(self):
        return not self.coeffs

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError("polynomials from different rings")

    def __add__(self, other):
        self._check(other)
        if not self.is_zero() and not other.is_zero() and self.degree != other.degree:
            raise HomogeneityError("sum of different degrees is not graded")
        f = self.ring.field
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = f.add(out.get(e, f.zero), c)
        return GradedPoly(self.ring, out, self._degree if self._degree is not None else other._degree)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        f = self.ring.field
        return GradedPoly(self.ring, {e: f.neg(c) for e, c in self.coeffs.items()},
                          self._degree)

    def scale(self, c):
        f = self.ring.field
        if f.is_zero(c):
            return GradedPoly(self.ring, {}, self._degree)
        return GradedPoly(self.ring, {e: f.mul(c, v) for e, v in self.coeffs.items()},
                          self._degree)

    def __mul__(self, other):
        self._check(other)
        f = self.ring.field
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = f.mul(c1, c2)
                if e in out:
                    out[e] = f.add(out[e], prod)
                else:
                    out[e] = prod
        deg = None
        if self._degree is not None and other._degree is not None:
            deg = self._degree + other._degree
        return GradedPoly(self.ring, out, deg)

    def mul_monomial(self, exps, coeff=None):
        f = self.ring.field
        c = f.one if coeff is None else coeff
        out = {tuple(a + b for a, b in zip(e, exps)): f.mul(c, v)
               for e, v in self.coeffs.items()}
        deg = None if self._degree is None else self._degree + sum(exps)
        return GradedPoly(self.ring, out, deg)

    def leading(self):
        """(exponents, coefficient) of the largest monomial."""
        if self.is_zero():
            raise ValueError("leading term of zero")
        e = max(self.coeffs, key=self.ring.key)
        return e, self.coeffs[e]

    def evaluate(self, point):
        """Evaluate at a tuple of field elements."""
        f = self.ring.field
        acc = f.zero
        for e, c in self.coeffs.items():
            term = c
            for xi, ei in zip(point, e):
                for _ in range(ei):
                    term = f.mul(term, xi)
            acc = f.add(acc, term)
        return acc

    def sorted_terms(self):
        return sorted(self.coeffs.items(), key=lambda t: self.ring.key(t[0]),
                      reverse=True)

    def __eq__(self, other):
        return (isinstance(other, GradedPoly) and self.ring == other.ring
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        return self.to_str()

    def to_str(self):
        if self.is_zero():
            return "0"
        f = self.ring.field
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"x{i}" + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(e) if k > 0)
            cs = f.to_str(c)
            if mono:
                if cs == "1":
                    term = mono
                elif cs == "-1":
                    term = "-" + mono
                else:
                    term = f"{cs}*{mono}"
            else:
                term = cs
            if parts and not term.startswith("-"):
                parts.append("+ " + term)
            elif parts:
                parts.append("- " + term[1:])
            else:
                parts.append(term)
        return " ".join(parts)


def graded_piece_matrix(ring, gens, d):
    """Matrix whose rows span the degree-d piece of the ideal (gens).

    Rows are monomial multiples m*g (deg m = d - deg g) written in the
    degree-d monomial basis; row order is deterministic."""
    rows = []
    for g in gens:
        if g.is_zero():
            continue
        if g.degree > d:
            continue
        for m in ring.monomials_of_degree(d - g.degree):
            rows.append(ring.to_vector(g.mul_monomial(m), d))
    from .linalg import Matrix
    if not rows:
        return Matrix(ring.field, [[ring.field.zero] * ring.piece_dim(d)])
    return Matrix(ring.field, rows)


def graded_piece_dim(ring, gens, d):
    return graded_piece_matrix(ring, gens, d).rank()


def span_dim(ring, polys, d):
    """Dimension of the linear span of homogeneous degree-d polynomials."""
    from .linalg import Matrix
    rows = [ring.to_vector(p, d) for p in polys if not p.is_zero()]
    if not rows:
        return 0
    return Matrix(ring.field, rows).rank()


# -- parser ---------------------------------------------------------------
#
# poly   := ['+'|'-'] term (('+'|'-') term)*
# term   := factor ('*' factor)*
# factor := coeff | var ['^' int]
# coeff  := int ['/' int]
# var    := 'x' int


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*/^()":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError(f"variable without index at position {i}")
            tokens.append(text[i:j])
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r} at position {i}")
    return tokens


def _parse_poly(ring, text):
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial")
    field = ring.field
    result = None
    pos = 0
    sign = 1
    while pos < len(tokens):
        if tokens[pos] in "+-":
            sign = -1 if tokens[pos] == "-" else 1
            pos += 1
            if pos >= len(tokens) or tokens[pos] in "+-":
                raise ParseError("dangling sign")
        coeff = field.one if sign == 1 else field.neg(field.one)
        exps = [0] * ring.num_vars
        expect_factor = True
        while pos < len(tokens) and tokens[pos] not in "+-":
            tok = tokens[pos]
            if tok == "*":
                pos += 1
                expect_factor = True
                continue
            if not expect_factor:
                raise ParseError(f"missing '*' before {tok!r}")
            if tok.isdigit():
                num = int(tok)
                pos += 1
                if pos < len(tokens) and tokens[pos] == "/":
                    pos += 1
                    if pos >= len(tokens) or not tokens[pos].isdigit():
                        raise ParseError("malformed rational coefficient")
                    coeff = field.mul(coeff, field(num, int(tokens[pos])))
                    pos += 1
                else:
                    coeff = field.mul(coeff, field(num))
            elif tok.startswith("x"):
                idx = int(tok[1:])
                if idx >= ring.num_vars:
                    raise ParseError(f"variable {tok} out of range "
                                     f"(ring has x0..x{ring.num_vars - 1})")
                pos += 1
                power = 1
                if pos < len(tokens) and tokens[pos] == "^":
                    pos += 1
                    if pos >= len(tokens) or not tokens[pos].isdigit():
                        raise ParseError("malformed exponent")
                    power = int(tokens[pos])
                    pos += 1
                exps[idx] += power
            else:
                raise ParseError(f"unexpected token {tok!r}")
            expect_factor = False
        term = GradedPoly(ring, {tuple(exps): coeff})
        result = term if result is None else result + term
        sign = 1
    return result
