"""Concrete subschemes of P^n: saturated ideals with cached Hilbert data,
section counts of twisted ideal sheaves, the h1 closed form for point sets
on the plane, Riemann-Roch section counts on polarization curves, and the
restriction-to-curve injectivity test.

The polarization is H = d*L; all degree arguments of the cohomology
counters are in L units (twist by kH passes k*d here).
"""

from math import comb

from .errors import (CodimensionError, GeometricPositionError, InputError,
                     NotSaturatedError, SpecialityError)
from .fields import QQ
from .groebner import Ideal
from .linalg import Matrix
from .polyring import PolyRing


class Polarization:
    """H = d*L on P^n together with the genus of the induced curve C in |H|
    (a plane curve for n = 2, the complete intersection of two degree-d
    forms for n = 3)."""

    def __init__(self, n, d):
        if d < 1:
            raise InputError("polarization multiplier must be at least 1", d=d)
        if n not in (2, 3):
            raise InputError("ambient must be P^2 or P^3", n=n)
        self.n = n
        self.d = d
        if n == 2:
            self.genus = (d - 1) * (d - 2) // 2
        else:
            self.genus = d * d * (d - 2) + 1
        # slope hypotheses downstream assume g >= 1
        self.genus_warning = self.genus < 1

    def curve_degree(self, m):
        """deg O_C(mH) in L-intersection units: m * d^n."""
        return m * self.d ** self.n

    def __repr__(self):
        return f"Polarization(n={self.n}, d={self.d}, g={self.genus})"


def _point_ideal(ring, point):
    """Vanishing (prime) ideal of a single reduced point: the 2x2 minors
    of the coordinate row against the variable row."""
    f = ring.field
    gens = []
    n = ring.num_vars
    xs = ring.gens()
    for i in range(n):
        for j in range(i + 1, n):
            g = xs[i].scale(point[j]) - xs[j].scale(point[i])
            if not g.is_zero():
                gens.append(g)
    return Ideal(ring, gens)


def points_ideal(ring, points):
    """Saturated vanishing ideal of a reduced point set (intersection of
    the point primes)."""
    f = ring.field
    pts = []
    for p in points:
        cp = tuple(f(c) for c in p)
        if all(f.is_zero(c) for c in cp):
            raise InputError("projective point cannot be all zeros")
        pts.append(cp)
    if not pts:
        return Ideal(ring, [ring.one()])
    current = _point_ideal(ring, pts[0])
    for p in pts[1:]:
        current = current.intersect(_point_ideal(ring, p))
    return Ideal(ring, current.gb)


class SubschemeData:
    """A saturated subscheme of P^n with cached ideal-theoretic data.

    Construction rejects non-saturated generators and codimension <= 1
    (an invertible ideal sheaf twists to a line bundle, which is already
    stable, so the kernel machinery has nothing to do)."""

    def __init__(self, ring, gens, points=None, name=None, check=True):
        self.ring = ring
        self.n = ring.num_vars - 1
        self.ideal = Ideal(ring, gens)
        self.points = [tuple(ring.field(c) for c in p) for p in points] if points else None
        self.name = name
        if check and not self.ideal.is_zero() and not self.ideal.is_saturated():
            raise NotSaturatedError(
                "subscheme ideal is not saturated; saturate before constructing")
        aff = self.ideal.krull_dim_quotient() if not self.ideal.is_zero() else self.n + 1
        self.proj_dim = aff - 1
        self.codim = self.n - self.proj_dim
        if check and self.codim < 2:
            raise CodimensionError(
                "codimension must be at least 2: a divisor has invertible "
                "ideal sheaf, which is a line bundle and already stable",
                codim=self.codim)
        self._hp = None
        self._degree = None
        if check and self.points is not None:
            for p in self.points:
                for g in self.ideal.gens:
                    if not ring.field.is_zero(g.evaluate(p)):
                        raise InputError("generator does not vanish at a listed point")
            assert self.degree == len(self.points)
            r = self.regularity()
            for k in range(max(r, 0), max(r, 0) + 3):
                assert self.ideal.quotient_piece_dim(k) == len(self.points)

    @property
    def is_empty(self):
        return self.ideal.is_unit()

    def hilbert_polynomial(self):
        if self._hp is None:
            self._hp = self.ideal.hilbert_polynomial()
        return self._hp

    @property
    def degree(self):
        if self._degree is None:
            if self.is_empty:
                self._degree = 0
            else:
                hp = self.hilbert_polynomial()
                top = max((j for j, a in enumerate(hp) if a), default=0)
                self._degree = hp[top]
        return self._degree

    def regularity(self):
        return self.ideal.regularity()

    def quotient_hf(self, k):
        return self.ideal.quotient_piece_dim(k)

    def __repr__(self):
        tag = self.name or "Z"
        return f"Subscheme({tag}, P^{self.n}, codim={self.codim}, deg={self.degree})"


def h0_ideal_twist(z, k):
    """h^0(P^n, I_Z(kL)) = dim of the degree-k piece of the saturated ideal."""
    if k < 0:
        raise InputError("twist degree must be nonnegative", k=k)
    return z.ideal.piece_dim(k)


def h1_ideal_twist(z, k):
    """h^1(P^2, I_Z(kL)) for zero-dimensional Z, via chi(I_Z(k)) =
    C(k+2, 2) - deg Z and the vanishing of h^2 for k >= -2."""
    if z.n != 2:
        raise InputError("closed form implemented on the plane only", n=z.n)
    if not (z.is_empty or z.proj_dim == 0):
        raise InputError("h1 closed form requires a zero-dimensional subscheme",
                         dim=z.proj_dim)
    if k < 0:
        raise InputError("twist degree must be nonnegative", k=k)
    h0 = h0_ideal_twist(z, k)
    h1 = z.degree - (comb(k + 2, 2) - h0)
    assert h1 >= 0
    return h1


def curve_sections(pol, n, m):
    """h^0(C, O_C(mH)) by Riemann-Roch under non-speciality
    (deg > 2g - 2): h0 = deg + 1 - g."""
    if n != pol.n:
        raise InputError("ambient mismatch", n=n, pol_n=pol.n)
    if m < 1:
        raise InputError("twist must be at least 1", m=m)
    deg = pol.curve_degree(m)
    g = pol.genus
    if deg <= 2 * g - 2:
        raise SpecialityError(
            "degree does not exceed 2g-2; Riemann-Roch alone cannot "
            "determine h0", degree=deg, genus=g)
    return deg + 1 - g


def restrict_to_curve(z, v_basis, f):
    """Restriction of a section space V of I_Z(mH) to the curve {f = 0}.

    Returns (injective, image_dim).  The kernel of restriction is
    V ∩ f·(I_Z)_{md-deg f} (f is a nonzerodivisor mod the saturated ideal
    once C ∩ Z = ∅, which is checked first)."""
    ring = z.ring
    field = ring.field
    if not v_basis:
        return True, 0
    target = v_basis[0].degree
    for v in v_basis:
        if v.degree != target:
            raise InputError("section space basis must be equigraded")
        if not z.ideal.contains(v):
            raise InputError("section does not lie in the subscheme ideal")
    if z.points is not None:
        for p in z.points:
            if field.is_zero(f.evaluate(p)):
                raise GeometricPositionError(
                    "curve passes through a point of Z", point=[field.to_str(c) for c in p])
    else:
        meet = z.ideal.sum([f])
        if not meet.is_projectively_empty():
            raise GeometricPositionError("curve meets the subscheme")

    lower = target - f.degree
    mons = ring.monomials_of_degree(target)
    index = {m: i for i, m in enumerate(mons)}

    def coords(p):
        row = [field.zero] * len(mons)
        for e, c in p.coeffs.items():
            row[index[e]] = c
        return row

    v_rows = [coords(p) for p in v_basis]
    rank_v = Matrix(field, v_rows).rank()
    assert rank_v == len(v_basis), "section basis is linearly dependent"
    ideal_lower = _piece_basis_of_ideal(z.ideal, lower)
    fi_rows = [coords(f * g) for g in ideal_lower]
    if fi_rows:
        rank_fi = Matrix(field, fi_rows).rank()
        rank_union = Matrix(field, v_rows + fi_rows).rank()
        kernel_dim = rank_v + rank_fi - rank_union
    else:
        kernel_dim = 0
    return kernel_dim == 0, rank_v - kernel_dim


def _piece_basis_of_ideal(ideal, d):
    """Polynomials spanning the degree-d piece of the ideal (not reduced
    to a basis; rank computations absorb dependence)."""
    if d < 0:
        return []
    out = []
    ring = ideal.ring
    for g in ideal.gb:
        if g.degree <= d:
            for m in ring.monomials_of_degree(d - g.degree):
                out.append(g.mul_monomial(m))
    return out


# -- builtin instances -------------------------------------------------------


def builtin_subscheme(name, field=QQ):
    """Canonical test subschemes; returns (SubschemeData, default d)."""
    if name == "three-points":
        ring = PolyRing(field, 3)
        pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        ideal = points_ideal(ring, pts)
        return SubschemeData(ring, ideal.gens, points=pts, name=name), 3
    if name == "collinear-points":
        ring = PolyRing(field, 3)
        pts = [(1, 0, 0), (0, 1, 0), (1, 1, 0)]
        ideal = points_ideal(ring, pts)
        return SubschemeData(ring, ideal.gens, points=pts, name=name), 3
    if name == "one-point":
        ring = PolyRing(field, 3)
        pts = [(0, 0, 1)]
        gens = [ring.parse("x0"), ring.parse("x1")]
        return SubschemeData(ring, gens, points=pts, name=name), 1
    if name == "empty":
        ring = PolyRing(field, 3)
        return SubschemeData(ring, [ring.one()], name=name), 1
    if name == "line-p3":
        ring = PolyRing(field, 4)
        gens = [ring.parse("x0"), ring.parse("x1")]
        return SubschemeData(ring, gens, name=name), 2
    if name == "twisted-cubic":
        ring = PolyRing(field, 4)
        gens = [ring.parse("x0*x2 - x1^2"), ring.parse("x0*x3 - x1*x2"),
                ring.parse("x1*x3 - x2^2")]
        return SubschemeData(ring, gens, name=name), 2
    raise InputError(f"unknown builtin subscheme '{name}'",
                     known=sorted(BUILTIN_NAMES))


BUILTIN_NAMES = ("three-points", "collinear-points", "one-point", "empty",
                 "line-p3", "twisted-cubic")


# -- input file grammar -------------------------------------------------------


def parse_subscheme_file(text, field=QQ):
    """Parse the subscheme input format:

        ambient: 2
        d: 3
        points:
        1 0 0
        0 1 0

    or with an `ideal:` section of one polynomial per line.  Returns
    (SubschemeData, Polarization).  Blank lines and `#` comments ignored."""
    n = None
    d = None
    mode = None
    points = []
    polys = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        low = line.lower()
        if low.startswith("ambient:"):
            n = int(line.split(":", 1)[1])
            continue
        if low.startswith("d:"):
            d = int(line.split(":", 1)[1])
            continue
        if low == "points:":
            mode = "points"
            continue
        if low == "ideal:":
            mode = "ideal"
            continue
        if mode == "points":
            parts = line.replace(",", " ").split()
            points.append(tuple(_parse_coord(c) for c in parts))
        elif mode == "ideal":
            polys.append(line)
        else:
            raise InputError(f"unrecognized header line: {line!r}")
    if n is None:
        raise InputError("missing 'ambient:' line")
    if d is None:
        raise InputError("missing 'd:' line")
    ring = PolyRing(field, n + 1)
    if points and polys:
        raise InputError("give either points or ideal generators, not both")
    if points:
        for p in points:
            if len(p) != n + 1:
                raise InputError("point coordinate count does not match ambient",
                                 point=[str(c) for c in p])
        ideal = points_ideal(ring, points)
        z = SubschemeData(ring, ideal.gens, points=points)
    elif polys:
        gens = [ring.parse(s) for s in polys]
        z = SubschemeData(ring, gens)
    else:
        raise InputError("no points or ideal generators given")
    return z, Polarization(n, d)


def _parse_coord(tok):
    from fractions import Fraction
    return Fraction(tok)
