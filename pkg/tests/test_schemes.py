"""Subschemes of P^n, twisted cohomology counts, curve restriction."""

import random
from fractions import Fraction
from math import comb

import pytest

from syzkit.errors import (CodimensionError, GeometricPositionError,
                           InputError, NotSaturatedError, SpecialityError)
from syzkit.fields import GF, QQ
from syzkit.linalg import Matrix
from syzkit.polyring import PolyRing
from syzkit.schemes import (BUILTIN_NAMES, Polarization, SubschemeData,
                            builtin_subscheme, curve_sections, h0_ideal_twist,
                            h1_ideal_twist, parse_subscheme_file, points_ideal,
                            restrict_to_curve)


def three_points():
    z, _ = builtin_subscheme("three-points")
    return z


def test_h0_frozen_values():
    z = three_points()
    assert h0_ideal_twist(z, 2) == 3
    assert h0_ideal_twist(z, 3) == 7
    tc, _ = builtin_subscheme("twisted-cubic")
    assert h0_ideal_twist(tc, 2) == 3


def test_h1_frozen_values():
    z = three_points()
    assert h1_ideal_twist(z, 3) == 0
    coll, _ = builtin_subscheme("collinear-points")
    assert h0_ideal_twist(coll, 1) == 1
    assert h1_ideal_twist(coll, 1) == 1


def test_h1_vanishes_at_regularity():
    for name in ("three-points", "collinear-points", "one-point"):
        z, _ = builtin_subscheme(name)
        r = z.regularity()
        for k in range(max(r - 1, 0), r + 3):
            assert h1_ideal_twist(z, k) == 0


def test_chi_consistency_zero_dimensional():
    for name in ("three-points", "collinear-points", "one-point"):
        z, _ = builtin_subscheme(name)
        for k in range(0, 7):
            assert (h0_ideal_twist(z, k) - h1_ideal_twist(z, k)
                    == comb(k + 2, 2) - z.degree)


def test_h0_matches_evaluation_matrix_random_points():
    fp = GF()
    ring = PolyRing(fp, 3)
    rng = random.Random("pts")
    for trial in range(3):
        npts = rng.randrange(2, 11)
        pts = []
        seen = set()
        while len(pts) < npts:
            pt = tuple(fp(rng.randrange(1, fp.p)) for _ in range(3))
            if pt not in seen:
                seen.add(pt)
                pts.append(pt)
        z = SubschemeData(ring, points_ideal(ring, pts).gens, points=pts)
        for k in range(1, 9):
            rows = [[_mono_eval(fp, pt, e) for e in ring.monomials_of_degree(k)]
                    for pt in pts]
            ev_rank = Matrix(fp, rows).rank()
            assert h0_ideal_twist(z, k) == comb(k + 2, 2) - ev_rank


def _mono_eval(fp, pt, exps):
    acc = fp.one
    for c, e in zip(pt, exps):
        for _ in range(e):
            acc = fp.mul(acc, c)
    return acc


def test_curve_sections_frozen():
    assert curve_sections(Polarization(2, 3), 2, 1) == 9
    assert curve_sections(Polarization(2, 3), 2, 2) == 18
    assert curve_sections(Polarization(3, 2), 3, 2) == 16


def test_curve_sections_grows_linearly_with_slope_d_squared():
    pol = Polarization(2, 3)
    vals = [curve_sections(pol, 2, m) for m in range(1, 6)]
    diffs = {b - a for a, b in zip(vals, vals[1:])}
    assert diffs == {9}  # d^2


def test_curve_sections_speciality_guard():
    # P^3, d = 4: g = 33, deg O_C(H) = 64 = 2g - 2 exactly
    with pytest.raises(SpecialityError):
        curve_sections(Polarization(3, 4), 3, 1)
    with pytest.raises(InputError):
        curve_sections(Polarization(2, 3), 2, 0)


def test_polarization_genus_and_warning():
    assert Polarization(2, 1).genus == 0
    assert Polarization(2, 1).genus_warning
    assert Polarization(2, 3).genus == 1
    assert not Polarization(2, 3).genus_warning
    assert Polarization(3, 2).genus == 1
    assert Polarization(3, 2).curve_degree(2) == 16
    with pytest.raises(InputError):
        Polarization(2, 0)
    with pytest.raises(InputError):
        Polarization(4, 2)


def test_restrict_full_section_space_not_injective():
    z = three_points()
    ring = z.ring
    from syzkit.schemes import _piece_basis_of_ideal
    from syzkit.resolver import ideal_piece_basis
    v = ideal_piece_basis(z.ideal, 6)
    assert len(v) == 25
    f = ring.parse("x0^3 + x1^3 + x2^3 + x0*x1*x2")  # avoids all three points
    injective, image = restrict_to_curve(z, v, f)
    assert image == 18  # = curve_sections(m=2)
    assert not injective  # kernel is f*(I_Z)_3, dimension 7


def test_restrict_detects_planted_kernel():
    z = three_points()
    ring = z.ring
    from syzkit.resolver import ideal_piece_basis
    f = ring.parse("x0^3 + x1^3 + x2^3 + x0*x1*x2")
    s = ideal_piece_basis(z.ideal, 3)[0]
    v = [f * s]
    injective, image = restrict_to_curve(z, v, f)
    assert not injective and image == 0


def test_restrict_rejects_curve_through_z():
    z = three_points()
    ring = z.ring
    from syzkit.resolver import ideal_piece_basis
    v = ideal_piece_basis(z.ideal, 6)[:3]
    through = ring.parse("x0*x1*x2")  # vanishes at all three points
    with pytest.raises(GeometricPositionError):
        restrict_to_curve(z, v, through)


def test_subscheme_rejects_codimension_one():
    ring = PolyRing(QQ, 3)
    with pytest.raises(CodimensionError) as exc:
        SubschemeData(ring, [ring.parse("x0^2 + x1*x2")])
    assert "invertible" in str(exc.value)


def test_subscheme_rejects_unsaturated_ideal():
    ring = PolyRing(QQ, 3)
    # the degree >= 2 part of (x0, x1): saturates back to (x0, x1)
    trunc = [ring.parse("x0^2"), ring.parse("x0*x1"), ring.parse("x1^2"),
             ring.parse("x0*x2"), ring.parse("x1*x2")]
    with pytest.raises(NotSaturatedError):
        SubschemeData(ring, trunc)
    # the fat point (x0, x1)^2 is primary at a projective point, hence fine
    fat = SubschemeData(ring, [ring.parse("x0^2"), ring.parse("x0*x1"),
                               ring.parse("x1^2")])
    assert fat.degree == 3


def test_subscheme_point_consistency_checks():
    ring = PolyRing(QQ, 3)
    with pytest.raises(InputError):
        SubschemeData(ring, [ring.parse("x0"), ring.parse("x1")],
                      points=[(1, 0, 0)])  # x0 does not vanish there


def test_point_set_degree_and_stabilized_hilbert_function():
    z = three_points()
    assert z.degree == 3
    assert z.codim == 2
    for k in range(2, 8):
        assert z.quotient_hf(k) == 3


def test_builtins_all_construct():
    for name in BUILTIN_NAMES:
        z, d = builtin_subscheme(name)
        assert d >= 1
        assert z.name == name
    line, d = builtin_subscheme("line-p3")
    assert (line.n, d, line.degree) == (3, 2, 1)
    tc, d = builtin_subscheme("twisted-cubic")
    assert (tc.n, d, tc.degree) == (3, 2, 3)
    empty, _ = builtin_subscheme("empty")
    assert empty.is_empty and empty.degree == 0


def test_unknown_builtin_reports_known_names():
    with pytest.raises(InputError) as exc:
        builtin_subscheme("nope")
    assert "three-points" in str(exc.value.details["known"])


def test_parse_points_file():
    text = """
# three coordinate points
ambient: 2
d: 3
points:
1 0 0
0 1 0
0, 0, 1
"""
    z, pol = parse_subscheme_file(text)
    assert z.degree == 3
    assert (pol.n, pol.d) == (2, 3)


def test_parse_ideal_file():
    text = "ambient: 3\nd: 2\nideal:\nx0\nx1\n"
    z, pol = parse_subscheme_file(text)
    assert z.codim == 2
    assert pol.curve_degree(2) == 16


def test_parse_file_errors():
    with pytest.raises(InputError):
        parse_subscheme_file("d: 3\npoints:\n1 0 0\n")  # missing ambient
    with pytest.raises(InputError):
        parse_subscheme_file("ambient: 2\npoints:\n1 0 0\n")  # missing d
    with pytest.raises(InputError):
        parse_subscheme_file("ambient: 2\nd: 3\n")  # no data
    with pytest.raises(InputError):
        parse_subscheme_file("ambient: 2\nd: 3\nwhat: 1\n")
    with pytest.raises(InputError):
        parse_subscheme_file("ambient: 2\nd: 3\npoints:\n1 0\n")
    with pytest.raises(InputError):
        parse_subscheme_file(
            "ambient: 2\nd: 3\npoints:\n1 0 0\nideal:\nx0\n")


def test_parse_rational_coordinates():
    text = "ambient: 2\nd: 3\npoints:\n1/2 1 0\n"
    z, _ = parse_subscheme_file(text)
    assert z.points == [(Fraction(1, 2), Fraction(1), Fraction(0))]
