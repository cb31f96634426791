import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import points, random_point, seeded
from quadricheck.extensors import (
    Extensor,
    GradeOverflow,
    NotSkew,
    ZeroExtensor,
    as_point,
    contains_point,
    from_point,
    grassmann_criterion,
    join,
    join_points,
    line_through,
    meet,
    plane_form,
    plane_through,
    plucker_residual,
    scalar_of,
    support_basis,
)
from quadricheck.oracle import segre_point
from quadricheck.projective import E0, E1, E2, E3, Point, bracket, rank_of_points


def segre_ruling(s):
    return join_points(Point((1, s, 0, 0)), Point((0, 0, 1, s)))


class TestJoin:
    def test_basis_line(self):
        line = join(from_point(E0), from_point(E1))
        assert line.grade == 2
        assert line.coeffs == (1, 0, 0, 0, 0, 0)

    def test_join_with_self_vanishes(self):
        p = Point((3, 1, -2, 5))
        assert join(from_point(p), from_point(p)).is_zero()

    def test_full_flag_is_scalar_one(self):
        assert scalar_of(join(join_points(E0, E1, E2), from_point(E3))) == 1

    def test_grade_overflow(self):
        plane = join_points(E0, E1, E2)
        with pytest.raises(GradeOverflow):
            join(plane, plane)

    @given(points, points, points, points)
    def test_grade4_join_is_bracket(self, a, b, c, d):
        assert scalar_of(join_points(a, b, c, d)) == bracket(a, b, c, d)

    def test_graded_anticommutativity(self):
        rng = seeded("anticommute")
        for _ in range(30):
            pts = [random_point(rng) for _ in range(4)]
            for ja, jb in ((1, 1), (1, 2), (2, 2), (1, 3), (2, 1), (3, 1)):
                if ja + jb > 4:
                    continue
                a = join_points(*pts[:ja])
                b = join_points(*pts[ja : ja + jb]) if jb else None
                sign = -1 if (ja * jb) % 2 else 1
                assert join(a, b).coeffs == join(b, a).scale(sign).coeffs

    def test_associativity(self):
        rng = seeded("assoc")
        for _ in range(30):
            a, b, c = (from_point(random_point(rng)) for _ in range(3))
            assert join(join(a, b), c) == join(a, join(b, c))


class TestMeet:
    def test_line_meets_plane_at_basis_point(self):
        # meet of the line e0e1 with the plane e1e2e3 is e1 exactly
        got = meet(join_points(E0, E1), join_points(E1, E2, E3))
        assert got.grade == 1
        assert got.coeffs == (0, 1, 0, 0)

    def test_line_inside_plane_vanishes(self):
        line = join_points(E0, E1)
        plane = join_points(E0, E1, E2)
        assert meet(line, plane).is_zero()

    def test_low_grade_meet_is_zero(self):
        assert meet(join_points(E0, E1), join_points(E2, E3)).grade == 0

    def test_line_plane_formula_coefficientwise(self):
        rng = seeded("duality")
        for _ in range(40):
            p, q, r, s, t = (random_point(rng) for _ in range(5))
            got = meet(join_points(p, q), join_points(r, s, t))
            want = tuple(
                bracket(p, r, s, t) * qc - bracket(q, r, s, t) * pc
                for pc, qc in zip(p.coords, q.coords)
            )
            assert got.coeffs == want

    def test_plane_plane_formula_coefficientwise(self):
        rng = seeded("duality-planes")
        for _ in range(40):
            p, q, r, s, t, u = (random_point(rng) for _ in range(6))
            got = meet(join_points(p, q, r), join_points(s, t, u))
            want = [
                a - b + c
                for a, b, c in zip(
                    join_points(q, r).scale(bracket(p, s, t, u)).coeffs,
                    join_points(p, r).scale(bracket(q, s, t, u)).coeffs,
                    join_points(p, q).scale(bracket(r, s, t, u)).coeffs,
                )
            ]
            assert got.coeffs == tuple(want)

    def test_meet_of_two_planes_is_their_intersection(self):
        rng = seeded("plane-intersection")
        hits = 0
        while hits < 20:
            pl1 = join_points(*(random_point(rng) for _ in range(3)))
            pl2 = join_points(*(random_point(rng) for _ in range(3)))
            if pl1.is_zero() or pl2.is_zero():
                continue
            line = meet(pl1, pl2)
            if line.is_zero():
                continue
            hits += 1
            for p in support_basis(line):
                assert contains_point(pl1, p) and contains_point(pl2, p)


class TestSupportBasis:
    def test_point_support(self):
        p = Point((2, -1, 3, 7))
        assert support_basis(from_point(p)) == [p]

    def test_basis_line_support(self):
        pts = support_basis(join_points(E0, E1))
        assert len(pts) == 2
        assert rank_of_points(pts + [E0, E1]) == 2

    def test_rejoin_matches_up_to_scale(self):
        rng = seeded("support-rejoin")
        for _ in range(25):
            line = join_points(random_point(rng), random_point(rng))
            if line.is_zero():
                continue
            rejoined = join_points(*support_basis(line))
            assert rejoined.canonical() == line.canonical()

    def test_zero_extensor_rejected(self):
        with pytest.raises(ZeroExtensor):
            support_basis(Extensor.zero(2))


class TestPlucker:
    def test_join_outputs_are_decomposable(self):
        rng = seeded("plucker")
        for _ in range(40):
            line = join_points(random_point(rng), random_point(rng))
            assert plucker_residual(line) == 0

    def test_meet_outputs_are_decomposable(self):
        rng = seeded("plucker-meet")
        for _ in range(40):
            pl1 = join_points(*(random_point(rng) for _ in range(3)))
            pl2 = join_points(*(random_point(rng) for _ in range(3)))
            if pl1.is_zero() or pl2.is_zero():
                continue
            assert plucker_residual(meet(pl1, pl2)) == 0

    def test_nondecomposable_detected(self):
        mixed = Extensor(2, (1, 0, 0, 0, 0, 1))  # e01 + e23
        assert plucker_residual(mixed) != 0


class TestBracketIdentities:
    def test_cramer_identity(self):
        rng = seeded("cramer")
        for _ in range(40):
            a, b, c, d, e = (random_point(rng) for _ in range(5))
            lhs = tuple(
                bracket(e, b, c, d) * a.coords[i]
                + bracket(a, e, c, d) * b.coords[i]
                + bracket(a, b, e, d) * c.coords[i]
                + bracket(a, b, c, e) * d.coords[i]
                for i in range(4)
            )
            rhs = tuple(bracket(a, b, c, d) * e.coords[i] for i in range(4))
            assert lhs == rhs

    def test_three_term_identity(self):
        rng = seeded("three-term")
        for _ in range(40):
            a, b, c, d, e, f = (random_point(rng) for _ in range(6))
            lhs = -bracket(a, b, d, e) * bracket(a, b, c, f) * bracket(d, e, c, f) - bracket(
                a, b, c, e
            ) * bracket(a, b, d, f) * bracket(c, e, d, f)
            rhs = bracket(a, b, c, d) * bracket(a, b, e, f) * bracket(c, d, e, f)
            assert lhs == rhs


class TestGrassmannCriterion:
    def test_point_on_first_line_gives_zero(self):
        lines = [segre_ruling(s) for s in (0, 1, 2)]
        on_l0 = Point((1, 0, 1, 0))
        assert grassmann_criterion(on_l0, *lines) == 0

    def test_segre_on_point(self):
        lines = [segre_ruling(s) for s in (0, 1, 2)]
        assert grassmann_criterion(Point((1, 3, 5, 15)), *lines) == 0

    def test_segre_off_point(self):
        lines = [segre_ruling(s) for s in (0, 1, 2)]
        assert grassmann_criterion(Point((1, 1, 1, 0)), *lines) != 0

    def test_not_skew_rejected(self):
        l1 = join_points(E0, E1)
        l2 = join_points(E0, E2)
        l3 = segre_ruling(5)
        with pytest.raises(NotSkew):
            grassmann_criterion(Point((1, 1, 1, 1)), l1, l2, l3)

    def test_matches_segre_membership(self):
        rng = seeded("grassmann-sweep")
        lines = [segre_ruling(s) for s in (0, 1, 2)]
        for _ in range(30):
            if rng.random() < 0.5:
                s = rng.randint(3, 40)
                t = rng.randint(1, 40)
                p = segre_point(s, t)
                assert grassmann_criterion(p, *lines) == 0
            else:
                p = random_point(rng)
                on = p.coords[0] * p.coords[3] == p.coords[1] * p.coords[2]
                assert (grassmann_criterion(p, *lines) == 0) == on


class TestPlaneForm:
    def test_form_vanishes_on_plane(self):
        rng = seeded("plane-form")
        for _ in range(20):
            a, b, c = (random_point(rng) for _ in range(3))
            plane = join_points(a, b, c)
            if plane.is_zero():
                continue
            form = plane_form(plane)
            for p in (a, b, c):
                assert sum(f * x for f, x in zip(form, p.coords)) == 0
            d = random_point(rng)
            assert (sum(f * x for f, x in zip(form, d.coords)) == 0) == contains_point(
                plane, d
            )


class TestSerialization:
    @given(points, points)
    def test_json_round_trip(self, p, q):
        line = join_points(p, q)
        assert Extensor.from_json(line.to_json()) == line

    def test_zero_detectable(self):
        for grade in range(5):
            z = Extensor.zero(grade)
            assert z.is_zero()
            assert Extensor.from_json(z.to_json()) == z


class TestHelpers:
    def test_line_through_distinct(self):
        with pytest.raises(ZeroExtensor):
            line_through(E0, Point((2, 0, 0, 0)))

    def test_plane_through_collinear(self):
        with pytest.raises(ZeroExtensor):
            plane_through(E0, E1, Point((1, 1, 0, 0)))

    def test_as_point(self):
        assert as_point(from_point(Point((2, 4, 6, 8)))) == Point((1, 2, 3, 4))
