from fractions import Fraction

import pytest

from conftest import random_point, seeded
from quadricheck.decision import Decision, Labeling, PreconditionViolated
from quadricheck.extensors import contains_point, join_points, line_through, plane_through, scalar_of, join
from quadricheck.generic_case import genericity_violation
from quadricheck.oracle import oracle_decide, sample_generic, sample_on_quadric, segre_point
from quadricheck.projective import Point, bracket, rank_of_points
from quadricheck.reductions import (
    CE_DF,
    _find_valid_swap,
    _plane_of_last_four,
    collinear_triples,
    decide,
    find_three_skew,
    normalize,
    pascal_collinear,
    planar_conic_det,
    qd_duplicates,
    qd_four_collinear,
    qd_six_on_plane_conic,
    qd_three_lines,
    qd_two_lines,
    skew_swap,
    split_skew,
)


def circle_point(num, den):
    """(q^2 - p^2, 2pq, 0, q^2 + p^2): the conic x^2 + y^2 = w^2 in z = 0."""
    p, q = num, den
    return Point((q * q - p * p, 2 * p * q, 0, q * q + p * p))


def combo(weights_points):
    coords = [0, 0, 0, 0]
    for w, p in weights_points:
        coords = [a + Fraction(w) * c for a, c in zip(coords, p.coords)]
    return Point(coords)


def evaluate_certificate(cert, p):
    return cert.evaluate(p)


class TestDuplicates:
    def test_duplicate_detected(self):
        pts = sample_generic("dup", 10, bound=20)
        pts[1] = pts[0]
        d = qd_duplicates(pts)
        assert d is not None and d.on_quadric and d.branch == "duplicate"
        assert oracle_decide(pts)
        assert all(evaluate_certificate(d.certificate, p) == 0 for p in pts)

    def test_distinct_absent(self):
        assert qd_duplicates(sample_generic("dup2", 10, bound=20)) is None


class TestFourCollinear:
    def test_four_on_line(self):
        pts = sample_generic("4col", 10, bound=20)
        u, v = pts[0], pts[1]
        pts[2] = combo([(1, u), (1, v)])
        pts[3] = combo([(1, u), (2, v)])
        d = qd_four_collinear(pts)
        assert d is not None and d.on_quadric and d.branch == "four-collinear"
        assert oracle_decide(pts)

    def test_generic_absent(self):
        assert qd_four_collinear(sample_generic("4col2", 10, bound=20)) is None


class TestSixOnConic:
    def test_circle_conic_plus_generic(self):
        conic = [circle_point(p, q) for p, q in ((0, 1), (1, 2), (1, 3), (2, 3), (1, 1), (3, 1))]
        rest = sample_generic("conic-rest", 4, bound=20)
        pts = conic + rest
        assert planar_conic_det(conic) == 0
        d = qd_six_on_plane_conic(pts)
        assert d is not None and d.on_quadric and d.branch == "six-on-conic"
        assert oracle_decide(pts)

    def test_coplanar_but_not_on_conic(self):
        rng = seeded("coplanar-six")
        while True:
            six = [
                Point((rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-9, 9), 0))
                for _ in range(6)
            ]
            if len(set(six)) == 6 and rank_of_points(six) == 3 and planar_conic_det(six) != 0:
                break
        assert pascal_collinear(six) is False

    def test_hexagon_style_meets_on_line_at_infinity(self):
        # tangent half-angles 0, 1/2, 2, 1/3, 1/7, 7 satisfy the angle-sum
        # conditions that make the three opposite side pairs parallel
        ts = ((0, 1), (1, 2), (2, 1), (1, 3), (1, 7), (7, 1))
        six = [circle_point(p, q) for p, q in ts]
        assert planar_conic_det(six) == 0
        assert pascal_collinear(six) is True
        from quadricheck.reductions import line_meet_line

        pairs = (((0, 5), (2, 3)), ((0, 1), (3, 4)), ((4, 5), (1, 2)))
        for (a, b), (c, d) in pairs:
            hit = line_meet_line(line_through(six[a], six[b]), line_through(six[c], six[d]))
            assert hit.coords[3] == 0  # the affine chart's line at infinity

    def test_pascal_matches_determinant(self):
        rng = seeded("pascal-sweep")
        done = 0
        while done < 30:
            if rng.random() < 0.5:
                ts = set()
                while len(ts) < 6:
                    ts.add((rng.randint(-9, 9), rng.randint(1, 9)))
                six = [circle_point(p, q) for p, q in ts]
            else:
                six = [
                    Point((rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-9, 9), 0))
                    for _ in range(6)
                ]
            if len(set(six)) != 6 or rank_of_points(six) != 3:
                continue
            if any(rank_of_points([six[i] for i in t]) <= 2 for t in collinear_triples(six)):
                pass
            check = pascal_collinear(six)
            if check is None:
                continue
            done += 1
            assert check == (planar_conic_det(six) == 0)


class TestThreeLines:
    def _ruling_config(self, tenth):
        tvals = iter((1, 2, 3, 4, 5, 6, 7, 8, 9))
        pts = [segre_point(s, next(tvals)) for s in (0, 0, 0, 1, 1, 1, 2, 2, 2)]
        pts.append(tenth)
        return pts

    def test_three_rulings_tenth_on(self):
        pts = self._ruling_config(segre_point(4, 10))
        d = qd_three_lines(pts)
        assert d is not None and d.branch == "three-lines-grassmann"
        assert d.on_quadric and oracle_decide(pts)
        assert all(evaluate_certificate(d.certificate, p) == 0 for p in pts)

    def test_three_rulings_tenth_off(self):
        pts = self._ruling_config(Point((1, 4, 10, 41)))
        d = qd_three_lines(pts)
        assert d is not None and d.branch == "three-lines-grassmann"
        assert not d.on_quadric and not oracle_decide(pts)

    def test_concurrent_lines_yes(self):
        pts = (
            [Point((1, k, 0, 0)) for k in (1, 2, 3)]
            + [Point((1, 0, k, 0)) for k in (1, 2, 3)]
            + [Point((1, 0, 0, k)) for k in (1, 2, 3)]
            + [Point((1, 1, 1, 1))]
        )
        d = qd_three_lines(pts)
        assert d is not None and d.on_quadric and d.branch == "six-on-conic"
        assert oracle_decide(pts)

    def test_generic_absent(self):
        assert qd_three_lines(sample_generic("3lines", 10, bound=20)) is None


class TestTwoLines:
    def _two_rulings(self, extras):
        tvals = iter((1, 2, 3, 4, 5, 6))
        pts = [segre_point(s, next(tvals)) for s in (0, 0, 0, 1, 1, 1)]
        return pts + extras

    def test_coincident_transversals(self):
        trio1 = [Point((1, a, 0, 0)) for a in (1, 2, 3)]
        trio2 = [Point((0, 0, 1, b)) for b in (1, 2, 3)]
        u1, u2 = Point((1, 5, 0, 0)), Point((0, 0, 1, 5))
        a_pt = combo([(1, u1), (1, u2)])
        b_pt = combo([(1, u1), (3, u2)])
        pts = trio1 + trio2 + [a_pt, b_pt, Point((1, 7, 2, 9)), Point((2, 1, 1, 7))]
        d = qd_two_lines(pts)
        assert d is not None and d.on_quadric
        assert d.branch == "two-lines-coincident-transversals"
        assert oracle_decide(pts)

    def test_skew_transversals_on_quadric(self):
        extras = [segre_point(2, 7), segre_point(3, 8), segre_point(4, 9), segre_point(5, 10)]
        pts = self._two_rulings(extras)
        d = qd_two_lines(pts)
        assert d is not None and d.branch == "two-lines-grassmann"
        assert d.on_quadric and oracle_decide(pts)

    def test_skew_transversals_generic_tenth(self):
        extras = [segre_point(2, 7), segre_point(3, 8), segre_point(4, 9), Point((1, 5, 10, 49))]
        pts = self._two_rulings(extras)
        d = qd_two_lines(pts)
        assert d is not None and d.branch == "two-lines-grassmann"
        assert not d.on_quadric and not oracle_decide(pts)

    def test_plane_line_case_yes(self):
        trio1 = [Point((1, a, 0, 0)) for a in (1, 2, 3)]
        trio2 = [Point((0, 0, 1, b)) for b in (1, 2, 3)]
        r_pt = Point((1, 5, 0, 0))
        a_pt = combo([(1, r_pt), (1, Point((0, 0, 1, 4)))])
        b_pt = combo([(1, r_pt), (1, Point((0, 0, 1, 6)))])
        c_pt = Point((1, 4, 1, 5))
        x_pt = Point((3, 2, 2, 10))
        pts = trio1 + trio2 + [a_pt, b_pt, c_pt, x_pt]
        d = qd_two_lines(pts)
        assert d is not None and d.branch == "plane-line-case"
        assert d.on_quadric == oracle_decide(pts) == True
        assert all(evaluate_certificate(d.certificate, p) == 0 for p in pts)

    def test_plane_line_case_no(self):
        trio1 = [Point((1, a, 0, 0)) for a in (1, 2, 3)]
        trio2 = [Point((0, 0, 1, b)) for b in (1, 2, 3)]
        r_pt = Point((1, 5, 0, 0))
        a_pt = combo([(1, r_pt), (1, Point((0, 0, 1, 4)))])
        b_pt = combo([(1, r_pt), (1, Point((0, 0, 1, 6)))])
        c_pt = Point((1, 4, 1, 5))
        x_pt = Point((3, 2, 2, 11))
        pts = trio1 + trio2 + [a_pt, b_pt, c_pt, x_pt]
        d = qd_two_lines(pts)
        assert d is not None and d.branch == "plane-line-case"
        assert d.on_quadric == oracle_decide(pts) == False


class TestFindThreeSkew:
    def test_all_coplanar(self):
        rng = seeded("fts-coplanar")
        pts = [
            Point((rng.randint(-15, 15), rng.randint(-15, 15), rng.randint(-15, 15), 0))
            for _ in range(10)
        ]
        while len(set(pts)) != 10:
            pts = [
                Point((rng.randint(-15, 15), rng.randint(-15, 15), rng.randint(-15, 15), 0))
                for _ in range(10)
            ]
        d = find_three_skew(pts)
        assert isinstance(d, Decision) and d.branch == "coplanar" and d.on_quadric
        assert all(evaluate_certificate(d.certificate, p) == 0 for p in pts)

    def test_two_planes_exit(self):
        rng = seeded("fts-two-planes")
        while True:
            def pi1():
                return Point((rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-9, 9), 0))

            p0, p1, p4, p5, p6 = pi1(), pi1(), pi1(), pi1(), pi1()
            p2 = Point((rng.randint(-9, 9), rng.randint(-9, 9), 0, rng.randint(1, 9)))
            p3 = Point((rng.randint(-9, 9), rng.randint(-9, 9), 0, rng.randint(1, 9)))
            p7 = combo([(1, p2), (1, p3), (rng.randint(1, 5), p4)])
            p8 = combo([(1, p2), (2, p3), (rng.randint(1, 5), p4)])
            p9 = combo([(2, p2), (1, p3), (rng.randint(1, 5), p4)])
            pts = [p0, p1, p2, p3, p4, p5, p6, p7, p8, p9]
            if len(set(pts)) != 10:
                continue
            if qd_four_collinear(pts) is not None or qd_six_on_plane_conic(pts) is not None:
                continue
            if bracket(p0, p1, p2, p3) == 0:
                continue
            break
        d = find_three_skew(pts)
        assert isinstance(d, Decision) and d.branch == "two-planes" and d.on_quadric
        assert oracle_decide(pts)
        assert all(evaluate_certificate(d.certificate, p) == 0 for p in pts)

    def test_segre_config_yields_labeling(self):
        pts = sample_on_quadric("fts-segre", 10)
        result = find_three_skew(pts)
        if isinstance(result, list):
            i, j, k, l, m, n = result
            assert bracket(pts[i], pts[j], pts[k], pts[l]) != 0
            assert bracket(pts[i], pts[j], pts[m], pts[n]) != 0
            assert bracket(pts[k], pts[l], pts[m], pts[n]) != 0
        else:
            pytest.skip("sampler produced a quadric-decidable special position")


class TestSkewSwap:
    def _valid_instance(self):
        plane_pts = [Point((1, 0, 0, 0)), Point((0, 1, 0, 0)), Point((0, 0, 1, 0)), Point((1, 1, 1, 0))]
        a, b, c = Point((1, 2, 5, 0)), Point((1, 3, 1, 0)), Point((2, 1, 3, 0))
        dirs = ((0, 0, 1, 1), (1, 0, 2, 3), (0, 1, 1, 2))
        pts = []
        for base, d in zip((a, b, c), dirs):
            pts.append(combo([(1, base), (1, Point(d))]))
            pts.append(combo([(1, base), (-1, Point(d))]))
        return pts + plane_pts

    def test_valid_swap(self):
        pts = self._valid_instance()
        plane = plane_through(pts[6], pts[7], pts[8])
        swapped = skew_swap(pts, Labeling.identity(), plane)
        relabeled = swapped.apply(pts)
        for pair in ((0, 1, 2, 3), (0, 1, 4, 5), (2, 3, 4, 5)):
            assert bracket(*(relabeled[i] for i in pair)) != 0
        assert rank_of_points(relabeled[6:10]) == 4
        assert genericity_violation(relabeled) is None

    def test_violating_incidence_named(self):
        pts = self._valid_instance()
        # move the first line so it pierces the plane on the line 67
        on_line_67 = Point((1, 5, 0, 0))
        pts[0] = combo([(1, on_line_67), (1, Point((0, 0, 1, 1)))])
        pts[1] = combo([(1, on_line_67), (-1, Point((0, 0, 1, 1)))])
        plane = plane_through(pts[6], pts[7], pts[8])
        with pytest.raises(PreconditionViolated, match="pq"):
            skew_swap(pts, Labeling.identity(), plane)

    def test_swapped_configuration_decides_correctly(self):
        from quadricheck.generic_case import decide_generic

        pts = self._valid_instance()
        plane = plane_through(pts[6], pts[7], pts[8])
        swapped = skew_swap(pts, Labeling.identity(), plane)
        relabeled = swapped.apply(pts)
        d = decide_generic(relabeled)
        assert d.on_quadric == oracle_decide(pts)


class TestSplitSkew:
    def _random_instance(self, rng):
        while True:
            a, b, c, d, e, f = (random_point(rng) for _ in range(6))
            if (
                bracket(a, b, c, d) == 0
                or bracket(a, b, e, f) == 0
                or bracket(c, d, e, f) == 0
            ):
                continue
            g, h, i = (random_point(rng) for _ in range(3))
            plane = join_points(g, h, i)
            if plane.is_zero():
                continue
            from quadricheck.extensors import meet

            if meet(line_through(c, d), plane).is_zero():
                continue
            if meet(line_through(e, f), plane).is_zero():
                continue
            return (a, b), (c, d), (e, f), plane

    def _alternative_valid(self, ab, pair1, pair2, plane, g, h):
        from quadricheck.extensors import as_point, meet

        ab_line = line_through(*ab)
        l1, l2 = line_through(*pair1), line_through(*pair2)
        if (
            scalar_of(join(ab_line, l1)) == 0
            or scalar_of(join(ab_line, l2)) == 0
            or scalar_of(join(l1, l2)) == 0
        ):
            return False
        gp_hit, hp_hit = meet(l1, plane), meet(l2, plane)
        if gp_hit.is_zero() or hp_hit.is_zero():
            return False
        gp, hp = as_point(gp_hit), as_point(hp_hit)
        line_gh = line_through(g, h)
        return gp != hp and not contains_point(line_gh, gp) and not contains_point(line_gh, hp)

    def test_first_valid_alternative_returned(self):
        from quadricheck.extensors import as_point, meet

        rng = seeded("split-skew")
        for _ in range(20):
            ab, (c, d), (e, f), plane = self._random_instance(rng)
            g = as_point(meet(line_through(c, d), plane))
            h = as_point(meet(line_through(e, f), plane))
            name, gp, hp = split_skew(ab, (c, d), (e, f), plane)
            ce_df_ok = self._alternative_valid(ab, (c, e), (d, f), plane, g, h)
            cf_de_ok = self._alternative_valid(ab, (c, f), (d, e), plane, g, h)
            assert ce_df_ok or cf_de_ok
            assert name == (CE_DF if ce_df_ok else "CF_DE")
            line_gh = line_through(g, h)
            assert gp != hp
            assert not contains_point(line_gh, gp)
            assert not contains_point(line_gh, hp)

    def test_accepts_extensor_lines(self):
        rng = seeded("split-ext")
        ab, cd, ef, plane = self._random_instance(rng)
        name, gp, hp = split_skew(line_through(*ab), line_through(*cd), line_through(*ef), plane)
        assert name in (CE_DF, "CF_DE")

    def test_non_skew_rejected(self):
        plane = join_points(Point((1, 0, 0, 0)), Point((0, 1, 0, 0)), Point((0, 0, 1, 0)))
        with pytest.raises(PreconditionViolated):
            split_skew(
                (Point((1, 0, 0, 0)), Point((0, 1, 0, 0))),
                (Point((1, 0, 0, 0)), Point((0, 0, 1, 0))),
                (Point((0, 0, 0, 1)), Point((1, 1, 1, 1))),
                plane,
            )


# the three skew lines pierce the plane of the last four points exactly at
# the diagonal points of that quadrangle, so no skew swap applies and the
# split-skew construction must fire first
C4_POINTS = [
    Point((5, -3, 2, 4)),
    Point((3, -5, 2, 4)),
    Point((1, 4, -5, -1)),
    Point((9, 16, -15, -4)),
    Point((4, 3, 0, -2)),
    Point((12, 13, 4, -6)),
    Point((1, 0, 0, 0)),
    Point((0, 1, 0, 0)),
    Point((0, 0, 1, 0)),
    Point((1, 1, 1, 0)),
]


class TestNormalize:
    def test_collinear_last_four_exits_early(self):
        pts = sample_generic("caseA", 6, bound=20)
        u, v = Point((1, 2, 3, 4)), Point((4, 3, 2, 1))
        pts = pts + [combo([(1, u), (t, v)]) for t in (0, 1, 2, 3)]
        d = normalize(pts)
        assert isinstance(d, Decision) and d.branch == "four-collinear" and d.on_quadric
        assert oracle_decide(pts)

    def test_diagonal_blocked_instance_needs_split(self):
        pts = C4_POINTS
        lab = Labeling.identity()
        plane = _plane_of_last_four(pts)
        assert _find_valid_swap(pts, lab, plane) is None
        outcome = normalize(pts)
        assert isinstance(outcome, Labeling)
        relabeled = outcome.apply(pts)
        assert genericity_violation(relabeled) is None
        d = decide(pts)
        assert d.branch == "generic"
        assert d.on_quadric == oracle_decide(pts)

    def test_segre_configuration_reaches_generic(self):
        pts = sample_on_quadric("norm-segre", 10)
        outcome = normalize(pts)
        if isinstance(outcome, Decision):
            pytest.skip("sampler produced a special position")
        d = decide(pts)
        assert d.branch == "generic" and d.on_quadric
        assert oracle_decide(pts)

    def test_exactly_one_outcome_type(self):
        for seed in range(5):
            pts = sample_generic(f"outcome:{seed}", 10, bound=25)
            outcome = normalize(pts)
            assert isinstance(outcome, (Decision, Labeling))


class TestPlaneSplit:
    def _instance(self, rng, yes):
        def on_plane():
            return Point((rng.randint(-15, 15), rng.randint(-15, 15), rng.randint(-15, 15), 0))

        def off_plane():
            return Point(
                (rng.randint(-15, 15), rng.randint(-15, 15), rng.randint(-15, 15), rng.randint(1, 15))
            )

        if yes:
            pts = [on_plane(), on_plane(), off_plane(), off_plane(), off_plane(), on_plane()]
            pts += [on_plane() for _ in range(4)]
        else:
            pts = [on_plane(), on_plane(), off_plane(), off_plane(), off_plane(), off_plane()]
            pts += [on_plane() for _ in range(4)]
        return pts

    def test_yes_flavor(self):
        rng = seeded("plane-split-yes")
        while True:
            pts = self._instance(rng, yes=True)
            if len(set(pts)) != 10:
                continue
            d = decide(pts)
            if d.branch != "plane-split":
                continue
            assert d.on_quadric and oracle_decide(pts)
            assert all(evaluate_certificate(d.certificate, p) == 0 for p in pts)
            break

    def test_no_flavor(self):
        rng = seeded("plane-split-no")
        while True:
            pts = self._instance(rng, yes=False)
            if len(set(pts)) != 10:
                continue
            d = decide(pts)
            if d.branch != "plane-split":
                continue
            assert not d.on_quadric and not oracle_decide(pts)
            break


class TestPipelineProperties:
    def test_master_soundness_sample(self):
        from quadricheck.cli import fuzz_configuration

        for i in range(40):
            pts = fuzz_configuration(101, i)
            d = decide(pts)
            assert d.on_quadric == oracle_decide(pts), f"config {i} ({d.branch})"

    def test_relabeling_invariance(self):
        rng = seeded("relabel")
        from quadricheck.cli import fuzz_configuration

        for i in range(6):
            pts = fuzz_configuration(77, i)
            base = decide(pts).on_quadric
            for _ in range(4):
                perm = list(range(10))
                rng.shuffle(perm)
                assert decide([pts[k] for k in perm]).on_quadric == base

    def test_projective_invariance(self):
        from quadricheck.cli import fuzz_configuration
        from quadricheck.oracle import random_transform

        rng = seeded("proj-invariance")
        for i in range(5):
            pts = fuzz_configuration(55, i)
            base = decide(pts).on_quadric
            for _ in range(3):
                t = random_transform(rng, bound=5)
                assert decide([t.apply(p) for p in pts]).on_quadric == base

    def test_certificates_vanish(self):
        from quadricheck import fixtures

        for kind in fixtures.GENERATED_KINDS:
            pts = fixtures.generate_branch(kind, 3)
            d = decide(pts)
            if d.on_quadric and d.certificate is not None:
                assert all(evaluate_certificate(d.certificate, p) == 0 for p in pts)

    def test_labeling_reported_for_generic(self):
        pts = sample_on_quadric("labeling", 10)
        d = decide(pts)
        if d.branch != "generic":
            pytest.skip("special position")
        assert sorted(d.labeling.perm) == list(range(10))
        relabeled = d.labeling.apply(pts)
        assert genericity_violation(relabeled) is None
