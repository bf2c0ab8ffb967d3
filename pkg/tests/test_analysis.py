import math
from fractions import Fraction

import pytest

from nellipse.analysis import (
    Circle,
    CollinearPointsError,
    axis_crossings,
    circle_through,
    deviation_at_point,
    fit_axis_circle,
    max_deviation,
    van_schooten_check,
    van_schooten_scene,
)
from nellipse.locus import Scene

F = Fraction
RIGHT_SIGMA = (-1, 1, 1)


class TestCircleThrough:
    def test_published_fit(self):
        c = circle_through((F(-1, 3), F(0)), (F(3), F(0)), (F(0), F(1)))
        assert c.center == (F(4, 3), F(0))
        assert c.radius_sq == F(25, 9)

    def test_unit_circle(self):
        c = circle_through((F(-1), F(0)), (F(1), F(0)), (F(0), F(1)))
        assert c.center == (F(0), F(0)) and c.radius_sq == F(1)

    def test_collinear_rejected(self):
        with pytest.raises(CollinearPointsError):
            circle_through((F(0), F(0)), (F(1), F(1)), (F(2), F(2)))


class TestAxisFit:
    def test_exact_crossings(self, c_scene):
        assert axis_crossings(c_scene, RIGHT_SIGMA) == [F(-1, 3), F(3)]

    def test_diameter_circle(self, c_scene):
        c = fit_axis_circle(c_scene, RIGHT_SIGMA)
        assert c.center == (F(4, 3), F(0)) and c.radius_sq == F(25, 9)

    def test_left_branch_mirrors(self, c_scene):
        c = fit_axis_circle(c_scene, (1, 1, -1))
        assert c.center == (F(-4, 3), F(0)) and c.radius_sq == F(25, 9)

    def test_rejects_off_axis_foci(self, van_schooten):
        with pytest.raises(ValueError):
            axis_crossings(van_schooten, RIGHT_SIGMA)


class TestMaxDeviation:
    def fitted(self) -> Circle:
        return Circle((F(4, 3), F(0)), F(25, 9))

    def test_deviation_at_published_point(self, c_scene):
        dev = deviation_at_point(c_scene, {RIGHT_SIGMA}, (9 / 5, 8 / 5))
        assert dev == pytest.approx(0.027730, abs=1e-5)

    def test_sampled_max_within_published_bound(self, c_scene):
        rep = max_deviation(c_scene, self.fitted(), {RIGHT_SIGMA}, samples=100_000)
        assert 0.027730 <= rep.max_deviation <= 0.03429

    def test_scale_invariance(self, c_scene):
        rep1 = max_deviation(c_scene, self.fitted(), {RIGHT_SIGMA}, samples=5000)
        k = 2
        scaled_scene = Scene(
            tuple((a * k, b * k) for a, b in c_scene.foci), c_scene.s * k
        )
        scaled_circle = Circle((F(4, 3) * k, F(0)), F(25, 9) * k * k)
        rep2 = max_deviation(scaled_scene, scaled_circle, {RIGHT_SIGMA}, samples=5000)
        assert rep2.max_deviation == pytest.approx(rep1.max_deviation, abs=1e-12)

    def test_zero_radius_uses_circle_radius(self, van_schooten):
        circumcircle = Circle(
            (F(0), F(math.sqrt(3) / 3).limit_denominator(10**15)), F(4, 3)
        )
        sigmas = {(1, 1, -1), (1, -1, 1), (-1, 1, 1)}
        rep = max_deviation(van_schooten, circumcircle, sigmas, samples=10_000)
        assert rep.max_deviation <= 1e-9

    def test_sample_floor(self, c_scene):
        with pytest.raises(ValueError):
            max_deviation(c_scene, self.fitted(), {RIGHT_SIGMA}, samples=10)


class TestVanSchooten:
    def test_bottom_point_relation(self):
        sc = van_schooten_scene()
        foci = sc.float_foci()
        p = (0.0, -math.sqrt(3) / 3)
        d = [math.hypot(p[0] - ax, p[1] - ay) for ax, ay in foci]
        assert d[0] + d[1] - d[2] == pytest.approx(0.0, abs=1e-12)
        assert d[0] == pytest.approx(2 / math.sqrt(3), abs=1e-12)

    def test_vertex_satisfies_two_relations(self):
        sc = van_schooten_scene()
        foci = sc.float_foci()
        p = foci[0]  # at the first vertex: d1 = 0 and d2 = d3
        d = [math.hypot(p[0] - ax, p[1] - ay) for ax, ay in foci]
        residuals = [
            abs(d[0] + d[1] - d[2]),
            abs(d[0] + d[2] - d[1]),
            abs(d[1] + d[2] - d[0]),
        ]
        assert sum(r <= 1e-9 for r in residuals) == 2

    def test_report(self):
        rep = van_schooten_check(10_000)
        assert rep.max_min_residual <= 1e-9
        assert rep.covered_everywhere
        assert rep.exactly_one_away_from_vertices
        assert len(rep.arcs) == 3
        relations = {arc.relation for arc in rep.arcs}
        assert relations == {"d1+d2=d3", "d1+d3=d2", "d2+d3=d1"}

    def test_arcs_are_delimited_by_vertices(self):
        samples = 10_000
        rep = van_schooten_check(samples)
        step = 2 * math.pi / samples
        boundaries = sorted(arc.theta_start for arc in rep.arcs)
        vertices = sorted(rep.vertex_angles)
        for b, v in zip(boundaries, vertices):
            assert abs(b - v) <= 2 * step

    def test_bottom_arc_isolates_third_distance(self):
        rep = van_schooten_check(4_000)
        # theta = 3*pi/2 is the circumcircle's bottom point
        target = 3 * math.pi / 2
        for arc in rep.arcs:
            if arc.theta_start <= target <= arc.theta_end:
                assert arc.relation == "d1+d2=d3"
                break
        else:
            pytest.fail("no arc covers the bottom point")

    def test_sample_floor(self):
        with pytest.raises(ValueError):
            van_schooten_check(10)
