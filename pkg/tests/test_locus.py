import math
import random
from fractions import Fraction

import pytest

from nellipse.goldens import EQUATION_FIG3
from nellipse.locus import (
    DegenerateSceneError,
    Scene,
    SizeLimitError,
    classify_point,
    closure_poly,
    color_of,
    elimination_oracle,
    sign_product,
    sign_vectors,
    signed_sum,
    squared_distance_poly,
)
from nellipse.numeric import MixedRadicandError, quad_make
from nellipse.poly import MultiPoly, canonical_poly

F = Fraction
X = MultiPoly.variable("x")
Y = MultiPoly.variable("y")


def scene(foci, s) -> Scene:
    return Scene(tuple((F(a) if not hasattr(a, "d") else a,
                        F(b) if not hasattr(b, "d") else b) for a, b in foci), F(s))


class TestScene:
    def test_requires_focus(self):
        with pytest.raises(ValueError):
            Scene((), F(1))

    def test_rejects_negative_radius(self):
        with pytest.raises(ValueError):
            scene([(0, 0)], -1)

    def test_rejects_mixed_radicands(self):
        with pytest.raises(MixedRadicandError):
            Scene(((quad_make(0, 1, 2), F(0)), (F(0), quad_make(0, 1, 3))), F(1))

    def test_shared_radicand_reported(self):
        s = Scene(((F(-1), F(0)), (F(0), quad_make(0, 1, 3))), F(0))
        assert s.radicand == 3


class TestSquaredDistance:
    def test_origin(self):
        assert squared_distance_poly((F(0), F(0))) == X**2 + Y**2

    def test_unit_focus(self):
        assert squared_distance_poly((F(1), F(0))) == X**2 - 2 * X + 1 + Y**2

    def test_surd_focus(self):
        r3 = quad_make(0, 1, 3)
        got = squared_distance_poly((F(0), r3))
        assert got == X**2 + Y**2 - quad_make(0, 2, 3) * Y + 3


class TestSignedSum:
    def test_on_axis_point(self, c_scene):
        assert signed_sum(c_scene, (-1 / 3, 0.0), (-1, 1, 1)) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_surd_cancellation_point(self, c_scene):
        assert signed_sum(c_scene, (0.0, 1.0), (-1, 1, 1)) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_off_locus_point(self, c_scene):
        got = signed_sum(c_scene, (9 / 5, 8 / 5), (-1, 1, 1))
        assert got == pytest.approx(0.972270, abs=1e-6)


class TestSignProduct:
    def test_single_focus_symbolic_shape(self):
        for s in [F(1), F(5), F(7, 2)]:
            got = sign_product(Scene(((F(0), F(0)),), s))
            d1 = MultiPoly.variable("d1")
            assert got == s * s - d1**2

    def test_two_focus_closed_form(self):
        for s in [F(1), F(4)]:
            got = sign_product(scene([(-1, 0), (1, 0)], s))
            d1, d2 = MultiPoly.variable("d1"), MultiPoly.variable("d2")
            want = (s * s + d1**2 - d2**2) ** 2 - 4 * s * s * d1**2
            assert got == want

    def test_zero_radius_half_product(self):
        got = sign_product(scene([(-1, 0), (0, 0), (1, 0)], 0))
        d1, d2, d3 = (MultiPoly.variable(f"d{i}") for i in (1, 2, 3))
        pair_sum = d1**2 * d2**2 + d1**2 * d3**2 + d2**2 * d3**2
        quartic_sum = d1**4 + d2**4 + d3**4
        assert got == quartic_sum - 2 * pair_sum

    def test_even_exponents(self):
        rng = random.Random(3)
        for _ in range(12):
            n = rng.randint(1, 4)
            foci = [(F(rng.randint(-3, 3)), F(rng.randint(-3, 3))) for _ in range(n)]
            s = F(rng.randint(0, 5))
            if s == 0 and n == 1:
                continue
            got = sign_product(Scene(tuple(foci), s))
            for name in (f"d{i+1}" for i in range(n)):
                if name not in got.vars:
                    continue
                idx = got.vars.index(name)
                assert all(e[idx] % 2 == 0 for e in got.terms)


class TestClosure:
    def test_single_focus_circle(self, circle_scene):
        res = closure_poly(circle_scene)
        assert res.closure.poly == X**2 + Y**2 - 1
        assert res.total_degree == 2

    def test_single_focus_zero_radius_point(self):
        res = closure_poly(scene([(2, -1)], 0))
        assert res.closure.poly == X**2 - 4 * X + Y**2 + 2 * Y + 5

    def test_two_focus_ellipse(self, two_focus_scene):
        res = closure_poly(two_focus_scene)
        assert res.closure.poly == 3 * X**2 + 4 * Y**2 - 12

    def test_lemniscate(self, lemniscate_scene):
        res = closure_poly(lemniscate_scene)
        assert res.closure.poly == EQUATION_FIG3
        assert res.half_product_used and not res.norm_applied

    def test_surd_scene_applies_norm(self, van_schooten):
        res = closure_poly(van_schooten)
        assert res.norm_applied
        assert res.total_degree == 4

    def test_degenerate_zero_closure(self):
        with pytest.raises(DegenerateSceneError):
            closure_poly(scene([(1, 1), (1, 1)], 0))

    def test_mirror_symmetric_scene(self, c_scene):
        res = closure_poly(c_scene).closure.poly
        mirrored = res.subst_var("x", -X)
        assert canonical_poly(mirrored) == res

    def test_translation_covariance(self):
        rng = random.Random(5)
        for _ in range(5):
            foci = [(F(rng.randint(-2, 2)), F(rng.randint(-2, 2))) for _ in range(3)]
            s = F(rng.randint(1, 5))
            u, v = rng.randint(-3, 3), rng.randint(-3, 3)
            base = closure_poly(Scene(tuple(foci), s)).closure.poly
            moved = closure_poly(
                Scene(tuple((a + u, b + v) for a, b in foci), s)
            ).closure.poly
            shifted = base.subst_var("x", X - u).subst_var("y", Y - v)
            assert canonical_poly(shifted) == moved


class TestOracle:
    def test_matches_closure_on_small_scenes(self, circle_scene, two_focus_scene):
        for sc in [circle_scene, two_focus_scene]:
            assert elimination_oracle(sc).closure == closure_poly(sc).closure

    def test_size_guard(self):
        foci = [(F(i), F(0)) for i in range(5)]
        with pytest.raises(SizeLimitError):
            elimination_oracle(Scene(tuple(foci), F(1)))

    def test_surd_scene(self, van_schooten):
        assert elimination_oracle(van_schooten).closure == closure_poly(van_schooten).closure

    def test_surd_x_coordinate(self):
        sc = Scene(((quad_make(0, 1, 2), F(0)), (F(-1), F(1))), F(3))
        r = closure_poly(sc)
        assert r.norm_applied
        assert elimination_oracle(sc).closure == r.closure

    def test_fractional_radius(self):
        sc = scene([(-1, 0), (0, 0), (1, 0)], F(3, 2))
        r = closure_poly(sc)
        assert r.total_degree == 8
        assert elimination_oracle(sc).closure == r.closure

    def test_surd_scene_with_positive_radius_doubles_degree(self):
        # the closure over Q must also vanish on the conjugate-reflected
        # scene's locus, giving a degree-16 curve for three foci
        r3 = quad_make(0, 1, 3)
        sc = Scene(((F(-1), F(0)), (F(1), F(0)), (F(0), r3)), F(4))
        r = closure_poly(sc)
        assert r.total_degree == 16 and r.norm_applied
        assert elimination_oracle(sc).closure == r.closure


class TestDegreeLaw:
    def test_one_focus(self):
        assert closure_poly(scene([(2, 3)], 5)).total_degree == 2

    def test_two_focus_generic(self):
        rng = random.Random(9)
        for _ in range(6):
            a, b = sorted(rng.sample(range(-3, 4), 2))
            s = F(rng.randint(1, 6))
            sc = scene([(a, 0), (b, 0)], s)
            if s == abs(b - a):  # segment degeneration has lower degree
                continue
            assert closure_poly(sc).total_degree == 2

    def test_three_focus_generic(self):
        rng = random.Random(13)
        for _ in range(4):
            foci = set()
            while len(foci) < 3:
                foci.add((rng.randint(-3, 3), rng.randint(-3, 3)))
            sc = scene(sorted(foci), rng.randint(1, 6))
            assert closure_poly(sc).total_degree == 8


class TestMembershipConsistency:
    def test_locus_points_nearly_vanish(self, c_scene):
        closure = closure_poly(c_scene).closure.poly
        rng = random.Random(42)
        found = 0
        trials = 0
        while found < 100 and trials < 3000:
            trials += 1
            theta = rng.uniform(0, 2 * math.pi)
            sigma = sign_vectors(3)[rng.randrange(8)]
            f = lambda r: signed_sum(
                c_scene, (r * math.cos(theta), r * math.sin(theta)), sigma
            ) - 1.0
            lo, hi = 0.0, 4.0
            if f(lo) * f(hi) > 0:
                continue
            for _ in range(80):
                mid = (lo + hi) / 2
                if f(lo) * f(mid) <= 0:
                    hi = mid
                else:
                    lo = mid
            point = (lo * math.cos(theta), lo * math.sin(theta))
            if not classify_point(c_scene, point, tol=1e-9):
                continue
            found += 1
            value = abs(closure.eval({"x": point[0], "y": point[1]}))
            scale = 1.0 + max(
                abs(float(c))
                * abs(point[0]) ** e[0]
                * abs(point[1]) ** e[1]
                for e, c in closure.terms.items()
            )
            assert value <= 1e-6 * scale
        assert found == 100


class TestClassifyPoint:
    def test_singleton_branch(self, c_scene):
        got = classify_point(c_scene, (-1 / 3, 0.0), tol=1e-9)
        assert got == {(-1, 1, 1)}

    def test_off_locus_empty(self, c_scene):
        assert classify_point(c_scene, (9 / 5, 8 / 5), tol=1e-6) == set()

    def test_focus_with_matching_radius(self):
        sc = scene([(0, 0), (3, 0), (0, 4)], 7)  # s = |A2 A1| + |A3 A1|
        got = classify_point(sc, (0.0, 0.0), tol=1e-9)
        assert (1, 1, 1) in got

    def test_requires_positive_tol(self, c_scene):
        with pytest.raises(ValueError):
            classify_point(c_scene, (0.0, 0.0), tol=0.0)


class TestColorOf:
    def test_unsigned_is_black(self):
        assert color_of((1, 1, 1)) == (0, 0, 0)

    def test_minus_on_third_is_blue(self):
        assert color_of((1, 1, -1)) == (0, 0, 255)

    def test_two_minus_is_yellow(self):
        assert color_of((-1, -1, 1)) == (255, 255, 0)

    def test_small_n(self):
        assert color_of((-1,)) == (255, 0, 0)
        assert color_of((1, -1)) == (0, 255, 0)

    def test_larger_n_palette_is_deterministic(self):
        vectors = sign_vectors(4)
        colors = [color_of(sg) for sg in vectors]
        assert len(set(colors)) == len(colors)
        assert colors == [color_of(sg) for sg in vectors]
