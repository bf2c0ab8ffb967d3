"""Reference closed forms for the bundled presets, and the self-check suite.

The expected equations below are the published closed forms for the
preset scenes; `run_verification` recomputes everything from scratch and
compares.  Each check returns a (name, passed, detail) row so the CLI can
print one line per check and exit nonzero if anything fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .analysis import (
    circle_through,
    deviation_at_point,
    fit_axis_circle,
    max_deviation,
    van_schooten_check,
)
from .locus import closure_poly, elimination_oracle
from .numeric import quad_make
from .poly import MultiPoly, exact_div, poly_text
from .scenes import PRESETS


def _xy(terms: dict[tuple[int, int], int]) -> MultiPoly:
    return MultiPoly(("x", "y"), {k: Fraction(v) for k, v in terms.items()})


# degree-8 closure for fig2: foci (0,2), (1,0), (2,0), s = 4
EQUATION_FIG2 = _xy({
    (8, 0): 9, (0, 8): 9, (2, 6): 36, (4, 4): 54, (6, 2): 36,
    (7, 0): -72, (0, 7): -48, (1, 6): -72, (2, 5): -144, (3, 4): -216,
    (4, 3): -144, (5, 2): -216, (6, 1): -48,
    (6, 0): -220, (0, 6): -372, (1, 5): 480, (2, 4): -964, (3, 3): 960,
    (4, 2): -812, (5, 1): 480,
    (5, 0): 2136, (0, 5): 1712, (1, 4): 1656, (2, 3): 2080, (3, 2): 3792,
    (4, 1): 368,
    (4, 0): 446, (0, 4): 2846, (1, 3): -8256, (2, 2): 5452, (3, 1): -7104,
    (3, 0): -14424, (0, 3): -6928, (1, 2): -22008, (2, 1): 688,
    (2, 0): 4980, (0, 2): 3132, (1, 1): 17376,
    (1, 0): 27720, (0, 1): 3600, (0, 0): -14175,
})

# degree-8 closure for fig4: foci (-1,0), (0,0), (1,0), s = 1
EQUATION_FIG4 = _xy({
    (8, 0): 9, (0, 8): 9, (2, 6): 36, (4, 4): 54, (6, 2): 36,
    (6, 0): -100, (0, 6): -4, (2, 4): -108, (4, 2): -204,
    (4, 0): 182, (0, 4): -10, (2, 2): -84,
    (2, 0): -100, (0, 2): -4, (0, 0): 9,
})

# quartic closure for fig3: same foci, s = 0 (a lemniscate of Booth)
EQUATION_FIG3 = _xy({(4, 0): 3, (2, 2): 6, (2, 0): -12, (0, 4): 3, (0, 2): 4})

# quartic closure for van-schooten: foci (-1,0), (1,0), (0,sqrt3), s = 0
EQUATION_VAN_SCHOOTEN = _xy({
    (4, 0): 3, (0, 4): 3, (2, 2): 6, (2, 0): -6, (0, 2): -10, (0, 0): 3,
})

GOLDEN_EQUATIONS: dict[str, MultiPoly] = {
    "fig2": EQUATION_FIG2,
    "fig3-lemniscate": EQUATION_FIG3,
    "fig4-almost-circles": EQUATION_FIG4,
    "van-schooten": EQUATION_VAN_SCHOOTEN,
}

# published deviation figures for the fig4 right branch against its
# fitted circle (center (4/3, 0), radius 5/3)
DEVIATION_AT_TANGENT_POINT = 0.027730
DEVIATION_UPPER_BOUND = 0.03429
RIGHT_BRANCH_SIGMA = (-1, 1, 1)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _check(name: str, passed: bool, detail: str) -> CheckResult:
    return CheckResult(name, bool(passed), detail)


def run_verification(samples: int = 100_000) -> list[CheckResult]:
    """Recompute every golden result and compare; one row per check."""
    results: list[CheckResult] = []

    for preset, expected in GOLDEN_EQUATIONS.items():
        got = closure_poly(PRESETS[preset]).closure.poly
        results.append(_check(
            f"equation[{preset}]",
            got == expected,
            f"degree {got.total_degree}, {len(got.terms)} terms",
        ))
        oracle = elimination_oracle(PRESETS[preset]).closure.poly
        results.append(_check(
            f"oracle[{preset}]", oracle == got, "resultant chain agrees"
        ))

    fig4 = PRESETS["fig4-almost-circles"]
    c4 = EQUATION_FIG4
    memberships = [
        ((Fraction(-1, 3), Fraction(0)), True),
        ((Fraction(3), Fraction(0)), True),
        ((Fraction(0), Fraction(1)), True),
        ((Fraction(9, 5), Fraction(8, 5)), False),
    ]
    for (px, py), expect_zero in memberships:
        value = c4.eval({"x": px, "y": py})
        ok = (value == 0) if expect_zero else (value != 0)
        results.append(_check(
            f"membership[({px},{py})]", ok, f"value {value}"
        ))

    # fig3 identity: L/3 == (x^2+y^2)^2 - 4 x^2 + (4/3) y^2
    x = MultiPoly.variable("x")
    y = MultiPoly.variable("y")
    lhs = exact_div(EQUATION_FIG3, MultiPoly.const(3))
    rhs = (x**2 + y**2) ** 2 - 4 * x**2 + Fraction(4, 3) * y**2
    results.append(_check("lemniscate-identity", lhs == rhs, poly_text(lhs)))

    # van-schooten factorization into conjugate circles over Q(sqrt 3)
    surd = quad_make(0, Fraction(2, 3), 3)
    lower = x**2 + y**2 + surd * y - 1
    upper = x**2 + y**2 - surd * y - 1
    try:
        quotient = exact_div(EQUATION_VAN_SCHOOTEN, upper)
        final = exact_div(quotient, lower)
        ok = final == MultiPoly.const(3)
        detail = f"quotient {poly_text(quotient)}"
    except ArithmeticError as exc:
        ok, detail = False, str(exc)
    results.append(_check("two-circle-factorization", ok, detail))

    # fitted circle and deviation figures on the fig4 right branch
    circle = fit_axis_circle(fig4, RIGHT_BRANCH_SIGMA)
    results.append(_check(
        "fitted-circle",
        circle.center == (Fraction(4, 3), Fraction(0))
        and circle.radius_sq == Fraction(25, 9),
        f"center {circle.center}, r^2 {circle.radius_sq}",
    ))
    through = circle_through(
        (Fraction(-1, 3), Fraction(0)), (Fraction(3), Fraction(0)),
        (Fraction(0), Fraction(1)),
    )
    results.append(_check(
        "circle-through-points", through == circle, "3-point fit agrees"
    ))
    dev_f = deviation_at_point(fig4, {RIGHT_BRANCH_SIGMA}, (9 / 5, 8 / 5))
    results.append(_check(
        "deviation-at-(9/5,8/5)",
        abs(dev_f - DEVIATION_AT_TANGENT_POINT) < 1e-5,
        f"{dev_f:.6f}",
    ))
    rep = max_deviation(fig4, circle, {RIGHT_BRANCH_SIGMA}, samples=samples)
    results.append(_check(
        "max-deviation-bound",
        DEVIATION_AT_TANGENT_POINT <= rep.max_deviation <= DEVIATION_UPPER_BOUND,
        f"{rep.max_deviation:.6f} at theta {rep.theta:.4f}",
    ))

    # the three signed relations partition the circumcircle
    vs = van_schooten_check(10_000)
    results.append(_check(
        "van-schooten-arcs",
        vs.covered_everywhere
        and vs.exactly_one_away_from_vertices
        and vs.max_min_residual <= 1e-9
        and len(vs.arcs) == 3,
        f"max residual {vs.max_min_residual:.2e}, {len(vs.arcs)} arcs",
    ))

    return results
