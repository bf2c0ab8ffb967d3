"""Circle fitting and deviation analysis for almost-circular locus branches.

`circle_through` is exact: given rational points it solves the
perpendicular-bisector system over Fractions.  `max_deviation` samples a
circle uniformly in angle and reports the worst relative signed-sum
residual; the sampled maximum is a lower bound for the true supremum.
`van_schooten_check` verifies numerically that on the circumcircle of the
regular triangle (-1,0), (1,0), (0,sqrt(3)) one of the relations
d1+d2=d3, d1+d3=d2, d2+d3=d1 always holds, partitioning the circle into
three arcs delimited by the vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .locus import Scene, SignVector, signed_sum
from .numeric import quad_make

RationalPoint = tuple[Fraction, Fraction]


class CollinearPointsError(ValueError):
    """Three collinear points determine no circle."""


@dataclass(frozen=True)
class Circle:
    center: RationalPoint
    radius_sq: Fraction

    def __post_init__(self) -> None:
        if self.radius_sq <= 0:
            raise ValueError("radius squared must be positive")

    @property
    def radius(self) -> float:
        return math.sqrt(float(self.radius_sq))

    def point_at(self, theta: float) -> tuple[float, float]:
        r = self.radius
        return (float(self.center[0]) + r * math.cos(theta),
                float(self.center[1]) + r * math.sin(theta))


def circle_through(
    p1: RationalPoint, p2: RationalPoint, p3: RationalPoint
) -> Circle:
    """Exact circumcircle of three rational points.

    Solves the two perpendicular-bisector equations
    2(x2-x1) cx + 2(y2-y1) cy = |p2|^2 - |p1|^2  (and p3 vs p1).
    """
    (x1, y1), (x2, y2), (x3, y3) = p1, p2, p3
    a11, a12 = 2 * (x2 - x1), 2 * (y2 - y1)
    a21, a22 = 2 * (x3 - x1), 2 * (y3 - y1)
    b1 = x2 * x2 + y2 * y2 - x1 * x1 - y1 * y1
    b2 = x3 * x3 + y3 * y3 - x1 * x1 - y1 * y1
    det = a11 * a22 - a12 * a21
    if det == 0:
        raise CollinearPointsError(f"collinear points {p1}, {p2}, {p3}")
    cx = (b1 * a22 - b2 * a12) / det
    cy = (a11 * b2 - a21 * b1) / det
    r2 = (x1 - cx) ** 2 + (y1 - cy) ** 2
    return Circle((cx, cy), r2)


@dataclass(frozen=True)
class DeviationReport:
    max_deviation: float
    theta: float
    point: tuple[float, float]
    samples: int


def _relative_residuals(
    scene: Scene, circle: Circle, sigmas: set[SignVector], thetas: np.ndarray
) -> np.ndarray:
    cx, cy = float(circle.center[0]), float(circle.center[1])
    r = circle.radius
    px = cx + r * np.cos(thetas)
    py = cy + r * np.sin(thetas)
    s = float(scene.s)
    scale = s if s > 0 else r
    best: np.ndarray | None = None
    for sigma in sigmas:
        acc = np.zeros_like(px)
        for sg, (ax, ay) in zip(sigma, scene.float_foci()):
            dx = px - ax
            dy = py - ay
            acc += sg * np.sqrt(dx * dx + dy * dy)
        res = np.abs(acc - s)
        best = res if best is None else np.minimum(best, res)
    assert best is not None
    return best / scale


def max_deviation(
    scene: Scene,
    circle: Circle,
    sigmas: set[SignVector],
    samples: int = 100_000,
) -> DeviationReport:
    """Worst relative residual min_sigma |signed_sum - s| / s on the circle.

    Sampling is uniform in angle; for s = 0 the residual is divided by the
    circle radius instead.  The reported maximum is a sampled lower bound
    of the true supremum.
    """
    if samples < 1000:
        raise ValueError("need at least 1000 angle samples")
    if not sigmas:
        raise ValueError("need at least one sign vector")
    thetas = 2.0 * math.pi * np.arange(samples) / samples
    dev = _relative_residuals(scene, circle, sigmas, thetas)
    k = int(dev.argmax())
    return DeviationReport(
        max_deviation=float(dev[k]),
        theta=float(thetas[k]),
        point=circle.point_at(float(thetas[k])),
        samples=samples,
    )


def deviation_at_point(
    scene: Scene, sigmas: set[SignVector], point: tuple[float, float]
) -> float:
    """Relative residual of the best sign vector at one point (s > 0)."""
    s = float(scene.s)
    if s <= 0:
        raise ValueError("point deviation is relative to s; needs s > 0")
    best = min(abs(signed_sum(scene, point, sigma) - s) for sigma in sigmas)
    return best / s


# ---------------------------------------------------------------------------
# van Schooten


def van_schooten_scene() -> Scene:
    """Regular triangle (-1,0), (1,0), (0,sqrt(3)) with radius 0."""
    return Scene(
        (
            (Fraction(-1), Fraction(0)),
            (Fraction(1), Fraction(0)),
            (Fraction(0), quad_make(0, 1, 3)),
        ),
        Fraction(0),
    )


# the three single-minus sign vectors, labeled by the isolated distance
_RELATIONS: tuple[tuple[str, SignVector], ...] = (
    ("d1+d2=d3", (1, 1, -1)),
    ("d1+d3=d2", (1, -1, 1)),
    ("d2+d3=d1", (-1, 1, 1)),
)


@dataclass(frozen=True)
class Arc:
    relation: str
    sigma: SignVector
    theta_start: float
    theta_end: float
    sample_count: int


@dataclass(frozen=True)
class VanSchootenReport:
    samples: int
    max_min_residual: float
    covered_everywhere: bool
    exactly_one_away_from_vertices: bool
    arcs: tuple[Arc, ...]
    vertex_angles: tuple[float, float, float]


def van_schooten_check(
    samples: int = 10_000,
    residual_tol: float = 1e-9,
    vertex_margin: float = 1e-3,
) -> VanSchootenReport:
    """Sample the circumcircle and check the three signed relations.

    At every sample at least one of d1+d2=d3, d1+d3=d2, d2+d3=d1 must hold
    within residual_tol; samples farther than vertex_margin from every
    vertex must satisfy exactly one.  Consecutive runs of the minimizing
    relation are reported as arcs, which are delimited by the vertices.
    """
    if samples < 100:
        raise ValueError("need at least 100 samples")
    scene = van_schooten_scene()
    foci = scene.float_foci()
    cx, cy = 0.0, math.sqrt(3.0) / 3.0
    radius = 2.0 / math.sqrt(3.0)
    thetas = 2.0 * math.pi * np.arange(samples) / samples
    px = cx + radius * np.cos(thetas)
    py = cy + radius * np.sin(thetas)
    residuals = []
    for _, sigma in _RELATIONS:
        acc = np.zeros_like(px)
        for sg, (ax, ay) in zip(sigma, foci):
            dx = px - ax
            dy = py - ay
            acc += sg * np.sqrt(dx * dx + dy * dy)
        residuals.append(np.abs(acc))
    res = np.stack(residuals)
    hit_counts = (res <= residual_tol).sum(axis=0)
    best = res.min(axis=0)
    winner = res.argmin(axis=0)

    vertex_dist = np.full(samples, np.inf)
    for ax, ay in foci:
        vertex_dist = np.minimum(vertex_dist, np.hypot(px - ax, py - ay))
    away = vertex_dist > vertex_margin

    covered = bool((hit_counts >= 1).all())
    exactly_one = bool((hit_counts[away] == 1).all())

    arcs: list[Arc] = []
    # rotate so a run boundary sits at index 0, then group consecutive winners
    boundaries = np.nonzero(winner != np.roll(winner, 1))[0]
    if boundaries.size == 0:
        name, sigma = _RELATIONS[int(winner[0])]
        arcs.append(Arc(name, sigma, float(thetas[0]), float(thetas[-1]), samples))
    else:
        for k, start in enumerate(boundaries):
            end = boundaries[(k + 1) % boundaries.size]
            count = (end - start) % samples or samples
            name, sigma = _RELATIONS[int(winner[start])]
            arcs.append(
                Arc(
                    name,
                    sigma,
                    float(thetas[start]),
                    float(thetas[(end - 1) % samples]),
                    int(count),
                )
            )
    vertex_angles = tuple(
        math.atan2(ay - cy, ax - cx) % (2 * math.pi) for ax, ay in foci
    )
    return VanSchootenReport(
        samples=samples,
        max_min_residual=float(best.max()),
        covered_everywhere=covered,
        exactly_one_away_from_vertices=exactly_one,
        arcs=tuple(arcs),
        vertex_angles=vertex_angles,  # type: ignore[arg-type]
    )


# ---------------------------------------------------------------------------
# exact axis-crossing circle fit (for x-axis symmetric scenes)


def axis_crossings(scene: Scene, sigma: SignVector) -> list[Fraction]:
    """Exact x-axis roots of sum_i sigma_i |x - a_i| = s for on-axis foci.

    The signed sum restricted to the x-axis is piecewise linear with
    breakpoints at the foci, so each piece is solved exactly.
    """
    positions: list[Fraction] = []
    for fx, fy in scene.foci:
        if fy != 0 or not isinstance(fx, Fraction):
            raise ValueError("axis crossings need rational foci on the x-axis")
        positions.append(fx)
    breaks = sorted(set(positions))
    # candidate intervals: (-inf, b0], [b0, b1], ..., [bk, inf)
    spans: list[tuple[Fraction | None, Fraction | None]] = []
    spans.append((None, breaks[0]))
    for a, b in zip(breaks, breaks[1:]):
        spans.append((a, b))
    spans.append((breaks[-1], None))
    roots: set[Fraction] = set()
    for lo, hi in spans:
        if lo is None:
            probe = breaks[0] - 1
        elif hi is None:
            probe = breaks[-1] + 1
        else:
            probe = (lo + hi) / 2
        # on this interval: sum sg_i * |x - a_i| = slope*x + const
        slope = Fraction(0)
        const = Fraction(0)
        for sg, a in zip(sigma, positions):
            if probe >= a:
                slope += sg
                const -= sg * a
            else:
                slope -= sg
                const += sg * a
        target = scene.s - const
        if slope == 0:
            continue
        x = target / slope
        if (lo is None or x >= lo) and (hi is None or x <= hi):
            roots.add(x)
    return sorted(roots)


def fit_axis_circle(scene: Scene, sigma: SignVector) -> Circle:
    """Diameter circle through the branch's two x-axis crossings.

    Valid for scenes symmetric in y (all foci on the x-axis), where a
    circle-like branch has its center on the axis.
    """
    roots = axis_crossings(scene, sigma)
    if len(roots) != 2:
        raise ValueError(
            f"expected exactly two axis crossings for {sigma}, got {roots}"
        )
    x1, x2 = roots
    center = ((x1 + x2) / 2, Fraction(0))
    radius = (x2 - x1) / 2
    return Circle(center, radius * radius)
