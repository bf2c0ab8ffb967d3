"""Grid sampling, contour extraction, and deterministic raster rendering.

Two sampling conventions, both row-major with the top row (largest y)
first:

* Grid values sit on a node lattice spanning the window inclusive, i.e.
  lerp(min, max, index / (count - 1)), so a symmetric window's center
  node is exact and contours reach the window edge.
* Image pixels sample cell centers, lerp(min, max, (index + 0.5) /
  count), so a pixel's color reflects the point it contains.

Images are plain RGB byte arrays serialized as binary PPM (P6); identical
inputs give identical bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .locus import RGB, Scene, color_of, sign_vectors
from .poly import MultiPoly


@dataclass(frozen=True)
class Window:
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self) -> None:
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise ValueError("window must have xmin < xmax and ymin < ymax")

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    def pixel_diag(self, width: int, height: int) -> float:
        return math.hypot(self.width / width, self.height / height)


@dataclass(frozen=True)
class Grid:
    """Row-major node samples spanning the window, top row first."""

    width: int
    height: int
    values: np.ndarray  # shape (height, width), float64

    def __post_init__(self) -> None:
        if self.values.shape != (self.height, self.width):
            raise ValueError("grid shape does not match width/height")


def grid_nodes(window: Window, width: int, height: int) -> tuple[np.ndarray, np.ndarray]:
    """(xs, ys) node coordinates spanning the window; ys runs top-down."""
    js = np.arange(width) / (width - 1)
    is_ = np.arange(height) / (height - 1)
    xs = window.xmin + (window.xmax - window.xmin) * js
    ys = window.ymax - (window.ymax - window.ymin) * is_
    return xs, ys


def pixel_centers(window: Window, width: int, height: int) -> tuple[np.ndarray, np.ndarray]:
    """(xs, ys) pixel-center coordinates; ys runs top-down to match rows."""
    js = (np.arange(width) + 0.5) / width
    is_ = (np.arange(height) + 0.5) / height
    xs = window.xmin + (window.xmax - window.xmin) * js
    ys = window.ymax - (window.ymax - window.ymin) * is_
    return xs, ys


def poly_grid_values(p: MultiPoly, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Evaluate a polynomial in x, y over the center lattice (float64)."""
    extra = [v for v in p.vars if v not in ("x", "y")]
    if extra:
        raise ValueError(f"grid evaluation needs a polynomial in x, y only, got {extra}")
    X, Y = np.meshgrid(xs, ys)
    xi = p.vars.index("x") if "x" in p.vars else None
    yi = p.vars.index("y") if "y" in p.vars else None
    out = np.zeros_like(X)
    xpow: dict[int, np.ndarray] = {0: np.ones_like(X)}
    ypow: dict[int, np.ndarray] = {0: np.ones_like(X)}
    for exps, coeff in p.terms.items():
        ex = exps[xi] if xi is not None else 0
        ey = exps[yi] if yi is not None else 0
        if ex not in xpow:
            xpow[ex] = X**ex
        if ey not in ypow:
            ypow[ey] = Y**ey
        out += float(coeff) * xpow[ex] * ypow[ey]
    return out


def eval_grid(
    f: MultiPoly | Callable[[float, float], float],
    window: Window,
    width: int,
    height: int,
) -> Grid:
    """Sample a field at cell centers, row-major with the top row first."""
    if width < 2 or height < 2:
        raise ValueError("grid needs width and height >= 2")
    xs, ys = grid_nodes(window, width, height)
    if isinstance(f, MultiPoly):
        values = poly_grid_values(f, xs, ys)
    else:
        values = np.empty((height, width), dtype=float)
        for i, y in enumerate(ys):
            for j, x in enumerate(xs):
                values[i, j] = f(float(x), float(y))
    return Grid(width, height, values)


# ---------------------------------------------------------------------------
# marching squares


@dataclass(frozen=True)
class Polyline:
    points: tuple[tuple[float, float], ...]
    closed: bool


@dataclass(frozen=True)
class ContourSet:
    polylines: tuple[Polyline, ...]

    def to_json(self) -> list[dict]:
        return [
            {"points": [[px, py] for px, py in line.points], "closed": line.closed}
            for line in self.polylines
        ]


# Segment table indexed by corner bits (TL<<3 | TR<<2 | BR<<1 | BL), where a
# set bit means the corner sample is above the iso level.  Entries are pairs
# of edge names; saddle cases 5 and 10 are resolved by the center average.
_EDGE_SEGMENTS: dict[int, list[tuple[str, str]]] = {
    0: [],
    1: [("L", "B")],
    2: [("B", "R")],
    3: [("L", "R")],
    4: [("T", "R")],
    6: [("T", "B")],
    7: [("T", "L")],
    8: [("T", "L")],
    9: [("T", "B")],
    11: [("T", "R")],
    12: [("L", "R")],
    13: [("B", "R")],
    14: [("L", "B")],
    15: [],
}
_SADDLE = {
    5: {True: [("T", "L"), ("B", "R")], False: [("T", "R"), ("L", "B")]},
    10: {True: [("T", "R"), ("L", "B")], False: [("T", "L"), ("B", "R")]},
}

EdgeId = tuple[str, int, int]


def marching_squares(grid: Grid, window: Window, iso: float = 0.0) -> ContourSet:
    """Extract iso-contours with the 16-case lookup and edge interpolation.

    Crossing points are computed once per lattice edge, so polylines stitch
    exactly across cells; ambiguous saddles follow the sign of the cell's
    center average.
    """
    xs, ys = grid_nodes(window, grid.width, grid.height)
    v = grid.values
    above = v > iso

    crossings: dict[EdgeId, tuple[float, float]] = {}

    def edge_point(kind: str, i: int, j: int) -> tuple[float, float]:
        eid = (kind, i, j)
        pt = crossings.get(eid)
        if pt is None:
            if kind == "h":
                a, b = v[i, j], v[i, j + 1]
                t = (iso - a) / (b - a)
                pt = (xs[j] + t * (xs[j + 1] - xs[j]), ys[i])
            else:
                a, b = v[i, j], v[i + 1, j]
                t = (iso - a) / (b - a)
                pt = (xs[j], ys[i] + t * (ys[i + 1] - ys[i]))
            crossings[eid] = pt
        return pt

    def cell_edge(name: str, i: int, j: int) -> EdgeId:
        if name == "T":
            return ("h", i, j)
        if name == "B":
            return ("h", i + 1, j)
        if name == "L":
            return ("v", i, j)
        return ("v", i, j + 1)

    segments: list[tuple[EdgeId, EdgeId]] = []
    for i in range(grid.height - 1):
        for j in range(grid.width - 1):
            case = (
                (8 if above[i, j] else 0)
                | (4 if above[i, j + 1] else 0)
                | (2 if above[i + 1, j + 1] else 0)
                | (1 if above[i + 1, j] else 0)
            )
            if case in _SADDLE:
                center = (
                    v[i, j] + v[i, j + 1] + v[i + 1, j] + v[i + 1, j + 1]
                ) / 4.0
                pairs = _SADDLE[case][bool(center > iso)]
            else:
                pairs = _EDGE_SEGMENTS[case]
            for a, b in pairs:
                segments.append((cell_edge(a, i, j), cell_edge(b, i, j)))

    # resolve crossing coordinates and stitch segments into chains
    for ea, eb in segments:
        edge_point(*ea)
        edge_point(*eb)
    adjacency: dict[EdgeId, list[int]] = {}
    for idx, (ea, eb) in enumerate(segments):
        adjacency.setdefault(ea, []).append(idx)
        adjacency.setdefault(eb, []).append(idx)

    used = [False] * len(segments)

    def walk(start_edge: EdgeId) -> tuple[list[EdgeId], bool]:
        chain = [start_edge]
        node = start_edge
        while True:
            nxt = next(
                (i for i in adjacency.get(node, ()) if not used[i]), None
            )
            if nxt is None:
                return chain, False
            used[nxt] = True
            ea, eb = segments[nxt]
            node = eb if ea == node else ea
            chain.append(node)
            if node == start_edge:
                return chain, True

    polylines: list[Polyline] = []
    # open chains start at odd-degree edges, then the rest are loops
    starts = [e for e, segs in adjacency.items() if len(segs) % 2 == 1]
    for start in starts:
        if all(used[i] for i in adjacency[start]):
            continue
        chain, _ = walk(start)
        if len(chain) >= 2:
            polylines.append(
                Polyline(tuple(crossings[e] for e in chain), False)
            )
    for idx in range(len(segments)):
        if used[idx]:
            continue
        used[idx] = True
        ea, eb = segments[idx]
        chain, _ = walk(eb)
        chain = [ea] + chain
        closed = chain[0] == chain[-1]
        if closed:
            chain = chain[:-1]
        if len(chain) >= 2:
            polylines.append(Polyline(tuple(crossings[e] for e in chain), closed))
    return ContourSet(tuple(polylines))


# ---------------------------------------------------------------------------
# images


@dataclass(frozen=True)
class RgbImage:
    """RGB byte triples, row-major, top row first."""

    width: int
    height: int
    pixels: bytes

    def __post_init__(self) -> None:
        if len(self.pixels) != self.width * self.height * 3:
            raise ValueError("pixel buffer does not match dimensions")

    def pixel(self, ix: int, iy: int) -> RGB:
        off = (iy * self.width + ix) * 3
        return (self.pixels[off], self.pixels[off + 1], self.pixels[off + 2])

    def to_ppm(self) -> bytes:
        header = f"P6\n{self.width} {self.height}\n255\n".encode("ascii")
        return header + self.pixels


def write_ppm(image: RgbImage, path: str) -> None:
    with open(path, "wb") as fh:
        fh.write(image.to_ppm())


def image_from_array(array: np.ndarray) -> RgbImage:
    if array.dtype != np.uint8 or array.ndim != 3 or array.shape[2] != 3:
        raise ValueError("need a (h, w, 3) uint8 array")
    h, w, _ = array.shape
    return RgbImage(w, h, array.tobytes())


def _distance_stack(scene: Scene, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Per-focus distance fields, shape (n, height, width)."""
    X, Y = np.meshgrid(xs, ys)
    layers = []
    for ax, ay in scene.float_foci():
        dx = X - ax
        dy = Y - ay
        layers.append(np.sqrt(dx * dx + dy * dy))
    return np.stack(layers)


def _symmetric_signed_total(dists: np.ndarray, sigma) -> np.ndarray:
    """Accumulate sigma_k * dists[k] pairing k with n-1-k first.

    Matches locus.symmetric_sum so mirror-reindexed scenes produce
    bit-identical totals, and raster classification agrees bitwise with
    classify_point at pixel centers.
    """
    n = dists.shape[0]
    total = np.zeros_like(dists[0])
    i, j = 0, n - 1
    while i < j:
        total += sigma[i] * dists[i] + sigma[j] * dists[j]
        i += 1
        j -= 1
    if i == j:
        total += sigma[i] * dists[i]
    return total


def classify_raster(
    scene: Scene,
    window: Window,
    width: int,
    height: int,
    tol: float = 1.5,
) -> RgbImage:
    """Color pixels by the sign vector minimizing |signed sum - s|.

    A pixel is on-locus when that minimum is at most tol * pixel diagonal
    (the signed sum changes by at most n per unit step, so a band factor of
    1.5 reliably covers a three-focus curve crossing the pixel); all other
    pixels stay white.
    """
    threshold = tol * window.pixel_diag(width, height)
    xs, ys = pixel_centers(window, width, height)
    dists = _distance_stack(scene, xs, ys)
    s = float(scene.s)
    vectors = sign_vectors(scene.n)
    residuals = np.empty((len(vectors), height, width))
    for k, sigma in enumerate(vectors):
        residuals[k] = np.abs(_symmetric_signed_total(dists, sigma) - s)
    best = residuals.min(axis=0)
    which = residuals.argmin(axis=0)
    img = np.full((height, width, 3), 255, dtype=np.uint8)
    on = best <= threshold
    palette = np.array([color_of(sigma) for sigma in vectors], dtype=np.uint8)
    img[on] = palette[which[on]]
    return image_from_array(img)


def hue_heatmap(scene: Scene, window: Window, width: int, height: int) -> RgbImage:
    """Map the plain distance sum to a cyclic hue (unit period), S = V = 1."""
    xs, ys = pixel_centers(window, width, height)
    dists = _distance_stack(scene, xs, ys)
    total = _symmetric_signed_total(dists, [1] * scene.n)
    hue = total - np.floor(total)
    return image_from_array(_hsv_bytes(hue))


def _hsv_bytes(hue: np.ndarray) -> np.ndarray:
    """HSV(h, 1, 1) -> packed uint8 RGB, vectorized and deterministic."""
    h6 = hue * 6.0
    sector = np.floor(h6).astype(np.int64) % 6
    f = h6 - np.floor(h6)
    t = np.clip(f * 255.0 + 0.5, 0, 255).astype(np.uint8)
    q = np.clip((1.0 - f) * 255.0 + 0.5, 0, 255).astype(np.uint8)
    full = np.full_like(t, 255)
    zero = np.zeros_like(t)
    # per-sector RGB components
    r = np.select(
        [sector == 0, sector == 1, sector == 2, sector == 3, sector == 4, sector == 5],
        [full, q, zero, zero, t, full],
    )
    g = np.select(
        [sector == 0, sector == 1, sector == 2, sector == 3, sector == 4, sector == 5],
        [t, full, full, q, zero, zero],
    )
    b = np.select(
        [sector == 0, sector == 1, sector == 2, sector == 3, sector == 4, sector == 5],
        [zero, zero, t, full, full, q],
    )
    return np.stack([r, g, b], axis=-1).astype(np.uint8)


def render_polylines(
    contours: ContourSet, window: Window, width: int, height: int
) -> RgbImage:
    """Rasterize contour polylines as black pixels on white, for CLI output."""
    img = np.full((height, width, 3), 255, dtype=np.uint8)
    dx = window.width / width
    dy = window.height / height

    def paint(px: float, py: float) -> None:
        j = int((px - window.xmin) / dx)
        i = int((window.ymax - py) / dy)
        if 0 <= i < height and 0 <= j < width:
            img[i, j] = (0, 0, 0)

    for line in contours.polylines:
        pts = line.points + ((line.points[0],) if line.closed else ())
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            steps = max(
                2, int(2 * max(abs(x1 - x0) / dx, abs(y1 - y0) / dy)) + 1
            )
            for k in range(steps + 1):
                u = k / steps
                paint(x0 + u * (x1 - x0), y0 + u * (y1 - y0))
    return image_from_array(img)
