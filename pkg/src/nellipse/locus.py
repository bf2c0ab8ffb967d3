"""Closure polynomials and sign classification for signed distance-sum loci.

A Scene fixes n foci and a radius s >= 0.  The extended locus is the set of
points P where some signed sum sum_i sigma_i * |A_i P| equals s.  Its
defining polynomial is obtained by multiplying the linear forms
(s - sum_i sigma_i d_i) over sign vectors sigma, which is even in every
d_i and therefore admits the substitution d_i^2 -> (x-a_i)^2 + (y-b_i)^2.
Surd coordinates leave coefficients in Q(sqrt(d)); multiplying by the
coefficient-wise conjugate (the field norm) brings the closure back to Q.
The primitive squarefree canonical form of the result is the closure
polynomial.

`elimination_oracle` derives the same closure through chained Sylvester
resultants (with the surd adjoined as a fresh variable t, eliminated
last), giving an independent cross-check of the whole pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .numeric import (
    ExactValue,
    MixedRadicandError,
    QuadraticNumber,
    normalize_value,
    radicand_of,
)
from .poly import (
    CanonicalForm,
    MultiPoly,
    canonical_poly,
    poly_canonical,
    poly_resultant,
    reduce_surd_var,
    conjugate_poly,
    squarefree_part,
)

ExactPoint = tuple[ExactValue, ExactValue]
SignVector = tuple[int, ...]
RGB = tuple[int, int, int]


class DegenerateSceneError(ValueError):
    """The scene's closure polynomial collapses to zero."""


class SizeLimitError(ValueError):
    """Input exceeds a documented cost guard."""


@dataclass(frozen=True)
class Scene:
    """Foci plus radius; the full problem instance.

    All coordinates must be rational or share a single radicand, and the
    radius is a nonnegative rational.
    """

    foci: tuple[ExactPoint, ...]
    s: Fraction

    def __post_init__(self) -> None:
        if len(self.foci) < 1:
            raise ValueError("a scene needs at least one focus")
        if not isinstance(self.s, Fraction):
            object.__setattr__(self, "s", Fraction(self.s))
        if self.s < 0:
            raise ValueError("radius s must be nonnegative")
        foci = tuple(
            (normalize_value(fx), normalize_value(fy)) for fx, fy in self.foci
        )
        object.__setattr__(self, "foci", foci)
        rad: int | None = None
        for fx, fy in foci:
            for coord in (fx, fy):
                d = radicand_of(coord)
                if d is None:
                    continue
                if rad is None:
                    rad = d
                elif rad != d:
                    raise MixedRadicandError(
                        f"scene mixes sqrt({rad}) and sqrt({d}) coordinates"
                    )
        object.__setattr__(self, "_radicand", rad)

    @property
    def n(self) -> int:
        return len(self.foci)

    @property
    def radicand(self) -> int | None:
        return self._radicand  # type: ignore[attr-defined]

    def float_foci(self) -> list[tuple[float, float]]:
        return [(float(fx), float(fy)) for fx, fy in self.foci]


@dataclass(frozen=True)
class LocusResult:
    closure: CanonicalForm
    total_degree: int
    half_product_used: bool
    norm_applied: bool


def sign_vectors(n: int) -> list[SignVector]:
    """All 2^n sign vectors, the all-plus vector first."""
    return [tuple(sg) for sg in product((1, -1), repeat=n)]


def squared_distance_poly(focus: ExactPoint) -> MultiPoly:
    """rho(x, y) = (x - a)^2 + (y - b)^2, expanded."""
    x = MultiPoly.variable("x")
    y = MultiPoly.variable("y")
    a, b = (normalize_value(focus[0]), normalize_value(focus[1]))
    return (x - a) ** 2 + (y - b) ** 2


def symmetric_sum(values: Sequence[float]) -> float:
    """Sum pairing index k with n-1-k first, so reversing the input list
    gives the bit-identical result (IEEE addition is commutative)."""
    total = 0.0
    i, j = 0, len(values) - 1
    while i < j:
        total += values[i] + values[j]
        i += 1
        j -= 1
    if i == j:
        total += values[i]
    return total


def signed_sum(
    scene: Scene, point: Sequence[float], sigma: SignVector
) -> float:
    """sum_i sigma_i * |A_i P| in double precision."""
    if len(sigma) != scene.n:
        raise ValueError("sign vector length does not match focus count")
    px, py = float(point[0]), float(point[1])
    terms = []
    for sg, (ax, ay) in zip(sigma, scene.float_foci()):
        dx = px - ax
        dy = py - ay
        terms.append(sg * math.sqrt(dx * dx + dy * dy))
    return symmetric_sum(terms)


def sign_product(scene: Scene) -> MultiPoly:
    """Product of (s - sum_i sigma_i d_i) over sign vectors.

    For s > 0 the product runs over all 2^n vectors.  For s = 0 and n >= 2
    only the 2^(n-1) vectors with sigma_1 = +1 are used: the omitted
    factors are global negations, so the zero set is unchanged and the
    result avoids being a perfect square.  Either way the result is even
    in every d_i.
    """
    n = scene.n
    dvars = [MultiPoly.variable(f"d{i + 1}") for i in range(n)]
    if scene.s == 0 and n == 1:
        raise DegenerateSceneError(
            "sign product for one focus with s = 0 is odd in d1; "
            "the closure pipeline special-cases this scene"
        )
    vectors = sign_vectors(n)
    if scene.s == 0:
        vectors = [sg for sg in vectors if sg[0] == 1]
    result = MultiPoly.const(1)
    for sg in vectors:
        factor = MultiPoly.const(scene.s)
        for coeff, dv in zip(sg, dvars):
            factor = factor - coeff * dv
        result = result * factor
    return result


def _assert_even(poly: MultiPoly, names: Iterable[str]) -> None:
    idx = [poly.vars.index(v) for v in names if v in poly.vars]
    for exps in poly.terms:
        if any(exps[i] % 2 for i in idx):
            raise AssertionError("sign product has an odd distance exponent")


def _substitute_squares(poly: MultiPoly, rhos: list[MultiPoly]) -> MultiPoly:
    """Replace d_i^(2k) by rho_i^k; requires even exponents throughout."""
    names = [f"d{i + 1}" for i in range(len(rhos))]
    _assert_even(poly, names)
    positions = {v: poly.vars.index(v) for v in names if v in poly.vars}
    # cache rho powers
    pow_cache: list[dict[int, MultiPoly]] = [
        {0: MultiPoly.const(1), 1: r} for r in rhos
    ]
    total = MultiPoly.zero()
    for exps, coeff in poly.terms.items():
        term = MultiPoly.const(coeff)
        for i, name in enumerate(names):
            pos = positions.get(name)
            if pos is None:
                continue
            half = exps[pos] // 2
            cache = pow_cache[i]
            if half not in cache:
                have = max(k for k in cache if k <= half)
                acc = cache[have]
                for _ in range(half - have):
                    acc = acc * rhos[i]
                cache[half] = acc
            term = term * cache[half]
        total = total + term
    return total


def closure_poly(scene: Scene) -> LocusResult:
    """Canonical closure polynomial of the scene's extended locus.

    Pipeline: sign product -> d_i^2 -> rho_i substitution -> field norm if
    any coefficient kept a surd part -> primitive part -> squarefree part
    -> canonical form.  The one-focus, zero-radius scene short-circuits to
    rho_1 (a single point).
    """
    half = scene.s == 0
    if scene.n == 1 and scene.s == 0:
        rho = squared_distance_poly(scene.foci[0])
        return LocusResult(poly_canonical(rho), rho.total_degree, True, False)
    sp = sign_product(scene)
    rhos = [squared_distance_poly(f) for f in scene.foci]
    substituted = _substitute_squares(sp, rhos)
    norm_applied = False
    if substituted.has_surd_coeff:
        substituted = substituted * conjugate_poly(substituted)
        norm_applied = True
        if substituted.has_surd_coeff:
            raise AssertionError("field norm left surd coefficients behind")
    if substituted.is_zero:
        raise DegenerateSceneError("closure polynomial vanished identically")
    reduced = squarefree_part(canonical_poly(substituted))
    form = poly_canonical(reduced)
    return LocusResult(form, form.total_degree, half, norm_applied)


def _surd_coordinate_polys(scene: Scene) -> list[tuple[MultiPoly, MultiPoly]]:
    """Focus coordinates as polynomials in t (t standing for sqrt(d))."""
    t = MultiPoly.variable("t")
    out = []
    for fx, fy in scene.foci:
        coords = []
        for c in (fx, fy):
            if isinstance(c, QuadraticNumber):
                coords.append(MultiPoly.const(c.a) + c.b * t)
            else:
                coords.append(MultiPoly.const(c))
        out.append((coords[0], coords[1]))
    return out


def elimination_oracle(scene: Scene) -> LocusResult:
    """Closure via chained resultants; must match closure_poly exactly.

    Starting from s - d_1 - ... - d_n, each d_i is eliminated against
    d_i^2 - rho_i; a surd coordinate contributes the variable t, reduced
    by t^2 -> d along the way and eliminated last against t^2 - d.
    """
    if scene.n > 4:
        raise SizeLimitError("elimination oracle supports at most 4 foci")
    if scene.n == 1 and scene.s == 0:
        rho = squared_distance_poly(scene.foci[0])
        return LocusResult(poly_canonical(rho), rho.total_degree, True, False)
    d = scene.radicand
    x = MultiPoly.variable("x")
    y = MultiPoly.variable("y")
    rhos = []
    for cx, cy in _surd_coordinate_polys(scene):
        rho = (x - cx) ** 2 + (y - cy) ** 2
        rhos.append(reduce_surd_var(rho, d) if d is not None else rho)
    current = MultiPoly.const(scene.s)
    for i in range(scene.n):
        current = current - MultiPoly.variable(f"d{i + 1}")
    for i, rho in enumerate(rhos):
        name = f"d{i + 1}"
        relation = MultiPoly.variable(name) ** 2 - rho
        current = poly_resultant(current, relation, name)
        if d is not None:
            current = reduce_surd_var(current, d)
    norm_applied = False
    if d is not None and current.degree_in("t") > 0:
        t = MultiPoly.variable("t")
        current = poly_resultant(current, t**2 - d, "t")
        norm_applied = True
    if current.is_zero:
        raise DegenerateSceneError("elimination produced the zero polynomial")
    reduced = squarefree_part(canonical_poly(current))
    form = poly_canonical(reduced)
    return LocusResult(form, form.total_degree, scene.s == 0, norm_applied)


def classify_point(
    scene: Scene, point: Sequence[float], tol: float = 1e-9
) -> set[SignVector]:
    """All sign vectors whose signed sum matches s within tol; empty = off."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    s = float(scene.s)
    hits = set()
    for sigma in sign_vectors(scene.n):
        if abs(signed_sum(scene, point, sigma) - s) <= tol:
            hits.add(sigma)
    return hits


def _palette(n: int) -> list[RGB]:
    """Deterministic 2^n palette for n > 3, indexed by the sigma bit pattern."""
    from colorsys import hsv_to_rgb

    count = 1 << n
    colors = []
    for i in range(count):
        r, g, b = hsv_to_rgb(i / count, 1.0, 1.0 if i else 0.0)
        colors.append((round(r * 255), round(g * 255), round(b * 255)))
    return colors


def color_of(sigma: SignVector) -> RGB:
    """RGB for a sign vector: a minus on focus i switches channel i on.

    Channels follow focus order red/green/blue, so the all-plus vector is
    black.  Beyond three foci the sign vectors index a fixed palette.
    """
    n = len(sigma)
    if n <= 3:
        channels = [255 if sg < 0 else 0 for sg in sigma] + [0, 0]
        return (channels[0], channels[1], channels[2])
    index = 0
    for sg in sigma:
        index = (index << 1) | (1 if sg < 0 else 0)
    return _palette(n)[index]
