"""Scene JSON parsing, serialization, and the named preset scenes.

Scene files look like

    {"foci": [{"x": "-1", "y": "0"},
              {"x": {"a": "0", "b": "1", "d": 3}, "y": "0"}],
     "s": "1",
     "name": "optional"}

Coordinates are exact: rational strings "p/q" (or "p", or exact decimal
text), integers, or surd objects {"a", "b", "d"} meaning a + b*sqrt(d).
Unknown keys anywhere are rejected, as are mixed radicands, an empty
focus list, and a negative radius.  Errors carry the offending field path.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .numeric import (
    ExactValue,
    InvalidRationalError,
    MixedRadicandError,
    QuadraticNumber,
    RadicandError,
    quad_make,
    rat_format,
    rat_parse,
)
from .locus import Scene


class SceneParseError(ValueError):
    """Scene document rejected; `path` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _parse_rational(value: Any, path: str) -> Fraction:
    if isinstance(value, bool):
        raise SceneParseError(path, "expected a rational value")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # exact decimal reading of the JSON literal's repr
        try:
            return Fraction(repr(value))
        except ValueError as exc:
            raise SceneParseError(path, f"non-finite number {value!r}") from exc
    if isinstance(value, str):
        try:
            return rat_parse(value)
        except InvalidRationalError as exc:
            raise SceneParseError(path, str(exc)) from exc
    raise SceneParseError(path, f"expected a rational value, got {type(value).__name__}")


def coeff_from_json(value: Any, path: str) -> ExactValue:
    """Parse a coordinate: rational text/number or {"a","b","d"} surd object."""
    if isinstance(value, Mapping):
        extra = set(value) - {"a", "b", "d"}
        if extra:
            raise SceneParseError(path, f"unknown keys {sorted(extra)} in surd value")
        missing = {"a", "b", "d"} - set(value)
        if missing:
            raise SceneParseError(path, f"surd value missing {sorted(missing)}")
        a = _parse_rational(value["a"], f"{path}.a")
        b = _parse_rational(value["b"], f"{path}.b")
        d = value["d"]
        if not isinstance(d, int) or isinstance(d, bool):
            raise SceneParseError(f"{path}.d", "radicand must be an integer")
        try:
            return quad_make(a, b, d)
        except RadicandError as exc:
            raise SceneParseError(f"{path}.d", str(exc)) from exc
    return _parse_rational(value, path)


def coeff_to_json(value: ExactValue) -> Any:
    if isinstance(value, QuadraticNumber):
        if value.b == 0:
            return rat_format(value.a)
        return {"a": rat_format(value.a), "b": rat_format(value.b), "d": value.d}
    return rat_format(value)


def parse_scene(document: str | bytes | Mapping[str, Any]) -> Scene:
    """Parse and validate a scene document (JSON text or mapping)."""
    if isinstance(document, (str, bytes)):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SceneParseError("$", f"invalid JSON: {exc}") from exc
    else:
        doc = document
    if not isinstance(doc, Mapping):
        raise SceneParseError("$", "scene must be a JSON object")
    extra = set(doc) - {"foci", "s", "name"}
    if extra:
        raise SceneParseError("$", f"unknown keys {sorted(extra)}")
    if "foci" not in doc:
        raise SceneParseError("$.foci", "missing")
    if "s" not in doc:
        raise SceneParseError("$.s", "missing")
    foci_doc = doc["foci"]
    if not isinstance(foci_doc, list) or not foci_doc:
        raise SceneParseError("$.foci", "must be a non-empty array")
    foci = []
    for idx, focus in enumerate(foci_doc):
        path = f"$.foci[{idx}]"
        if not isinstance(focus, Mapping):
            raise SceneParseError(path, "focus must be an object with x and y")
        extra = set(focus) - {"x", "y"}
        if extra:
            raise SceneParseError(path, f"unknown keys {sorted(extra)}")
        if "x" not in focus or "y" not in focus:
            raise SceneParseError(path, "focus needs both x and y")
        fx = coeff_from_json(focus["x"], f"{path}.x")
        fy = coeff_from_json(focus["y"], f"{path}.y")
        foci.append((fx, fy))
    s = _parse_rational(doc["s"], "$.s")
    if s < 0:
        raise SceneParseError("$.s", "radius must be nonnegative")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise SceneParseError("$.name", "name must be a string")
    try:
        return Scene(tuple(foci), s)
    except MixedRadicandError as exc:
        raise SceneParseError("$.foci", str(exc)) from exc


def scene_to_json(scene: Scene, name: str | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "foci": [
            {"x": coeff_to_json(fx), "y": coeff_to_json(fy)}
            for fx, fy in scene.foci
        ],
        "s": rat_format(scene.s),
    }
    if name is not None:
        doc["name"] = name
    return doc


def _scene(foci, s) -> Scene:
    return Scene(tuple(foci), Fraction(s))


_SQRT3 = quad_make(0, 1, 3)

PRESETS: dict[str, Scene] = {
    "fig2": _scene([(Fraction(0), Fraction(2)), (Fraction(1), Fraction(0)),
                    (Fraction(2), Fraction(0))], 4),
    "fig3-lemniscate": _scene([(Fraction(-1), Fraction(0)), (Fraction(0), Fraction(0)),
                               (Fraction(1), Fraction(0))], 0),
    "fig4-almost-circles": _scene([(Fraction(-1), Fraction(0)), (Fraction(0), Fraction(0)),
                                   (Fraction(1), Fraction(0))], 1),
    "fig5-dyncol": _scene([(Fraction(-1), Fraction(0)), (Fraction(1), Fraction(0)),
                           (Fraction(0), _SQRT3)], 4),
    "fig6-dyncol": _scene([(Fraction(-4), Fraction(0)), (Fraction(0), Fraction(0)),
                           (Fraction(4), Fraction(0))], 1),
    "van-schooten": _scene([(Fraction(-1), Fraction(0)), (Fraction(1), Fraction(0)),
                            (Fraction(0), _SQRT3)], 0),
}
