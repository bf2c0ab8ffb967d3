"""Stateless HTTP/JSON service for equation derivation and rendering.

Every request carries the full scene, handlers are pure functions of the
request body, and identical scene + parameters produce identical bytes,
so responses are safe to cache and the service needs no session state.

Endpoints:
    GET  /api/health            -> "ok"
    GET  /api/presets           -> named preset scenes
    POST /api/equation          -> canonical closure terms, degree, text
    POST /api/raster            -> PPM bytes (classify / hue) or contour JSON
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Literal, Union

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse, Response
from pydantic import BaseModel, ConfigDict, Field

from .locus import DegenerateSceneError, Scene, closure_poly
from .numeric import rat_format
from .raster import Window, classify_raster, eval_grid, hue_heatmap, marching_squares
from .scenes import PRESETS, SceneParseError, parse_scene, scene_to_json

MAX_RASTER_SIDE = 4096


class SurdValue(BaseModel):
    model_config = ConfigDict(extra="forbid")
    a: str | int
    b: str | int
    d: int


Coordinate = Union[SurdValue, str, int, float]


class FocusModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    x: Coordinate
    y: Coordinate


class SceneModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    foci: list[FocusModel] = Field(min_length=1)
    s: str | int | float
    name: str | None = None

    def to_scene(self) -> Scene:
        return parse_scene(self.model_dump(mode="python", exclude_none=True))


class WindowModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def to_window(self) -> Window:
        return Window(self.xmin, self.xmax, self.ymin, self.ymax)


class EquationRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    scene: SceneModel


class TermModel(BaseModel):
    coeff: str
    x: int
    y: int


class EquationResponse(BaseModel):
    terms: list[TermModel]
    degree: int
    text: str


class RasterRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    scene: SceneModel
    window: WindowModel
    width: int = Field(ge=2)
    height: int = Field(ge=2)
    mode: Literal["classify", "hue", "contour"]
    tol: float | None = Field(default=None, gt=0)


app = FastAPI(title="nellipse", version="0.1.0")


@app.exception_handler(RequestValidationError)
async def _validation_handler(request: Request, exc: RequestValidationError):
    errors = exc.errors()
    if errors:
        first = errors[0]
        path = ".".join(str(p) for p in first.get("loc", ()))
        message = f"{path}: {first.get('msg', 'invalid')}"
    else:
        message = "invalid request body"
    return JSONResponse(status_code=400, content={"detail": message})


@app.exception_handler(SceneParseError)
async def _scene_error_handler(request: Request, exc: SceneParseError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(DegenerateSceneError)
async def _degenerate_handler(request: Request, exc: DegenerateSceneError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.get("/api/health")
def health() -> PlainTextResponse:
    return PlainTextResponse("ok")


@app.get("/api/presets")
def presets() -> list[dict]:
    return [scene_to_json(scene, name=name) for name, scene in PRESETS.items()]


def equation_payload(scene: Scene) -> EquationResponse:
    result = closure_poly(scene)
    poly = result.closure.poly
    order = sorted(poly.terms, key=lambda e: (sum(e), e), reverse=True)
    xi = poly.vars.index("x") if "x" in poly.vars else None
    yi = poly.vars.index("y") if "y" in poly.vars else None
    terms = [
        TermModel(
            coeff=rat_format(Fraction(poly.terms[e])),
            x=e[xi] if xi is not None else 0,
            y=e[yi] if yi is not None else 0,
        )
        for e in order
    ]
    return EquationResponse(
        terms=terms, degree=result.total_degree, text=result.closure.text
    )


@app.post("/api/equation", response_model=EquationResponse)
def equation(body: EquationRequest) -> EquationResponse:
    return equation_payload(body.scene.to_scene())


def raster_payload(
    scene: Scene,
    window: Window,
    width: int,
    height: int,
    mode: str,
    tol: float | None,
) -> bytes | list[dict]:
    if mode == "classify":
        image = classify_raster(scene, window, width, height, tol=tol or 1.5)
        return image.to_ppm()
    if mode == "hue":
        return hue_heatmap(scene, window, width, height).to_ppm()
    closure = closure_poly(scene).closure.poly
    grid = eval_grid(closure, window, width, height)
    contours = marching_squares(grid, window)
    return contours.to_json()


@app.post("/api/raster")
def raster(body: RasterRequest) -> Response:
    if body.width * body.height > MAX_RASTER_SIDE * MAX_RASTER_SIDE:
        return JSONResponse(
            status_code=413,
            content={"detail": f"raster larger than {MAX_RASTER_SIDE}^2 pixels"},
        )
    payload = raster_payload(
        body.scene.to_scene(),
        body.window.to_window(),
        body.width,
        body.height,
        body.mode,
        body.tol,
    )
    if isinstance(payload, bytes):
        return Response(content=payload, media_type="application/octet-stream")
    return JSONResponse(content={"polylines": payload})


def _mount_frontend() -> None:
    dist = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    index = dist / "index.html"
    if dist.is_dir() and index.is_file():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(dist), html=True), name="explorer")


_mount_frontend()
