"""Command-line front end; a thin client of the HTTP service.

Equation and raster subcommands send real requests through the service
app (in-process over ASGI by default, or to a remote instance given
--server), so CLI output bytes are the service's bytes by construction.
The analysis subcommands (analyze-circle, van-schooten, verify-paper)
call the core library directly; serve runs the service under uvicorn.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from fractions import Fraction
from typing import Any

import httpx

from . import __version__
from .analysis import fit_axis_circle, max_deviation, van_schooten_check
from .locus import SignVector
from .numeric import rat_format
from .raster import ContourSet, Polyline, Window, render_polylines, write_ppm
from .scenes import PRESETS, SceneParseError, parse_scene, scene_to_json


class ServiceClient:
    """Minimal request helper hitting either the in-process app or a URL."""

    def __init__(self, server: str | None = None):
        self.server = server

    def _request(self, method: str, path: str, body: dict | None = None) -> httpx.Response:
        if self.server:
            with httpx.Client(base_url=self.server, timeout=120.0) as client:
                return client.request(method, path, json=body)

        async def _run() -> httpx.Response:
            from .service import app

            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://nellipse", timeout=None
            ) as client:
                return await client.request(method, path, json=body)

        return asyncio.run(_run())

    def get(self, path: str) -> httpx.Response:
        return self._request("GET", path)

    def post(self, path: str, body: dict) -> httpx.Response:
        return self._request("POST", path, body)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _load_scene_doc(args: argparse.Namespace) -> dict[str, Any]:
    if args.preset:
        if args.preset not in PRESETS:
            raise SceneParseError("$.preset", f"unknown preset {args.preset!r}; "
                                  f"choose from {', '.join(PRESETS)}")
        return scene_to_json(PRESETS[args.preset])
    with open(args.scene, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    parse_scene(doc)  # validate early with a field-path error
    doc.pop("name", None)
    return doc


def _parse_window(text: str) -> dict[str, float]:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError("window must be xmin,xmax,ymin,ymax")
    xmin, xmax, ymin, ymax = (float(p) for p in parts)
    return {"xmin": xmin, "xmax": xmax, "ymin": ymin, "ymax": ymax}


def _parse_size(text: str) -> tuple[int, int]:
    w, _, h = text.partition("x")
    return int(w), int(h)


def _exact_and_decimal(value: Fraction) -> str:
    return f"{rat_format(value)} ({float(value):.6f})"


def _raster_request(client: ServiceClient, args: argparse.Namespace, mode: str) -> httpx.Response:
    body = {
        "scene": _load_scene_doc(args),
        "window": _parse_window(args.window),
        "width": _parse_size(args.size)[0],
        "height": _parse_size(args.size)[1],
        "mode": mode,
    }
    if getattr(args, "tol", None) is not None:
        body["tol"] = args.tol
    response = client.post("/api/raster", body)
    if response.status_code != 200:
        raise RuntimeError(f"service returned {response.status_code}: {response.text}")
    return response


def cmd_equation(args: argparse.Namespace) -> int:
    client = ServiceClient(args.server)
    response = client.post("/api/equation", {"scene": _load_scene_doc(args)})
    if response.status_code != 200:
        return _fail(f"service returned {response.status_code}: {response.text}")
    payload = response.json()
    print(payload["text"])
    print(f"degree {payload['degree']}")
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    client = ServiceClient(args.server)
    response = _raster_request(client, args, "contour")
    lines = response.json()["polylines"]
    contours = ContourSet(tuple(
        Polyline(tuple((px, py) for px, py in line["points"]), line["closed"])
        for line in lines
    ))
    w, h = _parse_size(args.size)
    window = _parse_window(args.window)
    image = render_polylines(
        contours, Window(**window), w, h
    )
    write_ppm(image, args.out)
    print(f"wrote {args.out} ({w}x{h}, {len(contours.polylines)} polylines)")
    return 0


def _cmd_image(args: argparse.Namespace, mode: str) -> int:
    client = ServiceClient(args.server)
    response = _raster_request(client, args, mode)
    with open(args.out, "wb") as fh:
        fh.write(response.content)
    w, h = _parse_size(args.size)
    print(f"wrote {args.out} ({w}x{h} {mode})")
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    return _cmd_image(args, "classify")


def cmd_hue(args: argparse.Namespace) -> int:
    return _cmd_image(args, "hue")


def _sigma_from_args(args: argparse.Namespace, scene) -> SignVector:
    if args.sigma:
        if set(args.sigma) - {"+", "-"} or len(args.sigma) != scene.n:
            raise ValueError(f"--sigma needs {scene.n} characters of + or -")
        return tuple(1 if ch == "+" else -1 for ch in args.sigma)
    # side heuristic: the branch opposite the extreme focus gets the minus
    xs = [float(fx) for fx, _ in scene.foci]
    idx = xs.index(min(xs)) if args.side == "right" else xs.index(max(xs))
    return tuple(-1 if i == idx else 1 for i in range(scene.n))


def cmd_analyze_circle(args: argparse.Namespace) -> int:
    scene = parse_scene(_load_scene_doc(args))
    sigma = _sigma_from_args(args, scene)
    circle = fit_axis_circle(scene, sigma)
    report = max_deviation(scene, circle, {sigma}, samples=args.samples)
    sign_text = "".join("+" if s > 0 else "-" for s in sigma)
    print(f"branch sigma {sign_text}")
    print(
        f"center ({rat_format(circle.center[0])}, {rat_format(circle.center[1])})"
        f" ({float(circle.center[0]):.6f}, {float(circle.center[1]):.6f})"
    )
    radius = circle.radius
    print(f"radius^2 {rat_format(circle.radius_sq)} (radius {radius:.6f})")
    print(
        f"max deviation {report.max_deviation:.6f} at theta {report.theta:.6f}"
        f" point ({report.point[0]:.6f}, {report.point[1]:.6f})"
        f" over {report.samples} samples"
    )
    return 0


def cmd_van_schooten(args: argparse.Namespace) -> int:
    report = van_schooten_check(args.samples)
    print(f"samples {report.samples}")
    print(f"max min-residual {report.max_min_residual:.3e}")
    print(f"covered everywhere: {report.covered_everywhere}")
    print(f"exactly one relation away from vertices: {report.exactly_one_away_from_vertices}")
    for arc in report.arcs:
        print(
            f"arc {arc.relation}: theta {arc.theta_start:.6f} .. {arc.theta_end:.6f}"
            f" ({arc.sample_count} samples)"
        )
    ok = (
        report.covered_everywhere
        and report.exactly_one_away_from_vertices
        and len(report.arcs) == 3
    )
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_verify_paper(args: argparse.Namespace) -> int:
    from .goldens import run_verification

    results = run_verification(samples=args.samples)
    failed = 0
    for row in results:
        status = "PASS" if row.passed else "FAIL"
        print(f"{status} {row.name}: {row.detail}")
        failed += 0 if row.passed else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def _add_scene_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--scene", help="scene JSON file")
    group.add_argument("--preset", help=f"preset name ({', '.join(PRESETS)})")


def _add_raster_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", required=True, help="output PPM file")
    parser.add_argument("--window", default="-4,4,-4,4", help="xmin,xmax,ymin,ymax")
    parser.add_argument("--size", default="512x512", help="WxH pixels")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nellipse",
        description="derive, render, and analyze signed distance-sum loci",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--server", help="remote service URL (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("equation", help="print the closure polynomial and degree")
    _add_scene_args(p)
    p.set_defaults(func=cmd_equation)

    p = sub.add_parser("render", help="write a PPM of the locus curve")
    _add_scene_args(p)
    _add_raster_args(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("classify", help="write a sign-classified PPM")
    _add_scene_args(p)
    _add_raster_args(p)
    p.add_argument("--tol", type=float, default=None,
                   help="on-locus band in pixel diagonals (default 1.5)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("hue", help="write a distance-sum hue heatmap PPM")
    _add_scene_args(p)
    _add_raster_args(p)
    p.set_defaults(func=cmd_hue)

    p = sub.add_parser("analyze-circle", help="fit a circle to a branch and measure deviation")
    _add_scene_args(p)
    p.add_argument("--side", choices=["left", "right"], default="right")
    p.add_argument("--sigma", help="explicit sign vector such as -++")
    p.add_argument("--samples", type=int, default=100_000)
    p.set_defaults(func=cmd_analyze_circle)

    p = sub.add_parser("van-schooten", help="check the circumcircle arc relations")
    p.add_argument("--samples", type=int, default=10_000)
    p.set_defaults(func=cmd_van_schooten)

    p = sub.add_parser("verify-paper", help="run all golden self-checks")
    p.add_argument("--samples", type=int, default=100_000)
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SceneParseError, ValueError, RuntimeError, OSError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
