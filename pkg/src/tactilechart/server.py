"""HTTP compile service.

Exposes the compiler to editors and other tools:

    POST /compile   {"spec": <object|string>, "options": {...}}
                    -> {"svg", "diagnostics", "durationMs", "ok"}
    GET  /palette   texture / line style / shape reference with swatches
    GET  /gallery   packaged example specs
    GET  /gallery/{name}

When a built frontend directory exists it is served at the root, so
`tactilechart-serve` gives a complete local editor.
"""

from __future__ import annotations

import argparse
import json
import os
from importlib import resources
from pathlib import Path

from fastapi import Body, FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import __version__
from .compiler import CompileOptions, compile_text
from .palette import LINE_STYLE_ASSIGN_ORDER, SHAPES, TEXTURE_ASSIGN_ORDER
from .svg import line_style_swatch_svg, shape_swatch_svg, texture_swatch_svg


def _gallery_specs() -> dict:
    out = {}
    root = resources.files("tactilechart") / "gallery"
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            out[entry.name[:-5]] = json.loads(entry.read_text(encoding="utf-8"))
    return out


def _default_frontend_dir() -> str | None:
    env = os.environ.get("TACTILECHART_FRONTEND_DIR")
    if env:
        return env
    repo_guess = Path(__file__).resolve().parents[2].parent / "frontend" / "dist"
    if repo_guess.is_dir():
        return str(repo_guess)
    return None


def create_app(frontend_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="tactilechart compile service", version=__version__)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"])

    @app.post("/compile")
    def compile_endpoint(payload: dict = Body(...)):
        spec = payload.get("spec")
        if isinstance(spec, (dict, list)):
            text = json.dumps(spec)
        elif isinstance(spec, str):
            text = spec
        else:
            return JSONResponse(status_code=422, content={
                "svg": None, "durationMs": 0.0, "ok": False,
                "diagnostics": [{
                    "severity": "error", "ruleId": "request/spec",
                    "message": "body must carry a 'spec' object or JSON string",
                    "citation": "", "nodePath": "spec"}]})
        raw_opts = payload.get("options") or {}
        options = CompileOptions(
            grade=raw_opts.get("grade"),
            braille_table=raw_opts.get("brailleTable"),
            render_mode=raw_opts.get("mode"),
            dpi=raw_opts.get("dpi"))
        result = compile_text(text, options)
        return {
            "svg": result.svg,
            "diagnostics": [d.to_json() for d in result.diagnostics],
            "durationMs": round(result.duration_ms, 3),
            "ok": result.ok,
        }

    @app.get("/palette")
    def palette_endpoint():
        return {
            "textures": [{"id": t, "swatch": texture_swatch_svg(t)}
                         for t in TEXTURE_ASSIGN_ORDER],
            "lineStyles": [{"id": s, "swatch": line_style_swatch_svg(s)}
                           for s in LINE_STYLE_ASSIGN_ORDER],
            "shapes": [{"id": s, "swatch": shape_swatch_svg(s)}
                       for s in SHAPES],
        }

    @app.get("/gallery")
    def gallery_index():
        specs = _gallery_specs()
        out = []
        for name, spec in specs.items():
            title = spec.get("title")
            if isinstance(title, list):
                title = " ".join(title)
            elif isinstance(title, dict):
                text = title.get("text")
                title = " ".join(text) if isinstance(text, list) else text
            out.append({"name": name, "title": title or name})
        return out

    @app.get("/gallery/{name}")
    def gallery_spec(name: str):
        specs = _gallery_specs()
        if name not in specs:
            return JSONResponse(status_code=404, content={
                "error": f"unknown gallery spec {name!r}",
                "available": sorted(specs)})
        return specs[name]

    if frontend_dir is None:
        frontend_dir = _default_frontend_dir()
    if frontend_dir and Path(frontend_dir).is_dir():
        app.mount("/", StaticFiles(directory=frontend_dir, html=True),
                  name="frontend")
    return app


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="tactilechart-serve",
        description="Serve the tactile chart compiler over HTTP.")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8756)
    parser.add_argument("--frontend",
                        help="directory with a built editor frontend to serve "
                             "at the root")
    args = parser.parse_args(argv)
    import uvicorn
    uvicorn.run(create_app(args.frontend), host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
