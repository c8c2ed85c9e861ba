"""Command line interface.

Exit codes: 0 on success (warnings allowed), 1 when guideline or
validation errors are reported, 2 when the input cannot be read or
parsed at all.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .compiler import CompileOptions, compile_file
from .defaults import dump_defaults
from .palette import (LINE_STYLE_ASSIGN_ORDER, LINE_STYLES, SHAPES,
                      TEXTURE_ASSIGN_ORDER, TEXTURES)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tactilechart",
        description="Compile declarative chart specs into tactile SVGs "
                    "with braille labels and guideline-checked spacing.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", help="compile a spec to a tactile SVG")
    c.add_argument("spec", help="path to the chart spec JSON file")
    c.add_argument("-o", "--output", help="write the SVG here instead of stdout")
    _add_compile_flags(c)
    c.add_argument("--format", choices=("svg", "scene", "resolved"),
                   default="svg",
                   help="svg (default), the scene graph as JSON, or the "
                        "fully resolved spec as JSON")

    l = sub.add_parser("lint", help="report guideline diagnostics for a spec")
    l.add_argument("spec", help="path to the chart spec JSON file")
    l.add_argument("--json", action="store_true",
                   help="emit diagnostics as a JSON array")
    _add_compile_flags(l)

    d = sub.add_parser("dump-defaults",
                       help="print the defaults table with guideline citations")
    d.add_argument("--text", action="store_true",
                   help="plain text instead of JSON")

    p = sub.add_parser("palette",
                       help="list textures, line styles and point symbols")
    p.add_argument("--json", action="store_true", dest="as_json",
                   help="emit as JSON (default is plain text)")
    return parser


def _add_compile_flags(p: argparse.ArgumentParser):
    p.add_argument("--grade", type=int, choices=(1, 2),
                   help="braille grade override")
    p.add_argument("--braille-table",
                   help="builtin table id or a JSON translation table file")
    p.add_argument("--mode", choices=("dots", "font"),
                   help="render braille as embossable dots or as font text")
    p.add_argument("--dpi", type=float, help="output resolution override")


def _options(args) -> CompileOptions:
    return CompileOptions(grade=args.grade, braille_table=args.braille_table,
                          render_mode=args.mode, dpi=args.dpi)


def _print_diagnostics(diags, stream):
    for d in diags:
        print(d.format_text(), file=stream)


def _cmd_compile(args) -> int:
    result = compile_file(args.spec, _options(args))
    _print_diagnostics(result.diagnostics, sys.stderr)
    payload = None
    if args.format == "svg":
        payload = result.svg
    elif args.format == "scene" and result.scene is not None:
        payload = json.dumps(result.scene.to_json(), indent=2) + "\n"
    elif args.format == "resolved" and result.resolved is not None:
        resolved_spec = result.resolved.to_spec()
        payload = json.dumps(resolved_spec.to_json(), indent=2) + "\n"
    if payload is not None:
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(payload)
        else:
            sys.stdout.write(payload)
    return result.exit_code()


def _cmd_lint(args) -> int:
    result = compile_file(args.spec, _options(args))
    if args.json:
        print(json.dumps([d.to_json() for d in result.diagnostics], indent=2))
    else:
        if result.diagnostics:
            _print_diagnostics(result.diagnostics, sys.stdout)
        else:
            print("no diagnostics: the chart passes every tactile guideline "
                  "check")
    return result.exit_code()


def _cmd_dump_defaults(args) -> int:
    rows = dump_defaults()
    if args.text:
        width = max(len(r["path"]) for r in rows)
        for r in rows:
            print(f"{r['path']:<{width}}  {r['value']!r:<18}  {r['citation']}")
    else:
        print(json.dumps(rows, indent=2))
    return 0


def _cmd_palette(args) -> int:
    data = {
        "textures": list(TEXTURES),
        "textureAssignOrder": list(TEXTURE_ASSIGN_ORDER),
        "lineStyles": list(LINE_STYLES),
        "lineStyleAssignOrder": list(LINE_STYLE_ASSIGN_ORDER),
        "shapes": list(SHAPES),
    }
    if args.as_json:
        print(json.dumps(data, indent=2))
    else:
        print("area textures (assignment order): "
              + ", ".join(TEXTURE_ASSIGN_ORDER))
        print("line styles (assignment order): "
              + ", ".join(LINE_STYLE_ASSIGN_ORDER))
        print("point symbols (assignment order): " + ", ".join(SHAPES))
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "compile": _cmd_compile,
        "lint": _cmd_lint,
        "dump-defaults": _cmd_dump_defaults,
        "palette": _cmd_palette,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
