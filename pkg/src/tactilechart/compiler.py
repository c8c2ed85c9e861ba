"""End-to-end compilation: spec text in, tactile SVG plus diagnostics out.

The pipeline is: parse, validate, load data, resolve defaults, lay out,
lint, render.  Guideline lint errors still produce an SVG (so the author
can inspect the problem) but are reported as errors; structural problems
earlier in the pipeline stop before rendering.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import braille
from .datatable import DataError, DataTable, load_data
from .defaults import resolve_defaults
from .diagnostics import Diagnostic, dedupe_by_rule, has_errors
from .layout import SpacingRules, build_scene
from .linter import lint_scene
from .model import SpecParseError, SpecSchemaError, parse_spec, validate_spec
from .svg import render_svg

#: rule ids whose presence means the input could not even be read;
#: the command line maps these to its I/O exit code.
IO_RULES = ("io/read", "spec/parse", "data/load")


@dataclass(frozen=True)
class CompileOptions:
    grade: int | None = None            # braille grade override (1 or 2)
    braille_table: str | None = None    # builtin table id or JSON file path
    render_mode: str | None = None      # "dots" | "font" override
    dpi: float | None = None
    base_dir: str | None = None         # base for relative data urls


@dataclass
class CompileResult:
    svg: str | None
    diagnostics: list
    scene: object = None
    resolved: object = None
    spec: object = None
    duration_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return self.svg is not None and not has_errors(self.diagnostics)

    def exit_code(self) -> int:
        """0 success (warnings allowed), 1 errors, 2 unreadable input."""
        if any(d.rule_id in IO_RULES for d in self.diagnostics):
            return 2
        if has_errors(self.diagnostics):
            return 1
        return 0


def _finish(diags, start, **kw) -> CompileResult:
    result = CompileResult(diagnostics=dedupe_by_rule(diags), **kw)
    result.duration_ms = (time.perf_counter() - start) * 1000.0
    return result


def compile_text(spec_text: str, options: CompileOptions | None = None) -> CompileResult:
    """Compile a JSON chart spec string to a tactile SVG."""
    options = options or CompileOptions()
    start = time.perf_counter()
    diags = []

    try:
        spec = parse_spec(spec_text)
    except SpecParseError as exc:
        diags.append(Diagnostic(
            severity="error", rule_id="spec/parse",
            message=str(exc),
            node_path=f"line {exc.line}, column {exc.column}"))
        return _finish(diags, start, svg=None)
    except SpecSchemaError as exc:
        diags.append(Diagnostic(
            severity="error", rule_id="spec/schema",
            message=str(exc), node_path=exc.path))
        return _finish(diags, start, svg=None)

    diags.extend(spec.warnings)
    diags.extend(validate_spec(spec))
    if has_errors(diags):
        return _finish(diags, start, svg=None, spec=spec)

    try:
        table = load_data(spec.data, base_dir=options.base_dir)
    except DataError as exc:
        diags.append(Diagnostic(
            severity="error", rule_id="data/load", message=str(exc),
            node_path="data"))
        return _finish(diags, start, svg=None, spec=spec)

    diags.extend(validate_spec(spec, table))
    if has_errors(diags):
        return _finish(diags, start, svg=None, spec=spec)

    resolved, resolve_diags = resolve_defaults(spec, table)
    diags.extend(resolve_diags)
    if has_errors(diags):
        return _finish(diags, start, svg=None, spec=spec, resolved=resolved)

    try:
        braille_table = _pick_table(resolved.config.braille_translation, options)
    except (ValueError, OSError) as exc:
        diags.append(Diagnostic(
            severity="error", rule_id="braille/unknown-table",
            message=str(exc), node_path="config.brailleTranslation"))
        return _finish(diags, start, svg=None, spec=spec, resolved=resolved)

    grade = options.grade if options.grade is not None \
        else braille.table_grade(braille_table)
    dpi = options.dpi if options.dpi is not None else resolved.config.dpi
    rules = SpacingRules.for_dpi(dpi)
    if options.render_mode is not None:
        resolved = _with_render_mode(resolved, options.render_mode)

    try:
        scene, layout_diags = build_scene(resolved, table, rules,
                                          braille_table, grade)
    except DataError as exc:
        diags.append(Diagnostic(
            severity="error", rule_id="data/invalid", message=str(exc),
            node_path="data"))
        return _finish(diags, start, svg=None, spec=spec, resolved=resolved)
    diags.extend(layout_diags)
    if scene is None or has_errors(layout_diags):
        return _finish(diags, start, svg=None, spec=spec, resolved=resolved,
                       scene=scene)

    diags.extend(lint_scene(scene))
    svg = render_svg(scene)
    return _finish(diags, start, svg=svg, spec=spec, resolved=resolved,
                   scene=scene)


def compile_file(path: str, options: CompileOptions | None = None) -> CompileResult:
    """Compile a spec file; missing or unreadable files become io/read."""
    import os
    options = options or CompileOptions()
    start = time.perf_counter()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        d = Diagnostic(severity="error", rule_id="io/read",
                       message=f"cannot read {path}: {exc.strerror or exc}",
                       node_path=path)
        return _finish([d], start, svg=None)
    if options.base_dir is None:
        options = CompileOptions(
            grade=options.grade, braille_table=options.braille_table,
            render_mode=options.render_mode, dpi=options.dpi,
            base_dir=os.path.dirname(os.path.abspath(path)))
    return compile_text(text, options)


def _pick_table(config_table_id: str, options: CompileOptions):
    choice = options.braille_table or config_table_id
    if choice.endswith(".json"):
        return braille.load_table(choice)
    return braille.builtin_table(choice)


def _with_render_mode(resolved, mode):
    from dataclasses import replace
    return replace(resolved, config=replace(resolved.config, render_mode=mode))
