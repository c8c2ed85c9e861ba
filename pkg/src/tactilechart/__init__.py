"""tactilechart: compile declarative chart specs into tactile SVGs.

The compiler turns a small JSON grammar (mark + encoding channels) into
an SVG ready for swell paper or embosser output: braille labels, tactile
textures and line styles, guideline-driven spacing, and a linter that
reports any remaining guideline violations with citations.
"""

__version__ = "0.1.0"

from .braille import (BrailleMetrics, BrailleRun, TranslationTable,
                      UnsupportedCharacterError, builtin_table, encode_run,
                      ink_extent, load_table, measure_run, translate_text)
from .compiler import CompileOptions, CompileResult, compile_file, compile_text
from .datatable import (DataError, DataTable, aggregate_rows, band_positions,
                        infer_domain, load_data, nice_ticks)
from .defaults import (ResolvedSpec, assign_line_styles, assign_shapes,
                       assign_textures, default_value, dump_defaults,
                       resolve_defaults)
from .diagnostics import Diagnostic, dedupe_by_rule, has_errors
from .layout import (SceneGraph, SceneNode, SpacingRules, build_scene,
                     place_legend, stagger_axis_labels)
from .linter import lint_scene
from .model import (ChartSpec, SpecError, SpecParseError, SpecSchemaError,
                    parse_spec, validate_spec)
from .palette import (LINE_STYLES, SHAPES, TEXTURES, line_dash_array,
                      texture_pattern)
from .svg import render_svg

__all__ = [
    "__version__",
    # braille
    "BrailleMetrics", "BrailleRun", "TranslationTable",
    "UnsupportedCharacterError", "builtin_table", "encode_run", "ink_extent",
    "load_table", "measure_run", "translate_text",
    # compiler
    "CompileOptions", "CompileResult", "compile_file", "compile_text",
    # data
    "DataError", "DataTable", "aggregate_rows", "band_positions",
    "infer_domain", "load_data", "nice_ticks",
    # defaults
    "ResolvedSpec", "assign_line_styles", "assign_shapes", "assign_textures",
    "default_value", "dump_defaults", "resolve_defaults",
    # diagnostics
    "Diagnostic", "dedupe_by_rule", "has_errors",
    # layout
    "SceneGraph", "SceneNode", "SpacingRules", "build_scene", "place_legend",
    "stagger_axis_labels",
    # lint
    "lint_scene",
    # model
    "ChartSpec", "SpecError", "SpecParseError", "SpecSchemaError",
    "parse_spec", "validate_spec",
    # palette
    "LINE_STYLES", "SHAPES", "TEXTURES", "line_dash_array", "texture_pattern",
    # svg
    "render_svg",
]
