"""Smart defaults: the tactile defaults table and spec resolution.

Every default carries the guideline it implements, so diagnostics and
dump output can say why a value is what it is.  User-specified values
always win; the resolver only fills gaps.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .datatable import DataTable, infer_domain, load_data
from .diagnostics import Diagnostic
from .model import (AxisSpec, ChartSpec, ConfigSpec, EncodingDef, LegendSpec,
                    MarkSpec, ScaleSpec, TitleSpec)
from .palette import (LINE_STYLE_ASSIGN_ORDER, LINE_STYLES, SHAPES,
                      TEXTURE_ASSIGN_ORDER, TEXTURES)

_CIT_SPACING = ("BANA Guidelines 5.3: leave at least 1/8 inch (3.2 mm) of blank "
                "space between any two elements of a graphic")
_CIT_GRID = ("BANA Guidelines 6.6.4.4: grid lines must be the least distinct "
             "lines on the graph")
_CIT_AXIS = ("BANA Guidelines 6.6.2.2: axis lines are stronger than grid lines "
             "and weaker than plotted lines")
_CIT_TICKS = ("BANA Guidelines 6.6.2: tick marks must be easy to trace from "
              "the axis to their labels")
_CIT_TITLE = ("BANA Guidelines 6.2: the title is the first element read, "
              "centered at the top of the page")
_CIT_LEGEND = ("BANA Guidelines 6.4: keys and legends precede the graphic so "
               "readers meet them before the data")
_CIT_BRAILLE_SIZE = ("braille cells have a fixed physical size and may never "
                     "be scaled, rotated or emboldened")
_CIT_MARGIN = ("BANA Guidelines 5.2: generous blank margins let readers anchor "
               "their hands without touching content")
_CIT_FONT = ("Swell Braille prints reliably on both swell-form paper and "
             "embossers at standard dot spacing")
_CIT_UEB = ("contracted Unified English Braille is the literary standard most "
            "braille readers expect")
_CIT_BAR = ("BANA Guidelines 6.9.1: bars are 3/8 to 1 inch wide, with clearly "
            "wider gaps than histogram bars")
_CIT_MARKS_STRONG = ("BANA Guidelines 6.6.2.2: plotted lines are the most "
                     "prominent lines on the graph")

# (path, value, citation) in stable dump order.
DEFAULTS = (
    ("config.font", "Swell Braille", _CIT_FONT),
    ("config.brailleTranslation", "en-ueb-g2.ctb", _CIT_UEB),
    ("config.renderMode", "dots", _CIT_BRAILLE_SIZE),
    ("config.dpi", 96, "CSS reference pixel density; all sizes below assume it"),
    ("config.padding.top", 100, _CIT_MARGIN),
    ("config.padding.bottom", 100, _CIT_MARGIN),
    ("config.padding.left", 200, _CIT_MARGIN),
    ("config.padding.right", 200, _CIT_MARGIN),
    ("title.fontSize", 24, _CIT_BRAILLE_SIZE),
    ("title.fontWeight", "normal", _CIT_BRAILLE_SIZE),
    ("title.align", "center", _CIT_TITLE),
    ("title.offset", 50, _CIT_SPACING),
    ("axis.titleFontSize", 24, _CIT_BRAILLE_SIZE),
    ("axis.labelFontSize", 24, _CIT_BRAILLE_SIZE),
    ("axis.titleFontWeight", "normal", _CIT_BRAILLE_SIZE),
    ("axis.labelFontWeight", "normal", _CIT_BRAILLE_SIZE),
    ("axis.gridWidth", 1, _CIT_GRID),
    ("axis.gridColor", "black", "high contrast for readers combining touch and residual vision"),
    ("axis.domainWidth", 2.5, _CIT_AXIS),
    ("axis.domainColor", "black", "high contrast for readers combining touch and residual vision"),
    ("axis.tickSize", 26.5, _CIT_TICKS),
    ("axis.tickWidth", 2.5, _CIT_AXIS),
    ("axis.tickColor", "black", "high contrast for readers combining touch and residual vision"),
    ("axis.staggerLabels", "auto", _CIT_SPACING),
    ("axis.labelAngle", 0, _CIT_BRAILLE_SIZE),
    ("axis.titleAngle", 0, _CIT_BRAILLE_SIZE),
    ("axis.titleAlign", "left",
     "axis titles align with the first label of their axis so they are found in reading order"),
    ("axis.titlePadding", 20, _CIT_SPACING),
    ("axis.labelPadding", 20, _CIT_SPACING),
    ("axis.titleY", -10, _CIT_SPACING),
    ("legend.direction", "vertical",
     "vertically stacked legend entries are scanned top to bottom like a list"),
    ("legend.orient", "top-left", _CIT_LEGEND),
    ("legend.titlePadding", 20, _CIT_SPACING),
    ("legend.offset", 20, _CIT_SPACING),
    ("legend.columnPadding", 20, _CIT_SPACING),
    ("legend.rowPadding", 20, _CIT_SPACING),
    ("legend.symbolSize", 3000, "swatches must be large enough to identify a texture by touch"),
    ("mark.lineStrokeWidth", 4, _CIT_MARKS_STRONG),
    ("mark.outlineWidth", 2,
     "bar, point and arc outlines stay below the axis weight; their texture carries the emphasis"),
    ("mark.barWidth", 48, _CIT_BAR),
    ("mark.barGap", 24, _CIT_BAR),
    ("mark.pointSize", 576, "scatter symbols need roughly 1/4 inch to be told apart by shape"),
    ("mark.pieRadius", 150, "segments must be wide enough at mid-radius to carry a texture"),
    ("grid.style", "solidGrid", _CIT_GRID),
    ("palette.textureOrder", list(TEXTURE_ASSIGN_ORDER),
     "assignment order keeps the strongest contrast between neighbouring series"),
    ("palette.lineStyleOrder", list(LINE_STYLE_ASSIGN_ORDER),
     "solid first: an unbroken line is the easiest to follow"),
    ("palette.shapeOrder", list(SHAPES),
     "circle, square and triangle are the most distinct simple outlines"),
)

_DEFAULT_MAP = {path: value for path, value, _ in DEFAULTS}


def default_value(path):
    return _DEFAULT_MAP[path]


def dump_defaults() -> list:
    """Defaults table as JSON-ready records, stable order."""
    return [{"path": p, "value": v, "citation": c} for p, v, c in DEFAULTS]


@dataclass(frozen=True)
class ResolvedAxis:
    channel: str
    field: str
    type: str
    kind: str                    # "linear" | "band"
    tick_count: int | None
    stagger_labels: object       # True | False | "auto"
    grid: bool
    grid_style: str              # "solidGrid" | "dottedGrid"
    foreground_grid: bool
    title: str | None
    title_align: str
    title_padding: float
    label_padding: float
    tick_size: float
    tick_width: float
    grid_width: float
    domain_width: float
    label_angle: float
    title_angle: float
    title_y: float
    domain: tuple | None         # explicit scale domain or None
    sort: tuple | None
    aggregate: str | None


@dataclass(frozen=True)
class ResolvedLegend:
    channel: str
    title: str | None
    direction: str
    orient: str
    title_padding: float
    offset: float
    column_padding: float
    row_padding: float
    symbol_size: float


@dataclass(frozen=True)
class ResolvedConfig:
    font: str
    braille_translation: str
    render_mode: str
    dpi: float
    padding: dict
    title_font_size: float
    label_font_size: float
    title_font_weight: str
    title_align: str
    title_offset: float


@dataclass(frozen=True)
class ResolvedMark:
    type: str
    grouping: str | None         # bar only
    bar_width: float
    bar_gap: float
    line_stroke_width: float
    outline_width: float
    point_size: float
    pie_radius: float


@dataclass
class ResolvedSpec:
    mark: ResolvedMark
    encoding: dict               # channel -> EncodingDef (as parsed)
    axes: dict                   # "x"/"y" -> ResolvedAxis
    legend: ResolvedLegend | None
    config: ResolvedConfig
    title: TitleSpec | None
    width: float | None
    height: float | None
    texture_mapping: dict | None
    line_style_mapping: dict | None
    shape_mapping: dict | None
    data: object = None          # original DataSpec

    def to_spec(self) -> ChartSpec:
        """Rebuild a fully explicit spec; resolving it again is a no-op."""
        encoding = {}
        for channel, enc in self.encoding.items():
            axis = None
            if channel in self.axes:
                a = self.axes[channel]
                style = [a.grid_style] if a.grid else []
                if a.foreground_grid:
                    style.append("foregroundGrid")
                axis = AxisSpec(
                    tick_count=a.tick_count, stagger_labels=a.stagger_labels,
                    style=tuple(style), grid=a.grid, title=a.title,
                    label_padding=a.label_padding, title_padding=a.title_padding,
                    tick_size=a.tick_size, tick_width=a.tick_width,
                    grid_width=a.grid_width, domain_width=a.domain_width,
                    label_angle=a.label_angle, title_angle=a.title_angle)
            scale = enc.scale
            mapping = None
            if channel == "texture":
                mapping = self.texture_mapping
            elif channel == "strokeDash":
                mapping = self.line_style_mapping
            elif channel == "shape":
                mapping = self.shape_mapping
            if mapping is not None:
                scale = ScaleSpec(domain=tuple(mapping.keys()),
                                  range=tuple(mapping.values()))
            legend = None
            if self.legend is not None and self.legend.channel == channel:
                lg = self.legend
                legend = LegendSpec(title=lg.title, direction=lg.direction,
                                    orient=lg.orient, symbol_size=lg.symbol_size)
            encoding[channel] = replace(enc, scale=scale, axis=axis, legend=legend)
        cfg = self.config
        mark = MarkSpec(type=self.mark.type, grouping=self.mark.grouping,
                        width=self.mark.bar_width,
                        stroke_width=self.mark.line_stroke_width)
        return ChartSpec(
            mark=mark, data=self.data, encoding=encoding, title=self.title,
            config=ConfigSpec(font=cfg.font,
                              braille_translation=cfg.braille_translation,
                              render_mode=cfg.render_mode, dpi=cfg.dpi,
                              padding=dict(cfg.padding)),
            width=self.width, height=self.height)


def assign_textures(domain, user_range=None):
    """Map category values to textures.

    A single-valued domain gets solidGrayFill.  More than five values draw
    a warning; a short or unknown user range is an error (the default
    assignment is still returned so rendering can proceed for preview).
    """
    domain = list(domain)
    diags = []
    if user_range is not None:
        user_range = list(user_range)
        bad = [t for t in user_range if t not in TEXTURES]
        if bad:
            diags.append(Diagnostic(
                severity="error", rule_id="spec/unknown-texture",
                message=f"unknown texture name(s) {bad}; available textures: "
                        f"{', '.join(TEXTURES)}",
                node_path="encoding.texture.scale.range"))
            user_range = None
        elif len(user_range) < len(domain):
            diags.append(Diagnostic(
                severity="error", rule_id="spec/texture-range-short",
                message=f"texture range has {len(user_range)} entries for "
                        f"{len(domain)} domain values",
                node_path="encoding.texture.scale.range"))
            user_range = None
    if len(domain) > 5:
        diags.append(Diagnostic(
            severity="warning", rule_id="R4",
            message=f"{len(domain)} textures requested; more than 5 are hard to "
                    "tell apart by touch; consider alternate encodings or "
                    "splitting into multiple charts",
            citation="BANA Guidelines 6.5: limit distinct area textures to five",
            node_path="encoding.texture"))
    if user_range is not None:
        mapping = {v: user_range[i] for i, v in enumerate(domain)}
    elif len(domain) == 1:
        mapping = {domain[0]: "solidGrayFill"}
    else:
        order = TEXTURE_ASSIGN_ORDER
        mapping = {v: order[i % len(order)] for i, v in enumerate(domain)}
    return mapping, diags


def assign_line_styles(domain, user_range=None):
    """Map series values to line styles; solid first, four styles at most."""
    domain = list(domain)
    diags = []
    if user_range is not None:
        user_range = list(user_range)
        bad = [s for s in user_range
               if isinstance(s, str) and s not in LINE_STYLES]
        if bad:
            diags.append(Diagnostic(
                severity="error", rule_id="spec/unknown-line-style",
                message=f"unknown line style(s) {bad}; available styles: "
                        f"{', '.join(LINE_STYLES)}",
                node_path="encoding.strokeDash.scale.range"))
            user_range = None
        elif len(user_range) < len(domain):
            diags.append(Diagnostic(
                severity="error", rule_id="spec/line-style-range-short",
                message=f"line style range has {len(user_range)} entries for "
                        f"{len(domain)} domain values",
                node_path="encoding.strokeDash.scale.range"))
            user_range = None
    if len(domain) > 4:
        diags.append(Diagnostic(
            severity="warning", rule_id="R4",
            message=f"{len(domain)} line styles requested; more than 4 are hard "
                    "to tell apart by touch; consider splitting into multiple charts",
            citation="BANA Guidelines 6.6.1: use at most four distinct line styles",
            node_path="encoding.strokeDash"))
    if user_range is not None:
        mapping = {v: user_range[i] for i, v in enumerate(domain)}
    else:
        order = LINE_STYLE_ASSIGN_ORDER
        mapping = {v: order[i % len(order)] for i, v in enumerate(domain)}
    return mapping, diags


def assign_shapes(domain, user_range=None):
    domain = list(domain)
    diags = []
    if user_range is not None:
        user_range = list(user_range)
        bad = [s for s in user_range if s not in SHAPES]
        if bad:
            diags.append(Diagnostic(
                severity="error", rule_id="spec/unknown-shape",
                message=f"unknown shape(s) {bad}; available shapes: {', '.join(SHAPES)}",
                node_path="encoding.shape.scale.range"))
            user_range = None
        elif len(user_range) < len(domain):
            diags.append(Diagnostic(
                severity="error", rule_id="spec/shape-range-short",
                message=f"shape range has {len(user_range)} entries for "
                        f"{len(domain)} domain values",
                node_path="encoding.shape.scale.range"))
            user_range = None
    if len(domain) > len(SHAPES):
        diags.append(Diagnostic(
            severity="warning", rule_id="R4",
            message=f"{len(domain)} shapes requested but only {len(SHAPES)} are "
                    "distinct by touch; consider splitting into multiple charts",
            citation="BANA Guidelines 6.5: keep symbol repertoires small",
            node_path="encoding.shape"))
    if user_range is not None:
        mapping = {v: user_range[i] for i, v in enumerate(domain)}
    else:
        mapping = {v: SHAPES[i % len(SHAPES)] for i, v in enumerate(domain)}
    return mapping, diags


def _axis_kind(enc: EncodingDef, mark_type: str) -> str:
    if enc.type == "quantitative":
        return "linear"
    if enc.type == "temporal" and mark_type in ("line", "point"):
        return "linear"
    return "band"


def _first(*values):
    for v in values:
        if v is not None:
            return v
    return None


def _resolve_axis(channel, enc, mark_type) -> ResolvedAxis:
    axis = enc.axis or AxisSpec()
    kind = _axis_kind(enc, mark_type)
    style = axis.style or ()
    foreground = "foregroundGrid" in style
    if "dottedGrid" in style:
        grid_style = "dottedGrid"
    else:
        grid_style = default_value("grid.style")
    # Grid defaults on for quantitative axes, off for band axes; an explicit
    # grid flag or a grid style keyword both count as the user asking.
    if axis.grid is not None:
        grid = axis.grid
    elif any(k in style for k in ("solidGrid", "dottedGrid")):
        grid = True
    else:
        grid = kind == "linear"
    return ResolvedAxis(
        channel=channel,
        field=enc.field,
        type=enc.type,
        kind=kind,
        tick_count=axis.tick_count,
        stagger_labels=_first(axis.stagger_labels, default_value("axis.staggerLabels")),
        grid=grid,
        grid_style=grid_style,
        foreground_grid=foreground,
        title=axis.title,
        title_align=default_value("axis.titleAlign"),
        title_padding=_first(axis.title_padding, default_value("axis.titlePadding")),
        label_padding=_first(axis.label_padding, default_value("axis.labelPadding")),
        tick_size=_first(axis.tick_size, default_value("axis.tickSize")),
        tick_width=_first(axis.tick_width, default_value("axis.tickWidth")),
        grid_width=_first(axis.grid_width, default_value("axis.gridWidth")),
        domain_width=_first(axis.domain_width, default_value("axis.domainWidth")),
        label_angle=_first(axis.label_angle, default_value("axis.labelAngle")),
        title_angle=_first(axis.title_angle, default_value("axis.titleAngle")),
        title_y=default_value("axis.titleY"),
        domain=enc.scale.domain if enc.scale else None,
        sort=enc.sort,
        aggregate=enc.aggregate,
    )


def _category_domain(table, enc):
    explicit = enc.scale.domain if enc.scale and enc.scale.domain else None
    if explicit:
        return list(explicit)
    return infer_domain(table, enc.field, "nominal", sort=enc.sort)


def resolve_defaults(spec: ChartSpec, table: DataTable | None = None):
    """Fill every unspecified property from the defaults table.

    Returns (ResolvedSpec, diagnostics).  Resolution is idempotent:
    resolving ResolvedSpec.to_spec() reproduces the same ResolvedSpec.
    """
    diags = []
    if table is None:
        table = load_data(spec.data)

    axes = {}
    for channel in ("x", "y"):
        if channel in spec.encoding and spec.mark.type != "arc":
            axes[channel] = _resolve_axis(channel, spec.encoding[channel],
                                          spec.mark.type)

    texture_mapping = line_style_mapping = shape_mapping = None
    legend_channel = None
    for channel in ("texture", "strokeDash", "shape"):
        if channel not in spec.encoding:
            continue
        enc = spec.encoding[channel]
        domain = _category_domain(table, enc)
        user_range = list(enc.scale.range) if enc.scale and enc.scale.range else None
        if channel == "texture":
            texture_mapping, d = assign_textures(domain, user_range)
        elif channel == "strokeDash":
            line_style_mapping, d = assign_line_styles(domain, user_range)
        else:
            shape_mapping, d = assign_shapes(domain, user_range)
        diags.extend(d)
        if legend_channel is None:
            legend_channel = channel

    legend = None
    if legend_channel is not None:
        lspec = spec.encoding[legend_channel].legend or LegendSpec()
        legend = ResolvedLegend(
            channel=legend_channel,
            title=lspec.title,
            direction=_first(lspec.direction, default_value("legend.direction")),
            orient=_first(lspec.orient, default_value("legend.orient")),
            title_padding=default_value("legend.titlePadding"),
            offset=default_value("legend.offset"),
            column_padding=default_value("legend.columnPadding"),
            row_padding=default_value("legend.rowPadding"),
            symbol_size=_first(lspec.symbol_size, default_value("legend.symbolSize")),
        )

    cfg = spec.config or ConfigSpec()
    padding = dict(zip(("top", "bottom", "left", "right"),
                       (default_value("config.padding.top"),
                        default_value("config.padding.bottom"),
                        default_value("config.padding.left"),
                        default_value("config.padding.right"))))
    if cfg.padding:
        padding.update(cfg.padding)
    config = ResolvedConfig(
        font=_first(cfg.font, default_value("config.font")),
        braille_translation=_first(cfg.braille_translation,
                                   default_value("config.brailleTranslation")),
        render_mode=_first(cfg.render_mode, default_value("config.renderMode")),
        dpi=_first(cfg.dpi, default_value("config.dpi")),
        padding=padding,
        title_font_size=default_value("title.fontSize"),
        label_font_size=default_value("axis.labelFontSize"),
        title_font_weight=default_value("title.fontWeight"),
        title_align=default_value("title.align"),
        title_offset=default_value("title.offset"),
    )

    grouping = spec.mark.grouping
    if spec.mark.type == "bar" and grouping is None and texture_mapping is not None:
        band = axes.get("x") if axes.get("x") and axes["x"].kind == "band" else axes.get("y")
        if band is not None:
            positions = {}
            stacked_needed = False
            for row in table.rows:
                key = row.get(band.field)
                if key in positions:
                    stacked_needed = True
                    break
                positions[key] = True
            if stacked_needed:
                grouping = "stacked"

    mark = ResolvedMark(
        type=spec.mark.type,
        grouping=grouping,
        bar_width=_first(spec.mark.width, default_value("mark.barWidth")),
        bar_gap=default_value("mark.barGap"),
        line_stroke_width=_first(spec.mark.stroke_width,
                                 default_value("mark.lineStrokeWidth")),
        outline_width=default_value("mark.outlineWidth"),
        point_size=default_value("mark.pointSize"),
        pie_radius=default_value("mark.pieRadius"),
    )

    resolved = ResolvedSpec(
        mark=mark, encoding=dict(spec.encoding), axes=axes, legend=legend,
        config=config, title=spec.title, width=spec.width, height=spec.height,
        texture_mapping=texture_mapping, line_style_mapping=line_style_mapping,
        shape_mapping=shape_mapping, data=spec.data)
    # Normalize the stored encoding to its fully explicit form so that
    # resolving an already-resolved spec is a strict no-op.
    resolved.encoding = resolved.to_spec().encoding
    return resolved, diags
