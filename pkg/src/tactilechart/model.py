"""Chart specification model: JSON parsing and structural validation.

The grammar is deliberately narrow: visual-only channels (color, opacity)
are rejected with a pointer to the texture channel, since tactile output
has no use for them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .diagnostics import Diagnostic
from .palette import LINE_STYLES, TEXTURES

MARK_TYPES = ("bar", "line", "point", "arc")
CHANNELS = ("x", "y", "theta", "texture", "strokeDash", "strokeWidth",
            "shape", "size")
VISUAL_ONLY_CHANNELS = ("color", "opacity")
FIELD_TYPES = ("quantitative", "ordinal", "nominal", "temporal")
AGGREGATE_OPS = ("average", "mean", "sum", "count", "min", "max")
AXIS_STYLE_KEYWORDS = ("solidGrid", "dottedGrid", "foregroundGrid")
LEGEND_DIRECTIONS = ("vertical", "horizontal")
LEGEND_ORIENTS = ("top-left",)
RENDER_MODES = ("dots", "font")
BRAILLE_FONTS = ("Swell Braille", "California Braille", "Braille29")
TOP_LEVEL_PROPS = ("title", "data", "mark", "encoding", "config",
                   "width", "height")


class SpecError(ValueError):
    pass


class SpecParseError(SpecError):
    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class SpecSchemaError(SpecError):
    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


@dataclass(frozen=True)
class TitleSpec:
    lines: tuple                 # explicit text lines; one entry = no forced breaks

    @property
    def text(self):
        return "\n".join(self.lines)


@dataclass(frozen=True)
class DataSpec:
    values: tuple | None = None
    url: str | None = None


@dataclass(frozen=True)
class MarkSpec:
    type: str
    grouping: str | None = None   # bar only: "stacked" | "grouped"
    width: float | None = None    # bar only: explicit bar width in px
    stroke_width: float | None = None


@dataclass(frozen=True)
class AxisSpec:
    tick_count: int | None = None
    stagger_labels: object | None = None   # True | False | "auto"
    style: tuple = ()
    grid: bool | None = None
    title: str | None = None
    label_padding: float | None = None
    title_padding: float | None = None
    tick_size: float | None = None
    tick_width: float | None = None
    grid_width: float | None = None
    domain_width: float | None = None
    label_angle: float | None = None
    title_angle: float | None = None


@dataclass(frozen=True)
class LegendSpec:
    title: str | None = None
    direction: str | None = None
    orient: str | None = None
    symbol_size: float | None = None


@dataclass(frozen=True)
class ScaleSpec:
    domain: tuple | None = None
    range: tuple | None = None


@dataclass(frozen=True)
class EncodingDef:
    channel: str
    field: str
    type: str
    aggregate: str | None = None
    sort: tuple | None = None
    scale: ScaleSpec | None = None
    axis: AxisSpec | None = None
    legend: LegendSpec | None = None


@dataclass(frozen=True)
class ConfigSpec:
    font: str | None = None
    braille_translation: str | None = None
    render_mode: str | None = None
    dpi: float | None = None
    padding: dict | None = None


@dataclass
class ChartSpec:
    mark: MarkSpec
    data: DataSpec
    encoding: dict                 # channel -> EncodingDef, source order
    title: TitleSpec | None = None
    config: ConfigSpec = field(default_factory=ConfigSpec)
    width: float | None = None
    height: float | None = None
    warnings: list = field(default_factory=list)

    def to_json(self) -> dict:
        """Spec as input-format JSON; unset properties are omitted."""
        out = {}
        if self.title is not None:
            lines = list(self.title.lines)
            out["title"] = lines[0] if len(lines) == 1 else lines
        if self.data.values is not None:
            out["data"] = {"values": [dict(r) for r in self.data.values]}
        elif self.data.url is not None:
            out["data"] = {"url": self.data.url}
        out["mark"] = _prune({
            "type": self.mark.type, "grouping": self.mark.grouping,
            "width": self.mark.width, "strokeWidth": self.mark.stroke_width})
        if len(out["mark"]) == 1:
            out["mark"] = self.mark.type
        out["encoding"] = {ch: _encoding_json(enc)
                           for ch, enc in self.encoding.items()}
        if self.width is not None:
            out["width"] = self.width
        if self.height is not None:
            out["height"] = self.height
        cfg = _prune({
            "font": self.config.font,
            "brailleTranslation": self.config.braille_translation,
            "renderMode": self.config.render_mode,
            "dpi": self.config.dpi,
            "padding": self.config.padding,
        })
        if cfg:
            out["config"] = cfg
        return out


def _prune(d: dict) -> dict:
    return {k: v for k, v in d.items() if v is not None}


def _encoding_json(enc: EncodingDef) -> dict:
    out = _prune({"field": enc.field or None, "type": enc.type,
                  "aggregate": enc.aggregate})
    if enc.sort is not None:
        out["sort"] = list(enc.sort)
    if enc.scale is not None:
        scale = {}
        if enc.scale.domain is not None:
            scale["domain"] = list(enc.scale.domain)
        if enc.scale.range is not None:
            scale["range"] = list(enc.scale.range)
        if scale:
            out["scale"] = scale
    if enc.axis is not None:
        a = enc.axis
        axis = _prune({
            "tickCount": a.tick_count, "staggerLabels": a.stagger_labels,
            "grid": a.grid, "title": a.title,
            "labelPadding": a.label_padding, "titlePadding": a.title_padding,
            "tickSize": a.tick_size, "tickWidth": a.tick_width,
            "gridWidth": a.grid_width, "domainWidth": a.domain_width,
            "labelAngle": a.label_angle, "titleAngle": a.title_angle})
        if a.style:
            axis["style"] = list(a.style)
        out["axis"] = axis
    if enc.legend is not None:
        lg = enc.legend
        out["legend"] = _prune({
            "title": lg.title, "direction": lg.direction,
            "orient": lg.orient, "symbolSize": lg.symbol_size})
    return out


def _type_name(value):
    return {dict: "object", list: "array", str: "string", bool: "boolean",
            int: "number", float: "number",
            type(None): "null"}.get(type(value), type(value).__name__)


def _expect(value, types, path, label):
    if isinstance(value, bool) and bool not in types:
        raise SpecSchemaError(f"expected {label}, got boolean", path)
    if not isinstance(value, tuple(types)):
        raise SpecSchemaError(f"expected {label}, got {_type_name(value)}", path)
    return value


def _expect_number(value, path):
    _expect(value, [int, float], path, "number")
    return float(value)


def _expect_enum(value, allowed, path):
    _expect(value, [str], path, "string")
    if value not in allowed:
        raise SpecSchemaError(
            f"must be one of {', '.join(allowed)}; got {value!r}", path)
    return value


def _parse_title(raw, path):
    if isinstance(raw, str):
        lines = tuple(raw.split("\n"))
    elif isinstance(raw, list):
        lines = tuple(_expect(t, [str], f"{path}[{i}]", "string")
                      for i, t in enumerate(raw))
    elif isinstance(raw, dict):
        text = raw.get("text")
        if text is None:
            raise SpecSchemaError("title object requires text", path)
        return _parse_title(text, f"{path}.text")
    else:
        raise SpecSchemaError(f"expected string, array or object, got {_type_name(raw)}", path)
    if not lines or not any(line for line in lines):
        raise SpecSchemaError("title must not be empty", path)
    return TitleSpec(lines=lines)


def _parse_data(raw, path):
    _expect(raw, [dict], path, "object")
    values = raw.get("values")
    url = raw.get("url")
    if (values is None) == (url is None):
        raise SpecSchemaError("data requires exactly one of values or url", path)
    if values is not None:
        _expect(values, [list], f"{path}.values", "array")
        for i, row in enumerate(values):
            _expect(row, [dict], f"{path}.values[{i}]", "object")
        return DataSpec(values=tuple(values))
    _expect(url, [str], f"{path}.url", "string")
    return DataSpec(url=url)


def _parse_mark(raw, path):
    if isinstance(raw, str):
        mark_type = raw
        grouping = width = stroke_width = None
    elif isinstance(raw, dict):
        mark_type = raw.get("type")
        if mark_type is None:
            raise SpecSchemaError("mark object requires type", path)
        grouping = raw.get("grouping")
        if grouping is not None:
            _expect_enum(grouping, ("stacked", "grouped"), f"{path}.grouping")
        width = raw.get("width")
        if width is not None:
            width = _expect_number(width, f"{path}.width")
        stroke_width = raw.get("strokeWidth")
        if stroke_width is not None:
            stroke_width = _expect_number(stroke_width, f"{path}.strokeWidth")
    else:
        raise SpecSchemaError(f"expected string or object, got {_type_name(raw)}", path)
    if mark_type not in MARK_TYPES:
        raise SpecSchemaError(
            f"mark must be one of {', '.join(MARK_TYPES)}; got {mark_type!r}",
            f"{path}.type" if isinstance(raw, dict) else path)
    return MarkSpec(type=mark_type, grouping=grouping, width=width,
                    stroke_width=stroke_width)


def _parse_axis(raw, path):
    _expect(raw, [dict], path, "object")
    kw = {}
    if "tickCount" in raw:
        tc = raw["tickCount"]
        _expect(tc, [int], f"{path}.tickCount", "integer")
        if tc < 1:
            raise SpecSchemaError("tickCount must be positive", f"{path}.tickCount")
        kw["tick_count"] = tc
    if "staggerLabels" in raw:
        sl = raw["staggerLabels"]
        if sl not in (True, False, "auto"):
            raise SpecSchemaError('staggerLabels must be true, false or "auto"',
                                  f"{path}.staggerLabels")
        kw["stagger_labels"] = sl
    if "style" in raw:
        style = raw["style"]
        if isinstance(style, str):
            style = [style]
        _expect(style, [list], f"{path}.style", "string or array")
        kw["style"] = tuple(
            _expect_enum(s, AXIS_STYLE_KEYWORDS, f"{path}.style[{i}]")
            for i, s in enumerate(style))
    if "grid" in raw:
        _expect(raw["grid"], [bool], f"{path}.grid", "boolean")
        kw["grid"] = raw["grid"]
    if "title" in raw:
        kw["title"] = _expect(raw["title"], [str], f"{path}.title", "string")
    for json_key, attr in (("labelPadding", "label_padding"),
                           ("titlePadding", "title_padding"),
                           ("tickSize", "tick_size"),
                           ("tickWidth", "tick_width"),
                           ("gridWidth", "grid_width"),
                           ("domainWidth", "domain_width"),
                           ("labelAngle", "label_angle"),
                           ("titleAngle", "title_angle")):
        if json_key in raw:
            kw[attr] = _expect_number(raw[json_key], f"{path}.{json_key}")
    return AxisSpec(**kw)


def _parse_legend(raw, path):
    _expect(raw, [dict], path, "object")
    kw = {}
    if "title" in raw:
        kw["title"] = _expect(raw["title"], [str], f"{path}.title", "string")
    if "direction" in raw:
        kw["direction"] = _expect_enum(raw["direction"], LEGEND_DIRECTIONS,
                                       f"{path}.direction")
    if "orient" in raw:
        kw["orient"] = _expect_enum(raw["orient"], LEGEND_ORIENTS, f"{path}.orient")
    if "symbolSize" in raw:
        kw["symbol_size"] = _expect_number(raw["symbolSize"], f"{path}.symbolSize")
    return LegendSpec(**kw)


def _parse_scale(raw, path):
    _expect(raw, [dict], path, "object")
    domain = raw.get("domain")
    if domain is not None:
        _expect(domain, [list], f"{path}.domain", "array")
        domain = tuple(domain)
    rng = raw.get("range")
    if rng is not None:
        _expect(rng, [list], f"{path}.range", "array")
        rng = tuple(tuple(v) if isinstance(v, list) else v for v in rng)
    return ScaleSpec(domain=domain, range=rng)


def _parse_encoding_def(channel, raw, path):
    _expect(raw, [dict], path, "object")
    fld = raw.get("field")
    aggregate = raw.get("aggregate")
    if fld is None and aggregate != "count":
        raise SpecSchemaError("encoding requires field", path)
    if fld is not None:
        _expect(fld, [str], f"{path}.field", "string")
    ftype = raw.get("type")
    if ftype is None:
        raise SpecSchemaError("encoding requires type", path)
    _expect_enum(ftype, FIELD_TYPES, f"{path}.type")
    if aggregate is not None:
        _expect_enum(aggregate, AGGREGATE_OPS, f"{path}.aggregate")
    sort = raw.get("sort")
    if sort is not None:
        _expect(sort, [list], f"{path}.sort", "array")
        sort = tuple(sort)
    scale = raw.get("scale")
    if scale is not None:
        scale = _parse_scale(scale, f"{path}.scale")
    axis = raw.get("axis")
    if axis is not None:
        axis = _parse_axis(axis, f"{path}.axis")
    legend = raw.get("legend")
    if legend is not None:
        legend = _parse_legend(legend, f"{path}.legend")
    return EncodingDef(channel=channel, field=fld or "", type=ftype,
                       aggregate=aggregate, sort=sort, scale=scale,
                       axis=axis, legend=legend)


def _parse_config(raw, path):
    _expect(raw, [dict], path, "object")
    kw = {}
    if "font" in raw:
        kw["font"] = _expect_enum(raw["font"], BRAILLE_FONTS, f"{path}.font")
    if "brailleTranslation" in raw:
        kw["braille_translation"] = _expect(raw["brailleTranslation"], [str],
                                            f"{path}.brailleTranslation", "string")
    if "renderMode" in raw:
        kw["render_mode"] = _expect_enum(raw["renderMode"], RENDER_MODES,
                                         f"{path}.renderMode")
    if "dpi" in raw:
        dpi = _expect_number(raw["dpi"], f"{path}.dpi")
        if dpi <= 0:
            raise SpecSchemaError("dpi must be positive", f"{path}.dpi")
        kw["dpi"] = dpi
    if "padding" in raw:
        pad = raw["padding"]
        _expect(pad, [dict], f"{path}.padding", "object")
        out = {}
        for side in ("top", "bottom", "left", "right"):
            if side in pad:
                out[side] = _expect_number(pad[side], f"{path}.padding.{side}")
        kw["padding"] = out
    return ConfigSpec(**kw)


def parse_spec(json_text: str) -> ChartSpec:
    """Parse a JSON chart spec.

    Malformed JSON raises SpecParseError with line and column; a known
    property with the wrong type raises SpecSchemaError naming the path.
    Unknown top-level properties only produce warnings on the result.
    """
    try:
        raw = json.loads(json_text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
            line=exc.lineno, column=exc.colno) from exc
    _expect(raw, [dict], "", "object")
    warnings = []
    for key in raw:
        if key not in TOP_LEVEL_PROPS and not key.startswith("$"):
            warnings.append(Diagnostic(
                severity="warning", rule_id="spec/unknown-property",
                message=f"unknown property {key!r} is ignored", node_path=key))

    if "mark" not in raw:
        raise SpecSchemaError("spec requires mark", "mark")
    mark = _parse_mark(raw["mark"], "mark")
    if "data" not in raw:
        raise SpecSchemaError("spec requires data", "data")
    data = _parse_data(raw["data"], "data")
    if "encoding" not in raw:
        raise SpecSchemaError("spec requires encoding", "encoding")
    _expect(raw["encoding"], [dict], "encoding", "object")

    encoding = {}
    for channel, enc_raw in raw["encoding"].items():
        path = f"encoding.{channel}"
        if channel in VISUAL_ONLY_CHANNELS:
            raise SpecSchemaError(
                f"channel {channel!r} is visual-only and has no tactile meaning; "
                "use texture to distinguish series", path)
        if channel not in CHANNELS:
            raise SpecSchemaError(
                f"unknown channel {channel!r}; supported channels are "
                f"{', '.join(CHANNELS)}", path)
        encoding[channel] = _parse_encoding_def(channel, enc_raw, path)

    title = _parse_title(raw["title"], "title") if "title" in raw else None
    config = _parse_config(raw.get("config", {}), "config") if raw.get("config") else ConfigSpec()
    width = _expect_number(raw["width"], "width") if "width" in raw else None
    height = _expect_number(raw["height"], "height") if "height" in raw else None

    return ChartSpec(mark=mark, data=data, encoding=encoding, title=title,
                     config=config, width=width, height=height,
                     warnings=warnings)


def validate_spec(spec: ChartSpec, table=None) -> list:
    """Semantic checks beyond structure; diagnostics in document order."""
    diags = list(spec.warnings)

    positional = [c for c in ("x", "y", "theta") if c in spec.encoding]
    if not positional:
        diags.append(Diagnostic(
            severity="error", rule_id="spec/no-position",
            message="at least one of encoding.x, encoding.y or encoding.theta is required",
            node_path="encoding"))

    fields_known = None
    if table is not None:
        fields_known = set(table.fields)
    elif spec.data.values is not None:
        fields_known = set()
        for row in spec.data.values:
            fields_known.update(row)

    for channel, enc in spec.encoding.items():
        path = f"encoding.{channel}"
        if channel == "theta" and spec.mark.type != "arc":
            diags.append(Diagnostic(
                severity="error", rule_id="spec/theta-mark",
                message="theta is only valid with the arc mark", node_path=path))
        if channel in ("texture", "shape", "strokeDash") and enc.type == "quantitative":
            diags.append(Diagnostic(
                severity="error", rule_id="spec/categorical-channel",
                message=f"{channel} requires a nominal or ordinal field",
                node_path=f"{path}.type"))
        if enc.field and fields_known is not None and enc.field not in fields_known:
            diags.append(Diagnostic(
                severity="error", rule_id="spec/unknown-field",
                message=f"field {enc.field!r} not present in data",
                node_path=f"{path}.field"))
        if enc.sort is not None and fields_known is not None and enc.field in fields_known:
            rows = table.rows if table is not None else spec.data.values
            observed = []
            for row in rows:
                v = row.get(enc.field)
                if v is not None and v not in observed:
                    observed.append(v)
            missing = [v for v in observed if v not in enc.sort]
            if missing:
                diags.append(Diagnostic(
                    severity="error", rule_id="spec/sort-incomplete",
                    message=f"sort must include every observed value; missing {missing}",
                    node_path=f"{path}.sort"))
        if enc.scale is not None and enc.scale.range is not None:
            if channel == "texture":
                reported = set()
                for i, name in enumerate(enc.scale.range):
                    if name not in TEXTURES and name not in reported:
                        reported.add(name)
                        diags.append(Diagnostic(
                            severity="error", rule_id="spec/unknown-texture",
                            message=f"unknown texture {name!r}; available textures: "
                                    f"{', '.join(TEXTURES)}",
                            node_path=f"{path}.scale.range[{i}]"))
            if channel == "strokeDash":
                reported = set()
                for i, name in enumerate(enc.scale.range):
                    if isinstance(name, str) and name not in LINE_STYLES \
                            and name not in reported:
                        reported.add(name)
                        diags.append(Diagnostic(
                            severity="error", rule_id="spec/unknown-line-style",
                            message=f"unknown line style {name!r}; available styles: "
                                    f"{', '.join(LINE_STYLES)}; a dash array is also accepted",
                            node_path=f"{path}.scale.range[{i}]"))

    if spec.mark.type == "arc" and "theta" not in spec.encoding:
        diags.append(Diagnostic(
            severity="error", rule_id="spec/arc-theta",
            message="arc mark requires encoding.theta", node_path="encoding"))
    if spec.mark.type in ("bar", "line", "point"):
        if "x" not in spec.encoding and "y" not in spec.encoding:
            diags.append(Diagnostic(
                severity="error", rule_id="spec/xy-required",
                message=f"{spec.mark.type} mark requires encoding.x or encoding.y",
                node_path="encoding"))
    return diags
