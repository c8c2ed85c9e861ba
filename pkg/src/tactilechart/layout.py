"""Tactile layout: turns a resolved spec plus data into a scene graph.

All sizing flows from the braille: cells have a fixed physical size, so
the chart grows to fit its labels rather than labels shrinking to fit the
chart.  Every block keeps at least 1/8 inch of blank space from its
neighbours.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import braille
from .braille import BrailleMetrics, BrailleRun, UnsupportedCharacterError
from .datatable import (DataTable, LinearScale, aggregate_rows, band_positions,
                        infer_domain, nice_ticks)
from .defaults import ResolvedSpec, default_value
from .diagnostics import Diagnostic
from .palette import line_cap, line_dash_array

DEFAULT_TICK_COUNT = 5


class LayoutError(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


@dataclass(frozen=True)
class SpacingRules:
    """The spacing contract every layout decision must honour."""
    dpi: float = 96.0
    metrics: BrailleMetrics = field(default_factory=BrailleMetrics)

    @property
    def min_gap(self) -> float:
        # 1/8 inch: the minimum blank space between any two elements.
        return self.dpi / 8.0

    @property
    def scale(self) -> float:
        return self.dpi / 96.0

    @staticmethod
    def for_dpi(dpi: float) -> "SpacingRules":
        return SpacingRules(dpi=dpi, metrics=BrailleMetrics.for_dpi(dpi))


@dataclass
class SceneNode:
    role: str
    kind: str                  # line | rect | circle | polyline | path-arc | braille | shape | region
    path: str
    x: float = 0.0
    y: float = 0.0
    width: float = 0.0
    height: float = 0.0
    geom: dict = field(default_factory=dict)
    stroke_width: float = 0.0
    dash: tuple = ()
    cap: str = "butt"
    texture: str | None = None
    fill: str | None = None
    angle: float = 0.0
    mark_kind: str | None = None
    run: BrailleRun | None = None
    origin: tuple | None = None   # braille pen origin

    @property
    def right(self):
        return self.x + self.width

    @property
    def bottom(self):
        return self.y + self.height

    def to_json(self):
        out = {
            "role": self.role,
            "kind": self.kind,
            "path": self.path,
            "x": round(self.x, 4), "y": round(self.y, 4),
            "width": round(self.width, 4), "height": round(self.height, 4),
            "geom": self.geom,
            "strokeWidth": self.stroke_width,
            "dash": list(self.dash),
            "cap": self.cap,
            "texture": self.texture,
            "fill": self.fill,
            "angle": self.angle,
            "markKind": self.mark_kind,
        }
        if self.run is not None:
            out["braille"] = {
                "text": self.run.text,
                "cells": list(self.run.cells),
                "unicode": braille.encode_run(self.run, "unicode"),
                "grade": self.run.grade,
            }
            out["origin"] = [round(self.origin[0], 4), round(self.origin[1], 4)]
        return out


LAYER_ORDER = ("frame", "grid-background", "marks", "grid-foreground",
               "axes", "labels", "lead-lines", "legend", "title")


@dataclass
class SceneGraph:
    width: float
    height: float
    rules: SpacingRules
    render_mode: str
    font: str
    band_axis: str | None = None
    layers: dict = field(default_factory=lambda: {name: [] for name in LAYER_ORDER})
    chart_frame: tuple = (0.0, 0.0, 0.0, 0.0)
    plot: tuple = (0.0, 0.0, 0.0, 0.0)

    def add(self, layer: str, node: SceneNode) -> SceneNode:
        self.layers[layer].append(node)
        return node

    def iter_nodes(self):
        for name in LAYER_ORDER:
            for node in self.layers[name]:
                yield name, node

    def nodes_by_role(self, *roles):
        return [n for _, n in self.iter_nodes() if n.role in roles]

    def to_json(self):
        return {
            "width": round(self.width, 4),
            "height": round(self.height, 4),
            "dpi": self.rules.dpi,
            "minGap": self.rules.min_gap,
            "renderMode": self.render_mode,
            "font": self.font,
            "bandAxis": self.band_axis,
            "chartFrame": [round(v, 4) for v in self.chart_frame],
            "plot": [round(v, 4) for v in self.plot],
            "layers": [{"name": name, "nodes": [n.to_json() for n in self.layers[name]]}
                       for name in LAYER_ORDER],
        }


def format_value(v) -> str:
    """Axis label text for a tick or category value."""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        r = round(v, 10)
        if r == int(r):
            return str(int(r))
        return str(r)
    return str(v)


class _Text:
    """Braille translation helper bound to one table and grade."""

    def __init__(self, table, grade, rules: SpacingRules):
        self.table = table
        self.grade = grade
        self.rules = rules
        self.m = rules.metrics

    def run(self, text, context_path):
        try:
            return braille.translate_text(text, self.grade, self.table)
        except UnsupportedCharacterError as exc:
            raise LayoutError(Diagnostic(
                severity="error", rule_id="braille/unsupported-character",
                message=str(exc), node_path=context_path))

    def ink(self, run):
        return braille.ink_extent(run, self.m)

    def measure(self, run):
        return braille.measure_run(run, self.m)

    def node(self, run, role, path, *, left=None, cx=None, right=None,
             top=None, cy=None, angle=0.0):
        """Place a run by its ink box; origin is derived for the renderer."""
        w, h = self.ink(run)
        r = self.m.dot_diameter / 2
        if cx is not None:
            left = cx - w / 2
        elif right is not None:
            left = right - w
        if cy is not None:
            top = cy - h / 2
        return SceneNode(role=role, kind="braille", path=path,
                         x=left, y=top, width=w, height=h,
                         run=run, origin=(left + r, top + r), angle=angle,
                         fill="black")

    def slot_top(self, slot_y):
        """Ink top for a run centered in a line-pitch slot starting at slot_y."""
        _, h = (0, 2 * self.m.dot_pitch + self.m.dot_diameter)
        return slot_y + (self.m.line_pitch - h) / 2


def stagger_axis_labels(runs, centers, mode, rules: SpacingRules):
    """Assign axis labels to rows.

    Returns (rows, diagnostics): one row index (0 or 1) per label.  Mode
    True alternates rows 0,1,0,1...; False keeps one row; "auto" staggers
    only when some adjacent pair would sit closer than the minimum gap.
    Staggering is capped at two rows: if even alternate rows collide, the
    labels are unplaceable and an error diagnostic says so.
    """
    m = rules.metrics
    widths = [braille.measure_run(r, m)[0] for r in runs]
    diags = []

    def fits(indices):
        for a, b in zip(indices, indices[1:]):
            gap = (centers[b] - centers[a]) - (widths[a] + widths[b]) / 2
            if gap < rules.min_gap:
                return False
        return True

    n = len(runs)
    if mode is False:
        return [0] * n, diags
    if mode == "auto" and fits(list(range(n))):
        return [0] * n, diags
    rows = [i % 2 for i in range(n)]
    for row in (0, 1):
        if not fits([i for i in range(n) if rows[i] == row]):
            diags.append(Diagnostic(
                severity="error", rule_id="layout/labels-overlap",
                message="axis labels cannot be placed without overlap even "
                        "when staggered over two rows; widen the chart or "
                        "shorten the labels",
                citation="staggering is limited to two rows so labels stay "
                         "associated with their ticks",
                node_path="encoding.x.axis"))
            break
    return rows, diags


def place_legend(legend, mapping, kind, text: _Text, origin, mark,
                 path_prefix="legend"):
    """Build legend nodes at origin; returns (nodes, width, height).

    kind is "texture", "line" or "shape" and decides the swatch drawing.
    Entries stack by direction; the swatch comes first, then the braille
    label one column gap to its right.
    """
    ox, oy = origin
    m = text.m
    side = math.sqrt(legend.symbol_size) * text.rules.scale
    gap = legend.column_padding
    nodes = []
    y = oy
    entry_h = max(side if kind != "line" else m.line_pitch, m.line_pitch)
    if legend.title:
        run = text.run(legend.title, f"{path_prefix}.title")
        nodes.append(text.node(run, "legendTitle", f"{path_prefix}.title",
                               left=ox, top=text.slot_top(y)))
        y += m.line_pitch + legend.title_padding
    x = ox
    max_right = ox
    for i, (value, style) in enumerate(mapping.items()):
        base = f"{path_prefix}.entries[{i}]"
        cy = y + entry_h / 2
        if kind == "texture":
            sw = SceneNode(role="legendSwatch", kind="rect", path=f"{base}.swatch",
                           x=x, y=cy - side / 2, width=side, height=side,
                           geom={"x": x, "y": cy - side / 2, "w": side, "h": side},
                           stroke_width=mark.outline_width, texture=style,
                           fill="texture")
        elif kind == "line":
            w = mark.line_stroke_width
            sw = SceneNode(role="legendSwatch", kind="line", path=f"{base}.swatch",
                           x=x, y=cy - w / 2, width=side, height=w,
                           geom={"x1": x, "y1": cy, "x2": x + side, "y2": cy},
                           stroke_width=w,
                           dash=tuple(line_dash_array(style, w)) if isinstance(style, str)
                           else tuple(style),
                           cap=line_cap(style) if isinstance(style, str) else "butt",
                           mark_kind="legend-line")
        else:
            sw = _shape_node(style, x + side / 2, cy, side, mark.outline_width,
                             f"{base}.swatch", role="legendSwatch")
        nodes.append(sw)
        run = text.run(format_value(value), f"{base}.label")
        label = text.node(run, "legendLabel", f"{base}.label",
                          left=x + side + gap, cy=cy)
        nodes.append(label)
        if legend.direction == "horizontal":
            x = label.right + legend.column_padding
            max_right = max(max_right, label.right)
        else:
            max_right = max(max_right, label.right)
            y += entry_h + legend.row_padding
    if legend.direction == "horizontal":
        height = (y - oy) + entry_h
    else:
        height = (y - oy) - legend.row_padding
    return nodes, max_right - ox, height


def _shape_node(shape, cx, cy, side, stroke_w, path, role="mark"):
    half = side / 2
    if shape == "circle":
        return SceneNode(role=role, kind="circle", path=path,
                         x=cx - half, y=cy - half, width=side, height=side,
                         geom={"cx": cx, "cy": cy, "r": half},
                         stroke_width=stroke_w, fill="none", mark_kind="point")
    if shape == "square":
        return SceneNode(role=role, kind="rect", path=path,
                         x=cx - half, y=cy - half, width=side, height=side,
                         geom={"x": cx - half, "y": cy - half, "w": side, "h": side},
                         stroke_width=stroke_w, fill="none", mark_kind="point")
    points = [(cx, cy - half), (cx - half, cy + half), (cx + half, cy + half)]
    return SceneNode(role=role, kind="polygon", path=path,
                     x=cx - half, y=cy - half, width=side, height=side,
                     geom={"points": points},
                     stroke_width=stroke_w, fill="none", mark_kind="point")


def _prepare_table(resolved: ResolvedSpec, table: DataTable):
    """Apply encoding aggregates: group by all non-aggregated encoded fields."""
    agg_channel = None
    for channel, enc in resolved.encoding.items():
        if enc.aggregate:
            agg_channel = channel
            break
    if agg_channel is None:
        return table
    enc = resolved.encoding[agg_channel]
    group_by = []
    for channel, other in resolved.encoding.items():
        if channel == agg_channel or not other.field:
            continue
        if other.field not in group_by:
            group_by.append(other.field)
    op = "average" if enc.aggregate == "average" else enc.aggregate
    return aggregate_rows(table, group_by, enc.field or None, op)


def _series_info(resolved):
    """The channel/field/mapping that splits rows into series, if any."""
    if resolved.texture_mapping is not None and "texture" in resolved.encoding:
        return ("texture", resolved.encoding["texture"].field,
                resolved.texture_mapping)
    if resolved.line_style_mapping is not None and "strokeDash" in resolved.encoding:
        return ("strokeDash", resolved.encoding["strokeDash"].field,
                resolved.line_style_mapping)
    if resolved.shape_mapping is not None and "shape" in resolved.encoding:
        return ("shape", resolved.encoding["shape"].field, resolved.shape_mapping)
    return (None, None, None)


def _tick_label_runs(ticks, text: _Text, axis_channel):
    return [text.run(format_value(t), f"axes.{axis_channel}.labels[{i}]")
            for i, t in enumerate(ticks)]


def _band_axis_and_linear(resolved):
    x = resolved.axes.get("x")
    y = resolved.axes.get("y")
    if x is not None and x.kind == "band":
        return "x", x, y
    if y is not None and y.kind == "band":
        return "y", y, x
    return None, None, None


def build_scene(resolved: ResolvedSpec, table: DataTable, rules: SpacingRules,
                braille_table, grade: int):
    """Lay out the whole chart; returns (SceneGraph | None, diagnostics)."""
    diags = []
    try:
        scene = _build_scene_inner(resolved, table, rules, braille_table,
                                   grade, diags)
    except LayoutError as exc:
        diags.append(exc.diagnostic)
        return None, diags
    return scene, diags


def _bar_value(rows, field, context):
    vals = [r.get(field) for r in rows if isinstance(r.get(field), (int, float))]
    if not vals:
        raise LayoutError(Diagnostic(
            severity="error", rule_id="layout/missing-value",
            message=f"no numeric value for {context}", node_path="data"))
    return sum(vals) if len(vals) > 1 else vals[0]


def _build_scene_inner(resolved, table, rules, braille_table, grade, diags):
    text = _Text(braille_table, grade, rules)
    m = rules.metrics
    s = rules.scale
    cfg = resolved.config
    mark = resolved.mark
    pad = cfg.padding
    min_gap = rules.min_gap

    plot_table = _prepare_table(resolved, table)
    series_channel, series_field, series_mapping = _series_info(resolved)

    scene = SceneGraph(width=0, height=0, rules=rules,
                       render_mode=cfg.render_mode, font=cfg.font)

    if mark.type == "arc":
        return _build_pie(resolved, plot_table, scene, text, diags)

    band_channel, band_axis, _ = _band_axis_and_linear(resolved)
    scene.band_axis = band_channel
    x_axis = resolved.axes.get("x")
    y_axis = resolved.axes.get("y")
    if x_axis is None or y_axis is None:
        raise LayoutError(Diagnostic(
            severity="error", rule_id="layout/axes-required",
            message=f"{mark.type} mark requires both x and y encodings",
            node_path="encoding"))
    if x_axis.kind == "band" and y_axis.kind == "band":
        raise LayoutError(Diagnostic(
            severity="error", rule_id="layout/quantitative-required",
            message="one positional channel must be quantitative",
            node_path="encoding"))
    if mark.type == "bar" and band_axis is None:
        raise LayoutError(Diagnostic(
            severity="error", rule_id="layout/band-required",
            message="bar mark requires a nominal or ordinal positional channel",
            node_path="encoding"))

    # ---- domains and ticks -------------------------------------------------
    band_domain = None
    if band_axis is not None:
        band_domain = infer_domain(plot_table, band_axis.field, "nominal",
                                   explicit=band_axis.domain, sort=band_axis.sort)

    series_domain = list(series_mapping.keys()) if series_mapping else None
    stacked = mark.type == "bar" and mark.grouping == "stacked"
    grouped = mark.type == "bar" and mark.grouping == "grouped"

    lin_axes = {}
    for channel, axis in (("x", x_axis), ("y", y_axis)):
        if axis.kind != "linear":
            continue
        if axis.domain is not None:
            domain = [axis.domain[0], axis.domain[-1]]
        elif stacked and band_axis is not None and channel != band_channel:
            sums = {}
            for row in plot_table.rows:
                key = row.get(band_axis.field)
                v = row.get(axis.field)
                if isinstance(v, (int, float)):
                    sums[key] = sums.get(key, 0) + v
            if not sums:
                raise LayoutError(Diagnostic(
                    severity="error", rule_id="layout/missing-value",
                    message=f"no numeric values for field {axis.field!r}",
                    node_path=f"encoding.{channel}.field"))
            domain = [0, max(sums.values())]
        else:
            domain = infer_domain(plot_table, axis.field, "quantitative",
                                  mark=mark.type)
        ticks = nice_ticks(domain, axis.tick_count or DEFAULT_TICK_COUNT)
        lin_axes[channel] = (domain, ticks)

    # ---- x extent ----------------------------------------------------------
    group_width = None
    stagger_rows = None
    x_label_runs = None
    if band_channel == "x":
        n = len(band_domain)
        x_label_runs = [text.run(format_value(v), f"axes.x.labels[{i}]")
                        for i, v in enumerate(band_domain)]
        if grouped:
            group_width = len(series_domain) * mark.bar_width
            base_step = group_width + mark.bar_gap
        elif mark.type == "bar":
            base_step = mark.bar_width + mark.bar_gap
        else:
            base_step = 0.75 * rules.dpi
        if resolved.width is not None:
            step = resolved.width / n
        else:
            step = _derive_band_step(x_label_runs, base_step,
                                     x_axis.stagger_labels, rules)
        plot_w = n * step
        centers_map = band_positions(band_domain, step, min(mark.bar_width, step), 0.0)
        x_positions = list(centers_map.values())
        stagger_rows, st_diags = stagger_axis_labels(
            x_label_runs, x_positions, x_axis.stagger_labels, rules)
        diags.extend(st_diags)
    else:
        domain, ticks = lin_axes["x"]
        x_label_runs = _tick_label_runs(ticks, text, "x")
        if resolved.width is not None:
            plot_w = resolved.width
        else:
            spacing = 1.25 * rules.dpi
            for a, b in zip(x_label_runs, x_label_runs[1:]):
                need = (text.measure(a)[0] + text.measure(b)[0]) / 2 + min_gap
                spacing = max(spacing, need)
            plot_w = (len(ticks) - 1) * spacing if len(ticks) > 1 else 1.25 * rules.dpi
        x_scale = LinearScale((float(ticks[0]), float(ticks[-1])), (0.0, plot_w))
        x_positions = [x_scale.apply(t) for t in ticks]
        stagger_rows, st_diags = stagger_axis_labels(
            x_label_runs, x_positions, x_axis.stagger_labels, rules)
        diags.extend(st_diags)

    # ---- y extent ----------------------------------------------------------
    if band_channel == "y":
        n = len(band_domain)
        if grouped:
            group_width = len(series_domain) * mark.bar_width
            base_step = group_width + mark.bar_gap
        else:
            base_step = mark.bar_width + mark.bar_gap
        ink_h = 2 * m.dot_pitch + m.dot_diameter
        base_step = max(base_step, ink_h + min_gap)
        step_y = resolved.height / n if resolved.height is not None else base_step
        plot_h = n * step_y
        y_centers_map = band_positions(band_domain, step_y,
                                       min(mark.bar_width, step_y), 0.0)
        y_positions = list(y_centers_map.values())
        y_label_runs = [text.run(format_value(v), f"axes.y.labels[{i}]")
                        for i, v in enumerate(band_domain)]
    else:
        domain, ticks = lin_axes["y"]
        y_label_runs = _tick_label_runs(ticks, text, "y")
        if resolved.height is not None:
            plot_h = resolved.height
        else:
            spacing = 0.625 * rules.dpi
            plot_h = (len(ticks) - 1) * spacing if len(ticks) > 1 else 0.625 * rules.dpi
        y_scale = LinearScale((float(ticks[0]), float(ticks[-1])), (plot_h, 0.0))
        y_positions = [y_scale.apply(t) for t in ticks]

    # ---- gutters and frame -------------------------------------------------
    y_label_w = max(text.ink(r)[0] for r in y_label_runs)
    axis_x = pad["left"] + y_label_w + y_axis.label_padding + y_axis.tick_size

    chart_frame_top, legend_nodes, legend_box, title_nodes = _assemble_top(
        resolved, text, scene, rules, series_channel, series_mapping, mark,
        wrap_width=axis_x + plot_w - pad["left"])

    ink_h = 2 * m.dot_pitch + m.dot_diameter
    if y_axis.title:
        title_ink_bottom = chart_frame_top + text.slot_top(0) + ink_h
        clearance = max(-y_axis.title_y * s, min_gap)
        plot_top = title_ink_bottom + clearance + ink_h / 2
    elif y_axis.kind == "linear" or band_channel == "y":
        plot_top = chart_frame_top + ink_h / 2
    else:
        plot_top = chart_frame_top
    plot_bottom = plot_top + plot_h

    # ---- grid, axes, ticks -------------------------------------------------
    grid_layer = "grid-background"
    if (x_axis.foreground_grid or y_axis.foreground_grid):
        grid_layer = "grid-foreground"

    def grid_node(channel, i, x1, y1, x2, y2, axis):
        dash = tuple(line_dash_array("dotted", axis.grid_width)) \
            if axis.grid_style == "dottedGrid" else ()
        return SceneNode(
            role="gridLine", kind="line", path=f"axes.{channel}.grid[{i}]",
            x=min(x1, x2), y=min(y1, y2), width=abs(x2 - x1), height=abs(y2 - y1),
            geom={"x1": x1, "y1": y1, "x2": x2, "y2": y2},
            stroke_width=axis.grid_width, dash=dash,
            cap="round" if axis.grid_style == "dottedGrid" else "butt")

    if y_axis.grid and y_axis.kind == "linear":
        for i, py in enumerate(y_positions):
            gy = plot_top + py
            if abs(gy - plot_bottom) < 1e-9:
                continue
            scene.add(grid_layer, grid_node("y", i, axis_x, gy, axis_x + plot_w, gy, y_axis))
    if x_axis.grid and x_axis.kind == "linear":
        for i, px in enumerate(x_positions):
            gx = axis_x + px
            if abs(gx - axis_x) < 1e-9:
                continue
            scene.add(grid_layer, grid_node("x", i, gx, plot_top, gx, plot_bottom, x_axis))

    scene.add("axes", SceneNode(
        role="axisDomain", kind="line", path="axes.x.domain",
        x=axis_x, y=plot_bottom, width=plot_w, height=0,
        geom={"x1": axis_x, "y1": plot_bottom, "x2": axis_x + plot_w, "y2": plot_bottom},
        stroke_width=x_axis.domain_width))
    scene.add("axes", SceneNode(
        role="axisDomain", kind="line", path="axes.y.domain",
        x=axis_x, y=plot_top, width=0, height=plot_h,
        geom={"x1": axis_x, "y1": plot_top, "x2": axis_x, "y2": plot_bottom},
        stroke_width=y_axis.domain_width))

    # x ticks, labels, lead lines
    label_top = plot_bottom + x_axis.tick_size + x_axis.label_padding
    rows_used = max(stagger_rows) + 1 if stagger_rows else 1
    x_label_nodes = []
    for i, (run, px) in enumerate(zip(x_label_runs, x_positions)):
        cx = axis_x + px
        scene.add("axes", SceneNode(
            role="axisTick", kind="line", path=f"axes.x.ticks[{i}]",
            x=cx, y=plot_bottom, width=0, height=x_axis.tick_size,
            geom={"x1": cx, "y1": plot_bottom, "x2": cx,
                  "y2": plot_bottom + x_axis.tick_size},
            stroke_width=x_axis.tick_width))
        row = stagger_rows[i]
        if row == 1:
            scene.add("lead-lines", SceneNode(
                role="leadLine", kind="line", path=f"axes.x.leads[{i}]",
                x=cx, y=plot_bottom + x_axis.tick_size, width=0, height=m.line_pitch,
                geom={"x1": cx, "y1": plot_bottom + x_axis.tick_size,
                      "x2": cx, "y2": plot_bottom + x_axis.tick_size + m.line_pitch},
                stroke_width=x_axis.tick_width))
        node = text.node(run, "axisLabel", f"axes.x.labels[{i}]", cx=cx,
                         top=text.slot_top(label_top + row * m.line_pitch),
                         angle=x_axis.label_angle)
        x_label_nodes.append(scene.add("labels", node))

    # y ticks and labels
    y_label_nodes = []
    for i, (run, py) in enumerate(zip(y_label_runs, y_positions)):
        cy = plot_top + py
        scene.add("axes", SceneNode(
            role="axisTick", kind="line", path=f"axes.y.ticks[{i}]",
            x=axis_x - y_axis.tick_size, y=cy, width=y_axis.tick_size, height=0,
            geom={"x1": axis_x - y_axis.tick_size, "y1": cy, "x2": axis_x, "y2": cy},
            stroke_width=y_axis.tick_width))
        node = text.node(run, "axisLabel", f"axes.y.labels[{i}]",
                         right=axis_x - y_axis.tick_size - y_axis.label_padding,
                         cy=cy, angle=y_axis.label_angle)
        y_label_nodes.append(scene.add("labels", node))

    # axis titles
    bottom_edge = label_top + rows_used * m.line_pitch
    if x_axis.title:
        run = text.run(x_axis.title, "axes.x.title")
        left = min(n.x for n in x_label_nodes)
        node = text.node(run, "axisTitle", "axes.x.title", left=left,
                         top=text.slot_top(bottom_edge + x_axis.title_padding),
                         angle=x_axis.title_angle)
        scene.add("labels", node)
        bottom_edge = bottom_edge + x_axis.title_padding + m.line_pitch
    if y_axis.title:
        run = text.run(y_axis.title, "axes.y.title")
        node = text.node(run, "axisTitle", "axes.y.title", left=pad["left"],
                         top=text.slot_top(chart_frame_top),
                         angle=y_axis.title_angle)
        scene.add("labels", node)

    # ---- marks -------------------------------------------------------------
    if mark.type == "bar":
        _build_bars(resolved, plot_table, scene, band_channel, band_domain,
                    x_positions if band_channel == "x" else y_positions,
                    lin_axes, axis_x, plot_top, plot_bottom, plot_w,
                    series_field, series_mapping, group_width, text)
    else:
        _build_lines_or_points(resolved, plot_table, scene, x_axis, y_axis,
                               band_channel, band_domain,
                               x_positions, y_positions, lin_axes,
                               axis_x, plot_top, plot_w, plot_h,
                               series_channel, series_field, series_mapping)

    # ---- frame assembly ----------------------------------------------------
    content_right = axis_x + plot_w
    for _, node in scene.iter_nodes():
        content_right = max(content_right, node.right)
    total_w = content_right + pad["right"]
    total_h = bottom_edge + pad["bottom"]

    scene.width = total_w
    scene.height = total_h
    scene.chart_frame = (pad["left"], chart_frame_top,
                         content_right - pad["left"], bottom_edge - chart_frame_top)
    scene.plot = (axis_x, plot_top, plot_w, plot_h)

    _finish_frame(scene, resolved, text, title_nodes, legend_nodes, legend_box)
    return scene


def _derive_band_step(runs, base_step, stagger_mode, rules: SpacingRules):
    """Band step that fits the labels: full pitch on one row, half when staggered."""
    m = rules.metrics
    widths = [braille.measure_run(r, m)[0] for r in runs]
    step = base_step
    if len(widths) < 2:
        return max(step, widths[0] + rules.min_gap if widths else step)
    pair_need = max((a + b) / 2 + rules.min_gap
                    for a, b in zip(widths, widths[1:]))
    if stagger_mode is False:
        return max(step, pair_need)
    if stagger_mode is True:
        return max(step, pair_need / 2)
    # auto: keep the base step; labels that fit stay on one row, otherwise
    # staggering handles them at half the one-row requirement.
    return max(step, pair_need / 2 if pair_need > base_step else base_step)


def _assemble_top(resolved, text: _Text, scene, rules, series_channel,
                  series_mapping, mark, wrap_width):
    """Title block, legend block; returns chart frame top and the nodes."""
    m = text.m
    cfg = resolved.config
    pad = cfg.padding
    y = pad["top"]
    title_nodes = []
    if resolved.title is not None:
        lines = _wrap_title(resolved.title.lines, text, wrap_width)
        for i, line in enumerate(lines):
            run = text.run(line, f"title.lines[{i}]")
            node = text.node(run, "title", f"title.lines[{i}]",
                             left=0.0, top=text.slot_top(y + i * m.line_pitch))
            title_nodes.append(node)
            scene.add("title", node)
        y += len(lines) * m.line_pitch + cfg.title_offset

    legend_nodes = []
    legend_box = None
    legend = resolved.legend
    if legend is not None and series_mapping:
        kind = {"texture": "texture", "strokeDash": "line", "shape": "shape"}[
            legend.channel]
        mapping = series_mapping
        nodes, w, h = place_legend(legend, mapping, kind, text,
                                   (pad["left"], y), mark)
        for node in nodes:
            scene.add("legend", node)
        legend_nodes = nodes
        legend_box = (pad["left"], y, w, h)
        y += h + legend.offset
    return y, legend_nodes, legend_box, title_nodes


def _wrap_title(lines, text: _Text, wrap_width):
    """Explicit line breaks win; otherwise greedy wrap at spaces."""
    if len(lines) > 1:
        return list(lines)
    words = lines[0].split(" ")
    out = []
    current = ""
    for word in words:
        candidate = word if not current else current + " " + word
        run = braille.translate_text(candidate, text.grade, text.table)
        if braille.ink_extent(run, text.m)[0] <= wrap_width or not current:
            current = candidate
        else:
            out.append(current)
            current = word
    if current:
        out.append(current)
    return out


def _finish_frame(scene: SceneGraph, resolved, text: _Text, title_nodes,
                  legend_nodes, legend_box):
    """Center the title, pin region nodes, once total width is known."""
    for node in title_nodes:
        shift = scene.width / 2 - (node.x + node.width / 2)
        node.x += shift
        node.origin = (node.origin[0] + shift, node.origin[1])
    scene.layers["frame"].insert(0, SceneNode(
        role="frame", kind="region", path="frame",
        x=0, y=0, width=scene.width, height=scene.height))
    x, y, w, h = scene.chart_frame
    scene.layers["frame"].append(SceneNode(
        role="chartFrame", kind="region", path="chartFrame",
        x=x, y=y, width=w, height=h))
    if legend_box is not None:
        lx, ly, lw, lh = legend_box
        scene.layers["frame"].append(SceneNode(
            role="legendBlock", kind="region", path="legendBlock",
            x=lx, y=ly, width=lw, height=lh))


def _build_bars(resolved, plot_table, scene, band_channel, band_domain,
                band_positions_list, lin_axes, axis_x, plot_top, plot_bottom,
                plot_w, series_field, series_mapping, group_width, text):
    mark = resolved.mark
    stacked = mark.grouping == "stacked"
    grouped = mark.grouping == "grouped"
    band_axis = resolved.axes[band_channel]
    value_channel = "y" if band_channel == "x" else "x"
    value_axis = resolved.axes[value_channel]
    domain, ticks = lin_axes[value_channel]
    lo, hi = float(ticks[0]), float(ticks[-1])
    if value_channel == "y":
        scale = LinearScale((lo, hi), (plot_bottom, plot_top))
    else:
        scale = LinearScale((lo, hi), (axis_x, axis_x + plot_w))
    baseline = max(lo, 0.0) if lo <= 0 else lo

    rows_by_band = {v: [] for v in band_domain}
    for row in plot_table.rows:
        key = row.get(band_axis.field)
        if key in rows_by_band:
            rows_by_band[key].append(row)

    idx = 0
    for bi, band_value in enumerate(band_domain):
        center = (axis_x if band_channel == "x" else plot_top) + band_positions_list[bi]
        rows = rows_by_band[band_value]
        if series_mapping is None:
            if len(rows) > 1:
                raise LayoutError(Diagnostic(
                    severity="error", rule_id="layout/ambiguous-bars",
                    message=f"multiple rows for category {band_value!r}; add an "
                            "aggregate or a texture channel",
                    node_path="data"))
            value = _bar_value(rows, value_axis.field, f"category {band_value!r}")
            idx = _emit_bar(scene, idx, band_channel, center, mark.bar_width,
                            scale, baseline, value, "solidGrayFill",
                            mark.outline_width)
        elif stacked:
            cum = baseline
            for sv, texture in series_mapping.items():
                srows = [r for r in rows if r.get(series_field) == sv]
                if not srows:
                    continue
                value = _bar_value(srows, value_axis.field,
                                   f"category {band_value!r} series {sv!r}")
                idx = _emit_bar(scene, idx, band_channel, center, mark.bar_width,
                                scale, cum, cum + value, texture,
                                mark.outline_width)
                cum += value
        elif grouped:
            n_series = len(series_mapping)
            start = center - group_width / 2
            for si, (sv, texture) in enumerate(series_mapping.items()):
                srows = [r for r in rows if r.get(series_field) == sv]
                if not srows:
                    continue
                value = _bar_value(srows, value_axis.field,
                                   f"category {band_value!r} series {sv!r}")
                sub_center = start + si * mark.bar_width + mark.bar_width / 2
                idx = _emit_bar(scene, idx, band_channel, sub_center,
                                mark.bar_width, scale, baseline, value, texture,
                                mark.outline_width)
        else:
            # texture present but one bar per band: texture keyed per row
            for r in rows:
                value = _bar_value([r], value_axis.field,
                                   f"category {band_value!r}")
                texture = series_mapping.get(r.get(series_field), "solidGrayFill")
                idx = _emit_bar(scene, idx, band_channel, center, mark.bar_width,
                                scale, baseline, value, texture,
                                mark.outline_width)


def _emit_bar(scene, idx, band_channel, center, bar_width, scale, v0, v1,
              texture, outline_width):
    p0 = scale.apply(v0)
    p1 = scale.apply(v1)
    if band_channel == "x":
        x = center - bar_width / 2
        y = min(p0, p1)
        w = bar_width
        h = abs(p1 - p0)
    else:
        x = min(p0, p1)
        y = center - bar_width / 2
        w = abs(p1 - p0)
        h = bar_width
    scene.add("marks", SceneNode(
        role="mark", kind="rect", path=f"marks[{idx}]",
        x=x, y=y, width=w, height=h,
        geom={"x": x, "y": y, "w": w, "h": h},
        stroke_width=outline_width, texture=texture, fill="texture",
        mark_kind="bar"))
    return idx + 1


def _build_lines_or_points(resolved, plot_table, scene, x_axis, y_axis,
                           band_channel, band_domain, x_positions, y_positions,
                           lin_axes, axis_x, plot_top, plot_w, plot_h,
                           series_channel, series_field, series_mapping):
    mark = resolved.mark

    def x_of(row):
        if band_channel == "x":
            v = row.get(x_axis.field)
            if v not in band_index:
                return None
            return axis_x + x_positions[band_index[v]]
        v = row.get(x_axis.field)
        if not isinstance(v, (int, float)):
            v = _coerce_number(v)
        if v is None:
            return None
        return axis_x + x_scale.apply(v)

    def y_of(row):
        v = row.get(y_axis.field)
        if not isinstance(v, (int, float)):
            return None
        return plot_top + y_scale_local.apply(v)

    band_index = {v: i for i, v in enumerate(band_domain)} if band_domain else {}
    if band_channel != "x":
        domain, ticks = lin_axes["x"]
        x_scale = LinearScale((float(ticks[0]), float(ticks[-1])), (0.0, plot_w))
    domain, ticks = lin_axes["y"]
    y_scale_local = LinearScale((float(ticks[0]), float(ticks[-1])), (plot_h, 0.0))

    if series_mapping is not None:
        series = list(series_mapping.items())
    else:
        series = [(None, None)]

    idx = 0
    for sv, style in series:
        rows = [r for r in plot_table.rows
                if sv is None or r.get(series_field) == sv]
        if band_channel == "x":
            rows = [r for r in rows if r.get(x_axis.field) in band_index]
            rows.sort(key=lambda r: band_index[r.get(x_axis.field)])
        else:
            rows = [r for r in rows if _coerce_number(r.get(x_axis.field)) is not None]
            rows.sort(key=lambda r: _coerce_number(r.get(x_axis.field)))
        points = []
        for r in rows:
            px, py = x_of(r), y_of(r)
            if px is None or py is None:
                continue
            points.append((px, py))
        if mark.type == "line":
            if len(points) < 2:
                continue
            w = mark.line_stroke_width
            if series_channel == "strokeDash" and style is not None:
                dash = tuple(line_dash_array(style, w)) if isinstance(style, str) \
                    else tuple(style)
                cap = line_cap(style) if isinstance(style, str) else "butt"
            else:
                dash = ()
                cap = "butt"
            xs = [p[0] for p in points]
            ys = [p[1] for p in points]
            scene.add("marks", SceneNode(
                role="mark", kind="polyline", path=f"marks[{idx}]",
                x=min(xs), y=min(ys), width=max(xs) - min(xs),
                height=max(ys) - min(ys),
                geom={"points": points},
                stroke_width=w, dash=dash, cap=cap, fill="none",
                mark_kind="line"))
            idx += 1
        else:
            side = math.sqrt(mark.point_size)
            shape = style if series_channel == "shape" and style else "circle"
            for (px, py) in points:
                scene.add("marks", _shape_node(
                    shape, px, py, side, mark.outline_width, f"marks[{idx}]"))
                idx += 1


def _coerce_number(v):
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return v
    if isinstance(v, str):
        try:
            return float(v)
        except ValueError:
            return None
    return None


def _build_pie(resolved, plot_table, scene, text: _Text, diags):
    mark = resolved.mark
    cfg = resolved.config
    pad = cfg.padding
    rules = text.rules
    theta = resolved.encoding.get("theta")
    series_channel, series_field, series_mapping = _series_info(resolved)

    radius = mark.pie_radius * rules.scale
    plot_w = 2 * radius

    chart_frame_top, legend_nodes, legend_box, title_nodes = _assemble_top(
        resolved, text, scene, rules, series_channel, series_mapping, mark,
        wrap_width=plot_w + 2 * radius)

    cx = pad["left"] + radius
    cy = chart_frame_top + radius

    values = []
    if series_mapping is not None:
        for sv, texture in series_mapping.items():
            rows = [r for r in plot_table.rows if r.get(series_field) == sv]
            total = sum(r.get(theta.field, 0) for r in rows
                        if isinstance(r.get(theta.field), (int, float)))
            values.append((sv, texture, total))
    else:
        for i, r in enumerate(plot_table.rows):
            v = r.get(theta.field)
            if isinstance(v, (int, float)):
                values.append((f"segment {i}", "solidGrayFill", v))
    total = sum(v for _, _, v in values)
    if total <= 0:
        raise LayoutError(Diagnostic(
            severity="error", rule_id="layout/empty-pie",
            message="theta values must sum to a positive number",
            node_path="encoding.theta"))

    angle = -math.pi / 2
    for i, (sv, texture, v) in enumerate(values):
        frac = v / total
        a0, a1 = angle, angle + 2 * math.pi * frac
        angle = a1
        scene.add("marks", SceneNode(
            role="mark", kind="arc", path=f"marks[{i}]",
            x=cx - radius, y=cy - radius, width=2 * radius, height=2 * radius,
            geom={"cx": cx, "cy": cy, "r": radius, "a0": a0, "a1": a1},
            stroke_width=mark.outline_width, texture=texture, fill="texture",
            mark_kind="arc"))

    content_right = cx + radius
    for _, node in scene.iter_nodes():
        content_right = max(content_right, node.right)
    scene.width = content_right + pad["right"]
    scene.height = cy + radius + pad["bottom"]
    scene.chart_frame = (pad["left"], chart_frame_top,
                         content_right - pad["left"],
                         cy + radius - chart_frame_top)
    scene.plot = (cx - radius, cy - radius, 2 * radius, 2 * radius)
    _finish_frame(scene, resolved, text, title_nodes, legend_nodes, legend_box)
    return scene
