"""Tactile guideline linter.

Checks a laid-out scene against the hard spatial rules that make a
chart readable by touch.  Rules that indicate an unreadable chart are
errors; rules about comfort or convention are warnings.

R1  minimum blank space between braille and legend elements (warning)
R2  tactile stroke hierarchy: grid < axes <= ticks < plotted lines (error)
R3  bar thickness between 3/8 and 1 inch (warning)
R4  distinguishable symbol budget: 5 textures, 4 line styles, 3 shapes (warning)
R5  legend must come before the chart in reading order (error)
R6  braille must never be rotated (error)
"""

from __future__ import annotations

from .diagnostics import Diagnostic
from .layout import SceneGraph

_EPS = 1e-6

_CIT_SPACING = ("BANA Guidelines and Standards for Tactile Graphics 5.3: "
                "leave at least 1/8 inch of blank space between elements")
_CIT_HIERARCHY = ("BANA Guidelines and Standards for Tactile Graphics "
                  "6.6.4.4 and 6.6.2.2: grid lines weakest, axis lines "
                  "stronger, plotted lines strongest")
_CIT_BAR = ("BANA Guidelines and Standards for Tactile Graphics 6.9.1: "
            "bars between 3/8 inch and 1 inch wide")
_CIT_BUDGET = ("BANA Guidelines and Standards for Tactile Graphics 6.5: "
               "at most 5 area textures, 4 line styles, or 3 point symbols "
               "remain distinguishable by touch")
_CIT_READING = ("BANA Guidelines and Standards for Tactile Graphics 6.4: "
                "the key is placed before the graphic in reading order")
_CIT_ROTATION = ("braille is only legible horizontally; rotated braille "
                 "cannot be read by touch")

_R1_ROLES = ("title", "axisLabel", "axisTitle", "legendTitle",
             "legendLabel", "legendSwatch")


def _gap(a, b):
    """Horizontal and vertical blank space between two boxes (negative when
    they overlap on that axis)."""
    dx = max(b.x - a.right, a.x - b.right)
    dy = max(b.y - a.bottom, a.y - b.bottom)
    return dx, dy


def _lint_spacing(scene: SceneGraph, out: list):
    boxes = [n for n in scene.nodes_by_role(*_R1_ROLES)]
    boxes.sort(key=lambda n: n.path)
    min_gap = scene.rules.min_gap
    for i, a in enumerate(boxes):
        for b in boxes[i + 1:]:
            dx, dy = _gap(a, b)
            if dx < min_gap - _EPS and dy < min_gap - _EPS:
                gap = max(dx, dy)
                out.append(Diagnostic(
                    severity="warning", rule_id="R1",
                    message=(f"{a.path} and {b.path} are closer than "
                             f"{_fmt(min_gap)} px (blank space "
                             f"{_fmt(max(gap, 0.0))} px)"),
                    citation=_CIT_SPACING, node_path=a.path,
                    fix="widen the chart or shorten the labels so elements "
                        "keep 1/8 inch of blank space"))


def _lint_hierarchy(scene: SceneGraph, out: list):
    grids = scene.nodes_by_role("gridLine")
    domains = scene.nodes_by_role("axisDomain")
    ticks = scene.nodes_by_role("axisTick")
    lines = [n for _, n in scene.iter_nodes()
             if n.role == "mark" and n.mark_kind == "line"]
    if domains:
        domain_min = min(n.stroke_width for n in domains)
        domain_max = max(n.stroke_width for n in domains)
        for g in sorted(grids, key=lambda n: n.path):
            if g.stroke_width >= domain_min - _EPS:
                out.append(Diagnostic(
                    severity="error", rule_id="R2",
                    message=(f"grid stroke {_fmt(g.stroke_width)} px is not "
                             f"weaker than the axis stroke "
                             f"{_fmt(domain_min)} px"),
                    citation=_CIT_HIERARCHY, node_path=g.path,
                    fix="reduce the grid width or raise the axis width"))
        if ticks:
            tick_min = min(n.stroke_width for n in ticks)
            if tick_min < domain_max - _EPS:
                offender = min((n for n in ticks
                                if n.stroke_width < domain_max - _EPS),
                               key=lambda n: n.path)
                out.append(Diagnostic(
                    severity="error", rule_id="R2",
                    message=(f"tick stroke {_fmt(tick_min)} px is weaker than "
                             f"the axis stroke {_fmt(domain_max)} px"),
                    citation=_CIT_HIERARCHY, node_path=offender.path,
                    fix="ticks must be at least as strong as the axis line"))
        floor = domain_max
        if grids:
            floor = max(floor, max(n.stroke_width for n in grids))
        for ln in sorted(lines, key=lambda n: n.path):
            if ln.stroke_width <= floor + _EPS:
                out.append(Diagnostic(
                    severity="error", rule_id="R2",
                    message=(f"plotted line stroke {_fmt(ln.stroke_width)} px "
                             f"is not stronger than the axis and grid strokes "
                             f"({_fmt(floor)} px)"),
                    citation=_CIT_HIERARCHY, node_path=ln.path,
                    fix="raise the line mark stroke width above every axis "
                        "and grid stroke"))


def _lint_bar_width(scene: SceneGraph, out: list):
    bars = [n for _, n in scene.iter_nodes()
            if n.role == "mark" and n.mark_kind == "bar"]
    if not bars:
        return
    horizontal = scene.band_axis == "y"
    columns = {}
    for n in bars:
        key = (round(n.y, 4), round(n.height, 4)) if horizontal \
            else (round(n.x, 4), round(n.width, 4))
        columns.setdefault(key, n)
    ordered = sorted(columns.items())
    gaps = []
    for (k1, _), (k2, _) in zip(ordered, ordered[1:]):
        gaps.append(k2[0] - (k1[0] + k1[1]))
    if gaps and all(abs(g) < _EPS for g in gaps):
        return  # touching bars form a histogram; width limits do not apply
    dpi = scene.rules.dpi
    lo, hi = 0.375 * dpi, 1.0 * dpi
    for (pos, thickness), node in ordered:
        if thickness < lo - _EPS or thickness > hi + _EPS:
            out.append(Diagnostic(
                severity="warning", rule_id="R3",
                message=(f"bar thickness {_fmt(thickness)} px is outside the "
                         f"tactile range {_fmt(lo)}..{_fmt(hi)} px"),
                citation=_CIT_BAR, node_path=node.path,
                fix="set the mark width between 3/8 inch and 1 inch"))


def _lint_symbol_budget(scene: SceneGraph, out: list):
    marks = [n for _, n in scene.iter_nodes() if n.role == "mark"]
    textures = []
    dashes = []
    shapes = []
    for n in marks:
        if n.fill == "texture" and n.texture and n.texture not in textures:
            textures.append(n.texture)
        if n.mark_kind == "line" and n.dash not in dashes:
            dashes.append(n.dash)
        if n.mark_kind == "point" and n.kind not in shapes:
            shapes.append(n.kind)
    checks = (
        (textures, 5, "area textures"),
        (dashes, 4, "line styles"),
        (shapes, 3, "point symbols"),
    )
    for used, budget, label in checks:
        if len(used) > budget:
            out.append(Diagnostic(
                severity="warning", rule_id="R4",
                message=(f"{len(used)} {label} in use; at most {budget} stay "
                         f"distinguishable by touch"),
                citation=_CIT_BUDGET, node_path="marks",
                fix="aggregate categories or split the chart"))


def _lint_reading_order(scene: SceneGraph, out: list):
    legend = next((n for n in scene.nodes_by_role("legendBlock")), None)
    chart = next((n for n in scene.nodes_by_role("chartFrame")), None)
    if legend is None or chart is None:
        return
    if legend.bottom > chart.y + _EPS:
        out.append(Diagnostic(
            severity="error", rule_id="R5",
            message="the legend does not precede the chart in reading order",
            citation=_CIT_READING, node_path="legendBlock",
            fix="place the legend block above the chart frame"))


def _lint_rotation(scene: SceneGraph, out: list):
    for _, n in scene.iter_nodes():
        if n.kind == "braille" and (n.angle % 360.0) != 0.0:
            out.append(Diagnostic(
                severity="error", rule_id="R6",
                message=f"braille at {n.path} is rotated by "
                        f"{_fmt(n.angle)} degrees",
                citation=_CIT_ROTATION, node_path=n.path,
                fix="remove the rotation; braille labels must stay horizontal"))


def _fmt(v: float) -> str:
    s = f"{float(v):.2f}".rstrip("0").rstrip(".")
    return s if s not in ("", "-0") else "0"


def lint_scene(scene: SceneGraph) -> list:
    """Run every rule; diagnostics come back ordered by (rule, node path)."""
    out = []
    _lint_spacing(scene, out)
    _lint_hierarchy(scene, out)
    _lint_bar_width(scene, out)
    _lint_symbol_budget(scene, out)
    _lint_reading_order(scene, out)
    _lint_rotation(scene, out)
    out.sort(key=lambda d: (d.rule_id, d.node_path))
    return out
