"""Deterministic SVG rendering of a layout scene.

The same scene always renders to byte-identical markup: numbers are
formatted to at most two decimals, texture definitions appear in the
fixed palette order, and nothing iterates over unordered collections.
Every element carries ``data-role`` and ``data-path`` attributes so
editors can map markup back to the spec that produced it.
"""

from __future__ import annotations

import math

from . import braille
from .layout import SceneGraph, SceneNode
from .palette import GRAY_LEVEL, TEXTURES, texture_pattern

_PATTERN_PREFIX = "tex-"


def fmt(v: float) -> str:
    """Fixed two-decimal formatting with trailing zeros trimmed."""
    s = f"{float(v):.2f}"
    s = s.rstrip("0").rstrip(".")
    if s in ("-0", ""):
        return "0"
    return s


def _esc(text: str) -> str:
    return (str(text).replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;").replace('"', "&quot;"))


def _gray_hex(level: float) -> str:
    v = round(255 * (1 - level))
    return f"#{v:02x}{v:02x}{v:02x}"


def _fill_attr(node: SceneNode) -> str:
    if node.fill == "texture":
        tex = node.texture
        if tex == "noFill":
            return "white"
        if tex == "solidGrayFill":
            return _gray_hex(GRAY_LEVEL)
        return f"url(#{_PATTERN_PREFIX}{tex})"
    return node.fill or "none"


def _stroke_attrs(node: SceneNode) -> str:
    parts = []
    if node.stroke_width:
        parts.append(f' stroke="black" stroke-width="{fmt(node.stroke_width)}"')
    if node.dash:
        parts.append(f' stroke-dasharray="{" ".join(fmt(d) for d in node.dash)}"')
    if node.cap and node.cap != "butt":
        parts.append(f' stroke-linecap="{node.cap}"')
    return "".join(parts)


def _data_attrs(node: SceneNode) -> str:
    out = f' data-role="{_esc(node.role)}" data-path="{_esc(node.path)}"'
    if node.run is not None:
        out += f' data-text="{_esc(node.run.text)}"'
    return out


def _transform(node: SceneNode) -> str:
    if not node.angle:
        return ""
    cx = node.x + node.width / 2
    cy = node.y + node.height / 2
    return f' transform="rotate({fmt(node.angle)} {fmt(cx)} {fmt(cy)})"'


def _arc_path(geom: dict) -> str:
    cx, cy, r = geom["cx"], geom["cy"], geom["r"]
    a0, a1 = geom["a0"], geom["a1"]
    if a1 - a0 >= 2 * math.pi - 1e-9:
        return ""  # full circle handled by caller
    x0 = cx + r * math.cos(a0)
    y0 = cy + r * math.sin(a0)
    x1 = cx + r * math.cos(a1)
    y1 = cy + r * math.sin(a1)
    large = 1 if (a1 - a0) > math.pi else 0
    return (f"M {fmt(cx)} {fmt(cy)} L {fmt(x0)} {fmt(y0)} "
            f"A {fmt(r)} {fmt(r)} 0 {large} 1 {fmt(x1)} {fmt(y1)} Z")


def _render_braille(node: SceneNode, scene: SceneGraph, out: list):
    m = scene.rules.metrics
    data = _data_attrs(node) + _transform(node)
    if scene.render_mode == "font":
        ascii_text = braille.encode_run(node.run, "ascii-brf")
        length = len(node.run.cells) * m.cell_pitch
        out.append(
            f'<text x="{fmt(node.x)}" y="{fmt(node.y + node.height)}" '
            f'font-family="{_esc(scene.font)}" font-size="{fmt(m.font_size)}" '
            f'textLength="{fmt(length)}" lengthAdjust="spacing" '
            f'fill="black"{data}>{_esc(ascii_text)}</text>')
        return
    dots = braille.run_to_dots(node.run, m, node.origin)
    out.append(f"<g{data}>")
    for (cx, cy, d) in dots:
        out.append(f'<circle cx="{fmt(cx)}" cy="{fmt(cy)}" r="{fmt(d / 2)}" '
                   f'fill="black"/>')
    out.append("</g>")


def _render_node(node: SceneNode, scene: SceneGraph, out: list):
    data = _data_attrs(node) + _transform(node)
    stroke = _stroke_attrs(node)
    kind = node.kind
    if kind == "region":
        fill = "white" if node.role == "frame" else "none"
        out.append(f'<rect x="{fmt(node.x)}" y="{fmt(node.y)}" '
                   f'width="{fmt(node.width)}" height="{fmt(node.height)}" '
                   f'fill="{fill}" stroke="none"{data}/>')
    elif kind == "line":
        g = node.geom
        out.append(f'<line x1="{fmt(g["x1"])}" y1="{fmt(g["y1"])}" '
                   f'x2="{fmt(g["x2"])}" y2="{fmt(g["y2"])}"{stroke}{data}/>')
    elif kind == "rect":
        g = node.geom
        out.append(f'<rect x="{fmt(g["x"])}" y="{fmt(g["y"])}" '
                   f'width="{fmt(g["w"])}" height="{fmt(g["h"])}" '
                   f'fill="{_fill_attr(node)}"{stroke}{data}/>')
    elif kind == "circle":
        g = node.geom
        out.append(f'<circle cx="{fmt(g["cx"])}" cy="{fmt(g["cy"])}" '
                   f'r="{fmt(g["r"])}" fill="{_fill_attr(node)}"{stroke}{data}/>')
    elif kind == "polygon":
        pts = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in node.geom["points"])
        out.append(f'<polygon points="{pts}" fill="{_fill_attr(node)}"'
                   f'{stroke}{data}/>')
    elif kind == "polyline":
        pts = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in node.geom["points"])
        out.append(f'<polyline points="{pts}" fill="none"{stroke}{data}/>')
    elif kind == "arc":
        g = node.geom
        d = _arc_path(g)
        if not d:
            out.append(f'<circle cx="{fmt(g["cx"])}" cy="{fmt(g["cy"])}" '
                       f'r="{fmt(g["r"])}" fill="{_fill_attr(node)}"'
                       f'{stroke}{data}/>')
        else:
            out.append(f'<path d="{d}" fill="{_fill_attr(node)}"{stroke}{data}/>')
    elif kind == "braille":
        _render_braille(node, scene, out)
    else:  # pragma: no cover - scene builder only emits the kinds above
        raise ValueError(f"unknown scene node kind: {kind}")


def _render_defs(scene: SceneGraph, out: list):
    used = set()
    for _, node in scene.iter_nodes():
        if node.fill == "texture" and node.texture not in ("noFill", "solidGrayFill"):
            used.add(node.texture)
    ordered = [t for t in TEXTURES if t in used]
    if not ordered:
        return
    out.append("<defs>")
    for tex in ordered:
        tile = texture_pattern(tex)
        out.append(f'<pattern id="{_PATTERN_PREFIX}{tex}" '
                   f'width="{fmt(tile.width)}" height="{fmt(tile.height)}" '
                   f'patternUnits="userSpaceOnUse">')
        for ln in tile.lines:
            dash = (f' stroke-dasharray="{" ".join(fmt(d) for d in ln.dash)}"'
                    if ln.dash else "")
            out.append(f'<line x1="{fmt(ln.x1)}" y1="{fmt(ln.y1)}" '
                       f'x2="{fmt(ln.x2)}" y2="{fmt(ln.y2)}" stroke="black" '
                       f'stroke-width="{fmt(ln.width)}"{dash}/>')
        for dot in tile.dots:
            out.append(f'<circle cx="{fmt(dot.cx)}" cy="{fmt(dot.cy)}" '
                       f'r="{fmt(dot.r)}" fill="black"/>')
        out.append("</pattern>")
    out.append("</defs>")


def _pattern_markup(tex: str) -> str:
    tile = texture_pattern(tex)
    parts = [f'<pattern id="{_PATTERN_PREFIX}{tex}" width="{fmt(tile.width)}" '
             f'height="{fmt(tile.height)}" patternUnits="userSpaceOnUse">']
    for ln in tile.lines:
        dash = (f' stroke-dasharray="{" ".join(fmt(d) for d in ln.dash)}"'
                if ln.dash else "")
        parts.append(f'<line x1="{fmt(ln.x1)}" y1="{fmt(ln.y1)}" '
                     f'x2="{fmt(ln.x2)}" y2="{fmt(ln.y2)}" stroke="black" '
                     f'stroke-width="{fmt(ln.width)}"{dash}/>')
    for dot in tile.dots:
        parts.append(f'<circle cx="{fmt(dot.cx)}" cy="{fmt(dot.cy)}" '
                     f'r="{fmt(dot.r)}" fill="black"/>')
    parts.append("</pattern>")
    return "".join(parts)


def texture_swatch_svg(texture_id: str, width: float = 96,
                       height: float = 48) -> str:
    """Small standalone SVG showing one area texture."""
    if texture_id == "noFill":
        fill, defs = "white", ""
    elif texture_id == "solidGrayFill":
        fill, defs = _gray_hex(GRAY_LEVEL), ""
    else:
        fill = f"url(#{_PATTERN_PREFIX}{texture_id})"
        defs = f"<defs>{_pattern_markup(texture_id)}</defs>"
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{fmt(width)}" '
            f'height="{fmt(height)}" viewBox="0 0 {fmt(width)} {fmt(height)}">'
            f'{defs}<rect x="1" y="1" width="{fmt(width - 2)}" '
            f'height="{fmt(height - 2)}" fill="{fill}" stroke="black" '
            f'stroke-width="2"/></svg>')


def line_style_swatch_svg(style_id: str, width: float = 120,
                          height: float = 24, stroke_width: float = 4) -> str:
    """Small standalone SVG showing one tactile line style."""
    from .palette import line_cap, line_dash_array
    dash = line_dash_array(style_id, stroke_width)
    cap = line_cap(style_id)
    attrs = f' stroke-dasharray="{" ".join(fmt(d) for d in dash)}"' if dash else ""
    if cap != "butt":
        attrs += f' stroke-linecap="{cap}"'
    y = height / 2
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{fmt(width)}" '
            f'height="{fmt(height)}" viewBox="0 0 {fmt(width)} {fmt(height)}">'
            f'<line x1="4" y1="{fmt(y)}" x2="{fmt(width - 4)}" y2="{fmt(y)}" '
            f'stroke="black" stroke-width="{fmt(stroke_width)}"{attrs}/></svg>')


def shape_swatch_svg(shape_id: str, side: float = 32,
                     stroke_width: float = 2) -> str:
    """Small standalone SVG showing one point symbol."""
    pad = 4
    size = side + 2 * pad
    c = size / 2
    half = side / 2
    if shape_id == "circle":
        body = (f'<circle cx="{fmt(c)}" cy="{fmt(c)}" r="{fmt(half)}" '
                f'fill="none" stroke="black" stroke-width="{fmt(stroke_width)}"/>')
    elif shape_id == "square":
        body = (f'<rect x="{fmt(pad)}" y="{fmt(pad)}" width="{fmt(side)}" '
                f'height="{fmt(side)}" fill="none" stroke="black" '
                f'stroke-width="{fmt(stroke_width)}"/>')
    else:
        pts = f"{fmt(c)},{fmt(pad)} {fmt(pad)},{fmt(size - pad)} {fmt(size - pad)},{fmt(size - pad)}"
        body = (f'<polygon points="{pts}" fill="none" stroke="black" '
                f'stroke-width="{fmt(stroke_width)}"/>')
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{fmt(size)}" '
            f'height="{fmt(size)}" viewBox="0 0 {fmt(size)} {fmt(size)}">'
            f'{body}</svg>')


def render_svg(scene: SceneGraph) -> str:
    """Render the scene to a self-contained SVG document string."""
    w, h = fmt(scene.width), fmt(scene.height)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}" data-dpi="{fmt(scene.rules.dpi)}" '
        f'data-render-mode="{_esc(scene.render_mode)}">'
    ]
    titles = [n.run.text for n in scene.nodes_by_role("title") if n.run]
    if titles:
        out.append(f"<title>{_esc(' '.join(titles))}</title>")
    _render_defs(scene, out)
    for layer_name in scene.layers:
        nodes = scene.layers[layer_name]
        if not nodes:
            continue
        out.append(f'<g data-layer="{_esc(layer_name)}">')
        for node in nodes:
            _render_node(node, scene, out)
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
