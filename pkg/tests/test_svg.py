"""SVG rendering: determinism, structure, and both braille render modes."""

import re
import xml.etree.ElementTree as ET

import pytest

from conftest import GALLERY_NAMES, compile_json, gallery_spec
from tactilechart.palette import TEXTURES
from tactilechart.svg import (fmt, line_style_swatch_svg, shape_swatch_svg,
                              texture_swatch_svg)

SVGNS = "{http://www.w3.org/2000/svg}"


def strip_ns(tag):
    return tag.split("}")[-1]


class TestNumberFormatting:
    def test_two_decimal_places_max(self):
        assert fmt(1.234567) == "1.23"
        assert fmt(1.235) == "1.24"

    def test_trailing_zeros_dropped(self):
        assert fmt(10.0) == "10"
        assert fmt(10.50) == "10.5"

    def test_negative_zero_normalized(self):
        assert fmt(-0.0001) == "0"
        assert fmt(-0.0) == "0"


class TestDeterminism:
    @pytest.mark.parametrize("name", GALLERY_NAMES)
    def test_same_spec_same_bytes(self, name):
        a = compile_json(gallery_spec(name)).svg
        b = compile_json(gallery_spec(name)).svg
        assert a == b

    def test_key_order_in_spec_does_not_matter(self, bar_spec):
        spec = bar_spec()
        reordered = dict(reversed(list(spec.items())))
        assert compile_json(spec).svg == compile_json(reordered).svg


class TestDocumentStructure:
    @pytest.mark.parametrize("name", GALLERY_NAMES)
    def test_parses_as_xml(self, name):
        root = ET.fromstring(compile_json(gallery_spec(name)).svg)
        assert strip_ns(root.tag) == "svg"
        assert root.get("viewBox")

    def test_layers_are_groups_in_order(self):
        # stacked-bar exercises most layers: staggered month labels bring
        # lead lines, the texture legend brings the legend layer.
        result = compile_json(gallery_spec("stacked-bar"))
        root = ET.fromstring(result.svg)
        layers = [g.get("data-layer") for g in root if strip_ns(g.tag) == "g"]
        assert layers == [
            "frame", "grid-background", "marks",
            "axes", "labels", "lead-lines", "legend", "title"]

    def test_empty_layers_are_omitted(self, bar_spec):
        # No series channel: no legend; labels fit one row: no lead lines.
        root = ET.fromstring(compile_json(bar_spec()).svg)
        layers = [g.get("data-layer") for g in root if strip_ns(g.tag) == "g"]
        assert "legend" not in layers and "lead-lines" not in layers
        assert layers == [
            "frame", "grid-background", "marks", "axes", "labels", "title"]

    def test_foreground_grid_draws_above_marks(self, bar_spec):
        spec = bar_spec(encoding={
            "x": {"field": "cat", "type": "nominal"},
            "y": {"field": "val", "type": "quantitative",
                  "axis": {"style": ["solidGrid", "foregroundGrid"]}},
        })
        root = ET.fromstring(compile_json(spec).svg)
        layers = [g.get("data-layer") for g in root if strip_ns(g.tag) == "g"]
        assert "grid-foreground" in layers
        assert "grid-background" not in layers
        assert layers.index("grid-foreground") > layers.index("marks")

    def test_nodes_carry_data_attributes(self, bar_spec):
        svg = compile_json(bar_spec()).svg
        assert 'data-role="axisDomain"' in svg
        assert 'data-path="axes.x.domain"' in svg
        assert 'data-role="mark"' in svg

    def test_braille_nodes_expose_their_text(self, bar_spec):
        svg = compile_json(bar_spec(title="Harvest")).svg
        assert 'data-text="Harvest"' in svg

    def test_document_title_matches_chart_title(self, bar_spec):
        root = ET.fromstring(compile_json(bar_spec(title="Harvest")).svg)
        title = root.find(f"{SVGNS}title")
        assert title is not None and title.text == "Harvest"

    def test_frame_is_a_white_page(self, bar_spec):
        root = ET.fromstring(compile_json(bar_spec()).svg)
        frame_group = root.find(f"{SVGNS}g[@data-layer='frame']")
        rects = list(frame_group)
        assert rects[0].get("fill") == "white"
        assert float(rects[0].get("width")) == float(root.get("width"))

    def test_root_reports_dpi_and_mode(self, bar_spec):
        root = ET.fromstring(compile_json(bar_spec(), dpi=192).svg)
        assert root.get("data-dpi") == "192"
        assert root.get("data-render-mode") == "dots"


class TestDefs:
    def test_flat_fills_need_no_patterns(self, bar_spec):
        # A single series uses solidGrayFill, which renders as a flat gray
        # rather than a pattern tile, so no <defs> at all.
        svg = compile_json(bar_spec()).svg
        assert "<pattern" not in svg and "<defs>" not in svg

    def test_patterns_follow_catalog_order(self):
        svg = compile_json(gallery_spec("pie")).svg  # five textures
        ids = re.findall(r'<pattern id="tex-([A-Za-z]+)"', svg)
        # solidGrayFill is flat; the other four get pattern tiles.
        assert set(ids) == {"dottedFill", "diagonalLeftFill",
                            "horizontalFill", "denseDottedFill"}
        order = [TEXTURES.index(i) for i in ids]
        assert order == sorted(order)

    def test_solid_gray_renders_mid_gray(self, bar_spec):
        svg = compile_json(bar_spec()).svg
        assert "#808080" in svg

    def test_marks_reference_their_pattern(self):
        svg = compile_json(gallery_spec("pie")).svg
        assert 'fill="url(#tex-dottedFill)"' in svg


class TestRenderModes:
    def test_dots_mode_draws_circles_not_text(self, bar_spec):
        svg = compile_json(bar_spec(), render_mode="dots").svg
        assert "<text" not in svg
        root = ET.fromstring(svg)
        labels = root.find(f"{SVGNS}g[@data-layer='labels']")
        circles = labels.findall(f".//{SVGNS}circle")
        assert circles
        r = {c.get("r") for c in circles}
        assert r == {"3"}  # dot radius = dotDiameter/2 at 96 dpi

    def test_font_mode_emits_text_elements(self, bar_spec):
        svg = compile_json(bar_spec(), render_mode="font").svg
        root = ET.fromstring(svg)
        texts = root.findall(f".//{SVGNS}text")
        assert texts
        t = texts[0]
        assert "Swell Braille" in t.get("font-family")
        assert t.get("font-size") == "24"
        assert t.get("textLength")
        assert t.get("lengthAdjust") == "spacing"

    def test_font_mode_content_is_ascii_braille(self, bar_spec):
        svg = compile_json(bar_spec(title="Harvest"), render_mode="font").svg
        root = ET.fromstring(svg)
        title_group = root.find(f"{SVGNS}g[@data-layer='title']")
        (text,) = title_group.findall(f".//{SVGNS}text")
        assert text.text == ",H>VE/"  # capital sign, 'ar' and 'st' signs

    def test_modes_only_differ_in_label_encoding(self, bar_spec):
        dots = compile_json(bar_spec(), render_mode="dots").svg
        font = compile_json(bar_spec(), render_mode="font").svg
        assert dots != font
        # Geometry layers are unaffected by the braille encoding choice.
        marks = re.compile(r'<g data-layer="marks">.*?</g>', re.S)
        assert marks.search(dots).group() == marks.search(font).group()


class TestArcs:
    def test_single_slice_pie_is_a_circle(self):
        spec = {
            "data": {"values": [{"use": "all", "share": 100}]},
            "mark": "arc",
            "encoding": {"theta": {"field": "share", "type": "quantitative"},
                         "texture": {"field": "use", "type": "nominal"}},
        }
        result = compile_json(spec)
        assert result.ok
        root = ET.fromstring(result.svg)
        marks = root.find(f"{SVGNS}g[@data-layer='marks']")
        kinds = [strip_ns(el.tag) for el in marks]
        assert kinds == ["circle"]

    def test_multi_slice_pie_uses_closed_wedges(self):
        svg = compile_json(gallery_spec("pie")).svg
        paths = re.findall(r'<path d="(M[^"]+)"', svg)
        assert len(paths) == 5
        for d in paths:
            assert " A " in d or "A" in d
            assert d.rstrip().endswith("Z")


class TestSwatchHelpers:
    def test_texture_swatches_are_standalone_svgs(self):
        for tex in TEXTURES:
            root = ET.fromstring(texture_swatch_svg(tex))
            assert strip_ns(root.tag) == "svg"

    def test_line_swatch_shows_the_dash(self):
        svg = line_style_swatch_svg("dashed")
        assert "stroke-dasharray" in svg
        assert "stroke-dasharray" not in line_style_swatch_svg("solid")

    def test_shape_swatches(self):
        for shape, tag in [("circle", "circle"), ("square", "rect"),
                           ("triangle", "polygon")]:
            root = ET.fromstring(shape_swatch_svg(shape))
            assert any(strip_ns(el.tag) == tag for el in root.iter())
