"""Defaults resolution: the table, symbol assignment, and idempotence."""

import json

import pytest

from conftest import GALLERY_NAMES, gallery_text
from tactilechart import parse_spec, resolve_defaults
from tactilechart.defaults import (assign_line_styles, assign_shapes,
                                   assign_textures, default_value,
                                   dump_defaults)


class TestDefaultsTable:
    def test_every_entry_has_citation(self):
        for row in dump_defaults():
            assert row["citation"], row["path"]

    def test_key_values(self):
        assert default_value("axis.gridWidth") == 1
        assert default_value("axis.domainWidth") == 2.5
        assert default_value("axis.tickSize") == 26.5
        assert default_value("axis.tickWidth") == 2.5
        assert default_value("axis.labelPadding") == 20
        assert default_value("axis.titlePadding") == 20
        assert default_value("axis.staggerLabels") == "auto"
        assert default_value("axis.titleY") == -10
        assert default_value("title.offset") == 50
        assert default_value("title.fontSize") == 24
        assert default_value("legend.symbolSize") == 3000
        assert default_value("legend.direction") == "vertical"
        assert default_value("legend.orient") == "top-left"
        assert default_value("legend.offset") == 20
        assert default_value("config.padding.top") == 100
        assert default_value("config.padding.left") == 200
        assert default_value("config.font") == "Swell Braille"
        assert default_value("config.brailleTranslation") == "en-ueb-g2.ctb"
        assert default_value("mark.barWidth") == 48
        assert default_value("mark.lineStrokeWidth") == 4


class TestSymbolAssignment:
    def test_single_category_gets_solid_gray(self):
        mapping, diags = assign_textures(["only"])
        assert mapping == {"only": "solidGrayFill"}
        assert diags == []

    def test_assignment_order_is_stable(self):
        mapping, _ = assign_textures(list("abcde"))
        assert list(mapping.values()) == [
            "solidGrayFill", "dottedFill", "diagonalLeftFill",
            "horizontalFill", "denseDottedFill"]

    def test_six_textures_warn_once(self):
        mapping, diags = assign_textures(list("abcdef"))
        assert len(mapping) == 6
        warnings = [d for d in diags if d.severity == "warning"]
        assert len(warnings) == 1
        assert warnings[0].rule_id == "R4"

    def test_user_range_wins(self):
        mapping, diags = assign_textures(
            ["x", "y"], ["dottedFill", "solidGrayFill"])
        assert mapping == {"x": "dottedFill", "y": "solidGrayFill"}
        assert diags == []

    def test_line_styles_budget(self):
        mapping, diags = assign_line_styles(list("abcd"))
        assert list(mapping.values()) == ["solid", "dashed", "dotted",
                                          "longDashed"]
        assert diags == []
        _, diags5 = assign_line_styles(list("abcde"))
        assert any(d.rule_id == "R4" for d in diags5)

    def test_shapes_budget_and_cycling(self):
        mapping, diags = assign_shapes(list("abcd"))
        assert list(mapping.values()) == ["circle", "square", "triangle",
                                          "circle"]
        assert any(d.rule_id == "R4" for d in diags)


class TestResolution:
    def test_empty_config_gets_all_defaults(self, ):
        spec = parse_spec(json.dumps({
            "data": {"values": [{"c": "a", "v": 1}]},
            "mark": "bar",
            "encoding": {"x": {"field": "c", "type": "nominal"},
                         "y": {"field": "v", "type": "quantitative"}},
        }))
        r, diags = resolve_defaults(spec)
        assert diags == []
        assert r.config.font == "Swell Braille"
        assert r.config.braille_translation == "en-ueb-g2.ctb"
        assert r.config.padding == {"top": 100, "bottom": 100,
                                    "left": 200, "right": 200}
        x, y = r.axes["x"], r.axes["y"]
        assert x.kind == "band" and y.kind == "linear"
        assert x.stagger_labels == "auto"
        assert (y.grid_width, y.domain_width, y.tick_size, y.tick_width) == \
            (1, 2.5, 26.5, 2.5)
        assert y.grid is True          # quantitative axes default to a grid
        assert x.grid is False         # band axes do not
        assert (x.label_angle, x.title_angle) == (0, 0)
        assert r.mark.bar_width == 48 and r.mark.bar_gap == 24

    def test_stacked_is_default_for_textured_duplicate_bands(self):
        spec = parse_spec(json.dumps({
            "data": {"values": [
                {"c": "a", "s": "u", "v": 1}, {"c": "a", "s": "w", "v": 2},
                {"c": "b", "s": "u", "v": 3}, {"c": "b", "s": "w", "v": 4}]},
            "mark": "bar",
            "encoding": {"x": {"field": "c", "type": "nominal"},
                         "y": {"field": "v", "type": "quantitative"},
                         "texture": {"field": "s", "type": "nominal"}},
        }))
        r, _ = resolve_defaults(spec)
        assert r.mark.grouping == "stacked"

    def test_explicit_grouping_wins(self):
        spec = parse_spec(json.dumps({
            "data": {"values": [
                {"c": "a", "s": "u", "v": 1}, {"c": "a", "s": "w", "v": 2}]},
            "mark": {"type": "bar", "grouping": "grouped"},
            "encoding": {"x": {"field": "c", "type": "nominal"},
                         "y": {"field": "v", "type": "quantitative"},
                         "texture": {"field": "s", "type": "nominal"}},
        }))
        r, _ = resolve_defaults(spec)
        assert r.mark.grouping == "grouped"

    def test_dotted_grid_style_keyword(self):
        spec = parse_spec(json.dumps({
            "data": {"values": [{"c": "a", "v": 1}]},
            "mark": "bar",
            "encoding": {"x": {"field": "c", "type": "nominal"},
                         "y": {"field": "v", "type": "quantitative",
                               "axis": {"style": ["dottedGrid"]}}},
        }))
        r, _ = resolve_defaults(spec)
        assert r.axes["y"].grid_style == "dottedGrid"
        assert r.axes["y"].grid is True

    @pytest.mark.parametrize("name", GALLERY_NAMES)
    def test_idempotent_on_gallery(self, name):
        spec = parse_spec(gallery_text(name))
        r1, _ = resolve_defaults(spec)
        r2, _ = resolve_defaults(r1.to_spec())
        assert r1 == r2
        r3, _ = resolve_defaults(parse_spec(json.dumps(r1.to_spec().to_json())))
        assert r1 == r3
