"""Tactile texture palette and line dash styles.

Ten area textures and four line styles, chosen so adjacent assignments
contrast under the fingertip.  Pattern tiles are seamless: primitives stay
inside the tile and continue across tile boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass

TEXTURES = (
    "noFill",
    "solidGrayFill",
    "diagonalLeftFill",
    "diagonalRightFill",
    "diamondFill",
    "dottedFill",
    "denseDottedFill",
    "verticalFill",
    "horizontalFill",
    "crossFill",
)

# Assignment order: strongest mutual contrast first (solid area, then dots,
# then line directions, hatchings last).
TEXTURE_ASSIGN_ORDER = (
    "solidGrayFill",
    "dottedFill",
    "diagonalLeftFill",
    "horizontalFill",
    "denseDottedFill",
    "verticalFill",
    "diagonalRightFill",
    "crossFill",
    "diamondFill",
    "noFill",
)

LINE_STYLES = ("solid", "dashed", "dotted", "longDashed")

# Solid first: an unbroken line is the easiest to follow, and every added
# style must contrast with all previous ones.
LINE_STYLE_ASSIGN_ORDER = ("solid", "dashed", "dotted", "longDashed")

SHAPES = ("circle", "square", "triangle")

GRAY_LEVEL = 0.5


class PaletteError(ValueError):
    pass


@dataclass(frozen=True)
class TileLine:
    x1: float
    y1: float
    x2: float
    y2: float
    width: float
    dash: tuple = ()


@dataclass(frozen=True)
class TileDot:
    cx: float
    cy: float
    r: float


@dataclass(frozen=True)
class PatternTile:
    texture: str
    width: float
    height: float
    lines: tuple = ()
    dots: tuple = ()
    gray: float | None = None


_LINE_PITCH = 12.0
_LINE_W = 2.0
_DOT_PITCH = 14.0
_DENSE_DOT_PITCH = 8.0
_DOT_R = 1.5


def _build_tiles():
    tiles = {
        "noFill": PatternTile("noFill", _LINE_PITCH, _LINE_PITCH),
        "solidGrayFill": PatternTile("solidGrayFill", _LINE_PITCH, _LINE_PITCH,
                                     gray=GRAY_LEVEL),
        # Full-diagonal strokes end exactly on tile corners, so the stripe
        # continues into the neighbouring tile.
        "diagonalLeftFill": PatternTile(
            "diagonalLeftFill", _LINE_PITCH, _LINE_PITCH,
            lines=(TileLine(_LINE_PITCH, 0.0, 0.0, _LINE_PITCH, _LINE_W),)),
        "diagonalRightFill": PatternTile(
            "diagonalRightFill", _LINE_PITCH, _LINE_PITCH,
            lines=(TileLine(0.0, 0.0, _LINE_PITCH, _LINE_PITCH, _LINE_W),)),
        "diamondFill": PatternTile(
            "diamondFill", _LINE_PITCH, _LINE_PITCH,
            lines=(
                TileLine(6.0, 0.0, 12.0, 6.0, _LINE_W),
                TileLine(12.0, 6.0, 6.0, 12.0, _LINE_W),
                TileLine(6.0, 12.0, 0.0, 6.0, _LINE_W),
                TileLine(0.0, 6.0, 6.0, 0.0, _LINE_W),
            )),
        "dottedFill": PatternTile(
            "dottedFill", _DOT_PITCH, _DOT_PITCH,
            dots=(TileDot(_DOT_PITCH / 2, _DOT_PITCH / 2, _DOT_R),)),
        "denseDottedFill": PatternTile(
            "denseDottedFill", _DENSE_DOT_PITCH, _DENSE_DOT_PITCH,
            dots=(TileDot(_DENSE_DOT_PITCH / 2, _DENSE_DOT_PITCH / 2, _DOT_R),)),
        "verticalFill": PatternTile(
            "verticalFill", _LINE_PITCH, _LINE_PITCH,
            lines=(TileLine(6.0, 0.0, 6.0, _LINE_PITCH, _LINE_W),)),
        "horizontalFill": PatternTile(
            "horizontalFill", _LINE_PITCH, _LINE_PITCH,
            lines=(TileLine(0.0, 6.0, _LINE_PITCH, 6.0, _LINE_W),)),
        # Dashed vertical strokes: the dash is centered so tiles stack with
        # an even 6px break.
        "crossFill": PatternTile(
            "crossFill", _LINE_PITCH, _LINE_PITCH,
            lines=(TileLine(6.0, 3.0, 6.0, 9.0, _LINE_W),)),
    }
    return tiles


_TILES = _build_tiles()


def texture_pattern(texture_id: str) -> PatternTile:
    try:
        return _TILES[texture_id]
    except KeyError:
        raise PaletteError(f"unknown texture {texture_id!r}")


def line_dash_array(style_id: str, stroke_width: float):
    """Dash array for a line style at a given stroke width.

    Gaps never drop below 2x the stroke width (or a 6px floor) so breaks
    stay resolvable under the fingertip.  Dotted uses near-zero dashes with
    round caps, which embossers raise as a row of dots.
    """
    w = float(stroke_width)
    if w <= 0:
        raise PaletteError("strokeWidth must be positive")
    if style_id == "solid":
        return []
    if style_id == "dashed":
        return [3 * w, max(2 * w, 6.0)]
    if style_id == "dotted":
        return [0.1, max(2 * w, 6.0)]
    if style_id == "longDashed":
        return [6 * w, max(3 * w, 9.0)]
    raise PaletteError(f"unknown line style {style_id!r}")


def line_cap(style_id: str) -> str:
    return "round" if style_id == "dotted" else "butt"
