"""Six-dot braille translation, encoding and dot geometry.

Cells are integer masks 0..63: dot n (1..6) sets bit n-1, matching the
Unicode braille block layout (U+2800 + mask).  Dots 1-3 are the left
column top to bottom, dots 4-6 the right column.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass


class BrailleError(ValueError):
    pass


class UnsupportedCharacterError(BrailleError):
    def __init__(self, char: str, offset: int):
        super().__init__(f"unsupported character {char!r} at offset {offset}")
        self.char = char
        self.offset = offset


def dots_to_mask(dots: str) -> int:
    mask = 0
    for d in dots:
        if d not in "123456":
            raise BrailleError(f"bad dot number {d!r} in {dots!r}")
        mask |= 1 << (int(d) - 1)
    return mask


def mask_to_dots(mask: int) -> str:
    return "".join(str(n) for n in range(1, 7) if mask & (1 << (n - 1)))


# Standard six-dot letter cells.
LETTER_DOTS = {
    "a": "1", "b": "12", "c": "14", "d": "145", "e": "15",
    "f": "124", "g": "1245", "h": "125", "i": "24", "j": "245",
    "k": "13", "l": "123", "m": "134", "n": "1345", "o": "135",
    "p": "1234", "q": "12345", "r": "1235", "s": "234", "t": "2345",
    "u": "136", "v": "1236", "w": "2456", "x": "1346", "y": "13456",
    "z": "1356",
}

# Digits reuse the a-j cells behind a numeric indicator.
DIGIT_DOTS = {
    "1": "1", "2": "12", "3": "14", "4": "145", "5": "15",
    "6": "124", "7": "1245", "8": "125", "9": "24", "0": "245",
}

# Unified English punctuation.  Values are cell sequences: most signs are
# one cell, brackets and a few symbols are two.
PUNCTUATION_DOTS = {
    ",": ["2"],
    ";": ["23"],
    ":": ["25"],
    ".": ["256"],
    "!": ["235"],
    "?": ["236"],
    "'": ["3"],
    "-": ["36"],
    "(": ["5", "126"],
    ")": ["5", "345"],
    "/": ["456", "34"],
    "$": ["4", "234"],
    "%": ["46", "356"],
    "&": ["4", "12346"],
    "*": ["5", "35"],
}

CAPITAL_DOTS = "6"
NUMERIC_DOTS = "3456"

# Common contracted-grade signs: the five strong contractions, the strong
# groupsigns, two lower groupsigns safe under plain longest-match, and the
# dot-5 initial-letter words.  Output length never exceeds input length,
# which keeps contracted runs no longer than uncontracted ones.
CONTRACTION_DOTS = [
    ("and", ["12346"]),
    ("for", ["123456"]),
    ("of", ["12356"]),
    ("the", ["2346"]),
    ("with", ["23456"]),
    ("ch", ["16"]),
    ("gh", ["126"]),
    ("sh", ["146"]),
    ("th", ["1456"]),
    ("wh", ["156"]),
    ("ed", ["1246"]),
    ("er", ["12456"]),
    ("ou", ["1256"]),
    ("ow", ["246"]),
    ("st", ["34"]),
    ("ar", ["345"]),
    ("ing", ["346"]),
    ("en", ["26"]),
    ("in", ["35"]),
    ("character", ["5", "16"]),
    ("day", ["5", "145"]),
    ("ever", ["5", "15"]),
    ("father", ["5", "124"]),
    ("here", ["5", "125"]),
    ("know", ["5", "13"]),
    ("lord", ["5", "123"]),
    ("mother", ["5", "134"]),
    ("name", ["5", "1345"]),
    ("one", ["5", "135"]),
    ("ought", ["5", "1256"]),
    ("part", ["5", "1234"]),
    ("question", ["5", "12345"]),
    ("right", ["5", "1235"]),
    ("some", ["5", "234"]),
    ("there", ["5", "2346"]),
    ("through", ["5", "1456"]),
    ("time", ["5", "2345"]),
    ("under", ["5", "136"]),
    ("where", ["5", "156"]),
    ("work", ["5", "2456"]),
    ("young", ["5", "13456"]),
]

# North American ASCII braille: one printable character per cell mask.
ASCII_BRF_DOTS = {
    " ": "", "A": "1", "B": "12", "C": "14", "D": "145", "E": "15",
    "F": "124", "G": "1245", "H": "125", "I": "24", "J": "245",
    "K": "13", "L": "123", "M": "134", "N": "1345", "O": "135",
    "P": "1234", "Q": "12345", "R": "1235", "S": "234", "T": "2345",
    "U": "136", "V": "1236", "W": "2456", "X": "1346", "Y": "13456",
    "Z": "1356",
    "1": "2", "2": "23", "3": "25", "4": "256", "5": "26",
    "6": "235", "7": "2356", "8": "236", "9": "35", "0": "356",
    "!": "2346", '"': "5", "#": "3456", "$": "1246", "%": "146",
    "&": "12346", "'": "3", "(": "12356", ")": "23456", "*": "16",
    "+": "346", ",": "6", "-": "36", ".": "46", "/": "34",
    ":": "156", ";": "56", "<": "126", "=": "123456", ">": "345",
    "?": "1456", "@": "4", "[": "246", "\\": "1256", "]": "12456",
    "^": "45", "_": "456",
}

_BRF_BY_MASK = {dots_to_mask(d): ch for ch, d in ASCII_BRF_DOTS.items()}
assert len(_BRF_BY_MASK) == 64


@dataclass(frozen=True)
class TranslationTable:
    table_id: str
    letters: dict
    digits: dict
    punctuation: dict
    capital: int
    numeric: int
    contractions: tuple  # ((pattern, (mask, ...)), ...) longest pattern first

    @staticmethod
    def build(table_id, letter_dots, digit_dots, punct_dots, capital_dots,
              numeric_dots, contraction_dots):
        letters = {c: dots_to_mask(d) for c, d in letter_dots.items()}
        digits = {c: dots_to_mask(d) for c, d in digit_dots.items()}
        punct = {}
        for ch, seq in punct_dots.items():
            if isinstance(seq, str):
                seq = [seq]
            punct[ch] = tuple(dots_to_mask(d) for d in seq)
        contractions = []
        for pattern, seq in contraction_dots:
            if isinstance(seq, str):
                seq = [seq]
            cells = tuple(dots_to_mask(d) for d in seq)
            if len(cells) > len(pattern):
                raise BrailleError(
                    f"contraction {pattern!r} expands to more cells than letters")
            contractions.append((pattern, cells))
        # Longest-match-first; pattern text breaks length ties deterministically.
        contractions.sort(key=lambda pc: (-len(pc[0]), pc[0]))
        return TranslationTable(
            table_id=table_id,
            letters=letters,
            digits=digits,
            punctuation=punct,
            capital=dots_to_mask(capital_dots),
            numeric=dots_to_mask(numeric_dots),
            contractions=tuple(contractions),
        )


_UEB_G2 = TranslationTable.build(
    "en-ueb-g2.ctb", LETTER_DOTS, DIGIT_DOTS, PUNCTUATION_DOTS,
    CAPITAL_DOTS, NUMERIC_DOTS, CONTRACTION_DOTS)
_UEB_G1 = TranslationTable.build(
    "en-ueb-g1.ctb", LETTER_DOTS, DIGIT_DOTS, PUNCTUATION_DOTS,
    CAPITAL_DOTS, NUMERIC_DOTS, [])

_BUILTIN_TABLES = {
    "en-ueb-g2.ctb": _UEB_G2,
    "en-ueb-g1.ctb": _UEB_G1,
}


def builtin_table(table_id: str) -> TranslationTable:
    try:
        return _BUILTIN_TABLES[table_id]
    except KeyError:
        raise BrailleError(f"unknown built-in translation table {table_id!r}")


def load_table(path: str) -> TranslationTable:
    """Load a translation table from a JSON file.

    Maps are char -> dot-number string ("2346"); punctuation values and
    contraction replacements may also be lists of dot strings for
    multi-cell signs.  Contractions are ordered [pattern, dots] pairs.
    """
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    return TranslationTable.build(
        raw.get("tableId", path),
        raw.get("letterMap", {}),
        raw.get("digitMap", {}),
        raw.get("punctuationMap", {}),
        raw.get("capitalIndicator", CAPITAL_DOTS),
        raw.get("numericIndicator", NUMERIC_DOTS),
        [tuple(pair) for pair in raw.get("contractions", [])],
    )


def table_grade(table: TranslationTable) -> int:
    return 2 if table.contractions else 1


@dataclass(frozen=True)
class BrailleRun:
    """A translated line of braille: source text plus its cell masks."""
    text: str
    cells: tuple
    grade: int
    table_id: str

    def __len__(self):
        return len(self.cells)


@dataclass(frozen=True)
class BrailleMetrics:
    """Embosser-oriented dot geometry in pixels.

    Sized for 96 dpi: a 23px cell pitch is just under the 1/4 inch of a
    standard braille cell, and braille may never be scaled down, so all
    layout space derives from these values rather than the other way round.
    """
    dot_diameter: float = 6.0
    dot_pitch: float = 9.0
    cell_pitch: float = 23.0
    line_pitch: float = 38.0
    font_size: float = 24.0

    def __post_init__(self):
        if not (self.dot_pitch < self.cell_pitch < self.line_pitch):
            raise BrailleError("metrics must satisfy dotPitch < cellPitch < linePitch")

    @staticmethod
    def for_dpi(dpi: float) -> "BrailleMetrics":
        s = dpi / 96.0
        return BrailleMetrics(6.0 * s, 9.0 * s, 23.0 * s, 38.0 * s, 24.0 * s)


_DIGIT_RUN = re.compile(r"\d+(?:\.\d+)*")
_LETTER_RUN = re.compile(r"[A-Za-z]+")


def _contract(word: str, table: TranslationTable, grade: int, base_offset: int):
    """Translate a lowercase letter sequence, longest contraction first."""
    cells = []
    i = 0
    n = len(word)
    while i < n:
        if grade >= 2:
            matched = False
            for pattern, repl in table.contractions:
                if word.startswith(pattern, i):
                    cells.extend(repl)
                    i += len(pattern)
                    matched = True
                    break
            if matched:
                continue
        ch = word[i]
        try:
            cells.append(table.letters[ch])
        except KeyError:
            raise UnsupportedCharacterError(ch, base_offset + i)
        i += 1
    return cells


def _split_cased(word: str):
    """Split a letter run before each internal lowercase->uppercase boundary."""
    pieces = []
    start = 0
    for i in range(1, len(word)):
        if word[i].isupper() and word[i - 1].islower():
            pieces.append((start, word[start:i]))
            start = i
    pieces.append((start, word[start:]))
    return pieces


def translate_text(text: str, grade: int = 2,
                   table: TranslationTable | None = None) -> BrailleRun:
    """Translate one line of text to braille cells.

    Each capital letter is preceded by the capital indicator; a run of two
    or more capitals gets the doubled capital-word indicator instead.  Each
    maximal digit run (decimal points included) gets exactly one numeric
    indicator.  Grade 2 applies longest-match contractions, then falls back
    to single letters.
    """
    if grade not in (1, 2):
        raise BrailleError(f"grade must be 1 or 2, got {grade!r}")
    if table is None:
        table = _UEB_G2 if grade == 2 else _UEB_G1
    cells = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isdigit():
            m = _DIGIT_RUN.match(text, i)
            run = m.group(0)
            cells.append(table.numeric)
            for j, c in enumerate(run):
                if c == ".":
                    cells.extend(table.punctuation["."])
                else:
                    try:
                        cells.append(table.digits[c])
                    except KeyError:
                        raise UnsupportedCharacterError(c, i + j)
            i = m.end()
            continue
        if ch.isalpha() and ch.isascii():
            m = _LETTER_RUN.match(text, i)
            word = m.group(0)
            if len(word) >= 2 and word.isupper():
                cells.append(table.capital)
                cells.append(table.capital)
                cells.extend(_contract(word.lower(), table, grade, i))
            else:
                for off, piece in _split_cased(word):
                    if piece[0].isupper():
                        cells.append(table.capital)
                    cells.extend(_contract(piece.lower(), table, grade, i + off))
            i = m.end()
            continue
        if ch == " ":
            cells.append(0)
            i += 1
            continue
        seq = table.punctuation.get(ch)
        if seq is None:
            raise UnsupportedCharacterError(ch, i)
        cells.extend(seq)
        i += 1
    return BrailleRun(text=text, cells=tuple(cells), grade=grade,
                      table_id=table.table_id)


def encode_run(run: BrailleRun, fmt: str = "unicode") -> str:
    """Encode cells as Unicode braille or ASCII-BRF characters."""
    if fmt == "unicode":
        return "".join(chr(0x2800 + m) for m in run.cells)
    if fmt == "ascii-brf":
        return "".join(_BRF_BY_MASK[m] for m in run.cells)
    raise BrailleError(f"unknown encoding format {fmt!r}")


def measure_run(run: BrailleRun, metrics: BrailleMetrics):
    """Advance box of one braille line: cells x cellPitch wide, linePitch tall."""
    return (len(run.cells) * metrics.cell_pitch, metrics.line_pitch)


def ink_extent(run: BrailleRun, metrics: BrailleMetrics):
    """Tight box around the embossed dots (assumes worst case: all dots raised)."""
    n = len(run.cells)
    if n == 0:
        return (0.0, 0.0)
    w = (n - 1) * metrics.cell_pitch + metrics.dot_pitch + metrics.dot_diameter
    h = 2 * metrics.dot_pitch + metrics.dot_diameter
    return (w, h)


def run_to_dots(run: BrailleRun, metrics: BrailleMetrics, origin=(0.0, 0.0)):
    """Dot circles for a run.

    The origin is the center of dot 1 of the first cell.  Dot (col, row)
    of cell i is centered at origin + (i*cellPitch + col*dotPitch,
    row*dotPitch).
    """
    ox, oy = origin
    dots = []
    for i, mask in enumerate(run.cells):
        for dot in range(1, 7):
            if mask & (1 << (dot - 1)):
                col = 0 if dot <= 3 else 1
                row = (dot - 1) % 3
                dots.append((ox + i * metrics.cell_pitch + col * metrics.dot_pitch,
                             oy + row * metrics.dot_pitch,
                             metrics.dot_diameter))
    return dots
