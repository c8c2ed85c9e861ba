import json
from importlib import resources

import pytest

GALLERY_NAMES = (
    "simple-bar", "grouped-bar", "line-two-series", "line-multi-series",
    "scatter", "pie", "stacked-bar", "bird-lifespan",
)


def gallery_text(name: str) -> str:
    return (resources.files("tactilechart") / "gallery" / f"{name}.json") \
        .read_text(encoding="utf-8")


def gallery_spec(name: str) -> dict:
    return json.loads(gallery_text(name))


@pytest.fixture
def bar_spec():
    """Minimal bar spec factory; callers mutate fields as needed."""
    def make(**overrides):
        spec = {
            "title": "Test chart",
            "data": {"values": [
                {"cat": "a", "val": 10},
                {"cat": "b", "val": 20},
                {"cat": "c", "val": 15},
            ]},
            "mark": "bar",
            "encoding": {
                "x": {"field": "cat", "type": "nominal"},
                "y": {"field": "val", "type": "quantitative"},
            },
        }
        spec.update(overrides)
        return spec
    return make


def compile_json(spec_dict, **options):
    from tactilechart import CompileOptions, compile_text
    return compile_text(json.dumps(spec_dict), CompileOptions(**options))
