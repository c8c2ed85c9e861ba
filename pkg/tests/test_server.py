"""HTTP compile service endpoints."""

import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from conftest import GALLERY_NAMES, gallery_spec
from tactilechart.server import create_app

FRONTEND_DIST = Path(__file__).resolve().parents[1] / "frontend" / "dist"


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(frontend_dir=None))


class TestCompileEndpoint:
    def test_compiles_a_spec_object(self, client, bar_spec):
        resp = client.post("/compile", json={"spec": bar_spec()})
        assert resp.status_code == 200
        body = resp.json()
        assert body["ok"] is True
        assert body["svg"].startswith("<svg")
        assert body["diagnostics"] == []
        assert body["durationMs"] >= 0

    def test_compiles_a_spec_string(self, client, bar_spec):
        resp = client.post("/compile", json={"spec": json.dumps(bar_spec())})
        assert resp.status_code == 200
        assert resp.json()["ok"] is True

    def test_bad_json_string_reports_parse_diagnostic(self, client):
        resp = client.post("/compile", json={"spec": "{broken"})
        assert resp.status_code == 200  # compile ran; the result says no
        body = resp.json()
        assert body["ok"] is False and body["svg"] is None
        assert body["diagnostics"][0]["ruleId"] == "spec/parse"

    def test_missing_spec_is_rejected(self, client):
        resp = client.post("/compile", json={"options": {}})
        assert resp.status_code == 422
        assert resp.json()["diagnostics"][0]["ruleId"] == "request/spec"

    def test_guideline_errors_come_back_with_the_svg(self, client, bar_spec):
        spec = bar_spec(encoding={
            "x": {"field": "cat", "type": "nominal"},
            "y": {"field": "val", "type": "quantitative",
                  "axis": {"gridWidth": 3}},
        })
        body = client.post("/compile", json={"spec": spec}).json()
        assert body["ok"] is False
        assert body["svg"] is not None
        assert any(d["ruleId"] == "R2" for d in body["diagnostics"])

    def test_options_are_honoured(self, client, bar_spec):
        body = client.post("/compile", json={
            "spec": bar_spec(),
            "options": {"mode": "font", "dpi": 192},
        }).json()
        assert 'data-dpi="192"' in body["svg"]
        assert "<text" in body["svg"]

    def test_same_spec_same_svg_as_direct_compile(self, client, bar_spec):
        from conftest import compile_json
        body = client.post("/compile", json={"spec": bar_spec()}).json()
        assert body["svg"] == compile_json(bar_spec()).svg


class TestPaletteEndpoint:
    def test_lists_full_palette_with_swatches(self, client):
        body = client.get("/palette").json()
        assert len(body["textures"]) == 10
        assert len(body["lineStyles"]) == 4
        assert len(body["shapes"]) == 3
        for group in body.values():
            for entry in group:
                assert entry["swatch"].startswith("<svg")
        assert body["textures"][0]["id"] == "solidGrayFill"


class TestGalleryEndpoints:
    def test_index_lists_every_packaged_spec(self, client):
        body = client.get("/gallery").json()
        assert {e["name"] for e in body} == set(GALLERY_NAMES)
        for entry in body:
            assert entry["title"]

    def test_fetch_one_spec(self, client):
        body = client.get("/gallery/pie").json()
        assert body == gallery_spec("pie")

    def test_unknown_name_404s_with_suggestions(self, client):
        resp = client.get("/gallery/donut")
        assert resp.status_code == 404
        body = resp.json()
        assert "donut" in body["error"]
        assert body["available"] == sorted(GALLERY_NAMES)

    def test_every_gallery_spec_compiles_via_http(self, client):
        for name in GALLERY_NAMES:
            spec = client.get(f"/gallery/{name}").json()
            body = client.post("/compile", json={"spec": spec}).json()
            assert body["ok"] is True, (name, body["diagnostics"])


class TestStaticFrontend:
    def test_serves_a_built_frontend_when_given(self, tmp_path, bar_spec):
        (tmp_path / "index.html").write_text(
            "<!doctype html><title>editor</title>", encoding="utf-8")
        client = TestClient(create_app(frontend_dir=str(tmp_path)))
        resp = client.get("/")
        assert resp.status_code == 200
        assert "editor" in resp.text
        # API routes still win over the static mount.
        assert client.post("/compile",
                           json={"spec": bar_spec()}).json()["ok"] is True

    def test_no_frontend_is_fine(self, client):
        assert client.get("/").status_code == 404

    @pytest.mark.skipif(not (FRONTEND_DIST / "index.html").exists(),
                        reason="frontend not built (run npm run build)")
    def test_serves_the_real_editor_build(self, bar_spec):
        client = TestClient(create_app(frontend_dir=str(FRONTEND_DIST)))
        index = client.get("/")
        assert index.status_code == 200
        assert "spec-editor" in index.text
        # The module script referenced by the shell must resolve.
        js = client.get("/assets/main.js")
        assert js.status_code == 200
        assert "setup" in js.text
        # The compile API keeps priority over the static mount.
        body = client.post("/compile", json={"spec": bar_spec()}).json()
        assert body["ok"] is True and body["svg"].startswith("<svg")
