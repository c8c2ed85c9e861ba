/** DOM wiring for the live editor page. */

import {
  compileSpec,
  fetchGallery,
  fetchGallerySpec,
  fetchPalette,
} from "./api.js";
import { findHighlightTargets, summarize, toRows } from "./diagnostics.js";
import { EditorState, EditorStore } from "./state.js";
import { loadAutosave, saveAutosave } from "./storage.js";

const FALLBACK_SPEC = JSON.stringify(
  {
    title: "Monthly rainfall",
    data: {
      values: [
        { month: "Jan", mm: 78 },
        { month: "Feb", mm: 62 },
        { month: "Mar", mm: 54 },
      ],
    },
    mark: "bar",
    encoding: {
      x: { field: "month", type: "nominal" },
      y: { field: "mm", type: "quantitative" },
    },
  },
  null,
  2,
);

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
}

function download(filename: string, mime: string, content: string): void {
  const blob = new Blob([content], { type: mime });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = filename;
  a.click();
  URL.revokeObjectURL(url);
}

export function setup(): void {
  const editor = byId<HTMLTextAreaElement>("spec-editor");
  const preview = byId<HTMLDivElement>("preview");
  const previewNote = byId<HTMLDivElement>("preview-note");
  const diagnosticsList = byId<HTMLUListElement>("diagnostics");
  const diagnosticsSummary = byId<HTMLDivElement>("diagnostics-summary");
  const banner = byId<HTMLDivElement>("banner");
  const status = byId<HTMLSpanElement>("status");
  const gallerySelect = byId<HTMLSelectElement>("gallery-select");
  const paletteBody = byId<HTMLDivElement>("palette-body");
  const exportSvgBtn = byId<HTMLButtonElement>("export-svg");
  const exportSpecBtn = byId<HTMLButtonElement>("export-spec");

  const store = new EditorStore(compileSpec);

  let renderedSvg: string | null = null;
  const render = (state: Readonly<EditorState>) => {
    if (state.svg !== null && state.svg !== renderedSvg) {
      preview.innerHTML = state.svg;
      renderedSvg = state.svg;
    }
    preview.classList.toggle("stale", state.stale);
    previewNote.textContent = state.stale
      ? "preview is out of date (last good render shown)"
      : "";

    banner.textContent = state.banner ?? "";
    banner.hidden = state.banner === null;

    diagnosticsSummary.textContent = summarize(state.diagnostics);
    diagnosticsList.replaceChildren(
      ...toRows(state.diagnostics).map((row) => {
        const li = document.createElement("li");
        li.className = `diag diag-${row.severity}`;
        li.textContent = row.label;
        if (row.detail) li.title = row.detail;
        if (row.nodePath) {
          li.classList.add("diag-clickable");
          li.addEventListener("click", () => highlight(row.nodePath));
        }
        return li;
      }),
    );

    status.textContent = state.compiling
      ? "compiling…"
      : state.lastDurationMs !== null
        ? `compiled in ${state.lastDurationMs.toFixed(1)} ms`
        : "";

    saveAutosave(window.localStorage, state.specText);
  };

  const highlight = (nodePath: string) => {
    const svgRoot = preview.querySelector("svg");
    if (!svgRoot) return;
    for (const el of preview.querySelectorAll(".diag-highlight")) {
      el.classList.remove("diag-highlight");
    }
    for (const el of findHighlightTargets(svgRoot, nodePath)) {
      el.classList.add("diag-highlight");
    }
  };

  store.subscribe(render);

  editor.addEventListener("input", () => store.setSpecText(editor.value));

  exportSvgBtn.addEventListener("click", () => {
    const svg = store.snapshot.svg;
    if (svg) download("chart.svg", "image/svg+xml", svg);
  });
  exportSpecBtn.addEventListener("click", () => {
    download("chart.json", "application/json", store.snapshot.specText);
  });

  gallerySelect.addEventListener("change", async () => {
    const name = gallerySelect.value;
    if (!name) return;
    try {
      const text = await fetchGallerySpec(name);
      editor.value = text;
      store.setSpecText(text);
      store.flush();
    } catch (err) {
      banner.hidden = false;
      banner.textContent =
        err instanceof Error ? err.message : "failed to load gallery spec";
    }
  });

  void fetchGallery()
    .then((entries) => {
      for (const entry of entries) {
        const opt = document.createElement("option");
        opt.value = entry.name;
        opt.textContent = entry.title;
        gallerySelect.append(opt);
      }
    })
    .catch(() => {
      /* gallery is optional; the editor still works */
    });

  void fetchPalette()
    .then((palette) => {
      const section = (title: string, entries: { id: string; swatch: string }[]) => {
        const h = document.createElement("h3");
        h.textContent = title;
        paletteBody.append(h);
        const grid = document.createElement("div");
        grid.className = "palette-grid";
        for (const entry of entries) {
          const cell = document.createElement("figure");
          cell.innerHTML = entry.swatch;
          const cap = document.createElement("figcaption");
          cap.textContent = entry.id;
          cell.append(cap);
          grid.append(cell);
        }
        paletteBody.append(grid);
      };
      section("area textures (assignment order)", palette.textures);
      section("line styles", palette.lineStyles);
      section("point symbols", palette.shapes);
    })
    .catch(() => {
      paletteBody.textContent = "palette reference unavailable";
    });

  const saved = loadAutosave(window.localStorage);
  const initial = saved && saved.trim() ? saved : FALLBACK_SPEC;
  editor.value = initial;
  store.setSpecText(initial);
  store.flush();
}

setup();
