import { describe, expect, it } from "vitest";

import { Diagnostic } from "../src/api.js";
import {
  findHighlightTargets,
  QueryableRoot,
  summarize,
  toRow,
  toRows,
} from "../src/diagnostics.js";

const R3: Diagnostic = {
  severity: "warning",
  ruleId: "R3",
  message: "bar thickness 120 px is outside the tactile range 36..96 px",
  citation: "bars between 3/8 inch and 1 inch",
  nodePath: "marks[0]",
  fix: "set the mark width between 3/8 inch and 1 inch",
};

describe("diagnostic rows", () => {
  it("builds a one-line label with rule, node and message", () => {
    const row = toRow(R3);
    expect(row.label).toBe(
      "R3 marks[0] — bar thickness 120 px is outside the tactile range 36..96 px",
    );
    expect(row.severity).toBe("warning");
    expect(row.nodePath).toBe("marks[0]");
    expect(row.detail).toContain("3/8 inch");
    expect(row.detail).toContain("fix:");
  });

  it("omits the node segment when there is none", () => {
    const row = toRow({ ...R3, nodePath: "", fix: undefined });
    expect(row.label.startsWith("R3 — ")).toBe(true);
    expect(row.nodePath).toBe("");
  });

  it("maps lists in order", () => {
    const rows = toRows([R3, { ...R3, ruleId: "R6", severity: "error" }]);
    expect(rows.map((r) => r.label.slice(0, 2))).toEqual(["R3", "R6"]);
  });
});

describe("summarize", () => {
  it("celebrates a clean chart", () => {
    expect(summarize([])).toMatch(/no diagnostics/);
  });

  it("counts errors and warnings", () => {
    const error = { ...R3, severity: "error" as const };
    expect(summarize([error, R3, R3])).toBe("1 error, 2 warnings");
    expect(summarize([R3])).toBe("1 warning");
  });
});

/** Tiny stand-in for an SVG root: enough querySelectorAll for the two
 * selector shapes the highlighter uses. */
function fakeRoot(paths: string[]): {
  root: QueryableRoot;
  highlighted: () => string[];
} {
  const classes = new Map<string, Set<string>>();
  const elements = paths.map((p) => {
    classes.set(p, new Set());
    return {
      getAttribute: (name: string) => (name === "data-path" ? p : null),
      classList: {
        add: (c: string) => classes.get(p)!.add(c),
        remove: (c: string) => classes.get(p)!.delete(c),
      },
    } as unknown as Element;
  });
  const root: QueryableRoot = {
    querySelectorAll(selector: string) {
      const exact = selector.match(/^\[data-path="(.*)"\]$/);
      if (exact) {
        const want = exact[1].replace(/\\(.)/g, "$1");
        return elements.filter(
          (el) => el.getAttribute("data-path") === want,
        );
      }
      if (selector === "[data-path]") return elements;
      return [];
    },
  };
  return {
    root,
    highlighted: () =>
      paths.filter((p) => classes.get(p)!.has("diag-highlight")),
  };
}

describe("findHighlightTargets", () => {
  it("matches a node path exactly", () => {
    const { root } = fakeRoot(["marks[0]", "marks[1]", "axes.x.domain"]);
    const targets = findHighlightTargets(root, "marks[0]");
    expect(targets.map((t) => t.getAttribute("data-path"))).toEqual(
      ["marks[0]"],
    );
  });

  it("falls back to subtree prefixes", () => {
    const { root } = fakeRoot([
      "axes.x.labels[0]",
      "axes.x.labels[1]",
      "axes.y.labels[0]",
      "marks[0]",
    ]);
    const targets = findHighlightTargets(root, "axes.x.labels");
    expect(targets.map((t) => t.getAttribute("data-path"))).toEqual([
      "axes.x.labels[0]",
      "axes.x.labels[1]",
    ]);
  });

  it("does not treat a name prefix as a subtree", () => {
    const { root } = fakeRoot(["marksExtra", "marks[0]"]);
    const targets = findHighlightTargets(root, "marks");
    expect(targets.map((t) => t.getAttribute("data-path"))).toEqual(
      ["marks[0]"],
    );
  });

  it("returns nothing for an empty path", () => {
    const { root } = fakeRoot(["marks[0]"]);
    expect(findHighlightTargets(root, "")).toEqual([]);
  });

  it("drives classList toggling end to end", () => {
    const { root, highlighted } = fakeRoot(["marks[0]", "marks[1]"]);
    for (const el of findHighlightTargets(root, "marks[1]")) {
      el.classList.add("diag-highlight");
    }
    expect(highlighted()).toEqual(["marks[1]"]);
  });
});
