/** Diagnostics panel helpers.
 *
 * Pure functions: they build display rows and resolve highlight targets,
 * leaving actual DOM wiring to main.ts so the logic stays testable.
 */

import { Diagnostic } from "./api.js";

export interface DiagnosticRow {
  severity: Diagnostic["severity"];
  /** One-line summary: "R3 marks[0] — bar thickness ... px". */
  label: string;
  /** Tooltip body: guideline citation plus the suggested fix. */
  detail: string;
  /** data-path of the scene node to highlight, "" when not addressable. */
  nodePath: string;
}

export function toRow(d: Diagnostic): DiagnosticRow {
  const where = d.nodePath ? ` ${d.nodePath}` : "";
  const detail = [d.citation, d.fix ? `fix: ${d.fix}` : ""]
    .filter(Boolean)
    .join(" — ");
  return {
    severity: d.severity,
    label: `${d.ruleId}${where} — ${d.message}`,
    detail,
    nodePath: d.nodePath,
  };
}

export function toRows(diags: Diagnostic[]): DiagnosticRow[] {
  return diags.map(toRow);
}

export function summarize(diags: Diagnostic[]): string {
  const errors = diags.filter((d) => d.severity === "error").length;
  const warnings = diags.filter((d) => d.severity === "warning").length;
  if (errors === 0 && warnings === 0) {
    return "no diagnostics: the chart passes every tactile guideline check";
  }
  const parts = [];
  if (errors) parts.push(`${errors} error${errors === 1 ? "" : "s"}`);
  if (warnings) parts.push(`${warnings} warning${warnings === 1 ? "" : "s"}`);
  return parts.join(", ");
}

/** Minimal element surface needed for highlighting; a real SVG root
 * satisfies it, and tests can stub it. */
export interface QueryableRoot {
  querySelectorAll(selector: string): Iterable<Element>;
}

/** Find the scene nodes a diagnostic points at inside the rendered SVG.
 * Scene nodes carry their spec path in a data-path attribute; a diagnostic
 * path addresses either one node exactly or a subtree prefix (for paths
 * like "marks" or "encoding.x.axis"). */
export function findHighlightTargets(
  root: QueryableRoot,
  nodePath: string,
): Element[] {
  if (!nodePath) return [];
  const exact = Array.from(
    root.querySelectorAll(`[data-path="${cssEscape(nodePath)}"]`),
  );
  if (exact.length > 0) return exact;
  const all = Array.from(root.querySelectorAll("[data-path]"));
  return all.filter((el) => {
    const p = el.getAttribute("data-path") ?? "";
    return p.startsWith(nodePath + ".") || p.startsWith(nodePath + "[");
  });
}

/** Escape a value for use inside a CSS attribute selector. */
function cssEscape(value: string): string {
  return value.replace(/["\\]/g, (c) => `\\${c}`);
}
