"""Diagnostic records shared by the spec validator, resolver and linter."""

from __future__ import annotations

from dataclasses import dataclass

SEVERITIES = ("error", "warning", "info")


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    rule_id: str
    message: str
    citation: str = ""
    node_path: str = ""
    fix: str = ""

    def to_json(self) -> dict:
        # Stable key order; JSON field names are the external contract.
        out = {
            "severity": self.severity,
            "ruleId": self.rule_id,
            "message": self.message,
            "citation": self.citation,
            "nodePath": self.node_path,
        }
        if self.fix:
            out["fix"] = self.fix
        return out

    def format_text(self) -> str:
        parts = [self.severity, self.rule_id]
        if self.node_path:
            parts.append(self.node_path)
        line = " ".join(parts) + ": " + self.message
        if self.citation:
            line += " [" + self.citation + "]"
        return line


def has_errors(diags) -> bool:
    return any(d.severity == "error" for d in diags)


def dedupe_by_rule(diags):
    """Keep the first diagnostic per rule id.

    Count-style warnings can surface both at assignment time and from the
    scene linter; reporting them once keeps CLI output one line per problem.
    """
    seen = set()
    out = []
    for d in diags:
        key = d.rule_id
        if key.startswith("R") and key in seen:
            continue
        seen.add(key)
        out.append(d)
    return out
