"""Tabular data handling and scale arithmetic."""

from __future__ import annotations

import json
import math
import urllib.request
from dataclasses import dataclass


class DataError(ValueError):
    pass


@dataclass(frozen=True)
class DataTable:
    rows: tuple          # row dicts in source order
    fields: tuple        # field names in first-appearance order
    field_types: dict    # field -> "number" | "string"

    def __len__(self):
        return len(self.rows)

    @staticmethod
    def from_records(records) -> "DataTable":
        fields = []
        for row in records:
            if not isinstance(row, dict):
                raise DataError("data rows must be objects")
            for k in row:
                if k not in fields:
                    fields.append(k)
        types = {}
        for f in fields:
            vals = [r[f] for r in records if f in r and r[f] is not None]
            numeric = vals and all(
                isinstance(v, (int, float)) and not isinstance(v, bool) for v in vals)
            types[f] = "number" if numeric else "string"
        return DataTable(tuple(dict(r) for r in records), tuple(fields), types)

    def values(self, field):
        return [r[field] for r in self.rows if field in r and r[field] is not None]


def load_data(data_spec, base_dir=None) -> DataTable:
    """Materialize a data block: inline values or a JSON array from url."""
    if data_spec.values is not None:
        return DataTable.from_records(data_spec.values)
    url = data_spec.url
    try:
        if url.startswith("http://") or url.startswith("https://"):
            with urllib.request.urlopen(url) as resp:
                records = json.loads(resp.read().decode("utf-8"))
        else:
            import os
            path = url if os.path.isabs(url) or base_dir is None \
                else os.path.join(base_dir, url)
            with open(path, encoding="utf-8") as fh:
                records = json.load(fh)
    except OSError as exc:
        raise DataError(f"cannot load data from {url!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"data at {url!r} is not valid JSON: {exc}") from exc
    if not isinstance(records, list):
        raise DataError("data url must point to a JSON array of objects")
    return DataTable.from_records(records)


def aggregate_rows(table: DataTable, group_by, field, op) -> DataTable:
    """Group rows and fold one field.

    Groups appear in first-appearance order of their keys.  An empty
    group_by collapses the whole table to a single row.  The aggregated
    value keeps the source field name ("count" when no field is given).
    """
    if op not in ("average", "mean", "sum", "count", "min", "max"):
        raise DataError(f"unknown aggregate op {op!r}")
    group_by = list(group_by)
    groups = {}
    order = []
    for row in table.rows:
        key = tuple(row.get(g) for g in group_by)
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(row)
    out_field = field if field else "count"
    out = []
    for key in order:
        rows = groups[key]
        if op == "count":
            value = len(rows)
        else:
            vals = [r[field] for r in rows if field in r and r[field] is not None]
            if not vals:
                raise DataError(f"no values to aggregate for field {field!r}")
            if op in ("average", "mean"):
                value = sum(vals) / len(vals)
            elif op == "sum":
                value = sum(vals)
            elif op == "min":
                value = min(vals)
            else:
                value = max(vals)
        new_row = {g: k for g, k in zip(group_by, key)}
        new_row[out_field] = value
        out.append(new_row)
    return DataTable.from_records(out)


def infer_domain(table: DataTable, field, field_type, mark="bar",
                 explicit=None, sort=None):
    """Domain for an encoding.

    Quantitative domains are [min(0, data min), data max]; bar and arc
    marks always keep the zero baseline, while line and point marks may
    start at the data min when all values are positive and tightly
    clustered (spread/min < 0.2).  Categorical domains follow the sort
    list when given, else first appearance.  An explicit scale domain
    always wins.
    """
    if explicit is not None:
        return list(explicit)
    if field_type == "quantitative":
        vals = [v for v in table.values(field)
                if isinstance(v, (int, float)) and not isinstance(v, bool)]
        if not vals:
            raise DataError(f"no numeric values for field {field!r}")
        lo, hi = min(vals), max(vals)
        if mark in ("line", "point") and lo > 0 and (hi - lo) / lo < 0.2:
            return [lo, hi]
        return [min(0, lo), hi]
    seen = []
    for v in table.values(field):
        if v not in seen:
            seen.append(v)
    if sort:
        missing = [v for v in seen if v not in sort]
        if missing:
            raise DataError(f"sort order for {field!r} is missing values: {missing}")
        return [v for v in sort if v in seen] + [v for v in sort if v not in seen]
    return seen


def nice_ticks(domain, requested_count):
    """Evenly spaced ticks at a {1,2,5}x10^k step covering the domain.

    Picks the step whose covering tick count is closest to the request;
    ties go to the fewer-tick (larger step) candidate.  Zero is always a
    tick when the domain spans it, because the grid of step multiples
    includes zero.
    """
    lo, hi = float(domain[0]), float(domain[1])
    if math.isnan(lo) or math.isnan(hi):
        raise DataError("domain must be finite")
    if lo > hi:
        lo, hi = hi, lo
    if requested_count < 1:
        raise DataError("tick count must be at least 1")
    if lo == hi:
        return [lo]
    span = hi - lo
    best = None
    k0 = int(math.floor(math.log10(span))) - 2
    for k in range(k0, k0 + 5):
        for m in (1, 2, 5):
            step = m * 10.0 ** k
            first = math.floor(lo / step + 1e-9)
            last = math.ceil(hi / step - 1e-9)
            count = last - first + 1
            if count < 2:
                continue
            key = (abs(count - requested_count), count)
            if best is None or key < best[0]:
                best = (key, step, first, last)
    _, step, first, last = best
    ticks = [_clean(i * step) for i in range(first, last + 1)]
    return ticks


def _clean(v: float):
    """Strip float noise from tick values; keep ints as ints."""
    r = round(v, 10)
    if r == int(r):
        return int(r)
    return r


def band_positions(domain, step, band_width, origin=0.0):
    """Center of each band: origin + i*step + step/2, in domain order."""
    if step <= 0:
        raise DataError("band step must be positive")
    if band_width > step:
        raise DataError("band width cannot exceed the band step")
    return {v: origin + i * step + step / 2 for i, v in enumerate(domain)}


@dataclass(frozen=True)
class LinearScale:
    domain: tuple
    range: tuple

    def apply(self, v: float) -> float:
        d0, d1 = self.domain
        r0, r1 = self.range
        if d1 == d0:
            return (r0 + r1) / 2
        return r0 + (float(v) - d0) / (d1 - d0) * (r1 - r0)
