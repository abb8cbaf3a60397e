"""CSV and JSON output for search results and conjecture reports."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
from pathlib import Path

from .search import SearchResult

__all__ = [
    "SEARCH_HEADER",
    "HISTOGRAM_HEADER",
    "search_rows",
    "search_csv",
    "histogram_csv",
    "emit_search",
    "search_to_json",
    "search_from_json",
    "reports_to_json",
]

SEARCH_HEADER = ["q", "h", "d", "poly", "unminimized_size", "minimized_size_of_argmax", "bound_total"]
HISTOGRAM_HEADER = ["size", "count"]


def search_rows(results) -> list[list]:
    rows = []
    for r in sorted(results, key=lambda r: (r.q, r.h, r.d)):
        mini = "" if r.minimized_size_of_argmax is None else r.minimized_size_of_argmax
        rows.append([r.q, r.h, r.d, r.argmax_poly, r.max_unminimized_size, mini, r.bound_total])
    return rows


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def search_csv(results) -> str:
    return _csv(SEARCH_HEADER, search_rows(results))


def histogram_csv(histogram: dict) -> str:
    return _csv(HISTOGRAM_HEADER, [[k, histogram[k]] for k in sorted(histogram)])


def search_to_json(result: SearchResult) -> str:
    return json.dumps(result.to_dict(), indent=2, sort_keys=True)


def search_from_json(text: str) -> SearchResult:
    return SearchResult.from_dict(json.loads(text))


def emit_search(result: SearchResult, fmt: str, path) -> list[Path]:
    """Write one result; CSV output also writes ``<stem>.hist.csv`` beside it."""
    path = Path(path)
    if fmt == "json":
        path.write_text(search_to_json(result) + "\n")
        return [path]
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    side = path.with_name(path.stem + ".hist.csv")
    path.write_text(search_csv([result]))
    side.write_text(histogram_csv(result.histogram))
    return [path, side]


def _plain(obj):
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        d = {f.name: _plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        if hasattr(type(obj), "ok"):
            d["ok"] = obj.ok
        return d
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    return obj


def reports_to_json(reports) -> str:
    return json.dumps(_plain(reports), indent=2)
