"""File formats and reports.

All inputs are UTF-8 JSON documents.

Poset file::

    {"elements": ["1", "2", "3"], "covers": [["1", "2"], ["1", "3"]]}

``[a, b]`` means ``a`` covers ``b``.  An optional ``"name"`` is carried
into reports.

Dynkin spec file::

    {"type": "D", "rank": 4, "orientation": "><<"}

NRF data file (schema ``rowcox.nrf/1``)::

    {"schema": "rowcox.nrf/1", "n": 1, "labels": [...],
     "projective": [true, ...], "injective": [false, ...],
     "hom_dims": [[...], ...], "nu": {"P1": "t1P2", ...},
     "tau_n": {"t1P2": "P2", ...}}

``hom_dims[i][j]`` is ``dim Hom(M_i, M_j)``; ``nu`` sends projectives to
injectives and ``tau_n`` sends non-projectives to non-injectives.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .dynkin import ARQuiverData
from .errors import MalformedData, ParseError
from .linalg import IntPolynomial, PermutationMatrix, RationalMatrix
from .poset import Poset, build_poset

REPORT_SCHEMA = "rowcox.report/1"
NRF_SCHEMA = "rowcox.nrf/1"


def _load_json(source) -> Any:
    if isinstance(source, (str, Path)) and not str(source).lstrip().startswith(("{", "[")):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {source}: {exc.strerror or exc}") from None
    elif isinstance(source, (str, bytes)):
        text = source
    else:
        return source
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


# -- posets -----------------------------------------------------------------------

@dataclass(frozen=True)
class PosetFile:
    poset: Poset
    name: str | None = None


def parse_poset(source) -> PosetFile:
    """Read a poset from a path, a JSON string, or an already decoded dict."""
    doc = _load_json(source)
    if not isinstance(doc, dict):
        raise ParseError("a poset document must be a JSON object")
    elements = doc.get("elements")
    covers = doc.get("covers", [])
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise ParseError("'elements' must be an array of strings")
    if not isinstance(covers, list) or not all(
        isinstance(c, list) and len(c) == 2 and all(isinstance(x, str) for x in c) for c in covers
    ):
        raise ParseError("'covers' must be an array of [upper, lower] string pairs")
    name = doc.get("name")
    return PosetFile(build_poset(elements, [tuple(c) for c in covers]), name if isinstance(name, str) else None)


def poset_document(poset: Poset, name: str | None = None) -> dict:
    doc = {
        "elements": [str(e) for e in poset.elements],
        "covers": [[str(a), str(b)] for a, b in poset.cover_pairs()],
    }
    if name:
        doc["name"] = name
    return doc


# -- Dynkin specs -------------------------------------------------------------------

@dataclass(frozen=True)
class DynkinSpec:
    kind: str
    rank: int
    orientation: str | None = None

    @property
    def name(self) -> str:
        return f"{self.kind}{self.rank}"


def parse_dynkin_spec(source) -> DynkinSpec:
    doc = _load_json(source)
    if not isinstance(doc, dict):
        raise ParseError("a Dynkin spec must be a JSON object")
    kind, rank, orient = doc.get("type"), doc.get("rank"), doc.get("orientation")
    if not isinstance(kind, str) or not isinstance(rank, int) or isinstance(rank, bool):
        raise ParseError("a Dynkin spec needs a string 'type' and an integer 'rank'")
    if orient is not None and not isinstance(orient, str):
        raise ParseError("'orientation' must be a string of '<' and '>'")
    return DynkinSpec(kind.upper(), rank, orient)


# -- NRF data ------------------------------------------------------------------------

def _label_map(doc, key, index) -> dict[int, int]:
    raw = doc.get(key)
    if not isinstance(raw, dict):
        raise MalformedData(f"'{key}' must be an object mapping labels to labels")
    try:
        return {index[a]: index[b] for a, b in raw.items()}
    except (KeyError, TypeError):
        raise MalformedData(f"'{key}' mentions an unknown label") from None


def parse_nrf(source) -> ARQuiverData:
    """Read NRF data; every structural problem raises MalformedData."""
    try:
        doc = _load_json(source)
    except ParseError as exc:
        raise MalformedData(str(exc)) from None
    if not isinstance(doc, dict):
        raise MalformedData("an NRF document must be a JSON object")
    if doc.get("schema", NRF_SCHEMA) != NRF_SCHEMA:
        raise MalformedData(f"unsupported schema {doc.get('schema')!r}")
    n, labels = doc.get("n"), doc.get("labels")
    if not isinstance(n, int) or isinstance(n, bool):
        raise MalformedData("'n' must be an integer")
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise MalformedData("'labels' must be an array of strings")
    index = {x: i for i, x in enumerate(labels)}
    flags = {}
    for key in ("projective", "injective"):
        arr = doc.get(key)
        if not isinstance(arr, list) or not all(isinstance(b, bool) for b in arr):
            raise MalformedData(f"'{key}' must be an array of booleans")
        flags[key] = arr
    homs = doc.get("hom_dims")
    if not isinstance(homs, list) or not all(
        isinstance(r, list) and all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in r) for r in homs
    ):
        raise MalformedData("'hom_dims' must be a matrix of non-negative integers")
    nu = _label_map(doc, "nu", index)
    tau = _label_map(doc, "tau_n", index)
    tau_inv = {b: a for a, b in tau.items()}
    if len(tau_inv) != len(tau):
        raise MalformedData("'tau_n' is not injective")
    data = ARQuiverData(
        labels=list(labels),
        is_projective=flags["projective"],
        is_injective=flags["injective"],
        tau_inv=tau_inv,
        nu=nu,
        hom_dims=homs,
        n=n,
    )
    try:
        RationalMatrix(homs).inverse()
    except ValueError:
        raise MalformedData("'hom_dims' is singular") from None
    return data


def nrf_document(data: ARQuiverData) -> dict:
    labels = data.labels
    return {
        "schema": NRF_SCHEMA,
        "n": data.n,
        "labels": list(labels),
        "projective": list(data.is_projective),
        "injective": list(data.is_injective),
        "hom_dims": [list(r) for r in data.hom_dims],
        "nu": {labels[a]: labels[b] for a, b in sorted(data.nu.items())},
        "tau_n": {labels[a]: labels[b] for a, b in sorted(data.tau.items())},
    }


# -- reports -------------------------------------------------------------------------

def to_plain(value):
    """Convert results to JSON-ready values (matrices, polynomials, permutations)."""
    if isinstance(value, RationalMatrix):
        return value.to_json()
    if isinstance(value, IntPolynomial):
        return {"coefficients": value.to_json(), "text": str(value)}
    if isinstance(value, PermutationMatrix):
        return list(value.image)
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return sorted(to_plain(v) for v in value)
    return value


@dataclass
class Report:
    """Structured run report; the JSON form is canonical (sorted keys, no timestamps)."""

    command: dict
    results: Any
    summary: dict = field(default_factory=dict)
    exit_code: int = 0
    schema: str = REPORT_SCHEMA

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "command": to_plain(self.command),
            "results": to_plain(self.results),
            "summary": to_plain(self.summary),
            "exit_code": self.exit_code,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Report:
        doc = json.loads(text)
        if doc.get("schema") != REPORT_SCHEMA:
            raise ParseError(f"unsupported report schema {doc.get('schema')!r}")
        return cls(doc["command"], doc["results"], doc["summary"], doc["exit_code"], doc["schema"])

    def render_human(self) -> str:
        lines = [f"rowcox {self.command.get('name', '')}".rstrip()]
        _render(self.to_dict()["results"], lines, 0)
        if self.summary:
            lines.append("summary:")
            _render(to_plain(self.summary), lines, 1)
        lines.append("status: " + {0: "pass", 1: "FAIL", 2: "error"}.get(self.exit_code, str(self.exit_code)))
        return "\n".join(lines) + "\n"


def _is_number(x) -> bool:
    if isinstance(x, bool):
        return False
    return isinstance(x, int) or (isinstance(x, str) and re.fullmatch(r"-?\d+/\d+", x) is not None)


def _is_matrix(v) -> bool:
    return isinstance(v, list) and bool(v) and all(isinstance(r, list) and r and all(map(_is_number, r)) for r in v)


def _render(value, lines: list[str], depth: int):
    pad = "  " * depth
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, dict) and set(v) == {"coefficients", "text"}:
                lines.append(f"{pad}{k}: {v['text']}")
            elif _is_matrix(v):
                lines.append(f"{pad}{k}:")
                width = max(len(str(x)) for r in v for x in r)
                lines.extend(pad + "  " + " ".join(str(x).rjust(width) for x in r) for r in v)
            elif isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                _render(v, lines, depth + 1)
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                _render(item, lines, depth + 1)
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(pad + _inline(value))


def _inline(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, dict):
        return ", ".join(f"{k} -> {_inline(x)}" for k, x in v.items())
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    return str(v)


# -- bundled corpus --------------------------------------------------------------------

def ship_corpus() -> dict[str, dict[str, Path]]:
    """Bundled input files by category (``posets``, ``dynkin``, ``nrf``)."""
    root = resources.files("rowcox") / "data"
    out: dict[str, dict[str, Path]] = {}
    for category in ("posets", "dynkin", "nrf"):
        folder = root / category
        out[category] = {
            entry.name.removesuffix(".json"): Path(str(entry))
            for entry in sorted(folder.iterdir(), key=lambda e: e.name)
            if entry.name.endswith(".json")
        }
    return out
