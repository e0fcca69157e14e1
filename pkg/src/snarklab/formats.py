"""Serialization for semi-graphs: canonical JSON, DOT, and graph6.

JSON is the only lossless format (it keeps vertex ids, semi-edges, and
labels).  DOT is for rendering; semi-edges become edges to invisible stub
nodes.  graph6 is the standard 6-bit ASCII encoding for simple graphs and
is only available when the semi-graph is a plain simple graph.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .semigraph import SemiGraph, SemiGraphError, from_data


class FormatError(ValueError):
    """Raised on unsupported exports or malformed imports."""


# -- canonical JSON ----------------------------------------------------------


def to_json_obj(g: SemiGraph) -> dict[str, Any]:
    """Plain-data form: sorted vertices, edges as [u, v(, label)], stubs as [u(, label)]."""
    edges = []
    semis = []
    for lk in g.links():
        lab = g.label_of(lk.id)
        if lk.is_edge:
            u, v = lk.sorted_endpoints()
            edges.append([u, v, lab] if lab is not None else [u, v])
        else:
            semis.append([lk.u, lab] if lab is not None else [lk.u])
    edges.sort(key=lambda e: (e[0], e[1], e[2] if len(e) > 2 else ""))
    semis.sort(key=lambda s: (s[0], s[1] if len(s) > 1 else ""))
    return {
        "vertices": sorted(g.vertices),
        "edges": edges,
        "semi_edges": semis,
    }


def export_json(g: SemiGraph) -> bytes:
    obj = to_json_obj(g)
    return (json.dumps(obj, separators=(",", ":"), sort_keys=True) + "\n").encode()


def import_json(data: bytes | str) -> SemiGraph:
    """Inverse of export_json; link ids are assigned in listing order."""
    try:
        obj = json.loads(data)
        vertices = obj["vertices"]
        edges = [tuple(e) for e in obj["edges"]]
        semis = [tuple(s) for s in obj["semi_edges"]]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise FormatError(f"malformed semi-graph JSON: {exc}") from exc
    try:
        return from_data(vertices, edges, semis)
    except (SemiGraphError, ValueError) as exc:
        raise FormatError(f"inconsistent semi-graph JSON: {exc}") from exc


def digest(g: SemiGraph) -> str:
    """Content hash of the canonical JSON serialization."""
    return hashlib.sha256(export_json(g)).hexdigest()


# -- DOT -----------------------------------------------------------------


def export_dot(g: SemiGraph, name: str = "semigraph") -> bytes:
    """Graphviz output; each semi-edge runs to an invisible point node."""
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for v in sorted(g.vertices):
        lines.append(f'  "{v}";')
    order = g.canonical_link_order()
    for lk in order:
        if lk.is_semi:
            lines.append(
                f'  "__stub{lk.id}" [shape=point, style=invis, width=0, height=0];'
            )
    for lk in order:
        lab = g.label_of(lk.id)
        attr = f' [label="{lab}"]' if lab is not None else ""
        if lk.is_edge:
            u, v = lk.sorted_endpoints()
            lines.append(f'  "{u}" -- "{v}"{attr};')
        else:
            lines.append(f'  "{lk.u}" -- "__stub{lk.id}"{attr};')
    lines.append("}")
    return ("\n".join(lines) + "\n").encode()


# -- graph6 ------------------------------------------------------------------


def _g6_number(n: int) -> bytes:
    if n < 0:
        raise FormatError("graph6: negative order")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    raise FormatError("graph6: order too large")


def export_graph6(g: SemiGraph) -> bytes:
    """Standard graph6 line (no header).  Requires a simple graph."""
    if g.num_semi_edges:
        raise FormatError("graph6 cannot represent semi-edges")
    if not g.is_simple():
        raise FormatError("graph6 cannot represent parallel edges")
    verts = sorted(g.vertices)
    index = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    adj = [[False] * n for _ in range(n)]
    for lk in g.links():
        a, b = index[lk.u], index[lk.v]
        adj[a][b] = adj[b][a] = True
    bits = []
    for v in range(1, n):
        for u in range(v):
            bits.append(1 if adj[u][v] else 0)
    while len(bits) % 6:
        bits.append(0)
    out = bytearray(_g6_number(n))
    for i in range(0, len(bits), 6):
        group = 0
        for b in bits[i : i + 6]:
            group = (group << 1) | b
        out.append(group + 63)
    return bytes(out) + b"\n"


def import_graph6(data: bytes | str) -> SemiGraph:
    """Decode one graph6 line into a simple graph on vertices 0..n-1."""
    if isinstance(data, str):
        data = data.encode()
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise FormatError("graph6: empty input")
    pos = 0
    if data[0] == 126:
        if len(data) < 4:
            raise FormatError("graph6: truncated order")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
    else:
        n = data[0] - 63
        pos = 1
    if n < 0:
        raise FormatError("graph6: bad order byte")
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) < need:
        raise FormatError("graph6: truncated body")
    bits = []
    for ch in body[:need]:
        val = ch - 63
        if not 0 <= val <= 63:
            raise FormatError("graph6: byte out of range")
        bits.extend((val >> k) & 1 for k in range(5, -1, -1))
    edges = []
    i = 0
    for v in range(1, n):
        for u in range(v):
            if bits[i]:
                edges.append((u, v))
            i += 1
    return from_data(range(n), edges, [])


# -- front door --------------------------------------------------------------

_EXPORTERS = {
    "json": export_json,
    "dot": export_dot,
    "graph6": export_graph6,
}


def export(g: SemiGraph, format: str) -> bytes:
    try:
        fn = _EXPORTERS[format]
    except KeyError:
        raise FormatError(f"unknown format {format!r}") from None
    return fn(g)


# -- link assignments (colorings and flows) ----------------------------------
#
# Colors are the letters a, b, c; flow values add "0" for the zero element.
# The wire form is {"assign": {"<link id>": "<letter>"}} for both kinds.

COLOR_LETTERS = {1: "a", 2: "b", 3: "c"}
FLOW_LETTERS = {0: "0", 1: "a", 2: "b", 3: "c"}
_LETTER_VALUES = {v: k for k, v in FLOW_LETTERS.items()}


def assignment_to_json_obj(values: dict[int, int], *, kind: str = "coloring") -> dict[str, Any]:
    letters = COLOR_LETTERS if kind == "coloring" else FLOW_LETTERS
    try:
        assign = {str(lid): letters[val] for lid, val in values.items()}
    except KeyError as exc:
        raise FormatError(f"value {exc.args[0]!r} is not a legal {kind} value") from None
    return {"assign": dict(sorted(assign.items(), key=lambda kv: int(kv[0])))}


def assignment_from_json_obj(data: Any, *, kind: str = "coloring") -> dict[int, int]:
    if not isinstance(data, dict) or not isinstance(data.get("assign"), dict):
        raise FormatError('expected an object of the form {"assign": {...}}')
    out: dict[int, int] = {}
    for key, letter in data["assign"].items():
        try:
            lid = int(key)
            val = _LETTER_VALUES[letter]
        except (ValueError, KeyError, TypeError):
            raise FormatError(f"bad assignment entry {key!r}: {letter!r}") from None
        if kind == "coloring" and val == 0:
            raise FormatError("colorings use the letters a, b, c only")
        out[lid] = val
    return out
