"""Instance file format (v1) and the generic third-party importer.

v1 is line-oriented UTF-8 with '#' comments:

    ecc 1
    nodes <n>
    colors <k>
    e <color_id> <weight> <node_id>+     # one line per edge

Weights are exact: an integer or num/den. Parse errors carry line and column.
"""

from __future__ import annotations

import re
from typing import Optional

from .core import EdgeColoredHypergraph, build_instance
from .rational import format_q, parse_q


class FormatError(ValueError):
    """Syntax error in an instance or report file (CLI exit code 2)."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


_TOKEN = re.compile(r"\S+")


def _tokenize(text: str):
    """Yield (line_no, [(token, column), ...]) for non-empty, non-comment lines."""
    for line_no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [(mo.group(), mo.start() + 1) for mo in _TOKEN.finditer(body)]
        if toks:
            yield line_no, toks


def _int_token(tok: str, line: int, col: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected {what}, got {tok!r}", line, col) from None


def parse_instance(text: str) -> EdgeColoredHypergraph:
    """Parse v1 text. Syntax errors raise FormatError; semantic errors
    (ranges, weights) are delegated to build_instance."""
    lines = _tokenize(text)
    try:
        line_no, toks = next(lines)
    except StopIteration:
        raise FormatError("empty file, expected 'ecc 1' header") from None
    if [t for t, _ in toks] != ["ecc", "1"]:
        raise FormatError("expected header 'ecc 1'", line_no, toks[0][1])

    def header(name: str) -> int:
        try:
            line_no, toks = next(lines)
        except StopIteration:
            raise FormatError(f"missing '{name} <count>' header") from None
        if toks[0][0] != name or len(toks) != 2:
            raise FormatError(f"expected '{name} <count>'", line_no, toks[0][1])
        return _int_token(toks[1][0], line_no, toks[1][1], "an integer")

    n = header("nodes")
    k = header("colors")
    edges = []
    for line_no, toks in lines:
        if toks[0][0] != "e":
            raise FormatError(f"expected an 'e' edge line, got {toks[0][0]!r}", line_no, toks[0][1])
        if len(toks) < 4:
            raise FormatError("edge line needs a color, a weight and at least one node", line_no, toks[0][1])
        color = _int_token(toks[1][0], line_no, toks[1][1], "a color id")
        try:
            weight = parse_q(toks[2][0])
        except ValueError:
            raise FormatError(f"bad weight {toks[2][0]!r}", line_no, toks[2][1]) from None
        members = [_int_token(t, line_no, c, "a node id") for t, c in toks[3:]]
        edges.append((members, color, weight))
    return build_instance(n, k, edges)


def emit_instance(h: EdgeColoredHypergraph) -> str:
    out = ["ecc 1", f"nodes {h.node_count}", f"colors {h.num_colors}"]
    for e, members in enumerate(h.edge_members):
        nodes = " ".join(str(v) for v in members)
        out.append(f"e {h.edge_colors[e]} {format_q(h.edge_weights[e])} {nodes}")
    return "\n".join(out) + "\n"


def load_instance(path) -> EdgeColoredHypergraph:
    with open(path, "r", encoding="utf-8") as fp:
        return parse_instance(fp.read())


def save_instance(h: EdgeColoredHypergraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        fp.write(emit_instance(h))


def import_simple(text: str) -> tuple[EdgeColoredHypergraph, list[str], list[str]]:
    """Two-column importer: `color_label <TAB> node_label[,node_label...]`
    per edge, unit weights, ids interned in first-appearance order.

    Returns (instance, node_labels, color_labels).
    """
    node_ids: dict[str, int] = {}
    color_ids: dict[str, int] = {}
    edges = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "\t" not in line:
            raise FormatError("expected 'color<TAB>node[,node...]'", line_no)
        color_label, nodes_part = line.split("\t", 1)
        color_label = color_label.strip()
        if not color_label:
            raise FormatError("empty color label", line_no)
        labels = [s.strip() for s in nodes_part.split(",")]
        labels = [s for s in labels if s]
        if not labels:
            raise FormatError("no node labels", line_no)
        members = []
        for lab in labels:
            if lab not in node_ids:
                node_ids[lab] = len(node_ids)
            members.append(node_ids[lab])
        if color_label not in color_ids:
            color_ids[color_label] = len(color_ids)
        edges.append((members, color_ids[color_label], 1))
    h = build_instance(len(node_ids), max(len(color_ids), 1), edges)
    return h, list(node_ids), list(color_ids)
