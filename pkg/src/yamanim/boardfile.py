"""JSON board files: a digraph, a token placement and optional vertex roles.

::

    {
      "vertices": ["v1", "v2"],
      "edges": [["v1", "v2"], ["v2", "v1"]],
      "tokens": {"v1": 5, "v2": 2},
      "roles": {"v1": "x1", "v2": "q1.1"}
    }

``vertices`` fixes the vertex order.  ``tokens`` may omit vertices (they hold
0 tokens); ``roles`` is optional and only written for reduction graphs.
Edges keep their listed order, which is the order successors are enumerated.
"""

from __future__ import annotations

import json
from typing import Any

from .digraph_yama import Digraph, GraphError, Position, validate_graph


class BoardFormatError(ValueError):
    pass


def board_to_dict(g: Digraph, p: Position | None = None,
                  roles: dict[str, str] | None = None) -> dict[str, Any]:
    labels = list(g.labels)
    doc: dict[str, Any] = {
        "vertices": labels,
        "edges": [[labels[a], labels[b]] for a, b in g.edges],
        "tokens": {labels[v]: int(p[v]) if p is not None else 0 for v in range(g.n)},
    }
    if roles is not None:
        doc["roles"] = {lab: roles[lab] for lab in labels}
    return doc


def dump_board(g: Digraph, p: Position | None = None,
               roles: dict[str, str] | None = None) -> str:
    return json.dumps(board_to_dict(g, p, roles), indent=2) + "\n"


def board_from_dict(doc: Any) -> tuple[Digraph, Position, dict[str, str] | None]:
    if not isinstance(doc, dict):
        raise BoardFormatError("board document must be a JSON object")
    unknown = set(doc) - {"vertices", "edges", "tokens", "roles"}
    if unknown:
        raise BoardFormatError(f"unknown fields: {sorted(unknown)}")
    labels = doc.get("vertices")
    if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
        raise BoardFormatError("'vertices' must be a list of strings")
    if len(set(labels)) != len(labels):
        raise BoardFormatError("duplicate vertex labels")
    index = {lab: i for i, lab in enumerate(labels)}

    edges = []
    for e in doc.get("edges", []):
        if not (isinstance(e, list) and len(e) == 2):
            raise BoardFormatError(f"bad edge entry {e!r}")
        a, b = e
        if a not in index or b not in index:
            raise BoardFormatError(f"edge {e!r} names an unknown vertex")
        edges.append((index[a], index[b]))
    g = Digraph.from_edges(len(labels), edges, labels)
    problems = validate_graph(g)
    if problems:
        raise GraphError(problems)

    tokens = [0] * len(labels)
    raw = doc.get("tokens", {})
    if not isinstance(raw, dict):
        raise BoardFormatError("'tokens' must be an object")
    for lab, count in raw.items():
        if lab not in index:
            raise BoardFormatError(f"tokens given for unknown vertex {lab!r}")
        if not isinstance(count, int) or isinstance(count, bool) or count < 0:
            raise BoardFormatError(f"token count for {lab!r} must be a non-negative integer")
        tokens[index[lab]] = count

    roles = doc.get("roles")
    if roles is not None:
        if not isinstance(roles, dict) or set(roles) != set(labels):
            raise BoardFormatError("'roles' must map every vertex label to a role")
    return g, tuple(tokens), roles


def load_board(text: str) -> tuple[Digraph, Position, dict[str, str] | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BoardFormatError(f"invalid JSON: {exc}") from exc
    return board_from_dict(doc)
