from __future__ import annotations

"""Serialisation of Mealy automata: TSV tables, edge lists, DOT and JSON documents."""

import logging
from typing import Any, Dict, List, Optional, Tuple

import graphviz

from .automaton import Mealy
from .errors import SpecParseError
from .ring import format_ring_spec, parse_ring_spec
from .series import SeriesParams

logger = logging.getLogger(__name__)

TABLE_CORNER = "state\\letter"
EDGE_HEADER = ("from", "in", "out", "to")


def _table_tsv(m: Mealy, cells: List[List[str]]) -> str:
    lines = ["\t".join((TABLE_CORNER,) + m.alphabet)]
    for q, row in enumerate(cells):
        lines.append("\t".join([m.states[q]] + row))
    return "\n".join(lines) + "\n"


def transition_table_tsv(m: Mealy) -> str:
    """Rows are states, columns letters, cells the next state."""

    return _table_tsv(m, [[m.states[t] for t in row] for row in m.delta])


def output_table_tsv(m: Mealy) -> str:
    return _table_tsv(m, [[m.alphabet[y] for y in row] for row in m.output])


def tables_tsv(m: Mealy) -> str:
    """Transition table, a blank line, then the output table."""

    return transition_table_tsv(m) + "\n" + output_table_tsv(m)


def edge_list_tsv(m: Mealy) -> str:
    lines = ["\t".join(EDGE_HEADER)]
    for q, x, y, t in m.edges():
        lines.append("\t".join((m.states[q], m.alphabet[x], m.alphabet[y], m.states[t])))
    return "\n".join(lines) + "\n"


def to_dot(m: Mealy, name: str = "A_f", label: Optional[str] = None) -> str:
    """DOT source with one node per state and one ``x|y`` edge per transition."""

    graph_attr = {"rankdir": "LR"}
    if label:
        graph_attr["label"] = label
    g = graphviz.Digraph(name, graph_attr=graph_attr)
    g.attr("node", shape="circle")
    for state in m.states:
        g.node(state)
    for q, x, y, t in m.edges():
        g.edge(m.states[q], m.states[t], label=graphviz.nohtml(f"{m.alphabet[x]}|{m.alphabet[y]}"))
    return g.source


def to_document(m: Mealy, params: Optional[SeriesParams] = None) -> Dict[str, Any]:
    """JSON-ready automaton document; ``ring`` and ``params`` are filled in for ``A_f``."""

    return {
        "ring": format_ring_spec(params.ring) if params else None,
        "params": params.describe() if params else None,
        "alphabet": list(m.alphabet),
        "states": list(m.states),
        "edges": [
            {"from": m.states[q], "in": m.alphabet[x], "out": m.alphabet[y], "to": m.states[t]}
            for q, x, y, t in m.edges()
        ],
    }


def from_document(document: Dict[str, Any]) -> Tuple[Mealy, Optional[SeriesParams]]:
    """Rebuild the automaton (and its parameters, when present) from :func:`to_document` output."""

    try:
        states = tuple(document["states"])
        alphabet = tuple(document["alphabet"])
        edges = document["edges"]
    except (KeyError, TypeError) as exc:
        raise SpecParseError(f"automaton document is missing {exc}") from exc
    state_pos = {label: i for i, label in enumerate(states)}
    letter_pos = {label: i for i, label in enumerate(alphabet)}
    delta: List[List[Optional[int]]] = [[None] * len(alphabet) for _ in states]
    output: List[List[Optional[int]]] = [[None] * len(alphabet) for _ in states]
    try:
        for edge in edges:
            q, x = state_pos[edge["from"]], letter_pos[edge["in"]]
            delta[q][x] = state_pos[edge["to"]]
            output[q][x] = letter_pos[edge["out"]]
    except KeyError as exc:
        raise SpecParseError(f"edge refers to unknown label {exc}") from exc
    if any(v is None for row in delta for v in row):
        raise SpecParseError("automaton document does not define every (state, letter) edge")
    machine = Mealy(states, alphabet, delta, output)

    params = None
    if document.get("ring") and document.get("params"):
        ring = parse_ring_spec(document["ring"])
        raw = document["params"]
        params = SeriesParams.parse(ring, raw["r"], raw["a"], raw["b"])
    logger.debug("📦 Loaded automaton with %d states from document", machine.n_states)
    return machine, params


__all__ = [
    "EDGE_HEADER",
    "TABLE_CORNER",
    "edge_list_tsv",
    "from_document",
    "output_table_tsv",
    "tables_tsv",
    "to_document",
    "to_dot",
    "transition_table_tsv",
]
