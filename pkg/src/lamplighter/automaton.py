from __future__ import annotations

"""Finite Mealy automata and the automaton ``A_f`` of a rational series.

A :class:`Mealy` machine keeps its tables as tuples of indices into the state
and letter label tuples, so every operation here is a pure function of
immutable values.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .errors import NotInvertible, StructureMismatch
from .ring import format_element, ring_tables
from .series import SeriesParams

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
Bijections = Tuple[Tuple[int, ...], Tuple[int, ...]]


@dataclass(frozen=True)
class Mealy:
    """``(Q, X, delta, output)`` with ``delta[q][x]`` and ``output[q][x]`` as indices."""

    states: Tuple[str, ...]
    alphabet: Tuple[str, ...]
    delta: Tuple[Tuple[int, ...], ...]
    output: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        object.__setattr__(self, "output", tuple(tuple(row) for row in self.output))
        if len(set(self.states)) != len(self.states):
            raise StructureMismatch("state labels must be unique")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise StructureMismatch("letter labels must be unique")
        n, k = len(self.states), len(self.alphabet)
        for name, table, bound in (("delta", self.delta, n), ("output", self.output, k)):
            if len(table) != n or any(len(row) != k for row in table):
                raise StructureMismatch(f"{name} must be a total {n}x{k} table")
            if any(not 0 <= v < bound for row in table for v in row):
                raise StructureMismatch(f"{name} has an entry outside [0, {bound})")

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def n_letters(self) -> int:
        return len(self.alphabet)

    def state_index(self, label: str) -> int:
        try:
            return self.states.index(label)
        except ValueError as exc:
            raise StructureMismatch(f"unknown state {label!r}") from exc

    def letter_index(self, label: str) -> int:
        try:
            return self.alphabet.index(label)
        except ValueError as exc:
            raise StructureMismatch(f"unknown letter {label!r}") from exc

    def edges(self) -> List[Tuple[int, int, int, int]]:
        """``(from, in, out, to)`` in state-major, letter-minor order."""

        return [
            (q, x, self.output[q][x], self.delta[q][x])
            for q in range(self.n_states)
            for x in range(self.n_letters)
        ]


def build_af(params: SeriesParams) -> Mealy:
    """``A_f`` over all of ``R``: ``delta(s, x) = sb + x`` and ``output(s, x) = r(x + (b-a)s)``."""

    tables = ring_tables(params.ring)
    r = tables.index[params.r]
    b = tables.index[params.b]
    b_minus_a = tables.index[params.b - params.a]
    n = tables.size
    delta = tuple(tuple(tables.add[tables.mul[s][b]][x] for x in range(n)) for s in range(n))
    output = tuple(
        tuple(tables.mul[r][tables.add[x][tables.mul[b_minus_a][s]]] for x in range(n)) for s in range(n)
    )
    labels = tuple(format_element(e) for e in tables.elements)
    logger.debug("🧮 Built A_f for %s with %d states", params, n)
    return Mealy(labels, labels, delta, output)


def run(m: Mealy, q: int, word: Sequence[int]) -> Word:
    if not 0 <= q < m.n_states:
        raise StructureMismatch(f"state index {q} outside [0, {m.n_states})")
    out = []
    for x in word:
        if not 0 <= x < m.n_letters:
            raise StructureMismatch(f"letter index {x} outside [0, {m.n_letters})")
        out.append(m.output[q][x])
        q = m.delta[q][x]
    return tuple(out)


def _is_permutation(row: Sequence[int], size: int) -> bool:
    return len(row) == size and len(set(row)) == size


def is_invertible(m: Mealy) -> bool:
    return all(_is_permutation(row, m.n_letters) for row in m.output)


def invert(m: Mealy) -> Mealy:
    """Swap input and output letters on every edge."""

    if not is_invertible(m):
        raise NotInvertible("cannot invert an automaton with a non-bijective output row")
    delta: List[Tuple[int, ...]] = []
    output: List[Tuple[int, ...]] = []
    for q in range(m.n_states):
        inv = [0] * m.n_letters
        for x, y in enumerate(m.output[q]):
            inv[y] = x
        output.append(tuple(inv))
        delta.append(tuple(m.delta[q][inv[y]] for y in range(m.n_letters)))
    return Mealy(m.states, m.alphabet, tuple(delta), tuple(output))


def dual(m: Mealy) -> Mealy:
    """Swap states with letters and the transition table with the output table."""

    delta = tuple(tuple(m.output[q][x] for q in range(m.n_states)) for x in range(m.n_letters))
    output = tuple(tuple(m.delta[q][x] for q in range(m.n_states)) for x in range(m.n_letters))
    return Mealy(m.alphabet, m.states, delta, output)


def is_reversible(m: Mealy) -> bool:
    if not is_invertible(m):
        raise NotInvertible("reversibility is only defined for invertible automata")
    return is_invertible(dual(m))


def is_bireversible(m: Mealy) -> bool:
    return is_reversible(m) and is_reversible(invert(m))


def _relabel(keys: Sequence[Any]) -> Tuple[int, ...]:
    """Number distinct keys in order of first appearance."""

    ids: Dict[Any, int] = {}
    return tuple(ids.setdefault(key, len(ids)) for key in keys)


def minimize_with_classes(m: Mealy) -> Tuple[Mealy, Tuple[int, ...]]:
    """Moore partition refinement; returns the quotient and the class of every state.

    Classes are numbered by first member, and each class keeps the label of that member.
    """

    if not m.n_states:
        return m, ()
    blocks = _relabel(m.output)
    rounds = 0
    while True:
        rounds += 1
        refined = _relabel(
            [(blocks[q], tuple(blocks[t] for t in m.delta[q])) for q in range(m.n_states)]
        )
        if max(refined) == max(blocks):
            break
        blocks = refined
    count = max(blocks) + 1
    representative = [blocks.index(c) for c in range(count)]
    delta = tuple(tuple(blocks[t] for t in m.delta[rep]) for rep in representative)
    output = tuple(m.output[rep] for rep in representative)
    states = tuple(m.states[rep] for rep in representative)
    logger.debug("🧮 Minimised %d states to %d in %d rounds", m.n_states, count, rounds)
    return Mealy(states, m.alphabet, delta, output), blocks


def minimize(m: Mealy) -> Mealy:
    return minimize_with_classes(m)[0]


def _row_invariant(row: Sequence[int]) -> Tuple[Any, ...]:
    """Properties of an output row preserved by relabelling letters."""

    fibres = tuple(sorted(Counter(row).values()))
    fixed = sum(1 for x, y in enumerate(row) if x == y)
    cycles: Tuple[int, ...] = ()
    if len(set(row)) == len(row):
        seen = [False] * len(row)
        lengths = []
        for start in range(len(row)):
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = row[x]
                length += 1
            if length:
                lengths.append(length)
        cycles = tuple(sorted(lengths))
    return (fibres, fixed, cycles)


def find_isomorphism(m1: Mealy, m2: Mealy) -> Optional[Bijections]:
    """Search for ``(phi, psi)`` with ``delta2(phi q, psi x) = phi delta1(q, x)``
    and ``output2(phi q, psi x) = psi output1(q, x)``.

    Backtracking with forced-assignment propagation; candidate states are
    pruned by the cycle type of their output rows.
    """

    if m1.n_states != m2.n_states or m1.n_letters != m2.n_letters:
        return None
    inv1 = [_row_invariant(row) for row in m1.output]
    inv2 = [_row_invariant(row) for row in m2.output]
    if sorted(inv1) != sorted(inv2):
        return None
    n, k = m1.n_states, m1.n_letters

    def propagate(phi: List[Optional[int]], phi_inv: List[Optional[int]],
                  psi: List[Optional[int]], psi_inv: List[Optional[int]]) -> bool:
        changed = True
        while changed:
            changed = False
            for q in range(n):
                q2 = phi[q]
                if q2 is None:
                    continue
                for x in range(k):
                    x2 = psi[x]
                    if x2 is None:
                        continue
                    t1, t2 = m1.delta[q][x], m2.delta[q2][x2]
                    if phi[t1] is None:
                        if phi_inv[t2] is not None or inv1[t1] != inv2[t2]:
                            return False
                        phi[t1], phi_inv[t2] = t2, t1
                        changed = True
                    elif phi[t1] != t2:
                        return False
                    y1, y2 = m1.output[q][x], m2.output[q2][x2]
                    if psi[y1] is None:
                        if psi_inv[y2] is not None:
                            return False
                        psi[y1], psi_inv[y2] = y2, y1
                        changed = True
                    elif psi[y1] != y2:
                        return False
        return True

    def search(phi, phi_inv, psi, psi_inv) -> Optional[Bijections]:
        if not propagate(phi, phi_inv, psi, psi_inv):
            return None
        if all(v is None for v in phi):
            branch = ("state", 0)
        elif None in psi:
            branch = ("letter", psi.index(None))
        elif None in phi:
            branch = ("state", phi.index(None))
        else:
            return tuple(phi), tuple(psi)
        kind, source = branch
        if kind == "state":
            for target in range(n):
                if phi_inv[target] is None and inv1[source] == inv2[target]:
                    phi2, phi_inv2 = list(phi), list(phi_inv)
                    phi2[source], phi_inv2[target] = target, source
                    found = search(phi2, phi_inv2, list(psi), list(psi_inv))
                    if found:
                        return found
        else:
            for target in range(k):
                if psi_inv[target] is None:
                    psi2, psi_inv2 = list(psi), list(psi_inv)
                    psi2[source], psi_inv2[target] = target, source
                    found = search(list(phi), list(phi_inv), psi2, psi_inv2)
                    if found:
                        return found
        return None

    return search([None] * n, [None] * n, [None] * k, [None] * k)


def equivalent(m1: Mealy, m2: Mealy) -> bool:
    """Isomorphic after minimisation, up to one relabelling of the letters."""

    if m1.n_letters != m2.n_letters:
        return False
    return find_isomorphism(minimize(m1), minimize(m2)) is not None


def self_dual_witness(m: Mealy) -> Optional[Dict[str, Any]]:
    """Report whether ``m`` or its inverse is equivalent to its own dual.

    The returned bijections map states of the minimised dual onto states of the
    minimised automaton, and letters of the dual onto its letters.
    """

    variants = [("automaton", m)]
    if is_invertible(m):
        variants.append(("inverse", invert(m)))
    for name, variant in variants:
        reduced = minimize(variant)
        reduced_dual = minimize(dual(variant))
        found = find_isomorphism(reduced_dual, reduced)
        if found is None:
            continue
        phi, psi = found
        return {
            "variant": name,
            "states": {reduced_dual.states[i]: reduced.states[j] for i, j in enumerate(phi)},
            "letters": {reduced_dual.alphabet[i]: reduced.alphabet[j] for i, j in enumerate(psi)},
        }
    return None


__all__ = [
    "Mealy",
    "Word",
    "build_af",
    "dual",
    "equivalent",
    "find_isomorphism",
    "invert",
    "is_bireversible",
    "is_invertible",
    "is_reversible",
    "minimize",
    "minimize_with_classes",
    "run",
    "self_dual_witness",
]
