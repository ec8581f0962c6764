from __future__ import annotations

"""Finite abelian groups described by their prime-power cyclic factors."""

import logging
import re
from collections import Counter
from dataclasses import dataclass
from math import prod
from typing import Dict, Iterable, Iterator, List, Tuple

from sympy import factorint
from sympy.utilities.iterables import partitions

from .errors import SpecParseError

logger = logging.getLogger(__name__)

_FACTOR_RE = re.compile(r"^Z/(\d+)(?:Z)?$", re.IGNORECASE)


def _prime_of(order: int) -> int:
    factors = factorint(order)
    if order < 2 or len(factors) != 1:
        raise ValueError(f"{order} is not a prime power > 1")
    return next(iter(factors))


def _sort_key(order: int) -> Tuple[int, int]:
    return (_prime_of(order), order)


@dataclass(frozen=True)
class GroupSpec:
    """Invariant decomposition ``Z/q1 + Z/q2 + ...`` with every ``q`` a prime power.

    Orders are kept sorted by prime and then by size, so equal groups compare equal.
    """

    cyclic_orders: Tuple[int, ...]

    def __post_init__(self) -> None:
        orders = tuple(sorted((int(q) for q in self.cyclic_orders), key=_sort_key))
        if not orders:
            raise ValueError("a group needs at least one cyclic factor")
        object.__setattr__(self, "cyclic_orders", orders)

    @classmethod
    def from_cyclic(cls, orders: Iterable[int]) -> "GroupSpec":
        """Normalise arbitrary cyclic orders through the Chinese remainder theorem."""

        prime_powers: List[int] = []
        for order in orders:
            if order < 2:
                raise ValueError(f"cyclic order must be at least 2, got {order}")
            prime_powers.extend(p**k for p, k in factorint(order).items())
        return cls(tuple(prime_powers))

    @property
    def order(self) -> int:
        return prod(self.cyclic_orders)

    def multiplicities(self) -> Dict[int, int]:
        return dict(Counter(self.cyclic_orders))

    def two_part(self) -> Dict[int, int]:
        """Multiplicity of every ``Z/2^k`` factor, keyed by ``2^k``."""

        return {q: n for q, n in self.multiplicities().items() if q % 2 == 0}

    def __str__(self) -> str:
        return format_group_spec(self)


def parse_group_spec(text: str) -> GroupSpec:
    """Parse ``"Z/8 + Z/8 + Z/3"``; composite orders are split into prime powers."""

    orders: List[int] = []
    for raw in text.split("+"):
        token = raw.strip().replace(" ", "")
        match = _FACTOR_RE.match(token)
        if not match:
            raise SpecParseError(f"cannot parse cyclic factor {raw.strip()!r} in {text!r}")
        orders.append(int(match.group(1)))
    try:
        return GroupSpec.from_cyclic(orders)
    except ValueError as exc:
        raise SpecParseError(f"invalid group {text!r}: {exc}") from exc


def format_group_spec(group: GroupSpec) -> str:
    return " + ".join(f"Z/{q}" for q in group.cyclic_orders)


def abelian_groups_of_order(n: int) -> Iterator[GroupSpec]:
    """Yield every abelian group of order ``n`` once, up to isomorphism."""

    if n < 2:
        return
    choices: List[List[List[int]]] = []
    for p, exponent in sorted(factorint(n).items()):
        per_prime = []
        for part in partitions(exponent):
            # sympy reuses the yielded dict, so read it straight away
            per_prime.append([p**k for k, count in sorted(part.items()) for _ in range(count)])
        choices.append(per_prime)

    def _combine(index: int, acc: List[int]) -> Iterator[GroupSpec]:
        if index == len(choices):
            yield GroupSpec(tuple(acc))
            return
        for orders in choices[index]:
            yield from _combine(index + 1, acc + orders)

    yield from _combine(0, [])


__all__ = [
    "GroupSpec",
    "abelian_groups_of_order",
    "format_group_spec",
    "parse_group_spec",
]
