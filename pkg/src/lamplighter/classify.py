from __future__ import annotations

"""Which finite abelian groups are additive groups of rings with units ``a``, ``b``, ``a - b``."""

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Tuple

from .config import get_config
from .errors import LamplighterError
from .groups import GroupSpec, abelian_groups_of_order, format_group_spec, parse_group_spec
from .ring import (
    ModN,
    Product,
    RingElem,
    RingSpec,
    additive_basis,
    additive_coordinates,
    additive_group,
    enumerate_ring,
    format_ring_spec,
    is_unit,
    make_galois_ring,
    one,
    ring_tables,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Witness:
    ring: RingSpec
    a: RingElem
    b: RingElem


@dataclass(frozen=True)
class RealizabilityResult:
    group: GroupSpec
    realizable: bool
    witness: Optional[Witness] = None

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "group": format_group_spec(self.group),
            "realizable": self.realizable,
            "witness": None,
        }
        if self.witness:
            payload["witness"] = {
                "ring": format_ring_spec(self.witness.ring),
                "r": str(one(self.witness.ring)),
                "a": str(self.witness.a),
                "b": str(self.witness.b),
            }
        return payload


def is_realizable(group: GroupSpec) -> bool:
    """No ``Z/2^k`` factor may occur exactly once."""

    return all(count != 1 for count in group.two_part().values())


def _component_pair(spec: RingSpec) -> Tuple[RingElem, RingElem]:
    """``a = 1`` and the first unit ``b`` in enumeration order with ``1 - b`` a unit."""

    a = one(spec)
    for b in enumerate_ring(spec):
        if is_unit(b) and is_unit(a - b):
            return a, b
    raise LamplighterError(f"{format_ring_spec(spec)} has no unit b with 1 - b a unit")


def construct_witness(group: GroupSpec) -> RealizabilityResult:
    """Build ``Z/p^k`` factors for odd parts and ``GR(2^m, r)`` for each ``(Z/2^m)^r`` with ``r >= 2``."""

    if not is_realizable(group):
        logger.debug("🧭 %s has a lone 2-power factor", format_group_spec(group))
        return RealizabilityResult(group, False)

    factors: List[RingSpec] = []
    for order, count in sorted(group.two_part().items()):
        factors.append(make_galois_ring(2, order.bit_length() - 1, count))
    factors.extend(ModN(q) for q in group.cyclic_orders if q % 2)

    pairs = [_component_pair(factor) for factor in factors]
    if len(factors) == 1:
        ring: RingSpec = factors[0]
        a, b = pairs[0]
    else:
        ring = Product(tuple(factors))
        a = RingElem(ring, tuple(pa.value for pa, _ in pairs))
        b = RingElem(ring, tuple(pb.value for _, pb in pairs))

    if not (is_unit(a) and is_unit(b) and is_unit(a - b)) or additive_group(ring) != group:
        raise LamplighterError(f"witness for {format_group_spec(group)} failed its own checks")  # pragma: no cover
    logger.debug("✅ %s realised by %s with a=%s b=%s", format_group_spec(group), format_ring_spec(ring), a, b)
    return RealizabilityResult(group, True, Witness(ring, a, b))


def brute_force_units_pair(spec: RingSpec, budget: Optional[int] = None) -> Optional[Tuple[RingElem, RingElem]]:
    """First ordered pair of units ``(a, b)`` whose difference is a unit."""

    get_config().check_budget(spec.order, "unit pair scan", budget)
    tables = ring_tables(spec)
    units = [i for i, flag in enumerate(tables.unit) if flag]
    for a, b in itertools.product(units, repeat=2):
        if tables.unit[tables.sub(a, b)]:
            return tables.elements[a], tables.elements[b]
    return None


def has_index2_ideal(spec: RingSpec, budget: Optional[int] = None) -> bool:
    """Is some index-2 additive subgroup closed under multiplication by the ring?

    Index-2 subgroups are kernels of nonzero homomorphisms ``R+ -> Z/2``; each
    one is a choice of parity bit on the even-order generators of an additive basis.
    """

    config = get_config()
    config.check_budget(spec.order, "index-2 ideal scan", budget)
    basis = additive_basis(spec)
    even = [i for i, (_, order) in enumerate(basis) if order % 2 == 0]
    if not even:
        return False
    config.check_budget(2 ** len(even), "index-2 subgroup choices", budget)
    elements = enumerate_ring(spec)
    coordinates = {x: additive_coordinates(x) for x in elements}
    generators = [g for g, _ in basis]

    def parity(bits: Dict[int, int], x: RingElem) -> int:
        return sum(coordinates[x][i] * bit for i, bit in bits.items()) % 2

    for choice in itertools.product((0, 1), repeat=len(even)):
        if not any(choice):
            continue
        bits = dict(zip(even, choice))
        kernel = [x for x in elements if parity(bits, x) == 0]
        if all(parity(bits, g * x) == 0 for x in kernel for g in generators):
            logger.debug("🔍 %s has an index-2 ideal with parity bits %s", format_ring_spec(spec), bits)
            return True
    return False


def classify_up_to(n: int) -> Iterator[RealizabilityResult]:
    """Realizability of every abelian group of order ``2..n``."""

    for order in range(2, n + 1):
        for group in abelian_groups_of_order(order):
            yield construct_witness(group)


__all__ = [
    "GroupSpec",
    "RealizabilityResult",
    "Witness",
    "abelian_groups_of_order",
    "brute_force_units_pair",
    "classify_up_to",
    "construct_witness",
    "format_group_spec",
    "has_index2_ideal",
    "is_realizable",
    "parse_group_spec",
]
