from __future__ import annotations

"""Finite-depth checks that the automaton group of ``A_f`` has lamplighter structure.

Words of length ``L`` are read as truncated series of depth ``L - 1`` (letter
``i`` is the coefficient of ``t^i``).  The states of ``A_f`` then act as affine
maps ``g -> u*g + h`` and every identity below is an exact equality of such
maps at a stated depth.
"""

import itertools
import logging
import random
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .automaton import build_af, invert, run
from .config import get_config
from .errors import (
    DepthExhausted,
    NotAUnit,
    PreconditionFailed,
    ResourceLimit,
    StructureMismatch,
)
from .ring import (
    RingElem,
    RingSpec,
    enumerate_ring,
    format_ring_spec,
    is_unit,
    one,
    ring_tables,
    zero,
)
from .series import (
    SeriesParams,
    TruncSeries,
    basis_element,
    expand_f,
    geometric,
    ts_add,
    ts_const,
    ts_from_coeffs,
    ts_from_word,
    ts_invert,
    ts_mul,
    ts_neg,
    ts_one,
    ts_pow,
    ts_scale,
    ts_shift,
    ts_to_word,
    ts_truncate,
    ts_zero,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AffineMap:
    """``g -> multiplier * g + translation`` on series of a fixed depth."""

    multiplier: TruncSeries
    translation: TruncSeries

    def __post_init__(self) -> None:
        if self.multiplier.ring != self.translation.ring or self.multiplier.depth != self.translation.depth:
            raise StructureMismatch("multiplier and translation must share ring and depth")
        if not is_unit(self.multiplier.coeffs[0]):
            raise NotAUnit(f"multiplier {self.multiplier} does not have a unit constant term")

    @property
    def ring(self) -> RingSpec:
        return self.multiplier.ring

    @property
    def depth(self) -> int:
        return self.multiplier.depth

    def __call__(self, g: TruncSeries) -> TruncSeries:
        return affine_apply(self, g)


def affine_identity(ring: RingSpec, depth: int) -> AffineMap:
    return AffineMap(ts_one(ring, depth), ts_zero(ring, depth))


def affine_mu(f: TruncSeries) -> AffineMap:
    return AffineMap(f, ts_zero(f.ring, f.depth))


def affine_alpha(h: TruncSeries) -> AffineMap:
    return AffineMap(ts_one(h.ring, h.depth), h)


def affine_apply(m: AffineMap, g: TruncSeries) -> TruncSeries:
    return ts_add(ts_mul(m.multiplier, g), m.translation)


def affine_compose(m1: AffineMap, m2: AffineMap) -> AffineMap:
    """``m1 o m2``: apply ``m2`` first."""

    return AffineMap(
        ts_mul(m1.multiplier, m2.multiplier),
        ts_add(ts_mul(m1.multiplier, m2.translation), m1.translation),
    )


def affine_inverse(m: AffineMap) -> AffineMap:
    u_inv = ts_invert(m.multiplier)
    return AffineMap(u_inv, ts_neg(ts_mul(u_inv, m.translation)))


def affine_truncate(m: AffineMap, depth: int) -> AffineMap:
    return AffineMap(ts_truncate(m.multiplier, depth), ts_truncate(m.translation, depth))


def affine_section(m: AffineMap, letter: RingElem) -> AffineMap:
    """The section at the first-level vertex ``letter``, one level shallower."""

    if m.depth == 0:
        raise DepthExhausted("a depth-0 map has no sections")
    moved = ts_add(ts_scale(letter, m.multiplier), m.translation)
    return AffineMap(ts_truncate(m.multiplier, m.depth - 1), ts_shift(moved))


def affine_section_word(m: AffineMap, vertex: Sequence[RingElem]) -> AffineMap:
    for letter in vertex:
        m = affine_section(m, letter)
    return m


def affine_order(m: AffineMap, cap: Optional[int] = None) -> Optional[int]:
    """Least ``k >= 1`` with ``m^k = id``, or ``None`` when no such ``k <= cap`` exists."""

    limit = get_config().order_cap if cap is None else cap
    identity = affine_identity(m.ring, m.depth)
    power = m
    for k in range(1, limit + 1):
        if power == identity:
            return k
        power = affine_compose(power, m)
    return None


def _act_on_word(m: AffineMap, vertex: Sequence[RingElem]) -> Tuple[RingElem, ...]:
    if not vertex:
        return ()
    g = ts_from_coeffs(m.ring, vertex)
    return affine_apply(affine_truncate(m, len(vertex) - 1), g).coeffs


def state_as_affine(params: SeriesParams, s: RingElem, depth: int) -> AffineMap:
    """State ``s`` of ``A_f`` as ``alpha_{s(-ar+bf)} o mu_f``."""

    f = expand_f(params, depth)
    return AffineMap(f, ts_scale(s, basis_element(params, 0, depth)))


def check_conjugation(params: SeriesParams, h: TruncSeries) -> bool:
    """``mu_f o alpha_h o mu_f^-1 == alpha_{fh}``."""

    mu = affine_mu(expand_f(params, h.depth))
    lhs = affine_compose(mu, affine_compose(affine_alpha(h), affine_inverse(mu)))
    return lhs == affine_alpha(ts_mul(mu.multiplier, h))


def check_state_sections(params: SeriesParams, depth: int) -> bool:
    """Every section of a state is the state the automaton moves to."""

    if depth < 1:
        raise DepthExhausted("state sections need depth >= 1")
    m = build_af(params)
    elements = enumerate_ring(params.ring)
    maps = [state_as_affine(params, s, depth) for s in elements]
    shallow = [state_as_affine(params, s, depth - 1) for s in elements]
    for q, state_map in enumerate(maps):
        for x, letter in enumerate(elements):
            if affine_section(state_map, letter) != shallow[m.delta[q][x]]:
                logger.debug("❌ Section of state %s at %s disagrees with delta", elements[q], letter)
                return False
    return True


def check_basis_distinct(params: SeriesParams, depth: int, budget: Optional[int] = None) -> bool:
    """Are the ``|R|^(d+1)`` series ``(1-bt)^-1 (c0 + c1 f + ... + cd f^d)`` pairwise distinct?"""

    ring = params.ring
    n = ring.order
    get_config().check_budget(n ** (depth + 1), "basis distinctness", budget)
    tables = ring_tables(ring)
    f = expand_f(params, depth)
    geo = geometric(params.b, depth)
    vectors = [ts_to_word(ts_mul(geo, ts_pow(f, i))) for i in range(depth + 1)]
    zero_index = tables.index[zero(ring)]
    seen = set()
    for coeffs in itertools.product(range(n), repeat=depth + 1):
        acc = [zero_index] * (depth + 1)
        for c, vector in zip(coeffs, vectors):
            if c == zero_index:
                continue
            acc = [tables.add[a][tables.mul[c][v]] for a, v in zip(acc, vector)]
        key = tuple(acc)
        if key in seen:
            logger.debug("🔍 Collision at depth %d for coefficients %s", depth, coeffs)
            return False
        seen.add(key)
    return True


def find_annihilator(params: SeriesParams, depth: int) -> Optional[RingElem]:
    """A nonzero ``s`` with ``s(a-b) = 0`` that kills every ``basis_element(m)``, ``|m| <= depth``."""

    a_minus_b = params.a_minus_b
    if is_unit(a_minus_b):
        return None
    ring = params.ring
    nothing = zero(ring)
    empty = ts_zero(ring, depth)
    for s in enumerate_ring(ring):
        if s == nothing or s * a_minus_b != nothing:
            continue
        if all(ts_scale(s, basis_element(params, m, depth)) == empty for m in range(-depth, depth + 1)):
            return s
    return None


def level_orbit_size(params: SeriesParams, level: int, budget: Optional[int] = None) -> int:
    """Size of the orbit of the all-zero word of length ``level`` under the states and their inverses."""

    n = params.ring.order
    get_config().check_budget(n**level, "level orbit", budget)
    m = build_af(params)
    m_inv = invert(m)
    start = tuple([ring_tables(params.ring).index[zero(params.ring)]] * level)
    seen = {start}
    queue = deque([start])
    while queue:
        word = queue.popleft()
        for machine in (m, m_inv):
            for q in range(n):
                image = run(machine, q, word)
                if image not in seen:
                    seen.add(image)
                    queue.append(image)
    logger.debug("🧭 Level %d orbit has %d of %d words", level, len(seen), n**level)
    return len(seen)


def check_spherical_transitivity(params: SeriesParams, level: int, budget: Optional[int] = None) -> bool:
    return level_orbit_size(params, level, budget) == params.ring.order**level


def check_oracle_equivalence(
    params: SeriesParams,
    depth: int,
    samples: Optional[int] = None,
    rng: Optional[random.Random] = None,
) -> bool:
    """Automaton runs agree with the affine action on random words of length ``<= depth + 1``."""

    rng = rng or random.Random(get_config().seed)
    count = get_config().oracle_samples if samples is None else samples
    m = build_af(params)
    elements = enumerate_ring(params.ring)
    n = len(elements)
    for i in range(count):
        s = i % n
        length = rng.randint(1, depth + 1)
        word = tuple(rng.randrange(n) for _ in range(length))
        expected = run(m, s, word)
        image = affine_apply(state_as_affine(params, elements[s], length - 1), ts_from_word(params.ring, word))
        if ts_to_word(image) != expected:
            logger.debug("❌ Oracle mismatch at state %s on word %s", elements[s], word)
            return False
    return True


def _generators(params: SeriesParams, depth: int) -> List[AffineMap]:
    states = [state_as_affine(params, s, depth) for s in enumerate_ring(params.ring)]
    return states + [affine_inverse(g) for g in states]


def check_section_laws(
    params: SeriesParams,
    depth: int,
    rng: Optional[random.Random] = None,
    samples: int = 50,
) -> bool:
    """``(gh)|v == g|h(v) h|v`` and ``(g^-1)|v == (g|g^-1(v))^-1`` on sampled generators."""

    if depth < 1:
        raise DepthExhausted("section laws need depth >= 1")
    rng = rng or random.Random(get_config().seed)
    gens = _generators(params, depth)
    elements = enumerate_ring(params.ring)
    for _ in range(samples):
        g, h = rng.choice(gens), rng.choice(gens)
        vertex = [rng.choice(elements) for _ in range(rng.randint(1, min(3, depth)))]
        lhs = affine_section_word(affine_compose(g, h), vertex)
        rhs = affine_compose(
            affine_section_word(g, _act_on_word(h, vertex)),
            affine_section_word(h, vertex),
        )
        if lhs != rhs:
            return False
        g_inv = affine_inverse(g)
        lhs = affine_section_word(g_inv, vertex)
        rhs = affine_inverse(affine_section_word(g, _act_on_word(g_inv, vertex)))
        if lhs != rhs:
            return False
    return True


def check_self_replication_witnesses(
    params: SeriesParams,
    depth: int,
    rng: Optional[random.Random] = None,
    samples: int = 50,
) -> bool:
    """Identities behind self-replication when ``r = 1`` and one of ``a``, ``b`` vanishes.

    With ``a = 0`` the inverse series ``(1, b, 0)`` generates the same group, so
    the checks run on the ``b = 0`` form.
    """

    ring = params.ring
    if params.r != one(ring):
        raise PreconditionFailed("self-replication witnesses need r = 1")
    if params.a != zero(ring) and params.b != zero(ring):
        raise PreconditionFailed("self-replication witnesses need a = 0 or b = 0")
    if not is_unit(params.a_minus_b):
        raise PreconditionFailed("self-replication witnesses need a - b to be a unit")
    if depth < 1:
        raise PreconditionFailed("self-replication witnesses need depth >= 1")
    if params.b != zero(ring):
        params = params.inverse_params()

    a = params.a
    f = expand_f(params, depth)
    mu = affine_mu(f)
    shallow_mu = affine_mu(ts_truncate(f, depth - 1))
    if _act_on_word(mu, [zero(ring)]) != (zero(ring),):
        return False
    for s in enumerate_ring(ring):
        expected = affine_compose(affine_alpha(ts_const(ring, -(s * a), depth - 1)), shallow_mu)
        if affine_section(mu, s) != expected:
            logger.debug("❌ Section of mu_f at %s is not alpha_{-sa} mu_f", s)
            return False
        conjugate = affine_compose(
            affine_alpha(ts_const(ring, -s, depth)),
            affine_compose(mu, affine_alpha(ts_const(ring, s, depth))),
        )
        if affine_section(conjugate, zero(ring)) != expected:
            logger.debug("❌ Section at 0 of the conjugate by alpha_%s is wrong", s)
            return False
    return check_section_laws(params, depth, rng, samples)


def wreath_relations(params: SeriesParams, depth: int, cap: Optional[int] = None) -> Dict[str, Any]:
    """Translation, shift and order relations of the wreath-product presentation at ``depth``."""

    ring = params.ring
    elements = enumerate_ring(ring)
    base = basis_element(params, 0, depth)
    shifted = basis_element(params, 1, depth)
    translations = {s: affine_alpha(ts_scale(s, base)) for s in elements}

    additive = True
    commute = True
    for s, s2 in itertools.product(elements, repeat=2):
        product = affine_compose(translations[s], translations[s2])
        additive = additive and product == translations[s + s2]
        commute = commute and product == affine_compose(translations[s2], translations[s])

    mu = affine_mu(expand_f(params, depth))
    mu_inv = affine_inverse(mu)
    shift = all(
        affine_compose(mu, affine_compose(translations[s], mu_inv)) == affine_alpha(ts_scale(s, shifted))
        for s in elements
    )

    order = affine_order(mu, cap)
    unbounded = order is None or order >= depth + 1
    return {
        "translations_additive": additive,
        "translations_commute": commute,
        "shift": shift,
        "mu_order": order,
        "order_bound": depth + 1,
        "holds": additive and commute and shift and unbounded,
    }


def check_wreath_relations(params: SeriesParams, depth: int, cap: Optional[int] = None) -> bool:
    return wreath_relations(params, depth, cap)["holds"]


@dataclass
class CheckReport:
    check: str
    ring: str
    params: Dict[str, str]
    depth: int
    result: Optional[bool]
    witness: Any = None
    skipped: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.result is False

    def to_dict(self) -> Dict[str, Any]:
        payload = {
            "check": self.check,
            "ring": self.ring,
            "params": self.params,
            "depth": self.depth,
            "result": self.result,
            "witness": self.witness,
        }
        if self.skipped:
            payload["skipped"] = self.skipped
        return payload


def _random_series(ring: RingSpec, depth: int, rng: random.Random) -> TruncSeries:
    n = ring.order
    return ts_from_word(ring, [rng.randrange(n) for _ in range(depth + 1)])


def run_suite(
    params: SeriesParams,
    depth: int = 8,
    level: int = 3,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
) -> List[CheckReport]:
    """Run every check for ``params``; reports come back in a fixed order."""

    config = get_config()
    seed = config.seed if seed is None else seed
    workers = config.workers if workers is None else workers
    ring = format_ring_spec(params.ring)
    described = params.describe()

    def conjugation() -> Tuple[bool, Any]:
        rng = random.Random(seed)
        samples = 100
        ok = all(check_conjugation(params, _random_series(params.ring, depth, rng)) for _ in range(samples))
        return ok, {"samples": samples}

    def basis() -> Tuple[bool, Any]:
        per_depth = {d: check_basis_distinct(params, d) for d in range(min(depth, 2) + 1)}
        return all(per_depth.values()), {"depths": per_depth}

    def annihilator() -> Tuple[bool, Any]:
        found = find_annihilator(params, depth)
        return found is None, {"annihilator": None if found is None else str(found)}

    def wreath() -> Tuple[bool, Any]:
        relations = wreath_relations(params, depth)
        holds = relations.pop("holds")
        order = relations["mu_order"]
        relations["mu_order"] = f"order {order}" if order is not None else f"order > {config.order_cap}"
        return holds, relations

    def transitivity() -> Tuple[bool, Any]:
        size = level_orbit_size(params, level)
        expected = params.ring.order**level
        return size == expected, {"level": level, "orbit": size, "expected": expected}

    def oracle() -> Tuple[bool, Any]:
        samples = config.oracle_samples
        return check_oracle_equivalence(params, depth, samples, random.Random(seed)), {"samples": samples}

    def sections() -> Tuple[bool, Any]:
        return check_state_sections(params, max(depth, 1)), None

    def section_laws() -> Tuple[bool, Any]:
        return check_section_laws(params, max(depth, 1), random.Random(seed)), None

    def self_replication() -> Tuple[bool, Any]:
        return check_self_replication_witnesses(params, max(depth, 1), random.Random(seed)), None

    checks: List[Tuple[str, int, Callable[[], Tuple[bool, Any]]]] = [
        ("conjugation", depth, conjugation),
        ("basis_distinct", min(depth, 2), basis),
        ("annihilator", depth, annihilator),
        ("wreath_relations", depth, wreath),
        ("spherical_transitivity", level, transitivity),
        ("oracle_equivalence", depth, oracle),
        ("state_sections", max(depth, 1), sections),
        ("section_laws", max(depth, 1), section_laws),
        ("self_replication", max(depth, 1), self_replication),
    ]

    def evaluate(item: Tuple[str, int, Callable[[], Tuple[bool, Any]]]) -> CheckReport:
        name, check_depth, job = item
        try:
            result, witness = job()
        except (ResourceLimit, PreconditionFailed) as exc:
            logger.info("⚠️ Skipping %s: %s", name, exc)
            return CheckReport(name, ring, described, check_depth, None, None, str(exc))
        status = "✅" if result else "❌"
        logger.info("%s %s for %s", status, name, params)
        return CheckReport(name, ring, described, check_depth, bool(result), witness)

    logger.info("🚀 Running %d checks for %s with %d workers", len(checks), params, workers)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        return list(pool.map(evaluate, checks))


__all__ = [
    "AffineMap",
    "CheckReport",
    "affine_alpha",
    "affine_apply",
    "affine_compose",
    "affine_identity",
    "affine_inverse",
    "affine_mu",
    "affine_order",
    "affine_section",
    "affine_section_word",
    "affine_truncate",
    "check_basis_distinct",
    "check_conjugation",
    "check_oracle_equivalence",
    "check_section_laws",
    "check_self_replication_witnesses",
    "check_spherical_transitivity",
    "check_state_sections",
    "check_wreath_relations",
    "find_annihilator",
    "level_orbit_size",
    "run_suite",
    "state_as_affine",
    "wreath_relations",
]
