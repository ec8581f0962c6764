from __future__ import annotations

"""Truncated power series over finite rings and the rational series f = r(1 - at)/(1 - bt)."""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

from .errors import DepthExhausted, NotAUnit, StructureMismatch
from .ring import (
    RingElem,
    RingSpec,
    element_index,
    enumerate_ring,
    format_ring_spec,
    inverse,
    is_unit,
    one,
    parse_element,
    ring_tables,
    zero,
)

logger = logging.getLogger(__name__)

# rings up to this order multiply through cached operation tables
_TABLE_LIMIT = 256


@dataclass(frozen=True)
class SeriesParams:
    """The data ``(r, a, b)`` of ``f = r(1 - at)/(1 - bt)``; ``r`` must be a unit."""

    ring: RingSpec
    r: RingElem
    a: RingElem
    b: RingElem

    def __post_init__(self) -> None:
        for name in ("r", "a", "b"):
            value = getattr(self, name)
            if value.ring != self.ring:
                raise StructureMismatch(f"parameter {name}={value} is not in {format_ring_spec(self.ring)}")
        if not is_unit(self.r):
            raise NotAUnit(f"r={self.r} must be a unit of {format_ring_spec(self.ring)}")

    @classmethod
    def parse(cls, ring: RingSpec, r: str, a: str, b: str) -> "SeriesParams":
        return cls(ring, parse_element(ring, r), parse_element(ring, a), parse_element(ring, b))

    @property
    def a_minus_b(self) -> RingElem:
        return self.a - self.b

    def inverse_params(self) -> "SeriesParams":
        """Parameters of ``f^-1 = r^-1 (1 - bt)/(1 - at)``."""

        return SeriesParams(self.ring, inverse(self.r), self.b, self.a)

    def describe(self) -> Dict[str, str]:
        return {"r": str(self.r), "a": str(self.a), "b": str(self.b)}

    def __str__(self) -> str:
        return f"{format_ring_spec(self.ring)} r={self.r} a={self.a} b={self.b}"


@dataclass(frozen=True)
class TruncSeries:
    """``c0 + c1 t + ... + cd t^d`` in ``R[[t]]/(t^(d+1))``."""

    ring: RingSpec
    depth: int
    coeffs: Tuple[RingElem, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if self.depth < 0:
            raise ValueError(f"depth must be non-negative, got {self.depth}")
        if len(coeffs) != self.depth + 1:
            raise StructureMismatch(f"depth {self.depth} series needs {self.depth + 1} coefficients, got {len(coeffs)}")
        for c in coeffs:
            if c.ring != self.ring:
                raise StructureMismatch(f"coefficient {c} is not in {format_ring_spec(self.ring)}")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        return ts_add(self, other)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return ts_sub(self, other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        return ts_mul(self, other)

    def __neg__(self) -> "TruncSeries":
        return ts_neg(self)

    def __str__(self) -> str:
        return format_series(self)


def _compatible(f: TruncSeries, g: TruncSeries) -> None:
    if f.ring != g.ring:
        raise StructureMismatch(f"series over {format_ring_spec(f.ring)} and {format_ring_spec(g.ring)}")
    if f.depth != g.depth:
        raise StructureMismatch(f"series of depth {f.depth} and {g.depth}")


def ts_from_coeffs(ring: RingSpec, coeffs: Sequence[RingElem]) -> TruncSeries:
    return TruncSeries(ring, len(coeffs) - 1, tuple(coeffs))


def ts_const(ring: RingSpec, c: RingElem, depth: int) -> TruncSeries:
    return TruncSeries(ring, depth, (c,) + (zero(ring),) * depth)


def ts_zero(ring: RingSpec, depth: int) -> TruncSeries:
    return ts_const(ring, zero(ring), depth)


def ts_one(ring: RingSpec, depth: int) -> TruncSeries:
    return ts_const(ring, one(ring), depth)


def ts_add(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    _compatible(f, g)
    return TruncSeries(f.ring, f.depth, tuple(x + y for x, y in zip(f.coeffs, g.coeffs)))


def ts_neg(f: TruncSeries) -> TruncSeries:
    return TruncSeries(f.ring, f.depth, tuple(-x for x in f.coeffs))


def ts_sub(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    _compatible(f, g)
    return TruncSeries(f.ring, f.depth, tuple(x - y for x, y in zip(f.coeffs, g.coeffs)))


def ts_scale(c: RingElem, f: TruncSeries) -> TruncSeries:
    if c.ring != f.ring:
        raise StructureMismatch(f"scalar {c} is not in {format_ring_spec(f.ring)}")
    return TruncSeries(f.ring, f.depth, tuple(c * x for x in f.coeffs))


def ts_mul(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """Cauchy product truncated at the common depth."""

    _compatible(f, g)
    if f.ring.order > _TABLE_LIMIT:
        out = []
        for n in range(f.depth + 1):
            acc = zero(f.ring)
            for i in range(n + 1):
                acc = acc + f.coeffs[i] * g.coeffs[n - i]
            out.append(acc)
        return TruncSeries(f.ring, f.depth, tuple(out))
    tables = ring_tables(f.ring)
    lhs = [tables.index[c] for c in f.coeffs]
    rhs = [tables.index[c] for c in g.coeffs]
    zero_index = tables.index[zero(f.ring)]
    out = []
    for n in range(f.depth + 1):
        acc = zero_index
        for i in range(n + 1):
            acc = tables.add[acc][tables.mul[lhs[i]][rhs[n - i]]]
        out.append(tables.elements[acc])
    return TruncSeries(f.ring, f.depth, tuple(out))


def ts_invert(f: TruncSeries) -> TruncSeries:
    """Inverse in ``R[[t]]``: ``g0 = c0^-1`` and ``gn = -c0^-1 * sum(ci * g(n-i))``."""

    head = f.coeffs[0]
    if not is_unit(head):
        raise NotAUnit(f"constant term {head} of {format_series(f)} is not a unit")
    head_inv = inverse(head)
    out = [head_inv]
    for n in range(1, f.depth + 1):
        acc = zero(f.ring)
        for i in range(1, n + 1):
            acc = acc + f.coeffs[i] * out[n - i]
        out.append(-(head_inv * acc))
    return TruncSeries(f.ring, f.depth, tuple(out))


def ts_shift(f: TruncSeries) -> TruncSeries:
    """Drop the constant term: ``sum c(i+1) t^i`` at depth ``d - 1``."""

    if f.depth == 0:
        raise DepthExhausted("cannot shift a depth-0 series")
    return TruncSeries(f.ring, f.depth - 1, f.coeffs[1:])


def ts_truncate(f: TruncSeries, depth: int) -> TruncSeries:
    if not 0 <= depth <= f.depth:
        raise StructureMismatch(f"cannot truncate a depth-{f.depth} series to depth {depth}")
    return TruncSeries(f.ring, depth, f.coeffs[: depth + 1])


def ts_pow(f: TruncSeries, k: int) -> TruncSeries:
    if k < 0:
        return ts_pow(ts_invert(f), -k)
    result = ts_one(f.ring, f.depth)
    base = f
    while k:
        if k & 1:
            result = ts_mul(result, base)
        base = ts_mul(base, base)
        k >>= 1
    return result


def ts_from_word(ring: RingSpec, word: Iterable[int]) -> TruncSeries:
    """Read a non-empty word of element indices as ``d0 + d1 t + ...``."""

    elements = enumerate_ring(ring)
    coeffs = tuple(elements[i] for i in word)
    if not coeffs:
        raise StructureMismatch("the empty word has no series")
    return ts_from_coeffs(ring, coeffs)


def ts_to_word(f: TruncSeries) -> Tuple[int, ...]:
    index = element_index(f.ring)
    return tuple(index[c] for c in f.coeffs)


def expand_f(params: SeriesParams, depth: int) -> TruncSeries:
    """``r + r(b-a)t + rb(b-a)t^2 + ...`` up to ``t^depth``."""

    coeffs = [params.r]
    term = params.r * (params.b - params.a)
    for _ in range(depth):
        coeffs.append(term)
        term = term * params.b
    return TruncSeries(params.ring, depth, tuple(coeffs))


def expand_f_inverse(params: SeriesParams, depth: int) -> TruncSeries:
    return expand_f(params.inverse_params(), depth)


def geometric(b: RingElem, depth: int) -> TruncSeries:
    """``(1 - bt)^-1 = 1 + bt + b^2 t^2 + ...``."""

    coeffs = [one(b.ring)]
    for _ in range(depth):
        coeffs.append(coeffs[-1] * b)
    return TruncSeries(b.ring, depth, tuple(coeffs))


def _f_power(params: SeriesParams, m: int, depth: int) -> TruncSeries:
    if m < 0:
        return ts_pow(expand_f_inverse(params, depth), -m)
    return ts_pow(expand_f(params, depth), m)


def basis_element(params: SeriesParams, m: int, depth: int) -> TruncSeries:
    """``(-ar + bf) f^m``, the translation generated by conjugating with ``mu_f^m``."""

    f = expand_f(params, depth)
    head = ts_sub(ts_scale(params.b, f), ts_const(params.ring, params.a * params.r, depth))
    return ts_mul(head, _f_power(params, m, depth))


def basis_element_via_denominator(params: SeriesParams, m: int, depth: int) -> TruncSeries:
    """The same element written as ``-r(a-b)(1-bt)^-1 f^m``."""

    scale = -(params.r * params.a_minus_b)
    head = ts_scale(scale, geometric(params.b, depth))
    return ts_mul(head, _f_power(params, m, depth))


def format_series(f: TruncSeries) -> str:
    terms = []
    for power, c in enumerate(f.coeffs):
        if c == zero(f.ring):
            continue
        text = str(c)
        if power and ("+" in text or "," in text):
            text = f"({text})" if not text.startswith("(") else text
        if power == 0:
            terms.append(text)
        elif power == 1:
            terms.append(f"{text}*t")
        else:
            terms.append(f"{text}*t^{power}")
    return " + ".join(terms) or "0"


__all__ = [
    "SeriesParams",
    "TruncSeries",
    "basis_element",
    "basis_element_via_denominator",
    "expand_f",
    "expand_f_inverse",
    "format_series",
    "geometric",
    "ts_add",
    "ts_const",
    "ts_from_coeffs",
    "ts_from_word",
    "ts_invert",
    "ts_mul",
    "ts_neg",
    "ts_one",
    "ts_pow",
    "ts_scale",
    "ts_shift",
    "ts_sub",
    "ts_to_word",
    "ts_truncate",
    "ts_zero",
]
