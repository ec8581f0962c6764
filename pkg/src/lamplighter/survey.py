from __future__ import annotations

"""Parameter sweeps: every ``(r, a, b)`` over a ring, checked against the reversibility criteria."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterator, Optional

from tqdm import tqdm

from .automaton import build_af, invert, is_reversible, minimize
from .ring import RingSpec, enumerate_ring, format_ring_spec, is_unit
from .series import SeriesParams

logger = logging.getLogger(__name__)

SUMMARY_SUFFIX = ".summary.json"


def _write_jsonl(path: Path, record: Dict[str, Any]) -> None:
    with path.open("a", encoding="utf-8") as handle:
        handle.write(json.dumps(record, ensure_ascii=False) + "\n")


def iter_parameter_sets(spec: RingSpec) -> Iterator[SeriesParams]:
    """Every ``(r, a, b)`` with ``r`` a unit, ``r`` slowest and ``b`` fastest."""

    elements = enumerate_ring(spec)
    for r in elements:
        if not is_unit(r):
            continue
        for a in elements:
            for b in elements:
                yield SeriesParams(spec, r, a, b)


def survey_parameters(params: SeriesParams) -> Dict[str, Any]:
    m = build_af(params)
    n = m.n_states
    minimized = minimize(m).n_states
    reversible = is_reversible(m)
    inverse_reversible = is_reversible(invert(m))
    # every column of the transition table must permute the states
    bruteforce = all(len({m.delta[q][x] for q in range(n)}) == n for x in range(m.n_letters))
    ab_unit = is_unit(params.a_minus_b)
    predicted_reversible = is_unit(params.b)
    predicted_inverse_reversible = is_unit(params.a)
    consistent = reversible == bruteforce
    if ab_unit:
        consistent = (
            consistent
            and minimized == n
            and reversible == predicted_reversible
            and inverse_reversible == predicted_inverse_reversible
        )
    return {
        "ring": format_ring_spec(params.ring),
        "params": params.describe(),
        "ab_unit": ab_unit,
        "states": n,
        "minimized_states": minimized,
        "reversible": reversible,
        "inverse_reversible": inverse_reversible,
        "bireversible": reversible and inverse_reversible,
        "reversible_bruteforce": bruteforce,
        "predicted_reversible": predicted_reversible,
        "predicted_inverse_reversible": predicted_inverse_reversible,
        "consistent": consistent,
    }


def survey_ring(
    spec: RingSpec,
    *,
    jsonl_path: Optional[Path] = None,
    progress: bool = True,
) -> Dict[str, Any]:
    """Survey every parameter set of ``spec``; optionally write JSONL records and a summary file."""

    units = sum(1 for x in enumerate_ring(spec) if is_unit(x))
    total = units * spec.order**2
    summary: Dict[str, Any] = {
        "ring": format_ring_spec(spec),
        "parameter_sets": 0,
        "ab_unit": 0,
        "reversible": 0,
        "inverse_reversible": 0,
        "bireversible": 0,
        "inconsistent": 0,
    }
    if jsonl_path is not None:
        jsonl_path.parent.mkdir(parents=True, exist_ok=True)
        jsonl_path.unlink(missing_ok=True)

    logger.info("🚀 Surveying %d parameter sets over %s", total, summary["ring"])
    for params in tqdm(iter_parameter_sets(spec), total=total, desc=summary["ring"], disable=not progress):
        record = survey_parameters(params)
        summary["parameter_sets"] += 1
        for key in ("ab_unit", "reversible", "inverse_reversible", "bireversible"):
            summary[key] += int(record[key])
        if not record["consistent"]:
            summary["inconsistent"] += 1
            logger.warning("⚠️ Inconsistent parameter set %s", params)
        if jsonl_path is not None:
            _write_jsonl(jsonl_path, record)

    if jsonl_path is not None:
        summary_path = jsonl_path.with_name(jsonl_path.stem + SUMMARY_SUFFIX)
        summary_path.write_text(json.dumps(summary, indent=2))
        logger.info("✅ Survey complete. Summary written to %s", summary_path)
    else:
        logger.info("✅ Survey complete for %s", summary["ring"])
    return summary


__all__ = ["iter_parameter_sets", "survey_parameters", "survey_ring"]
