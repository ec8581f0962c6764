from __future__ import annotations

"""Command-line entry point for the lamplighter automata toolkit."""

import argparse
import json
import logging
import shlex
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from .automaton import (
    build_af,
    invert,
    is_bireversible,
    is_invertible,
    is_reversible,
    minimize,
    run,
    self_dual_witness,
)
from .classify import RealizabilityResult, classify_up_to, construct_witness, parse_group_spec
from .config import get_config
from .errors import LamplighterError, SpecParseError
from .export import tables_tsv, to_document, to_dot
from .groupcheck import run_suite
from .ring import element_index, format_element, parse_element, parse_ring_spec
from .series import SeriesParams
from .survey import survey_ring


def configure_logging(verbose: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s | %(levelname)-8s | %(message)s",
        datefmt="%H:%M:%S",
    )
    logging.info("🧠 Lamplighter initialising…")


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", type=Path, help="Write the result to this file instead of stdout.")
    common.add_argument("--verbose", action="store_true", help="Enable debug logging.")
    return common


def _automaton_parser() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("ring", help="Ring spec, e.g. zmod:9, gr:2:2:2 or zmod:3*zmod:5.")
    parent.add_argument("--r", default="1", help="Unit r of f = r(1-at)/(1-bt) (default 1).")
    parent.add_argument("--a", required=True, help="Numerator parameter a.")
    parent.add_argument("--b", required=True, help="Denominator parameter b.")
    return parent


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        description="Lamplighter: automata of rational series over finite rings"
    )
    common = _common_parser()
    automaton = _automaton_parser()
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", parents=[common, automaton], help="Build A_f and emit it.")
    build.add_argument("--format", choices=("json", "dot", "tsv"), default="json")
    sub.add_parser("tables", parents=[common, automaton], help="Transition and output tables (TSV).")
    sub.add_parser("dot", parents=[common, automaton], help="Graphviz DOT source.")
    sub.add_parser("check", parents=[common, automaton], help="Invertibility and reversibility report.")

    verify = sub.add_parser("verify", parents=[common, automaton], help="Finite-depth group structure checks.")
    verify.add_argument("--depth", type=int, default=8, help="Truncation depth (default 8).")
    verify.add_argument("--level", type=int, default=3, help="Tree level for transitivity (default 3).")
    verify.add_argument("--seed", type=int, default=None, help="Random seed (default from config).")
    verify.add_argument("--workers", type=int, default=None, help="Thread pool size (default from config).")

    run_cmd = sub.add_parser("run", parents=[common, automaton], help="Run a state on a word.")
    run_cmd.add_argument("--state", required=True, help="State label, e.g. 0 or 1+z.")
    run_cmd.add_argument("--word", default="", help="Comma-separated letters, e.g. 2,0.")

    classify = sub.add_parser("classify", parents=[common], help="Realizability of a finite abelian group.")
    classify.add_argument("group", nargs="?", help='Group such as "Z/4 + Z/4 + Z/3".')
    classify.add_argument("--up-to", type=int, default=None, help="Tabulate every group of order <= N.")

    sweep = sub.add_parser("sweep", parents=[common], help="Survey every (r, a, b) over a ring.")
    sweep.add_argument("ring", help="Ring spec to survey.")
    sweep.add_argument("--no-progress", action="store_true", help="Hide the progress bar.")

    args = parser.parse_args(list(argv) if argv is not None else sys.argv[1:])
    for name in ("depth", "level", "up_to"):
        value = getattr(args, name, None)
        if value is not None and value < 0:
            parser.error(f"--{name.replace('_', '-')} must be non-negative")
    return args


def split_word(text: str) -> List[str]:
    """Split on commas outside parentheses, so ``(1,2),(0,1)`` has two letters."""

    letters: List[str] = []
    depth = 0
    current = ""
    for char in text:
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        if char == "," and depth == 0:
            letters.append(current.strip())
            current = ""
        else:
            current += char
    if depth != 0:
        raise SpecParseError(f"unbalanced parentheses in word {text!r}")
    if current.strip() or letters:
        letters.append(current.strip())
    if any(not letter for letter in letters):
        raise SpecParseError(f"empty letter in word {text!r}")
    return letters


def _params(args: argparse.Namespace) -> SeriesParams:
    ring = parse_ring_spec(args.ring)
    return SeriesParams.parse(ring, args.r, args.a, args.b)


def _emit(text: str, output: Optional[Path]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if output is None:
        sys.stdout.write(text)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text, encoding="utf-8")
    logging.info("📁 Wrote %s", output)


def cmd_build(args: argparse.Namespace, fmt: str) -> int:
    params = _params(args)
    machine = build_af(params)
    logging.info("🧮 Built A_f over %s with %d states", args.ring, machine.n_states)
    if fmt == "dot":
        text = to_dot(machine, label=str(params))
    elif fmt == "tsv":
        text = tables_tsv(machine)
    else:
        text = json.dumps(to_document(machine, params), indent=2, ensure_ascii=False)
    _emit(text, args.output)
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    params = _params(args)
    machine = build_af(params)
    invertible = is_invertible(machine)
    report: Dict[str, Any] = {
        "ring": args.ring,
        "params": params.describe(),
        "states": machine.n_states,
        "invertible": invertible,
        "reversible": is_reversible(machine) if invertible else False,
        "inverse_reversible": is_reversible(invert(machine)) if invertible else False,
        "bireversible": is_bireversible(machine) if invertible else False,
        "minimized_state_count": minimize(machine).n_states,
    }
    witness = self_dual_witness(machine)
    report["self_dual"] = witness["variant"] if witness else None
    _emit(json.dumps(report, indent=2, ensure_ascii=False), args.output)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    params = _params(args)
    reports = run_suite(params, depth=args.depth, level=args.level, seed=args.seed, workers=args.workers)
    lines = [json.dumps(report.to_dict(), ensure_ascii=False) for report in reports]
    _emit("\n".join(lines), args.output)
    failed = [report.check for report in reports if report.failed]
    if failed:
        logging.warning("⚠️ Failed checks: %s", ", ".join(failed))
        return 1
    logging.info("✅ All checks passed")
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    params = _params(args)
    machine = build_af(params)
    index = element_index(params.ring)
    state = index[parse_element(params.ring, args.state)]
    word = [index[parse_element(params.ring, letter)] for letter in split_word(args.word)]
    elements = list(index)
    output = run(machine, state, word)
    _emit(",".join(format_element(elements[y]) for y in output), args.output)
    return 0


def _classify_payload(result: RealizabilityResult) -> Dict[str, Any]:
    payload = result.to_dict()
    witness = payload.get("witness")
    if witness:
        payload["command"] = " ".join(
            ["build", shlex.quote(witness["ring"]), "--r", shlex.quote(witness["r"])]
            + ["--a", shlex.quote(witness["a"]), "--b", shlex.quote(witness["b"])]
        )
    return payload


def cmd_classify(args: argparse.Namespace) -> int:
    if args.up_to is not None:
        lines = [json.dumps(_classify_payload(result), ensure_ascii=False) for result in classify_up_to(args.up_to)]
        _emit("\n".join(lines), args.output)
        return 0
    if not args.group:
        raise SpecParseError("classify needs a group such as 'Z/4 + Z/4' or --up-to N")
    result = construct_witness(parse_group_spec(args.group))
    logging.info("%s %s", "✅" if result.realizable else "❌", args.group)
    _emit(json.dumps(_classify_payload(result), indent=2, ensure_ascii=False), args.output)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    spec = parse_ring_spec(args.ring)
    output = args.output
    if output is None:
        config = get_config()
        config.ensure_directories()
        slug = args.ring.replace(":", "-").replace("*", "x").replace(",", "_")
        output = config.output_dir / f"sweep-{slug}.jsonl"
    summary = survey_ring(spec, jsonl_path=output, progress=not args.no_progress)
    sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    return 1 if summary["inconsistent"] else 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parse_args(argv)
    configure_logging(args.verbose)
    try:
        if args.command == "build":
            return cmd_build(args, args.format)
        if args.command in ("tables", "dot"):
            return cmd_build(args, "tsv" if args.command == "tables" else "dot")
        if args.command == "check":
            return cmd_check(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "run":
            return cmd_run(args)
        if args.command == "classify":
            return cmd_classify(args)
        if args.command == "sweep":
            return cmd_sweep(args)
    except LamplighterError as exc:
        logging.error("❌ %s", exc)
        return 2
    return 2  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
