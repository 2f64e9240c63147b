#!/usr/bin/env python3
"""
Command-line interface for labeled Coxeter polytopes and their integral
Vinberg representations.

Every command reads one JSON document given by ``--input`` (a path, ``-``
for stdin, or ``catalog:<name>`` for an embedded example) and writes a
report in the chosen ``--format`` to ``--output`` or stdout.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Sequence

import pandas as pd
import yaml

from src.cartan import CartanMatrix, components, coxeter_of, cosine_matrix, validate_cartan
from src.coxeter import classify, refine, validate_coxeter
from src.data import emit, from_document, list_catalog
from src.deform import assemble, bending_data, cell_chart, point_from_json
from src.integral import enumeration_report, fiber_sweep, integral_check
from src.polytope import LabeledPolytope, gluing_tree, polytope_from_json
from src.realize import realize, realize_point, traces_integral, verify_relations, word_traces
from src.utils.basic_utils import load_config
from src.utils.conversion_utils import ConversionUtils
from src.utils.errors import ParseError, Reducible, ToleranceExceeded, ValidationError, VinbergError

logger = logging.getLogger(__name__)

COMMANDS = ("classify", "deform-info", "enumerate", "sweep", "verify", "realize", "catalog")
FORMATS = ("json", "csv", "text", "dot")


@dataclass
class CommandResult:
    """A finished report in every form the command supports."""

    report: Any
    text: str
    frame: Optional[pd.DataFrame] = None
    dot: Optional[str] = None
    exit_code: int = 0


def _global_flags() -> argparse.ArgumentParser:
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--input", "-i", help="Input JSON document, '-' for stdin or catalog:<name>")
    flags.add_argument("--output", "-o", help="Write the report here instead of stdout")
    flags.add_argument("--format", "-f", choices=FORMATS, help="Report format (overrides config)")
    flags.add_argument("--config", default="config/vinberg_config.yaml", help="Path to configuration file")
    flags.add_argument("--seed", type=int, help="Seed of the word-trace probe (overrides config)")
    flags.add_argument("--parallel", type=int, help="Worker threads for enumeration (overrides config)")
    flags.add_argument("--oracle", action="store_true", help="Cross-check enumeration with the direct search")
    flags.add_argument("--quotient-symmetry", action="store_true", help="Also count points up to label symmetry")
    flags.add_argument("--tolerance-eps", type=float, help="Tolerance of the float relation checks (overrides config)")
    flags.add_argument("--verbose", "-v", action="store_true", help="Enable verbose output")
    flags.add_argument("--debug", action="store_true", help="Enable debug logging")
    return flags


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments."""
    flags = _global_flags()
    parser = argparse.ArgumentParser(
        description="Integral Vinberg representations of labeled Coxeter truncation polytopes",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "classify": "Spherical/affine/large class and Perron type of a Coxeter or Cartan matrix",
        "deform-info": "Chart of the deformation space of a labeled polytope",
        "enumerate": "All integral points of a truncation polytope",
        "sweep": "Bending-fiber candidates of one gluing edge",
        "verify": "Re-derive the integrality certificate of a point",
        "realize": "Generator matrices, relation checks and word traces",
        "catalog": "List the embedded examples or emit one as input JSON",
    }
    commands = {}
    for name in COMMANDS:
        commands[name] = sub.add_parser(
            name, parents=[flags], help=helps[name], formatter_class=argparse.ArgumentDefaultsHelpFormatter
        )
    commands["sweep"].add_argument("--edge", type=int, default=0, help="Index of the gluing-tree edge")
    commands["realize"].add_argument("--hex-floats", action="store_true", help="Write matrices as hex floats")
    commands["catalog"].add_argument("name", nargs="?", help="Entry to emit; lists all entries when omitted")
    return parser.parse_args(argv)


def update_config(config: Dict[str, Any], args: argparse.Namespace) -> Dict[str, Any]:
    """Update configuration with command line arguments."""
    if args.format is not None:
        config["output"]["format"] = args.format
    if args.seed is not None:
        config["random_seed"] = args.seed
    if args.parallel is not None:
        config["enumeration"]["parallel"] = args.parallel
    if args.oracle:
        config["enumeration"]["oracle"] = True
    if args.quotient_symmetry:
        config["enumeration"]["quotient_symmetry"] = True
    if args.tolerance_eps is not None:
        config["tolerances"]["relation_eps"] = args.tolerance_eps
    return config


def setup_logging(verbose: bool, debug: bool) -> None:
    """Set up logging configuration."""
    log_level = logging.INFO
    if debug:
        log_level = logging.DEBUG
    elif not verbose:
        log_level = logging.WARNING

    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stdout)],
    )


# input


def read_document(source: Optional[str]) -> Mapping:
    if source is None:
        raise ValidationError("this command needs --input")
    if source.startswith("catalog:"):
        return emit(source[len("catalog:"):])
    if source == "-":
        try:
            return json.load(sys.stdin)
        except json.JSONDecodeError as e:
            raise ParseError(f"Error parsing JSON from stdin: {str(e)}")
    return ConversionUtils.load_json(source)


def polytope_of(doc: Mapping) -> LabeledPolytope:
    if "polytope" not in doc:
        raise ParseError("input has no 'polytope' field")
    return polytope_from_json(doc["polytope"])


def point_of(doc: Mapping):
    """Deformation point of a document with a polytope and an optional "point"."""
    chart = cell_chart(polytope_of(doc))
    return point_from_json(chart, doc.get("point"))


def _violations(violations) -> List[dict]:
    return [{"where": list(v.where), "message": v.message} for v in violations]


# commands


def cmd_classify(doc: Mapping, config: Dict[str, Any]) -> CommandResult:
    eps = config["tolerances"]["approx_eps"]
    if "cartan" in doc:
        A = CartanMatrix.from_json(doc["cartan"])
        bad = validate_cartan(A, eps)
        if bad:
            raise ValidationError(f"invalid Cartan matrix ({len(bad)} violations)", detail=_violations(bad))
        M = coxeter_of(A)
    else:
        M = from_document(doc)
        if isinstance(M, LabeledPolytope):
            M = M.coxeter_matrix()
        bad = validate_coxeter(M)
        if bad:
            raise ValidationError(f"invalid Coxeter matrix ({len(bad)} violations)", detail=_violations(bad))
        A = cosine_matrix(M)

    try:
        group = refine(M)
    except Reducible:
        group = classify(M, require_irreducible=False)
    parts = components(A, eps)
    report = {
        "index": list(M.index),
        "group": group.to_json(),
        "components": [{"facets": list(c), "perron": r.to_json()} for c, r in parts],
    }
    summary = f"{group.kind.value.capitalize()}"
    if len(parts) == 1:
        perron = parts[0][1]
        summary += f", {perron.type.value} type, rank {perron.rank}"
    else:
        summary += ", " + "; ".join(f"{list(c)}: {r.type.value}" for c, r in parts)
    if group.is_lanner:
        summary += ", Lannér"
    elif group.is_2lanner:
        summary += ", 2-Lannér"
    return CommandResult(report, summary, dot=M.to_dot())


def cmd_deform_info(doc: Mapping, config: Dict[str, Any]) -> CommandResult:
    G = polytope_of(doc)
    chart = cell_chart(G)
    W = G.coxeter_matrix()
    obstructions = []
    for edge in gluing_tree(G).edges:
        group = classify(W.restrict(edge.delta), require_irreducible=False)
        if group.is_affine:
            obstructions.append(list(edge.delta))
    report = {"chart": chart.to_json(), "obstructions": obstructions, "connectedness_obstruction": bool(obstructions)}
    text = (
        f"{chart.case.value}: dim {chart.dimension} (e_plus {G.e_plus} - d {G.dim}), "
        f"{len(chart.circuits)} circuits, {len(chart.constraints)} constraints, {chart.bends} bends"
    )
    if obstructions:
        text += f"; affine interfaces {obstructions}"
    return CommandResult(report, text, dot=W.to_dot())


def cmd_enumerate(doc: Mapping, config: Dict[str, Any]) -> CommandResult:
    G = polytope_of(doc)
    opts = config["enumeration"]
    report = enumeration_report(
        G, parallel=opts["parallel"], oracle=opts["oracle"], quotient_symmetry=opts["quotient_symmetry"]
    )
    if not report.feasibility.feasible:
        text = f"infeasible: {report.feasibility.reason}"
        return CommandResult(report.to_json(), text, report.to_frame(), exit_code=3)
    text = f"{report.count} integral points"
    if report.quotient is not None:
        text += f", {len(report.quotient)} up to symmetry"
    if report.shortcut is not None:
        text += f" ({report.shortcut.kind} at {list(report.shortcut.facets)})"
    if report.oracle_count is not None:
        text += f", direct search agrees ({report.oracle_count})"
    return CommandResult(report.to_json(), text, report.to_frame())


def cmd_sweep(doc: Mapping, config: Dict[str, Any], edge: int) -> CommandResult:
    pt = point_of(doc)
    data = bending_data(pt, edge)
    result = fiber_sweep(data, pt)
    bounds = result.bounds
    report = {
        "edge": edge,
        "fiber": data.to_json(),
        "bounds": [str(b) for b in bounds] if bounds else None,
        "rows": [row.to_record() for row in result.rows],
        "survivors": len(result.survivors),
    }
    text = f"edge {edge}: {len(result.survivors)} of {len(result.rows)} candidates integral"
    if bounds:
        text += f", E in [{bounds[0]}, {bounds[1]}]"
    return CommandResult(report, text, result.to_frame())


def cmd_verify(doc: Mapping, config: Dict[str, Any]) -> CommandResult:
    pt = point_of(doc)
    certificate = integral_check(pt, config["limits"]["max_cycles"])
    report = {"integral": True, "certificate": certificate.to_json()}
    frame = pd.DataFrame([{"circuit": str(c), "value": v} for c, v in certificate.entries])
    return CommandResult(report, f"integral: {len(certificate.entries)} products certified", frame)


def cmd_realize(doc: Mapping, config: Dict[str, Any], hex_floats: bool = False) -> CommandResult:
    tol = config["tolerances"]
    if "cartan" in doc:
        A = CartanMatrix.from_json(doc["cartan"])
        R = realize(A, eps=tol["reproduction_eps"])
    else:
        pt = point_of(doc)
        A = assemble(pt, validate=True).matrix
        R = realize_point(pt, eps=tol["reproduction_eps"])
    relations = verify_relations(R, coxeter_of(A), tol=tol["relation_eps"], strict=False)
    probe = config["probe"]
    seed = config["random_seed"]
    traces = word_traces(R, count=probe["word_count"], max_len=probe["max_word_length"], seed=seed)
    integral, worst = traces_integral(traces, tol["trace_eps"])
    report = {
        "realization": R.to_json(hex_floats=hex_floats),
        "relations": relations.to_json(),
        "probe": {
            "seed": seed,
            "count": len(traces),
            "max_length": probe["max_word_length"],
            "integral_traces": integral,
            "worst": worst.to_record() if worst else None,
        },
    }
    text = (
        f"dimension {R.dimension}, reproduction error {R.error:.2e}; relations "
        f"{'ok' if relations.ok else f'{len(relations.failures)} failed'}; traces "
        f"{'integral' if integral else 'not integral'} (seed {seed})"
    )
    exit_code = 0 if relations.ok else ToleranceExceeded.exit_code
    return CommandResult(report, text, relations.to_frame(), exit_code=exit_code)


def cmd_catalog(name: Optional[str]) -> CommandResult:
    if name is None:
        rows = list_catalog()
        text = "\n".join(f"{r['name']:<24} {r['kind']:<9} {r['description']}" for r in rows)
        return CommandResult(rows, text, pd.DataFrame(rows))
    doc = emit(name)
    return CommandResult(doc, ConversionUtils.dumps(doc).rstrip("\n"))


def run_command(args: argparse.Namespace, config: Dict[str, Any]) -> CommandResult:
    if args.command == "catalog":
        return cmd_catalog(args.name)
    doc = read_document(args.input)
    logger.info("running %s on %s", args.command, args.input)
    if args.command == "classify":
        return cmd_classify(doc, config)
    if args.command == "deform-info":
        return cmd_deform_info(doc, config)
    if args.command == "enumerate":
        return cmd_enumerate(doc, config)
    if args.command == "sweep":
        return cmd_sweep(doc, config, args.edge)
    if args.command == "verify":
        return cmd_verify(doc, config)
    return cmd_realize(doc, config, args.hex_floats)


def render(result: CommandResult, fmt: str, command: str = "") -> str:
    if fmt == "json":
        return ConversionUtils.dumps(result.report)
    if fmt == "text":
        return result.text + "\n"
    if fmt == "csv":
        if result.frame is None:
            raise ValidationError(f"{command} has no CSV form")
        return result.frame.to_csv(index=False)
    if result.dot is None:
        raise ValidationError(f"{command} has no DOT form")
    return result.dot


def write_output(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w") as f:
        f.write(text)
    logger.info("report written to %s", path)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI function; returns the exit code."""
    args = parse_args(argv)
    setup_logging(args.verbose, args.debug)
    try:
        config = update_config(load_config(args.config), args)
        result = run_command(args, config)
        write_output(render(result, config["output"]["format"], args.command), args.output)
        return result.exit_code
    except VinbergError as e:
        print(f"Error: {str(e)}", file=sys.stderr)
        if e.detail is not None:
            detail = ConversionUtils.convert_to_serializable(e.detail)
            print(json.dumps(detail, default=str, indent=2, sort_keys=True), file=sys.stderr)
        return e.exit_code
    except (FileNotFoundError, yaml.YAMLError) as e:
        print(f"Error: {str(e)}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
