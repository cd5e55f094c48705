#!/usr/bin/env python3
"""
kempe-recon - Main Entry Point

Certifies that the clash-free timetables of benchmark instances form a
connected search space under Kempe-exchanges, and exposes the reconfiguration,
reduction and brute-force oracle machinery behind those certificates.
"""

import argparse
import logging
import sys
from functools import wraps
from typing import List, Optional

from kempe_recon import __version__
from kempe_recon.Agents.CertificationAgent import CertificationAgent
from kempe_recon.config import Config
from kempe_recon.data_sources import FORMAT_HINTS, TOY_BLOCK_ALIASES, dump_normalized, load_instance, load_toy_instance
from kempe_recon.exceptions import KempeReconError
from kempe_recon.graphs import Coloring, degeneracy, read_dimacs
from kempe_recon.oracle import (
    ELEMENTARY,
    KEMPE,
    block_order_enumerate,
    build_reconfig_graph,
    connectivity,
    enumerate_colorings,
)
from kempe_recon.reconfiguration import compact_plan, kempe_reconfigure, read_plan, write_plan
from kempe_recon.reconfiguration import replay as replay_plan
from kempe_recon.reduction import fixed_set, reduce_instance
from kempe_recon.report import REPORT_FORMATS
from kempe_recon.utils import decorate_all_methods, read_text, save_output

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_UNPARSED = 2


def configure_logging(level: str) -> None:
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    log_file = Config.get_log_file()
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def emit(text: str, tag: str, out: Optional[str]) -> None:
    if out:
        save_output(text, tag, out)
    else:
        sys.stdout.write(text)


def read_lists(text: str) -> List[List[int]]:
    """One line per vertex with its allowed colors."""
    return [[int(c) for c in line.split()] for line in text.splitlines() if line.strip()]


def init_command(func):
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (KempeReconError, OSError, ValueError) as e:
            logger.error(f"{func.__name__} failed: {e}")
            return EXIT_FAILED

    return wrapper


@decorate_all_methods(init_command)
class Commands:
    """Subcommand handlers; each takes the parsed arguments and returns an exit code."""

    def certify(args: argparse.Namespace) -> int:
        agent = CertificationAgent(format_hint=args.format, jobs=args.jobs)
        report = agent.execute_task(args.paths, timestamp=not args.no_timestamp)
        emit(report.render(args.report), "Certification report", args.out)
        if not report.all_parsed:
            logger.warning(f"{len(report.failures)} of {len(args.paths)} files could not be certified")
            return EXIT_UNPARSED
        return EXIT_OK

    def reconfigure(args: argparse.Namespace) -> int:
        graph = read_dimacs(read_text(args.graph))
        source = Coloring.from_text(read_text(args.source), args.k)
        target = Coloring.from_text(read_text(args.target), args.k)
        _, ordering = degeneracy(graph)
        plan = kempe_reconfigure(graph, ordering, source, target, args.k)
        if not plan.succeeded:
            logger.error(
                f"Palette {args.k} too small: vertex {plan.failure.vertex + 1} stuck at stage {plan.failure.stage}"
            )
            return EXIT_FAILED
        if args.compact:
            plan = compact_plan(graph, plan)
        emit(write_plan(plan), "Exchange plan", args.out)
        return EXIT_OK

    def replay(args: argparse.Namespace) -> int:
        graph = read_dimacs(read_text(args.graph))
        palette, exchanges = read_plan(read_text(args.plan))
        start = Coloring.from_text(read_text(args.coloring), palette)
        _, trace = replay_plan(graph, start, exchanges)
        emit("".join(c.to_text() for c in trace), "Replay trace", args.out)
        return EXIT_OK

    def oracle(args: argparse.Namespace) -> int:
        graph = read_dimacs(read_text(args.graph))
        lists = read_lists(read_text(args.lists)) if args.lists else None
        colorings = enumerate_colorings(graph, args.k, lists, Config.get_oracle_caps())
        relations = [ELEMENTARY, KEMPE] if args.relation == "both" else [args.relation]
        lines = [f"colorings {len(colorings)}"]
        for relation in relations:
            reconfig = build_reconfig_graph(graph, colorings, relation)
            stats = connectivity(reconfig)
            diameter = "inf" if stats.diameter == float("inf") else str(stats.diameter)
            lines.append(
                f"{relation} edges {len(reconfig.edges)} connected {str(stats.connected).lower()} "
                f"components {stats.component_count} diameter {diameter}"
            )
            if args.export:
                save_output(reconfig.to_dimacs(), f"{relation} graph", f"{args.export}.{relation}.dimacs")
                save_output(reconfig.manifest(), f"{relation} nodes", f"{args.export}.{relation}.nodes")
        emit("\n".join(lines) + "\n", "Oracle summary", args.out)
        return EXIT_OK

    def reduce(args: argparse.Namespace) -> int:
        instance = load_instance(args.instance, args.format)
        if args.normalized:
            emit(dump_normalized(instance), "Normalized instance", args.out)
            return EXIT_OK
        reduced = reduce_instance(instance)
        fixed = fixed_set(reduced)
        logger.info(f"{instance.name}: {len(fixed)} fixed vertices, {reduced.p} clique vertices")
        emit(reduced.to_dimacs(), "Reduced graph", args.out)
        return EXIT_OK

    def toy_proof(args: argparse.Namespace) -> int:
        instance = load_toy_instance()
        reduced = reduce_instance(instance)
        course_blocks = instance.course_blocks()
        blocks = {alias: course_blocks[course] for alias, course in TOY_BLOCK_ALIASES.items()}
        table = block_order_enumerate(reduced, blocks, fixed_set(reduced), last="G")
        if args.report == "md":
            body = table.to_markdown(index=False)
        else:
            body = table.to_csv(index=False, lineterminator="\n").rstrip("\n")
        emit(f"{body}\n# minimum {int(table['max'].min())}\n", "Block order table", args.out)
        return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kempe-recon", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="overrides LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    certify = sub.add_parser("certify", help="certify benchmark instances")
    certify.add_argument("paths", nargs="+")
    certify.add_argument("--format", choices=FORMAT_HINTS, default="auto")
    certify.add_argument("--report", choices=REPORT_FORMATS, default="csv")
    certify.add_argument("--out")
    certify.add_argument("--no-timestamp", action="store_true")
    certify.add_argument("--jobs", type=int, default=None)
    certify.set_defaults(handler=Commands.certify)

    reconfigure = sub.add_parser("reconfigure", help="Kempe-exchange plan between two colorings")
    reconfigure.add_argument("--graph", required=True)
    reconfigure.add_argument("--source", required=True)
    reconfigure.add_argument("--target", required=True)
    reconfigure.add_argument("-k", type=int, required=True)
    reconfigure.add_argument("--compact", action="store_true")
    reconfigure.add_argument("--out")
    reconfigure.set_defaults(handler=Commands.reconfigure)

    replay_cmd = sub.add_parser("replay", help="replay a plan and print every intermediate coloring")
    replay_cmd.add_argument("--graph", required=True)
    replay_cmd.add_argument("--coloring", required=True)
    replay_cmd.add_argument("--plan", required=True)
    replay_cmd.add_argument("--out")
    replay_cmd.set_defaults(handler=Commands.replay)

    oracle_cmd = sub.add_parser("oracle", help="reconfiguration graph statistics of a small graph")
    oracle_cmd.add_argument("--graph", required=True)
    oracle_cmd.add_argument("-k", type=int, required=True)
    oracle_cmd.add_argument("--lists")
    oracle_cmd.add_argument("--relation", choices=[ELEMENTARY, KEMPE, "both"], default="both")
    oracle_cmd.add_argument("--export", help="path prefix for DIMACS edges and node manifests")
    oracle_cmd.add_argument("--out")
    oracle_cmd.set_defaults(handler=Commands.oracle)

    reduce_cmd = sub.add_parser("reduce", help="dump the reduced graph of an instance")
    reduce_cmd.add_argument("instance")
    reduce_cmd.add_argument("--format", choices=FORMAT_HINTS, default="auto")
    reduce_cmd.add_argument("--normalized", action="store_true", help="dump the normalized instance instead")
    reduce_cmd.add_argument("--out")
    reduce_cmd.set_defaults(handler=Commands.reduce)

    toy = sub.add_parser("toy-proof", help="block order enumeration on the built-in toy instance")
    toy.add_argument("--report", choices=REPORT_FORMATS, default="csv")
    toy.add_argument("--out")
    toy.set_defaults(handler=Commands.toy_proof)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or Config().log_level)
    logger.debug(f"Configuration: {Config().get_all_config()}")
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
