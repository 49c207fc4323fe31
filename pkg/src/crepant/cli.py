import argparse
import logging
import sys
from typing import IO, Callable, Dict, List, Optional, Tuple

from .adapters.executors import executor_for
from .adapters.reporting import writer_for
from .domain.errors import ConfigError, CrepantError, RangeError, ResourceBoundError
from .domain.ports import Executor, ReportWriter
from .services.catalog import ComplexCatalogService
from .services.census import CensusService
from .services.chambers import CONES, ChamberService
from .services.classification import BunchClassificationService
from .services.config import OutputFormat, RunConfig
from .services.cox import CoxVerificationService
from .services.crosscheck import SUITES, OracleCrosscheckService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

Handler = Callable[[RunConfig, Executor, ReportWriter, IO[str]], int]


# Parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    common.add_argument("--parallelism", type=int, default=1, help="Worker processes (default: 1)")
    common.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat],
                        default=OutputFormat.JSON.value, help="Output format (default: json)")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for detail")

    parser = argparse.ArgumentParser(prog="crepant", description="Crepant resolutions of hyperpolygon spaces")
    commands = parser.add_subparsers(dest="command", required=True)

    complexes = commands.add_parser("complexes", help="Maximally-biconnected complexes")
    actions = complexes.add_subparsers(dest="action", required=True)
    for name, text in (("count", "Count them"), ("enumerate", "List them as NDJSON"),
                       ("hosten-morris", "lambda(n) by both routes")):
        p = actions.add_parser(name, parents=[common], help=text)
        p.add_argument("--n", type=int, required=True)
        if name != "hosten-morris":
            p.add_argument("--full-only", action="store_true", help="Only complexes containing every singleton")
        if name == "enumerate":
            p.add_argument("--limit", type=int, default=None, help="Stop after this many complexes")

    resolutions = commands.add_parser("resolutions", help="Crepant resolutions")
    actions = resolutions.add_subparsers(dest="action", required=True)
    p = actions.add_parser("census", parents=[common], help="Projective / non-projective census")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--records", action="store_true", help="Stream one record per resolution instead of totals")

    chambers = commands.add_parser("chambers", help="Regions of the parameter arrangements")
    actions = chambers.add_subparsers(dest="action", required=True)
    p = actions.add_parser("count", parents=[common], help="Count regions or chambers")
    p.add_argument("--arrangement", choices=["A", "B"], default="A")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None, help="Subset size for B (default: n/2)")
    p.add_argument("--in-cone", choices=list(CONES), default=None)
    p.add_argument("--at-ray", default=None, help="Comma-separated rationals, e.g. 1,1,1,1,1,1")
    p.add_argument("--method", choices=["enumerate", "charpoly"], default="enumerate")
    p.add_argument("--normals-file", default=None, help="JSON arrangement {\"dim\", \"normals\"}")

    bunches = commands.add_parser("bunches", help="Bunches of orbit cones")
    actions = bunches.add_subparsers(dest="action", required=True)
    p = actions.add_parser("classify", parents=[common], help="Complex <-> bunch correspondence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--chambers", action="store_true", help="Also match the chambers in C0 with the complexes")

    cox = commands.add_parser("cox", help="Cox ring presentation")
    actions = cox.add_subparsers(dest="action", required=True)
    p = actions.add_parser("verify", parents=[common], help="Exact identities and sampled points")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)

    oracle = commands.add_parser("oracle", help="Closed forms against the cone oracle")
    actions = oracle.add_subparsers(dest="action", required=True)
    p = actions.add_parser("crosscheck", parents=[common], help="Run the exhaustive suites")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-k", type=int, default=None, help="Bound #K for the hyperpolygon suites")
    p.add_argument("--suite", action="append", choices=list(SUITES), default=None)
    return parser


# Handlers

def _complexes_count(config: RunConfig, executor: Executor, writer: ReportWriter, out: IO[str]) -> int:
    service = ComplexCatalogService(executor)
    writer.write_report(service.count_report(config.n, config.option("full_only", False)), out)
    return EXIT_OK


def _complexes_enumerate(config: RunConfig, executor: Executor, writer: ReportWriter, out: IO[str]) -> int:
    service = ComplexCatalogService(executor)
    written = writer.write_records(
        service.enumerate(config.n, config.option("full_only", False), config.option("limit")), out
    )
    logger.info("wrote %d complexes", written)
    return EXIT_OK


def _complexes_hosten_morris(config: RunConfig, executor: Executor, writer: ReportWriter, out: IO[str]) -> int:
    writer.write_report(ComplexCatalogService(executor).hosten_morris(config.n), out)
    return EXIT_OK


def _resolutions_census(config: RunConfig, executor: Executor, writer: ReportWriter, out: IO[str]) -> int:
    service = CensusService(executor)
    if config.option("records", False):
        written = writer.write_records(service.record_dicts(config.n), out)
        logger.info("wrote %d records", written)
    else:
        writer.write_report(service.summary(config.n), out)
    return EXIT_OK


def _chambers_count(config: RunConfig, executor: Executor, writer: ReportWriter, out: IO[str]) -> int:
    report = ChamberService(executor).count(
        config.option("arrangement"),
        n=config.n,
        m=config.option("m"),
        in_cone=config.option("in_cone"),
        at_ray=config.option("at_ray"),
        method=config.option("method", "enumerate"),
        normals_file=config.option("normals_file"),
    )
    writer.write_report(report, out)
    return EXIT_OK


def _bunches_classify(config: RunConfig, executor: Executor, writer: ReportWriter, out: IO[str]) -> int:
    service = BunchClassificationService(executor)
    report = service.classify(config.n)
    status = EXIT_OK
    if config.option("chambers", False):
        consistency = service.chamber_consistency(config.n)
        report["chambers_in_C0"] = consistency["chambers"]
        report["chambers_match"] = consistency["matches"]
        if not consistency["matches"]:
            status = EXIT_FAILURE
    writer.write_report(report, out)
    return status


def _cox_verify(config: RunConfig, executor: Executor, writer: ReportWriter, out: IO[str]) -> int:
    service = CoxVerificationService(executor)
    report = service.verify(config.n, config.option("samples", 100), config.seed)
    writer.write_report(report, out)
    return EXIT_OK if service.passed(report) else EXIT_FAILURE


def _oracle_crosscheck(config: RunConfig, executor: Executor, writer: ReportWriter, out: IO[str]) -> int:
    report = OracleCrosscheckService(executor).crosscheck(
        config.n, config.option("max_k"), config.option("suite")
    )
    writer.write_report(report, out)
    return EXIT_FAILURE if report["failures"] else EXIT_OK


HANDLERS: Dict[Tuple[str, str], Handler] = {
    ("complexes", "count"): _complexes_count,
    ("complexes", "enumerate"): _complexes_enumerate,
    ("complexes", "hosten-morris"): _complexes_hosten_morris,
    ("resolutions", "census"): _resolutions_census,
    ("chambers", "count"): _chambers_count,
    ("bunches", "classify"): _bunches_classify,
    ("cox", "verify"): _cox_verify,
    ("oracle", "crosscheck"): _oracle_crosscheck,
}


# Entry point

def _configure_logging(verbose: int) -> None:
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


def dispatch(argv: Optional[List[str]] = None, stdout: Optional[IO[str]] = None) -> int:
    """ Parses argv, runs one command and returns the process exit code. """
    out = sys.stdout if stdout is None else stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse exits 0 for --help and 2 for usage errors
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    _configure_logging(args.verbose)
    try:
        config = RunConfig.from_namespace(args)
        executor = executor_for(config.parallelism)
        writer = writer_for(config.output_format.value)
        return HANDLERS[(config.command, config.action)](config, executor, writer, out)
    except (ConfigError, RangeError, ResourceBoundError) as e:
        print(f"crepant: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CrepantError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_FAILURE
    except Exception:
        logger.exception("unexpected failure")
        return EXIT_FAILURE
