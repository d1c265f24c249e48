"""
Command-line front end.

    python cli.py info --builtin figure8
    python cli.py enumerate data/gieseking.tri --format json
    python cli.py boundary --builtin figure8 --vector 1,0,0,0,0,2 --index

Exit status: 0 on success, 2 for unreadable or invalid input, 3 when a
mathematical self check fails.
"""

import argparse
import logging
import sys

import census
import report
import triangulation
from exceptions import MathematicalAssertionError, TopologyError

logger = logging.getLogger(__name__)

# Configuration
DEFAULT_FORMAT = "text"
EXIT_OK = 0
EXIT_INVALID = 2
EXIT_ASSERTION = 3

COMMANDS = ("info", "basis", "qmatch", "enumerate", "boundary")


def parse_vector(text):
    """Comma-separated integers in machine quad order (tetrahedron-major)."""
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"'{text}' is not a comma-separated list of integers"
        ) from None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="normal-surfaces",
        description="Normal and spun-normal surface computations on ideal triangulations.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub = subparsers.add_parser(name)
        source = sub.add_mutually_exclusive_group(required=True)
        source.add_argument("path", nargs="?", help="triangulation file")
        source.add_argument("--builtin", choices=sorted(census.BUILTINS))
        sub.add_argument("--format", choices=("text", "json"), default=DEFAULT_FORMAT)
        sub.add_argument("--verbose", action="store_true", help="debug logging on stderr")
        if name == "enumerate":
            sub.add_argument("--max-columns", type=int, default=None)
        if name == "boundary":
            sub.add_argument("--vector", type=parse_vector)
            sub.add_argument("--cusp", type=int)
            sub.add_argument("--index", action="store_true")
    return parser


def configure_logging(verbose):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def load_input(args):
    """
    Loads the triangulation named on the command line.
    Returns (triangulation, source label), or None if the file is missing
    or unreadable.
    """
    if args.builtin is not None:
        return census.load_builtin(args.builtin), f"builtin {args.builtin}"
    try:
        return triangulation.load(args.path), args.path
    except FileNotFoundError:
        print(f"Error: The file {args.path} was not found.", file=sys.stderr)
        return None
    except (OSError, UnicodeDecodeError) as error:
        print(f"Error: The file {args.path} could not be read: {error}", file=sys.stderr)
        return None


def build_document(args, tri, source):
    if args.command == "info":
        return report.info_document(tri, source)
    if args.command == "basis":
        return report.basis_document(tri, source)
    if args.command == "qmatch":
        return report.qmatch_document(tri, source)
    if args.command == "enumerate":
        return report.enumerate_document(
            tri, source, max_columns=args.max_columns, builtin=args.builtin
        )
    return report.boundary_document(
        tri, source, vector=args.vector, cusp=args.cusp, index=args.index,
        builtin=args.builtin,
    )


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)

    if args.command == "boundary" and args.vector is None and not args.index:
        parser.error("boundary needs --vector, --index or both")

    try:
        loaded = load_input(args)
        if loaded is None:
            return EXIT_INVALID
        tri, source = loaded
        document = build_document(args, tri, source)
    except MathematicalAssertionError as error:
        logger.error("self check failed: %s", error)
        print(f"Error: {type(error).__name__}: {error}", file=sys.stderr)
        return EXIT_ASSERTION
    except TopologyError as error:
        print(f"Error: {type(error).__name__}: {error}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as error:
        print(f"Error: {error}", file=sys.stderr)
        return EXIT_INVALID

    print(report.render(document, args.format), end="")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
