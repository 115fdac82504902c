import argparse
import logging
import sys

from rich.console import Console
from rich.logging import RichHandler

from .config import Command, FitChoice, OutputFormat, build_run_config
from .constants import app_configuration
from .exceptions import ExceptionContext, UsageError
from .fitting import Subset
from .model import Branch
from .runner import run
from .subcommands.help_cmd import show_help
from .sweep import Solver

# argparse dest -> dotted RunConfig key
FLAG_KEYS = {
    "delta": "delta",
    "g": "g",
    "g_over_gc": "g_over_gc",
    "n_max": "n_max",
    "quad_order": "quad_order",
    "levels": "n_levels",
    "solver": "solver",
    "branch": "branch",
    "bo_method": "bo_method",
    "ed_method": "ed_method",
    "output": "output",
    "format": "format",
    "concurrency": "concurrency",
    "xi_min": "grid.xi_min",
    "xi_max": "grid.xi_max",
    "points": "grid.points",
    "state": "state",
    "mode": "population_mode",
    "fit": "fit",
    "subset": "subset",
    "pin_shift": "pin_shift",
    "sizes": "sizes",
}


class ArgumentParser(argparse.ArgumentParser):
    """Reports usage errors as UsageError so main() owns the exit status."""

    def error(self, message):
        raise UsageError(message)


def _choices(enum_type):
    return [member.value for member in enum_type]


def add_common_arguments(parser):
    parser.add_argument("--config", type=str, help="key=value, .json or .yaml config file")
    parser.add_argument("--delta", type=str, help="Qubit splitting (list for compare)")
    coupling = parser.add_mutually_exclusive_group()
    coupling.add_argument("--g", type=str, help="Coupling strength, or a grid for sweep")
    coupling.add_argument(
        "--g-over-gc",
        dest="g_over_gc",
        type=str,
        help="Coupling in units of g_c: value, list a,b,c or range start:stop:count",
    )
    parser.add_argument("--n-max", dest="n_max", type=int, help="Fock truncation size N")
    parser.add_argument("--quad-order", dest="quad_order", type=int, help="Gauss-Hermite order")
    parser.add_argument("--levels", type=int, help="Number of levels K")
    parser.add_argument("--solver", choices=_choices(Solver), help="bo, ed or both")
    parser.add_argument("--branch", choices=_choices(Branch), help="Adiabatic branch")
    parser.add_argument("-o", "--output", type=str, help="Artifact path ('-' for stdout)")
    parser.add_argument("--format", choices=_choices(OutputFormat), help="csv or json")
    parser.add_argument(
        "-c", "--concurrency", type=int, help="Maximum number of points solved at once"
    )
    parser.add_argument("-q", "--quiet", action="store_true", help="No summary or progress")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="More logging (repeat for debug)"
    )
    parser.add_argument(
        "key_values", nargs="*", help="key=value arguments that patch the configuration"
    )


def add_grid_arguments(parser):
    parser.add_argument("--xi-min", dest="xi_min", type=float, help="Grid start")
    parser.add_argument("--xi-max", dest="xi_max", type=float, help="Grid end")
    parser.add_argument("--points", type=int, help="Number of grid points")


def add_state_arguments(parser):
    parser.add_argument("--state", type=int, help="State index k")
    parser.add_argument(
        "--mode",
        choices=["projected", "coefficients"],
        help="BO population: project Phi on Fock states, or square psi's coefficients",
    )
    parser.add_argument("--subset", choices=_choices(Subset), help="Fock indices to fit")
    parser.add_argument(
        "--pin-shift",
        dest="pin_shift",
        action="store_const",
        const=True,
        help="Fix the fit shift n0 at 0",
    )


def add_method_arguments(parser):
    parser.add_argument("--bo-method", dest="bo_method", choices=["blocks", "full"])
    parser.add_argument("--ed-method", dest="ed_method", choices=["full", "parity"])


def make_parser():
    parser = ArgumentParser(
        prog=app_configuration["program_name"],
        description="Born-Oppenheimer and exact spectra of the quantum Rabi model.",
    )
    subparsers = parser.add_subparsers(dest="command", help="Subcommands")

    # 'help' subcommand
    help_parser = subparsers.add_parser("help", help="Show help for rabibo commands")
    help_parser.add_argument("subcommand", nargs="?", help="The subcommand to show help for")

    spectrum_parser = subparsers.add_parser(
        "spectrum", help="Lowest levels and parities at one coupling"
    )
    add_common_arguments(spectrum_parser)
    add_method_arguments(spectrum_parser)

    sweep_parser = subparsers.add_parser(
        "sweep", help="Levels, parities and photon numbers over a coupling grid"
    )
    add_common_arguments(sweep_parser)

    potential_parser = subparsers.add_parser(
        "potential", help="Adiabatic surfaces and effective potentials"
    )
    add_common_arguments(potential_parser)
    add_grid_arguments(potential_parser)

    wavefunction_parser = subparsers.add_parser(
        "wavefunction", help="One state's wavefunction on a position grid"
    )
    add_common_arguments(wavefunction_parser)
    add_grid_arguments(wavefunction_parser)
    add_method_arguments(wavefunction_parser)
    wavefunction_parser.add_argument("--state", type=int, help="State index k")

    population_parser = subparsers.add_parser(
        "population", help="Photon population P(n), optionally fitted"
    )
    add_common_arguments(population_parser)
    add_state_arguments(population_parser)
    population_parser.add_argument(
        "--fit", choices=_choices(FitChoice), help="Distribution family to fit"
    )

    fit_parser = subparsers.add_parser(
        "fit", help="Classify a population as Poisson, GOE or GUE"
    )
    add_common_arguments(fit_parser)
    add_state_arguments(fit_parser)

    convergence_parser = subparsers.add_parser(
        "convergence", help="Ground energy against truncation size"
    )
    add_common_arguments(convergence_parser)
    convergence_parser.add_argument("--sizes", type=str, help="Truncation sizes, e.g. 50,100,150")

    compare_parser = subparsers.add_parser(
        "compare", help="BO against exact ground states over delta and g/g_c grids"
    )
    add_common_arguments(compare_parser)

    return parser


def configure_logging(verbosity: int):
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logger = logging.getLogger("rabibo")
    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)
    handler = RichHandler(console=Console(stderr=True), show_path=False)
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.setLevel(level)


def main(argv: list[str] | None = None) -> int:
    """
    Exit status: 0 on success, 2 for usage errors, 1 for any other failure.
    Failures are reported as one line on stderr.
    """
    program = app_configuration["program_name"]
    parser = make_parser()
    ExceptionContext.clear_context()
    try:
        args = parser.parse_args(argv)

        if args.command is None:
            parser.print_help(sys.stderr)
            return 2
        if args.command == "help":
            show_help(parser, args)
            return 0

        configure_logging(args.verbose)
        flags = {key: getattr(args, dest, None) for dest, key in FLAG_KEYS.items()}
        config = build_run_config(Command(args.command), args.config, flags, args.key_values)
        return run(config, quiet=args.quiet)

    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else 0
    except UsageError as e:
        print(f"{program}: error: {ExceptionContext.format_line(e)}", file=sys.stderr)
        return 2
    except Exception as e:
        print(f"{program}: error: {ExceptionContext.format_line(e)}", file=sys.stderr)
        return 1
    finally:
        ExceptionContext.clear_context()


def entry_point():
    sys.exit(main())
