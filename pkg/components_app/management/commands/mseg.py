"""
`python manage.py mseg <subcommand> ...`: the command-line surface.

Exit codes: 0 success, 1 failed verify suite, 2 parse error, 3 randomized
trials without a strict majority, 4 mathematical precondition violated.
"""

import argparse

from django.core.management.base import BaseCommand, CommandError, CommandParser

from components_app.dispatch import COMMANDS, execute
from components_app.exceptions import ComponentError
from components_app.harness import SUITES
from components_app.runconfig import RunConfig

PARSE_ERROR_EXIT = 2

_INPUT_NAMES = {
    "factor": ("composite", "factor"),
    "sigma-decompose": ("multisegment", "sigma"),
    "cw": ("permutation",),
    "verify": ("suite",),
}


def _input_names(command: str, arity: int) -> tuple[str, ...]:
    if command in _INPUT_NAMES:
        return _INPUT_NAMES[command]
    return ("first", "second") if arity == 2 else ("m",)[:arity]


class MsegParser(CommandParser):
    """Argument errors exit with the parse-error status, also under call_command."""

    def error(self, message):
        if self.called_from_command_line:
            super().error(message)
        raise CommandError(f"Error: {message}", returncode=PARSE_ERROR_EXIT)


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="Ambient size (number of sites).")
    common.add_argument("--prime", type=int, default=None, help="Field prime, below 2^62.")
    common.add_argument("--trials", type=int, default=None, help="Independent randomized trials.")
    common.add_argument("--seed", type=int, default=None, help="Seed of the per-trial streams.")
    common.add_argument("--workers", type=int, default=None, help="Threads for trials and sweeps.")
    common.add_argument("--json", action="store_true", default=None, help="Print one JSON object.")
    common.add_argument("--no-timing", action="store_true", default=None,
                        help="Report elapsed_ms as 0 for reproducible output.")
    return common


class Command(BaseCommand):
    help = "Compute invariants of irreducible components indexed by type-A multisegments."

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.__class__ = MsegParser
        return parser

    def add_arguments(self, parser):
        common = _common_flags()
        subparsers = parser.add_subparsers(dest="subcommand", required=True, parser_class=MsegParser)
        for name, (arity, _) in COMMANDS.items():
            sub = subparsers.add_parser(name, parents=[common])
            for input_name in _input_names(name, arity):
                if name == "verify":
                    sub.add_argument(input_name, choices=SUITES)
                else:
                    sub.add_argument(input_name)
            if name == "hom":
                sub.add_argument("--fast", action="store_true", help="Use the T-matrix corank.")
            if name == "star":
                sub.add_argument("--recipe", action="store_true",
                                 help="Use the combinatorial recipe (segment or balanced argument).")
            if name == "verify":
                sub.add_argument("--k", type=int, default=None)
                sub.add_argument("--samples", type=int, default=None)
                sub.add_argument("--max-segments", type=int, default=None)
            if name == "enumerate":
                sub.add_argument("--max-segments", type=int, default=None)
                sub.add_argument("--dims", default=None, help="Exact dimension vector, e.g. 1,2,1.")
                sub.add_argument("--regular", action="store_true")
                sub.add_argument("--ladder", action="store_true")

    def handle(self, *args, **options):
        command = options["subcommand"]
        arity, _ = COMMANDS[command]
        inputs = [options[name] for name in _input_names(command, arity)]

        try:
            config = RunConfig.from_settings().override({
                "n": options.get("n"),
                "prime": options.get("prime"),
                "trials": options.get("trials"),
                "seed": options.get("seed"),
                "workers": options.get("workers"),
                "json": options.get("json"),
                "no_timing": options.get("no_timing"),
            })
            report = execute(command, inputs, options, config)
        except ComponentError as exc:
            raise CommandError(str(exc), returncode=exc.exit_code)

        self.stdout.write(report.render(config.json))
        if not report.ok:
            raise CommandError(f"{command}: some cases failed.", returncode=1)
