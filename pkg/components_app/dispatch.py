"""
Subcommand dispatch shared by the `mseg` management command and the HTTP views.

Every handler takes the positional input strings, a dict of subcommand
options and a RunConfig, and returns a Report. Reports render either as
one line of JSON with the schema

    {command, inputs, value, trials, error_bound, elapsed_ms}

or as plain text for humans.
"""

import io
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Mapping, Optional, Sequence

from django.core.management import call_command
from django.core.management.base import CommandError
from rest_framework.renderers import JSONRenderer

from . import engine
from .activity_log import log_activity
from .basic import parse_basic
from .exceptions import ComponentError, MultisegmentSyntaxError, PreconditionError
from .harness import SUITES, enumerate_multisegments, verify_suite
from .matching import hom_pi_lamina, matching_condition
from .multisegments import DimVector, Multisegment, concatenation_applies, parse_multisegment
from .patterns import (
    find_unbalanced_witness,
    is_ladder,
    is_regular,
    is_split,
    parse_permutation,
    permutation_ops,
)
from .recipes import balanced_peel, sigma_machinery, star_balanced, star_segment, star_segment_right
from .runconfig import RunConfig

logger = logging.getLogger(__name__)


@dataclass
class Report:
    command: str
    inputs: list[str]
    value: Any
    trials: int = 0
    error_bound: Optional[Fraction] = Fraction(0)
    human: str = ""
    elapsed_ms: int = 0
    ok: bool = True

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "value": self.value,
            "trials": self.trials,
            "error_bound": None if self.error_bound is None else str(self.error_bound),
            "elapsed_ms": self.elapsed_ms,
        }

    def render(self, as_json: bool) -> str:
        if as_json:
            return JSONRenderer().render(self.to_json()).decode("utf-8")
        return self.human


def _bool_text(value: bool) -> str:
    return "true" if value else "false"


def _multisegments(texts: Sequence[str], n: Optional[int]) -> list[Multisegment]:
    """Parse inputs onto one ambient size: --n, else the largest inferred one."""
    if n is None:
        n = max(parse_multisegment(text).n for text in texts)
    return [parse_multisegment(text, n) for text in texts]


def _verdict_report(command: str, inputs: Sequence[str], verdict: engine.RandomizedVerdict,
                    value: Any, human: str) -> Report:
    return Report(command, list(inputs), value, verdict.trials, verdict.error_bound, human)


# ---------------------------------------------------------------------------
# Handlers
# ---------------------------------------------------------------------------

def _star(inputs, options, config: RunConfig) -> Report:
    m, n = _multisegments(inputs, config.n)
    if options.get("recipe"):
        if len(m) == 1:
            result = star_segment(m[0], n, config.trial_config)
        elif len(n) == 1:
            result = star_segment_right(m, n[0], config.trial_config)
        else:
            result = star_balanced(m, n, config.trial_config)
        return Report("star", list(inputs), result.to_text(), config.trials, None, result.to_text())
    verdict = engine.star(m, n, config.trial_config)
    return _verdict_report("star", inputs, verdict, verdict.value.to_text(), verdict.value.to_text())


def _hom(inputs, options, config: RunConfig) -> Report:
    m, n = _multisegments(inputs, config.n)
    verdict = engine.hom_pi(m, n, config.trial_config, fast=bool(options.get("fast")))
    return _verdict_report("hom", inputs, verdict, verdict.value, str(verdict.value))


def _ext1(inputs, options, config: RunConfig) -> Report:
    m, n = _multisegments(inputs, config.n)
    verdict = engine.ext1_pi(m, n, config.trial_config)
    return _verdict_report("ext1", inputs, verdict, verdict.value, str(verdict.value))


def _rigid(inputs, options, config: RunConfig) -> Report:
    (m,) = _multisegments(inputs, config.n)
    verdict = engine.is_rigid(m, config.trial_config)
    return _verdict_report("rigid", inputs, verdict, verdict.value, _bool_text(verdict.value))


def _commute(inputs, options, config: RunConfig) -> Report:
    m, n = _multisegments(inputs, config.n)
    verdict = engine.commute(m, n, config.trial_config)
    return _verdict_report("commute", inputs, verdict, verdict.value, _bool_text(verdict.value))


def _strong_commute(inputs, options, config: RunConfig) -> Report:
    m, n = _multisegments(inputs, config.n)
    verdict = engine.strongly_commute(m, n, config.trial_config)
    return _verdict_report("strong-commute", inputs, verdict, verdict.value, _bool_text(verdict.value))


def _mw(inputs, options, config: RunConfig) -> Report:
    (m,) = _multisegments(inputs, config.n)
    verdict = engine.mw_involution(m, config.trial_config)
    return _verdict_report("mw", inputs, verdict, verdict.value.to_text(), verdict.value.to_text())


def _dual(inputs, options, config: RunConfig) -> Report:
    (m,) = _multisegments(inputs, config.n)
    text = m.dual().to_text()
    return Report("dual", list(inputs), text, human=text)


def _grdim(inputs, options, config: RunConfig) -> Report:
    (m,) = _multisegments(inputs, config.n)
    counts = list(m.grdim().counts)
    return Report("grdim", list(inputs), counts, human=" ".join(str(c) for c in counts))


def _regular(inputs, options, config: RunConfig) -> Report:
    (m,) = _multisegments(inputs, config.n)
    value = is_regular(m)
    return Report("regular", list(inputs), value, human=_bool_text(value))


def _balanced(inputs, options, config: RunConfig) -> Report:
    (m,) = _multisegments(inputs, config.n)
    if not is_regular(m):
        raise PreconditionError(f"{m} is not regular; balance is defined for regular multisegments.")
    witness = find_unbalanced_witness(m)
    human = _bool_text(witness is None)
    if witness is not None:
        human += f" (type {witness.kind}: {'+'.join(str(s) for s in witness.segments)})"
    return Report("balanced", list(inputs), witness is None, human=human)


def _split(inputs, options, config: RunConfig) -> Report:
    (m,) = _multisegments(inputs, config.n)
    value = is_split(m)
    return Report("split", list(inputs), value, human=_bool_text(value))


def _ladder(inputs, options, config: RunConfig) -> Report:
    (m,) = _multisegments(inputs, config.n)
    value = is_ladder(m)
    return Report("ladder", list(inputs), value, human=_bool_text(value))


def _matching(inputs, options, config: RunConfig) -> Report:
    m, n = _multisegments(inputs, config.n)
    result = matching_condition(m, n)
    value = result.to_json()
    # Ext^1_Q(n, m) = 0 already forces star(n, m) = n + m
    value["quiver_concatenation"] = concatenation_applies(n, m)
    human = f"{_bool_text(result.holds)} (matching {result.max_matching} of {result.u_size})"
    if is_ladder(m) or is_ladder(n):
        value["lamina_hom"] = hom_pi_lamina(m, n)
        human += f", hom {value['lamina_hom']}"
    return Report("matching", list(inputs), value, human=human)


def _factor(inputs, options, config: RunConfig) -> Report:
    m_c, m_1 = _multisegments(inputs, config.n)
    verdict = engine.factor(m_c, m_1, config.trial_config)
    text = verdict.value.to_text() if verdict.value is not None else None
    return _verdict_report("factor", inputs, verdict, text, text or "absent")


def _sigma_decompose(inputs, options, config: RunConfig) -> Report:
    if len(inputs) != 2:
        raise MultisegmentSyntaxError("sigma-decompose takes a multisegment and a basic component.")
    (m,) = _multisegments(inputs[:1], config.n)
    sigma = parse_basic(inputs[1])
    result = sigma_machinery(m, sigma, config.trial_config)
    human = f"{result.saturated_part.to_text()} * {result.reduced_part.to_text()}"
    return Report("sigma-decompose", list(inputs), result.to_json(), config.trials, None, human)


def _peel(inputs, options, config: RunConfig) -> Report:
    (m,) = _multisegments(inputs, config.n)
    result = balanced_peel(m)
    human = f"{result.sigma} * {result.remainder.to_text()}"
    return Report("peel", list(inputs), result.to_json(), human=human)


def _cw(inputs, options, config: RunConfig) -> Report:
    (text,) = inputs
    result = permutation_ops(parse_permutation(text))
    value = {
        "permutation": list(result.permutation),
        "multisegment": result.multisegment.to_text(),
        "n": result.multisegment.n,
        "avoids_1324_2143": result.avoids_1324_2143,
    }
    human = f"{result.multisegment.to_text()} (avoids 1324/2143: {_bool_text(result.avoids_1324_2143)})"
    return Report("cw", list(inputs), value, human=human)


def _verify(inputs, options, config: RunConfig) -> Report:
    (suite,) = inputs
    params = {key: options[key] for key in ("k", "samples", "max_segments") if options.get(key) is not None}
    if config.n is not None:
        params["n"] = config.n
    report = verify_suite(suite, params, config.trial_config)
    lines = [report.summary()]
    lines.extend(f"  FAIL {case.label}: {case.detail}" for case in report.cases if not case.passed)
    return Report("verify", list(inputs), report.to_json(), config.trials, None, "\n".join(lines), ok=report.ok)


def _enumerate(inputs, options, config: RunConfig) -> Report:
    dims = None
    if options.get("dims"):
        try:
            dims = DimVector(tuple(int(x) for x in options["dims"].replace(",", " ").split()))
        except ValueError:
            raise MultisegmentSyntaxError(f"Bad dimension vector '{options['dims']}'.") from None
    elif config.n is None or options.get("max_segments") is None:
        raise PreconditionError("enumerate needs --dims, or --n together with --max-segments.")
    items = [
        m.to_text()
        for m in enumerate_multisegments(
            n=config.n,
            max_segments=options.get("max_segments"),
            dims=dims,
            regular=bool(options.get("regular")),
            ladder=bool(options.get("ladder")),
            limit=config.enumeration_limit,
        )
    ]
    return Report("enumerate", list(inputs), items, human="\n".join(items))


def _tmatrix(inputs, options, config: RunConfig) -> Report:
    m, n = _multisegments(inputs, config.n)
    verdict = engine.hom_pi(m, n, config.trial_config, fast=True)
    bound = matching_condition(m, n)
    value = {
        "rows": bound.u_size,
        "cols": bound.v_size,
        "generic_rank": bound.v_size - verdict.value,
        "corank": verdict.value,
        "max_matching": bound.max_matching,
    }
    human = (
        f"{value['rows']}x{value['cols']}, generic rank {value['generic_rank']}, "
        f"corank {value['corank']}, matching bound {value['max_matching']}"
    )
    return _verdict_report("tmatrix", inputs, verdict, value, human)


Handler = Callable[[Sequence[str], Mapping[str, Any], RunConfig], Report]

# name -> (number of positional inputs, handler)
COMMANDS: dict[str, tuple[int, Handler]] = {
    "star": (2, _star),
    "hom": (2, _hom),
    "ext1": (2, _ext1),
    "rigid": (1, _rigid),
    "commute": (2, _commute),
    "strong-commute": (2, _strong_commute),
    "mw": (1, _mw),
    "dual": (1, _dual),
    "grdim": (1, _grdim),
    "regular": (1, _regular),
    "balanced": (1, _balanced),
    "split": (1, _split),
    "ladder": (1, _ladder),
    "matching": (2, _matching),
    "factor": (2, _factor),
    "sigma-decompose": (2, _sigma_decompose),
    "peel": (1, _peel),
    "cw": (1, _cw),
    "verify": (1, _verify),
    "enumerate": (0, _enumerate),
    "tmatrix": (2, _tmatrix),
}


def execute(
    command: str,
    inputs: Sequence[str],
    options: Optional[Mapping[str, Any]] = None,
    config: Optional[RunConfig] = None,
) -> Report:
    """Run one subcommand and time it; ComponentError subclasses propagate."""
    if command not in COMMANDS:
        raise MultisegmentSyntaxError(f"Unknown command '{command}'.")
    arity, handler = COMMANDS[command]
    if len(inputs) != arity:
        raise MultisegmentSyntaxError(f"'{command}' takes {arity} input(s), got {len(inputs)}.")
    if command == "verify" and inputs[0] not in SUITES:
        raise MultisegmentSyntaxError(f"Unknown suite '{inputs[0]}'. Choose from: {', '.join(SUITES)}.")

    config = config or RunConfig.from_settings()
    options = dict(options or {})
    log_activity("command_received", {"command": command, "inputs": list(inputs)})

    started = time.perf_counter()
    try:
        report = handler(list(inputs), options, config)
    except ComponentError as exc:
        log_activity("verdict_rejected", {
            "command": command,
            "error": type(exc).__name__,
            "reason": str(exc),
        })
        raise
    if not config.no_timing:
        report.elapsed_ms = int(round((time.perf_counter() - started) * 1000))
    log_activity("verdict_computed", {"command": command, "value": report.value if command != "verify" else report.ok})
    return report


def run_command(argv: Sequence[str]) -> tuple[int, str]:
    """Run `mseg` with argv; returns (exit status, captured output)."""
    stdout, stderr = io.StringIO(), io.StringIO()
    try:
        call_command("mseg", *argv, stdout=stdout, stderr=stderr)
    except CommandError as exc:
        message = stdout.getvalue() + str(exc)
        return exc.returncode, message
    return 0, stdout.getvalue()
