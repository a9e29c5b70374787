"""Command-line front end: parse functions and specs, dispatch analyses,
emit machine-readable reports.

Exit codes: 0 on success, 1 when validation rejects the inputs (independence
FAIL, enumeration budget exceeded, inconsistent configuration), 2 on parse
errors (malformed hex/ANF/JSON or bad arguments).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import warnings

from . import parity, seqgen
from .boolfun import (
    BooleanFunction,
    FunctionFormatError,
    bias,
    correlation_immunity_order,
    plateaued_amplitude,
    resiliency_order,
)
from .parity import (
    MAX_EXACT_FREE_BITS,
    MAX_ORACLE_FREE_BITS,
    PASS,
    ParityCheckSpec,
    ValidationError,
    bound_report,
    brute_force_oracle,
    closed_form_single_coefficient,
    exact_bias_restrictions,
    exact_bias_walsh,
    lower_bound_linear,
    lower_bound_separable,
    plateaued_bound,
    validate_independence,
)
from .seqgen import DeviceError, empirical_bias, generator_from_dict

__all__ = ["main", "parse_function", "cross_check"]


class _CliParseError(Exception):
    pass


def parse_function(tt: str | None, anf: str | None, n: int | None) -> BooleanFunction:
    """Build the function from either a packed hex table or ANF text."""
    if tt is not None:
        if n is None:
            raise _CliParseError("--tt requires --n")
        return BooleanFunction.from_hex(tt, n)
    if anf is not None:
        return BooleanFunction.from_anf(anf, n)
    raise _CliParseError("one of --tt or --anf is required")


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise _CliParseError(f"cannot read JSON from {path}: {exc}") from exc


def _load_spec(path: str) -> ParityCheckSpec:
    data = _load_json(path)
    try:
        return ParityCheckSpec.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise _CliParseError(f"bad spec file {path}: {exc}") from exc


def _function_echo(f: BooleanFunction) -> dict:
    return {"n": f.n, "tt": f.to_hex()}


def _analyze_report(f: BooleanFunction) -> dict:
    spectrum = f.spectrum()
    amplitude = plateaued_amplitude(f)
    b = bias(f)
    report = {
        "n": f.n,
        "tt": f.to_hex(),
        "bias": b.to_json_dict(),
        "bias_float": float(b),
        "balanced": b.is_zero,
        "resiliency_order": resiliency_order(f),
        "correlation_immunity_order": correlation_immunity_order(f),
        "plateaued_amplitude": amplitude.to_json_dict() if amplitude else None,
        "walsh_support_size": int(len(spectrum.support())),
        "max_abs_walsh": spectrum.max_abs(),
        "nonlinearity": (1 << (f.n - 1)) - spectrum.max_abs() // 2,
    }
    if f.n <= 12:
        report["anf"] = f.to_anf()
    return report


def _bias_report(f: BooleanFunction, spec: ParityCheckSpec, method: str) -> dict:
    if method == "auto":
        method = "walsh" if f.has_cached_spectrum else "restriction"
    if method == "restriction":
        rep = exact_bias_restrictions(f, spec)
    elif method == "walsh":
        rep = exact_bias_walsh(f, spec)
    elif method == "oracle":
        rep = brute_force_oracle(f, spec)
    else:
        raise _CliParseError(f"unknown method {method!r}")
    report = rep.to_json_dict()
    closed = closed_form_single_coefficient(f, spec)
    report["closed_form"] = closed.exact.to_json_dict() if closed else None
    plateau = plateaued_bound(f, spec)
    if plateau is not None:
        report["plateaued_bound"] = plateau.plateaued_bound.to_json_dict()
        report["equality_condition_met"] = plateau.equality_condition_met
    report["function"] = _function_echo(f)
    report["spec"] = spec.to_dict()
    return report


def _bound_report(
    f: BooleanFunction, spec: ParityCheckSpec, g_anf: str | None
) -> dict:
    rep = bound_report(f, spec)
    report = rep.to_json_dict()
    closed = closed_form_single_coefficient(f, spec)
    report["closed_form"] = closed.exact.to_json_dict() if closed else None
    if g_anf is not None:
        g = BooleanFunction.from_anf(g_anf, spec.k)
        report["separable_bound"] = lower_bound_separable(f, g, spec).to_json_dict()
    else:
        report["separable_bound"] = None
    report["function"] = _function_echo(f)
    report["spec"] = spec.to_dict()
    return report


def _oracle_report(f: BooleanFunction, spec: ParityCheckSpec) -> dict:
    report = brute_force_oracle(f, spec).to_json_dict()
    report["closed_form"] = None
    report["function"] = _function_echo(f)
    report["spec"] = spec.to_dict()
    return report


def _simulate_report(
    gen: seqgen.Generator, spec: ParityCheckSpec, trials: int, seed: int
) -> dict:
    estimate = empirical_bias(gen, spec, trials, seed)
    verdict = validate_independence(spec)
    device_periods = list(gen.device_periods())
    report = estimate.to_json_dict()
    report["independence"] = verdict.status
    report["generator_periods"] = device_periods
    report["periods_consistent"] = device_periods == list(spec.periods)
    report["exact"] = None
    report["exact_float"] = None
    report["within_3_stderr"] = None
    if verdict.status == PASS and spec.repeated_free_bits <= MAX_EXACT_FREE_BITS:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            exact = exact_bias_restrictions(gen.combiner, spec).exact
        report["exact"] = exact.to_json_dict()
        report["exact_float"] = float(exact)
        if estimate.stderr > 0:
            report["within_3_stderr"] = (
                abs(estimate.estimate - float(exact)) <= 3 * estimate.stderr
            )
        else:
            report["within_3_stderr"] = estimate.estimate == float(exact)
    report["spec"] = spec.to_dict()
    return report


def cross_check(f: BooleanFunction, spec: ParityCheckSpec) -> dict:
    """Run every applicable method on one instance and verify the invariants.

    Violations become report content, not errors; the report carries the full
    inputs so any failure is reproducible.
    """
    base = {"function": _function_echo(f), "spec": spec.to_dict()}
    verdict = validate_independence(spec)
    base["independence"] = verdict.status
    if verdict.status == parity.FAIL:
        return dict(base, verdict="SKIPPED", reason=str(verdict), checks=[], values={})
    if spec.repeated_free_bits > MAX_EXACT_FREE_BITS:
        return dict(
            base,
            verdict="SKIPPED",
            reason=f"{spec.repeated_free_bits} free bits exceed the exact budget",
            checks=[],
            values={},
        )

    checks: list[dict] = []
    values: dict = {}

    def record(name: str, ok: bool, detail: str = ""):
        checks.append({"name": name, "ok": bool(ok), "detail": detail})

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        restriction = exact_bias_restrictions(f, spec)
        walsh = exact_bias_walsh(f, spec)
    values["restriction"] = restriction.exact.to_json_dict()
    values["walsh"] = walsh.exact.to_json_dict()
    record(
        "restriction equals walsh",
        restriction.exact == walsh.exact,
        f"{restriction.exact} vs {walsh.exact}",
    )

    oracle_feasible = True
    try:
        oracle = brute_force_oracle(f, spec)
    except ValidationError:
        oracle_feasible = False
        oracle = None
    if oracle is not None:
        values["oracle"] = oracle.exact.to_json_dict()
        if verdict.status == PASS:
            record(
                "oracle equals exact methods",
                oracle.exact == restriction.exact,
                f"{oracle.exact} vs {restriction.exact}",
            )

    if verdict.status == PASS:
        bound = lower_bound_linear(f, spec)
        values["lower_bound"] = bound.value.to_json_dict()
        record(
            "linear lower bound below exact",
            bound.value <= restriction.exact,
            f"{bound.value} <= {restriction.exact}",
        )
        closed = closed_form_single_coefficient(f, spec)
        if closed is not None:
            record(
                "closed form equals exact methods",
                closed.exact == restriction.exact,
                f"{closed.exact} vs {restriction.exact}",
            )
        plateau = plateaued_bound(f, spec)
        if plateau is not None:
            values["plateaued_bound"] = plateau.plateaued_bound.to_json_dict()
            record(
                "exact below plateaued bound",
                restriction.exact <= plateau.plateaued_bound,
                f"{restriction.exact} <= {plateau.plateaued_bound}",
            )
            record(
                "plateaued equality iff period condition",
                (restriction.exact == plateau.plateaued_bound)
                == plateau.equality_condition_met,
                f"condition_met={plateau.equality_condition_met}",
            )

    if not oracle_feasible:
        base["oracle"] = "skipped (budget)"
    ok = all(c["ok"] for c in checks)
    return dict(
        base,
        verdict="CONSISTENT" if ok else "VIOLATION",
        reason=None,
        checks=checks,
        values=values,
    )


# -- rendering ---------------------------------------------------------------


def _render_pretty(report: dict) -> str:
    lines = []

    def emit(prefix: str, value):
        if isinstance(value, dict):
            if set(value) == {"numerator", "log2_denominator"}:
                num = int(value["numerator"])
                exp = value["log2_denominator"]
                text = f"{num}/2^{exp}" if exp else str(num)
                lines.append(f"{prefix}: {text}")
                return
            for key in sorted(value):
                emit(f"{prefix}.{key}" if prefix else key, value[key])
        elif isinstance(value, list):
            lines.append(f"{prefix}: {json.dumps(value)}")
        else:
            lines.append(f"{prefix}: {value}")

    emit("", report)
    return "\n".join(line.lstrip(".") for line in lines) + "\n"


def _emit(report: dict, pretty: bool, out_path: str | None) -> None:
    payload = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out_path:
        directory = os.path.dirname(os.path.abspath(out_path))
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".pcbias-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(payload)
            os.replace(tmp, out_path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    if pretty:
        sys.stdout.write(_render_pretty(report))
    elif not out_path:
        sys.stdout.write(payload)


# -- argument plumbing ---------------------------------------------------------


def _add_function_args(sub: argparse.ArgumentParser) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--tt", help="truth table as packed lowercase hex")
    group.add_argument("--anf", help="algebraic normal form, e.g. 'x1*x2 + x3 + 1'")
    sub.add_argument("--n", type=int, help="variable count (required with --tt)")


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--pretty", action="store_true", help="human-readable summary")
    sub.add_argument("--out", help="write the JSON report to this file (atomically)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pcbias",
        description="Exact and bounded biases of parity-check relations.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="spectral analysis of a Boolean function")
    _add_function_args(p)
    _add_common(p)

    p = sub.add_parser("bias", help="exact relation bias for a check-set spec")
    _add_function_args(p)
    p.add_argument("--spec", required=True, help="check-set spec JSON file")
    p.add_argument(
        "--method",
        default="auto",
        choices=["auto", "walsh", "restriction", "oracle"],
    )
    _add_common(p)

    p = sub.add_parser("bound", help="lower/upper bounds without full enumeration")
    _add_function_args(p)
    p.add_argument("--spec", required=True)
    p.add_argument("--g-anf", dest="g_anf", help="block-separable approximation (ANF)")
    _add_common(p)

    p = sub.add_parser("oracle", help="ground-truth bias by direct enumeration")
    _add_function_args(p)
    p.add_argument("--spec", required=True)
    _add_common(p)

    p = sub.add_parser("simulate", help="empirical bias over a simulated generator")
    p.add_argument("--gen", required=True, help="generator config JSON file")
    p.add_argument("--spec", required=True)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)

    p = sub.add_parser("cross-check", help="run all methods and verify invariants")
    _add_function_args(p)
    p.add_argument("--spec", required=True)
    _add_common(p)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            f = parse_function(args.tt, args.anf, args.n)
            report = _analyze_report(f)
        elif args.command == "bias":
            f = parse_function(args.tt, args.anf, args.n)
            spec = _load_spec(args.spec)
            report = _bias_report(f, spec, args.method)
        elif args.command == "bound":
            f = parse_function(args.tt, args.anf, args.n)
            spec = _load_spec(args.spec)
            report = _bound_report(f, spec, args.g_anf)
        elif args.command == "oracle":
            f = parse_function(args.tt, args.anf, args.n)
            spec = _load_spec(args.spec)
            report = _oracle_report(f, spec)
        elif args.command == "simulate":
            gen = generator_from_dict(_load_json(args.gen))
            spec = _load_spec(args.spec)
            report = _simulate_report(gen, spec, args.trials, args.seed)
        elif args.command == "cross-check":
            f = parse_function(args.tt, args.anf, args.n)
            spec = _load_spec(args.spec)
            report = cross_check(f, spec)
        else:  # pragma: no cover - argparse enforces choices
            raise _CliParseError(f"unknown command {args.command!r}")
    except (_CliParseError, FunctionFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValidationError, DeviceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(report, args.pretty, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
