"""Command-line interface.

Subcommands: ``split`` (splitting type of the pushforward), ``verify-endo``
(finiteness of an endomorphism), ``pullback`` (cohomology and verdicts for
the inverse image of a model variety), ``adjoint`` (surface adjunction in
P^4).  Output is text, canonical JSON (sorted keys, integers and strings
only, newline-terminated), or CSV with one row per table entry.

Exit codes are disjoint: 0 success, 1 negative mathematical verdict
(not finite, not linearly complete, canonical bundle not very ample),
2 input error, 3 integrity error (two routes that must agree disagreed),
4 table range exceeded.

Every field a subcommand accepts as a flag can also come from a
``--config`` file of key=value lines; explicit flags win.  The env var
PUSHSPLIT_PRIMES ("p,q") overrides the default modular primes; --primes
overrides both.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys

from . import adjunction, pullback, splitting, varieties
from .endomorphism import load_endomorphism, power_map, random_endomorphism, \
    validate_finite
from .errors import InputError, IntegrityError, PushsplitError, TableRangeError
from .exactla import DEFAULT_PRIMES, is_prime

REPORT_VERSION = "1"

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_INTEGRITY = 3
EXIT_RANGE = 4


# ---------------------------------------------------------------------------
# config file and shared option resolution


def _load_config(path: str) -> dict:
    values: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read config file: {exc}") from None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(
                f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in values:
            raise InputError(f"{path}:{lineno}: duplicate key {key!r}")
        values[key] = value
    return values


class _Options:
    """Flag/config merge: explicit flags win, then config, then defaults."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config = _load_config(args.config) if args.config else {}
        self.seen = set()

    def pick(self, name: str, default=None, cast=str):
        self.seen.add(name)
        value = getattr(self.args, name.replace("-", "_"), None)
        if value is not None:
            return value
        if name in self.config:
            raw = self.config[name]
            try:
                return cast(raw)
            except (ValueError, InputError):
                raise InputError(
                    f"config value {name}={raw!r} is not valid") from None
        return default

    def finish(self):
        unknown = set(self.config) - self.seen
        if unknown:
            raise InputError(
                f"config key {sorted(unknown)[0]!r} not accepted by "
                "this subcommand")


def _cast_bool(raw: str) -> bool:
    lowered = raw.lower()
    if lowered not in ("true", "false"):
        raise ValueError(raw)
    return lowered == "true"


def _cast_range(raw: str) -> tuple[int, int]:
    if ".." not in raw:
        raise ValueError(raw)
    lo_text, hi_text = raw.split("..", 1)
    lo, hi = int(lo_text), int(hi_text)
    if lo > hi:
        raise ValueError(raw)
    return lo, hi


def _resolve_primes(spec: str | None) -> tuple[int, ...]:
    if spec is None:
        spec = os.environ.get("PUSHSPLIT_PRIMES")
    if spec is None:
        return DEFAULT_PRIMES
    try:
        primes = tuple(int(part) for part in spec.split(",") if part.strip())
    except ValueError:
        raise InputError(f"bad prime list {spec!r}") from None
    if not primes:
        raise InputError("empty prime list")
    for p in primes:
        if not is_prime(p):
            raise InputError(f"{p} is not prime")
    return primes


# ---------------------------------------------------------------------------
# emitters


def _emit(payload: dict, text_lines: list, args_format: str, out: str | None,
          csv_rows=None) -> None:
    if args_format == "json":
        rendered = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif args_format == "csv":
        if csv_rows is None:
            csv_rows = [["key", "value"]] + [
                [key, payload[key]] for key in sorted(payload)
                if isinstance(payload[key], (int, str, bool))]
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerows(csv_rows)
        rendered = buffer.getvalue()
    else:
        rendered = "\n".join(text_lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(rendered)
    else:
        sys.stdout.write(rendered)


def _verdict_payload(v: pullback.Verdict) -> dict:
    payload = {
        "name": v.name,
        "status": v.status,
        "reason": v.reason,
        "witness": dict(v.witness),
        "assumptions": dict(v.assumptions),
    }
    if v.holds is not None:
        payload["holds"] = v.holds
    return payload


def _verdict_lines(v: pullback.Verdict) -> list:
    lines = [f"{v.name}: {v.status}"]
    if v.reason:
        lines.append(f"  reason: {v.reason}")
    for key in sorted(v.witness):
        lines.append(f"  {key} = {v.witness[key]}")
    return lines


# ---------------------------------------------------------------------------
# model specs


def _parse_model(spec: str, general_position: bool | None) -> varieties.ModelVariety:
    if spec.startswith("table:"):
        model = varieties.load_custom_table(spec[len("table:"):])
    elif spec == "plane@4":
        model = varieties.plane_in_p4()
    elif spec.startswith("ci:"):
        body = spec[len("ci:"):]
        if "@" not in body:
            raise InputError(
                f"bad model spec {spec!r}: expected ci:d1,d2,...@n")
        degrees_text, n_text = body.rsplit("@", 1)
        try:
            degrees = tuple(int(part) for part in degrees_text.split(","))
            n = int(n_text)
        except ValueError:
            raise InputError(f"bad model spec {spec!r}") from None
        model = varieties.complete_intersection(n, degrees)
    elif spec.startswith("p") and spec[1:].isdigit():
        model = varieties.projective_space(int(spec[1:]))
    else:
        raise InputError(
            f"bad model spec {spec!r}: expected ci:d1,...@n, p<n>, "
            "plane@4 or table:<path>")
    if general_position is not None and \
            general_position != model.smooth_general_position:
        from dataclasses import replace
        model = replace(model, smooth_general_position=general_position)
    return model


# ---------------------------------------------------------------------------
# subcommands


def _cmd_split(args: argparse.Namespace) -> int:
    opts = _Options(args)
    endo_path = opts.pick("endo")
    l = opts.pick("l", cast=int)
    e_max = opts.pick("emax", default=10, cast=int)
    fmt = opts.pick("format", default="text")
    out = opts.pick("out")
    primes = _resolve_primes(opts.pick("primes"))
    exact = bool(opts.pick("exact", default=False, cast=_cast_bool))
    if l is None:
        raise InputError("--l is required")
    if endo_path is not None:
        if opts.pick("n", cast=int) is not None or \
                opts.pick("k", cast=int) is not None:
            raise InputError("give either --endo or --n/--k, not both")
        endo = load_endomorphism(endo_path)
        report = validate_finite(endo, primes=primes, exact=exact)
        if not report.is_finite:
            raise InputError(
                f"endomorphism in {endo_path} is not finite; "
                "run verify-endo for the evidence")
        st = splitting.splitting_from_endo(endo, l, primes=primes, exact=exact)
        source = f"endomorphism:{endo_path}"
        matches = True
        n, k = endo.n, endo.k
    else:
        n = opts.pick("n", cast=int)
        k = opts.pick("k", cast=int)
        if n is None or k is None:
            raise InputError("--n and --k are required without --endo")
        st = splitting.splitting_universal(n, k, l)
        source = "closed-form"
        matches = None
    opts.finish()
    d_value = splitting.delta(n, k, l)
    check = splitting.hilbert_check(st, e_max)
    payload = {
        "report_version": REPORT_VERSION,
        "command": "split",
        "n": n, "k": k, "l": l,
        "delta": d_value,
        "support": [st.support_min, st.support_max],
        "rank": st.rank,
        "multiplicities": [[d, m] for d, m in st.multiplicities],
        "hilbert_check": {"passed": check.passed,
                          "e_range": list(check.e_range)},
        "source": source,
    }
    if matches is not None:
        payload["matches_closed_form"] = matches
    lines = [
        f"splitting type of the pushforward of O({l}H')  (n={n}, k={k})",
        f"delta = {d_value}, support = [{st.support_min}, {st.support_max}], "
        f"rank = {st.rank}",
        "  d   multiplicity",
    ]
    lines += [f"{d:>3}   {m}" for d, m in st.multiplicities]
    lines.append(
        f"hilbert check: {'pass' if check.passed else 'FAIL'} "
        f"(e in [{check.e_range[0]}, {check.e_range[1]}])")
    lines.append(f"source: {source}"
                 + (" (matches closed form)" if matches else ""))
    csv_rows = [["d", "multiplicity"]] + [[d, m] for d, m in st.multiplicities]
    _emit(payload, lines, fmt, out, csv_rows)
    return EXIT_OK if check.passed else EXIT_INTEGRITY


def _cmd_verify_endo(args: argparse.Namespace) -> int:
    opts = _Options(args)
    endo_path = opts.pick("endo")
    use_random = bool(opts.pick("random", default=False, cast=_cast_bool))
    fmt = opts.pick("format", default="text")
    out = opts.pick("out")
    primes = _resolve_primes(opts.pick("primes"))
    exact = bool(opts.pick("exact", default=False, cast=_cast_bool))
    if use_random:
        n = opts.pick("n", cast=int)
        k = opts.pick("k", cast=int)
        seed = opts.pick("seed", default=0, cast=int)
        if n is None or k is None:
            raise InputError("--random needs --n and --k")
        endo = random_endomorphism(n, k, random.Random(seed),
                                   primes=primes, exact=exact)
        source = f"random(n={n}, k={k}, seed={seed})"
    elif endo_path is not None:
        endo = load_endomorphism(endo_path)
        source = endo_path
    else:
        raise InputError("give --endo <path> or --random --n N --k K")
    opts.finish()
    report = endo.finiteness or validate_finite(endo, primes=primes,
                                                exact=exact)
    payload = {
        "report_version": REPORT_VERSION,
        "command": "verify-endo",
        "n": endo.n, "k": endo.k,
        "verdict": report.verdict,
        "test_degree": report.test_degree,
        "required_rank": report.required_rank,
        "modular_ranks": [[p, r] for p, r in report.modular_ranks],
        "certificate": report.certificate,
        "source": source,
        "forms": [f.text() for f in endo.forms],
    }
    if report.rational_rank is not None:
        payload["rational_rank"] = report.rational_rank
    lines = [
        f"endomorphism of P^{endo.n} by degree-{endo.k} forms ({source})",
        f"verdict: {report.verdict}",
        f"socle-degree test: need rank {report.required_rank} "
        f"in degree {report.test_degree} ({report.certificate})",
    ]
    for p, r in report.modular_ranks:
        lines.append(f"  rank mod {p}: {r}")
    if report.rational_rank is not None:
        lines.append(f"  rational rank: {report.rational_rank}")
    for i, f in enumerate(endo.forms):
        lines.append(f"  f{i} = {f.text()}")
    _emit(payload, lines, fmt, out)
    return EXIT_OK if report.is_finite else EXIT_NEGATIVE


def _rows_payload(rows: dict) -> list:
    return [[i, l, value] for (i, l), value in sorted(rows.items())]


def _cmd_pullback(args: argparse.Namespace) -> int:
    opts = _Options(args)
    spec = opts.pick("model")
    k = opts.pick("k", cast=int)
    lrange = opts.pick("lrange", cast=_cast_range)
    fmt = opts.pick("format", default="text")
    out = opts.pick("out")
    general_position = opts.pick("general-position", cast=_cast_bool)
    opts.finish()
    if spec is None or k is None:
        raise InputError("--model and --k are required")
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    model = _parse_model(spec, general_position)
    report = pullback.build_pullback_report(model, k, lrange)
    verdicts = {
        "nondegenerate": report.completeness.nondegenerate,
        "linearly_complete": report.completeness.linearly_complete,
        "h1_vanishing": report.completeness.h1_vanishing,
        "hyperplane_section": report.hyperplane,
    }
    payload = {
        "report_version": REPORT_VERSION,
        "command": "pullback",
        "model": report.model,
        "n": report.n, "k": report.k, "dim": report.dim,
        "degree": report.degree, "degree_prime": report.degree_prime,
        "lrange": list(report.lrange),
        "assumptions": dict(report.assumptions),
        "cohomology": _rows_payload(report.h_rows),
        "euler": [[l, chi] for l, chi in sorted(report.euler.items())],
        "verdicts": {name: _verdict_payload(v) for name, v in verdicts.items()},
    }
    if report.ideal_rows is not None:
        payload["ideal_cohomology"] = _rows_payload(report.ideal_rows)
    if report.dualizing_rows is not None:
        payload["dualizing"] = _rows_payload(report.dualizing_rows)
    lo, hi = report.lrange
    lines = [
        f"inverse image of {report.model} under a degree-{k} covering of "
        f"P^{report.n}",
        f"dim = {report.dim}, deg X = {report.degree}, "
        f"deg X' = {report.degree_prime}",
        f"h^i(O_X'(l)) for l in [{lo}, {hi}]:",
        "    l | " + " ".join(f"h^{i}" for i in range(report.dim + 1))
        + " | chi",
    ]
    for l in range(lo, hi + 1):
        values = " ".join(str(report.h_rows[(i, l)]).rjust(3)
                          for i in range(report.dim + 1))
        lines.append(f"{l:>5} | {values} | {report.euler[l]}")
    if report.dualizing_rows is not None:
        lines.append("h^i(omega_X'(-l)) for 0 <= l < k:")
        for (i, l), value in sorted(report.dualizing_rows.items()):
            lines.append(f"  i={i} l={l}: {value}")
    for v in verdicts.values():
        lines += _verdict_lines(v)
    csv_rows = [["section", "i", "l", "value"]]
    csv_rows += [["h", i, l, value]
                 for (i, l), value in sorted(report.h_rows.items())]
    if report.ideal_rows is not None:
        csv_rows += [["hI", i, l, value]
                     for (i, l), value in sorted(report.ideal_rows.items())]
    if report.dualizing_rows is not None:
        csv_rows += [["omega", i, l, value]
                     for (i, l), value in sorted(report.dualizing_rows.items())]
    csv_rows += [["chi", "", l, value]
                 for l, value in sorted(report.euler.items())]
    _emit(payload, lines, fmt, out, csv_rows)
    negative = (report.completeness.linearly_complete.holds is False
                or report.completeness.h1_vanishing.holds is False)
    return EXIT_NEGATIVE if negative else EXIT_OK


def _cmd_adjoint(args: argparse.Namespace) -> int:
    opts = _Options(args)
    spec = opts.pick("model")
    k = opts.pick("k", cast=int)
    fmt = opts.pick("format", default="text")
    out = opts.pick("out")
    general_position = opts.pick("general-position", cast=_cast_bool)
    opts.finish()
    if spec is None or k is None:
        raise InputError("--model and --k are required")
    model = _parse_model(spec, general_position)
    report = adjunction.surface_adjunction(model, k)
    verdicts = {
        "canonical_very_ample": report.canonical_very_ample,
        "del_pezzo_exception": report.del_pezzo_exception,
        "canonical_birational": report.canonical_birational,
    }
    payload = {
        "report_version": REPORT_VERSION,
        "command": "adjoint",
        "model": report.model,
        "n": report.n, "k": report.k,
        "delta_l": [[l, value] for l, value in report.delta_l],
        "e_source": report.e_source,
        "e_prime": report.e_prime,
        "degree": report.degree,
        "degree_prime": report.degree_prime,
        "K_dot_H": report.k_dot_h,
        "K_squared": report.k_squared,
        "sectional_genus": report.sectional_genus,
        "h0_omega": report.h0_omega,
        "h0_omega_minus_h": report.h0_omega_minus_h,
        "general_type": report.general_type,
        "assumptions": dict(report.assumptions),
        "verdicts": {name: _verdict_payload(v) for name, v in verdicts.items()},
    }
    lines = [
        f"adjunction for the inverse image of {report.model} "
        f"(surface in P^4, k={k})",
        f"omega_S = O_S({report.e_source})  ->  omega_S' = O_S'({report.e_prime})",
        f"deg S' = {report.degree_prime}, K.H' = {report.k_dot_h}, "
        f"K^2 = {report.k_squared}, sectional genus = {report.sectional_genus}",
        f"h^0(omega_S') = {report.h0_omega}, "
        f"h^0(omega_S'(-H')) = {report.h0_omega_minus_h}",
        f"general type: {report.general_type}",
    ]
    for v in verdicts.values():
        lines += _verdict_lines(v)
    _emit(payload, lines, fmt, out)
    negative = report.canonical_very_ample.holds is False
    return EXIT_NEGATIVE if negative else EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_common(sub: argparse.ArgumentParser):
    sub.add_argument("--config", help="key=value file supplying any flag")
    sub.add_argument("--out", help="write output to this path instead of stdout")
    group = sub.add_mutually_exclusive_group()
    group.add_argument("--format", choices=("text", "json", "csv"))
    group.add_argument("--json", dest="format", action="store_const",
                       const="json", help="shorthand for --format json")
    group.add_argument("--csv", dest="format", action="store_const",
                       const="csv", help="shorthand for --format csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pushsplit",
        description="Exact splitting types of pushforwards of line bundles "
                    "under finite endomorphisms of projective space, and "
                    "the cohomology of inverse-image varieties.")
    subs = parser.add_subparsers(dest="command", required=True)

    split = subs.add_parser(
        "split", help="splitting type of the pushforward of O(lH')")
    split.add_argument("--n", type=int)
    split.add_argument("--k", type=int)
    split.add_argument("--l", type=int)
    split.add_argument("--endo", help="endomorphism file instead of --n/--k")
    split.add_argument("--emax", type=int,
                       help="upper twist for the Hilbert identity check")
    split.add_argument("--primes", help="comma-separated modular primes")
    split.add_argument("--exact", action="store_const", const=True,
                       help="force rational-arithmetic ranks")
    _add_common(split)
    split.set_defaults(func=_cmd_split)

    verify = subs.add_parser(
        "verify-endo", help="finiteness verdict for an endomorphism")
    verify.add_argument("--endo", help="endomorphism file")
    verify.add_argument("--random", action="store_const", const=True,
                        help="test a random perturbation of the power map")
    verify.add_argument("--n", type=int)
    verify.add_argument("--k", type=int)
    verify.add_argument("--seed", type=int,
                        help="seed for --random (default 0)")
    verify.add_argument("--primes", help="comma-separated modular primes")
    verify.add_argument("--exact", action="store_const", const=True,
                        help="confirm a NOT_FINITE verdict rationally")
    _add_common(verify)
    verify.set_defaults(func=_cmd_verify_endo)

    pull = subs.add_parser(
        "pullback", help="cohomology and verdicts for the inverse image "
                         "of a model variety")
    pull.add_argument("--model",
                      help="ci:d1,...@n | p<n> | plane@4 | table:<path>")
    pull.add_argument("--k", type=int)
    pull.add_argument("--lrange", type=_cast_range, metavar="a..b",
                      help="twist range (default -k..3k)")
    pull.add_argument("--general-position", type=_cast_bool,
                      metavar="true|false",
                      help="override the model's general-position flag")
    _add_common(pull)
    pull.set_defaults(func=_cmd_pullback)

    adjoint = subs.add_parser(
        "adjoint", help="adjunction report for a surface model in P^4")
    adjoint.add_argument("--model",
                         help="ci:a,b@4 | plane@4 | table:<path>")
    adjoint.add_argument("--k", type=int)
    adjoint.add_argument("--general-position", type=_cast_bool,
                         metavar="true|false",
                         help="override the model's general-position flag")
    _add_common(adjoint)
    adjoint.set_defaults(func=_cmd_adjoint)
    return parser


def _glue_range_values(argv: list) -> list:
    """Join '--lrange -2..4' into '--lrange=-2..4' so argparse does not
    mistake a range starting with a negative bound for a flag."""
    out = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg == "--lrange" and i + 1 < len(argv) and \
                argv[i + 1].startswith("-"):
            out.append(f"--lrange={argv[i + 1]}")
            i += 2
            continue
        out.append(arg)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_glue_range_values(list(argv)))
    try:
        return args.func(args)
    except TableRangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except IntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PushsplitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    main()
