"""Command line interface: ``rpsmax <command> ...``.

Exit codes: 0 success, 2 validation failure, 3 capacity error,
4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import combinatorics as comb
from . import entropy as ent
from .core import (
    mass_function_from_dict,
    mass_function_to_dict,
    pmf_from_dict,
    pmf_to_dict,
    renormalize,
    require_valid,
    restrict_to_singletons,
    singleton_pmf,
    uniform_singleton_distribution,
)
from .errors import CapacityError, DomainError, PreconditionError, ValidationError
from .pes import FrameOfDiscernment, enumerate_events
from .verifier import (
    OPTIMIZER_CAP,
    OptimizerConfig,
    maximize_rps_entropy,
    random_search_oracle,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CAPACITY = 3
EXIT_VERIFICATION = 4

DEFAULT_ENUMERATION_CAP = 8
TABLE_HEADER = ["N", "H_max_SE", "H_max_DE", "H_max_RPS"]


@dataclass(frozen=True)
class CliConfig:
    log_base: float = 2.0
    output_format: str = "table"
    precision: int = 4
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP

    def __post_init__(self):
        if self.precision < 0:
            raise DomainError("--precision must be >= 0")
        ent.check_base(self.log_base)
        if self.enumeration_cap < 1:
            raise DomainError("--cap must be >= 1")


class VerificationFailed(Exception):
    pass


def _fmt(x: float, precision: int) -> str:
    s = f"{x:.{precision}f}"
    # "-0.0000" is a rounding artefact of tiny negative noise
    return s[1:] if s.startswith("-") and float(s) == 0 else s


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# -- commands -------------------------------------------------------------------


def cmd_enumerate(args, cfg: CliConfig) -> str:
    frame = FrameOfDiscernment(args.elements)
    cap = cfg.enumeration_cap
    if frame.n > cap:
        raise CapacityError(
            f"n={frame.n} exceeds the enumeration cap {cap}; pass --cap {frame.n} to override"
        )
    events = enumerate_events(frame, include_empty=args.include_empty)
    if cfg.output_format == "json":
        return json.dumps([frame.labels(e) for e in events], ensure_ascii=False) + "\n"
    if cfg.output_format == "csv":
        return _csv([["cardinality", "event"]] + [[len(e), frame.format_event(e)] for e in events])
    return "".join(frame.format_event(e) + "\n" for e in events)


def _read_document(path):
    try:
        if path in (None, "-"):
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError([f"input is not valid JSON: {exc}"]) from None
    except OSError as exc:
        raise ValidationError([f"cannot read {path}: {exc}"]) from None


def cmd_entropy(args, cfg: CliConfig) -> str:
    doc = _read_document(args.input)
    if not isinstance(doc, dict):
        raise ValidationError(["input must be a JSON object"])
    if args.kind == "deng":
        obj = mass_function_from_dict(doc)
    else:
        obj = pmf_from_dict(doc)
    if args.renormalize:
        obj = renormalize(obj)
    require_valid(obj)
    frame = obj.frame
    if args.kind == "rps":
        report = ent.rps_entropy(obj, cfg.log_base, terms=args.terms)
    elif args.kind == "deng":
        report = ent.deng_entropy(obj, cfg.log_base, terms=args.terms)
    else:
        try:
            dist = restrict_to_singletons(obj)
        except PreconditionError as exc:
            raise ValidationError([str(exc)]) from None
        report = ent.shannon_entropy(dist, cfg.log_base, terms=args.terms)
        if report.terms is not None:
            report = ent.EntropyReport(
                report.value, report.base, tuple(((k,), c) for k, c in report.terms)
            )

    p = cfg.precision
    if cfg.output_format == "json":
        return _json(report.to_dict(frame, precision=p))
    key_fmt = frame.format_subset if args.kind == "deng" else frame.format_event
    if cfg.output_format == "csv":
        rows = [["kind", "base", "value"], [args.kind, _fmt_base(cfg.log_base), _fmt(report.value, p)]]
        if report.terms is not None:
            rows += [["event", "contribution"]] + [[key_fmt(k), _fmt(c, p)] for k, c in report.terms]
        return _csv(rows)
    out = _fmt(report.value, p) + "\n"
    if report.terms is not None:
        out += "".join(f"{key_fmt(k)}\t{_fmt(c, p)}\n" for k, c in report.terms)
    return out


def _fmt_base(base):
    return str(int(base)) if float(base).is_integer() else repr(base)


def _max_value(kind, n, base):
    return {
        "rps": ent.max_rps_entropy,
        "deng": ent.max_deng_entropy,
        "shannon": ent.max_shannon_entropy,
    }[kind](n, base)


def cmd_maxent(args, cfg: CliConfig, cap_given: bool) -> str:
    n = args.n
    value = _max_value(args.kind, n, cfg.log_base)
    p = cfg.precision
    if not args.emit_distribution:
        if cfg.output_format == "json":
            return _json({"n": n, "kind": args.kind, "base": cfg.log_base, "value": round(value, p)})
        if cfg.output_format == "csv":
            return _csv([["n", "kind", "value"], [n, args.kind, _fmt(value, p)]])
        return _fmt(value, p) + "\n"

    frame = FrameOfDiscernment.generic(n)
    if args.kind == "rps":
        doc = pmf_to_dict(ent.max_rps_pmf(frame, cap=cfg.enumeration_cap), precision=p)
    elif args.kind == "deng":
        cap = cfg.enumeration_cap if cap_given else ent.DENG_MASS_CAP
        doc = mass_function_to_dict(ent.max_deng_mass_function(frame, cap=cap), precision=p)
    else:
        doc = pmf_to_dict(singleton_pmf(uniform_singleton_distribution(frame)), precision=p)
    header = {"n": n, "kind": args.kind, "base": cfg.log_base, "value": round(value, p)}
    return _json({**header, **doc})


def table_rows(n_max: int, base=2.0):
    """(N, max Shannon, max Deng, max RPS) for N = 1..n_max."""
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    return [
        (
            n,
            ent.max_shannon_entropy(n, base),
            ent.max_deng_entropy(n, base),
            ent.max_rps_entropy(n, base),
        )
        for n in range(1, n_max + 1)
    ]


def cmd_table(args, cfg: CliConfig) -> str:
    rows = table_rows(args.n_max, cfg.log_base)
    p = cfg.precision
    if cfg.output_format == "csv":
        return _csv([TABLE_HEADER] + [[n] + [_fmt(v, p) for v in vals] for n, *vals in rows])
    if cfg.output_format == "json":
        return _json([dict(zip(TABLE_HEADER, [n] + [round(v, p) for v in vals])) for n, *vals in rows])
    cells = [TABLE_HEADER] + [[str(n)] + [_fmt(v, p) for v in vals] for n, *vals in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(4)]
    return "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) + "\n" for r in cells)


def degenerate_comparison(n: int, mode: str, base=2.0) -> dict:
    """Degenerate maximum RPS entropy next to the classical maximum it should match.

    Equality is decided on the exact integer normalizers, not on floats.
    """
    if mode == "order-ignored":
        lhs, rhs = comb.order_ignored_normalizer(n), comb.deng_normalizer(n)
        classical = "H_max_DE"
    elif mode == "singleton-only":
        lhs, rhs = comb.singleton_only_normalizer(n), n
        classical = "H_max_SE"
    else:
        raise DomainError(f"unknown mode {mode!r}")
    return {
        "n": n,
        "mode": mode,
        "H_max_RPS_degenerate": ent.log_base(lhs, base),
        "classical": classical,
        "classical_value": ent.log_base(rhs, base),
        "equal": lhs == rhs,
    }


def cmd_degenerate(args, cfg: CliConfig) -> str:
    if args.n < 1:
        raise DomainError(f"n must be >= 1, got {args.n}")
    res = degenerate_comparison(args.n, args.mode, cfg.log_base)
    p = cfg.precision
    flag = "EQUAL" if res["equal"] else "DIFFERENT"
    if cfg.output_format == "json":
        res = dict(res)
        for key in ("H_max_RPS_degenerate", "classical_value"):
            res[key] = round(res[key], p)
        return _json(res)
    lhs, rhs = _fmt(res["H_max_RPS_degenerate"], p), _fmt(res["classical_value"], p)
    if cfg.output_format == "csv":
        return _csv(
            [["n", "mode", "H_max_RPS_degenerate", res["classical"], "status"],
             [res["n"], res["mode"], lhs, rhs, flag]]
        )
    return (
        f"N = {res['n']}, mode = {res['mode']}\n"
        f"H_max_RPS (degenerate): {lhs}\n"
        f"{res['classical']}: {rhs}\n"
        f"{flag}\n"
    )


def cmd_verify(args, cfg: CliConfig, cap_given: bool) -> str:
    if args.n < 1:
        raise DomainError(f"n must be >= 1, got {args.n}")
    cap = cfg.enumeration_cap if cap_given else OPTIMIZER_CAP
    frame = FrameOfDiscernment.generic(args.n)
    config = OptimizerConfig(
        max_iterations=args.max_iterations,
        step_size=args.step_size,
        tolerance=args.convergence_tol,
        seed=args.seed,
        start=args.start,
        base=cfg.log_base,
    )
    _, result = maximize_rps_entropy(frame, config, cap=cap)
    payload = result.to_dict()
    failures = []
    if not result.converged:
        failures.append("optimizer did not converge")
    if abs(result.entropy_gap) > args.tolerance:
        failures.append(f"entropy gap {result.entropy_gap:.3e} exceeds {args.tolerance:g}")
    if result.pmf_sup_distance > args.tolerance:
        failures.append(f"pmf distance {result.pmf_sup_distance:.3e} exceeds {args.tolerance:g}")
    if args.oracle:
        best = random_search_oracle(frame, args.samples, seed=args.seed, base=cfg.log_base, cap=cap)
        payload.update(oracle_samples=args.samples, oracle_best=best, oracle_below_max=best <= result.analytic_entropy)
        if best > result.analytic_entropy:
            failures.append(f"oracle found {best!r} above the analytic maximum")
    payload["passed"] = not failures

    if cfg.output_format == "json":
        out = _json(payload)
    elif cfg.output_format == "csv":
        out = _csv([list(payload), [_cell(v) for v in payload.values()]])
    else:
        p = cfg.precision
        lines = [
            f"converged: {str(result.converged).lower()}",
            f"iterations_used: {result.iterations_used}",
            f"achieved_entropy: {_fmt(result.achieved_entropy, p)}",
            f"analytic_entropy: {_fmt(result.analytic_entropy, p)}",
            f"entropy_gap: {result.entropy_gap:.3e}",
            f"pmf_sup_distance: {result.pmf_sup_distance:.3e}",
            f"kkt_residual: {result.kkt_residual:.3e}",
        ]
        if args.oracle:
            lines.append(
                f"oracle_best ({args.samples} samples): {_fmt(payload['oracle_best'], p)}"
                f" {'<=' if payload['oracle_below_max'] else '>'} {_fmt(result.analytic_entropy, p)}"
            )
        lines += [f"FAIL: {f}" for f in failures] or ["PASS"]
        out = "\n".join(lines) + "\n"
    if failures:
        raise VerificationFailed(out)
    return out


def _cell(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return repr(v)
    return v


# -- parser ---------------------------------------------------------------------


def _add_global_flags(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--base", type=float, default=d(2.0), help="logarithm base (default 2)")
    parser.add_argument("--precision", type=int, default=d(4), help="decimal places printed (default 4)")
    parser.add_argument("--format", choices=["table", "json", "csv"], default=d("table"), dest="format")
    parser.add_argument(
        "--cap", type=int, default=d(None),
        help="largest n allowed to materialize events (default 8; verify uses 7)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rpsmax",
        description="Random permutation set entropies and their maxima.",
    )
    _add_global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        p = sub.add_parser(name, **kw)
        _add_global_flags(p, suppress=True)
        return p

    p = add("enumerate", help="list the permutation event space of a frame")
    p.add_argument("elements", nargs="+")
    p.add_argument("--include-empty", action="store_true")

    p = add("entropy", help="entropy of an RPS / mass function JSON document")
    p.add_argument("input", nargs="?", default="-", help="path to JSON document, '-' for stdin")
    p.add_argument("--kind", choices=["rps", "deng", "shannon"], default="rps")
    p.add_argument("--terms", action="store_true", help="print per-event contributions")
    p.add_argument("--renormalize", action="store_true", help="rescale masses to sum to one first")

    p = add("maxent", help="closed-form maximum entropy for an n-element frame")
    p.add_argument("n", type=int)
    p.add_argument("--kind", choices=["rps", "deng", "shannon"], default="rps")
    p.add_argument("--emit-distribution", action="store_true")

    p = add("table", help="maximum Shannon, Deng and RPS entropy for N = 1..n_max")
    p.add_argument("n_max", type=int)

    p = add("degenerate", help="compare degenerate maximum RPS entropy with its classical limit")
    p.add_argument("n", type=int)
    p.add_argument("--mode", choices=["order-ignored", "singleton-only"], default="order-ignored")

    p = add("verify", help="maximize RPS entropy numerically and compare with the closed form")
    p.add_argument("n", type=int)
    p.add_argument("--tolerance", type=float, default=1e-6, help="allowed entropy gap and pmf distance")
    p.add_argument("--max-iterations", type=int, default=100_000)
    p.add_argument("--step-size", type=float, default=0.1)
    p.add_argument("--convergence-tol", type=float, default=1e-10)
    p.add_argument("--start", choices=["uniform", "random"], default="uniform")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle", action="store_true", help="also run the random-search oracle")
    p.add_argument("--samples", type=int, default=100_000)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cap_given = args.cap is not None
    try:
        cfg = CliConfig(
            log_base=args.base,
            output_format=args.format,
            precision=args.precision,
            enumeration_cap=args.cap if cap_given else DEFAULT_ENUMERATION_CAP,
        )
        if args.command == "enumerate":
            out = cmd_enumerate(args, cfg)
        elif args.command == "entropy":
            out = cmd_entropy(args, cfg)
        elif args.command == "maxent":
            out = cmd_maxent(args, cfg, cap_given)
        elif args.command == "table":
            out = cmd_table(args, cfg)
        elif args.command == "degenerate":
            out = cmd_degenerate(args, cfg)
        else:
            out = cmd_verify(args, cfg, cap_given)
    except ValidationError as exc:
        print("validation failed:", file=sys.stderr)
        for line in exc.violations:
            print(f"  - {line}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except VerificationFailed as exc:
        sys.stdout.write(str(exc))
        return EXIT_VERIFICATION
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
