"""Command-line front end: ``tracecode <command> -p P -m M [options]``.

Exit codes: 0 success, 1 prediction/enumeration mismatch or an identity
failing at run time, 2 parameters outside the closed-form hypotheses,
3 operation budget exceeded, 4 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .charsum import s_sum, s_sum_brute
from .code import (
    METHODS,
    build_code,
    export_generator_matrix,
    weight_distribution,
)
from .errors import (
    BUDGET_ENV_VAR,
    BudgetExceededError,
    FieldError,
    HypothesisError,
    default_budget,
)
from .field import FieldCtx, format_poly, parse_modulus
from .theory import predicted_distribution, verify

EXIT_OK, EXIT_MISMATCH, EXIT_HYPOTHESIS, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3, 4
FORMATS = ("json", "csv", "text")


@dataclass(frozen=True)
class RunConfig:
    p: int
    m: int
    modulus: tuple[int, ...] | None
    method: str
    budget: int
    workers: int
    fmt: str | None

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("--workers must be >= 1")
        if self.budget <= 0:
            raise ValueError("--budget must be positive")

    def ctx(self) -> FieldCtx:
        return FieldCtx(self.p, self.m, self.modulus)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _ordered(obj):
    # numeric keys in numeric order, then the rest alphabetically
    if isinstance(obj, dict):
        def key(k):
            k = str(k)
            return (0, int(k), "") if k.isdigit() else (1, 0, k)

        return {str(k): _ordered(obj[k]) for k in sorted(obj, key=key)}
    if isinstance(obj, (list, tuple)):
        return [_ordered(v) for v in obj]
    return obj


def _dump(obj) -> str:
    return json.dumps(_ordered(obj), ensure_ascii=False)


def _emit_dist(dist, fmt: str) -> str:
    if fmt == "csv":
        return dist.to_csv().rstrip("\n")
    if fmt == "text":
        return f"[{dist.n}, {dist.k}, {dist.min_weight}] {dist.polynomial()}"
    return _dump(dist.to_json())


# -- commands ----------------------------------------------------------------


def cmd_field_info(cfg: RunConfig) -> tuple[int, str]:
    ctx = cfg.ctx()
    info = {
        "m": ctx.m,
        "m_p": ctx.m_p,
        "modulus": list(ctx.modulus),
        "modulus_poly": format_poly(ctx.modulus),
        "p": ctx.p,
        "q": ctx.q,
    }
    if (cfg.fmt or "text") == "json":
        return EXIT_OK, _dump(info)
    lines = [
        f"p = {ctx.p}",
        f"m = {ctx.m}",
        f"q = {ctx.q}",
        f"m_p = {ctx.m_p}",
        f"modulus = {','.join(map(str, ctx.modulus))}  ({format_poly(ctx.modulus)})",
    ]
    return EXIT_OK, "\n".join(lines)


def cmd_enumerate(cfg: RunConfig) -> tuple[int, str]:
    code = build_code(cfg.ctx())
    dist = weight_distribution(code, cfg.method, cfg.budget, cfg.workers)
    return EXIT_OK, _emit_dist(dist, cfg.fmt or "json")


def cmd_predict(cfg: RunConfig) -> tuple[int, str]:
    pred = predicted_distribution(cfg.p, cfg.m)
    fmt = cfg.fmt or "json"
    if fmt != "json":
        return EXIT_OK, _emit_dist(pred.dist, fmt)
    out = pred.dist.to_json()
    out.update(notes=pred.notes, regime=pred.regime)
    del out["modulus"]
    return EXIT_OK, _dump(out)


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    rep = verify(cfg.p, cfg.m, cfg.method, cfg.modulus, cfg.budget, cfg.workers)
    if (cfg.fmt or "json") == "json":
        return rep.exit_code, _dump(rep.to_json())
    lines = [
        f"(p, m) = ({rep.p}, {rep.m}), regime {rep.regime}",
        f"n predicted {rep.n_predicted}, enumerated {rep.n_enumerated}",
        f"enumerated {rep.enumerated.polynomial()}",
    ]
    if rep.prediction is None:
        lines.append(f"prediction unavailable: {rep.hypothesis_error}")
    else:
        lines.append(f"distribution match: {rep.distribution_match}")
        lines += [f"  w={d['w']}: predicted {d['predicted']}, enumerated {d['enumerated']}"
                  for d in rep.mismatches]
    lines.append(f"pless: {rep.pless}")
    scope = "" if rep.ratio.in_scope else " (below the range where it is claimed)"
    lines.append(f"ratio ({rep.ratio.case}): {'pass' if rep.ratio.passed else 'fail'}{scope}")
    if rep.published is not None:
        lines.append(f"published example: {rep.published.status}")
        lines += [f"  {note}" for note in rep.published.notes]
    return rep.exit_code, "\n".join(lines)


def cmd_sums(cfg: RunConfig, a_text: str, b_text: str) -> tuple[int, str]:
    ctx = cfg.ctx()
    a, b = ctx.parse_element(a_text), ctx.parse_element(b_text)
    value = s_sum(a, b)
    try:
        agree = s_sum_brute(a, b, cfg.budget) == value
    except BudgetExceededError:
        agree = None
    if (cfg.fmt or "text") == "json":
        return EXIT_OK, _dump({"a": list(a.coeffs), "agree": agree,
                               "b": list(b.coeffs), "value": str(value)})
    flag = "skipped" if agree is None else str(agree).lower()
    return EXIT_OK, f"{value}\nagree={flag}"


def cmd_export_genmatrix(cfg: RunConfig, path: str) -> tuple[int, str]:
    gm = export_generator_matrix(build_code(cfg.ctx()), path)
    k, n = gm.matrix.shape
    return EXIT_OK, f"wrote {k}x{n} generator matrix of rank {gm.rank} to {path}"


# -- argument handling -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", type=int, required=True, help="odd prime p")
    common.add_argument("-m", type=int, required=True, help="extension degree m")
    common.add_argument(
        "--modulus",
        help="irreducible modulus as coefficients c0,c1,...,1 (default: smallest)",
    )
    common.add_argument("--method", choices=METHODS, default="fast",
                        help="weight enumeration method (default: fast)")
    common.add_argument(
        "--budget",
        type=float,
        default=None,
        help=f"operation budget for brute-force paths (default: ${BUDGET_ENV_VAR} or 1e8)",
    )
    common.add_argument("--workers", type=int, default=1, help="worker threads for brute")
    common.add_argument("--format", choices=FORMATS, default=None, dest="fmt",
                        help="output format (default depends on command)")

    parser = _Parser(
        prog="tracecode",
        description="Trace codes over GF(p) from the defining set "
        "{x != 0 : Tr(x^(p+1) - x) = 0}.",
        epilog="exit codes: 0 ok, 1 mismatch, 2 outside closed-form hypotheses, "
        "3 budget exceeded, 4 invalid input",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("field-info", parents=[common], help="field parameters and modulus")
    sub.add_parser("enumerate", parents=[common], help="enumerate the weight distribution")
    sub.add_parser("predict", parents=[common], help="closed-form weight distribution")
    sub.add_parser("verify", parents=[common], help="compare prediction with enumeration")
    sp = sub.add_parser("sums", parents=[common], help="evaluate S(a, b)")
    sp.add_argument("-a", required=True, help="element a as coordinates c0,c1,...")
    sp.add_argument("-b", required=True, help="element b as coordinates c0,c1,...")
    sp = sub.add_parser("export-genmatrix", parents=[common], help="write generator matrix")
    sp.add_argument("path")
    return parser


def _config(args) -> RunConfig:
    modulus = parse_modulus(args.modulus, args.p) if args.modulus else None
    budget = default_budget() if args.budget is None else int(args.budget)
    return RunConfig(args.p, args.m, modulus, args.method, budget, args.workers, args.fmt)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "field-info":
            code, out = cmd_field_info(cfg)
        elif args.command == "enumerate":
            code, out = cmd_enumerate(cfg)
        elif args.command == "predict":
            code, out = cmd_predict(cfg)
        elif args.command == "verify":
            code, out = cmd_verify(cfg)
        elif args.command == "sums":
            code, out = cmd_sums(cfg, args.a, args.b)
        else:
            code, out = cmd_export_genmatrix(cfg, args.path)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (FieldError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
