"""Command-line front end.

Exit codes: 0 success, 2 bad input (parse error, invalid model, non-generic
weights), 3 unsupported product; ``dt compare`` uses 0 / 10 / 11 for
all-equal / Euler-equal only / differs.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import hilbert, localization, snc
from .localization import NonGenericAction
from .parser import ParseError, parse
from .ring import AtomTable, MissingData, MotivicClass, UnsupportedSmash, default_table, euler_specialize, rewrite_mu2


@dataclass
class RunConfig:
    atom_table_path: str | None = None
    model_path: str | None = None
    order: int = 4
    weights: tuple[int, int, int] | None = None
    mu2_rewrite: bool = False
    output: str = "text"

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be >= 0")

    def table(self) -> AtomTable:
        if self.atom_table_path:
            return AtomTable.load(self.atom_table_path)
        return default_table()

    def finish(self, x: MotivicClass) -> MotivicClass:
        return rewrite_mu2(x) if self.mu2_rewrite else x


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        self.code = code
        super().__init__(message)


def _weights(text: str) -> tuple[int, int, int]:
    try:
        w = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weights {text!r}")
    if len(w) != 3:
        raise argparse.ArgumentTypeError("weights must be a,b,c")
    return w


def _config(args) -> RunConfig:
    return RunConfig(
        atom_table_path=args.atoms,
        model_path=getattr(args, "model", None),
        order=getattr(args, "order", 4) or 0,
        weights=getattr(args, "weights", None),
        mu2_rewrite=args.enable_mu2_rewrite,
        output="json" if args.json else "text",
    )


def _emit(cfg: RunConfig, text: str, doc) -> None:
    if cfg.output == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        print(text)


def _euler_or_none(x: MotivicClass):
    try:
        return euler_specialize(x)
    except MissingData:
        return None


def cmd_ring_eval(cfg: RunConfig, expr: str) -> int:
    x = cfg.finish(parse(expr, cfg.table()))
    _emit(cfg, str(x), {"class": str(x), "euler": _euler_or_none(x)})
    return 0


def _load_model(cfg: RunConfig) -> snc.SncModel:
    if not cfg.model_path:
        raise CliError("--model is required")
    model = snc.SncModel.load(cfg.model_path, cfg.table())
    snc.validate(model)
    return model


def cmd_snc(cfg: RunConfig, sub: str, m: int | None = None) -> int:
    model = _load_model(cfg)
    if sub == "integrate":
        if not m or m < 1:
            raise CliError("integrate needs --m >= 1")
        x = cfg.finish(snc.integral(model, m))
        _emit(cfg, str(x), {"m": m, "class": str(x)})
    elif sub == "series":
        series = snc.volume_series(model)
        coeffs = [cfg.finish(c) for c in snc.expand(series, cfg.order)] if cfg.order else []
        lines = ["S(T) = " + str(series)]
        lines += [f"T^{k}: {c}" for k, c in enumerate(coeffs, start=1)]
        doc = {
            "reldim": series.reldim,
            "summands": [{"J": sorted(J), "coefficient": str(coeff),
                          "factors": [{"mu": mu, "N": N} for mu, N in factors]}
                         for J, coeff, factors in series.summands],
            "coefficients": [str(c) for c in coeffs],
        }
        _emit(cfg, "\n".join(lines), doc)
    else:
        fn = {"volume": snc.motivic_volume, "nearby": snc.nearby_cycle,
              "vanishing": snc.vanishing_cycle}[sub]
        x = cfg.finish(fn(model))
        e = _euler_or_none(x)
        _emit(cfg, str(x), {"class": str(x), "euler": e})
    return 0


def cmd_localize(cfg: RunConfig, path: str) -> int:
    try:
        strata = localization.load_strata(path, cfg.table())
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise CliError(f"cannot load strata: {exc}")
    x = cfg.finish(localization.localize(strata))
    try:
        e = localization.euler_of_localization(strata)
    except MissingData:
        e = None
    text = f"{x}\neuler: {'undefined' if e is None else e}"
    _emit(cfg, text, {"class": str(x), "euler": e})
    return 0


def cmd_dt(cfg: RunConfig, sub: str, n: int | None = None) -> int:
    if sub == "zseries":
        coeffs = hilbert.bbs_series(cfg.order)
        _emit(cfg, "\n".join(f"T^{k}: {c}" for k, c in enumerate(coeffs) if k),
              {"coefficients": [str(c) for c in coeffs]})
        return 0
    if sub == "count":
        counts = [len(hilbert.enumerate_plane_partitions(k)) for k in range(1, cfg.order + 1)]
        _emit(cfg, " ".join(map(str, counts)),
              {"counts": counts, "macmahon": hilbert.macmahon_counts(cfg.order) if cfg.order else []})
        return 0
    if cfg.weights is None:
        raise CliError(f"dt {sub} needs --weights a,b,c")
    a, b, c = cfg.weights
    if sub == "index":
        if n is None:
            raise CliError("dt index needs --n")
        rows = [(P, hilbert.index_of(P, a, b, c)) for P in hilbert.enumerate_plane_partitions(n)]
        _emit(cfg, "\n".join(f"{P.label()} {ind}" for P, ind in rows),
              {"n": n, "weights": [a, b, c],
               "indices": [{"partition": P.heights(), "index": ind} for P, ind in rows]})
        return 0
    report = hilbert.compare(cfg.order, a, b, c)
    _emit(cfg, _format_report(report), report.to_dict())
    return report.exit_code


def _format_report(report: hilbert.CompareReport) -> str:
    a, b, c = report.weights
    lines = [f"compare order={report.order} weights={a},{b},{c}",
             "n\tequal\teuler_bbs\teuler_conj\tparity_sum\tsigned_pp\tbehrend_agree\tnongeneric"]
    for r in report.rows:
        lines.append("\t".join(map(str, [r.n, "yes" if r.equal else "no", r.euler_bbs,
                                         r.euler_conjecture, r.parity_sum, r.signed_count,
                                         f"{r.behrend_agree}/{r.partitions}", len(r.nongeneric)])))
    for r in report.rows:
        lines.append(f"T^{r.n} bbs: {r.bbs}")
        lines.append(f"T^{r.n} fixed-point sum: {r.conjecture}")
        for bad in r.nongeneric:
            lines.append(f"T^{r.n} zero-weight part: {bad['partition']} dim {bad['zero_dim']}")
    lines.append(f"status: {report.status}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--atoms", help="atom/bundle table (JSON)")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--enable-mu2-rewrite", action="store_true",
                        help="rewrite [MU2] as 1 - L^{1/2} in results")

    p = argparse.ArgumentParser(prog="motdt", description="Motivic classes, SNC integrals and the Hilb^n(A^3) DT series.")
    top = p.add_subparsers(dest="group", required=True)

    ring = top.add_parser("ring").add_subparsers(dest="sub", required=True)
    ev = ring.add_parser("eval", parents=[common])
    ev.add_argument("expr")

    sp = top.add_parser("snc").add_subparsers(dest="sub", required=True)
    for name in ("integrate", "series", "volume", "nearby", "vanishing"):
        q = sp.add_parser(name, parents=[common])
        q.add_argument("--model", required=True)
        if name == "integrate":
            q.add_argument("--m", type=int, required=True)
        if name == "series":
            q.add_argument("--order", type=int, default=10)

    loc = top.add_parser("localize", parents=[common])
    loc.add_argument("strata", nargs="?")
    loc.add_argument("--model", help="strata file (alternative to the positional path)")

    dt = top.add_parser("dt").add_subparsers(dest="sub", required=True)
    for name in ("zseries", "count", "index", "compare"):
        q = dt.add_parser(name, parents=[common])
        if name != "index":
            q.add_argument("--order", type=int, default=4)
        else:
            q.add_argument("--n", type=int, required=True)
        if name in ("index", "compare"):
            q.add_argument("--weights", type=_weights, required=True)
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if args.group == "ring":
            return cmd_ring_eval(cfg, args.expr)
        if args.group == "snc":
            return cmd_snc(cfg, args.sub, getattr(args, "m", None))
        if args.group == "localize":
            path = args.strata or args.model
            if not path:
                raise CliError("localize needs a strata file")
            return cmd_localize(cfg, path)
        return cmd_dt(cfg, args.sub, getattr(args, "n", None))
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except UnsupportedSmash as exc:
        print(f"unsupported product: {exc}", file=sys.stderr)
        return 3
    except (snc.ModelError, NonGenericAction, hilbert.BoundExceeded, CliError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return getattr(exc, "code", 2)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
