"""Command-line entry point.

Exit codes: 0 success, 2 usage or input error, 3 mathematical obstruction
(degenerate eigenvalue, non-divisibility, ...), 4 a verification check failed.
Results go to stdout; diagnostics and JSON error objects go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from . import __version__, oracles
from .cache import ResultCache, default_cache_dir
from .coeffs import KAPPA, scalar_latex, scalar_to_json
from .errors import CSPolyError, MathError
from .fbasis import f_deformed, f_vector, g_partition, is_deformed
from .model import (
    CASES,
    AlphaBeta,
    ModelSpec,
    action_moves,
    diagonal,
    E0,
    E0_deformed,
    eigenvalue_partition_deformed,
    index_vector,
    preset,
    slot_eigenvalue,
)
from .operators import (
    apply,
    build_deformed_reduced_operator,
    build_reduced_operator,
    membership_check,
    random_points,
    source_identity_residual,
)
from .serialize import (
    dumps,
    eigenresult_latex,
    eigenresult_text,
    eigenresult_to_json,
    poly_latex,
    poly_text,
    poly_to_json,
)
from .solver import choose_representation, solve_eigenfunction
from .symcore import pad, trim

log = logging.getLogger("cspoly")

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_VERIFY = 0, 2, 3, 4
DEFAULT_SEED = 0xC5D0
VERIFY_KINDS = ("eigen", "action", "source-identity", "membership", "oracle")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _int_list(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _rational_list(text: str) -> tuple:
    try:
        return tuple(Fraction(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from exc


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad seed {text!r}") from exc
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


@dataclass
class JobConfig:
    """Canonical description of one CLI job; its JSON form is the cache key."""

    command: str
    case: str | None = None
    custom: tuple | None = None
    params: dict = field(default_factory=dict)
    kappa: str = "1/2"
    symbolic: bool = False
    N: int = 1
    Ntilde: int = 0
    M: int | None = None
    Mtilde: int | None = None
    n: tuple | None = None
    partition: tuple | None = None
    fmt: str = "json"

    def __post_init__(self):
        if (self.case is None) == (self.custom is None):
            raise UsageError("exactly one of --case / --custom must be given")

    def canonical(self) -> dict:
        d = asdict(self)
        d["custom"] = [str(x) for x in self.custom] if self.custom else None
        d["params"] = {k: str(v) for k, v in sorted(self.params.items())}
        d["n"] = list(self.n) if self.n is not None else None
        d["partition"] = list(self.partition) if self.partition is not None else None
        d["version"] = __version__
        return d

    def spec(self) -> ModelSpec:
        if self.custom:
            ab = AlphaBeta(*self.custom)
        else:
            ab = preset(self.case, **self.params).ab
        kappa = KAPPA if self.symbolic else Fraction(self.kappa)
        return ModelSpec(ab, kappa, self.N, self.Ntilde)

    def slots(self) -> tuple[int, int]:
        return (self.N if self.M is None else self.M, self.Ntilde if self.Mtilde is None else self.Mtilde)

    def index(self) -> tuple:
        """The slot vector from --n, or from --partition via the (M, Mtilde) layout."""
        M, Mt = self.slots()
        if self.n is not None:
            return self.n
        if self.partition is None:
            raise UsageError("one of --n / --partition is required")
        lam = self.partition
        if any(x < 0 for x in lam):
            raise UsageError("partition entries must be non-negative")
        if list(lam) != sorted(lam, reverse=True):
            raise UsageError("partition must be weakly decreasing")
        if Mt == 0:
            lam = trim(lam)
            if len(lam) > M:
                raise UsageError(f"partition {lam} has more than {M} parts")
            return pad(lam, M)
        return index_vector(lam, M, Mt)


# ---------------------------------------------------------------------------
# parser


def _model_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("model")
    g.add_argument("--case", choices=CASES, help="preset one-body case (default II)")
    g.add_argument("--custom", type=_rational_list, metavar="A2,A1,A0,B1,B0",
                   help="explicit alpha/beta coefficients instead of a preset")
    for name in ("omega", "a", "b", "c"):
        g.add_argument(f"--{name}", type=_rational, help=f"preset parameter {name} (p/q)")
    k = g.add_mutually_exclusive_group()
    k.add_argument("--kappa", type=_rational, default=Fraction(1, 2), help="coupling as p/q (default 1/2)")
    k.add_argument("--kappa-symbolic", action="store_true", help="keep kappa as a formal symbol")
    g.add_argument("--N", type=int, default=1)
    g.add_argument("--Ntilde", type=int, default=0)
    g.add_argument("--M", type=int)
    g.add_argument("--Mtilde", type=int)


def _index_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--n", type=_int_list, help="integer vector, e.g. 2,0 (use --n=-1,2 for a leading minus)")
    g.add_argument("--partition", type=_int_list, help="partition, e.g. 3,1,1")


def _output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text", "latex"), default="json")
    p.add_argument("--no-cache", action="store_true", help="neither read nor write the result cache")
    p.add_argument("--cache-dir", help="cache directory (default $CSPOLY_CACHE or ~/.cache/cspoly)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cspoly", description="Exact generalised classical polynomials of Calogero-Sutherland type.")
    parser.add_argument("--version", action="version", version=f"cspoly {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_ in (("poly", "eigenpolynomial P_n"), ("fpoly", "f-basis polynomial f_n"),
                        ("eigenvalue", "eigenvalue E_n")):
        p = sub.add_parser(name, help=help_)
        _model_args(p)
        _index_args(p)
        _output_args(p)

    p = sub.add_parser("gpoly", help="g-basis polynomial g_lambda")
    _model_args(p)
    p.add_argument("--partition", type=_int_list, required=True)
    _output_args(p)

    p = sub.add_parser("repr", help="minimal (M, Mtilde) layout of a partition")
    p.add_argument("--partition", type=_int_list, required=True)
    p.add_argument("--format", choices=("json", "text", "latex"), default="json")

    p = sub.add_parser("verify", help="run a verification check")
    p.add_argument("kind", choices=VERIFY_KINDS)
    _model_args(p)
    _index_args(p)
    p.add_argument("--masses", type=_rational_list, help="mass pattern for source-identity")
    p.add_argument("--points", type=int, default=20, help="number of random points (source-identity)")
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help="PRNG seed (default 0xC5D0)")
    p.add_argument("--oracle", choices=("jack", "schur", "classical", "series"), default="series",
                   help="which oracle to compare with (verify oracle)")
    p.add_argument("--format", choices=("json", "text", "latex"), default="json")

    p = sub.add_parser("presets", help="list the preset one-body cases")
    p.add_argument("--format", choices=("json", "text", "latex"), default="json")
    return parser


def _config(args) -> JobConfig:
    case = getattr(args, "case", None)
    custom = getattr(args, "custom", None)
    if case is None and custom is None:
        case = "II"
    if custom is not None and len(custom) != 5:
        raise UsageError("--custom needs exactly five coefficients")
    params = {k: getattr(args, k) for k in ("omega", "a", "b", "c") if getattr(args, k, None) is not None}
    kappa = getattr(args, "kappa", Fraction(1, 2))
    symbolic = getattr(args, "kappa_symbolic", False)
    if not symbolic and kappa <= 0:
        raise UsageError("--kappa must be positive")
    N, Nt = getattr(args, "N", 1), getattr(args, "Ntilde", 0)
    if N < 0 or Nt < 0:
        raise UsageError("--N and --Ntilde must be non-negative")
    return JobConfig(
        command=args.command, case=case, custom=custom, params=params, kappa=str(kappa), symbolic=symbolic,
        N=N, Ntilde=Nt, M=getattr(args, "M", None), Mtilde=getattr(args, "Mtilde", None),
        n=getattr(args, "n", None), partition=getattr(args, "partition", None), fmt=args.format,
    )


# ---------------------------------------------------------------------------
# commands


def _render_poly(P, fmt: str, basis: str = "m") -> str:
    if fmt == "json":
        return dumps(poly_to_json(P))
    if fmt == "latex":
        return poly_latex(P, basis) + "\n"
    return poly_text(P, basis) + "\n"


def _render_scalar(key: str, x, fmt: str) -> str:
    if fmt == "json":
        return dumps({key: scalar_to_json(x)})
    if fmt == "latex":
        return scalar_latex(x) + "\n"
    return f"{x}\n"


def _check_length(cfg: JobConfig, n: tuple) -> None:
    M, Mt = cfg.slots()
    if len(n) != M + Mt:
        raise UsageError(f"index {list(n)} has length {len(n)}, expected M+Mtilde={M + Mt}")


def _cmd_poly(cfg: JobConfig) -> str:
    spec, (M, Mt) = cfg.spec(), cfg.slots()
    n = cfg.index()
    _check_length(cfg, n)
    r = solve_eigenfunction(n, spec, M, Mt)
    if cfg.fmt == "json":
        return dumps(eigenresult_to_json(r))
    if cfg.fmt == "latex":
        return eigenresult_latex(r)
    return eigenresult_text(r)


def _cmd_fpoly(cfg: JobConfig) -> str:
    spec, (M, Mt) = cfg.spec(), cfg.slots()
    n = cfg.index()
    _check_length(cfg, n)
    P = f_deformed(n, spec, M, Mt) if is_deformed(spec, M, Mt) else f_vector(n, spec)
    return _render_poly(P, cfg.fmt)


def _cmd_gpoly(cfg: JobConfig) -> str:
    spec = cfg.spec()
    lam = trim(cfg.partition)
    if list(lam) != sorted(lam, reverse=True) or any(x < 0 for x in lam):
        raise UsageError("--partition must be a weakly decreasing list of non-negative integers")
    return _render_poly(g_partition(lam, spec.N, spec.kappa), cfg.fmt)


def _cmd_eigenvalue(cfg: JobConfig) -> str:
    spec, (M, Mt) = cfg.spec(), cfg.slots()
    if cfg.partition is not None and spec.Ntilde and cfg.M is None and cfg.Mtilde is None:
        return _render_scalar("eigenvalue", eigenvalue_partition_deformed(cfg.partition, spec), cfg.fmt)
    n = cfg.index()
    _check_length(cfg, n)
    return _render_scalar("eigenvalue", slot_eigenvalue(n, spec, M, Mt), cfg.fmt)


def _cmd_repr(args) -> str:
    lam = trim(args.partition)
    if list(lam) != sorted(lam, reverse=True) or any(x < 0 for x in lam):
        raise UsageError("--partition must be a weakly decreasing list of non-negative integers")
    M, Mt = choose_representation(lam)
    if args.format == "json":
        return dumps({"M": M, "Mtilde": Mt})
    return f"({M}, {Mt})\n"


def _cmd_presets(args) -> str:
    rows = []
    for case in CASES:
        p = preset(case)
        rows.append({
            "case": case,
            "family": p.family,
            "alpha": [str(x) for x in (p.ab.a2, p.ab.a1, p.ab.a0)],
            "beta": [str(x) for x in (p.ab.b1, p.ab.b0)],
        })
    if args.format == "json":
        return dumps({"presets": rows, "defaults": {"omega": "1", "a": "2/3", "b": "3/5", "c": "1/2"}})
    lines = [f"{r['case']:>4}  alpha=({', '.join(r['alpha'])})  beta=({', '.join(r['beta'])})  {r['family']}"
             for r in rows]
    return "\n".join(lines) + "\n"


def _operator_for(spec: ModelSpec, M: int, Mt: int):
    if is_deformed(spec, M, Mt):
        return build_deformed_reduced_operator(spec), E0_deformed(spec)
    return build_reduced_operator(spec), E0(spec)


def _verify(args, cfg: JobConfig) -> tuple[bool, dict]:
    kind = args.kind
    if kind == "source-identity":
        if cfg.symbolic:
            raise UsageError("source-identity needs a rational --kappa")
        spec = cfg.spec()
        masses = args.masses or (Fraction(1),) * max(spec.N, 1)
        if any(m == 0 for m in masses):
            raise UsageError("masses must be non-zero")
        pts = random_points(args.points, len(masses), spec.ab, seed=args.seed)
        res = source_identity_residual(masses, spec.ab, spec.kappa, pts)
        bad = [i for i, r in enumerate(res) if r != 0]
        return not bad, {"points": len(pts), "seed": args.seed, "nonzero_at": bad}

    spec, (M, Mt) = cfg.spec(), cfg.slots()
    n = cfg.index()
    _check_length(cfg, n)
    deformed = is_deformed(spec, M, Mt)

    if kind == "eigen":
        r = solve_eigenfunction(n, spec, M, Mt)
        op, e0 = _operator_for(spec, M, Mt)
        P = r.monomial_form
        ok = (apply(op, P) - P.scale(r.eigenvalue - e0)).is_zero()
        return ok, {"n": list(n)}

    if kind == "action":
        f = (lambda m: f_deformed(m, spec, M, Mt)) if deformed else (lambda m: f_vector(m, spec))
        op, _ = _operator_for(spec, M, Mt)
        rhs = f(n).scale(diagonal(n, spec, M, Mt))
        for t, c in action_moves(n, spec, M, Mt):
            rhs = rhs + f(t).scale(c)
        return (apply(op, f(n)) - rhs).is_zero(), {"n": list(n)}

    if kind == "membership":
        if not deformed:
            raise UsageError("membership applies to the two-block construction (set --Ntilde or --Mtilde)")
        P = solve_eigenfunction(n, spec, M, Mt).monomial_form
        return membership_check(P, spec, all_pairs=True), {"n": list(n)}

    if args.oracle == "series":
        P = f_deformed(n, spec, M, Mt) if deformed else f_vector(n, spec)
        return P == oracles.series_extract_f(n, spec, M, Mt), {"oracle": "series", "n": list(n)}
    if deformed:
        raise UsageError(f"the {args.oracle} oracle is one-block only")
    lam = trim(n)
    if args.oracle == "schur":
        ok = f_vector(n, spec.with_kappa(1)) == oracles.schur(lam, spec.N)
        return ok, {"oracle": "schur", "n": list(n)}
    if args.oracle == "jack":
        if cfg.case != "II" or cfg.custom:
            raise UsageError("the jack oracle applies to case II")
        if list(lam) != list(n[: len(lam)]) or list(n) != sorted(n, reverse=True):
            raise UsageError("the jack oracle needs a partition index")
        P = solve_eigenfunction(n, spec).monomial_form.leading_normalized(lam)
        return P == oracles.jack_monic(lam, spec.N, spec.kappa), {"oracle": "jack", "n": list(n)}
    # classical
    if spec.N != 1 or cfg.custom:
        raise UsageError("the classical oracle needs --N 1 and a preset case")
    P = solve_eigenfunction(n, spec).monomial_form
    got = oracles.monic([P.terms.get(trim((d,)), 0) for d in range(n[0] + 1)])
    want = oracles.monic(oracles.classical_1var(cfg.case, n[0], **cfg.params))
    return got == want, {"oracle": "classical", "n": list(n)}


def _emit_verify(kind: str, ok: bool, info: dict, fmt: str) -> str:
    if fmt == "json":
        return dumps({"check": kind, "passed": ok, **info})
    return f"{kind}: {'PASS' if ok else 'FAIL'}\n"


_CACHED = {"poly": _cmd_poly, "fpoly": _cmd_fpoly, "gpoly": _cmd_gpoly, "eigenvalue": _cmd_eigenvalue}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=stderr,
                            format="cspoly: %(message)s")
        if args.command == "repr":
            stdout.write(_cmd_repr(args))
            return EXIT_OK
        if args.command == "presets":
            stdout.write(_cmd_presets(args))
            return EXIT_OK
        cfg = _config(args)
        if args.command == "verify":
            ok, info = _verify(args, cfg)
            stdout.write(_emit_verify(args.kind, ok, info, args.format))
            return EXIT_OK if ok else EXIT_VERIFY
        compute = lambda: _CACHED[args.command](cfg)  # noqa: E731
        if args.no_cache:
            out = compute()
        else:
            cache = ResultCache(args.cache_dir or default_cache_dir())
            out = cache.get_or_compute(cfg.canonical(), compute)
        stdout.write(out)
        return EXIT_OK
    except UsageError as exc:
        stderr.write(json.dumps({"error": "usage", "message": str(exc)}) + "\n")
        return EXIT_USAGE
    except MathError as exc:
        stderr.write(json.dumps(exc.to_json()) + "\n")
        return EXIT_MATH
    except CSPolyError as exc:
        stderr.write(json.dumps(exc.to_json()) + "\n")
        return EXIT_USAGE
    except (ValueError, ZeroDivisionError) as exc:
        stderr.write(json.dumps({"error": "invalid_input", "message": str(exc)}) + "\n")
        return EXIT_USAGE


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
