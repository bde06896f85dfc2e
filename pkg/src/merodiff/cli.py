"""Command-line front end: every operation reads and writes JSON.

Exit status: 0 on success, 1 when the computed answer is negative
(non-member, not arithmetic, not bi-algebraic), 2 on bad input and 3 when
the requested precision or tolerance cannot be reached.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Any, Callable, Mapping, Sequence

from . import serialize as js
from .errors import InputError, PrecisionError, ToleranceNotMet
from .exact import GaussianRational, min_prec, scalar
from .numeric import MIN_PREC, get_ctx, to_mpc
from .periods import algebraic_period_part, default_path, period_vector, quadrature_period
from .strata import DiffConfig, canonicalize, residues
from .torus import (ConfigFamily, bialgebraicity_rank_test, closure_relations_hold,
                    detect_multiplicative_relations, embed, fiber_rank)
from .varieties import (arithmetic_point_check, dlog_differential, pullback_by_cover,
                        pullback_with_residues, sm_membership, teichmueller_curve_from_point)

SAMPLE_DENOMINATOR = 64


class _Negative(Exception):
    """Carries a result whose verdict is negative (exit status 1)."""

    def __init__(self, payload: dict):
        super().__init__("negative verdict")
        self.payload = payload


def _load(path: str | None, flag: str) -> Any:
    if path is None:
        raise InputError(f"{flag} is required for this command")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: {exc.msg} at line {exc.lineno}, column {exc.colno}") from exc


def _config_and_paths(obj: Mapping):
    return js.decode_config(obj), js.decode_paths(obj)


# commands

def cmd_residues(args) -> dict:
    cfg = js.decode_config(_load(args.input, "--input"))
    return js.encode_residues(residues(cfg))


def cmd_periods(args) -> dict:
    cfg, paths = _config_and_paths(_load(args.input, "--input"))
    pv = period_vector(cfg, paths, args.precision_bits)
    out = js.encode_period_vector(pv)
    out["algebraic_part"] = [js.encode_scalar(x) for x in algebraic_period_part(cfg)]
    ctx = get_ctx(args.precision_bits)
    if paths is None:
        paths = [default_path(cfg, j) for j in range(1, cfg.m + 1)]
    worst = 0.0
    for value, path in zip(pv.relative, paths):
        quad = quadrature_period(cfg, path, min(args.tol, 1e-12), args.precision_bits)
        worst = max(worst, float(abs(to_mpc(value, ctx) - quad.value)))
    if worst > args.tol:
        raise ToleranceNotMet(f"closed form and quadrature differ by {worst:.3e}")
    out["quadrature_difference"] = worst
    return out


def cmd_embed(args) -> dict:
    cfg = js.decode_config(_load(args.input, "--input"))
    if not cfg.is_canonical:
        cfg = canonicalize(cfg)
    tp = embed(cfg)
    out = js.encode_torus_point(tp)
    out["config"] = js.encode_config(cfg)
    out["closure_relations_hold"] = closure_relations_hold(tp) if tp.is_exact else None
    return out


def _residue_input(obj: Mapping) -> list:
    if "residues" in obj:
        return [js.decode_scalar(r) for r in obj["residues"]]
    return list(residues(js.decode_config(obj)).values)


def cmd_fiber_rank(args) -> dict:
    R = _residue_input(_load(args.input, "--input"))
    V = js.decode_lattice(_load(args.spec, "--spec"))
    return {"fiber_rank": fiber_rank(R, V, args.precision_bits)}


def _sampler(ranges: Mapping[str, Sequence[Any]], names: Sequence[str]) -> Callable:
    bounds = []
    for name in names:
        lo, hi = (Fraction(str(x)) for x in ranges.get(name, ("1", "2")))
        if hi <= lo:
            raise InputError(f"empty sample range for {name!r}")
        bounds.append((lo, hi))

    def sample(rng: random.Random) -> list:
        return [GaussianRational(lo + (hi - lo) * Fraction(rng.randint(1, SAMPLE_DENOMINATOR - 1),
                                                             SAMPLE_DENOMINATOR))
                for lo, hi in bounds]

    return sample


def family_from_json(obj: Mapping, prec: int) -> ConfigFamily:
    """A :class:`ConfigFamily` from expressions in the parameter names.

    Fields: ``params``, ``mu``, ``lambda``, ``zeros``, ``poles`` (strings
    such as ``"1/(t+1)"``), optional ``normalization``, ``sample`` (ranges
    per parameter) and ``cover`` (pull every member back along a map).
    """
    names = list(js._require(obj, "params"))
    mu = [int(o) for o in js._require(obj, "mu")]
    lam = js.compile_expression(js._require(obj, "lambda"), names)
    zeros = [js.compile_expression(e, names) for e in obj.get("zeros", [])]
    poles = [js.compile_expression(e, names) for e in obj.get("poles", [])]
    normalization = obj.get("normalization", "free")
    cover = js.decode_cover(obj["cover"]) if "cover" in obj else None

    def build(params: Sequence[Any]) -> DiffConfig:
        env = dict(zip(names, (scalar(p) for p in params)))
        cfg = DiffConfig(mu, lam(env), [z(env) for z in zeros], [p(env) for p in poles], normalization)
        if cover is None:
            return cfg
        # perturbed parameters may carry more bits than the family default
        return pullback_by_cover(cfg, cover, max(prec, min_prec(params, prec)))

    return ConfigFamily(len(names), build, _sampler(obj.get("sample", {}), names),
                        obj.get("name", ""))


def cmd_bialg_test(args) -> dict:
    obj = _load(args.input, "--input")
    family = family_from_json(obj, args.precision_bits)
    V = js.decode_lattice(_load(args.spec, "--spec")) if args.spec else None
    rep = bialgebraicity_rank_test(family, V, samples=int(obj.get("samples", 4)), seed=args.seed,
                                   prec=args.precision_bits)
    out = js.encode_rank_report(rep)
    if rep.verdict != "bi-algebraic-consistent":
        raise _Negative(out)
    return out


def cmd_check_sm(args) -> dict:
    spec = js.decode_spec(_load(args.spec, "--spec"))
    cfg, paths = _config_and_paths(_load(args.input, "--input/--point"))
    rep = sm_membership(cfg, spec, paths, args.precision_bits)
    out = js.encode_sm_report(rep)
    out["member"] = rep.algebraic and rep.numeric_residual < args.tol
    if not out["member"]:
        raise _Negative(out)
    return out


def cmd_make_teich(args) -> dict:
    cfg, paths = _config_and_paths(_load(args.input, "--input"))
    spec = teichmueller_curve_from_point(cfg, paths, args.precision_bits, real_tol=args.tol)
    out = js.encode_spec(spec)
    out["corank"] = spec.corank
    out["coefficient_field"] = spec.coefficient_field()
    return out


def cmd_pullback(args) -> dict:
    base = js.decode_config(_load(args.input, "--input"))
    cover = js.decode_cover(_load(args.cover, "--cover"))
    cfg, res = pullback_with_residues(base, cover, args.precision_bits)
    out = js.encode_config(cfg)
    out.update(js.encode_residues(res))
    return out


def cmd_dlog(args) -> dict:
    f = js.decode_rational_function(_load(args.input, "--input"))
    cfg = dlog_differential(f, args.precision_bits)
    out = js.encode_config(cfg)
    out.update(js.encode_residues(residues(cfg)))
    return out


def cmd_arith_check(args) -> dict:
    cfg, paths = _config_and_paths(_load(args.input, "--input"))
    ok, cert = arithmetic_point_check(cfg, paths, args.precision_bits)
    out = {"arithmetic": ok, "certificate": js.encode_certificate(cert)}
    if not ok:
        raise _Negative(out)
    return out


def cmd_detect_relations(args) -> dict:
    obj = _load(args.input, "--input")
    points = []
    for p in js._require(obj, "points"):
        if "w" in p:
            points.append(js.decode_torus_point(p))
        else:
            cfg = js.decode_config(p)
            points.append(embed(cfg if cfg.is_canonical else canonicalize(cfg)))
    if not points:
        raise InputError("points must not be empty")
    rel = detect_multiplicative_relations(points, int(obj.get("exponent_bound", 12)),
                                          args.precision_bits)
    return js.encode_relations(rel)


COMMANDS: dict[str, tuple[Callable, str]] = {
    "periods": (cmd_periods,
                "relative periods, 2*pi*i*residues and branch data; --input config "
                '{"mu","lambda","zeros","poles","normalization"} with optional "paths"'),
    "residues": (cmd_residues, "residues at the finite poles and at infinity; --input config"),
    "embed": (cmd_embed, "torus coordinates w_ij of the canonical representative; --input config"),
    "fiber-rank": (cmd_fiber_rank,
                   'rank of the residue pairing on V; --input {"residues"} or config, '
                   '--spec lattice {"basis","shape"}'),
    "bialg-test": (cmd_bialg_test,
                   'rank test for a family; --input {"params","mu","lambda","zeros","poles",'
                   '"sample","cover"?}, optional --spec lattice'),
    "check-sm": (cmd_check_sm,
                 'membership in S_M; --spec {"A","B","q"}, --input/--point config'),
    "make-teich": (cmd_make_teich, "Teichmueller curve spec through a point; --input config"),
    "pullback": (cmd_pullback,
                 'pull a differential back along a cover; --input config, '
                 '--cover {"numerator","denominator"}'),
    "dlog": (cmd_dlog, 'the differential df/f; --input {"numerator","denominator"}'),
    "arith-check": (cmd_arith_check, "arithmetic point test with certificate; --input config"),
    "detect-relations": (cmd_detect_relations,
                         'multiplicative relations; --input {"points": [config or {"w"}],'
                         ' "exponent_bound"?}'),
}


def _precision(text: str) -> int:
    value = int(text)
    if value < MIN_PREC:
        raise argparse.ArgumentTypeError(f"precision must be at least {MIN_PREC} bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "--point", dest="input", help="input JSON file")
    common.add_argument("--spec", help="variety spec or lattice JSON file")
    common.add_argument("--cover", help="cover JSON file")
    common.add_argument("--precision-bits", type=_precision, default=256)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", help="write the result here instead of stdout")
    parser = argparse.ArgumentParser(
        prog="merodiff",
        description="Periods and bi-algebraic geometry of differentials on the sphere.",
        epilog="exit status: 0 ok, 1 negative verdict, 2 input error, 3 precision error")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=text, description=text)
    return parser


def _emit(payload: dict, output: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _fail(exc: Exception, status: int) -> int:
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True) + "\n")
    return status


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        payload = handler(args)
    except _Negative as neg:
        _emit(neg.payload, args.output)
        return 1
    except PrecisionError as exc:
        return _fail(exc, 3)
    except (InputError, KeyError, TypeError, ValueError) as exc:
        return _fail(exc, 2)
    _emit(payload, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
