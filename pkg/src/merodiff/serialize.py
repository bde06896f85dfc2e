"""JSON encoding of library objects.

Rationals are ``"p/q"`` strings, exact complex numbers ``{"re", "im"}``
objects of rationals, and floating values carry decimal strings plus
``"precision_bits"``.
"""

from __future__ import annotations

import ast
import operator
from fractions import Fraction
from typing import Any, Callable, Mapping, Sequence

from .errors import InputError
from .exact import GaussianRational, I, Polynomial, RationalFunction, Scalar, scalar
from .numeric import BigComplex, get_ctx
from .periods import IntegrationPath, PeriodVector
from .strata import DiffConfig, ResidueVector
from .torus import AffineLattice, RankReport, RelationLattice, TorusPoint
from .varieties import (INFINITY, AlgebraicEquation, ArithmeticCertificate,
                        CoverSpec, LinearVarietySpec, SMReport)


def _frac(x: Fraction) -> str:
    return str(x)


def encode_scalar(x: Any) -> Any:
    if isinstance(x, str):
        return x
    if isinstance(x, (int, Fraction)):
        return _frac(Fraction(x))
    if isinstance(x, GaussianRational):
        if not x.im:
            return _frac(x.re)
        return {"re": _frac(x.re), "im": _frac(x.im)}
    if isinstance(x, BigComplex):
        re, im = x.decimal_parts()
        return {"re": re, "im": im, "precision_bits": x.prec}
    if isinstance(x, float):
        return repr(x)
    raise TypeError(f"cannot encode {x!r}")


def decode_scalar(obj: Any) -> Scalar:
    if isinstance(obj, bool):
        raise InputError("booleans are not numbers")
    if isinstance(obj, int):
        return GaussianRational(obj)
    if isinstance(obj, float):
        return GaussianRational(Fraction(repr(obj)))
    if isinstance(obj, str):
        try:
            return GaussianRational(Fraction(obj))
        except ValueError as exc:
            raise InputError(f"not a rational number: {obj!r}") from exc
    if isinstance(obj, Mapping):
        if "precision_bits" in obj:
            prec = int(obj["precision_bits"])
            ctx = get_ctx(prec)
            return BigComplex(ctx.mpc(ctx.mpf(str(obj.get("re", "0"))), ctx.mpf(str(obj.get("im", "0")))), prec)
        re = decode_scalar(obj.get("re", 0))
        im = decode_scalar(obj.get("im", 0))
        return re + im * I
    raise InputError(f"cannot read a number from {obj!r}")


def _require(obj: Mapping, key: str) -> Any:
    if not isinstance(obj, Mapping):
        raise InputError(f"expected a JSON object, got {type(obj).__name__}")
    if key not in obj:
        raise InputError(f"missing field {key!r}")
    return obj[key]


def encode_config(cfg: DiffConfig) -> dict:
    return {
        "mu": list(cfg.signature.orders),
        "lambda": encode_scalar(cfg.lam),
        "zeros": [encode_scalar(x) for x in cfg.zeros],
        "poles": [encode_scalar(y) for y in cfg.poles],
        "normalization": cfg.normalization,
    }


def decode_config(obj: Mapping) -> DiffConfig:
    return DiffConfig(
        [int(o) for o in _require(obj, "mu")],
        decode_scalar(_require(obj, "lambda")),
        [decode_scalar(x) for x in obj.get("zeros", [])],
        [decode_scalar(y) for y in obj.get("poles", [])],
        obj.get("normalization", "free"),
    )


def decode_paths(obj: Mapping) -> list[IntegrationPath] | None:
    if "paths" not in obj:
        return None
    return [IntegrationPath([decode_scalar(p) for p in path]) for path in obj["paths"]]


def encode_residues(res: ResidueVector) -> dict:
    return {"residues": [encode_scalar(r) for r in res.values],
            "residue_at_infinity": encode_scalar(res.residue_at_infinity)}


def encode_period_vector(pv: PeriodVector) -> dict:
    return {"relative": [encode_scalar(x) for x in pv.relative],
            "scaled_residues": [encode_scalar(x) for x in pv.scaled_residues],
            "branch_data": [list(r) for r in pv.branch_data]}


def encode_torus_point(tp: TorusPoint) -> dict:
    return {"w": [[encode_scalar(x) for x in row] for row in tp.w], "lambda": encode_scalar(tp.lam)}


def decode_torus_point(obj: Mapping) -> TorusPoint:
    w = tuple(tuple(decode_scalar(x) for x in row) for row in _require(obj, "w"))
    return TorusPoint(w, decode_scalar(obj.get("lambda", 1)))


def encode_lattice(V: AffineLattice) -> dict:
    out: dict = {"basis": [list(r) for r in V.basis]}
    if V.shape is not None:
        out["shape"] = list(V.shape)
    if V.offset is not None:
        out["offset"] = [encode_scalar(scalar(x)) for x in V.offset]
    return out


def decode_lattice(obj: Mapping) -> AffineLattice:
    shape = tuple(obj["shape"]) if "shape" in obj else None
    offset = tuple(decode_scalar(x) for x in obj["offset"]) if "offset" in obj else None
    return AffineLattice(tuple(tuple(int(x) for x in r) for r in _require(obj, "basis")), offset, shape)


def encode_relations(rel: RelationLattice) -> dict:
    return {"relations": [list(r) for r in rel.basis], "shape": list(rel.shape),
            "heuristic": rel.heuristic, "precision_bits": rel.prec}


def encode_rank_report(rep: RankReport) -> dict:
    return {"dim_S": rep.dim_S, "dim_ASV": rep.dim_ASV, "fib": rep.fib, "verdict": rep.verdict,
            "heuristic": rep.heuristic, "samples": [list(s) for s in rep.samples],
            "inequalities_hold": rep.inequalities_hold,
            "lattice": encode_lattice(rep.lattice) if rep.lattice is not None else None}


def encode_spec(spec: LinearVarietySpec) -> dict:
    return {"A": [[_frac(x) for x in row] for row in spec.A],
            "B": [[encode_scalar(x) for x in row] for row in spec.B],
            "q": [_frac(x) for x in spec.q],
            "m": spec.m}


def decode_spec(obj: Mapping) -> LinearVarietySpec:
    A = [[decode_scalar(x) for x in row] for row in _require(obj, "A")]
    B = [[decode_scalar(x) for x in row] for row in _require(obj, "B")]
    q = [decode_scalar(x) for x in _require(obj, "q")]
    return LinearVarietySpec(A, B, q, obj.get("m"))


def encode_equation(eq: AlgebraicEquation) -> dict:
    return {"c": encode_scalar(eq.c), "exponents": [list(r) for r in eq.exponents]}


def encode_sm_report(rep: SMReport) -> dict:
    return {"algebraic": rep.algebraic, "numeric_residual": rep.numeric_residual,
            "residue_variety": rep.residue_variety,
            "equations": [encode_equation(e) for e in rep.equations],
            "equations_hold": list(rep.equations_hold)}


def encode_polynomial(p: Polynomial) -> list:
    return [encode_scalar(c) for c in p.coeffs]


def decode_rational_function(obj: Mapping) -> RationalFunction:
    num = Polynomial([decode_scalar(c) for c in _require(obj, "numerator")])
    den = Polynomial([decode_scalar(c) for c in obj.get("denominator", [1])])
    if den.is_zero():
        raise InputError("denominator is the zero polynomial")
    return RationalFunction(num, den)


def encode_rational_function(f: RationalFunction) -> dict:
    return {"numerator": encode_polynomial(f.numerator), "denominator": encode_polynomial(f.denominator)}


def decode_cover(obj: Mapping) -> CoverSpec:
    f = decode_rational_function(obj)
    ram = None
    if "ramification" in obj:
        ram = [(INFINITY if p == INFINITY else decode_scalar(p), int(e)) for p, e in obj["ramification"]]
    return CoverSpec(f, ram)


def encode_cover(cover: CoverSpec) -> dict:
    out = encode_rational_function(cover.map)
    out["ramification"] = [[encode_scalar(p), e] for p, e in cover.ramification]
    return out


def encode_certificate(cert: ArithmeticCertificate) -> dict:
    return {"case": cert.case,
            "roots_of_unity": [{"row": j, "column": k, "order": N} for j, k, N in cert.roots_of_unity],
            "relations": [{"row": j, "exponents": list(a)} for j, a in cert.relations],
            "heuristic": cert.heuristic}


# restricted arithmetic expressions for parametrized families

_BINOPS: dict[type, Callable] = {ast.Add: operator.add, ast.Sub: operator.sub,
                                 ast.Mult: operator.mul, ast.Div: operator.truediv}


def compile_expression(text: str, names: Sequence[str]) -> Callable[[Mapping[str, Any]], Any]:
    """Parse ``+ - * /``, integer powers, numbers, ``I`` and the given names."""
    try:
        tree = ast.parse(str(text), mode="eval")
    except SyntaxError as exc:
        raise InputError(f"bad expression {text!r}: {exc.msg}") from exc
    allowed = set(names)

    def build(node):
        if isinstance(node, ast.Expression):
            return build(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
                and not isinstance(node.value, bool):
            v = GaussianRational(Fraction(repr(node.value)) if isinstance(node.value, float) else node.value)
            return lambda env: v
        if isinstance(node, ast.Name):
            if node.id == "I":
                return lambda env: I
            if node.id not in allowed:
                raise InputError(f"unknown name {node.id!r} in {text!r}")
            key = node.id
            return lambda env: env[key]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = build(node.operand)
            if isinstance(node.op, ast.USub):
                return lambda env: -inner(env)
            return inner
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            fn = _BINOPS[type(node.op)]
            left, right = build(node.left), build(node.right)
            return lambda env: fn(left(env), right(env))
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise InputError(f"only integer powers are allowed in {text!r}")
            base, k = build(node.left), node.right.value
            if k >= 0:
                return lambda env: base(env) ** k
            return lambda env: GaussianRational(1) / base(env) ** (-k)
        raise InputError(f"unsupported syntax in {text!r}")

    return build(tree)
