"""JSON, text and LaTeX renderings of scalars, polynomials and eigen-results."""

from __future__ import annotations

import json

from .coeffs import KRational, scalar_from_json, scalar_latex, scalar_to_json
from .fbasis import FExpansion
from .solver import EigenResult
from .symcore import BiSymmetricPoly, ExpandedPoly, SymmetricPoly


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, no extra whitespace, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def _is_symbolic(P) -> bool:
    return any(isinstance(c, KRational) for c in P.terms.values())


def poly_to_json(P) -> dict:
    out = {
        "nvars": P.nvars,
        "terms": [{"idx": list(k), "coeff": scalar_to_json(c)} for k, c in P.sorted_items()],
        "symbolic": _is_symbolic(P),
    }
    if isinstance(P, SymmetricPoly):
        out["kind"] = "symmetric"
    elif isinstance(P, BiSymmetricPoly):
        out["kind"] = "bisymmetric"
        out["nvars"] = P.nvars
        out["nvars_tilde"] = P.nvars_tilde
    else:
        out["kind"] = "expanded"
    return out


def poly_from_json(obj: dict):
    sym = obj.get("symbolic")
    terms = {tuple(t["idx"]): scalar_from_json(t["coeff"], sym) for t in obj["terms"]}
    kind = obj.get("kind", "symmetric")
    if kind == "symmetric":
        return SymmetricPoly(obj["nvars"], terms)
    if kind == "bisymmetric":
        return BiSymmetricPoly(obj["nvars"], obj["nvars_tilde"], terms)
    return ExpandedPoly(obj["nvars"], terms)


def fexpansion_to_json(F: FExpansion) -> dict:
    return {
        "basis": "f",
        "M": F.M,
        "Mtilde": F.Mtilde,
        "terms": [{"idx": list(m), "coeff": scalar_to_json(c)} for m, c in F.ordered()],
    }


def eigenresult_to_json(r: EigenResult) -> dict:
    return {
        "n": list(r.n),
        "M": r.M,
        "Mtilde": r.Mtilde,
        "eigenvalue": scalar_to_json(r.eigenvalue),
        "f_expansion": fexpansion_to_json(r.expansion)["terms"],
        "monomial": poly_to_json(r.monomial_form)["terms"],
        "degeneracy_roots": [str(x) for x in r.degeneracy_roots],
    }


# ---------------------------------------------------------------------------
# human-readable forms


def _label(idx) -> str:
    return ",".join(str(i) for i in idx)


def _tilde_split(P, k: tuple) -> str:
    if isinstance(P, BiSymmetricPoly):
        return _label(k[: P.nvars]) + ";" + _label(k[P.nvars:])
    return _label(k)


def poly_text(P, basis: str = "m") -> str:
    if not P.terms:
        return "0"
    parts = [f"({c}) {basis}[{_tilde_split(P, k)}]" for k, c in P.sorted_items()]
    return " + ".join(parts)


def poly_latex(P, basis: str = "m") -> str:
    if not P.terms:
        return "0"
    parts = [f"\\left({scalar_latex(c)}\\right) {basis}_{{({_tilde_split(P, k)})}}" for k, c in P.sorted_items()]
    return " + ".join(parts)


def fexpansion_text(F: FExpansion) -> str:
    if not F.terms:
        return "0"
    return " + ".join(f"({c}) f[{_label(m)}]" for m, c in F.ordered())


def fexpansion_latex(F: FExpansion) -> str:
    if not F.terms:
        return "0"
    return " + ".join(f"\\left({scalar_latex(c)}\\right) f_{{({_label(m)})}}" for m, c in F.ordered())


def eigenresult_text(r: EigenResult) -> str:
    lines = [
        f"n = ({_label(r.n)})  (M, Mtilde) = ({r.M}, {r.Mtilde})",
        f"eigenvalue = {r.eigenvalue}",
        f"f-expansion = {fexpansion_text(r.expansion)}",
        f"monomial form = {poly_text(r.monomial_form)}",
    ]
    if r.degeneracy_roots:
        lines.append("degenerate at kappa = " + ", ".join(str(x) for x in r.degeneracy_roots))
    return "\n".join(lines) + "\n"


def eigenresult_latex(r: EigenResult) -> str:
    return (f"P_{{({_label(r.n)})}} = {fexpansion_latex(r.expansion)}"
            f" = {poly_latex(r.monomial_form)},\\quad E = {scalar_latex(r.eigenvalue)}\n")

