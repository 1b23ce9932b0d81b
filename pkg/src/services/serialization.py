"""
Serialization service - JSON documents and text rendering for every value
the commands read or print.

Elements are coefficient arrays [e0, ..., e_(n-1)]; input files may give a
plain integer when n = 1. Documents are plain dicts whose key order is
fixed by the builders below, so dumps() output is canonical.
"""

import json
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from src.core.config import EngineConfig
from src.core.couveignes import EnumerationResult, PartialSolution
from src.core.curve_arith import CurveStats
from src.core.errors import UsageError
from src.core.formal_group import AxiomReport, FormalGroupLaw, Provenance, WeierstrassCurve
from src.core.galois_field import Embedding, FieldCtx, FieldElement
from src.core.homomorphism import FglHom, HomogeneousPoly
from src.core.power_series import VARIABLE_NAMES, TruncSeries
from src.core.types import INFINITY, Axiom, Classification, LawKind, OutputFormat


# Fields and elements

def field_to_dict(ctx: FieldCtx) -> dict:
    return {"p": ctx.p, "n": ctx.n, "modulus": list(ctx.modulus)}


def field_from_dict(data: Any, config: Optional[EngineConfig] = None) -> FieldCtx:
    if not isinstance(data, dict) or "p" not in data:
        raise UsageError("Field must be an object with at least 'p'")
    try:
        p = int(data["p"])
        n = int(data.get("n", 1))
        modulus = data.get("modulus")
        if modulus is not None:
            modulus = [int(c) for c in modulus]
    except (TypeError, ValueError) as e:
        raise UsageError(f"Malformed field description: {e}") from e
    return FieldCtx.create(p, n, modulus, config)


def element_to_list(a: FieldElement) -> list[int]:
    return list(a.rep)


def element_from(ctx: FieldCtx, value: Any) -> FieldElement:
    if isinstance(value, bool):
        raise UsageError(f"Element must be an integer or coefficient array, got {value!r}")
    if isinstance(value, int):
        return ctx.element(value)
    if isinstance(value, list) and all(isinstance(c, int) and not isinstance(c, bool) for c in value):
        if len(value) > ctx.n:
            raise UsageError(f"Element {value} has more than {ctx.n} coefficients")
        return ctx.element(value)
    raise UsageError(f"Element must be an integer or coefficient array, got {value!r}")


# Curves

def curve_to_dict(curve: WeierstrassCurve) -> dict:
    return {
        "field": field_to_dict(curve.ctx),
        "a": [element_to_list(a) for a in curve.coefficients],
    }


def curve_from_dict(data: Any, config: Optional[EngineConfig] = None) -> WeierstrassCurve:
    if not isinstance(data, dict) or "field" not in data or "a" not in data:
        raise UsageError("Curve must be an object with 'field' and 'a'")
    ctx = field_from_dict(data["field"], config)
    coeffs = data["a"]
    if not isinstance(coeffs, list) or len(coeffs) != 5:
        raise UsageError("Curve 'a' must list a1, a2, a3, a4, a6")
    return WeierstrassCurve.from_coefficients(ctx, [element_from(ctx, c) for c in coeffs])


# Series and laws

def series_to_dict(series: TruncSeries) -> dict:
    return {
        "vars": series.nvars,
        "prec": series.prec,
        "terms": [{"e": list(e), "c": element_to_list(c)} for e, c in series.terms()],
    }


def series_from_dict(ctx: FieldCtx, data: Any) -> TruncSeries:
    if not isinstance(data, dict) or not {"vars", "prec", "terms"} <= data.keys():
        raise UsageError("Series must be an object with 'vars', 'prec' and 'terms'")
    terms = {}
    for term in data["terms"]:
        exps = tuple(int(e) for e in term["e"])
        terms[exps] = element_from(ctx, term["c"])
    return TruncSeries.from_terms(ctx, int(data["vars"]), int(data["prec"]), terms)


def _require(data: Any, keys: Sequence[str], what: str) -> dict:
    if not isinstance(data, dict) or not set(keys) <= data.keys():
        raise UsageError(f"{what} must be an object with {', '.join(repr(k) for k in keys)}")
    return data


def provenance_to_dict(provenance: Provenance) -> dict:
    """Root origin plus the number of Frobenius twists applied to it."""
    twisted = provenance.kind is LawKind.TWIST
    root = provenance.base if twisted else provenance
    return {
        "kind": root.kind.value,
        "a": [element_to_list(a) for a in root.curve.coefficients] if root.curve is not None else None,
        "twists": provenance.twists if twisted else None,
    }


def provenance_from_dict(ctx: FieldCtx, data: Any) -> Provenance:
    _require(data, ("kind", "a", "twists"), "Law provenance")
    try:
        kind = LawKind(data["kind"])
    except ValueError as e:
        raise UsageError(f"Unknown law kind {data['kind']!r}") from e
    if kind is LawKind.TWIST:
        raise UsageError("A twist records its root kind, not 'twist'")
    curve = None
    if data["a"] is not None:
        if kind is not LawKind.CURVE or not isinstance(data["a"], list) or len(data["a"]) != 5:
            raise UsageError("Only a curve law lists a1, a2, a3, a4, a6")
        curve = WeierstrassCurve.from_coefficients(ctx, [element_from(ctx, c) for c in data["a"]])
    elif kind is LawKind.CURVE:
        raise UsageError("A curve law must list its coefficients")
    root = Provenance(kind, curve)
    if data["twists"] is None:
        return root
    return Provenance(LawKind.TWIST, base=root, twists=int(data["twists"]))


def law_to_dict(law: FormalGroupLaw) -> dict:
    return {
        "field": field_to_dict(law.ctx),
        "law": law.provenance.describe(),
        "provenance": provenance_to_dict(law.provenance),
        "axioms_checked_to": law.axiom_checked,
        "series": series_to_dict(law.F),
    }


def law_from_dict(data: Any, config: Optional[EngineConfig] = None) -> FormalGroupLaw:
    """Inverse of law_to_dict; 'law' is derived from the provenance and not read."""
    _require(data, ("field", "provenance", "axioms_checked_to", "series"), "Law")
    ctx = field_from_dict(data["field"], config)
    F = series_from_dict(ctx, data["series"])
    checked = data["axioms_checked_to"]
    return FormalGroupLaw(F, provenance_from_dict(ctx, data["provenance"]), None if checked is None else int(checked))


def _height(value) -> Any:
    return "inf" if value is INFINITY else value


def hom_to_dict(hom: FglHom) -> dict:
    return {
        "U": series_to_dict(hom.U),
        "height": _height(hom.height),
        "separable": hom.separable,
        "checked_to_degree": hom.checked_to,
    }


def hom_from_dict(data: Any, source: FormalGroupLaw, target: FormalGroupLaw) -> FglHom:
    """Rebuild a homomorphism between known laws.

    The identity is checked again to the recorded degree. Height and
    separability are recomputed and must agree with the document.
    """
    _require(data, ("U", "height", "separable", "checked_to_degree"), "Homomorphism")
    U = series_from_dict(source.ctx, data["U"])
    checked = data["checked_to_degree"]
    if checked is None:
        hom = FglHom.build(source, target, U, check=False)
    else:
        hom = FglHom.build(source, target, U, prec=int(checked))
    if _height(hom.height) != data["height"] or hom.separable != data["separable"]:
        raise UsageError(
            f"Homomorphism document claims height {data['height']}, series has height {_height(hom.height)}"
        )
    return hom


def axiom_report_to_dict(report: AxiomReport) -> dict:
    return {
        "ok": report.ok,
        "identity": report.identity_ok,
        "commutativity": report.commutative_ok,
        "associativity": report.associative_ok,
        "checked_to": report.checked_to,
        "failing_axiom": report.failing_axiom.value if report.failing_axiom else None,
        "failing_monomial": list(report.failing_monomial) if report.failing_monomial else None,
    }


def axiom_report_from_dict(data: Any) -> AxiomReport:
    keys = ("ok", "identity", "commutativity", "associativity", "checked_to", "failing_axiom", "failing_monomial")
    _require(data, keys, "Axiom report")
    try:
        report = AxiomReport(
            bool(data["identity"]),
            bool(data["commutativity"]),
            bool(data["associativity"]),
            int(data["checked_to"]),
            Axiom(data["failing_axiom"]) if data["failing_axiom"] is not None else None,
            tuple(int(e) for e in data["failing_monomial"]) if data["failing_monomial"] is not None else None,
        )
    except (TypeError, ValueError) as e:
        raise UsageError(f"Malformed axiom report: {e}") from e
    if report.ok != data["ok"]:
        raise UsageError("Axiom report 'ok' disagrees with the individual axioms")
    return report


def stats_to_dict(stats: CurveStats) -> dict:
    return {
        "order": stats.order,
        "trace": stats.trace,
        "trace_mod_p": stats.trace_mod_p,
        "class": stats.classification.value,
        "height": stats.height,
    }


def stats_from_dict(data: Any) -> CurveStats:
    """q is recovered from trace = q + 1 - order."""
    _require(data, ("order", "trace", "trace_mod_p", "class", "height"), "Curve statistics")
    try:
        order, trace = int(data["order"]), int(data["trace"])
        return CurveStats(
            trace + order - 1, order, int(data["trace_mod_p"]), Classification(data["class"]), int(data["height"])
        )
    except (TypeError, ValueError) as e:
        raise UsageError(f"Malformed curve statistics: {e}") from e


def solution_to_list(solution: PartialSolution) -> list[list[int]]:
    return [element_to_list(c) for c in solution.coeffs]


def solution_from_list(ctx: FieldCtx, data: Any) -> PartialSolution:
    if not isinstance(data, list):
        raise UsageError("A solution is a list of elements u_1, u_2, ...")
    return PartialSolution(ctx, tuple(element_from(ctx, c) for c in data))


def enumeration_to_dict(result: EnumerationResult) -> dict:
    return {
        "bound": result.bound,
        "field": field_to_dict(result.embedding.source),
        "solve_field_degree": result.solve_degree,
        "solve_field": field_to_dict(result.field),
        "embedding": element_to_list(result.embedding.image_of_gen),
        "solutions": [solution_to_list(s) for s in result.solutions],
        "splitting_deficit": result.splitting_deficit,
    }


def enumeration_from_dict(data: Any, config: Optional[EngineConfig] = None) -> EnumerationResult:
    """Inverse of enumeration_to_dict. Per-step deficits are not recorded and come back empty."""
    keys = ("bound", "field", "solve_field_degree", "solve_field", "embedding", "solutions", "splitting_deficit")
    _require(data, keys, "Enumeration result")
    base = field_from_dict(data["field"], config)
    solve_field = field_from_dict(data["solve_field"], config)
    embedding = Embedding(base, solve_field, element_from(solve_field, data["embedding"]))
    if not isinstance(data["solutions"], list):
        raise UsageError("'solutions' must be a list")
    solutions = [solution_from_list(solve_field, s) for s in data["solutions"]]
    try:
        result = EnumerationResult(
            int(data["bound"]), solve_field, embedding, solutions, len(solutions) + int(data["splitting_deficit"])
        )
    except (TypeError, ValueError) as e:
        raise UsageError(f"Malformed enumeration result: {e}") from e
    if result.solve_degree != data["solve_field_degree"]:
        raise UsageError(
            f"solve_field_degree {data['solve_field_degree']} but {solve_field} over {base} has degree {result.solve_degree}"
        )
    return result


# Isogeny files

def polynomial_from_list(ctx: FieldCtx, data: Any) -> HomogeneousPoly:
    if not isinstance(data, list):
        raise UsageError("Isogeny polynomial must be a list of {'e', 'c'} terms")
    terms = {}
    try:
        for term in data:
            exps = tuple(int(e) for e in term["e"])
            terms[exps] = terms.get(exps, ctx.zero) + element_from(ctx, term["c"])
    except (KeyError, TypeError) as e:
        raise UsageError(f"Malformed isogeny term: {e}") from e
    try:
        return HomogeneousPoly.from_terms(ctx, terms)
    except ValueError as e:
        raise UsageError(str(e)) from e


def isogeny_from_dict(data: Any, ctx: FieldCtx, config: Optional[EngineConfig] = None):
    """(target curve, [f1, f2, f3]) from {"target": curve, "f": [f1, f2, f3]}."""
    if not isinstance(data, dict) or "target" not in data or "f" not in data:
        raise UsageError("Isogeny must be an object with 'target' and 'f'")
    target = curve_from_dict(data["target"], config)
    if target.ctx != ctx:
        raise UsageError(f"Isogeny target over {target.ctx}, source over {ctx}")
    polys = data["f"]
    if not isinstance(polys, list) or len(polys) != 3:
        raise UsageError("Isogeny 'f' must list three polynomials")
    return target, [polynomial_from_list(ctx, f) for f in polys]


# Text documents

def dumps(document: Any) -> str:
    """Canonical JSON: two-space indent, builder key order, trailing newline."""
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def parse(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"Invalid JSON: {e}") from e


def load_document(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"Cannot read {path}: {e}") from e
    return parse(text)


def load_curve(path: str | Path, config: Optional[EngineConfig] = None) -> WeierstrassCurve:
    return curve_from_dict(load_document(path), config)


def load_field(path: str | Path, config: Optional[EngineConfig] = None) -> FieldCtx:
    """A field file, or the field of a curve file."""
    data = load_document(path)
    if isinstance(data, dict) and "field" in data:
        data = data["field"]
    return field_from_dict(data, config)


def load_isogeny(path: str | Path, ctx: FieldCtx, config: Optional[EngineConfig] = None):
    return isogeny_from_dict(load_document(path), ctx, config)


def _element_text(vec: Sequence[int]) -> str:
    if len(vec) == 1:
        return str(vec[0])
    terms = []
    for i in reversed(range(len(vec))):
        c = vec[i]
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        terms.append(str(c) if not mono else (mono if c == 1 else f"{c}{mono}"))
    return "+".join(terms) if terms else "0"


def series_text(data: dict) -> str:
    """Render a serialized series the way TruncSeries prints."""
    names = VARIABLE_NAMES[data["vars"]]
    parts = []
    for term in data["terms"]:
        mono = "".join(
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(names, term["e"]) if e
        )
        coeff = _element_text(term["c"])
        if len(term["c"]) > 1 and "+" in coeff:
            coeff = f"({coeff})"
        if not mono:
            parts.append(coeff)
        elif coeff == "1":
            parts.append(mono)
        else:
            parts.append(f"{coeff}{mono}")
    parts.append(f"O({data['prec']})")
    return " + ".join(parts)


def _is_series(value: Any) -> bool:
    return isinstance(value, dict) and set(value) == {"vars", "prec", "terms"}


def _value_text(value: Any) -> str:
    if _is_series(value):
        return series_text(value)
    if isinstance(value, dict) and set(value) == {"p", "n", "modulus"}:
        return f"GF({value['p']})" if value["n"] == 1 else f"GF({value['p']}^{value['n']})"
    if isinstance(value, list) and value and all(isinstance(v, list) for v in value):
        # a list of element vectors
        return "[" + ", ".join(_element_text(v) for v in value) + "]"
    if value is None:
        return "-"
    return str(value)


def _is_record(value: Any) -> bool:
    return isinstance(value, dict) and not _is_series(value) and set(value) != {"p", "n", "modulus"}


def _text_lines(document: dict, indent: str = "") -> list[str]:
    width = max((len(k) for k in document), default=0)
    lines = []
    for key, value in document.items():
        label = f"{indent}{key.ljust(width)}"
        if _is_record(value):
            lines.append(f"{label}:")
            lines.extend(_text_lines(value, indent + "  "))
        elif key in ("solutions", "certificates", "first_failures") and isinstance(value, list):
            lines.append(f"{label}: {len(value)}")
            for i, item in enumerate(value, 1):
                if _is_record(item):
                    lines.append(f"{indent}  {i:>4}.")
                    lines.extend(_text_lines(item, indent + "        "))
                else:
                    lines.append(f"{indent}  {i:>4}. {_value_text(item)}")
        else:
            lines.append(f"{label}: {_value_text(value)}")
    return lines


def render_text(document: dict) -> str:
    """Human-readable 'key: value' lines; series print as formulas."""
    return "\n".join(_text_lines(document)) + "\n"


RENDERERS: dict[OutputFormat, Callable[[Any], str]] = {
    OutputFormat.JSON: dumps,
    OutputFormat.TEXT: render_text,
}


def render(document: Any, fmt: OutputFormat) -> str:
    return RENDERERS.get(fmt, dumps)(document)
