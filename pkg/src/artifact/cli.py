"""File-driven front end for branch analysis.

Reads a JSON description of a branch (ambient field, parametrization, and a
mode selecting the curve valuation, a divisorial target, or an abstract
splitting stream), runs resolution and the series pipeline, and emits:

* analyze: a human-readable report (graph, invariants, series, expansion),
* report:  the same data as byte-stable JSON with sorted keys,
* graph:   the quotient graph as DOT text,
* verify:  a differential check of the series expansion against the
           brute-force filtration oracle.

Exit codes: 0 success, 2 parse/schema failure, 3 mathematical validation
failure, 4 verification mismatch. Rationals in input files are written as
"p/q" strings (or plain integers); floating point is rejected. Behavior is a
pure function of the file content and flags.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import ArtifactError, FormulaMismatch, ParseFailure
from .exactfield import AmbientField
from .oracle import divisorial_filtration_dims, filtration_dims
from .poincare import (case_II_data, classical_series, divisorial_series,
                       expand, numerical_data, value_maps)
from .resolution import GENERIC, BranchParam, generic_curvette, resolve


# --- input documents ----------------------------------------------------------

@dataclass(frozen=True)
class InputDoc:
    """Parsed branch description.

    min_poly lists rational coefficients lowest degree first; y_terms pairs
    exponents with coefficient coordinate vectors (or the GENERIC marker);
    mode is "curve", "divisorial" or "case2" with its argument unpacked into
    extra_steps / splitting_prefix; truncate is the file's expansion-length
    option, None when absent.
    """

    var: str
    min_poly: tuple
    x_order: int
    y_terms: tuple
    mode: str
    extra_steps: int = 0
    splitting_prefix: tuple = ()
    truncate: int = None


def _as_object(value, where, allowed):
    if not isinstance(value, dict):
        raise ParseFailure("%s must be a JSON object" % where)
    unknown = set(value) - set(allowed)
    if unknown:
        raise ParseFailure("unknown keys in %s: %s"
                           % (where, ", ".join(sorted(unknown))))
    return value


def _require(obj, key, where):
    if key not in obj:
        raise ParseFailure("missing key %r in %s" % (key, where))
    return obj[key]


def _as_int(value, where, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseFailure("%s must be an integer" % where)
    if minimum is not None and value < minimum:
        raise ParseFailure("%s must be >= %d" % (where, minimum))
    return value


def _as_fraction(value, where):
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseFailure(
            "%s must be an integer or a \"p/q\" string, not a float" % where)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ParseFailure("%s is not a rational: %r" % (where, value))
    raise ParseFailure("%s must be an integer or a \"p/q\" string" % where)


def _parse_mode(value):
    if value == "curve":
        return "curve", 0, ()
    mode_obj = _as_object(value, "mode", ("divisorial", "case2"))
    if len(mode_obj) != 1:
        raise ParseFailure("mode object must have exactly one key")
    if "divisorial" in mode_obj:
        args = _as_object(mode_obj["divisorial"], "mode.divisorial",
                          ("extra_steps",))
        extra = _as_int(_require(args, "extra_steps", "mode.divisorial"),
                        "extra_steps", minimum=0)
        return "divisorial", extra, ()
    args = _as_object(mode_obj["case2"], "mode.case2", ("splitting",))
    raw = _require(args, "splitting", "mode.case2")
    if not isinstance(raw, list):
        raise ParseFailure("mode.case2.splitting must be a list")
    prefix = []
    for k, item in enumerate(raw):
        where = "mode.case2.splitting[%d]" % k
        pair = _as_object(item, where, ("M_rho", "ell"))
        prefix.append((_as_int(_require(pair, "M_rho", where),
                               where + ".M_rho", minimum=1),
                       _as_int(_require(pair, "ell", where),
                               where + ".ell", minimum=2)))
    return "case2", 0, tuple(prefix)


def parse_input(raw):
    """Validate a decoded JSON document and assemble an InputDoc."""
    top = _as_object(raw, "input", ("ambient", "branch", "mode", "options"))
    ambient = _as_object(_require(top, "ambient", "input"), "ambient",
                         ("var", "min_poly"))
    var = _require(ambient, "var", "ambient")
    if not isinstance(var, str) or not var:
        raise ParseFailure("ambient.var must be a non-empty string")
    raw_poly = _require(ambient, "min_poly", "ambient")
    if not isinstance(raw_poly, list) or len(raw_poly) < 2:
        raise ParseFailure(
            "ambient.min_poly must list coefficients of a degree >= 1 "
            "polynomial, lowest degree first")
    min_poly = tuple(_as_fraction(a, "ambient.min_poly[%d]" % k)
                     for k, a in enumerate(raw_poly))
    degree = len(min_poly) - 1

    branch = _as_object(_require(top, "branch", "input"), "branch",
                        ("x_order", "y_terms"))
    x_order = _as_int(_require(branch, "x_order", "branch"), "branch.x_order",
                      minimum=1)
    raw_terms = _require(branch, "y_terms", "branch")
    if not isinstance(raw_terms, list):
        raise ParseFailure("branch.y_terms must be a list")
    y_terms = []
    for k, item in enumerate(raw_terms):
        where = "branch.y_terms[%d]" % k
        term = _as_object(item, where, ("exp", "coeff"))
        exp = _as_int(_require(term, "exp", where), where + ".exp", minimum=1)
        coeff = _require(term, "coeff", where)
        if coeff == "generic":
            y_terms.append((exp, GENERIC))
            continue
        if not isinstance(coeff, list) or len(coeff) != degree:
            raise ParseFailure(
                "%s.coeff must be \"generic\" or a list of %d coordinates"
                % (where, degree))
        y_terms.append((exp, tuple(_as_fraction(a, where + ".coeff[%d]" % i)
                                   for i, a in enumerate(coeff))))

    mode, extra_steps, prefix = _parse_mode(_require(top, "mode", "input"))

    truncate = None
    if "options" in top:
        options = _as_object(top["options"], "options", ("truncate",))
        if "truncate" in options:
            truncate = _as_int(options["truncate"], "options.truncate",
                               minimum=0)

    return InputDoc(var=var, min_poly=min_poly, x_order=x_order,
                    y_terms=tuple(y_terms), mode=mode,
                    extra_steps=extra_steps, splitting_prefix=prefix,
                    truncate=truncate)


def load_input(path):
    """Read and parse an input file; all failures are ParseFailure."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseFailure("cannot read %s: %s" % (path, exc))
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseFailure("invalid JSON in %s: %s" % (path, exc))
    return parse_input(raw)


# --- analysis pipeline ----------------------------------------------------------

@dataclass(frozen=True)
class Analysis:
    """Resolved and assembled state shared by all commands."""

    doc: InputDoc
    branch: BranchParam
    graph: object
    recs: object
    nd: object
    series: object
    n: int = None


def build_analysis(doc):
    """Run resolution and assemble invariants and series for the mode."""
    field = AmbientField(doc.min_poly)
    terms = []
    for exp, coeff in doc.y_terms:
        if coeff is GENERIC:
            terms.append((exp, GENERIC))
        else:
            terms.append((exp, field.element(coeff)))
    branch = BranchParam(field, doc.x_order, terms)
    extra = doc.extra_steps if doc.mode == "divisorial" else 0
    graph, recs = resolve(branch, extra_steps=extra)
    n = None
    if doc.mode == "divisorial":
        nd = numerical_data(graph, recs, mode="divisorial")
        series = divisorial_series(nd)
    elif doc.mode == "case2":
        nd = case_II_data(numerical_data(graph, recs), doc.splitting_prefix)
        series = classical_series(nd)
    elif graph.case == "III":
        # a generic marker: the valuation is n times the divisorial
        # valuation at the last component of the reduced family
        nd = numerical_data(graph, recs, mode="divisorial")
        series = divisorial_series(nd)
        n = graph.n_case3
    else:
        nd = numerical_data(graph, recs)
        series = classical_series(nd)
    return Analysis(doc=doc, branch=branch, graph=graph, recs=recs, nd=nd,
                    series=series, n=n)


def default_truncate(analysis):
    """Expansion length when neither flag nor file names one."""
    if analysis.doc.mode == "case2" or analysis.graph.case == "III":
        return 40
    return analysis.nd.Delta + 10


def _pick_truncate(analysis, flag_value):
    if flag_value is not None:
        if flag_value < 0:
            raise ParseFailure("--truncate must be >= 0")
        return flag_value
    if analysis.doc.truncate is not None:
        return analysis.doc.truncate
    return default_truncate(analysis)


# --- report documents -------------------------------------------------------------

def ordered_factors(series):
    """Numerator factors first, then denominator factors, exponents rising."""
    pos = [[a, s] for a, s in series.factors if s > 0]
    neg = [[a, s] for a, s in series.factors if s < 0]
    return pos + neg


def formula_text(series):
    """Render a binomial product as a display string like (1-t^6)/((1-t^2)(1-t^3))."""

    def block(factors):
        parts = []
        for a, s in factors:
            base = "(1-t)" if a == 1 else "(1-t^%d)" % a
            power = abs(s)
            parts.append(base if power == 1 else "%s^%d" % (base, power))
        return "".join(parts)

    pos = [(a, s) for a, s in series.factors if s > 0]
    neg = [(a, s) for a, s in series.factors if s < 0]
    if not pos and not neg:
        return "1"
    numerator = block(pos) if pos else "1"
    if not neg:
        return numerator
    denominator = block(neg)
    if len(neg) > 1:
        denominator = "(%s)" % denominator
    return "%s/%s" % (numerator, denominator)


def _tag_text(tags):
    rendered = []
    for tag in sorted(tags):
        name = tag[0]
        args = tag[1:]
        if args:
            rendered.append("%s(%s)" % (name, ",".join(str(a) for a in args)))
        else:
            rendered.append(name)
    return ",".join(rendered)


@dataclass(frozen=True)
class ReportDoc:
    """Assembled report: graph summary, invariants, series, verification.

    graph holds one row per vertex (id, kind, self_int, field_dim, m, M) plus
    the edge list and the vertex the branch arrow attaches to; invariants the
    numerical bundle; series the ordered binomial factors, display formula,
    partial flag, truncation length and expansion. verification is None until
    a differential run fills it.
    """

    case: str
    mode: str
    n: int
    graph: dict
    invariants: dict
    series: dict
    verification: dict = None

    def __post_init__(self):
        if len(self.series["expansion"]) != self.series["truncate"] + 1:
            raise ValueError("expansion must list levels 0..truncate")

    def to_dict(self):
        return {
            "case": self.case,
            "mode": self.mode,
            "n": self.n,
            "graph": self.graph,
            "invariants": self.invariants,
            "series": self.series,
            "verification": self.verification,
        }


def build_report(analysis, truncate, verification=None):
    graph = analysis.graph
    mode = "curve" if analysis.doc.mode == "case2" else analysis.doc.mode
    value_mode = "divisorial" if (mode == "divisorial"
                                  or graph.case == "III") else "curve"
    m_map, M_map = value_maps(graph, analysis.recs, value_mode)
    vertices = [{
        "id": v.id,
        "kind": _tag_text(v.tags),
        "self_int": v.self_int,
        "field_dim": v.field_dim,
        "m": m_map[v.id],
        "M": M_map[v.id],
    } for v in graph.vertices]
    nd = analysis.nd
    invariants = {
        "m_sigma": list(nd.m_sigma),
        "M_sigma": list(nd.M_sigma),
        "M_tau": list(nd.M_tau),
        "e": list(nd.e),
        "N": list(nd.N),
        "splitting": [[M_rho, ell] for M_rho, ell in nd.splitting],
        "ell_total": nd.ell_total,
        "c": nd.c_conductor,
        "Delta": nd.Delta,
        "M_delta": nd.M_delta,
    }
    expansion = expand(analysis.series, truncate)
    series = {
        "factors": ordered_factors(analysis.series),
        "formula": formula_text(analysis.series),
        "partial": analysis.series.partial,
        "truncate": truncate,
        "expansion": list(expansion.coeffs),
    }
    return ReportDoc(
        case=graph.case,
        mode=analysis.doc.mode,
        n=analysis.n,
        graph={
            "vertices": vertices,
            "edges": [list(e) for e in sorted(graph.edges)],
            "geodesic": list(graph.geodesic),
            "branch_vertex": graph.delta(),
        },
        invariants=invariants,
        series=series,
        verification=verification,
    )


def render_text(report):
    lines = []
    lines.append("case: %s" % report.case)
    lines.append("mode: %s" % report.mode)
    if report.n is not None:
        lines.append("n: %d (the valuation is n times the divisorial "
                     "valuation at the marked component)" % report.n)
    lines.append("vertices:")
    for row in report.graph["vertices"]:
        lines.append("  %(id)d: %(kind)s  self_int=%(self_int)d  "
                     "[K:Q]=%(field_dim)d  m=%(m)d  M=%(M)d" % row)
    edges = ", ".join("%d-%d" % (a, b) for a, b in report.graph["edges"])
    lines.append("edges: %s" % (edges if edges else "none"))
    lines.append("branch meets vertex %d" % report.graph["branch_vertex"])
    inv = report.invariants
    lines.append("invariants:")
    for key in ("m_sigma", "M_sigma", "M_tau", "e", "N"):
        lines.append("  %s = %s" % (key, inv[key]))
    lines.append("  splitting = %s" % (inv["splitting"],))
    lines.append("  ell_total = %d  c = %d  Delta = %d  M_delta = %s"
                 % (inv["ell_total"], inv["c"], inv["Delta"],
                    inv["M_delta"]))
    series = report.series
    partial_note = "  (partial product)" if series["partial"] else ""
    lines.append("series: %s%s" % (series["formula"], partial_note))
    lines.append("factors: %s" % json.dumps(series["factors"]))
    lines.append("expansion (v = 0..%d): %s"
                 % (series["truncate"],
                    " ".join(str(a) for a in series["expansion"])))
    if report.verification is not None:
        lines.append(render_verification(report.verification))
    return "\n".join(lines)


def render_dot(report):
    """DOT text: geodesic vertices first, then the dead-end chains, plus an
    arrowhead marker for the branch."""
    rows = {row["id"]: row for row in report.graph["vertices"]}
    geodesic = report.graph["geodesic"]
    order = list(geodesic) + [i for i in sorted(rows) if i not in geodesic]
    lines = ["digraph quotient_graph {"]
    lines.append("  edge [dir=none];")
    for vid in order:
        row = rows[vid]
        label = "%s | m=%d M=%d [K:Q]=%d" % (row["kind"], row["m"],
                                             row["M"], row["field_dim"])
        lines.append("  v%d [label=\"%s\", self_int=%d];"
                     % (vid, label, row["self_int"]))
    lines.append("  branch [shape=none, label=\"branch\"];")
    for a, b in report.graph["edges"]:
        lines.append("  v%d -> v%d;" % (a, b))
    lines.append("  v%d -> branch [dir=forward, arrowhead=normal];"
                 % report.graph["branch_vertex"])
    lines.append("}")
    return "\n".join(lines)


# --- verification ------------------------------------------------------------------

def run_verification(analysis, max_order):
    """Differential test of the series against the brute-force oracle.

    Compares the expansion of the mode's series with the oracle's filtration
    dimensions for v <= max_order and reports the first disagreeing level,
    if any. Concrete curve branches and divisorial targets (including the
    reduced graph of a generic family) can be verified; partial splitting
    streams have no complete formula to compare, and a curve-mode generic
    marker should be verified through its divisorial reduction.
    """
    doc = analysis.doc
    if doc.mode == "case2":
        raise ValueError("cannot verify a partial splitting stream: the "
                         "series is a truncation by construction")
    expected = expand(analysis.series, max_order).coeffs
    if doc.mode == "divisorial":
        gc = generic_curvette(analysis.graph, analysis.recs)
        observed = divisorial_filtration_dims(gc, max_order).dims
    elif analysis.graph.case == "III":
        raise ValueError("cannot verify a generic-marker branch; verify the "
                         "divisorial target of its reduced family instead")
    else:
        observed = filtration_dims(analysis.branch, max_order).dims
    first_mismatch = None
    for v, (want, got) in enumerate(zip(expected, observed)):
        if want != got:
            first_mismatch = {"v": v, "series": want, "oracle": got}
            break
    return {
        "max_order": max_order,
        "oracle_dims": list(observed),
        "series_dims": list(expected),
        "match": first_mismatch is None,
        "first_mismatch": first_mismatch,
    }


def render_verification(block):
    lines = ["verification (max_order=%d):" % block["max_order"]]
    lines.append("  oracle: %s"
                 % " ".join(str(a) for a in block["oracle_dims"]))
    lines.append("  series: %s"
                 % " ".join(str(a) for a in block["series_dims"]))
    if block["match"]:
        lines.append("  match: yes")
    else:
        miss = block["first_mismatch"]
        lines.append("  match: no")
        lines.append("  first mismatch at v=%d: oracle=%d series=%d"
                     % (miss["v"], miss["oracle"], miss["series"]))
    return "\n".join(lines)


# --- command dispatch ----------------------------------------------------------------

def cmd_analyze(path, truncate=None):
    analysis = build_analysis(load_input(path))
    report = build_report(analysis, _pick_truncate(analysis, truncate))
    print(render_text(report))
    return 0


def cmd_report(path, truncate=None):
    analysis = build_analysis(load_input(path))
    report = build_report(analysis, _pick_truncate(analysis, truncate))
    print(json.dumps(report.to_dict(), sort_keys=True, indent=2))
    return 0


def cmd_graph(path):
    analysis = build_analysis(load_input(path))
    report = build_report(analysis, _pick_truncate(analysis, None))
    print(render_dot(report))
    return 0


def cmd_verify(path, max_order=30):
    if max_order < 0:
        raise ParseFailure("--max-order must be >= 0")
    analysis = build_analysis(load_input(path))
    block = run_verification(analysis, max_order)
    print(render_verification(block))
    if not block["match"]:
        raise FormulaMismatch(
            "series and oracle disagree first at v=%d"
            % block["first_mismatch"]["v"])
    return 0


def build_arg_parser():
    parser = argparse.ArgumentParser(
        prog="artifact",
        description="Exact invariants and series of plane branch "
                    "singularities over number fields.")
    sub = parser.add_subparsers(dest="command", required=True)
    analyze = sub.add_parser("analyze", help="human-readable report")
    analyze.add_argument("path")
    analyze.add_argument("--truncate", type=int, default=None,
                         help="expansion length (default: Delta + 10 for "
                              "complete formulas, else 40)")
    verify = sub.add_parser("verify", help="differential oracle check")
    verify.add_argument("path")
    verify.add_argument("--max-order", type=int, default=30,
                        dest="max_order")
    graph = sub.add_parser("graph", help="quotient graph as DOT")
    graph.add_argument("path")
    graph.add_argument("--dot", action="store_true", required=True)
    report = sub.add_parser("report", help="JSON report, stable key order")
    report.add_argument("path")
    report.add_argument("--json", action="store_true", required=True,
                        dest="as_json")
    report.add_argument("--truncate", type=int, default=None)
    return parser


def main(argv=None):
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "analyze":
            return cmd_analyze(args.path, args.truncate)
        if args.command == "report":
            return cmd_report(args.path, args.truncate)
        if args.command == "graph":
            return cmd_graph(args.path)
        return cmd_verify(args.path, args.max_order)
    except ParseFailure as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return 2
    except FormulaMismatch:
        return 4
    except (ArtifactError, ValueError) as exc:
        print("validation error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
