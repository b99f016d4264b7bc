"""Resolution of parametrized plane branches by iterated point blow-ups.

A branch is given by an exact parametrization x = x_coeff * tau^m,
y = sum of c_e * tau^e over a declared number field. The resolver replays the
blow-up process on exact rational-function states, tracking for every
infinitely near point its chart, its coordinate on the new exceptional
component, the subfield generated by all coordinates seen so far, and the
components through which the strict transform passes. The process deliberately
continues past the point where the curve itself is resolved: it stops only
once no future center can enlarge the coordinate subfield, so the quotient
graph it emits already accounts for conjugate branches without materializing
them.

Coordinates that do not lie in the ambient field are admitted through a
single GENERIC marker; the resolver then works over rational functions in a
transcendental parameter and truncates the run at the first parameter-
dependent center, which is the divisorial reduction of such a family.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg
from .errors import (
    BadConstant,
    DivisionByZero,
    GenericCenter,
    NotARoot,
    NotIrreducibleParam,
    ResolutionStuck,
    UnrepresentableCurvette,
)
from .exactfield import AlgNum, Subfield, rel_degree, span_close
from .ratfunc import INFINITY, FractionField, Poly, PolyRing, RatFunc


class _Sentinel:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


GENERIC = _Sentinel("GENERIC")
AT_INFINITY = _Sentinel("AT_INFINITY")

# A multiplicity sequence is a plain list of non-negative ints, one entry per
# reference record, zero from the first divergence on.
MultiplicitySequence = list


class BranchParam:
    """Parametrization x = x_coeff * tau^m, y = sum of coeff * tau^exp.

    y coefficients live in the ambient field or are the GENERIC marker
    (at most one). x_coeff is an exact scalar, 1 for ordinary input; it
    exists so that blow-downs of constant sections can be returned exactly,
    and x_coeff = 0 encodes carriers inside the y-axis such as (0, tau).
    """

    __slots__ = ("ambient", "x_order", "y_terms", "x_coeff")

    def __init__(self, ambient, x_order, y_terms, x_coeff=None):
        if x_order < 1:
            raise ValueError("x order must be positive")
        terms = []
        for exp, coeff in y_terms:
            if exp < 1:
                raise ValueError("y exponents must be positive")
            if coeff is GENERIC:
                terms.append((exp, GENERIC))
                continue
            if isinstance(coeff, (int, Fraction)):
                coeff = ambient.from_fraction(coeff)
            if coeff.field != ambient:
                raise ValueError("y coefficient outside the ambient field")
            if coeff:
                terms.append((exp, coeff))
        terms.sort(key=lambda t: t[0])
        for a, b in zip(terms, terms[1:]):
            if a[0] == b[0]:
                raise ValueError("duplicate y exponent %d" % a[0])
        if sum(1 for _, c in terms if c is GENERIC) > 1:
            raise ValueError("at most one generic coefficient is supported")
        if x_coeff is None:
            x_coeff = ambient.one()
        elif isinstance(x_coeff, (int, Fraction)):
            x_coeff = ambient.from_fraction(x_coeff)
        if not x_coeff and not terms:
            raise ValueError("parametrization is identically zero")
        self.ambient = ambient
        self.x_order = x_order
        self.y_terms = tuple(terms)
        self.x_coeff = x_coeff

    @property
    def has_generic(self):
        return any(c is GENERIC for _, c in self.y_terms)

    def __eq__(self, other):
        return (isinstance(other, BranchParam) and self.ambient == other.ambient
                and self.x_order == other.x_order
                and self.y_terms == other.y_terms
                and self.x_coeff == other.x_coeff)

    def __repr__(self):
        return "BranchParam(x=%r*tau^%d, y=%r)" % (
            self.x_coeff, self.x_order, list(self.y_terms))


def normalize(p):
    """Reorder so that ord x <= ord y and check the exponent gcd.

    The role swap is performed only when y is a single monic term (then the
    swap is exact); other shapes would need root extractions outside the
    ambient field and are rejected.
    """
    if p.y_terms and (not p.x_coeff or p.y_terms[0][0] < p.x_order):
        exp, coeff = p.y_terms[0]
        if len(p.y_terms) != 1 or coeff is GENERIC or coeff != 1:
            raise ValueError(
                "cannot exactly swap coordinates: y must be a single monic "
                "term to take the x role")
        p = BranchParam(p.ambient, exp, [(p.x_order, p.x_coeff)])
    g = p.x_order
    for exp, _ in p.y_terms:
        g = gcd(g, exp)
    if g != 1:
        raise NotIrreducibleParam(
            "gcd of tau exponents is %d; the parametrization traverses the "
            "branch %d times" % (g, g))
    return p


def series_order(s):
    """Least tau exponent with a nonzero coefficient; INFINITY for zero.

    Arithmetic is exact, so INFINITY certifies literal vanishing.
    """
    if isinstance(s, (Poly, RatFunc)):
        return s.order()
    raise TypeError("expected a polynomial or rational function in tau")


# --- scalar strategies: plain number field vs one transcendental parameter


class _PlainScalars:
    """States carry coefficients directly in the ambient field."""

    def __init__(self, ambient):
        self.ambient = ambient
        self.ring = ambient

    def lift(self, coeff):
        if coeff is GENERIC:
            raise GenericCenter("generic coefficient in a concrete run")
        return coeff

    def is_generic(self, scalar):
        return False

    def as_algnum(self, scalar):
        return scalar

    def in_field(self, scalar, sub):
        return sub.contains_num(scalar)


class _OneParamScalars:
    """States carry rational functions in one transcendental parameter."""

    def __init__(self, ambient):
        self.ambient = ambient
        self.ring = FractionField(PolyRing(ambient, "lam"))

    def lift(self, coeff):
        if coeff is GENERIC:
            return self.ring.gen()
        return self.ring.from_scalar(coeff)

    def is_generic(self, scalar):
        return scalar.num.degree() > 0 or scalar.den.degree() > 0

    def as_algnum(self, scalar):
        return scalar.num.coeff(0) / scalar.den.coeff(0)

    def in_field(self, scalar, sub):
        if self.is_generic(scalar):
            return False
        return sub.contains_num(self.as_algnum(scalar))


def _strategy_for(p):
    return _OneParamScalars(p.ambient) if p.has_generic else _PlainScalars(p.ambient)


def _initial_state(p, strat):
    ring = strat.ring
    u = RatFunc.of(Poly.monomial(ring, strat.lift(p.x_coeff), p.x_order))
    if p.y_terms:
        coeffs = [ring.zero()] * (p.y_terms[-1][0] + 1)
        for exp, coeff in p.y_terms:
            coeffs[exp] = strat.lift(coeff)
        w = RatFunc.of(Poly(ring, coeffs))
    else:
        w = RatFunc.of(Poly(ring, []))
    return u, w


def _chart_step(u, w):
    """One blow-up, chosen so the strict transform stays at finite distance.

    Returns (chart, u2, w2) with the new exceptional set {u2 = 0} and w2 not
    yet translated; in chart B the landing coordinate is always 0.
    """
    if u.order() <= w.order():
        return "A", u, w / u
    return "B", w, u / w


def _tail_ok(u, w, sub, strat):
    """True when no future center can leave sub.

    w == 0 is immediate (every later center is 0). Otherwise rescale tau so
    the lowest coefficient of u becomes 1 (centers are invariant under this)
    and demand that every coefficient of the canonical fraction forms of u
    and w lies in sub: those coefficients generate the field of the whole
    remaining expansion.
    """
    if not w:
        return True
    d = u.num.low_coeff() / u.den.low_coeff()
    inv = strat.ring.one() / d
    for poly in (u.num, u.den, w.num, w.den):
        for c in poly.scale_arg(inv).coeffs:
            if c and not strat.in_field(c, sub):
                return False
    return True


@dataclass(frozen=True)
class InfNearRecord:
    """One blown-up infinitely near point of the branch.

    chart and shift describe the blow-up that CREATED this point's component:
    which standard chart the strict transform landed in and the translation
    applied there (0 for chart B, None for the seed point).
    """

    step: int
    center: object          # AlgNum | AT_INFINITY | None (seed point)
    branch_mult: int
    field_after: Subfield
    host_components: tuple
    chart: object = None    # "A" | "B" | None
    shift: object = None    # AlgNum | None


@dataclass(frozen=True)
class TerminalData:
    """Landing data of the first point that is not blown up."""

    chart: object
    shift: object           # AlgNum | GENERIC
    mult: object            # int | None (generic stop)
    field: object
    center: object


@dataclass(frozen=True)
class Vertex:
    id: int
    tags: frozenset
    self_int: int
    field_dim: int


class QuotientGraph:
    """Quotient dual graph of the run: a tree of exceptional components.

    Vertex tags are sets of tuples: ("INITIAL",), ("DEAD_END", i),
    ("RUPTURE", i), ("SPLITTING", j), ("DELTA",), ("PLAIN",); several tags can
    sit on one vertex. splittings lists (vertex id, field degree) in creation
    order. For a run stopped at a parameter-dependent center, case is "III"
    and n_case3 is the contact order of the family with the last component.
    """

    def __init__(self, vertices, edges, geodesic, case, n_case3, splittings,
                 terminal, branch, ambient, fields):
        self.vertices = tuple(vertices)
        self.edges = frozenset(tuple(sorted(e)) for e in edges)
        self.geodesic = tuple(geodesic)
        self.case = case
        self.n_case3 = n_case3
        self.splittings = tuple(splittings)
        self.terminal = terminal
        self.branch = branch
        self.ambient = ambient
        self.fields = tuple(fields)

    def neighbors(self):
        adj = {v.id: [] for v in self.vertices}
        for a, b in sorted(self.edges):
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def tags_of(self, vid):
        return self.vertices[vid].tags

    def delta(self):
        return len(self.vertices) - 1

    def dead_end_leaves(self):
        """Vertex ids sigma_0..sigma_g ordered by dead-end index."""
        found = {}
        for v in self.vertices:
            for tag in v.tags:
                if tag[0] == "DEAD_END":
                    found[tag[1]] = v.id
        return [found[i] for i in sorted(found)]

    def ruptures(self):
        """Vertex ids tau_1..tau_g ordered by rupture index."""
        found = {}
        for v in self.vertices:
            for tag in v.tags:
                if tag[0] == "RUPTURE":
                    found[tag[1]] = v.id
        return [found[i] for i in sorted(found)]

    def __repr__(self):
        return "QuotientGraph(%d vertices, case %s)" % (
            len(self.vertices), self.case)


def _geodesic_path(n_vertices, edges, start, goal):
    adj = {i: [] for i in range(n_vertices)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    parent = {start: None}
    queue = [start]
    while queue:
        cur = queue.pop(0)
        if cur == goal:
            break
        for nb in sorted(adj[cur]):
            if nb not in parent:
                parent[nb] = cur
                queue.append(nb)
    path = [goal]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return list(reversed(path)), adj


def _assign_tags(n, edges, splittings):
    """Tag sets per vertex, derived from the finished tree shape."""
    tags = [set() for _ in range(n)]
    for j, (vid, _ell) in enumerate(splittings, start=1):
        tags[vid].add(("SPLITTING", j))
    geodesic, adj = _geodesic_path(n, edges, 0, n - 1)
    geo_set = set(geodesic)
    chains = []
    for gv in geodesic:
        for nb in adj[gv]:
            if nb in geo_set:
                continue
            walk = []
            prev, cur = gv, nb
            while True:
                walk.append(cur)
                nxt = [x for x in adj[cur] if x != prev]
                if not nxt:
                    break
                assert len(nxt) == 1, "side branch is not a chain"
                prev, cur = cur, nxt[0]
            chains.append((gv, walk))
    attach_points = [gv for gv, _ in chains]
    assert len(attach_points) == len(set(attach_points)), \
        "several dead-end chains at one vertex"
    chains.sort(key=lambda c: geodesic.index(c[0]))
    for i, (gv, walk) in enumerate(chains, start=1):
        tags[gv].add(("RUPTURE", i))
        tags[walk[-1]].add(("DEAD_END", i))
    tags[0].add(("INITIAL",))
    tags[0].add(("DEAD_END", 0))
    tags[n - 1].add(("DELTA",))
    for t in tags:
        if not t:
            t.add(("PLAIN",))
    return tags, geodesic


def _default_cap(p, extra_steps):
    top = p.y_terms[-1][0] if p.y_terms else p.x_order
    return 50 + 10 * (p.x_order + top + p.ambient.degree) + extra_steps


def resolve(p, extra_steps=0, max_steps=None):
    """Run the blow-up process to its field-aware end.

    Returns (QuotientGraph, records). Records list exactly the blown-up
    points; the landing data of the final, never-blown point sits on
    graph.terminal. A splitting index j is attached to the component hosting
    the first center outside the current subfield, and the subfield tower is
    extended there. extra_steps > 0 prolongs the run by that many further
    blow-ups at the strict transform's intersection point (divisorial
    targets past the last needed component).

    With a GENERIC coefficient the run stops at the first parameter-dependent
    center: graph.case == "III", graph.n_case3 is the contact order of the
    family with the final component, and no terminal translation exists.
    """
    p = normalize(p)
    strat = _strategy_for(p)
    if max_steps is None:
        max_steps = _default_cap(p, extra_steps)
    u, w = _initial_state(p, strat)
    ambient = p.ambient
    sub = Subfield.rationals(ambient)

    records = []
    selfints = []
    edges = set()
    fields = []
    splittings = []
    labels = (None, None)
    mult0 = min(u.order(), w.order())
    pending = InfNearRecord(step=0, center=None, branch_mult=int(mult0),
                            field_after=sub, host_components=())
    jumped = False
    extra_left = extra_steps
    case3_n = None
    terminal = None

    for _ in range(max_steps):
        i = len(records)
        if i >= 1 and not jumped and len(pending.host_components) == 1 \
                and u.order() == 1 and _tail_ok(u, w, sub, strat):
            if extra_left == 0:
                terminal = TerminalData(chart=pending.chart,
                                        shift=pending.shift,
                                        mult=pending.branch_mult,
                                        field=pending.field_after,
                                        center=pending.center)
                break
            extra_left -= 1
        records.append(pending)
        new_id = i
        selfints.append(-1)
        fields.append(pending.field_after)
        hosts = pending.host_components
        for h in hosts:
            selfints[h] -= 1
            edges.add(tuple(sorted((h, new_id))))
        if len(hosts) == 2:
            edges.discard(tuple(sorted(hosts)))
        chart, u, w = _chart_step(u, w)
        c_scal = w.value0()
        if strat.is_generic(c_scal):
            case3_n = int(u.order())
            terminal = TerminalData(chart=chart, shift=GENERIC, mult=None,
                                    field=sub, center=GENERIC)
            break
        jumped = False
        if chart == "A":
            center = strat.as_algnum(c_scal)
            if not strat.in_field(c_scal, sub):
                grown = span_close([center], sub)
                splittings.append((new_id, rel_degree(sub, grown)))
                sub = grown
                jumped = True
            if c_scal:
                w = w - c_scal
            second = labels[1] if not center else None
            shift = center
        else:
            center = AT_INFINITY
            second = labels[0]
            shift = ambient.zero()
        labels = (new_id, second)
        hosts_next = (new_id,) if second is None else (new_id, second)
        mult = min(u.order(), w.order())
        pending = InfNearRecord(step=i + 1, center=center,
                                branch_mult=int(mult), field_after=sub,
                                host_components=hosts_next, chart=chart,
                                shift=shift)
    else:
        raise ResolutionStuck(
            "no stable point within %d blow-ups" % max_steps)

    n = len(selfints)
    tags, geodesic = _assign_tags(n, edges, splittings)
    vertices = [Vertex(id=k, tags=frozenset(tags[k]), self_int=selfints[k],
                       field_dim=fields[k].dim) for k in range(n)]
    case = "III" if case3_n is not None else "I"
    graph = QuotientGraph(vertices, edges, geodesic, case, case3_n,
                          splittings, terminal, p, ambient, fields)
    return graph, records


def case_III_reduce(p):
    """Resolve a GENERIC-bearing branch up to the parameter-dependent center.

    Returns (reduced graph, contact order n): the family's valuation is n
    times the divisorial valuation of the last component of that graph.
    """
    if not p.has_generic:
        raise ValueError("no generic coefficient to reduce")
    graph, _records = resolve(p)
    return graph, graph.n_case3


def blow_up_once(p):
    """One blow-up of the origin, as parametrization data.

    Returns (center, next, mult): the coordinate of the blown-up point on the
    new component (AT_INFINITY for a landing in the second chart), the
    translated strict transform, and the multiplicity at the blown point.
    Raises GenericCenter when the center depends on a GENERIC coefficient and
    UnrepresentableCurvette when the strict transform's x part is not an
    exact monomial.
    """
    strat = _strategy_for(p)
    u, w = _initial_state(p, strat)
    mult = int(min(u.order(), w.order()))
    chart, u2, w2 = _chart_step(u, w)
    c_scal = w2.value0()
    if strat.is_generic(c_scal):
        raise GenericCenter("blown-up center carries the generic coefficient")
    if chart == "A":
        center = strat.as_algnum(c_scal)
        if c_scal:
            w2 = w2 - c_scal
    else:
        center = AT_INFINITY
    return center, _state_to_param(u2, w2, p.ambient, strat), mult


def _state_to_param(u, w, ambient, strat):
    if u.den.degree() != 0 or w.den.degree() != 0:
        raise UnrepresentableCurvette(
            "strict transform is not polynomial in tau")
    lam = strat.ring.gen() if isinstance(strat, _OneParamScalars) else None

    def down(scalar):
        if strat.is_generic(scalar):
            if lam is not None and scalar == lam:
                return GENERIC
            raise UnrepresentableCurvette(
                "coefficient mixes the generic marker with field elements")
        return strat.as_algnum(scalar)

    xpoly = u.num
    if sum(1 for c in xpoly.coeffs if c) != 1:
        raise UnrepresentableCurvette(
            "x part %r is not an exact monomial" % (xpoly,))
    x_order = xpoly.order()
    x_coeff = down(xpoly.coeff(x_order))
    terms = [(e, down(c)) for e, c in enumerate(w.num.coeffs) if c]
    return BranchParam(ambient, x_order, terms, x_coeff=x_coeff)


# --- curvettes: blow-downs of constant sections


def _landing_info(graph, recs, sigma):
    """(chart, shift or None, landing center) of the branch on component
    sigma; shift None means the raw chart is used (landing outside
    K_sigma)."""
    r = len(recs)
    if sigma + 1 < r:
        rec = recs[sigma + 1]
        chart, shift, center = rec.chart, rec.shift, rec.center
    else:
        t = graph.terminal
        chart, shift, center = t.chart, t.shift, t.center
    sub = graph.fields[sigma]
    if shift is GENERIC or not sub.contains_num(shift):
        return chart, None, center
    return chart, shift, center


def _down_steps(graph, recs, sigma, top_shift):
    """(chart, shift) per blow-down level, topmost first; top_shift replaces
    the recorded translation at the component's own level (None = raw)."""
    r = len(recs)
    steps = []
    for k in range(sigma + 1, 0, -1):
        if k == sigma + 1:
            chart = recs[k].chart if k < r else graph.terminal.chart
            steps.append((chart, top_shift))
        else:
            steps.append((recs[k].chart, recs[k].shift))
    return steps


def _blow_down(steps, a, b, lift):
    """Undo the recorded blow-ups on a polynomial state; lift embeds the
    recorded translation constants into the state's coefficient scalars."""
    ring = a.ring
    for chart, shift in steps:
        bb = b
        if shift is not None and shift:
            bb = b + Poly(ring, [lift(shift)])
        if chart == "A":
            a, b = a, a * bb
        else:
            a, b = a * bb, a
    return a, b


def _curvette_state(graph, recs, sigma, constant):
    """Exact polynomial state (x(tau), y(tau)) of the section {w = constant}
    in the chart of component sigma, blown down to the base coordinates."""
    _chart, shift, _center = _landing_info(graph, recs, sigma)
    steps = _down_steps(graph, recs, sigma, shift)
    ambient = graph.ambient
    a = Poly.monomial(ambient, ambient.one(), 1)
    b = Poly(ambient, [constant])
    return _blow_down(steps, a, b, lambda s: s)


def _auto_constant(graph, recs, sigma):
    """Smallest positive integer avoiding the special points on sigma."""
    chart, shift, center = _landing_info(graph, recs, sigma)
    c = 1
    while True:
        ok = True
        eff = graph.ambient.from_fraction(c)
        if shift is not None and shift:
            eff = eff + shift
        if isinstance(center, AlgNum) and eff == center:
            ok = False
        if sigma >= 1 and not eff:
            ok = False
        if ok:
            return graph.ambient.from_fraction(c)
        c += 1


def curvette_param(graph, recs, sigma, c):
    """Parametrization of the transversal curve {w = c} at component sigma,
    blown down to the base coordinates.

    c must lie in the subfield attached to sigma and avoid the branch's
    landing point and the corner with the older components. The constant is
    read in the coordinate translated to the branch's landing point whenever
    that point's coordinate lies in the subfield (then c = 0 is the branch
    itself); otherwise in the raw chart, which keeps all blow-down
    coefficients inside the subfield.
    """
    ambient = graph.ambient
    if isinstance(c, (int, Fraction)):
        c = ambient.from_fraction(c)
    sub = graph.fields[sigma]
    if not sub.contains_num(c):
        raise BadConstant("constant %r outside the component's subfield" % (c,))
    _chart, shift, center = _landing_info(graph, recs, sigma)
    eff = c + shift if (shift is not None and shift) else c
    if shift is not None and isinstance(center, AlgNum) and eff == center:
        raise BadConstant("constant hits the branch's landing point")
    if sigma >= 1 and not eff:
        raise BadConstant("constant hits the corner with an older component")
    x, y = _curvette_state(graph, recs, sigma, c)
    return _poly_state_to_param(x, y, ambient)


def _poly_state_to_param(x, y, ambient):
    if sum(1 for c in x.coeffs if c) != 1:
        raise UnrepresentableCurvette(
            "x part %r needs a root extraction to present as a "
            "parametrization" % (x,))
    x_order = x.order()
    terms = [(e, c) for e, c in enumerate(y.coeffs) if c]
    return BranchParam(ambient, x_order, terms, x_coeff=x.coeff(x_order))


class GenericCurvette:
    """Transversal section at a component with an indeterminate constant.

    x and y are polynomials in tau whose coefficients are polynomials in the
    constant; substituting any concrete admissible value specializes it.
    """

    __slots__ = ("x", "y", "ring", "ambient", "component")

    def __init__(self, x, y, ring, ambient, component):
        self.x = x
        self.y = y
        self.ring = ring
        self.ambient = ambient
        self.component = component


def generic_curvette(graph, recs, sigma=None):
    """Curvette at sigma (default: the last component) with the constant kept
    as an indeterminate, for exact divisorial value computations."""
    if sigma is None:
        sigma = graph.delta()
    cring = PolyRing(graph.ambient, "c")
    _chart, shift, _center = _landing_info(graph, recs, sigma)
    steps = _down_steps(graph, recs, sigma, shift)
    a = Poly.monomial(cring, cring.one(), 1)
    b = Poly(cring, [cring.gen()])
    x, y = _blow_down(steps, a, b, lambda s: Poly(graph.ambient, [s]))
    return GenericCurvette(x, y, cring, graph.ambient, sigma)


# --- multiplicity sequences and intersection numbers by joint replay


def _replay_step(u, w, chart, shift_scalar):
    """Transform a state through a recorded blow-up; returns the new state or
    None when the carrier does not pass through the recorded point."""
    if chart == "A":
        if not u:
            return None
        w2 = w / u
        try:
            val = w2.value0()
        except DivisionByZero:
            return None
        if shift_scalar is not None and val != shift_scalar:
            return None
        if val:
            w2 = w2 - val
        return u, w2
    if not w:
        return None
    u2, w2 = w, u / w
    if u2.order() < 1 or w2.order() < 1:
        return None
    return u2, w2


def _strict_mults_state(u, w, recs, strat):
    out = [int(min(u.order(), w.order()))]
    for rec in recs[1:]:
        shift = None
        if rec.chart == "A":
            shift = strat.lift(rec.shift)
        nxt = _replay_step(u, w, rec.chart, shift)
        if nxt is None:
            out.extend([0] * (len(recs) - len(out)))
            break
        u, w = nxt
        out.append(int(min(u.order(), w.order())))
    return out


def strict_mults(carrier, reference):
    """Multiplicities of the carrier's strict transforms at the reference
    branch's blown-up points; 0 from the first point not shared on.

    The carrier is replayed exactly as given (no coordinate swap), so axes
    such as (tau, 0) and (0, tau) keep their geometric meaning relative to
    the reference.
    """
    strat = _PlainScalars(carrier.ambient)
    u, w = _initial_state(carrier, strat)
    return _strict_mults_state(u, w, reference, strat)


def _intersect_states(ua, wa, ub, wb, bound):
    """Joint replay along the first state's own blow-up chain; returns the
    accumulated product sum, or INFINITY once it exceeds bound."""
    total = 0
    while True:
        ma = min(ua.order(), wa.order())
        mb = min(ub.order(), wb.order())
        total += int(ma) * int(mb)
        if total > bound:
            return INFINITY
        if ua.order() <= wa.order():
            chart = "A"
            wa2 = wa / ua
            ca = wa2.value0()
            ua2 = ua
            if ca:
                wa2 = wa2 - ca
        else:
            chart = "B"
            ua2, wa2 = wa, ua / wa
            ca = None
        nxt = _replay_step(ub, wb, chart, ca)
        if nxt is None:
            return total
        ua, wa = ua2, wa2
        ub, wb = nxt


def intersect_noether(a, b):
    """Intersection number of two branches as the sum over shared infinitely
    near points of the multiplicity products; INFINITY when they are the
    same branch (certified by exceeding the degree bound of two distinct
    local curves). Both arguments are taken literally, without coordinate
    swaps."""
    if a.has_generic or b.has_generic:
        raise ValueError("intersection of generic-marker branches is not "
                         "defined here")
    if a.ambient != b.ambient:
        raise ValueError("branches live over different ambient fields")
    na = a.y_terms[-1][0] if a.y_terms else a.x_order
    nb = b.y_terms[-1][0] if b.y_terms else b.x_order
    bound = (a.x_order + na) * (b.x_order + nb)
    strat = _PlainScalars(a.ambient)
    ua, wa = _initial_state(a, strat)
    ub, wb = _initial_state(b, strat)
    return _intersect_states(ua, wa, ub, wb, bound)


def m_values(graph, recs):
    """Value of the branch's valuation on a transversal curve at each
    component, computed by joint replay against exact curvette states."""
    strat = _strategy_for(graph.branch)
    branch = graph.branch
    out = {}
    for v in graph.vertices:
        sigma = v.id
        const = _auto_constant(graph, recs, sigma)
        x, y = _curvette_state(graph, recs, sigma, const)
        if isinstance(strat, _OneParamScalars):
            x = x.map_coeffs(strat.lift, strat.ring)
            y = y.map_coeffs(strat.lift, strat.ring)
        ua, wa = _initial_state(branch, strat)
        val = _intersect_states(ua, wa, RatFunc.of(x), RatFunc.of(y),
                                bound=10 ** 9)
        assert val is not INFINITY, "curvette coincides with the branch"
        out[sigma] = val
    return out


def intersection_matrix(graph):
    """Integer matrix of component self-intersections and adjacencies."""
    n = len(graph.vertices)
    mat = [[0] * n for _ in range(n)]
    for v in graph.vertices:
        mat[v.id][v.id] = v.self_int
    for a, b in graph.edges:
        mat[a][b] = 1
        mat[b][a] = 1
    return mat


def minus_inverse(mat):
    """Negated exact inverse of the intersection matrix; its delta column
    reproduces the branch values on transversal curves."""
    inv = linalg.invert(mat)
    return [[-x for x in row] for row in inv]


def conjugate_param(p, root_image):
    """Apply the coefficient map sending the field generator to another root
    of the defining polynomial."""
    ambient = p.ambient
    acc = ambient.zero()
    for coeff in reversed(ambient.min_poly):
        acc = acc * root_image + ambient.from_fraction(coeff)
    if acc:
        raise NotARoot("%r is not a root of the defining polynomial"
                       % (root_image,))

    def mapped(c):
        if c is GENERIC:
            return c
        return c.evaluate(root_image)

    return BranchParam(ambient, p.x_order,
                       [(e, mapped(c)) for e, c in p.y_terms],
                       x_coeff=mapped(p.x_coeff))


def proximity_check(recs, terminal):
    """Each point's multiplicity equals the sum of the multiplicities at the
    points lying on the component it creates (the final one contributed by
    the terminal landing)."""
    r = len(recs)
    for i in range(r):
        total = sum(rec.branch_mult for rec in recs[i + 1:]
                    if i in rec.host_components)
        if i == r - 1:
            total += terminal.mult
        if recs[i].branch_mult != total:
            return False
    return True
