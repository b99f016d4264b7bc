"""Numerical invariants and exact generating series of a resolved branch.

A resolved branch hands over its quotient graph and blow-up records; this
module extracts the numbers that drive the generating series:

* m: value of the valuation on a transversal curve at each component,
* M: the same value summed over the Galois orbit of the component,
* the gcd tower e_i with quotients N_i read off the dead-end values,
* one (M_rho, ell) pair per field jump.

From these it assembles three series as exact products of binomials
(1 - t^a)^s: the characteristic series of the rational semigroup of values,
the dimension series of the valuation filtration on the local ring, and the
analogue for the divisorial valuation of the last component. Expansion,
binomial refactorization, conductor bounds and the symmetry test are all
exact integer computations.
"""

from dataclasses import dataclass, replace
from math import gcd

from .errors import (BadSemigroupData, IndexOutOfRange, MissingDelta,
                     TruncationInconclusive, TruncationTooShort)
from .ratfunc import RatFunc
from . import resolution as _res


# --- numerical data ---------------------------------------------------------

def char_invariants(m_sigma):
    """gcd tower e_0..e_g and quotients N_1..N_g of a generator list.

    e_i is the gcd of the first i + 1 entries; N_i = e_{i-1} / e_i. The list
    must be strictly gcd-refining (every later entry drops the gcd, as the
    dead-end values of a resolved branch always do) and end at gcd 1.
    """
    seq = [int(x) for x in m_sigma]
    if not seq or any(x < 1 for x in seq):
        raise BadSemigroupData("generators must be positive integers")
    e = []
    running = 0
    for x in seq:
        running = gcd(running, x)
        e.append(running)
    if e[-1] != 1:
        raise BadSemigroupData(
            "gcd of all generators is %d, not 1" % e[-1])
    N = []
    for prev, cur in zip(e, e[1:]):
        if prev == cur:
            raise BadSemigroupData(
                "generator list is not strictly gcd-refining at gcd %d"
                % cur)
        N.append(prev // cur)
    return tuple(e), tuple(N)


def big_M(graph, recs, m_map, tower):
    """Galois-orbit value sums M per component, from representative values m.

    tower lists (vertex id, degree) for the components hosting the field
    jumps, in creation order (graph.splittings). A component sitting above j
    jump points has an orbit of ell_1 * .. * ell_j conjugates of its
    transversal curve; a conjugate that parts ways at jump j shares only the
    blown-up points up to the jump with the branch, so its value is the
    Noether sum over that shared chain. Grouping the conjugates by the first
    jump where the chains part ways turns the orbit sum into

        M = m + sum over jumps j below the component of
                (ell_j - 1) * (product of ell_q for later jumps below)
                            * sum(mult of branch * mult of transversal curve
                                  at each blown-up point up to rho_j)

    and the shared-chain sums vanish for jumps the component does not sit
    above, so only those actually below it contribute.
    """
    if not tower:
        return {v.id: int(m_map[v.id]) for v in graph.vertices}
    strat = _res._PlainScalars(graph.ambient)
    branch_mults = [rec.branch_mult for rec in recs]
    out = {}
    for v in graph.vertices:
        w_id = v.id
        below = [(rho, ell) for rho, ell in tower if rho < w_id]
        total = int(m_map[w_id])
        if below:
            const = _res._auto_constant(graph, recs, w_id)
            x, y = _res._curvette_state(graph, recs, w_id, const)
            mults = _res._strict_mults_state(
                RatFunc.of(x), RatFunc.of(y), recs, strat)
            for j, (rho, ell) in enumerate(below):
                later = 1
                for _rho_q, ell_q in below[j + 1:]:
                    later *= ell_q
                shared = sum(branch_mults[i] * mults[i]
                             for i in range(rho + 1))
                total += (ell - 1) * later * shared
        out[w_id] = total
    return out


def _conductor_pair(M_sigma, N, splitting):
    c = sum((n - 1) * M for n, M in zip(N, M_sigma[1:])) - M_sigma[0] + 1
    delta = c + sum((ell - 1) * M_rho for M_rho, ell in splitting)
    return c, delta


@dataclass(frozen=True)
class NumericalData:
    """Invariant bundle of one branch (or one divisorial target).

    m_sigma / M_sigma: representative and orbit-summed values at the dead
    ends sigma_0..sigma_g; M_tau: orbit sums at the rupture components
    tau_1..tau_g; e, N: gcd tower and quotients of M_sigma; splitting: one
    (M_rho, ell) pair per field jump, in creation order; M_delta: orbit sum
    at the last component (divisorial targets only); ell_total: product of
    the ell_j; Delta: c_conductor plus sum of (ell_j - 1) M_rho_j, the order
    from which the filtration dimensions stabilize at ell_total; partial:
    the splitting list is a finite prefix of an infinite one, so products
    built from it are truncations.
    """

    m_sigma: tuple
    M_sigma: tuple
    M_tau: tuple
    e: tuple
    N: tuple
    splitting: tuple
    ell_total: int
    Delta: int
    c_conductor: int
    M_delta: int = None
    partial: bool = False

    def __post_init__(self):
        g = len(self.M_tau)
        if len(self.m_sigma) != g + 1 or len(self.M_sigma) != g + 1:
            raise BadSemigroupData("dead-end and rupture counts disagree")
        if len(self.e) != g + 1 or len(self.N) != g:
            raise BadSemigroupData("gcd tower length disagrees")
        if any(x < 1 for x in self.m_sigma + self.M_sigma + self.M_tau):
            raise BadSemigroupData("values must be positive")
        if self.e[-1] != 1:
            raise BadSemigroupData("gcd tower does not end at 1")
        running = 0
        for i, M in enumerate(self.M_sigma):
            running = gcd(running, M)
            if running != self.e[i]:
                raise BadSemigroupData("gcd tower does not match M values")
        for i, n in enumerate(self.N):
            if n < 2:
                raise BadSemigroupData("tower quotient below 2")
            if self.M_tau[i] != n * self.M_sigma[i + 1]:
                raise BadSemigroupData(
                    "rupture value is not the quotient times the dead-end "
                    "value")
        ell = 1
        for M_rho, l_j in self.splitting:
            if M_rho < 1 or l_j < 2:
                raise BadSemigroupData("invalid splitting entry")
            ell *= l_j
        if ell != self.ell_total:
            raise BadSemigroupData("ell_total is not the product of the "
                                   "splitting degrees")
        c, delta = _conductor_pair(self.M_sigma, self.N, self.splitting)
        if c != self.c_conductor or delta != self.Delta:
            raise BadSemigroupData("conductor bounds disagree with the "
                                   "values")
        if self.Delta < 0:
            raise BadSemigroupData("stabilization order must not be "
                                   "negative")
        if self.M_delta is not None and self.M_delta < 1:
            raise BadSemigroupData("divisor value must be positive")

    @property
    def g(self):
        return len(self.M_tau)

    @property
    def s(self):
        return len(self.splitting)


def value_maps(graph, recs, mode="curve"):
    """Per-vertex value maps (m, M) of the chosen valuation.

    m is the value of a transversal curve at each component: Noether
    intersection numbers of the branch for mode "curve", the last-component
    column of minus the inverse intersection matrix for mode "divisorial"
    (which also covers extended runs and reduced graphs of
    generic-coefficient families). M weights m with the conjugate-orbit
    contributions below each field jump.
    """
    if mode not in ("curve", "divisorial"):
        raise ValueError("mode must be 'curve' or 'divisorial'")
    if mode == "curve":
        if graph.case != "I":
            raise ValueError(
                "curve data needs a fully resolved branch, not a reduced "
                "family graph")
        m_map = _res.m_values(graph, recs)
    else:
        inv = _res.minus_inverse(_res.intersection_matrix(graph))
        col = [row[graph.delta()] for row in inv]
        m_map = {}
        for i, val in enumerate(col):
            if val.denominator != 1:
                raise BadSemigroupData(
                    "divisor column entry %s is not an intersection number"
                    % (val,))
            m_map[i] = int(val)
    return m_map, big_M(graph, recs, m_map, graph.splittings)


def numerical_data(graph, recs, mode="curve"):
    """Assemble the NumericalData of a resolved branch.

    mode "curve": values of the branch's own valuation; needs a fully
    resolved branch (case I graph from a plain run, no extra blow-ups), m
    comes from transversal-curve intersections.

    mode "divisorial": values of the divisorial valuation at the graph's
    last component; m is the column of minus the inverse intersection
    matrix at that component, which also covers extended runs and reduced
    graphs of generic-coefficient families.
    """
    m_map, M_map = value_maps(graph, recs, mode)
    sigmas = graph.dead_end_leaves()
    taus = graph.ruptures()
    m_sigma = tuple(int(m_map[v]) for v in sigmas)
    M_sigma = tuple(int(M_map[v]) for v in sigmas)
    M_tau = tuple(int(M_map[v]) for v in taus)
    e, N = char_invariants(M_sigma)
    splitting = tuple((int(M_map[rho]), int(ell))
                      for rho, ell in graph.splittings)
    ell_total = 1
    for _M_rho, l_j in splitting:
        ell_total *= l_j
    c, delta = _conductor_pair(M_sigma, N, splitting)
    M_delta = int(M_map[graph.delta()]) if mode == "divisorial" else None
    return NumericalData(m_sigma=m_sigma, M_sigma=M_sigma, M_tau=M_tau,
                         e=e, N=N, splitting=splitting, ell_total=ell_total,
                         Delta=delta, c_conductor=c, M_delta=M_delta)


def case_II_data(nd, prefix):
    """Append abstract (M_rho, ell) jump factors known only as a finite
    prefix of an infinite list; the result is flagged partial, so series
    built from it are truncations of the true products."""
    extra = tuple((int(M_rho), int(ell)) for M_rho, ell in prefix)
    splitting = nd.splitting + extra
    ell_total = 1
    for _M_rho, l_j in splitting:
        ell_total *= l_j
    c, delta = _conductor_pair(nd.M_sigma, nd.N, splitting)
    return replace(nd, splitting=splitting, ell_total=ell_total,
                   Delta=delta, c_conductor=c, partial=True)


# --- series as binomial products --------------------------------------------

@dataclass(frozen=True)
class SeriesProduct:
    """Finite product of binomials (1 - t^a)^s, normalized: exponents a
    ascending and pairwise distinct, powers s nonzero. The empty product is
    the constant series 1. partial marks a truncation of an infinite
    product (its expansion is only trusted below the first missing
    factor)."""

    factors: tuple
    partial: bool = False

    def __post_init__(self):
        last = 0
        for a, s in self.factors:
            if a <= last or s == 0:
                raise ValueError("factors must be normalized: ascending "
                                 "distinct exponents, nonzero powers")
            last = a

    @staticmethod
    def of(pairs, partial=False):
        acc = {}
        for a, s in pairs:
            a = int(a)
            s = int(s)
            if a < 1:
                raise ValueError("binomial exponent must be positive")
            acc[a] = acc.get(a, 0) + s
        factors = tuple(sorted((a, s) for a, s in acc.items() if s))
        return SeriesProduct(factors, partial)

    def __mul__(self, other):
        return SeriesProduct.of(self.factors + other.factors,
                                self.partial or other.partial)


@dataclass(frozen=True)
class SeriesExpansion:
    """Coefficients a_0..a_N of a series expansion; partial is inherited
    from a partial product source."""

    coeffs: tuple
    partial: bool = False

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("an expansion has at least the constant term")

    @property
    def truncation(self):
        return len(self.coeffs) - 1


def _semigroup_pairs(nd):
    return ([(M, 1) for M in nd.M_tau] + [(M, -1) for M in nd.M_sigma])


def _splitting_pairs(splitting):
    pairs = []
    for M_rho, ell in splitting:
        pairs.append((ell * M_rho, 1))
        pairs.append((M_rho, -1))
    return pairs


def semigroup_series(nd):
    """Characteristic series of the semigroup generated by M_sigma:
    product of (1 - t^{M_tau_i}) over the ruptures divided by the product
    of (1 - t^{M_sigma_i}) over the dead ends."""
    return SeriesProduct.of(_semigroup_pairs(nd))


def classical_series(nd):
    """Dimension series of the valuation filtration: the semigroup series
    times one factor (1 - t^{ell M_rho}) / (1 - t^{M_rho}) per field
    jump."""
    return SeriesProduct.of(_semigroup_pairs(nd)
                            + _splitting_pairs(nd.splitting),
                            partial=nd.partial)


def divisorial_series(nd):
    """Dimension series for the divisorial valuation of the last component:
    the semigroup series times 1 / (1 - t^{M_delta}) times the jump
    factors."""
    if nd.M_delta is None:
        raise MissingDelta("numerical data carries no divisor value")
    return SeriesProduct.of(_semigroup_pairs(nd) + [(nd.M_delta, -1)]
                            + _splitting_pairs(nd.splitting),
                            partial=nd.partial)


def partial_series(nd, j):
    """Intermediate series with only the first j - 1 jump factors: j = 1
    gives the semigroup series, j = s + 1 the full filtration series. Each
    is exact even on partial data (the prefix is known)."""
    if not 1 <= j <= nd.s + 1:
        raise IndexOutOfRange(
            "stage %d outside 1..%d" % (j, nd.s + 1))
    return SeriesProduct.of(_semigroup_pairs(nd)
                            + _splitting_pairs(nd.splitting[:j - 1]))


def expand(sp, order):
    """Exact integer coefficients of the product up to t^order."""
    if order < 0:
        raise ValueError("expansion order must be non-negative")
    co = [0] * (order + 1)
    co[0] = 1
    for a, s in sp.factors:
        for _ in range(abs(s)):
            if s > 0:
                for v in range(order, a - 1, -1):
                    co[v] -= co[v - a]
            else:
                for v in range(a, order + 1):
                    co[v] += co[v - a]
    return SeriesExpansion(tuple(co), partial=sp.partial)


# --- conductor, symmetry, semigroup utilities -------------------------------

def conductor_delta(nd):
    """(c, Delta): least value with c + Z>=0 inside the semigroup of the
    M_sigma, and the stabilization order Delta = c plus the jump
    corrections."""
    return _conductor_pair(nd.M_sigma, nd.N, nd.splitting)


def symmetry_check(expansion, Delta, ell_total):
    """True when the coefficients pair up as a_v + a_{Delta-1-v} =
    ell_total below Delta, stay at ell_total from Delta on, and the last
    pre-stable coefficient sits strictly below ell_total."""
    co = expansion.coeffs
    n = len(co) - 1
    if n < Delta:
        raise TruncationTooShort(
            "expansion reaches %d but the stabilization order is %d"
            % (n, Delta))
    for v in range(Delta):
        if co[v] + co[Delta - 1 - v] != ell_total:
            return False
    for v in range(Delta, n + 1):
        if co[v] != ell_total:
            return False
    if Delta >= 1 and not co[Delta - 1] < ell_total:
        return False
    return True


def _sieve(gens, limit):
    gens = sorted({int(g) for g in gens})
    if any(g < 1 for g in gens):
        raise ValueError("semigroup generators must be positive")
    reach = [False] * (limit + 1)
    if limit >= 0:
        reach[0] = True
    for n in range(1, limit + 1):
        for g in gens:
            if g > n:
                break
            if reach[n - g]:
                reach[n] = True
                break
    return reach


def membership(gens, v):
    """True when v is a sum of generators (0 included as the empty sum)."""
    if v < 0:
        return False
    return _sieve(gens, v)[v]


def gaps(gens, bound):
    """Positive integers below bound outside the generated semigroup."""
    if bound <= 1:
        return []
    reach = _sieve(gens, bound - 1)
    return [n for n in range(1, bound) if not reach[n]]


@dataclass(frozen=True)
class GeneratorCheck:
    """Outcome of the minimal-generator test; falsy on failure, with the
    first failing (rule, index, value) as witness."""

    ok: bool
    witness: tuple = None

    def __bool__(self):
        return self.ok


def minimal_generator_check(M_sigma, N):
    """Check every later generator against the subsemigroup of the earlier
    ones: (N_i - 1) M_i stays outside, N_i M_i falls inside, and the
    previous scaled generator N_{i-1} M_{i-1} stays below M_i."""
    M = [int(x) for x in M_sigma]
    Ns = [int(x) for x in N]
    if len(Ns) != len(M) - 1:
        raise ValueError("need one quotient per generator after the first")
    for i in range(1, len(M)):
        n_i = Ns[i - 1]
        head = M[:i]
        outside = (n_i - 1) * M[i]
        if membership(head, outside):
            return GeneratorCheck(False, ("excluded", i, outside))
        inside = n_i * M[i]
        if not membership(head, inside):
            return GeneratorCheck(False, ("included", i, inside))
        scaled = (Ns[i - 2] if i >= 2 else 1) * M[i - 1]
        if not scaled < M[i]:
            return GeneratorCheck(False, ("ordered", i, scaled))
    return GeneratorCheck(True, None)


# --- binomial refactorization ------------------------------------------------

@dataclass(frozen=True)
class BinomialFactorization:
    """factors: the unique (m, s_m) with m within the expansion order;
    is_cyclotomic: True when a finite product source certifies closure,
    None when no source was given (finitely many terms can never certify
    on their own)."""

    factors: tuple
    is_cyclotomic: bool = None


def binomial_factorization(se, source=None):
    """Peel the unique binomial powers (1 - t^m)^{s_m} out of an expansion.

    The s_m for m up to the truncation order are recovered iteratively and
    are unique. Closure (cyclotomicity) is only certified when source, the
    product the expansion came from, is supplied, is not a partial-product
    truncation, and has no factor beyond the truncation order; otherwise
    TruncationInconclusive carries the peeled prefix in .factors.
    """
    co = list(se.coeffs)
    if co[0] != 1:
        raise ValueError("factorization needs constant term 1")
    n = len(co) - 1
    out = []
    for m in range(1, n + 1):
        s_m = -co[m]
        if s_m == 0:
            continue
        out.append((m, s_m))
        if s_m > 0:
            for _ in range(s_m):
                for v in range(m, n + 1):
                    co[v] += co[v - m]
        else:
            for _ in range(-s_m):
                for v in range(n, m - 1, -1):
                    co[v] -= co[v - m]
    factors = tuple(out)
    if source is None:
        return BinomialFactorization(factors, None)
    if source.partial:
        raise TruncationInconclusive(
            "source is a truncation of an infinite product; closure cannot "
            "be read off %d terms" % (n + 1), factors=factors)
    if any(a > n for a, _s in source.factors):
        raise TruncationInconclusive(
            "source has a factor beyond the expansion order %d" % n,
            factors=factors)
    if factors != source.factors:
        raise ValueError("expansion does not match the claimed source")
    return BinomialFactorization(factors, True)
