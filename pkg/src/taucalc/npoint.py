"""The n-point generating function of intersection numbers.

F(x_1,..,x_n) collects all brackets of a fixed number of points; the
engine works with its normalization G = exp(-sum x_j^3/24) * F, which
satisfies a closed recursion:

    G(x_1,..,x_n) = sum_{r,s>=0} (2r+n-3)!! / (4^s (2r+2s+n-1)!!)
                      * P_r(x_1,..,x_n) * Delta(x_1,..,x_n)^s

    Delta = ((sum x_j)^3 - sum x_j^3) / 3
    P_r   = [ sum_{I ⊔ J = {1..n}, both nonempty}
                (sum_I x)^2 (sum_J x)^2 G(x_I) G(x_J) ]_{3r+n-2} / (2 sum x_j)

The convolution's one- and two-point inputs carry their unstable parts:
the normalized one-point function collapses to exactly x^-2, and the
two-point one is sum_{s>=0} Delta(x,y)^s / (4^s (2s+1)!! (x+y)) whose s=0
term is 1/(x+y).  Packaged as "weighted factors" C_I = (sum_I x)^2 G(x_I)
every ingredient is a genuine polynomial:

    C_{|I|=1} = 1
    C_{|I|=2} = sum_s Delta(x,y)^s (x+y) / (4^s (2s+1)!!)
    C_{|I|=k} = (sum_I x)^2 G(x_I)           (k >= 3, all stable)

and each P_r division by sum x_j is exact -- a nonzero remainder aborts,
since it can only mean an implementation bug.  The exposed series keep
only the stable coefficients; extraction back to F restores the
polynomial part of the unstable contributions where they matter (n = 2).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial
from typing import Iterable, Mapping

from .brackets import BracketTable
from .rationals import double_factorial, odd_double_factorial

__all__ = [
    "GradedPoly",
    "NPointSeries",
    "MergedSeries",
    "DivisionRemainderError",
    "OddPowerError",
    "delta_poly",
    "one_point_series",
    "npoint_series",
    "extract_bracket",
    "merged_series",
]

Terms = dict[tuple[int, ...], Fraction]

_ZERO = Fraction(0)


class DivisionRemainderError(ArithmeticError):
    """Division by sum(x_j) left a remainder where a theorem promises none."""


class OddPowerError(ArithmeticError):
    """An odd power of the merged variable survived antisymmetrization."""


def _add_term(terms: Terms, mono: tuple[int, ...], coeff: Fraction) -> None:
    new = terms.get(mono, _ZERO) + coeff
    if new:
        terms[mono] = new
    else:
        terms.pop(mono, None)


def _mul(a: Terms, b: Terms, cap: int) -> Terms:
    if len(a) > len(b):
        a, b = b, a
    out: Terms = {}
    bitems = [(m, sum(m), c) for m, c in b.items()]
    for ma, ca in a.items():
        da = sum(ma)
        for mb, db, cb in bitems:
            if da + db > cap:
                continue
            mono = tuple(x + y for x, y in zip(ma, mb))
            _add_term(out, mono, ca * cb)
    return out


def _scale(a: Terms, c: Fraction) -> Terms:
    if not c:
        return {}
    return {m: v * c for m, v in a.items()}


def _component(a: Terms, degree: int) -> Terms:
    return {m: c for m, c in a.items() if sum(m) == degree}


def _divide_by_varsum(comp: Terms, n: int) -> Terms:
    """Exact division of a homogeneous component by x_0 + .. + x_{n-1}.

    Iterated lex-leading-term elimination; the divisor's leading monomial
    is x_0, so any surviving monomial with zero first exponent witnesses a
    nonzero remainder.
    """
    import heapq

    work = dict(comp)
    heap = [tuple(-e for e in m) for m in work]
    heapq.heapify(heap)
    quotient: Terms = {}
    while heap:
        neg = heapq.heappop(heap)
        mono = tuple(-e for e in neg)
        c = work.pop(mono, None)
        if not c:
            continue
        if mono[0] == 0:
            raise DivisionRemainderError(
                f"remainder at monomial {mono}: component not divisible by the variable sum"
            )
        q = (mono[0] - 1,) + mono[1:]
        _add_term(quotient, q, c)
        for i in range(1, n):
            m2 = q[:i] + (q[i] + 1,) + q[i + 1 :]
            prev = work.get(m2)
            if prev is None:
                work[m2] = -c
                heapq.heappush(heap, tuple(-e for e in m2))
            else:
                new = prev - c
                if new:
                    work[m2] = new
                else:
                    del work[m2]
    return quotient


class GradedPoly:
    """Sparse multivariate polynomial with exact coefficients.

    max_degree is the degree through which the coefficients are meaningful
    (series truncation); None marks an exact polynomial.
    """

    __slots__ = ("n", "terms", "max_degree")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], Fraction] | None = None,
                 max_degree: int | None = None):
        self.n = n
        self.terms: Terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}
        self.max_degree = max_degree

    def coefficient(self, mono: Iterable[int]) -> Fraction:
        mono = tuple(mono)
        if self.max_degree is not None and sum(mono) > self.max_degree:
            raise ValueError(
                f"degree {sum(mono)} exceeds tracked degree {self.max_degree}"
            )
        return self.terms.get(mono, _ZERO)

    def component(self, degree: int) -> "GradedPoly":
        return GradedPoly(self.n, _component(self.terms, degree), self.max_degree)

    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        cap = _min_cap(self.max_degree, other.max_degree)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add_term(out, m, c)
        return GradedPoly(self.n, out, cap)

    def __mul__(self, other: "GradedPoly") -> "GradedPoly":
        cap = _min_cap(self.max_degree, other.max_degree)
        hard_cap = cap if cap is not None else _max_deg(self.terms) + _max_deg(other.terms)
        return GradedPoly(self.n, _mul(self.terms, other.terms, hard_cap), cap)

    def scaled(self, c: Fraction) -> "GradedPoly":
        return GradedPoly(self.n, _scale(self.terms, Fraction(c)), self.max_degree)

    def is_symmetric(self) -> bool:
        from itertools import permutations

        for perm in permutations(range(self.n)):
            for m, c in self.terms.items():
                pm = tuple(m[i] for i in perm)
                if self.terms.get(pm, _ZERO) != c:
                    return False
        return True

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedPoly) and self.n == other.n and self.terms == other.terms

    def __repr__(self) -> str:
        return f"GradedPoly(n={self.n}, terms={len(self.terms)}, max_degree={self.max_degree})"


def _min_cap(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _max_deg(terms: Terms) -> int:
    return max((sum(m) for m in terms), default=0)


def delta_poly(n: int) -> GradedPoly:
    """Delta = ((sum x_j)^3 - sum x_j^3)/3; identically 0 for n = 1."""
    if n < 1:
        raise ValueError("need at least one variable")
    terms: Terms = {}
    # multinomial expansion of (sum x)^3, dropping the pure cubes
    def monos(slots: int):
        for i in range(n):
            for j in range(i, n):
                for k in range(j, n):
                    yield (i, j, k)

    for i, j, k in monos(3):
        if i == j == k:
            continue
        mono = [0] * n
        mono[i] += 1
        mono[j] += 1
        mono[k] += 1
        weight = 6 if (i < j < k) else 3
        _add_term(terms, tuple(mono), Fraction(weight, 3))
    return GradedPoly(n, terms, None)


def _delta_terms(n: int) -> Terms:
    return delta_poly(n).terms


@lru_cache(maxsize=None)
def _one_point_stable(cap: int) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    # x^-2 (1 - exp(-x^3/24)): components (-1)^{h+1} x^{3h-2} / (24^h h!)
    out = []
    h = 1
    while 3 * h - 2 <= cap:
        out.append(((3 * h - 2,), Fraction((-1) ** (h + 1), 24**h * factorial(h))))
        h += 1
    return tuple(out)


def one_point_series(degree_cap: int) -> GradedPoly:
    """Stable normalized one-point series exp(-x^3/24) * sum_g x^{3g-2}/(24^g g!)."""
    if degree_cap < 1:
        raise ValueError("degree cap must be at least 1")
    return GradedPoly(1, dict(_one_point_stable(degree_cap)), degree_cap)


@lru_cache(maxsize=None)
def _two_point_stable(cap: int) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    # sum_{s>=1} x^s y^s (x+y)^{s-1} / (4^s (2s+1)!!), degree 3s-1
    out = []
    s = 1
    while 3 * s - 1 <= cap:
        c = Fraction(1, 4**s * odd_double_factorial(s))
        for i in range(s):
            out.append(((s + i, 2 * s - 1 - i), c * comb(s - 1, i)))
        s += 1
    return tuple(out)


@lru_cache(maxsize=None)
def _two_point_cfactor(cap: int) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    # (x+y)^2 * full two-point G: sum_{s>=0} x^s y^s (x+y)^{s+1} / (4^s (2s+1)!!)
    out = []
    s = 0
    while 3 * s + 1 <= cap:
        c = Fraction(1, 4**s * odd_double_factorial(s))
        for i in range(s + 2):
            out.append(((s + i, 2 * s + 1 - i), c * comb(s + 1, i)))
        s += 1
    return tuple(out)


def _embed(terms: Iterable[tuple[tuple[int, ...], Fraction]], positions: tuple[int, ...],
           n: int) -> Terms:
    out: Terms = {}
    for mono, c in terms:
        big = [0] * n
        for p, e in zip(positions, mono):
            big[p] = e
        out[tuple(big)] = c
    return out


@lru_cache(maxsize=None)
def _c_factor(k: int, cap: int) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    """(sum_I x)^2 G(x_I) for |I| = k as a polynomial, unstable parts folded in."""
    if k == 1:
        return (((0,), Fraction(1)),)
    if k == 2:
        return _two_point_cfactor(cap)
    g = _stable_terms(k, cap - 2)
    e1sq: Terms = {}
    for i in range(k):
        for j in range(k):
            mono = [0] * k
            mono[i] += 1
            mono[j] += 1
            _add_term(e1sq, tuple(mono), Fraction(1))
    return tuple(_mul(dict(g), e1sq, cap).items())


@lru_cache(maxsize=None)
def _stable_terms(n: int, cap: int) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    """Stable normalized n-point series through total degree cap."""
    if n == 1:
        return _one_point_stable(cap)
    if n == 2:
        return _two_point_stable(cap)

    num_cap = cap + 1
    numerator: Terms = {}
    indices = tuple(range(n))
    for size in range(1, n):
        for left in combinations(indices, size):
            right = tuple(i for i in indices if i not in left)
            a = _embed(_c_factor(size, num_cap), left, n)
            b = _embed(_c_factor(n - size, num_cap), right, n)
            for mono, c in _mul(a, b, num_cap).items():
                _add_term(numerator, mono, c)

    g_max = (cap - n + 3) // 3
    p_parts: dict[int, Terms] = {}
    for r in range(g_max + 1):
        comp = _component(numerator, 3 * r + n - 2)
        p_parts[r] = _scale(_divide_by_varsum(comp, n), Fraction(1, 2))

    delta = _delta_terms(n)
    delta_pows: list[Terms] = [{(0,) * n: Fraction(1)}]
    for s in range(1, g_max + 1):
        delta_pows.append(_mul(delta_pows[-1], delta, cap))

    out: Terms = {}
    for r, p in p_parts.items():
        if not p:
            continue
        inner: Terms = {}
        for s in range(g_max - r + 1):
            c = Fraction(
                double_factorial(2 * r + n - 3),
                4**s * double_factorial(2 * r + 2 * s + n - 1),
            )
            for mono, v in delta_pows[s].items():
                _add_term(inner, mono, c * v)
        for mono, c in _mul(p, inner, cap).items():
            _add_term(out, mono, c)
    return tuple(out.items())


@lru_cache(maxsize=None)
def _exp_cubes(n: int, cap: int) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    """exp(sum x_j^3 / 24) truncated at total degree cap."""
    terms: Terms = {(0,) * n: Fraction(1)}
    for i in range(n):
        single: Terms = {}
        k = 0
        while 3 * k <= cap:
            mono = [0] * n
            mono[i] = 3 * k
            single[tuple(mono)] = Fraction(1, 24**k * factorial(k))
            k += 1
        terms = _mul(terms, single, cap)
    return tuple(terms.items())


class NPointSeries:
    """Normalized n-point series plus exact extraction back to brackets."""

    def __init__(self, n: int, degree_cap: int):
        self.n = n
        self.degree_cap = degree_cap
        self.g = GradedPoly(n, dict(_stable_terms(n, degree_cap)), degree_cap)
        self._f: GradedPoly | None = None

    @property
    def f(self) -> GradedPoly:
        """Polynomial part of exp(sum x^3/24) * G, whose coefficients are brackets."""
        if self._f is None:
            cap = self.degree_cap
            exp_terms = dict(_exp_cubes(self.n, cap))
            out = _mul(self.g.terms, exp_terms, cap)
            if self.n == 2:
                # the unstable 1/(x+y) contributes (exp(..)-1)/(x+y) to the
                # polynomial part; degree by degree the division is exact.
                # Division drops one degree, so feed it one degree more.
                corr = dict(_exp_cubes(2, cap + 1))
                corr.pop((0, 0), None)
                for deg in range(1, cap + 2):
                    comp = _component(corr, deg)
                    if not comp:
                        continue
                    for mono, c in _divide_by_varsum(comp, 2).items():
                        _add_term(out, mono, c)
            self._f = GradedPoly(self.n, out, cap)
        return self._f

    def bracket(self, exponents: Iterable[int]) -> Fraction:
        return self.f.coefficient(tuple(exponents))

    def dump_lines(self) -> list[str]:
        """F coefficients as "d1,..,dn -> num/den", graded then lex order."""
        rows = sorted(self.f.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        return [f"{','.join(map(str, m))} -> {c}" for m, c in rows]


@lru_cache(maxsize=None)
def npoint_series(n: int, g_max: int) -> NPointSeries:
    """Build the n-point series through genus g_max (degree 3*g_max + n - 3)."""
    if n < 1 or g_max < 0:
        raise ValueError("need n >= 1 and g_max >= 0")
    cap = 3 * g_max + n - 3
    if n == 1:
        cap = max(cap, 1)
    return NPointSeries(n, cap)


def extract_bracket(series: NPointSeries, exponents: Iterable[int]) -> Fraction:
    """Coefficient of prod x^{d_j} in F; equals bracket(g, d) at the fitting genus."""
    return series.bracket(exponents)


class MergedSeries:
    """G(y, -y, x_1..x_n): the antisymmetrized pair substituted into the
    (n+2)-point series, with the x-side normalization kept.

    Keys are (y-exponent, x-exponent tuple); odd y-powers must cancel
    identically and construction aborts if one survives.
    """

    def __init__(self, n: int, g_max: int):
        self.n = n
        self.g_max = g_max
        base = npoint_series(n + 2, g_max)
        self.degree_cap = base.degree_cap
        gterms: dict[tuple[int, tuple[int, ...]], Fraction] = {}
        for mono, c in base.g.terms.items():
            a, b = mono[0], mono[1]
            key = (a + b, mono[2:])
            prev = gterms.get(key, _ZERO)
            new = prev + c * (-1) ** b
            if new:
                gterms[key] = new
            else:
                gterms.pop(key, None)
        for (ypow, xs) in gterms:
            if ypow % 2:
                raise OddPowerError(
                    f"odd power y^{ypow} x^{xs} survived the (y,-y) substitution"
                )
        self.gterms = gterms
        self._fterms: dict[tuple[int, tuple[int, ...]], Fraction] | None = None

    def coefficient(self, K: int, exponents: Iterable[int]) -> Fraction:
        """Coefficient of y^{2K} prod x^{d_j} in the normalized merged series."""
        d = tuple(exponents)
        if 2 * K + sum(d) > self.degree_cap:
            raise ValueError("requested coefficient beyond the tracked degree")
        return self.gterms.get((2 * K, d), _ZERO)

    def alt_sum(self, K: int, exponents: Iterable[int]) -> Fraction:
        """Coefficient of y^{2K} prod x^{d_j} with the x-side normalization
        removed: equals sum_j (-1)^j <tau_{2K-j} tau_j prod tau_d>."""
        if self._fterms is None:
            cap = self.degree_cap
            exp_terms = dict(_exp_cubes(self.n, cap)) if self.n else {(): Fraction(1)}
            out: dict[tuple[int, tuple[int, ...]], Fraction] = {}
            for (ypow, xs), c in self.gterms.items():
                for mono, e in exp_terms.items():
                    if ypow + sum(xs) + sum(mono) > cap:
                        continue
                    key = (ypow, tuple(a + b for a, b in zip(xs, mono)))
                    prev = out.get(key, _ZERO)
                    new = prev + c * e
                    if new:
                        out[key] = new
                    else:
                        out.pop(key, None)
            self._fterms = out
        d = tuple(exponents)
        if 2 * K + sum(d) > self.degree_cap:
            raise ValueError("requested coefficient beyond the tracked degree")
        return self._fterms.get((2 * K, d), _ZERO)

    def dump_lines(self) -> list[str]:
        rows = sorted(self.gterms.items(), key=lambda kv: (kv[0][0] + sum(kv[0][1]), kv[0]))
        return [
            f"{ypow},{','.join(map(str, xs))} -> {c}" if xs else f"{ypow} -> {c}"
            for (ypow, xs), c in rows
        ]


def merged_series(n: int, g_max: int) -> MergedSeries:
    if n < 1:
        raise ValueError("need at least one spectator variable")
    return MergedSeries(n, g_max)


def warm_table_from_series(series: NPointSeries, table: BracketTable) -> int:
    """Seed a bracket table with every coefficient of the series' F part.

    Only dimension-consistent stable keys are stored.  Returns the number
    of entries written.
    """
    count = 0
    n = series.n
    for mono, c in series.f.terms.items():
        num = sum(mono) - n + 3
        g, rem = divmod(num, 3)
        if rem or g < 0 or 2 * g - 2 + n <= 0:
            continue
        table.put((g, tuple(sorted(mono))), c)
        count += 1
    return count
