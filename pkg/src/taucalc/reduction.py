"""Reduction of kappa-class and selected lambda-class integrals to pure
psi-brackets.

Three routes live here:

* the set-partition transform turning <prod tau_d prod kappa_a> into a
  signed sum of pure tau brackets (one tau_{sum(a_B)+1} per block B, with
  weight (-1)^{|B|-1}); the weight follows from unfolding
  kappa_a = pi_*(psi^{a+1}) against pi^* kappa_b = kappa_b - psi^b, and is
  pinned by the kappa_0 and single-kappa laws in the suite,
* the closed lambda_g formula
      <prod psi^{d_j} lambda_g> = C(2g+n-3; d) (2^{2g-1}-1)/2^{2g-1} |B_2g|/(2g)!,
* Mumford's expansion of the odd Chern characters ch_{2k-1} of the Hodge
  bundle into kappa, psi and boundary contributions, which in particular
  evaluates <prod psi^d lambda_g lambda_{g-1}> via
  lambda_g lambda_{g-1} = (-1)^{g-1} (2g-1)! ch_{2g-1}.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, NamedTuple

from .brackets import BracketTable, bracket
from .combinat import multinomial, set_partitions, submultiset_splits
from .rationals import bernoulli, odd_double_factorial

__all__ = [
    "MixedKey",
    "kappa_to_psi",
    "lambda_g_bracket",
    "ch_insertion",
    "lambda_gg1_bracket",
    "faber_closed_form",
    "faber_kappa_value",
]

_ZERO = Fraction(0)
_HALF = Fraction(1, 2)


class MixedKey(NamedTuple):
    """A mixed psi/kappa integral on the n-pointed genus-g space."""

    genus: int
    psi: tuple[int, ...]
    kappa: tuple[int, ...]

    @classmethod
    def make(cls, genus: int, psi: Iterable[int], kappa: Iterable[int]) -> "MixedKey":
        return cls(genus, tuple(sorted(psi)), tuple(sorted(kappa)))

    def dimension_matches(self) -> bool:
        n = len(self.psi)
        return sum(self.psi) + sum(self.kappa) == 3 * self.genus - 3 + n

    def is_stable(self) -> bool:
        return 2 * self.genus - 2 + len(self.psi) > 0


def kappa_to_psi(
    genus: int,
    psi: Iterable[int],
    kappa: Iterable[int],
    table: BracketTable | None = None,
) -> Fraction:
    """Exact value of <prod tau_{d_i} prod kappa_{a_j}>_{g,n}.

    Total function: dimension mismatches and unstable targets give 0.
    """
    key = MixedKey.make(genus, psi, kappa)
    if any(a < 0 for a in key.kappa) or any(d < 0 for d in key.psi):
        return _ZERO
    if not key.dimension_matches() or not key.is_stable():
        return _ZERO
    m = len(key.kappa)
    if m == 0:
        return bracket(genus, key.psi, table)

    # group identical tau-insertion multisets before hitting the engine
    accum: dict[tuple[int, ...], int | Fraction] = {}
    for blocks in set_partitions(m):
        coeff = 1
        extra = []
        for block in blocks:
            coeff *= (-1) ** (len(block) - 1)
            extra.append(sum(key.kappa[i] for i in block) + 1)
        exps = tuple(sorted(key.psi + tuple(extra)))
        accum[exps] = accum.get(exps, 0) + coeff

    total = _ZERO
    for exps, coeff in accum.items():
        if coeff:
            total += coeff * bracket(genus, exps, table)
    return total


def lambda_g_bracket(genus: int, exponents: Iterable[int]) -> Fraction:
    """<prod psi^{d_j} lambda_g>_{g,n} by the closed formula; 0 off-dimension."""
    d = tuple(exponents)
    n = len(d)
    if genus < 1 or n < 1:
        return _ZERO
    if any(x < 0 for x in d) or sum(d) != 2 * genus - 3 + n:
        return _ZERO
    b = bernoulli(2 * genus)
    two = 2 ** (2 * genus - 1)
    return (
        Fraction(multinomial(d))
        * Fraction(two - 1, two)
        * Fraction(abs(b.numerator), b.denominator)
        / factorial(2 * genus)
    )


def ch_insertion(
    genus: int,
    k: int,
    exponents: Iterable[int],
    table: BracketTable | None = None,
) -> Fraction:
    """<ch_{2k-1}(Hodge bundle) prod tau_{d_j}>_g via Mumford's expansion.

    Vanishes identically for k > genus; the harness checks that rather
    than assuming it.
    """
    if k < 1:
        raise ValueError("the Chern character index 2k-1 needs k >= 1")
    d = tuple(sorted(exponents))
    if any(x < 0 for x in d):
        return _ZERO
    g = genus
    combo = kappa_to_psi(g, d, (2 * k - 1,), table)
    for j in range(len(d)):
        raised = d[:j] + (d[j] + 2 * k - 1,) + d[j + 1 :]
        combo -= bracket(g, raised, table)

    splits = submultiset_splits(d)
    for j in range(2 * k - 1):
        sign = (-1) ** j
        other = 2 * k - 2 - j
        combo += _HALF * sign * bracket(g - 1, d + (j, other), table)
        for left, right, count in splits:
            gl, rem = divmod(j + sum(left) - len(left) + 2, 3)
            if rem or gl < 0 or gl > g:
                continue
            lv = bracket(gl, (j,) + left, table)
            if lv:
                rv = bracket(g - gl, (other,) + right, table)
                if rv:
                    combo += _HALF * sign * count * lv * rv
    return bernoulli(2 * k) / factorial(2 * k) * combo


def lambda_gg1_bracket(
    genus: int,
    exponents: Iterable[int],
    table: BracketTable | None = None,
) -> Fraction:
    """<prod psi^{d_j} lambda_g lambda_{g-1}>_{g,n} for g >= 2, d_j >= 1."""
    d = tuple(exponents)
    if genus < 2:
        raise ValueError("needs genus >= 2 (lambda_{g-1} with g-1 >= 1)")
    if any(x < 1 for x in d) or sum(x - 1 for x in d) != genus - 2:
        return _ZERO
    sign = (-1) ** (genus - 1)
    return sign * factorial(2 * genus - 1) * ch_insertion(genus, genus, d, table)


def faber_closed_form(genus: int, exponents: Iterable[int]) -> Fraction:
    """(2g-3+n)! |B_2g| / (2^{2g-1} (2g)! prod (2d_j-1)!!), the conjectured
    value of <prod psi^{d_j} lambda_g lambda_{g-1}>."""
    d = tuple(exponents)
    n = len(d)
    b = bernoulli(2 * genus)
    den = 2 ** (2 * genus - 1) * factorial(2 * genus)
    for x in d:
        den *= odd_double_factorial(x - 1)
    return Fraction(factorial(2 * genus - 3 + n), den) * Fraction(
        abs(b.numerator), b.denominator
    )


def faber_kappa_value(genus: int) -> Fraction:
    """<kappa_{g-2} lambda_g lambda_{g-1}>_g = |B_2g| (g-1)! / (2^g (2g)!)."""
    b = bernoulli(2 * genus)
    return Fraction(abs(b.numerator), b.denominator) * Fraction(
        factorial(genus - 1), 2**genus * factorial(2 * genus)
    )
