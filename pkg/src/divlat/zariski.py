"""Zariski decomposition of effective divisors, exact over the rationals.

The nef part is computed by the classical support-growing iteration:
start from the primes the divisor meets negatively, solve the
orthogonality system on that support, and enlarge the support while the
candidate nef part still meets some prime of the divisor negatively.
All solves are exact; the candidate support must stay negative definite
or the input is rejected as an inconsistent model.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import ModelError, PreconditionError, UnsupportedError
from .lattice import (
    Divisor,
    definiteness,
    intersect,
    roundup,
    same_lattice,
    selfint,
)


@dataclass(frozen=True)
class ZariskiPair:
    """Nef part P and negative part N of a decomposed divisor D = P + N.

    Invariants, enforced at construction: N is effective with negative
    definite support, P.C >= 0 for every prime C in the support of
    P + N, and P.C = 0 for every prime C in the support of N.
    """

    P: Divisor
    N: Divisor

    def __post_init__(self):
        if not same_lattice(self.P.lattice, self.N.lattice):
            raise ModelError("Zariski pair parts live on different lattices")
        if not self.N.is_effective:
            raise ModelError("negative part is not effective")
        d = self.P + self.N
        lat = d.lattice
        for j in d.support():
            v = intersect(self.P, lat.prime_divisor(j))
            if v < 0:
                raise ModelError(
                    f"nef part meets {lat.primes[j]} negatively ({v})"
                )
        for j in self.N.support():
            if intersect(self.P, lat.prime_divisor(j)) != 0:
                raise ModelError(
                    f"nef part is not orthogonal to {lat.primes[j]} in the negative support"
                )
        if self.N.support() and not definiteness(lat, self.N.support(), "negdef"):
            raise ModelError("negative part support is not negative definite")

    @property
    def divisor(self) -> Divisor:
        return self.P + self.N

    def nef_part_square(self) -> Fraction:
        return selfint(self.P)


def zariski_decompose(d: Divisor) -> ZariskiPair:
    """Exact Zariski decomposition of an effective divisor.

    Raises ModelError when the growing candidate support fails to be
    negative definite or the solved negative part escapes [0, D]; both
    signal a pairing matrix that is not the intersection matrix of
    actual curves.
    """
    if not d.is_effective:
        raise PreconditionError("Zariski decomposition needs an effective divisor")
    lat = d.lattice
    supp = d.support()
    prime = lat.prime_divisor

    def pairing_with(div: Divisor, j: int) -> Fraction:
        return intersect(div, prime(j))

    s = sorted(j for j in supp if pairing_with(d, j) < 0)
    n_coeffs = [Fraction(0)] * lat.n
    while True:
        if s:
            if not definiteness(lat, s, "negdef"):
                names = ", ".join(lat.primes[j] for j in s)
                raise ModelError(
                    f"candidate negative support {{{names}}} is not negative definite"
                )
            gram = [[lat.matrix[i][j] for j in s] for i in s]
            rhs = [pairing_with(d, j) for j in s]
            sol = linalg.solve(gram, rhs)
            if sol is None:
                raise ModelError("singular Gram matrix on negative definite support")
            n_coeffs = [Fraction(0)] * lat.n
            for idx, j in enumerate(s):
                n_coeffs[j] = sol[idx]
        neg = Divisor(lat, n_coeffs)
        nef = d - neg
        grow = sorted(
            j for j in supp if j not in s and pairing_with(nef, j) < 0
        )
        if not grow:
            break
        s.extend(grow)
        s.sort()
    if not neg.is_effective or not (neg <= d):
        raise ModelError("negative part escaped the interval [0, D]")
    return ZariskiPair(nef, neg)


def is_big_effective(d: Divisor) -> bool:
    """P.P > 0 for the nef part P of the Zariski decomposition."""
    return selfint(zariski_decompose(d).P) > 0


@dataclass(frozen=True)
class IntegralZariskiPair:
    """Integral analogue: Z-positive part and the effective remainder."""

    positive: Divisor
    negative: Divisor

    def __post_init__(self):
        if not self.negative.is_effective:
            raise ModelError("integral Zariski negative part is not effective")
        if not (self.positive.is_integral and self.negative.is_integral):
            raise ModelError("integral Zariski parts must be integral")


def integral_zariski(d: Divisor, budget: int | None = None) -> IntegralZariskiPair:
    """Integral Zariski decomposition of a big divisor with connected support.

    The positive part is the chain-connected component; it is validated
    to be Z-positive before returning. Inputs outside the supported
    regime (not big, or disconnected support) are refused.
    """
    from .connectivity import (
        DEFAULT_BUDGET,
        chain_connected_component,
        is_z_positive,
        support_components,
    )

    if budget is None:
        budget = DEFAULT_BUDGET

    if not (d.is_effective and d.is_integral) or d.is_zero:
        raise PreconditionError(
            "integral Zariski decomposition needs an integral effective nonzero divisor"
        )
    comps = support_components(d)
    if len(comps) != 1:
        raise UnsupportedError(
            "integral Zariski decomposition is only supported for connected support; "
            f"found {len(comps)} components"
        )
    if not is_big_effective(d):
        raise UnsupportedError(
            "integral Zariski decomposition is only supported for big divisors "
            "(nef part has positive self-intersection)"
        )
    positive = chain_connected_component(d, budget)
    negative = d - positive
    verdict = is_z_positive(positive)
    if not verdict.holds:
        raise ModelError("chain-connected component failed the Z-positivity check")
    if not negative.is_zero:
        from .lattice import nef_over

        if not nef_over(-1 * positive, negative):
            raise ModelError("positive part is not anti-nef over the remainder")
    return IntegralZariskiPair(positive, negative)
