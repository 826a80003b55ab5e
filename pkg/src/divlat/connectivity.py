"""Connectivity of effective divisors.

A divisor D is chain-connected when no decomposition D = A + B into
effective nonzero parts has -A nef over B, and m-connected when every
such decomposition has A.B >= m (strictly m-connected for >).
Numerical connectivity is strict 0-connectivity.

Greedy certificates drive the fast paths: a connecting chain appends
one prime at a time, always pairing positively with what was built so
far, and a stalled chain hands back the decomposition (built, rest)
with -built nef over rest, which refutes chain-connectivity on any
lattice. Completed chains certify chain-connectivity on lattices whose
distinct primes pair non-negatively (the situation of actual curves on
a surface); on exotic sign patterns the module falls back to the
exhaustive decomposition scan, and the brute-force oracles are exported
for independent validation either way.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetError, ModelError, PreconditionError
from .lattice import (
    Divisor,
    IntersectionLattice,
    as_rational,
    intersect,
    nef_over,
    roundup,
    same_lattice,
)
from .zariski import zariski_decompose

DEFAULT_BUDGET = 10**6


def _require_pair(a: Divisor, b: Divisor, op: str) -> None:
    if not same_lattice(a.lattice, b.lattice):
        raise PreconditionError(
            f"{op} needs divisors on one lattice, got {a.lattice.name} and {b.lattice.name}"
        )


def _int_coeffs(d: Divisor) -> list[int]:
    return [c.numerator for c in d.coeffs]


def _offdiag_nonnegative(lat: IntersectionLattice, indices) -> bool:
    idx = list(indices)
    return all(
        lat.matrix[i][j] >= 0 for i in idx for j in idx if i != j
    )


def decomposition_count(d: Divisor) -> int:
    """Number of candidate first parts, prod(a_i + 1), including 0 and D."""
    total = 1
    for c in d.coeffs:
        total *= c.numerator + 1
    return total


def _check_budget(d: Divisor, budget: int, what: str) -> int:
    total = decomposition_count(d)
    if total > budget:
        raise BudgetError(
            f"{what} needs {total} candidates, over the budget of {budget}",
            required=total,
            allowed=budget,
        )
    return total


def support_components(d: Divisor) -> tuple[tuple[int, ...], ...]:
    """Connected components of the support under nonzero pairing."""
    lat = d.lattice
    todo = set(d.support())
    comps = []
    while todo:
        seed = min(todo)
        comp = {seed}
        frontier = [seed]
        while frontier:
            i = frontier.pop()
            for j in list(todo - comp):
                if lat.matrix[i][j] != 0:
                    comp.add(j)
                    frontier.append(j)
        todo -= comp
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def has_connected_support(d: Divisor) -> bool:
    return len(support_components(d)) == 1


@dataclass(frozen=True)
class DecompositionWitness:
    """An effective decomposition A + B with its intersection product."""

    a: Divisor
    b: Divisor
    product: Fraction

    def __post_init__(self):
        _require_pair(self.a, self.b, "decomposition witness")
        if not (self.a.is_effective and self.b.is_effective):
            raise ModelError("decomposition parts must be effective")
        if self.a.is_zero or self.b.is_zero:
            raise ModelError("decomposition parts must be nonzero")
        if self.product != intersect(self.a, self.b):
            raise ModelError("stored product does not match intersect(A, B)")

    @property
    def total(self) -> Divisor:
        return self.a + self.b


@dataclass(frozen=True)
class ConnectingChain:
    """A chain start = D_0 < D_1 < ... < D_m = end, each step a prime C_i
    with D_{i-1}.C_i > 0. Replay is validated at construction."""

    start: Divisor
    end: Divisor
    steps: tuple[int, ...]

    def __post_init__(self):
        _require_pair(self.start, self.end, "connecting chain")
        if not (self.start.is_integral and self.end.is_integral):
            raise ModelError("chain endpoints must be integral")
        if self.start.is_zero or not self.start.is_effective:
            raise ModelError("chain must start at an effective nonzero divisor")
        if not (self.start <= self.end):
            raise ModelError("chain start must be a subdivisor of its end")
        lat = self.start.lattice
        g = self.start
        for j in self.steps:
            step = lat.prime_divisor(j)
            if intersect(g, step) <= 0:
                raise ModelError(
                    f"chain replay fails: intermediate pairs non-positively with {lat.primes[j]}"
                )
            g = g + step
            if not (g <= self.end):
                raise ModelError("chain replay escapes the end divisor")
        if g != self.end:
            raise ModelError("chain replay does not reproduce the end divisor")

    @property
    def length(self) -> int:
        return len(self.steps)

    def step_primes(self) -> tuple[str, ...]:
        return tuple(self.start.lattice.primes[j] for j in self.steps)

    def divisors(self) -> list[Divisor]:
        out = [self.start]
        for j in self.steps:
            out.append(out[-1] + self.start.lattice.prime_divisor(j))
        return out

    def pairings(self) -> tuple[Fraction, ...]:
        lat = self.start.lattice
        out = []
        g = self.start
        for j in self.steps:
            step = lat.prime_divisor(j)
            out.append(intersect(g, step))
            g = g + step
        return tuple(out)


def connecting_chain(start: Divisor, end: Divisor) -> ConnectingChain | DecompositionWitness:
    """Greedy chain growth from start to end (smallest prime index first).

    Returns the chain, or on stagnation the witness pair (built, rest)
    with -built nef over rest.
    """
    _require_pair(start, end, "connecting_chain")
    if not (start.is_integral and end.is_integral):
        raise PreconditionError("connecting_chain needs integral divisors")
    if not (start.is_effective and end.is_effective):
        raise PreconditionError("connecting_chain needs effective divisors")
    if start.is_zero:
        raise PreconditionError("connecting_chain needs a nonzero start")
    if not (start <= end):
        raise PreconditionError("chain start must be a subdivisor of the end")
    lat = end.lattice
    im = lat._imatrix
    n = lat.n
    g = _int_coeffs(start)
    target = _int_coeffs(end)
    steps: list[int] = []
    missing = sum(target) - sum(g)
    for _ in range(missing):
        pick = -1
        for j in range(n):
            if g[j] >= target[j]:
                continue
            s = 0
            for i in range(n):
                gi = g[i]
                if gi:
                    s += gi * im[i][j]
            if s > 0:
                pick = j
                break
        if pick < 0:
            built = Divisor(lat, (Fraction(x) for x in g))
            rest = end - built
            return DecompositionWitness(built, rest, intersect(built, rest))
        g[pick] += 1
        steps.append(pick)
    return ConnectingChain(start, end, tuple(steps))


def enumerate_decompositions(
    d: Divisor,
    max_product: Fraction | int | str | None = None,
    budget: int = DEFAULT_BUDGET,
) -> tuple[DecompositionWitness, ...]:
    """All ordered decompositions D = A + B, A and B effective nonzero,
    in lexicographic order of A's coefficient vector, optionally filtered
    by A.B <= max_product. Budget-guarded by prod(a_i + 1) <= budget."""
    if not (d.is_effective and d.is_integral):
        raise PreconditionError("decomposition enumeration needs an integral effective divisor")
    _check_budget(d, budget, "decomposition enumeration")
    bound = None if max_product is None else as_rational(max_product)
    lat = d.lattice
    im = lat._imatrix
    den = lat._den
    coeffs = _int_coeffs(d)
    n = lat.n
    rows = [im[i] for i in range(n)]
    out = []
    full = tuple(coeffs)
    for a in itertools.product(*(range(c + 1) for c in coeffs)):
        if a == full or not any(a):
            continue
        s = 0
        for i in range(n):
            ai = a[i]
            if ai:
                row = rows[i]
                s += ai * sum(row[j] * (coeffs[j] - a[j]) for j in range(n))
        product = Fraction(s, den)
        if bound is not None and product > bound:
            continue
        part_a = Divisor(lat, (Fraction(x) for x in a))
        part_b = d - part_a
        out.append(DecompositionWitness(part_a, part_b, product))
    return tuple(out)


@dataclass(frozen=True)
class ChainConnectednessVerdict:
    holds: bool
    chain: ConnectingChain | None = None
    witness: DecompositionWitness | None = None
    exhaustive: bool = False

    def __bool__(self) -> bool:
        return self.holds


def _find_nef_witness(d: Divisor, budget: int) -> DecompositionWitness | None:
    """First decomposition (lex in A) with -A nef over B, or None."""
    _check_budget(d, budget, "chain-connectivity scan")
    lat = d.lattice
    im = lat._imatrix
    coeffs = _int_coeffs(d)
    n = lat.n
    full = tuple(coeffs)
    for a in itertools.product(*(range(c + 1) for c in coeffs)):
        if a == full or not any(a):
            continue
        ok = True
        for j in range(n):
            if coeffs[j] - a[j] > 0:
                s = 0
                for i in range(n):
                    ai = a[i]
                    if ai:
                        s += ai * im[i][j]
                if s > 0:
                    ok = False
                    break
        if ok:
            part_a = Divisor(lat, (Fraction(x) for x in a))
            part_b = d - part_a
            return DecompositionWitness(part_a, part_b, intersect(part_a, part_b))
    return None


def is_chain_connected(d: Divisor, budget: int = DEFAULT_BUDGET) -> ChainConnectednessVerdict:
    """Decide chain-connectivity with a certificate either way.

    Greedy chain growth from the smallest prime component; a stall is
    returned as the refuting decomposition. A completed chain settles
    the verdict on lattices with non-negative off-diagonal pairings;
    otherwise the exhaustive scan confirms it.
    """
    if not (d.is_effective and d.is_integral) or d.is_zero:
        raise PreconditionError("chain-connectivity needs an integral effective nonzero divisor")
    lat = d.lattice
    start = lat.prime_divisor(d.support()[0])
    result = connecting_chain(start, d)
    if isinstance(result, DecompositionWitness):
        return ChainConnectednessVerdict(False, witness=result)
    if _offdiag_nonnegative(lat, d.support()):
        return ChainConnectednessVerdict(True, chain=result)
    witness = _find_nef_witness(d, budget)
    if witness is not None:
        return ChainConnectednessVerdict(False, witness=witness, exhaustive=True)
    return ChainConnectednessVerdict(True, chain=result, exhaustive=True)


@dataclass(frozen=True)
class NumericalConnectednessVerdict:
    holds: bool
    m: Fraction
    strict: bool
    vacuous: bool = False
    minimum: Fraction | None = None
    witness: DecompositionWitness | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_m_connected(
    d: Divisor,
    m: Fraction | int | str,
    strict: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> NumericalConnectednessVerdict:
    """A.B >= m (or > m when strict) over every decomposition D = A + B.

    Divisors with fewer than two prime multiplicities admit no
    decomposition; the verdict is vacuously true and flagged. The
    returned witness attains the minimum product (first in lex order).
    """
    m = as_rational(m)
    if not (d.is_effective and d.is_integral):
        raise PreconditionError("m-connectivity needs an integral effective divisor")
    if d.coefficient_sum() < 2:
        return NumericalConnectednessVerdict(True, m=m, strict=strict, vacuous=True)
    _check_budget(d, budget, "m-connectivity scan")
    lat = d.lattice
    im = lat._imatrix
    den = lat._den
    coeffs = _int_coeffs(d)
    n = lat.n
    full = tuple(coeffs)
    best: int | None = None
    best_a: tuple[int, ...] | None = None
    for a in itertools.product(*(range(c + 1) for c in coeffs)):
        if a == full or not any(a):
            continue
        s = 0
        for i in range(n):
            ai = a[i]
            if ai:
                row = im[i]
                s += ai * sum(row[j] * (coeffs[j] - a[j]) for j in range(n))
        if best is None or s < best:
            best = s
            best_a = a
    assert best is not None and best_a is not None
    minimum = Fraction(best, den)
    part_a = Divisor(lat, (Fraction(x) for x in best_a))
    witness = DecompositionWitness(part_a, d - part_a, minimum)
    holds = minimum > m if strict else minimum >= m
    return NumericalConnectednessVerdict(
        holds, m=m, strict=strict, minimum=minimum, witness=witness
    )


def is_numerically_connected(d: Divisor, budget: int = DEFAULT_BUDGET) -> NumericalConnectednessVerdict:
    return is_m_connected(d, 0, strict=True, budget=budget)


def chain_connected_component(d: Divisor, budget: int = DEFAULT_BUDGET) -> Divisor:
    """Greatest chain-connected subdivisor of a divisor with connected support.

    Greedy growth from the reduced divisor; the result has full support
    and pairs non-positively with every prime of the remainder. On
    lattices with a negative off-diagonal entry the brute-force oracle
    is used instead.
    """
    if not (d.is_effective and d.is_integral) or d.is_zero:
        raise PreconditionError(
            "chain-connected component needs an integral effective nonzero divisor"
        )
    comps = support_components(d)
    if len(comps) != 1:
        names = " | ".join(
            ",".join(d.lattice.primes[i] for i in comp) for comp in comps
        )
        raise PreconditionError(
            f"chain-connected component needs connected support; components: {names}"
        )
    lat = d.lattice
    if not _offdiag_nonnegative(lat, d.support()):
        return brute_force_chain_connected_component(d, budget=budget)
    im = lat._imatrix
    n = lat.n
    target = _int_coeffs(d)
    g = [1 if c else 0 for c in target]
    while True:
        pick = -1
        for j in range(n):
            if g[j] >= target[j]:
                continue
            s = 0
            for i in range(n):
                gi = g[i]
                if gi:
                    s += gi * im[i][j]
            if s > 0:
                pick = j
                break
        if pick < 0:
            break
        g[pick] += 1
    return Divisor(lat, (Fraction(x) for x in g))


@dataclass(frozen=True)
class ZPositivityVerdict:
    """Certificate-bearing verdict for Z-positivity.

    True comes with the connecting chain from the round-up of the nef
    part (empty when they already agree). False carries either the
    blocking divisor B = D itself (vanishing nef part, D negative
    definite) or the stalled chain pair; witness_negdef records whether
    the stalled remainder has negative definite support.
    """

    holds: bool
    chain: ConnectingChain | None = None
    blocking: Divisor | None = None
    witness: DecompositionWitness | None = None
    witness_negdef: bool | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_z_positive(d: Divisor) -> ZPositivityVerdict:
    """No effective divisor B with negative definite support has B - D
    nef over B. Decided through the connecting chain from the round-up
    of the Zariski nef part."""
    if not (d.is_effective and d.is_integral) or d.is_zero:
        raise PreconditionError("Z-positivity needs an integral effective nonzero divisor")
    pair = zariski_decompose(d)
    if pair.P.is_zero:
        return ZPositivityVerdict(False, blocking=d)
    start = roundup(pair.P)
    result = connecting_chain(start, d)
    if isinstance(result, ConnectingChain):
        return ZPositivityVerdict(True, chain=result)
    from .lattice import definiteness

    negdef = bool(definiteness(d.lattice, result.b.support(), "negdef"))
    return ZPositivityVerdict(False, witness=result, witness_negdef=negdef)


# --- brute-force oracles ---

def brute_force_chain_connected(
    d: Divisor,
    budget: int = DEFAULT_BUDGET,
    cache: dict | None = None,
) -> bool:
    """Definitional check: scan every decomposition for -A nef over B."""
    if not (d.is_effective and d.is_integral) or d.is_zero:
        raise PreconditionError("chain-connectivity needs an integral effective nonzero divisor")
    key = d.coeffs if cache is not None else None
    if cache is not None and key in cache:
        return cache[key]
    value = _find_nef_witness(d, budget) is None
    if cache is not None:
        cache[key] = value
    return value


def _subdivisors(d: Divisor):
    coeffs = _int_coeffs(d)
    lat = d.lattice
    for a in itertools.product(*(range(c + 1) for c in coeffs)):
        if any(a):
            yield Divisor(lat, (Fraction(x) for x in a))


def brute_force_chain_connected_component(
    d: Divisor,
    budget: int = DEFAULT_BUDGET,
    cache: dict | None = None,
) -> Divisor:
    """Greatest chain-connected subdivisor by exhaustive enumeration.

    Every chain-connected subdivisor must be dominated by the maximal
    one found, otherwise no greatest element exists and a ModelError is
    raised (cannot happen for curves on a surface).
    """
    _check_budget(d, budget, "subdivisor enumeration")
    best: Divisor | None = None
    connected = []
    for e in _subdivisors(d):
        if brute_force_chain_connected(e, budget=budget, cache=cache):
            connected.append(e)
            if best is None or (best <= e):
                best = e
    if best is None:
        raise ModelError("no chain-connected subdivisor found")
    for e in connected:
        if not (e <= best):
            raise ModelError(
                "chain-connected subdivisors admit no greatest element on this lattice"
            )
    return best
