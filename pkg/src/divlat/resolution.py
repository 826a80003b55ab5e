"""Resolutions of normal surface singularities as a pair of lattices.

A ResolutionModel relates a smooth upstairs lattice (the resolution,
with genus data) to a downstairs lattice via a set of exceptional
primes and a proper-transform map. Divisors move up through the
Mumford pull-back, the unique rational extension orthogonal to every
exceptional prime, and down by dropping the exceptional coefficients.

The numerical singularity data lives here too: the anti-canonical
cycle, the fundamental cycle, the per-class default cycle choice, and
the delta invariant measuring how far the chosen cycle exceeds the
anti-canonical one.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import (
    LatticeError,
    MissingDataError,
    ModelError,
    PreconditionError,
)
from .lattice import (
    Cluster,
    Divisor,
    IntersectionLattice,
    definiteness,
    intersect,
    rounddown,
    roundup,
    same_lattice,
    selfint,
)

_LAUFER_CAP = 100_000


class ResolutionModel:
    """Upstairs/downstairs lattice pair with exceptional set and transform map.

    Validated at construction: the exceptional primes and the transform
    image partition the upstairs primes, the exceptional Gram matrix is
    negative definite, and pull-backs of downstairs primes reproduce the
    downstairs pairing (projection formula).
    """

    __slots__ = ("upstairs", "downstairs", "exceptional", "transform", "name",
                 "_exc_set", "_gram", "_canonical_deg")

    def __init__(
        self,
        upstairs: IntersectionLattice,
        downstairs: IntersectionLattice,
        exceptional: Sequence[str],
        transform: dict[str, str],
        name: str = "",
    ):
        if not upstairs.smooth:
            raise LatticeError("the upstairs lattice must be flagged smooth")
        if upstairs.genus is None:
            raise MissingDataError("the upstairs lattice needs genus data")
        exc = tuple(upstairs.index(p) for p in exceptional)
        if len(set(exc)) != len(exc):
            raise LatticeError("duplicate exceptional primes")
        if set(transform.keys()) != set(downstairs.primes):
            raise LatticeError("transform map must cover exactly the downstairs primes")
        images = [upstairs.index(transform[p]) for p in downstairs.primes]
        if len(set(images)) != len(images):
            raise LatticeError("transform map must be injective")
        if set(images) & set(exc):
            both = sorted(
                upstairs.primes[i] for i in set(images) & set(exc)
            )
            raise LatticeError(
                f"primes cannot be both exceptional and transforms: {', '.join(both)}"
            )
        if set(images) | set(exc) != set(range(upstairs.n)):
            missing = sorted(
                upstairs.primes[i]
                for i in set(range(upstairs.n)) - set(images) - set(exc)
            )
            raise LatticeError(
                f"upstairs primes not covered by exceptional set or transforms: "
                f"{', '.join(missing)}"
            )
        self.upstairs = upstairs
        self.downstairs = downstairs
        self.exceptional = exc
        self.transform = tuple(images)
        self.name = name or f"<resolution {upstairs.name} -> {downstairs.name}>"
        self._exc_set = frozenset(exc)
        self._gram = [
            [upstairs.matrix[i][j] for j in exc] for i in exc
        ]
        if exc and not definiteness(upstairs, exc, "negdef"):
            raise ModelError("exceptional pairing matrix is not negative definite")
        g = upstairs.genus
        self._canonical_deg = tuple(
            2 * g[i] - 2 - upstairs.matrix[i][i] for i in range(upstairs.n)
        )
        for i, down_prime in enumerate(downstairs.primes):
            pi = mumford_pullback(self, downstairs.prime_divisor(i))
            for j in range(i, downstairs.n):
                pj = mumford_pullback(self, downstairs.prime_divisor(j))
                up = intersect(pi, pj)
                if up != downstairs.matrix[i][j]:
                    raise ModelError(
                        f"projection formula fails on ({down_prime}, {downstairs.primes[j]}): "
                        f"pull-back pairing {up} vs downstairs {downstairs.matrix[i][j]}"
                    )

    def exceptional_primes(self) -> tuple[str, ...]:
        return tuple(self.upstairs.primes[i] for i in self.exceptional)

    def is_exceptional(self, upstairs_index: int) -> bool:
        return upstairs_index in self._exc_set

    def canonical_degree(self, upstairs_index: int) -> Fraction:
        """K.C for an upstairs prime, from adjunction on the smooth model."""
        return self._canonical_deg[upstairs_index]

    def __repr__(self) -> str:
        return f"ResolutionModel({self.name})"


def _solve_exceptional(model: ResolutionModel, rhs: list[Fraction]) -> list[Fraction]:
    sol = linalg.solve(model._gram, rhs)
    if sol is None:
        raise ModelError("exceptional Gram matrix is singular")
    return sol


def derive_downstairs_matrix(
    upstairs: IntersectionLattice,
    exceptional: Sequence[str],
    transform: dict[str, str],
    downstairs_primes: Sequence[str],
) -> list[list[Fraction]]:
    """Compute the downstairs pairing matrix forced by the projection
    formula: pairings of the exceptional-orthogonal lifts of the
    transform primes. The exceptional set must be negative definite."""
    exc = [upstairs.index(p) for p in exceptional]
    if exc and not definiteness(upstairs, exc, "negdef"):
        raise ModelError("exceptional pairing matrix is not negative definite")
    gram = [[upstairs.matrix[i][j] for j in exc] for i in exc]
    lifts = []
    for p in downstairs_primes:
        t = upstairs.index(transform[p])
        coeffs = [Fraction(0)] * upstairs.n
        coeffs[t] = Fraction(1)
        if exc:
            rhs = [-upstairs.matrix[t][j] for j in exc]
            sol = linalg.solve(gram, rhs)
            if sol is None:
                raise ModelError("exceptional Gram matrix is singular")
            for idx, j in enumerate(exc):
                coeffs[j] = sol[idx]
        lifts.append(Divisor(upstairs, coeffs))
    return [[intersect(a, b) for b in lifts] for a in lifts]


def mumford_pullback(model: ResolutionModel, d: Divisor) -> Divisor:
    """Pull a downstairs divisor back: proper transform plus the unique
    rational exceptional correction orthogonal to every exceptional prime."""
    if not same_lattice(d.lattice, model.downstairs):
        raise PreconditionError(
            f"pull-back input must live on {model.downstairs.name}, got {d.lattice.name}"
        )
    up = model.upstairs
    coeffs = [Fraction(0)] * up.n
    for i, c in enumerate(d.coeffs):
        coeffs[model.transform[i]] = c
    hat = Divisor(up, coeffs)
    if not model.exceptional:
        return hat
    rhs = [
        -intersect(hat, up.prime_divisor(j)) for j in model.exceptional
    ]
    sol = _solve_exceptional(model, rhs)
    for idx, j in enumerate(model.exceptional):
        coeffs[j] = sol[idx]
    return Divisor(up, coeffs)


def pushforward(model: ResolutionModel, d: Divisor) -> Divisor:
    """Drop exceptional coefficients, mapping transforms back down."""
    if not same_lattice(d.lattice, model.upstairs):
        raise PreconditionError(
            f"push-forward input must live on {model.upstairs.name}, got {d.lattice.name}"
        )
    return Divisor(
        model.downstairs, (d.coeffs[model.transform[i]] for i in range(model.downstairs.n))
    )


def anticanonical_cycle(model: ResolutionModel) -> Divisor:
    """The exceptional cycle A with A.E = -K.E for every exceptional prime E."""
    up = model.upstairs
    if not model.exceptional:
        return up.zero()
    rhs = [-model.canonical_degree(j) for j in model.exceptional]
    sol = _solve_exceptional(model, rhs)
    coeffs = [Fraction(0)] * up.n
    for idx, j in enumerate(model.exceptional):
        coeffs[j] = sol[idx]
    return Divisor(up, coeffs)


def _exceptional_connected(model: ResolutionModel) -> bool:
    exc = list(model.exceptional)
    if not exc:
        return False
    up = model.upstairs
    seen = {exc[0]}
    frontier = [exc[0]]
    while frontier:
        i = frontier.pop()
        for j in exc:
            if j not in seen and up.matrix[i][j] != 0:
                seen.add(j)
                frontier.append(j)
    return len(seen) == len(exc)


def fundamental_cycle(model: ResolutionModel) -> Divisor:
    """Smallest integral cycle Z > 0 with full exceptional support and
    Z.E <= 0 for every exceptional prime, by the incremental construction:
    start from the reduced exceptional divisor and repeatedly add the
    first prime the cycle still meets positively."""
    if not model.exceptional:
        raise PreconditionError("fundamental cycle needs a nonempty exceptional set")
    if not _exceptional_connected(model):
        raise PreconditionError("fundamental cycle needs a connected exceptional set")
    up = model.upstairs
    coeffs = [Fraction(0)] * up.n
    for j in model.exceptional:
        coeffs[j] = Fraction(1)
    z = Divisor(up, coeffs)
    for _ in range(_LAUFER_CAP):
        bump = None
        for j in model.exceptional:
            if intersect(z, up.prime_divisor(j)) > 0:
                bump = j
                break
        if bump is None:
            return z
        z = z + up.prime_divisor(bump)
    raise ModelError("fundamental cycle construction did not terminate")


def default_cycle(model: ResolutionModel, singclass: str) -> Divisor:
    """Class-appropriate cycle choice, with class/model consistency checks.

    smooth: the single (-1)-curve; duval: the fundamental cycle (the
    anti-canonical cycle must vanish); logterminal: round-up of the
    anti-canonical cycle (coefficients in [0, 1), not all zero);
    nonlt: round-down of the anti-canonical cycle (must be nonzero).
    """
    up = model.upstairs
    if singclass == "smooth":
        if len(model.exceptional) != 1:
            raise ModelError(
                "smooth blow-up model must have exactly one exceptional prime"
            )
        j = model.exceptional[0]
        if up.matrix[j][j] != -1 or up.genus[j] != 0:
            raise ModelError(
                "smooth blow-up model needs a genus-0 exceptional prime of square -1"
            )
        return up.prime_divisor(j)
    delta_cycle = anticanonical_cycle(model)
    if singclass == "duval":
        if not delta_cycle.is_zero:
            raise ModelError(
                "Du Val model check failed: anti-canonical cycle is nonzero"
            )
        return fundamental_cycle(model)
    if singclass == "logterminal":
        if delta_cycle.is_zero:
            raise ModelError(
                "log terminal (non Du Val) model check failed: anti-canonical cycle vanishes"
            )
        if not delta_cycle.is_effective or any(
            delta_cycle.coeffs[j] >= 1 for j in model.exceptional
        ):
            raise ModelError(
                "log terminal model check failed: anti-canonical cycle coefficients "
                "must lie in [0, 1)"
            )
        return roundup(delta_cycle)
    if singclass == "nonlt":
        z = rounddown(delta_cycle)
        if not delta_cycle.is_effective or z.is_zero or not z.is_effective:
            raise ModelError(
                "non log terminal model check failed: anti-canonical cycle needs "
                "a coefficient >= 1"
            )
        return z
    raise PreconditionError(f"unknown singularity class {singclass!r}")


@dataclass(frozen=True)
class DeltaReport:
    """Delta invariant of a cycle choice relative to the anti-canonical cycle.

    delta = 0 exactly when Delta - Z is effective, else -(Delta - Z)^2,
    which is positive since the difference is supported on the negative
    definite exceptional set. cond_e records, when a downstairs divisor
    was supplied, whether its pull-back plus Delta minus Z is effective.
    """

    Delta: Divisor
    Z: Divisor
    delta: Fraction
    cond_e: bool | None = None
    cluster: Cluster | None = None

    def __post_init__(self):
        diff = self.Delta - self.Z
        if diff.is_effective:
            if self.delta != 0:
                raise ModelError("delta must vanish when Delta - Z is effective")
        else:
            expected = -selfint(diff)
            if self.delta != expected or self.delta <= 0:
                raise ModelError("delta must equal -(Delta - Z)^2 > 0")


def delta_invariant(
    model: ResolutionModel,
    z: Divisor,
    divisor: Divisor | None = None,
    cluster: Cluster | None = None,
) -> DeltaReport:
    """Delta of the pair (resolution, Z), optionally with the effectivity
    condition for a downstairs divisor. The cluster, when given, records
    the caller's assertion that Z dominates it; nothing is computed from it."""
    if not same_lattice(z.lattice, model.upstairs):
        raise PreconditionError("Z must live on the upstairs lattice")
    if not (z.is_integral and z.is_effective) or z.is_zero:
        raise PreconditionError("Z must be integral, effective and nonzero")
    if any(not model.is_exceptional(j) for j in z.support()):
        raise PreconditionError("Z must be supported on the exceptional primes")
    delta_cycle = anticanonical_cycle(model)
    diff = delta_cycle - z
    value = Fraction(0) if diff.is_effective else -selfint(diff)
    cond_e = None
    if divisor is not None:
        pulled = mumford_pullback(model, divisor)
        cond_e = (pulled + diff).is_effective
    return DeltaReport(delta_cycle, z, value, cond_e=cond_e, cluster=cluster)
