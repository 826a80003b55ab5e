"""Exact intersection lattices and divisors.

An IntersectionLattice fixes an ordered basis of prime-divisor symbols
together with their pairwise intersection numbers, held as arbitrary
precision rationals (fractions.Fraction). A Divisor is a rational
coefficient vector bound to one lattice; operations across different
lattices are rejected rather than coerced. No floating point enters
anywhere in this package.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Literal, Sequence

from . import linalg
from .errors import (
    LatticeError,
    LatticeMismatchError,
    ParseError,
    PreconditionError,
)

Rational = Fraction


def as_rational(value: int | str | Fraction) -> Fraction:
    """Coerce an int, Fraction or normalized "p/q" string. Floats are refused."""
    if isinstance(value, bool):
        raise LatticeError(f"not a rational value: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if re.fullmatch(r"-?\d+(/\d+)?", text):
            try:
                return Fraction(text)
            except ZeroDivisionError:
                raise LatticeError(f"not a rational value: {value!r} (zero denominator)") from None
        raise LatticeError(f"not a rational value: {value!r} (expected integer or 'p/q')")
    raise LatticeError(
        f"not a rational value: {value!r} (floats are not accepted, use 'p/q' strings)"
    )


def rational_str(q: Fraction) -> str:
    """Normalized serialization: bare integer, else 'p/q' with q > 0 and gcd(p,q)=1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_json(q: Fraction) -> int | str:
    """JSON form: int when integral, else the normalized 'p/q' string."""
    if q.denominator == 1:
        return q.numerator
    return rational_str(q)


class IntersectionLattice:
    """Ordered prime symbols with a symmetric rational pairing matrix.

    Optional per-prime data: arithmetic genus and canonical degrees
    (pairing of each prime with the canonical class). When the lattice is
    flagged smooth and both vectors are present, the adjunction relation
    canonical[i] + matrix[i][i] = 2*genus[i] - 2 is enforced; on lattices
    not flagged smooth both vectors are stored as user-asserted data.
    """

    __slots__ = ("name", "primes", "matrix", "genus", "canonical", "smooth",
                 "_index", "_den", "_imatrix", "_hash")

    def __init__(
        self,
        primes: Sequence[str],
        matrix: Sequence[Sequence[int | str | Fraction]],
        *,
        genus: Sequence[int | str | Fraction] | None = None,
        canonical: Sequence[int | str | Fraction] | None = None,
        smooth: bool = False,
        name: str = "",
    ):
        primes = tuple(primes)
        n = len(primes)
        if n == 0:
            raise LatticeError("a lattice needs at least one prime")
        for p in primes:
            if not isinstance(p, str) or not p:
                raise LatticeError(f"prime names must be nonempty strings, got {p!r}")
        if len(set(primes)) != n:
            dupes = sorted({p for p in primes if primes.count(p) > 1})
            raise LatticeError(f"duplicate prime names: {', '.join(dupes)}")
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise LatticeError(f"matrix must be {n}x{n} to match the prime list")
        rows = tuple(tuple(as_rational(v) for v in row) for row in matrix)
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise LatticeError(
                        f"matrix is not symmetric at ({primes[i]}, {primes[j]}): "
                        f"{rational_str(rows[i][j])} vs {rational_str(rows[j][i])}"
                    )
        gen = None
        if genus is not None:
            if len(genus) != n:
                raise LatticeError("genus vector length must match the prime count")
            gen = tuple(as_rational(v) for v in genus)
            for p, g in zip(primes, gen):
                if g < 0:
                    raise LatticeError(f"genus of {p} is negative: {rational_str(g)}")
        can = None
        if canonical is not None:
            if len(canonical) != n:
                raise LatticeError("canonical vector length must match the prime count")
            can = tuple(as_rational(v) for v in canonical)
        if smooth and gen is not None and can is not None:
            for i in range(n):
                if can[i] + rows[i][i] != 2 * gen[i] - 2:
                    raise LatticeError(
                        f"adjunction fails at {primes[i]}: "
                        f"K.C + C^2 = {rational_str(can[i] + rows[i][i])} "
                        f"but 2g - 2 = {rational_str(2 * gen[i] - 2)}"
                    )
        self.name = name or f"<lattice {','.join(primes)}>"
        self.primes = primes
        self.matrix = rows
        self.genus = gen
        self.canonical = can
        self.smooth = bool(smooth)
        self._index = {p: i for i, p in enumerate(primes)}
        # integer-scaled copy of the matrix for hot loops
        den = 1
        for row in rows:
            for v in row:
                den = den * v.denominator // math.gcd(den, v.denominator)
        self._den = den
        self._imatrix = tuple(
            tuple(int(v * den) for v in row) for row in rows
        )
        self._hash = hash((primes, rows, gen, can, self.smooth))

    @property
    def n(self) -> int:
        return len(self.primes)

    def index(self, prime: str) -> int:
        try:
            return self._index[prime]
        except KeyError:
            raise LatticeError(f"unknown prime {prime!r} in {self.name}") from None

    def pairing(self, i: int, j: int) -> Fraction:
        return self.matrix[i][j]

    def prime_divisor(self, prime: str | int) -> "Divisor":
        i = prime if isinstance(prime, int) else self.index(prime)
        coeffs = [Fraction(0)] * self.n
        coeffs[i] = Fraction(1)
        return Divisor(self, coeffs)

    def zero(self) -> "Divisor":
        return Divisor(self, [Fraction(0)] * self.n)

    def divisor(self, coeffs: Sequence[int | str | Fraction]) -> "Divisor":
        if len(coeffs) != self.n:
            raise LatticeError(
                f"coefficient vector length {len(coeffs)} does not match {self.name}"
            )
        return Divisor(self, [as_rational(c) for c in coeffs])

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, IntersectionLattice):
            return NotImplemented
        return (
            self.primes == other.primes
            and self.matrix == other.matrix
            and self.genus == other.genus
            and self.canonical == other.canonical
            and self.smooth == other.smooth
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"IntersectionLattice({self.name}, n={self.n})"


def same_lattice(a: IntersectionLattice, b: IntersectionLattice) -> bool:
    return a is b or a == b


def _require_same_lattice(a: "Divisor", b: "Divisor", op: str) -> None:
    if not same_lattice(a.lattice, b.lattice):
        raise LatticeMismatchError(
            f"{op} across different lattices: {a.lattice.name} vs {b.lattice.name}"
        )


class Divisor:
    """Immutable rational coefficient vector bound to one lattice."""

    __slots__ = ("lattice", "coeffs")

    def __init__(self, lattice: IntersectionLattice, coeffs: Iterable[Fraction]):
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        if len(self.coeffs) != lattice.n:
            raise LatticeError("coefficient count does not match the lattice")

    def __setattr__(self, *args):
        raise AttributeError("Divisor is immutable")

    def coefficient(self, prime: str | int) -> Fraction:
        i = prime if isinstance(prime, int) else self.lattice.index(prime)
        return self.coeffs[i]

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c != 0)

    def support_primes(self) -> tuple[str, ...]:
        return tuple(self.lattice.primes[i] for i in self.support())

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def coefficient_sum(self) -> Fraction:
        return sum(self.coeffs, Fraction(0))

    def __add__(self, other: "Divisor") -> "Divisor":
        _require_same_lattice(self, other, "addition")
        return Divisor(self.lattice, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Divisor") -> "Divisor":
        _require_same_lattice(self, other, "subtraction")
        return Divisor(self.lattice, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Divisor":
        return Divisor(self.lattice, (-a for a in self.coeffs))

    def __rmul__(self, scalar) -> "Divisor":
        s = as_rational(scalar)
        return Divisor(self.lattice, (s * a for a in self.coeffs))

    __mul__ = __rmul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Divisor):
            return NotImplemented
        return same_lattice(self.lattice, other.lattice) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.lattice._hash, self.coeffs))

    # coefficientwise partial order
    def __le__(self, other: "Divisor") -> bool:
        _require_same_lattice(self, other, "comparison")
        return all(a <= b for a, b in zip(self.coeffs, other.coeffs))

    def __ge__(self, other: "Divisor") -> bool:
        _require_same_lattice(self, other, "comparison")
        return all(a >= b for a, b in zip(self.coeffs, other.coeffs))

    def __lt__(self, other: "Divisor") -> bool:
        return self <= other and self.coeffs != other.coeffs

    def __gt__(self, other: "Divisor") -> bool:
        return self >= other and self.coeffs != other.coeffs

    def __repr__(self) -> str:
        return f"Divisor({format_divisor(self)!r})"

    def __str__(self) -> str:
        return format_divisor(self)


def intersect(a: Divisor, b: Divisor) -> Fraction:
    """Intersection pairing a.b, exact."""
    _require_same_lattice(a, b, "intersection")
    m = a.lattice.matrix
    total = Fraction(0)
    for i in a.support():
        ci = a.coeffs[i]
        row = m[i]
        for j in b.support():
            total += ci * row[j] * b.coeffs[j]
    return total


def selfint(a: Divisor) -> Fraction:
    return intersect(a, a)


def is_nef(d: Divisor, over: Sequence[int] | None = None) -> bool:
    """d.C_i >= 0 for i in `over` (default: every prime of the lattice)."""
    indices = range(d.lattice.n) if over is None else over
    m = d.lattice.matrix
    supp = d.support()
    for j in indices:
        total = Fraction(0)
        for i in supp:
            total += d.coeffs[i] * m[i][j]
        if total < 0:
            return False
    return True


def nef_over(d: Divisor, b: Divisor) -> bool:
    """d.C >= 0 for every prime C in the support of b (b effective, nonzero)."""
    _require_same_lattice(d, b, "nef_over")
    if not b.is_effective or b.is_zero:
        raise PreconditionError("nef_over needs an effective nonzero comparison divisor")
    return is_nef(d, over=b.support())


def roundup(d: Divisor) -> Divisor:
    return Divisor(d.lattice, (Fraction(math.ceil(c)) for c in d.coeffs))


def rounddown(d: Divisor) -> Divisor:
    return Divisor(d.lattice, (Fraction(math.floor(c)) for c in d.coeffs))


@dataclass(frozen=True)
class DefinitenessVerdict:
    holds: bool
    vacuous: bool = False

    def __bool__(self) -> bool:
        return self.holds


DefinitenessMode = Literal["negdef", "negsemidef"]


def definiteness(
    lattice: IntersectionLattice,
    primes: Sequence[int | str],
    mode: DefinitenessMode,
) -> DefinitenessVerdict:
    """Exact negative (semi)definiteness of the pairing restricted to `primes`.

    negdef uses Sylvester's criterion on leading principal minors;
    negsemidef checks every principal minor of order k for sign (-1)^k
    or zero. The empty set is vacuously negative definite; the verdict
    flags that case.
    """
    if mode not in ("negdef", "negsemidef"):
        raise PreconditionError(f"unknown definiteness mode {mode!r}")
    idx = sorted({p if isinstance(p, int) else lattice.index(p) for p in primes})
    for i in idx:
        if not 0 <= i < lattice.n:
            raise LatticeError(f"prime index {i} out of range for {lattice.name}")
    if not idx:
        return DefinitenessVerdict(True, vacuous=True)
    m = lattice.matrix
    if mode == "negdef":
        for k in range(1, len(idx) + 1):
            lead = idx[:k]
            minor = linalg.det([[m[i][j] for j in lead] for i in lead])
            if (-1) ** k * minor <= 0:
                return DefinitenessVerdict(False)
        return DefinitenessVerdict(True)
    for k in range(1, len(idx) + 1):
        for sub in itertools.combinations(idx, k):
            minor = linalg.det([[m[i][j] for j in sub] for i in sub])
            if (-1) ** k * minor < 0:
                return DefinitenessVerdict(False)
    return DefinitenessVerdict(True)


# --- cluster data (incidence of a zero-dimensional subscheme with the primes) ---

SingClass = Literal["smooth", "duval", "logterminal", "nonlt"]
SING_CLASSES = ("smooth", "duval", "logterminal", "nonlt")


@dataclass(frozen=True)
class Cluster:
    """A marked point or cluster: which primes pass through it, plus
    user-asserted singularity class and optional invariant overrides."""

    name: str
    meets: tuple[str, ...]
    singclass: str | None = None
    tau_override: Fraction | None = None
    delta_override: Fraction | None = None

    def __post_init__(self):
        if self.singclass is not None and self.singclass not in SING_CLASSES:
            raise PreconditionError(
                f"unknown singularity class {self.singclass!r}; "
                f"expected one of {', '.join(SING_CLASSES)}"
            )

    def incidence(self, lattice: IntersectionLattice) -> tuple[bool, ...]:
        flags = [False] * lattice.n
        for p in self.meets:
            flags[lattice.index(p)] = True
        return tuple(flags)

    def meets_divisor(self, d: Divisor) -> bool:
        """True when some prime through the cluster has positive coefficient in d."""
        inc = self.incidence(d.lattice)
        return any(inc[i] and d.coeffs[i] > 0 for i in range(d.lattice.n))


# --- divisor expression parser / printer ---

_TOKEN = re.compile(r"(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_']*)|(?P<op>[-+*/])|(?P<bad>\S)")


def _tokenize(text: str):
    tokens = []
    for match in _TOKEN.finditer(text):
        kind = match.lastgroup
        pos = match.start() + 1  # 1-based positions in messages
        if kind == "bad":
            raise ParseError(f"unexpected character {match.group()!r}", position=pos)
        tokens.append((kind, match.group(), pos))
    return tokens


def parse_divisor(text: str, lattice: IntersectionLattice) -> Divisor:
    """Parse a divisor expression like "2C1 + 2C2" or "1/3 C3 - C1".

    Terms are [sign] [coefficient ["*"]] prime, whitespace-insensitive,
    coefficients integers or p/q. A bare "0" denotes the zero divisor.
    Unknown primes and malformed input raise ParseError with a 1-based
    character position.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty divisor expression", position=1)
    coeffs = [Fraction(0)] * lattice.n
    k = 0

    def peek(kind):
        return k < len(tokens) and tokens[k][0] == kind

    first = True
    while k < len(tokens):
        sign = Fraction(1)
        if tokens[k][0] == "op" and tokens[k][1] in "+-":
            if tokens[k][1] == "-":
                sign = Fraction(-1)
            k += 1
        elif not first:
            raise ParseError(
                f"expected '+' or '-' before {tokens[k][1]!r}", position=tokens[k][2]
            )
        first = False
        if k >= len(tokens):
            raise ParseError("dangling sign at end of expression",
                             position=tokens[-1][2])
        coef = None
        if peek("num"):
            num = int(tokens[k][1])
            num_pos = tokens[k][2]
            k += 1
            if peek("op") and tokens[k][1] == "/":
                k += 1
                if not peek("num"):
                    where = tokens[k][2] if k < len(tokens) else num_pos
                    raise ParseError("expected a denominator after '/'", position=where)
                den = int(tokens[k][1])
                if den == 0:
                    raise ParseError("zero denominator", position=tokens[k][2])
                k += 1
                coef = Fraction(num, den)
            else:
                coef = Fraction(num)
            if peek("op") and tokens[k][1] == "*":
                k += 1
        if peek("name"):
            name = tokens[k][1]
            pos = tokens[k][2]
            if name not in lattice._index:
                raise ParseError(f"unknown prime {name!r}", position=pos)
            coeffs[lattice.index(name)] += sign * (coef if coef is not None else 1)
            k += 1
        elif coef is not None:
            if coef != 0:
                raise ParseError(
                    "a bare number is only allowed as the zero divisor '0'",
                    position=num_pos,
                )
        else:
            raise ParseError(
                f"expected a term, found {tokens[k][1]!r}", position=tokens[k][2]
            )
    return Divisor(lattice, coeffs)


def format_divisor(d: Divisor) -> str:
    """Canonical text form; parse_divisor(format_divisor(d)) == d."""
    parts: list[str] = []
    for i, c in enumerate(d.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if mag == 1:
            term = d.lattice.primes[i]
        elif mag.denominator == 1:
            term = f"{mag.numerator}{d.lattice.primes[i]}"
        else:
            term = f"{rational_str(mag)} {d.lattice.primes[i]}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f" + {term}" if c > 0 else f" - {term}")
    return "".join(parts) if parts else "0"
