"""Numerical criterion evaluators for adjoint linear systems.

Every evaluator returns a CriterionReport: labeled hypothesis rows, a
verdict, optional decomposition witnesses, and citation tags naming the
criterion applied. Hypothesis statuses are "holds" or "fails" when the
row was checked numerically and "asserted" when it rests on
user-supplied facts the lattice cannot see (linear system dimensions,
cohomology data, box-limited searches). A report with any asserted row
never reaches the verdict "holds" unless the caller acknowledged the
assertions; acknowledgment is recorded on the report.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .connectivity import (
    DEFAULT_BUDGET,
    DecompositionWitness,
    decomposition_count,
    enumerate_decompositions,
)
from .errors import (
    BudgetError,
    DivlatError,
    MissingDataError,
    ModelError,
    PreconditionError,
)
from .lattice import (
    Cluster,
    Divisor,
    IntersectionLattice,
    as_rational,
    definiteness,
    rational_str,
    selfint,
)
from .zariski import is_big_effective

HOLDS = "holds"
FAILS = "fails"
ASSERTED = "asserted"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CohomologyInputs:
    """User-asserted cohomological facts the lattice cannot compute.

    dim_linear_system: dimension of the relevant complete linear system;
    h1_nilpotent: dimension of the nilpotent part of H^1 of the structure
    sheaf under Frobenius; frobenius_injective: whether Frobenius acts
    injectively on H^1; tau: the tabulation override for the dimension
    correction term of a non-tabulated singularity class.
    """

    dim_linear_system: int | None = None
    h1_nilpotent: int | None = None
    frobenius_injective: bool | None = None
    tau: Fraction | None = None

    def __post_init__(self):
        for label in ("dim_linear_system", "h1_nilpotent"):
            v = getattr(self, label)
            if v is not None and (not isinstance(v, int) or v < 0):
                raise PreconditionError(f"{label} must be a non-negative integer")
        if self.tau is not None:
            object.__setattr__(self, "tau", as_rational(self.tau))


@dataclass(frozen=True)
class Hypothesis:
    label: str
    text: str
    status: str

    def __post_init__(self):
        if self.status not in (HOLDS, FAILS, ASSERTED):
            raise ModelError(f"bad hypothesis status {self.status!r}")


@dataclass(frozen=True)
class CriterionReport:
    criterion: str
    hypotheses: tuple[Hypothesis, ...]
    verdict: str
    witnesses: tuple[DecompositionWitness, ...] = ()
    citations: tuple[str, ...] = ()
    conclusion: str = ""
    notes: tuple[str, ...] = ()
    acknowledged: bool = False

    def __post_init__(self):
        if self.verdict not in (HOLDS, FAILS, INCONCLUSIVE):
            raise ModelError(f"bad verdict {self.verdict!r}")
        if self.verdict == HOLDS:
            if any(h.status == FAILS for h in self.hypotheses):
                raise ModelError("verdict holds despite a failed hypothesis")
            if any(h.status == ASSERTED for h in self.hypotheses) and not self.acknowledged:
                raise ModelError(
                    "verdict holds with unacknowledged asserted hypotheses"
                )

    def hypothesis(self, label: str) -> Hypothesis:
        for h in self.hypotheses:
            if h.label == label:
                return h
        raise KeyError(label)


def _row(label: str, text: str, ok: bool) -> Hypothesis:
    return Hypothesis(label, text, HOLDS if ok else FAILS)


def _asserted(label: str, text: str) -> Hypothesis:
    return Hypothesis(label, text, ASSERTED)


def _verdict_from(rows, acknowledged: bool, fail_verdict: str = FAILS) -> str:
    if any(r.status == FAILS for r in rows):
        return fail_verdict
    if any(r.status == ASSERTED for r in rows) and not acknowledged:
        return INCONCLUSIVE
    return HOLDS


def _qualify(conclusion: str, verdict: str) -> str:
    """State the conclusion plainly only when the verdict establishes it."""
    if verdict == HOLDS:
        return conclusion
    if verdict == FAILS:
        return f"not established: {conclusion} (a hypothesis fails)"
    return f"not established: {conclusion} (unresolved hypotheses remain)"


# --- the threshold function and its derived quantities ---

def mu(x: Fraction | int | str, d: Fraction | int | str) -> Fraction:
    """min{x,d} * (d/min{x,d} + 1)^2. Minimum value 4d, attained iff x >= d."""
    x = as_rational(x)
    d = as_rational(d)
    if x <= 0 or d <= 0:
        raise PreconditionError("mu needs positive arguments")
    m = min(x, d)
    return m * (d / m + 1) ** 2


@dataclass(frozen=True)
class QMinResult:
    """Outcome of the box-bounded search for the least positive square."""

    value: Fraction | None
    witness: Divisor | None
    box: int
    cluster: str | None = None
    searched: int = 0

    @property
    def found(self) -> bool:
        return self.value is not None


def q_min(
    lattice: IntersectionLattice,
    box: int,
    cluster: Cluster | None = None,
    budget: int = DEFAULT_BUDGET,
) -> QMinResult:
    """Least self-intersection among effective integral divisors with
    positive square and coefficients in [0, box], optionally restricted
    to divisors meeting the cluster. Returns an explicit none-found
    result when the box contains no positive square."""
    if not isinstance(box, int) or box < 1:
        raise PreconditionError("box must be a positive integer")
    n = lattice.n
    total = (box + 1) ** n
    if total > budget:
        raise BudgetError(
            f"q search needs {total} candidates, over the budget of {budget}",
            required=total,
            allowed=budget,
        )
    incidence = None
    if cluster is not None:
        incidence = cluster.incidence(lattice)
        if not any(incidence):
            raise PreconditionError(
                f"cluster {cluster.name!r} meets no prime of {lattice.name}"
            )
    im = lattice._imatrix
    den = lattice._den
    best: int | None = None
    best_a: tuple[int, ...] | None = None
    for a in itertools.product(range(box + 1), repeat=n):
        if not any(a):
            continue
        if incidence is not None and not any(
            a[i] and incidence[i] for i in range(n)
        ):
            continue
        s = 0
        for i in range(n):
            ai = a[i]
            if ai:
                row = im[i]
                s += ai * sum(row[j] * a[j] for j in range(n))
        if s > 0 and (best is None or s < best):
            best = s
            best_a = a
    if best is None:
        return QMinResult(None, None, box, cluster.name if cluster else None, total)
    witness = Divisor(lattice, (Fraction(v) for v in best_a))
    return QMinResult(
        Fraction(best, den), witness, box, cluster.name if cluster else None, total
    )


@dataclass(frozen=True)
class DeltaPrimeResult:
    value: Fraction
    equals_delta: bool


def delta_prime(q: Fraction | int | str, delta: Fraction | int | str) -> DeltaPrimeResult:
    """mu(q, delta/4); always >= delta, with equality iff q >= delta/4."""
    q = as_rational(q)
    delta = as_rational(delta)
    if q <= 0 or delta <= 0:
        raise PreconditionError("delta_prime needs positive q and delta")
    value = mu(q, delta / 4)
    return DeltaPrimeResult(value, value == delta)


# --- Reider-type obstruction search ---

def _side_condition_row(extras: CohomologyInputs) -> Hypothesis:
    if extras.frobenius_injective:
        text = "Frobenius acts injectively on H1 of the structure sheaf (user-asserted)"
    elif extras.h1_nilpotent == 0:
        text = "nilpotent part of H1 of the structure sheaf vanishes (user-asserted)"
    else:
        text = "one of the cohomological side conditions holds (user-asserted)"
    return _asserted("cohomology-side", text)


def reider_obstructions(
    d: Divisor,
    delta: Fraction | int | str,
    cluster: Cluster,
    mode: str = "I",
    extras: CohomologyInputs | None = None,
    cond_e: bool | None = None,
    q_box: int = 4,
    budget: int = DEFAULT_BUDGET,
    acknowledged: bool = False,
) -> CriterionReport:
    """Search for decompositions D = A + B obstructing surjectivity of the
    adjoint restriction map at the cluster.

    Mode I lists decompositions with both parts meeting the cluster and
    A.B <= delta/4. Mode II additionally requires B negative
    semi-definite, annotates whether A - B is big, and gates on the
    threshold D^2 > delta' computed from the box-bounded q search.
    An empty candidate space makes the conclusion unconditional.
    """
    delta = as_rational(delta)
    if delta < 0:
        raise PreconditionError("delta must be non-negative")
    if mode not in ("I", "II"):
        raise PreconditionError(f"unknown Reider mode {mode!r}")
    if not (d.is_effective and d.is_integral) or d.is_zero:
        raise PreconditionError("the divisor must be integral, effective and nonzero")
    extras = extras or CohomologyInputs()
    incidence = cluster.incidence(d.lattice)
    if not any(incidence):
        raise PreconditionError(
            f"cluster {cluster.name!r} meets no prime of {d.lattice.name}"
        )
    criterion = f"reider-obstructions-{mode}"
    citation = (
        "thm:adjoint-surjectivity-I" if mode == "I" else "thm:adjoint-surjectivity-II"
    )
    bound = delta / 4
    if decomposition_count(d) - 2 <= 0:
        # the search space is empty, so the side conditions never enter
        return CriterionReport(
            criterion,
            (),
            HOLDS,
            (),
            (citation,),
            "the restriction map is surjective: no decomposition of the divisor "
            "exists at all",
            ("no effective decompositions exist; the conclusion is unconditional",),
            acknowledged,
        )

    rows: list[Hypothesis] = []
    notes: list[str] = []
    if cond_e is None:
        rows.append(_asserted(
            "cond-e",
            "pull-back of D plus the anti-canonical cycle minus Z is effective "
            "(condition E, user-asserted)",
        ))
    else:
        rows.append(_row(
            "cond-e",
            "pull-back of D plus the anti-canonical cycle minus Z is effective (condition E)",
            cond_e,
        ))
    rows.append(_side_condition_row(extras))

    threshold_ok = True
    if mode == "II":
        q = q_min(d.lattice, q_box, cluster=cluster, budget=budget)
        rows.append(_asserted(
            "q-box",
            f"q restricted to the cluster was searched within coefficient box {q_box} "
            "(box-restricted)",
        ))
        dsq = selfint(d)
        if not q.found:
            rows.append(_asserted(
                "threshold",
                f"D^2 > delta' (no positive square found in box {q_box}, "
                "threshold not computable)",
            ))
            threshold_ok = False
        else:
            if delta == 0:
                dprime = Fraction(0)
                notes.append(
                    "delta = 0: delta' taken as 0 (limit value, mu needs positive degree)"
                )
            else:
                dprime = delta_prime(q.value, delta).value
            notes.append(f"q = {rational_str(q.value)} at {q.witness}")
            notes.append(f"delta' = {rational_str(dprime)}")
            ok = dsq > dprime
            rows.append(_row(
                "threshold",
                f"D^2 = {rational_str(dsq)} > delta' = {rational_str(dprime)}",
                ok,
            ))
            if not ok:
                threshold_ok = False
                if dsq == dprime and dprime > delta:
                    rows.append(_row(
                        "threshold-boundary",
                        f"D^2 = delta' = {rational_str(dprime)} > delta = "
                        f"{rational_str(delta)} (boundary case, pencil-type alternative)",
                        True,
                    ))

    witnesses = []
    for w in enumerate_decompositions(d, max_product=bound, budget=budget):
        if not (cluster.meets_divisor(w.a) and cluster.meets_divisor(w.b)):
            continue
        if mode == "II":
            if not definiteness(d.lattice, w.b.support(), "negsemidef"):
                continue
            diff = w.a - w.b
            if diff.is_effective and not diff.is_zero:
                try:
                    big = "yes" if is_big_effective(diff) else "no"
                except DivlatError:
                    big = "not checkable (no Zariski decomposition on this lattice)"
            elif diff.is_zero:
                big = "no"
            else:
                big = "not checkable (A - B not effective)"
            notes.append(
                f"witness A = {w.a}, B = {w.b}, A.B = {rational_str(w.product)}: "
                f"A - B big: {big}"
            )
        witnesses.append(w)

    if witnesses:
        verdict = INCONCLUSIVE
        conclusion = (
            "potential obstructions found: surjectivity is not forced by this criterion"
        )
    elif mode == "II" and not threshold_ok:
        verdict = INCONCLUSIVE
        conclusion = "threshold gate not met: the criterion does not apply"
    else:
        verdict = _verdict_from(rows, acknowledged, fail_verdict=INCONCLUSIVE)
        if verdict == HOLDS:
            conclusion = (
                "the restriction map is surjective: no obstructing decomposition exists"
            )
        elif any(r.status == FAILS for r in rows):
            conclusion = "a hypothesis fails: the criterion does not apply"
        else:
            conclusion = (
                "no obstructing decomposition exists, but asserted hypotheses were "
                "not acknowledged"
            )
    return CriterionReport(
        criterion, tuple(rows), verdict, tuple(witnesses), (citation,), conclusion,
        tuple(notes), acknowledged,
    )


# --- point invariants by singularity class ---

_DELTA_TAU = {"smooth": (Fraction(4), Fraction(3)), "duval": (Fraction(2), Fraction(1))}


def point_invariants(
    singclass: str,
    delta_override: Fraction | int | str | None = None,
    tau_override: Fraction | int | str | None = None,
) -> tuple[Fraction, Fraction | None]:
    """(delta_x, tau_x) by class: smooth (4, 3), duval (2, 1),
    logterminal (override in (0, 2), override), nonlt (0, override).
    tau may come back None when not required by the caller's rows."""
    if singclass in _DELTA_TAU:
        return _DELTA_TAU[singclass]
    if singclass == "logterminal":
        if delta_override is None:
            raise MissingDataError(
                "logterminal points need an explicit delta override in (0, 2)"
            )
        delta = as_rational(delta_override)
        if not 0 < delta < 2:
            raise PreconditionError(
                f"logterminal delta must lie in (0, 2), got {rational_str(delta)}"
            )
    elif singclass == "nonlt":
        delta = Fraction(0)
    else:
        raise PreconditionError(f"unknown singularity class {singclass!r}")
    tau = as_rational(tau_override) if tau_override is not None else None
    return delta, tau


def _dim_row(
    label: str,
    lhs_text: str,
    needed: Fraction,
    extras: CohomologyInputs,
) -> Hypothesis:
    if extras.dim_linear_system is None or extras.h1_nilpotent is None:
        return _asserted(
            label,
            f"{lhs_text} >= h1n + {rational_str(needed)} (dimension data not supplied)",
        )
    ok = extras.dim_linear_system >= extras.h1_nilpotent + needed
    return _row(
        label,
        f"{lhs_text} = {extras.dim_linear_system} >= h1n + {rational_str(needed)} "
        f"= {extras.h1_nilpotent + needed}",
        ok,
    )


def bpf_check(
    dsq: Fraction | int | str,
    db_min: Fraction | int | str,
    alpha: Fraction | int | str,
    beta: Fraction | int | str,
    singclass: str,
    extras: CohomologyInputs | None = None,
    delta_override: Fraction | int | str | None = None,
    tau_override: Fraction | int | str | None = None,
    acknowledged: bool = False,
) -> CriterionReport:
    """Base-point-freeness criterion for an adjoint system at a point of
    the given class: alpha >= delta_x, 4 beta (1 - beta/alpha) >= delta_x,
    D^2 > alpha, D.B >= beta for curves through the point, and the
    characteristic-p dimension condition dim|D| >= h1n + tau_x."""
    dsq = as_rational(dsq)
    db_min = as_rational(db_min)
    alpha = as_rational(alpha)
    beta = as_rational(beta)
    if alpha <= 0 or beta <= 0:
        raise PreconditionError("alpha and beta must be positive")
    extras = extras or CohomologyInputs()
    if tau_override is None:
        tau_override = extras.tau
    delta_x, tau_x = point_invariants(singclass, delta_override, tau_override)
    dims_given = (
        extras.dim_linear_system is not None and extras.h1_nilpotent is not None
    )
    if tau_x is None and singclass in ("logterminal", "nonlt") and dims_given:
        raise MissingDataError(
            f"{singclass} points need an explicit tau to evaluate the dimension condition"
        )
    rows = [
        _row(
            "alpha-delta",
            f"alpha = {rational_str(alpha)} >= delta_x = {rational_str(delta_x)}",
            alpha >= delta_x,
        ),
        _row(
            "beta-curve",
            f"4 beta (1 - beta/alpha) = {rational_str(4 * beta * (1 - beta / alpha))} "
            f">= delta_x = {rational_str(delta_x)}",
            4 * beta * (1 - beta / alpha) >= delta_x,
        ),
        _row(
            "dsq",
            f"D^2 = {rational_str(dsq)} > alpha = {rational_str(alpha)}",
            dsq > alpha,
        ),
        _row(
            "db",
            f"D.B = {rational_str(db_min)} >= beta = {rational_str(beta)} "
            "(minimum over curves through the point, user-supplied)",
            db_min >= beta,
        ),
    ]
    if tau_x is None:
        rows.append(_asserted(
            "dim",
            "dim|D| >= h1n + tau_x (tau and dimension data not supplied)",
        ))
    else:
        rows.append(_dim_row("dim", "dim|D|", tau_x, extras))
    verdict = _verdict_from(rows, acknowledged)
    return CriterionReport(
        "adjoint-base-point-free",
        tuple(rows),
        verdict,
        (),
        ("cor:adjoint-bpf",),
        _qualify("the adjoint linear system is base point free at the marked point", verdict),
        (f"singularity class: {singclass}",),
        acknowledged,
    )


def very_ample_check(
    dsq: Fraction | int | str,
    db_min: Fraction | int | str,
    alpha: Fraction | int | str,
    beta: Fraction | int | str,
    extras: CohomologyInputs | None = None,
    acknowledged: bool = False,
) -> CriterionReport:
    """Very-ampleness criterion on a surface with at most Du Val points:
    alpha >= 8, beta (1 - beta/alpha) >= 2, D^2 > alpha, D.B >= beta,
    and dim|D| >= h1n + 6."""
    dsq = as_rational(dsq)
    db_min = as_rational(db_min)
    alpha = as_rational(alpha)
    beta = as_rational(beta)
    if alpha <= 0 or beta <= 0:
        raise PreconditionError("alpha and beta must be positive")
    extras = extras or CohomologyInputs()
    rows = [
        _row("alpha", f"alpha = {rational_str(alpha)} >= 8", alpha >= 8),
        _row(
            "beta-curve",
            f"beta (1 - beta/alpha) = {rational_str(beta * (1 - beta / alpha))} >= 2",
            beta * (1 - beta / alpha) >= 2,
        ),
        _row(
            "dsq",
            f"D^2 = {rational_str(dsq)} > alpha = {rational_str(alpha)}",
            dsq > alpha,
        ),
        _row(
            "db",
            f"D.B = {rational_str(db_min)} >= beta = {rational_str(beta)} "
            "(minimum over curves, user-supplied)",
            db_min >= beta,
        ),
        _dim_row("dim", "dim|D|", Fraction(6), extras),
    ]
    verdict = _verdict_from(rows, acknowledged)
    return CriterionReport(
        "adjoint-very-ample",
        tuple(rows),
        verdict,
        (),
        ("cor:adjoint-very-ample",),
        _qualify("the adjoint linear system is very ample", verdict),
        ("surface assumed to have at most Du Val singularities",),
        acknowledged,
    )


def fujita_check(
    m: int,
    hsq: Fraction | int | str,
    extras: CohomologyInputs | None = None,
    question: str = "bpf",
    acknowledged: bool = False,
) -> CriterionReport:
    """Adjoint multiples of an ample Cartier divisor H on a surface with
    at most Du Val points: base point freeness for m >= 3 (or m = 2 with
    H^2 > 1) and very ampleness for m >= 4 (or m = 3 with H^2 > 1), each
    with its dimension condition. The question parameter picks which
    conclusion the verdict answers; the reduction to the fixed constant
    pairs (4, 2) and (9, 3) is re-checked as its own row."""
    if not isinstance(m, int) or m < 1:
        raise PreconditionError("m must be a positive integer")
    hsq = as_rational(hsq)
    if hsq < 1:
        raise PreconditionError("H ample Cartier forces H^2 >= 1")
    if question not in ("bpf", "va"):
        raise PreconditionError(f"unknown question {question!r}")
    extras = extras or CohomologyInputs()
    dsq = m * m * hsq
    if question == "bpf":
        rows = [
            _row(
                "branch",
                f"m = {m} >= 3, or m = 2 and H^2 = {rational_str(hsq)} > 1",
                m >= 3 or (m == 2 and hsq > 1),
            ),
            _row(
                "constants",
                f"reduction to (alpha, beta) = (4, 2): D^2 = m^2 H^2 = "
                f"{rational_str(dsq)} > 4 and D.B >= m = {m} >= 2",
                dsq > 4 and m >= 2,
            ),
            _dim_row("dim", "dim|mH|", Fraction(3), extras),
        ]
        conclusion = "the adjoint system of m H is base point free"
    else:
        rows = [
            _row(
                "branch",
                f"m = {m} >= 4, or m = 3 and H^2 = {rational_str(hsq)} > 1",
                m >= 4 or (m == 3 and hsq > 1),
            ),
            _row(
                "constants",
                f"reduction to (alpha, beta) = (9, 3): D^2 = m^2 H^2 = "
                f"{rational_str(dsq)} > 9 and D.B >= m = {m} >= 3",
                dsq > 9 and m >= 3,
            ),
            _dim_row("dim", "dim|mH|", Fraction(6), extras),
        ]
        conclusion = "the adjoint system of m H is very ample"
    verdict = _verdict_from(rows, acknowledged)
    return CriterionReport(
        f"fujita-adjoint-{question}",
        tuple(rows),
        verdict,
        (),
        ("cor:fujita-adjoint",),
        _qualify(conclusion, verdict),
        ("surface assumed to have at most Du Val singularities; H ample Cartier",),
        acknowledged,
    )


def pluri_check(
    case: int,
    m: int,
    ksq: Fraction | int | str,
    r: int | None = None,
    extras: CohomologyInputs | None = None,
    question: str | None = None,
    acknowledged: bool = False,
) -> CriterionReport:
    """Pluri-(anti)canonical system criteria on a normal surface with
    singularities of geometric genus at most 3, five cases:

    1: K ample Cartier, |mK| base point free; 2: X canonical, |mK| very
    ample; 3: -K ample Cartier (canonical del Pezzo), |-mK| base point
    free or very ample; 4: K ample of Cartier index r >= 2, |mrK| base
    point free; 5: -K ample of index r >= 2 (klt del Pezzo), |-mrK| base
    point free."""
    if case not in (1, 2, 3, 4, 5):
        raise PreconditionError("case must be 1..5")
    if not isinstance(m, int) or m < 1:
        raise PreconditionError("m must be a positive integer")
    ksq = as_rational(ksq)
    if ksq <= 0:
        raise PreconditionError("an ample (anti)canonical class forces K^2 > 0")
    if case in (4, 5):
        if r is None or not isinstance(r, int) or r < 2:
            raise PreconditionError(f"case {case} needs a Cartier index r >= 2")
    elif r not in (None, 1):
        raise PreconditionError(f"case {case} is the Cartier case, r must be omitted")
    extras = extras or CohomologyInputs()
    notes = ["singularities assumed of geometric genus at most 3"]
    if question is None:
        question = "va" if case == 2 else "bpf"
    if question not in ("bpf", "va"):
        raise PreconditionError(f"unknown question {question!r}")
    if question == "va" and case not in (2, 3):
        raise PreconditionError(f"case {case} only offers a base-point-free criterion")
    if question == "bpf" and case == 2:
        raise PreconditionError("case 2 is the very-ampleness criterion")

    rows: list[Hypothesis] = []
    if case == 1:
        rows.append(_row(
            "branch",
            f"m = {m} >= 4, or m = 3 and K^2 = {rational_str(ksq)} > 1",
            m >= 4 or (m == 3 and ksq > 1),
        ))
        rows.append(_dim_row("dim", f"dim|{m - 1}K|", Fraction(3), extras))
        conclusion = f"|{m}K| is base point free"
        notes.append("K assumed ample Cartier")
    elif case == 2:
        rows.append(_row(
            "branch",
            f"m = {m} >= 5, or m = 4 and K^2 = {rational_str(ksq)} > 1",
            m >= 5 or (m == 4 and ksq > 1),
        ))
        rows.append(_dim_row("dim", f"dim|{m - 1}K|", Fraction(6), extras))
        conclusion = f"|{m}K| is very ample"
        notes.append("X assumed canonical with K ample Cartier")
    elif case == 3:
        if question == "bpf":
            rows.append(_row(
                "branch",
                f"m = {m} >= 2, or m = 1 and K^2 = {rational_str(ksq)} > 1",
                m >= 2 or (m == 1 and ksq > 1),
            ))
            conclusion = f"|-{m}K| is base point free"
        else:
            rows.append(_row(
                "branch",
                f"m = {m} >= 3, or m = 2 and K^2 = {rational_str(ksq)} > 1",
                m >= 3 or (m == 2 and ksq > 1),
            ))
            conclusion = f"|-{m}K| is very ample"
        notes.append("-K assumed ample Cartier (canonical del Pezzo)")
        notes.append(
            "dimension condition automatic by Riemann-Roch in the del Pezzo case"
        )
    elif case == 4:
        rows.append(_row("branch", f"m = {m} >= 3", m >= 3))
        rows.append(_dim_row("dim", f"dim|{m * r - 1}K|", Fraction(3), extras))
        conclusion = f"|{m}rK| is base point free (r = {r})"
        notes.append(f"K assumed ample with Cartier index r = {r}")
    else:
        rows.append(_row("branch", f"m = {m} >= 2", m >= 2))
        if extras.dim_linear_system is None:
            rows.append(_asserted(
                "dim",
                f"dim|-{m * r + 1}K| >= 3 (dimension data not supplied)",
            ))
        else:
            rows.append(_row(
                "dim",
                f"dim|-{m * r + 1}K| = {extras.dim_linear_system} >= 3",
                extras.dim_linear_system >= 3,
            ))
        conclusion = f"|-{m}rK| is base point free (r = {r})"
        notes.append(f"-K assumed ample with Cartier index r = {r} (klt del Pezzo)")
        notes.append("klt del Pezzo surfaces are rational, so H1 vanishes")
    verdict = _verdict_from(rows, acknowledged)
    return CriterionReport(
        f"pluricanonical-case-{case}-{question}",
        tuple(rows),
        verdict,
        (),
        ("cor:pluricanonical",),
        _qualify(conclusion, verdict),
        tuple(notes),
        acknowledged,
    )


def extension_check(
    dsq: Fraction | int | str,
    d: int,
    q: Fraction | int | str,
    dim_d: int | None = None,
    h1n: int | None = None,
    variant: str = "plain",
    acknowledged: bool = False,
) -> CriterionReport:
    """Extension of a finite separable degree-d map on the divisor to the
    whole surface.

    plain: D^2 > mu(q, d) with dim|D| >= 3d + h1n extends the morphism;
    base_points: D^2 = mu(q, d) with q < d yields a base-point-free
    pencil of square q inducing the map; movable: as plain with q read
    as the movable-divisor variant of the minimal positive square."""
    dsq = as_rational(dsq)
    q = as_rational(q)
    if not isinstance(d, int) or d < 1:
        raise PreconditionError("the degree d must be a positive integer")
    if q <= 0:
        raise PreconditionError("q must be positive")
    if variant not in ("plain", "base_points", "movable"):
        raise PreconditionError(f"unknown extension variant {variant!r}")
    threshold = mu(q, d)
    qname = "q_inf" if variant == "movable" else "q"
    rows: list[Hypothesis] = []
    notes = [
        f"threshold mu({qname}, d) = {rational_str(threshold)}",
        "every prime component of D assumed of positive self-intersection",
        "the degree-d map on D assumed finite and separable",
    ]
    if variant == "movable":
        notes.append("every prime component of D assumed numerically movable")
    if variant == "base_points":
        rows.append(_row(
            "threshold-equality",
            f"D^2 = {rational_str(dsq)} equals mu({qname}, d) = {rational_str(threshold)}",
            dsq == threshold,
        ))
        rows.append(_row(
            "q-below-degree",
            f"{qname} = {rational_str(q)} < d = {d}",
            q < d,
        ))
        conclusion = (
            f"a base-point-free linear pencil of self-intersection {rational_str(q)} "
            "induces the map"
        )
        citation = "thm:extension-base-points"
        notes.append("the map on D assumed not to extend to a morphism on the surface")
    else:
        ok = dsq > threshold
        rows.append(_row(
            "threshold",
            f"D^2 = {rational_str(dsq)} > mu({qname}, d) = {rational_str(threshold)}",
            ok,
        ))
        if not ok and dsq == threshold and q < d:
            notes.append(
                "boundary case: the equality variant with q < d yields a pencil instead"
            )
        conclusion = "the degree-d map on D extends to a morphism on the whole surface"
        citation = (
            "thm:extension-movable" if variant == "movable" else "thm:extension-morphism"
        )
    if dim_d is None or h1n is None:
        rows.append(_asserted(
            "dim",
            f"dim|D| >= 3d + h1n = {3 * d} + h1n (dimension data not supplied)",
        ))
    else:
        rows.append(_row(
            "dim",
            f"dim|D| = {dim_d} >= 3d + h1n = {3 * d + h1n}",
            dim_d >= 3 * d + h1n,
        ))
    verdict = _verdict_from(rows, acknowledged)
    return CriterionReport(
        f"extension-{variant}",
        tuple(rows),
        verdict,
        (),
        (citation,),
        _qualify(conclusion, verdict),
        tuple(notes),
        acknowledged,
    )


def plane_gonality_bound(m: int) -> int:
    """Least degree of a separable map to the line from a smooth plane
    curve of degree m >= 3: the inner projection bound m - 1."""
    if not isinstance(m, int) or m < 3:
        raise PreconditionError("the plane curve degree must be an integer >= 3")
    return m - 1


# --- Frobenius fixed-space dimensions over a prime field ---

@dataclass(frozen=True)
class FrobeniusSplitting:
    p: int
    dimension: int
    dim_semisimple: int
    dim_nilpotent: int

    def __post_init__(self):
        if self.dim_semisimple + self.dim_nilpotent != self.dimension:
            raise ModelError("semisimple and nilpotent dimensions must sum to n")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def _matmul_mod(a, b, p):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n)]
        for i in range(n)
    ]


def _rank_mod(rows, p):
    a = [row[:] for row in rows]
    n = len(a)
    rank = 0
    col = 0
    width = n and len(a[0])
    while rank < n and col < width:
        pivot = next((r for r in range(rank, n) if a[r][col] % p), None)
        if pivot is None:
            col += 1
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = pow(a[rank][col], -1, p)
        a[rank] = [(v * inv) % p for v in a[rank]]
        for r in range(n):
            if r != rank and a[r][col]:
                f = a[r][col]
                a[r] = [(v - f * w) % p for v, w in zip(a[r], a[rank])]
        rank += 1
        col += 1
    return rank


def frobenius_split(matrix, p: int) -> FrobeniusSplitting:
    """Fitting decomposition of a p-linear operator given over the prime
    field F_p (where p-linearity is plain linearity): the semisimple
    dimension is the rank of M^n and the nilpotent dimension its
    corank."""
    if not isinstance(p, int) or not _is_prime(p):
        raise PreconditionError("the field order must be a prime number")
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise PreconditionError("the operator matrix must be square")
    m = [[int(v) % p for v in row] for row in matrix]
    power = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(n):
        power = _matmul_mod(power, m, p)
    rank = _rank_mod(power, p) if n else 0
    return FrobeniusSplitting(p, n, rank, n - rank)
