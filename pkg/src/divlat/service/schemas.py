"""Request and response models for the HTTP service.

One request/response pair per command. Model references are either an
inline JSON object (the same schema the model files use) or a
``corpus:NAME`` string naming a bundled fixture; the command line
client resolves local file paths before sending, so the service never
reads caller paths. Rationals travel as integers or "p/q" strings,
never floats.
"""
from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

Rational = int | str
ModelRef = dict | str


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class DivisorPayload(StrictModel):
    expr: str
    coeffs: dict[str, Rational]


class WitnessPayload(StrictModel):
    a: DivisorPayload
    b: DivisorPayload
    product: Rational


class ChainStepPayload(StrictModel):
    prime: str
    pairing: Rational


class ChainPayload(StrictModel):
    start: DivisorPayload
    end: DivisorPayload
    steps: list[ChainStepPayload]


class HypothesisPayload(StrictModel):
    label: str
    text: str
    status: Literal["holds", "fails", "asserted"]


class ReportPayload(StrictModel):
    criterion: str
    verdict: Literal["holds", "fails", "inconclusive"]
    hypotheses: list[HypothesisPayload]
    witnesses: list[WitnessPayload]
    citations: list[str]
    conclusion: str
    notes: list[str]
    acknowledged: bool


class ClusterSpec(StrictModel):
    name: str = "zeta"
    meets: list[str] = Field(min_length=1)
    singclass: str | None = None
    delta: Rational | None = None
    tau: Rational | None = None


class DimsSpec(StrictModel):
    """User-asserted cohomology data: dimD = dim of the relevant linear
    system, h1n = nilpotent part of H1, tau = dimension correction
    override, frobinj = Frobenius acts injectively on H1."""

    dimD: int | None = None
    h1n: int | None = None
    tau: Rational | None = None
    frobinj: bool | None = None


class ErrorBody(StrictModel):
    code: str
    message: str
    details: dict = Field(default_factory=dict)


class ErrorResponse(StrictModel):
    error: ErrorBody


# --- model inspection ---

class CheckModelRequest(StrictModel):
    model: ModelRef | None = None
    resolution: ModelRef | None = None
    dualgraph: ModelRef | None = None


class ModelSummary(StrictModel):
    kind: Literal["lattice", "resolution", "dualgraph"]
    name: str
    primes: list[str] = Field(default_factory=list)
    exceptional: list[str] = Field(default_factory=list)
    singclass: str | None = None
    vertices: int | None = None
    edges: int | None = None


class CheckModelResponse(StrictModel):
    valid: Literal[True] = True
    summaries: list[ModelSummary]


# --- lattice computations ---

class IntersectRequest(StrictModel):
    model: ModelRef
    a: str
    b: str


class IntersectResponse(StrictModel):
    a: DivisorPayload
    b: DivisorPayload
    product: Rational


class ZariskiRequest(StrictModel):
    model: ModelRef
    divisor: str


class ZariskiResponse(StrictModel):
    positive: DivisorPayload
    negative: DivisorPayload
    nef_square: Rational
    big: bool


class IntegralZariskiRequest(StrictModel):
    model: ModelRef
    divisor: str
    budget: int | None = None


class IntegralZariskiResponse(StrictModel):
    positive: DivisorPayload
    negative: DivisorPayload


class ConnectivityRequest(StrictModel):
    model: ModelRef
    divisor: str
    m: Rational = 0
    strict: bool = True
    budget: int | None = None


class NumericalVerdictPayload(StrictModel):
    holds: bool
    m: Rational
    strict: bool
    vacuous: bool
    minimum: Rational | None = None
    witness: WitnessPayload | None = None


class ConnectivityResponse(StrictModel):
    chain_connected: bool
    chain: ChainPayload | None = None
    chain_witness: WitnessPayload | None = None
    exhaustive: bool
    numerical: NumericalVerdictPayload


class ComponentRequest(StrictModel):
    model: ModelRef
    divisor: str
    budget: int | None = None


class ComponentResponse(StrictModel):
    component: DivisorPayload
    equals_divisor: bool


class ZPositiveRequest(StrictModel):
    model: ModelRef
    divisor: str


class ZPositiveResponse(StrictModel):
    holds: bool
    chain: ChainPayload | None = None
    blocking: DivisorPayload | None = None
    witness: WitnessPayload | None = None
    witness_negdef: bool | None = None


# --- resolution computations ---

class PullbackRequest(StrictModel):
    resolution: ModelRef
    divisor: str


class PushforwardRequest(StrictModel):
    resolution: ModelRef
    divisor: str


class DivisorResponse(StrictModel):
    result: DivisorPayload


class CycleRequest(StrictModel):
    resolution: ModelRef


class CycleResponse(StrictModel):
    cycle: DivisorPayload


class DeltaRequest(StrictModel):
    resolution: ModelRef
    z: str | None = None
    singclass: str | None = None
    divisor: str | None = None
    cluster: ClusterSpec | None = None


class DeltaResponse(StrictModel):
    Z: DivisorPayload
    Delta: DivisorPayload
    delta: Rational
    cond_e: bool | None = None
    singclass: str | None = None
    default_cycle_used: bool


class DualGraphB1Request(StrictModel):
    dualgraph: ModelRef


class DualGraphB1Response(StrictModel):
    b1: int
    vertices: int
    edges: int
    connected_components: int


# --- criteria ---

class MuRequest(StrictModel):
    x: Rational
    d: Rational


class MuResponse(StrictModel):
    value: Rational


class QMinRequest(StrictModel):
    model: ModelRef
    box: int = 4
    cluster: ClusterSpec | None = None
    budget: int | None = None


class QMinResponse(StrictModel):
    found: bool
    value: Rational | None = None
    witness: DivisorPayload | None = None
    box: int
    cluster: str | None = None
    searched: int


class ReiderRequest(StrictModel):
    model: ModelRef
    divisor: str
    delta: Rational
    cluster: ClusterSpec
    mode: Literal["I", "II"] = "I"
    cond_e: bool | None = None
    dims: DimsSpec | None = None
    box: int = 4
    budget: int | None = None
    acknowledged: bool = False


class ReportResponse(StrictModel):
    report: ReportPayload


class ReportsResponse(StrictModel):
    reports: list[ReportPayload]


class BpfRequest(StrictModel):
    dsq: Rational
    db_min: Rational
    alpha: Rational
    beta: Rational
    singclass: str
    dims: DimsSpec | None = None
    delta_override: Rational | None = None
    tau_override: Rational | None = None
    acknowledged: bool = False


class VeryAmpleRequest(StrictModel):
    dsq: Rational
    db_min: Rational
    alpha: Rational
    beta: Rational
    dims: DimsSpec | None = None
    acknowledged: bool = False


class FujitaRequest(StrictModel):
    m: int
    hsq: Rational
    dims: DimsSpec | None = None
    question: Literal["bpf", "va"] | None = None
    acknowledged: bool = False


class PluriRequest(StrictModel):
    case: int
    m: int
    ksq: Rational
    r: int | None = None
    question: Literal["bpf", "va"] | None = None
    dims: DimsSpec | None = None
    acknowledged: bool = False


class ExtensionRequest(StrictModel):
    dsq: Rational
    d: int
    q: Rational
    variant: Literal["plain", "base_points", "movable"] = "plain"
    dims: DimsSpec | None = None
    acknowledged: bool = False


class GonalityRequest(StrictModel):
    m: int


class GonalityResponse(StrictModel):
    bound: int


class FrobeniusRequest(StrictModel):
    matrix: list[list[int]]
    p: int


class FrobeniusResponse(StrictModel):
    p: int
    dimension: int
    dim_semisimple: int
    dim_nilpotent: int


class CorpusListResponse(StrictModel):
    names: list[str]
