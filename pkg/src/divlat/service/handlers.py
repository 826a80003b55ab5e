"""Command handlers: one function per command, request model in,
response model out. The HTTP routes and the in-process command line
client both call these, so every verdict is computed by exactly one
code path."""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .. import corpus, modelio
from ..connectivity import (
    DEFAULT_BUDGET,
    ConnectingChain,
    DecompositionWitness,
    chain_connected_component,
    is_chain_connected,
    is_m_connected,
    is_z_positive,
)
from ..criteria import (
    CohomologyInputs,
    CriterionReport,
    bpf_check,
    extension_check,
    frobenius_split,
    fujita_check,
    mu,
    plane_gonality_bound,
    pluri_check,
    q_min,
    reider_obstructions,
    very_ample_check,
)
from ..dualgraph import betti1, connected_component_count
from ..errors import InputError, PreconditionError
from ..lattice import (
    Cluster,
    Divisor,
    as_rational,
    intersect,
    parse_divisor,
    rational_json,
    selfint,
)
from ..resolution import (
    anticanonical_cycle,
    default_cycle,
    delta_invariant,
    fundamental_cycle,
    mumford_pullback,
    pushforward,
)
from ..zariski import integral_zariski, zariski_decompose
from . import schemas as S


# --- reference and payload conversion ---

def load_lattice_ref(ref) -> modelio.LatticeFile:
    if isinstance(ref, dict):
        lattice, ample = modelio.lattice_from_data(ref, "model")
        return modelio.LatticeFile(lattice, ample, None)
    if isinstance(ref, str) and ref.startswith("corpus:"):
        return modelio.load_lattice(ref)
    raise InputError(
        "model references must be inline objects or 'corpus:NAME' strings"
    )


def load_resolution_ref(ref) -> modelio.ResolutionFile:
    if isinstance(ref, dict):
        return modelio.resolution_from_data(ref, "resolution", None)
    if isinstance(ref, str) and ref.startswith("corpus:"):
        return modelio.load_resolution(ref)
    raise InputError(
        "resolution references must be inline objects or 'corpus:NAME' strings"
    )


def load_dualgraph_ref(ref) -> modelio.DualGraphFile:
    if isinstance(ref, dict):
        name, config = modelio.dualgraph_from_data(ref, "dualgraph")
        from ..dualgraph import build_graph

        return modelio.DualGraphFile(name, config, build_graph(config), None)
    if isinstance(ref, str) and ref.startswith("corpus:"):
        return modelio.load_dualgraph(ref)
    raise InputError(
        "dual graph references must be inline objects or 'corpus:NAME' strings"
    )


def divisor_payload(d: Divisor) -> S.DivisorPayload:
    coeffs = {
        d.lattice.primes[i]: rational_json(c)
        for i, c in enumerate(d.coeffs)
        if c != 0
    }
    return S.DivisorPayload(expr=str(d), coeffs=coeffs)


def witness_payload(w: DecompositionWitness) -> S.WitnessPayload:
    return S.WitnessPayload(
        a=divisor_payload(w.a),
        b=divisor_payload(w.b),
        product=rational_json(w.product),
    )


def chain_payload(chain: ConnectingChain) -> S.ChainPayload:
    steps = [
        S.ChainStepPayload(prime=p, pairing=rational_json(v))
        for p, v in zip(chain.step_primes(), chain.pairings())
    ]
    return S.ChainPayload(
        start=divisor_payload(chain.start),
        end=divisor_payload(chain.end),
        steps=steps,
    )


def report_payload(report: CriterionReport) -> S.ReportPayload:
    return S.ReportPayload(
        criterion=report.criterion,
        verdict=report.verdict,
        hypotheses=[
            S.HypothesisPayload(label=h.label, text=h.text, status=h.status)
            for h in report.hypotheses
        ],
        witnesses=[witness_payload(w) for w in report.witnesses],
        citations=list(report.citations),
        conclusion=report.conclusion,
        notes=list(report.notes),
        acknowledged=report.acknowledged,
    )


def cluster_from_spec(spec: S.ClusterSpec) -> Cluster:
    return Cluster(
        spec.name,
        tuple(spec.meets),
        singclass=spec.singclass,
        tau_override=as_rational(spec.tau) if spec.tau is not None else None,
        delta_override=as_rational(spec.delta) if spec.delta is not None else None,
    )


def cohomology_from_dims(dims: S.DimsSpec | None) -> CohomologyInputs:
    if dims is None:
        return CohomologyInputs()
    return CohomologyInputs(
        dim_linear_system=dims.dimD,
        h1_nilpotent=dims.h1n,
        frobenius_injective=dims.frobinj,
        tau=as_rational(dims.tau) if dims.tau is not None else None,
    )


def _budget(value: int | None) -> int:
    if value is None:
        return DEFAULT_BUDGET
    if value < 1:
        raise PreconditionError("budget must be a positive integer")
    return value


# --- handlers ---

def check_model(req: S.CheckModelRequest) -> S.CheckModelResponse:
    if req.model is None and req.resolution is None and req.dualgraph is None:
        raise InputError("nothing to check: give a model, resolution, or dual graph")
    summaries = []
    if req.model is not None:
        lf = load_lattice_ref(req.model)
        summaries.append(S.ModelSummary(
            kind="lattice", name=lf.lattice.name, primes=list(lf.lattice.primes),
        ))
    if req.resolution is not None:
        rf = load_resolution_ref(req.resolution)
        summaries.append(S.ModelSummary(
            kind="resolution",
            name=rf.model.name,
            primes=list(rf.model.upstairs.primes),
            exceptional=list(rf.model.exceptional_primes()),
            singclass=rf.singclass,
        ))
    if req.dualgraph is not None:
        gf = load_dualgraph_ref(req.dualgraph)
        summaries.append(S.ModelSummary(
            kind="dualgraph",
            name=gf.name,
            vertices=gf.graph.vertex_count,
            edges=gf.graph.edge_count,
        ))
    return S.CheckModelResponse(summaries=summaries)


def intersect_cmd(req: S.IntersectRequest) -> S.IntersectResponse:
    lat = load_lattice_ref(req.model).lattice
    a = parse_divisor(req.a, lat)
    b = parse_divisor(req.b, lat)
    return S.IntersectResponse(
        a=divisor_payload(a),
        b=divisor_payload(b),
        product=rational_json(intersect(a, b)),
    )


def zariski_cmd(req: S.ZariskiRequest) -> S.ZariskiResponse:
    lat = load_lattice_ref(req.model).lattice
    d = parse_divisor(req.divisor, lat)
    pair = zariski_decompose(d)
    psq = selfint(pair.P)
    return S.ZariskiResponse(
        positive=divisor_payload(pair.P),
        negative=divisor_payload(pair.N),
        nef_square=rational_json(psq),
        big=psq > 0,
    )


def integral_zariski_cmd(req: S.IntegralZariskiRequest) -> S.IntegralZariskiResponse:
    lat = load_lattice_ref(req.model).lattice
    d = parse_divisor(req.divisor, lat)
    pair = integral_zariski(d, _budget(req.budget))
    return S.IntegralZariskiResponse(
        positive=divisor_payload(pair.positive),
        negative=divisor_payload(pair.negative),
    )


def connectivity_cmd(req: S.ConnectivityRequest) -> S.ConnectivityResponse:
    lat = load_lattice_ref(req.model).lattice
    d = parse_divisor(req.divisor, lat)
    budget = _budget(req.budget)
    cc = is_chain_connected(d, budget)
    num = is_m_connected(d, as_rational(req.m), strict=req.strict, budget=budget)
    return S.ConnectivityResponse(
        chain_connected=cc.holds,
        chain=chain_payload(cc.chain) if cc.chain is not None else None,
        chain_witness=witness_payload(cc.witness) if cc.witness is not None else None,
        exhaustive=cc.exhaustive,
        numerical=S.NumericalVerdictPayload(
            holds=num.holds,
            m=rational_json(num.m),
            strict=num.strict,
            vacuous=num.vacuous,
            minimum=rational_json(num.minimum) if num.minimum is not None else None,
            witness=witness_payload(num.witness) if num.witness is not None else None,
        ),
    )


def component_cmd(req: S.ComponentRequest) -> S.ComponentResponse:
    lat = load_lattice_ref(req.model).lattice
    d = parse_divisor(req.divisor, lat)
    comp = chain_connected_component(d, _budget(req.budget))
    return S.ComponentResponse(
        component=divisor_payload(comp),
        equals_divisor=comp == d,
    )


def zpositive_cmd(req: S.ZPositiveRequest) -> S.ZPositiveResponse:
    lat = load_lattice_ref(req.model).lattice
    d = parse_divisor(req.divisor, lat)
    verdict = is_z_positive(d)
    return S.ZPositiveResponse(
        holds=verdict.holds,
        chain=chain_payload(verdict.chain) if verdict.chain is not None else None,
        blocking=divisor_payload(verdict.blocking) if verdict.blocking is not None else None,
        witness=witness_payload(verdict.witness) if verdict.witness is not None else None,
        witness_negdef=verdict.witness_negdef,
    )


def pullback_cmd(req: S.PullbackRequest) -> S.DivisorResponse:
    rf = load_resolution_ref(req.resolution)
    d = parse_divisor(req.divisor, rf.model.downstairs)
    return S.DivisorResponse(result=divisor_payload(mumford_pullback(rf.model, d)))


def pushforward_cmd(req: S.PushforwardRequest) -> S.DivisorResponse:
    rf = load_resolution_ref(req.resolution)
    d = parse_divisor(req.divisor, rf.model.upstairs)
    return S.DivisorResponse(result=divisor_payload(pushforward(rf.model, d)))


def anticanonical_cmd(req: S.CycleRequest) -> S.CycleResponse:
    rf = load_resolution_ref(req.resolution)
    return S.CycleResponse(cycle=divisor_payload(anticanonical_cycle(rf.model)))


def fundcycle_cmd(req: S.CycleRequest) -> S.CycleResponse:
    rf = load_resolution_ref(req.resolution)
    return S.CycleResponse(cycle=divisor_payload(fundamental_cycle(rf.model)))


def delta_cmd(req: S.DeltaRequest) -> S.DeltaResponse:
    rf = load_resolution_ref(req.resolution)
    singclass = req.singclass or rf.singclass
    if req.z is not None:
        z = parse_divisor(req.z, rf.model.upstairs)
        default_used = False
    else:
        if singclass is None:
            raise InputError(
                "no cycle given and no singularity class available to pick a default"
            )
        z = default_cycle(rf.model, singclass)
        default_used = True
    downstairs = None
    if req.divisor is not None:
        downstairs = parse_divisor(req.divisor, rf.model.downstairs)
    cluster = cluster_from_spec(req.cluster) if req.cluster is not None else None
    report = delta_invariant(rf.model, z, divisor=downstairs, cluster=cluster)
    return S.DeltaResponse(
        Z=divisor_payload(report.Z),
        Delta=divisor_payload(report.Delta),
        delta=rational_json(report.delta),
        cond_e=report.cond_e,
        singclass=singclass,
        default_cycle_used=default_used,
    )


def dualgraph_b1_cmd(req: S.DualGraphB1Request) -> S.DualGraphB1Response:
    gf = load_dualgraph_ref(req.dualgraph)
    return S.DualGraphB1Response(
        b1=betti1(gf.graph),
        vertices=gf.graph.vertex_count,
        edges=gf.graph.edge_count,
        connected_components=connected_component_count(gf.graph),
    )


def mu_cmd(req: S.MuRequest) -> S.MuResponse:
    return S.MuResponse(value=rational_json(mu(as_rational(req.x), as_rational(req.d))))


def qmin_cmd(req: S.QMinRequest) -> S.QMinResponse:
    lat = load_lattice_ref(req.model).lattice
    cluster = cluster_from_spec(req.cluster) if req.cluster is not None else None
    result = q_min(lat, req.box, cluster=cluster, budget=_budget(req.budget))
    return S.QMinResponse(
        found=result.found,
        value=rational_json(result.value) if result.value is not None else None,
        witness=divisor_payload(result.witness) if result.witness is not None else None,
        box=result.box,
        cluster=result.cluster,
        searched=result.searched,
    )


def reider_cmd(req: S.ReiderRequest) -> S.ReportResponse:
    lat = load_lattice_ref(req.model).lattice
    d = parse_divisor(req.divisor, lat)
    report = reider_obstructions(
        d,
        as_rational(req.delta),
        cluster_from_spec(req.cluster),
        mode=req.mode,
        extras=cohomology_from_dims(req.dims),
        cond_e=req.cond_e,
        q_box=req.box,
        budget=_budget(req.budget),
        acknowledged=req.acknowledged,
    )
    return S.ReportResponse(report=report_payload(report))


def bpf_cmd(req: S.BpfRequest) -> S.ReportResponse:
    report = bpf_check(
        as_rational(req.dsq),
        as_rational(req.db_min),
        as_rational(req.alpha),
        as_rational(req.beta),
        req.singclass,
        extras=cohomology_from_dims(req.dims),
        delta_override=as_rational(req.delta_override) if req.delta_override is not None else None,
        tau_override=as_rational(req.tau_override) if req.tau_override is not None else None,
        acknowledged=req.acknowledged,
    )
    return S.ReportResponse(report=report_payload(report))


def very_ample_cmd(req: S.VeryAmpleRequest) -> S.ReportResponse:
    report = very_ample_check(
        as_rational(req.dsq),
        as_rational(req.db_min),
        as_rational(req.alpha),
        as_rational(req.beta),
        extras=cohomology_from_dims(req.dims),
        acknowledged=req.acknowledged,
    )
    return S.ReportResponse(report=report_payload(report))


def fujita_cmd(req: S.FujitaRequest) -> S.ReportsResponse:
    extras = cohomology_from_dims(req.dims)
    questions = [req.question] if req.question else ["bpf", "va"]
    reports = [
        fujita_check(
            req.m, as_rational(req.hsq), extras=extras, question=question,
            acknowledged=req.acknowledged,
        )
        for question in questions
    ]
    return S.ReportsResponse(reports=[report_payload(r) for r in reports])


def pluri_cmd(req: S.PluriRequest) -> S.ReportsResponse:
    extras = cohomology_from_dims(req.dims)
    if req.question:
        questions = [req.question]
    elif req.case == 3:
        questions = ["bpf", "va"]
    elif req.case == 2:
        questions = ["va"]
    else:
        questions = ["bpf"]
    reports = [
        pluri_check(
            req.case, req.m, as_rational(req.ksq), r=req.r, extras=extras,
            question=question, acknowledged=req.acknowledged,
        )
        for question in questions
    ]
    return S.ReportsResponse(reports=[report_payload(r) for r in reports])


def extension_cmd(req: S.ExtensionRequest) -> S.ReportResponse:
    dims = req.dims or S.DimsSpec()
    report = extension_check(
        as_rational(req.dsq),
        req.d,
        as_rational(req.q),
        dim_d=dims.dimD,
        h1n=dims.h1n,
        variant=req.variant,
        acknowledged=req.acknowledged,
    )
    return S.ReportResponse(report=report_payload(report))


def gonality_cmd(req: S.GonalityRequest) -> S.GonalityResponse:
    return S.GonalityResponse(bound=plane_gonality_bound(req.m))


def frobenius_cmd(req: S.FrobeniusRequest) -> S.FrobeniusResponse:
    split = frobenius_split(req.matrix, req.p)
    return S.FrobeniusResponse(
        p=split.p,
        dimension=split.dimension,
        dim_semisimple=split.dim_semisimple,
        dim_nilpotent=split.dim_nilpotent,
    )


def corpus_list() -> S.CorpusListResponse:
    return S.CorpusListResponse(names=list(corpus.corpus_names()))


def corpus_show(name: str) -> dict:
    return modelio.read_model_file(Path(corpus.corpus_path(name)))


# registry: command name -> (request model, handler)
HANDLERS = {
    "check-model": (S.CheckModelRequest, check_model),
    "intersect": (S.IntersectRequest, intersect_cmd),
    "zariski": (S.ZariskiRequest, zariski_cmd),
    "integral-zariski": (S.IntegralZariskiRequest, integral_zariski_cmd),
    "connectivity": (S.ConnectivityRequest, connectivity_cmd),
    "component": (S.ComponentRequest, component_cmd),
    "zpositive": (S.ZPositiveRequest, zpositive_cmd),
    "pullback": (S.PullbackRequest, pullback_cmd),
    "pushforward": (S.PushforwardRequest, pushforward_cmd),
    "anticanonical": (S.CycleRequest, anticanonical_cmd),
    "fundcycle": (S.CycleRequest, fundcycle_cmd),
    "delta": (S.DeltaRequest, delta_cmd),
    "dualgraph-b1": (S.DualGraphB1Request, dualgraph_b1_cmd),
    "mu": (S.MuRequest, mu_cmd),
    "qmin": (S.QMinRequest, qmin_cmd),
    "reider": (S.ReiderRequest, reider_cmd),
    "bpf": (S.BpfRequest, bpf_cmd),
    "very-ample": (S.VeryAmpleRequest, very_ample_cmd),
    "fujita": (S.FujitaRequest, fujita_cmd),
    "pluri": (S.PluriRequest, pluri_cmd),
    "extension": (S.ExtensionRequest, extension_cmd),
    "gonality": (S.GonalityRequest, gonality_cmd),
    "frobenius": (S.FrobeniusRequest, frobenius_cmd),
}
