"""Command line front end.

Every command builds the same request model the HTTP service accepts,
runs it in-process by default, and renders the response either as
stable plain text or as the structured JSON the service would return
(``--format structured``). With ``--server URL`` the request is POSTed
to a running service instead; local model file paths are inlined
before sending, so the server never needs access to the client's
filesystem.

Exit codes: 0 for computed verdicts (a criterion that fails to hold is
still a successful computation), 2 for input or validation errors, 3
for enumeration budget exhaustion. Errors print a single stderr line:
``divlat: error [E_CODE] message``.
"""
from __future__ import annotations

import functools
import json
import sys

import click
from pydantic import ValidationError

from . import __version__, corpus, modelio
from .errors import DivlatError, InputError
from .service import handlers


def _fail(code: str, message: str) -> None:
    click.echo(f"divlat: error [{code}] {message}", err=True)
    sys.exit(3 if code == "E_BUDGET" else 2)


def engine_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except DivlatError as exc:
            _fail(exc.code, exc.message)

    return wrapper


def _validation_summary(exc: ValidationError) -> str:
    first = exc.errors()[0]
    loc = ".".join(str(part) for part in first.get("loc", ()))
    msg = first.get("msg", "invalid value")
    return f"{loc}: {msg}" if loc else msg


def _invoke(command: str, payload: dict, server: str | None) -> dict:
    if server is not None:
        return _invoke_remote(command, payload, server)
    request_model, handler = handlers.HANDLERS[command]
    try:
        req = request_model.model_validate(payload)
    except ValidationError as exc:
        _fail("E_INPUT", _validation_summary(exc))
    resp = handler(req)
    return resp.model_dump(mode="json")


def _invoke_remote(command: str, payload: dict, server: str) -> dict:
    import httpx

    url = f"{server.rstrip('/')}/v1/{command}"
    try:
        r = httpx.post(url, json=payload, timeout=120.0)
    except httpx.HTTPError as exc:
        _fail("E_INPUT", f"cannot reach server at {server}: {exc}")
    if r.status_code == 200:
        return r.json()
    try:
        body = r.json()
    except ValueError:
        body = {}
    if isinstance(body, dict) and "error" in body:
        err = body["error"]
        _fail(err.get("code", "E_INPUT"), err.get("message", "server error"))
    if isinstance(body, dict) and "detail" in body:
        _fail("E_INPUT", f"request rejected by server: {json.dumps(body['detail'])}")
    _fail("E_INPUT", f"server returned status {r.status_code}")


def _emit(result: dict, fmt: str, renderer) -> None:
    if fmt == "structured":
        click.echo(json.dumps(result, indent=2, ensure_ascii=False))
    else:
        for line in renderer(result):
            click.echo(line)


def common_options(f):
    f = click.option(
        "--format", "fmt", type=click.Choice(["text", "structured"]),
        default="text", show_default=True, help="Output rendering.",
    )(f)
    f = click.option(
        "--server", default=None, metavar="URL",
        help="POST to a running divlat service instead of computing in-process.",
    )(f)
    return f


# --- local model reference resolution ---

def _lattice_payload(value: str):
    if value.startswith("corpus:"):
        return value
    lf = modelio.load_lattice(value)
    return modelio.lattice_to_data(lf.lattice, lf.ample)


def _resolution_payload(value: str):
    if value.startswith("corpus:"):
        return value
    return modelio.resolution_to_data(modelio.load_resolution(value))


def _dualgraph_payload(value: str):
    if value.startswith("corpus:"):
        return value
    return modelio.dualgraph_to_data(modelio.load_dualgraph(value))


def _parse_cluster(spec: str) -> dict:
    """--cluster syntax: [NAME=]P1,P2,...[@SINGCLASS]"""
    body = spec
    out: dict = {}
    if "=" in body:
        name, body = body.split("=", 1)
        if not name:
            raise InputError(f"bad cluster spec {spec!r}: empty name")
        out["name"] = name
    if "@" in body:
        body, singclass = body.rsplit("@", 1)
        if not singclass:
            raise InputError(f"bad cluster spec {spec!r}: empty singularity class")
        out["singclass"] = singclass
    meets = [p for p in (part.strip() for part in body.split(",")) if p]
    if not meets:
        raise InputError(f"bad cluster spec {spec!r}: no primes listed")
    out["meets"] = meets
    return out


_DIMS_KEYS = ("dimD", "h1n", "tau", "frobinj")


def _parse_dims(spec: str) -> dict:
    """--dims syntax: comma-separated key=value with keys dimD, h1n, tau, frobinj."""
    out: dict = {}
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise InputError(f"bad dims entry {part!r}: expected key=value")
        key, value = part.split("=", 1)
        key = key.strip()
        value = value.strip()
        if key not in _DIMS_KEYS:
            raise InputError(
                f"bad dims key {key!r}: expected one of {', '.join(_DIMS_KEYS)}"
            )
        if key in ("dimD", "h1n"):
            try:
                out[key] = int(value)
            except ValueError:
                raise InputError(f"bad dims entry {part!r}: expected an integer") from None
        elif key == "tau":
            out[key] = value
        else:
            if value not in ("0", "1", "true", "false"):
                raise InputError(f"bad dims entry {part!r}: expected 0/1/true/false")
            out[key] = value in ("1", "true")
    return out


def _parse_matrix(spec: str) -> list[list[int]]:
    """--matrix syntax: rows separated by ';', integer entries by ','."""
    rows = []
    for row_text in spec.split(";"):
        row = []
        for entry in row_text.split(","):
            entry = entry.strip()
            try:
                row.append(int(entry))
            except ValueError:
                raise InputError(
                    f"bad matrix entry {entry!r}: expected an integer"
                ) from None
        rows.append(row)
    return rows


# --- text renderers ---

def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _render_witness(w: dict, indent: str = "  ") -> list[str]:
    return [
        f"{indent}A = {w['a']['expr']}",
        f"{indent}B = {w['b']['expr']}",
        f"{indent}A.B = {w['product']}",
    ]


def _render_chain(chain: dict, indent: str = "  ") -> list[str]:
    lines = [f"{indent}chain start: {chain['start']['expr']}"]
    if not chain["steps"]:
        lines.append(f"{indent}(already at target)")
    for step in chain["steps"]:
        lines.append(f"{indent}add {step['prime']} (pairing {step['pairing']})")
    return lines


def _render_report(report: dict) -> list[str]:
    lines = [
        f"criterion: {report['criterion']}",
        f"verdict: {report['verdict']}",
    ]
    if report["hypotheses"]:
        lines.append("hypotheses:")
        for h in report["hypotheses"]:
            lines.append(f"  [{h['status']:8s}] {h['label']}: {h['text']}")
    if report["witnesses"]:
        lines.append("witnesses:")
        for w in report["witnesses"]:
            lines.append(f"  A = {w['a']['expr']} | B = {w['b']['expr']} | A.B = {w['product']}")
    if report["notes"]:
        lines.append("notes:")
        for note in report["notes"]:
            lines.append(f"  {note}")
    lines.append(f"conclusion: {report['conclusion']}")
    if report["citations"]:
        lines.append(f"citations: {', '.join(report['citations'])}")
    return lines


def _render_report_resp(result: dict) -> list[str]:
    return _render_report(result["report"])


def _render_reports_resp(result: dict) -> list[str]:
    lines: list[str] = []
    for i, report in enumerate(result["reports"]):
        if i:
            lines.append("")
        lines.extend(_render_report(report))
    return lines


def _render_check(result: dict) -> list[str]:
    lines = []
    for s in result["summaries"]:
        if s["kind"] == "lattice":
            lines.append(f"ok: lattice {s['name']} (primes: {', '.join(s['primes'])})")
        elif s["kind"] == "resolution":
            exc = ", ".join(s["exceptional"]) or "none"
            tail = f"; class: {s['singclass']}" if s["singclass"] else ""
            lines.append(f"ok: resolution {s['name']} (exceptional: {exc}{tail})")
        else:
            lines.append(
                f"ok: dualgraph {s['name']} ({s['vertices']} vertices, {s['edges']} edges)"
            )
    return lines


def _render_intersect(result: dict) -> list[str]:
    return [
        f"A = {result['a']['expr']}",
        f"B = {result['b']['expr']}",
        f"A.B = {result['product']}",
    ]


def _render_zariski(result: dict) -> list[str]:
    return [
        f"P = {result['positive']['expr']}",
        f"N = {result['negative']['expr']}",
        f"P^2 = {result['nef_square']}",
        f"big: {_yesno(result['big'])}",
    ]


def _render_integral_zariski(result: dict) -> list[str]:
    return [
        f"positive = {result['positive']['expr']}",
        f"negative = {result['negative']['expr']}",
    ]


def _render_connectivity(result: dict) -> list[str]:
    lines = [f"chain-connected: {_yesno(result['chain_connected'])}"]
    if result["chain"] is not None:
        lines.extend(_render_chain(result["chain"]))
    if result["chain_witness"] is not None:
        lines.append("  witnessed by decomposition:")
        lines.extend(_render_witness(result["chain_witness"], "    "))
    if result["exhaustive"]:
        lines.append("  (settled by exhaustive search: negative off-diagonal pairings)")
    num = result["numerical"]
    kind = "strictly" if num["strict"] else "weakly"
    lines.append(f"numerically {kind} {num['m']}-connected: {_yesno(num['holds'])}")
    if num["vacuous"]:
        lines.append("  (vacuous: no nontrivial decompositions)")
    if num["minimum"] is not None:
        lines.append(f"  minimum A.B = {num['minimum']}")
    if num["witness"] is not None:
        lines.extend(_render_witness(num["witness"]))
    return lines


def _render_component(result: dict) -> list[str]:
    return [
        f"component = {result['component']['expr']}",
        f"equals divisor: {_yesno(result['equals_divisor'])}",
    ]


def _render_zpositive(result: dict) -> list[str]:
    lines = [f"Z-positive: {_yesno(result['holds'])}"]
    if result["chain"] is not None:
        lines.extend(_render_chain(result["chain"]))
    if result["blocking"] is not None:
        lines.append(f"  blocking divisor: {result['blocking']['expr']}")
    if result["witness"] is not None:
        lines.append("  stalled decomposition:")
        lines.extend(_render_witness(result["witness"], "    "))
        lines.append(f"  remainder negative definite: {_yesno(result['witness_negdef'])}")
    return lines


def _render_divisor_result(result: dict) -> list[str]:
    return [result["result"]["expr"]]


def _render_cycle(result: dict) -> list[str]:
    return [result["cycle"]["expr"]]


def _render_delta(result: dict) -> list[str]:
    lines = [
        f"Z = {result['Z']['expr']}",
        f"Delta = {result['Delta']['expr']}",
        f"delta = {result['delta']}",
    ]
    if result["cond_e"] is not None:
        lines.append(f"condition E: {_yesno(result['cond_e'])}")
    if result["singclass"]:
        how = "default cycle" if result["default_cycle_used"] else "explicit cycle"
        lines.append(f"class: {result['singclass']} ({how})")
    return lines


def _render_b1(result: dict) -> list[str]:
    return [
        f"b1 = {result['b1']}",
        f"vertices = {result['vertices']}, edges = {result['edges']}, "
        f"components = {result['connected_components']}",
    ]


def _render_mu(result: dict) -> list[str]:
    return [str(result["value"])]


def _render_qmin(result: dict) -> list[str]:
    if not result["found"]:
        return [
            f"no positive square within box {result['box']} "
            f"(searched {result['searched']} candidates)"
        ]
    where = f" meeting cluster {result['cluster']}" if result["cluster"] else ""
    return [
        f"q = {result['value']} at {result['witness']['expr']}"
        f"{where} (box {result['box']}, searched {result['searched']})"
    ]


def _render_gonality(result: dict) -> list[str]:
    return [str(result["bound"])]


def _render_frobenius(result: dict) -> list[str]:
    return [
        f"p = {result['p']}, dimension = {result['dimension']}",
        f"semisimple = {result['dim_semisimple']}",
        f"nilpotent = {result['dim_nilpotent']}",
    ]


# --- the command group ---

@click.group()
@click.version_option(version=__version__, prog_name="divlat")
def main():
    """Exact intersection theory on divisor lattices of normal surfaces."""


@main.command("check-model")
@click.option("--model", "model_ref", metavar="FILE", default=None,
              help="Lattice, resolution, or dual-graph file (or corpus:NAME).")
@click.option("--resolution", "resolution_ref", metavar="FILE", default=None)
@common_options
@engine_errors
def check_model(model_ref, resolution_ref, server, fmt):
    """Validate model files and print one summary line per model."""
    payload: dict = {}
    if model_ref is not None:
        loaded = modelio.load_any(model_ref)
        if isinstance(loaded, modelio.LatticeFile):
            payload["model"] = modelio.lattice_to_data(loaded.lattice, loaded.ample)
        elif isinstance(loaded, modelio.ResolutionFile):
            payload["resolution"] = modelio.resolution_to_data(loaded)
        else:
            payload["dualgraph"] = modelio.dualgraph_to_data(loaded)
    if resolution_ref is not None:
        payload["resolution"] = _resolution_payload(resolution_ref)
    result = _invoke("check-model", payload, server)
    _emit(result, fmt, _render_check)


def _model_command(name, help_text):
    def deco(f):
        f = engine_errors(f)
        f = common_options(f)
        f = click.option("--budget", type=int, default=None, metavar="N",
                         help="Decomposition enumeration budget.")(f)
        f = click.option("--divisor", required=True, metavar="EXPR",
                         help="Divisor expression, e.g. \"2C1 + 1/3 C2\".")(f)
        f = click.option("--model", "model_ref", required=True, metavar="FILE",
                         help="Lattice file or corpus:NAME.")(f)
        return main.command(name, help=help_text)(f)

    return deco


@main.command("intersect")
@click.option("--model", "model_ref", required=True, metavar="FILE")
@click.option("--divisor", "divisors", required=True, metavar="EXPR", multiple=True,
              help="Give exactly twice: the two divisors to pair.")
@common_options
@engine_errors
def intersect_command(model_ref, divisors, server, fmt):
    """Intersection number of two divisors."""
    if len(divisors) != 2:
        raise InputError("intersect needs exactly two --divisor options")
    payload = {"model": _lattice_payload(model_ref), "a": divisors[0], "b": divisors[1]}
    _emit(_invoke("intersect", payload, server), fmt, _render_intersect)


@main.command("zariski")
@click.option("--model", "model_ref", required=True, metavar="FILE")
@click.option("--divisor", required=True, metavar="EXPR")
@common_options
@engine_errors
def zariski_command(model_ref, divisor, server, fmt):
    """Zariski decomposition D = P + N of an effective divisor."""
    payload = {"model": _lattice_payload(model_ref), "divisor": divisor}
    _emit(_invoke("zariski", payload, server), fmt, _render_zariski)


@_model_command("integral-zariski",
                "Integral Zariski decomposition of a big connected divisor.")
def integral_zariski_command(model_ref, divisor, budget, server, fmt):
    payload = {"model": _lattice_payload(model_ref), "divisor": divisor, "budget": budget}
    _emit(_invoke("integral-zariski", payload, server), fmt, _render_integral_zariski)


@main.command("connectivity")
@click.option("--model", "model_ref", required=True, metavar="FILE")
@click.option("--divisor", required=True, metavar="EXPR")
@click.option("--m", "m_value", default="0", metavar="RATIONAL", show_default=True,
              help="Connectivity threshold for the numerical check.")
@click.option("--strict/--no-strict", default=True, show_default=True,
              help="Require A.B > m (strict) or A.B >= m.")
@click.option("--budget", type=int, default=None, metavar="N")
@common_options
@engine_errors
def connectivity_command(model_ref, divisor, m_value, strict, budget, server, fmt):
    """Chain-connectedness and numerical m-connectedness."""
    payload = {
        "model": _lattice_payload(model_ref), "divisor": divisor,
        "m": m_value, "strict": strict, "budget": budget,
    }
    _emit(_invoke("connectivity", payload, server), fmt, _render_connectivity)


@_model_command("component", "Greatest chain-connected subdivisor with full support.")
def component_command(model_ref, divisor, budget, server, fmt):
    payload = {"model": _lattice_payload(model_ref), "divisor": divisor, "budget": budget}
    _emit(_invoke("component", payload, server), fmt, _render_component)


@main.command("zpositive")
@click.option("--model", "model_ref", required=True, metavar="FILE")
@click.option("--divisor", required=True, metavar="EXPR")
@common_options
@engine_errors
def zpositive_command(model_ref, divisor, server, fmt):
    """Z-positivity with chain or blocking certificate."""
    payload = {"model": _lattice_payload(model_ref), "divisor": divisor}
    _emit(_invoke("zpositive", payload, server), fmt, _render_zpositive)


@main.command("pullback")
@click.option("--resolution", "resolution_ref", required=True, metavar="FILE")
@click.option("--divisor", required=True, metavar="EXPR")
@common_options
@engine_errors
def pullback_command(resolution_ref, divisor, server, fmt):
    """Mumford pull-back of a downstairs divisor."""
    payload = {"resolution": _resolution_payload(resolution_ref), "divisor": divisor}
    _emit(_invoke("pullback", payload, server), fmt, _render_divisor_result)


@main.command("pushforward")
@click.option("--resolution", "resolution_ref", required=True, metavar="FILE")
@click.option("--divisor", required=True, metavar="EXPR")
@common_options
@engine_errors
def pushforward_command(resolution_ref, divisor, server, fmt):
    """Push an upstairs divisor down (drop exceptional parts)."""
    payload = {"resolution": _resolution_payload(resolution_ref), "divisor": divisor}
    _emit(_invoke("pushforward", payload, server), fmt, _render_divisor_result)


@main.command("anticanonical")
@click.option("--resolution", "resolution_ref", required=True, metavar="FILE")
@common_options
@engine_errors
def anticanonical_command(resolution_ref, server, fmt):
    """Anti-canonical cycle of the exceptional set."""
    payload = {"resolution": _resolution_payload(resolution_ref)}
    _emit(_invoke("anticanonical", payload, server), fmt, _render_cycle)


@main.command("fundcycle")
@click.option("--resolution", "resolution_ref", required=True, metavar="FILE")
@common_options
@engine_errors
def fundcycle_command(resolution_ref, server, fmt):
    """Fundamental cycle of the exceptional set."""
    payload = {"resolution": _resolution_payload(resolution_ref)}
    _emit(_invoke("fundcycle", payload, server), fmt, _render_cycle)


@main.command("delta")
@click.option("--resolution", "resolution_ref", required=True, metavar="FILE")
@click.option("--cycle", "cycle_expr", default=None, metavar="EXPR",
              help="Explicit upstairs cycle Z (default: class-appropriate cycle).")
@click.option("--singclass", default=None,
              type=click.Choice(["smooth", "duval", "logterminal", "nonlt"]),
              help="Override the singularity class stored in the file.")
@click.option("--divisor", default=None, metavar="EXPR",
              help="Downstairs divisor for the effectivity condition.")
@click.option("--cluster", "cluster_spec", default=None, metavar="SPEC",
              help="Cluster: [NAME=]P1,P2[@CLASS].")
@common_options
@engine_errors
def delta_command(resolution_ref, cycle_expr, singclass, divisor, cluster_spec, server, fmt):
    """Delta invariant of a cycle choice on a resolution."""
    payload = {
        "resolution": _resolution_payload(resolution_ref),
        "z": cycle_expr,
        "singclass": singclass,
        "divisor": divisor,
        "cluster": _parse_cluster(cluster_spec) if cluster_spec else None,
    }
    _emit(_invoke("delta", payload, server), fmt, _render_delta)


@main.command("dualgraph-b1")
@click.option("--model", "model_ref", required=True, metavar="FILE",
              help="Dual graph file or corpus:NAME.")
@common_options
@engine_errors
def dualgraph_b1_command(model_ref, server, fmt):
    """First Betti number of a curve configuration's dual graph."""
    payload = {"dualgraph": _dualgraph_payload(model_ref)}
    _emit(_invoke("dualgraph-b1", payload, server), fmt, _render_b1)


@main.command("mu")
@click.option("--x", required=True, metavar="RATIONAL")
@click.option("--d", required=True, metavar="RATIONAL")
@common_options
@engine_errors
def mu_command(x, d, server, fmt):
    """Threshold function min{x,d} (d/min{x,d} + 1)^2."""
    _emit(_invoke("mu", {"x": x, "d": d}, server), fmt, _render_mu)


@main.command("qmin")
@click.option("--model", "model_ref", required=True, metavar="FILE")
@click.option("--box", type=int, default=4, show_default=True,
              help="Coefficient box bound for the search.")
@click.option("--cluster", "cluster_spec", default=None, metavar="SPEC")
@click.option("--budget", type=int, default=None, metavar="N")
@common_options
@engine_errors
def qmin_command(model_ref, box, cluster_spec, budget, server, fmt):
    """Least positive self-intersection within a coefficient box."""
    payload = {
        "model": _lattice_payload(model_ref), "box": box,
        "cluster": _parse_cluster(cluster_spec) if cluster_spec else None,
        "budget": budget,
    }
    _emit(_invoke("qmin", payload, server), fmt, _render_qmin)


@main.command("reider")
@click.option("--model", "model_ref", required=True, metavar="FILE")
@click.option("--divisor", required=True, metavar="EXPR")
@click.option("--delta", required=True, metavar="RATIONAL",
              help="Obstruction budget delta (decompositions with A.B <= delta/4).")
@click.option("--cluster", "cluster_spec", required=True, metavar="SPEC")
@click.option("--mode", type=click.Choice(["I", "II"]), default="I", show_default=True)
@click.option("--cond-e/--no-cond-e", "cond_e", default=None,
              help="Whether the pull-back effectivity condition holds (omit to assert).")
@click.option("--dims", "dims_spec", default=None, metavar="SPEC",
              help="Cohomology data: dimD=..,h1n=..,tau=..,frobinj=..")
@click.option("--box", type=int, default=4, show_default=True,
              help="Box for the q search (mode II threshold).")
@click.option("--budget", type=int, default=None, metavar="N")
@click.option("--acknowledge-asserted", "acknowledged", is_flag=True, default=False,
              help="Accept user-asserted hypotheses as established.")
@common_options
@engine_errors
def reider_command(model_ref, divisor, delta, cluster_spec, mode, cond_e, dims_spec,
                   box, budget, acknowledged, server, fmt):
    """Reider-type obstruction search over effective decompositions."""
    payload = {
        "model": _lattice_payload(model_ref), "divisor": divisor, "delta": delta,
        "cluster": _parse_cluster(cluster_spec), "mode": mode, "cond_e": cond_e,
        "dims": _parse_dims(dims_spec) if dims_spec else None,
        "box": box, "budget": budget, "acknowledged": acknowledged,
    }
    _emit(_invoke("reider", payload, server), fmt, _render_report_resp)


@main.command("bpf")
@click.option("--dsq", required=True, metavar="RATIONAL", help="Self-intersection D^2.")
@click.option("--db-min", required=True, metavar="RATIONAL",
              help="Minimum of D.B over curves through the point.")
@click.option("--alpha", required=True, metavar="RATIONAL")
@click.option("--beta", required=True, metavar="RATIONAL")
@click.option("--singclass", required=True,
              type=click.Choice(["smooth", "duval", "logterminal", "nonlt"]))
@click.option("--delta-override", default=None, metavar="RATIONAL",
              help="Point delta for the logterminal class.")
@click.option("--tau-override", default=None, metavar="RATIONAL",
              help="Dimension correction for non-tabulated classes.")
@click.option("--dims", "dims_spec", default=None, metavar="SPEC")
@click.option("--acknowledge-asserted", "acknowledged", is_flag=True, default=False)
@common_options
@engine_errors
def bpf_command(dsq, db_min, alpha, beta, singclass, delta_override, tau_override,
                dims_spec, acknowledged, server, fmt):
    """Base-point-freeness criterion for an adjoint system at a point."""
    payload = {
        "dsq": dsq, "db_min": db_min, "alpha": alpha, "beta": beta,
        "singclass": singclass, "delta_override": delta_override,
        "tau_override": tau_override,
        "dims": _parse_dims(dims_spec) if dims_spec else None,
        "acknowledged": acknowledged,
    }
    _emit(_invoke("bpf", payload, server), fmt, _render_report_resp)


@main.command("very-ample")
@click.option("--dsq", required=True, metavar="RATIONAL")
@click.option("--db-min", required=True, metavar="RATIONAL")
@click.option("--alpha", required=True, metavar="RATIONAL")
@click.option("--beta", required=True, metavar="RATIONAL")
@click.option("--dims", "dims_spec", default=None, metavar="SPEC")
@click.option("--acknowledge-asserted", "acknowledged", is_flag=True, default=False)
@common_options
@engine_errors
def very_ample_command(dsq, db_min, alpha, beta, dims_spec, acknowledged, server, fmt):
    """Very-ampleness criterion for an adjoint system."""
    payload = {
        "dsq": dsq, "db_min": db_min, "alpha": alpha, "beta": beta,
        "dims": _parse_dims(dims_spec) if dims_spec else None,
        "acknowledged": acknowledged,
    }
    _emit(_invoke("very-ample", payload, server), fmt, _render_report_resp)


@main.command("fujita")
@click.option("--m", type=int, required=True, help="Multiple of the ample divisor.")
@click.option("--hsq", required=True, metavar="RATIONAL", help="H^2.")
@click.option("--question", type=click.Choice(["bpf", "va"]), default=None,
              help="Restrict to one conclusion (default: report both).")
@click.option("--dims", "dims_spec", default=None, metavar="SPEC")
@click.option("--acknowledge-asserted", "acknowledged", is_flag=True, default=False)
@common_options
@engine_errors
def fujita_command(m, hsq, question, dims_spec, acknowledged, server, fmt):
    """Adjoint multiples of an ample Cartier divisor."""
    payload = {
        "m": m, "hsq": hsq, "question": question,
        "dims": _parse_dims(dims_spec) if dims_spec else None,
        "acknowledged": acknowledged,
    }
    _emit(_invoke("fujita", payload, server), fmt, _render_reports_resp)


@main.command("pluri")
@click.option("--case", type=click.IntRange(1, 5), required=True,
              help="1: K ample Cartier bpf; 2: canonical va; 3: del Pezzo; "
                   "4: index r bpf; 5: klt del Pezzo index r bpf.")
@click.option("--m", type=int, required=True)
@click.option("--ksq", required=True, metavar="RATIONAL", help="K^2.")
@click.option("--r", type=int, default=None, help="Cartier index (cases 4 and 5).")
@click.option("--question", type=click.Choice(["bpf", "va"]), default=None)
@click.option("--dims", "dims_spec", default=None, metavar="SPEC")
@click.option("--acknowledge-asserted", "acknowledged", is_flag=True, default=False)
@common_options
@engine_errors
def pluri_command(case, m, ksq, r, question, dims_spec, acknowledged, server, fmt):
    """Pluri-(anti)canonical system criteria."""
    payload = {
        "case": case, "m": m, "ksq": ksq, "r": r, "question": question,
        "dims": _parse_dims(dims_spec) if dims_spec else None,
        "acknowledged": acknowledged,
    }
    _emit(_invoke("pluri", payload, server), fmt, _render_reports_resp)


@main.command("extension")
@click.option("--dsq", required=True, metavar="RATIONAL", help="D^2.")
@click.option("--d", "degree", type=int, required=True, help="Degree of the map on D.")
@click.option("--q", required=True, metavar="RATIONAL",
              help="Minimal positive square (q or its movable variant).")
@click.option("--variant", type=click.Choice(["plain", "base_points", "movable"]),
              default="plain", show_default=True)
@click.option("--dims", "dims_spec", default=None, metavar="SPEC")
@click.option("--acknowledge-asserted", "acknowledged", is_flag=True, default=False)
@common_options
@engine_errors
def extension_command(dsq, degree, q, variant, dims_spec, acknowledged, server, fmt):
    """Extension of a degree-d map on D to the whole surface."""
    payload = {
        "dsq": dsq, "d": degree, "q": q, "variant": variant,
        "dims": _parse_dims(dims_spec) if dims_spec else None,
        "acknowledged": acknowledged,
    }
    _emit(_invoke("extension", payload, server), fmt, _render_report_resp)


@main.command("gonality")
@click.option("--m", type=int, required=True, help="Degree of the smooth plane curve.")
@common_options
@engine_errors
def gonality_command(m, server, fmt):
    """Gonality lower bound for a smooth plane curve."""
    _emit(_invoke("gonality", {"m": m}, server), fmt, _render_gonality)


@main.command("frobenius")
@click.option("--matrix", "matrix_spec", required=True, metavar="SPEC",
              help="Operator matrix: rows ';'-separated, integer entries ','-separated.")
@click.option("--p", type=int, required=True, help="Prime field order.")
@common_options
@engine_errors
def frobenius_command(matrix_spec, p, server, fmt):
    """Semisimple/nilpotent dimension split of a p-linear operator over F_p."""
    payload = {"matrix": _parse_matrix(matrix_spec), "p": p}
    _emit(_invoke("frobenius", payload, server), fmt, _render_frobenius)


@main.group(name="corpus")
def corpus_group():
    """Bundled example models."""


@corpus_group.command("list")
@engine_errors
def corpus_list_command():
    """List bundled model names."""
    for name in corpus.corpus_names():
        click.echo(name)


@corpus_group.command("show")
@click.argument("name")
@engine_errors
def corpus_show_command(name):
    """Print a bundled model file."""
    click.echo(json.dumps(handlers.corpus_show(name), indent=2, ensure_ascii=False))


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8717, show_default=True)
def serve_command(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
