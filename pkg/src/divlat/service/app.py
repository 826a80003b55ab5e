"""FastAPI application: one POST route per command under /v1.

Engine errors surface as structured JSON bodies with the stable error
code; budget exhaustion maps to 429, every other engine rejection to
422. Unexpected exceptions are not masked.
"""
from __future__ import annotations

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import BudgetError, DivlatError
from . import handlers
from . import schemas as S


def _status_for(exc: DivlatError) -> int:
    return 429 if isinstance(exc, BudgetError) else 422


def create_app() -> FastAPI:
    app = FastAPI(
        title="divlat",
        version=__version__,
        description="Exact intersection theory on divisor lattices of normal surfaces.",
    )

    @app.exception_handler(DivlatError)
    async def _divlat_error(request, exc: DivlatError):
        details = {
            k: v for k, v in exc.details.items()
            if isinstance(v, (str, int, bool)) or v is None
        }
        body = S.ErrorResponse(
            error=S.ErrorBody(code=exc.code, message=exc.message, details=details)
        )
        return JSONResponse(status_code=_status_for(exc), content=body.model_dump())

    @app.exception_handler(RequestValidationError)
    async def _request_error(request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        loc = ".".join(str(p) for p in first.get("loc", ()) if p != "body")
        msg = first.get("msg", "invalid request")
        body = S.ErrorResponse(
            error=S.ErrorBody(
                code="E_INPUT",
                message=f"{loc}: {msg}" if loc else msg,
            )
        )
        return JSONResponse(status_code=422, content=body.model_dump())

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok", "version": __version__}

    @app.get("/v1/corpus", response_model=S.CorpusListResponse)
    async def corpus_list():
        return handlers.corpus_list()

    @app.get("/v1/corpus/{name}")
    async def corpus_show(name: str):
        return handlers.corpus_show(name)

    def _register(command: str, request_model, handler):
        async def route(req):
            return handler(req)

        # set the class object directly: stringified annotations from the
        # closure would not resolve during FastAPI's signature inspection
        route.__annotations__ = {"req": request_model}
        route.__name__ = f"cmd_{command.replace('-', '_')}"
        app.post(f"/v1/{command}", response_model=None)(route)

    for command, (request_model, handler) in handlers.HANDLERS.items():
        _register(command, request_model, handler)

    return app


app = create_app()
