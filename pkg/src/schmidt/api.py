"""FastAPI service exposing the library; the CLI is a thin client of it.

Exact values (Fractions) cross the wire as strings; circle records use
the canonical JSON schema {"delta", "curv", "cocurv", "zeta": [a, b]}.
All list outputs are sorted by canonical key, so responses are
deterministic and byte-stable.
"""

from __future__ import annotations

from fastapi import FastAPI, Query, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .arrangement import (
    Window,
    disconnectedness_witness,
    enumerate_arrangement,
    ghost_circle,
    ghost_separation,
    parallelogram_count,
    predicted_parallelogram_count,
    tangency_path,
)
from .circle import OrientedCircle, circle_from_matrix
from .errors import CertificateFailureError, NoGhostCircleError, SchmidtError
from .lattice import class_number, enumerate_residues, order_class_number
from .quadint import validate_discriminant
from .moebius import parse_matrix
from .render import RenderSpec, render_svg


class FieldInfo(BaseModel):
    delta: int
    tau_convention: str
    units: int
    unit_index: int = Field(description="order of O_K^* / O_f^* for f > 1")
    euclidean: bool
    connected: bool
    class_number: int
    ghost_curv_sq: str | None


class CircleRecord(BaseModel):
    delta: int
    curv: int
    cocurv: int
    zeta: list[int]


class EnumerateResponse(BaseModel):
    delta: int
    bound: int
    window: str
    count: int
    circles: list[CircleRecord]


class CountRow(BaseModel):
    f: int
    residues: int
    h_f: int
    kernel: int
    geometric: int
    predicted: int
    classical_2hf: int
    matches_predicted: bool
    matches_classical: bool


class CountResponse(BaseModel):
    delta: int
    h_k: int
    rows: list[CountRow]
    consistent: bool
    note: str


class GhostInfo(BaseModel):
    delta: int
    exists: bool
    curv_sq: str | None = None
    center_x: str | None = None
    center_y_im: str | None = None
    radius: float | None = None


class GhostCheckResponse(BaseModel):
    delta: int
    bound: int
    window: str
    circles_checked: int
    all_separated: bool
    min_product_abs: float | None
    failures: list[CircleRecord]


class PathRequest(BaseModel):
    m1: str
    m2: str


class PathResponse(BaseModel):
    delta: int
    length: int
    verified: bool
    circles: list[CircleRecord]


class WitnessResponse(BaseModel):
    delta: int
    inside: CircleRecord
    outside: CircleRecord
    ghost: GhostInfo


class RenderRequest(BaseModel):
    window: str = "fund"
    bound: int = 20
    absolute_bound: bool = False
    width_px: int = 800
    stroke_scale: float = 0.01
    color: str = "#18186b"
    color_by_curv: bool = False
    include_lines: bool = True
    show_ghost: bool = False


def _record(c: OrientedCircle) -> CircleRecord:
    return CircleRecord(**c.to_record())


def create_app() -> FastAPI:
    app = FastAPI(title="schmidt-arrangements", version="0.1.0")

    @app.exception_handler(SchmidtError)
    async def _schmidt_error(request: Request, exc: SchmidtError):
        status = 409 if isinstance(exc, CertificateFailureError) else 422
        return JSONResponse(
            status_code=status,
            content={"detail": f"{type(exc).__name__}: {exc}"},
        )

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/fields/{delta}", response_model=FieldInfo)
    def field_info(delta: int):
        ctx = validate_discriminant(delta)
        g = ghost_circle(ctx)
        return FieldInfo(
            delta=delta,
            tau_convention="sqrt(D)/2" if delta % 4 == 0 else "(1+sqrt(D))/2",
            units=len(ctx.units()),
            unit_index={-4: 2, -3: 3}.get(delta, 1),
            euclidean=ctx.is_euclidean,
            connected=ctx.is_euclidean,
            class_number=class_number(ctx),
            ghost_curv_sq=str(g.curv_sq) if g else None,
        )

    @app.get("/fields/{delta}/count", response_model=CountResponse)
    def count(delta: int, fmax: int = Query(ge=1)):
        ctx = validate_discriminant(delta)
        hk = class_number(ctx)
        rows = []
        consistent = True
        for f in range(1, fmax + 1):
            hf = order_class_number(ctx, f)
            kernel = hf // hk
            geometric = parallelogram_count(ctx, f)
            predicted = predicted_parallelogram_count(ctx, f)
            classical = 1 if (delta == -4 and f == 1) else 2 * hf
            ok_pred = geometric == predicted
            consistent = consistent and ok_pred
            rows.append(
                CountRow(
                    f=f,
                    residues=len(enumerate_residues(ctx, f)),
                    h_f=hf,
                    kernel=kernel,
                    geometric=geometric,
                    predicted=predicted,
                    classical_2hf=classical,
                    matches_predicted=ok_pred,
                    matches_classical=geometric == classical,
                )
            )
        note = (
            "geometric = 2*|residues| (|residues| for D=-4); equals the classical "
            "2*h_f exactly when h_K = 1 and the unit index is trivial"
        )
        return CountResponse(delta=delta, h_k=hk, rows=rows, consistent=consistent, note=note)

    @app.get("/fields/{delta}/circles", response_model=EnumerateResponse)
    def circles(
        delta: int,
        bound: int = Query(ge=1),
        window: str = "fund",
        include_lines: bool = False,
        oriented: bool = False,
        absolute_bound: bool = False,
    ):
        from .render import reduced_bound

        ctx = validate_discriminant(delta)
        win = Window.parse(window, ctx)
        fmax = reduced_bound(ctx, bound, absolute_bound)
        found = enumerate_arrangement(ctx, fmax, win, include_lines=include_lines, oriented=oriented)
        recs = [_record(c) for c in found]
        return EnumerateResponse(
            delta=delta, bound=bound, window=win.spec_string(), count=len(recs), circles=recs
        )

    @app.get("/fields/{delta}/ghost", response_model=GhostInfo)
    def ghost(delta: int):
        ctx = validate_discriminant(delta)
        g = ghost_circle(ctx)
        if g is None:
            return GhostInfo(delta=delta, exists=False)
        return GhostInfo(
            delta=delta,
            exists=True,
            curv_sq=str(g.curv_sq),
            center_x=str(g.center_x),
            center_y_im=str(g.center_y),
            radius=g.radius_float,
        )

    @app.get("/fields/{delta}/ghost-check", response_model=GhostCheckResponse)
    def ghost_check(delta: int, bound: int = Query(ge=1), window: str = "-2,3,-2,3"):
        ctx = validate_discriminant(delta)
        g = ghost_circle(ctx)
        if g is None:
            raise NoGhostCircleError(f"discriminant {delta} has no ghost circle")
        win = Window.parse(window, ctx)
        found = enumerate_arrangement(ctx, bound, win, include_lines=True)
        worst = None
        failures = []
        for c in found:
            try:
                cert = ghost_separation(c, g)
            except CertificateFailureError:
                failures.append(_record(c))
                continue
            if worst is None or abs(cert.product_float) < worst:
                worst = abs(cert.product_float)
        return GhostCheckResponse(
            delta=delta,
            bound=bound,
            window=win.spec_string(),
            circles_checked=len(found),
            all_separated=not failures,
            min_product_abs=worst,
            failures=failures,
        )

    @app.get("/fields/{delta}/witness", response_model=WitnessResponse)
    def witness(delta: int, bound: int = 10):
        ctx = validate_discriminant(delta)
        inside, outside, g = disconnectedness_witness(ctx, bound)
        return WitnessResponse(
            delta=delta,
            inside=_record(inside),
            outside=_record(outside),
            ghost=ghost(delta),
        )

    @app.post("/fields/{delta}/path", response_model=PathResponse)
    def path(delta: int, req: PathRequest):
        ctx = validate_discriminant(delta)
        m1 = parse_matrix(req.m1, ctx)
        m2 = parse_matrix(req.m2, ctx)
        chain = tangency_path(m1, m2)
        verified = chain[-1].same_unoriented(circle_from_matrix(m2))
        return PathResponse(
            delta=delta, length=len(chain), verified=verified, circles=[_record(c) for c in chain]
        )

    @app.post("/fields/{delta}/render")
    def render(delta: int, req: RenderRequest):
        ctx = validate_discriminant(delta)
        win = Window.parse(req.window, ctx)
        spec = RenderSpec(
            window=win,
            bound=req.bound,
            absolute_bound=req.absolute_bound,
            width_px=req.width_px,
            stroke_scale=req.stroke_scale,
            color=req.color,
            color_by_curv=req.color_by_curv,
            include_lines=req.include_lines,
            show_ghost=req.show_ghost,
        )
        svg, count = render_svg(ctx, spec)
        return Response(
            content=svg,
            media_type="image/svg+xml",
            headers={"X-Circle-Count": str(count)},
        )

    return app


app = create_app()
