"""HTTP front for one pharmacy: intake for machines, the rest for people.

Intake carries its own authentication (the challenge-response handshake
inside the envelope), so it is the one endpoint without a bearer token.
"""

from __future__ import annotations

from fastapi import Depends, FastAPI, Request, Response
from pydantic import BaseModel

from ..broker.messages import BrokerMessage
from ..domain.codec import prescription_to_doc
from ..domain.model import PrescriptionEvent, legal_events
from ..sync.atom import parse_feed, serialize_feed
from ..sync.feed import apply_feed, generate_feed
from ..world import World


class LoginBody(BaseModel):
    principal_id: str
    secret: str


class StatusBody(BaseModel):
    event: str


def _rx_view(p) -> dict:
    doc = prescription_to_doc(p)
    doc["legal_events"] = [e.value for e in legal_events(p.status)]
    return doc


def create_pharmacy_app(world: World, pharmacy_id: str) -> FastAPI:
    from ..httpcommon import bearer_token, install_conventions

    app = FastAPI(title=f"pharmacy-{pharmacy_id}", docs_url=None, redoc_url=None)
    install_conventions(app)
    service = world.pharmacies[pharmacy_id]
    sessions = world.pharmacy_sessions[pharmacy_id]

    @app.post("/api/login")
    def login(body: LoginBody) -> dict:
        return {"token": world.login(body.principal_id, body.secret, service=pharmacy_id)}

    @app.post("/api/intake")
    async def intake(request: Request) -> dict:
        msg = BrokerMessage.from_wire(await request.json())
        reply = service.handle_intake(msg)
        return {"payload": reply.hex()}

    @app.get("/api/prescriptions")
    def outstanding(status: str = "outstanding", token: str = Depends(bearer_token)) -> list[dict]:
        if status != "outstanding":
            raise ValueError(f"unsupported status filter: {status}")
        return [_rx_view(p) for p in service.list_outstanding(token)]

    @app.post("/api/prescriptions/{prescription_id}/status")
    def set_status(
        prescription_id: str, body: StatusBody, token: str = Depends(bearer_token)
    ) -> dict:
        event = PrescriptionEvent(body.event)
        return _rx_view(service.set_status(token, prescription_id, event))

    @app.get("/api/patients/{patient_id}/prescriptions")
    def patient_prescriptions(patient_id: str, token: str = Depends(bearer_token)) -> list[dict]:
        return [_rx_view(p) for p in service.patient_prescriptions(token, patient_id)]

    @app.post("/api/prescriptions/{prescription_id}/renewal", status_code=201)
    def renewal(prescription_id: str, token: str = Depends(bearer_token)) -> dict:
        return _rx_view(service.request_renewal(token, prescription_id))

    @app.get("/api/sync/feed")
    def sync_feed(since: str = "start", token: str = Depends(bearer_token)) -> Response:
        sessions.record(token, "sync_feed", since)
        feed = generate_feed(service.store, since)
        return Response(content=serialize_feed(feed), media_type="application/atom+xml")

    @app.post("/api/sync/apply")
    async def sync_apply(request: Request, token: str = Depends(bearer_token)) -> dict:
        body = await request.body()
        sessions.record(token, "sync_apply", "-")
        return apply_feed(service.store, parse_feed(body)).as_dict()

    return app
