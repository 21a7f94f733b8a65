"""HTTP front for the clinic: the program API plus the browser console.

Two fronts, one service core. When a built console bundle is present its
directory is mounted at the root, so the same process serves operators
and machines.
"""

from __future__ import annotations

import os
from datetime import date

from fastapi import Depends, FastAPI, Request, Response
from pydantic import BaseModel, Field

from ..domain.codec import appointment_to_doc, note_to_doc
from ..domain.model import Medicine
from ..sync.atom import parse_feed, serialize_feed
from ..sync.feed import apply_feed, generate_feed
from ..timeutil import from_rfc3339
from ..world import World


class LoginBody(BaseModel):
    principal_id: str
    secret: str


class AppointmentBody(BaseModel):
    patient_id: str
    start: str  # RFC3339
    duration_min: int


class NoteBody(BaseModel):
    body: str


class MedicineBody(BaseModel):
    name: str
    dosage: str = ""
    quantity: int = 1
    refills_remaining: int = 0


class PrescriptionBody(BaseModel):
    patient_id: str
    pharmacy_id: str
    medicines: list[MedicineBody] = Field(min_length=1)


def create_clinic_app(world: World, ui_dir: str = "") -> FastAPI:
    from ..httpcommon import bearer_token, install_conventions

    app = FastAPI(title="clinic", docs_url=None, redoc_url=None)
    install_conventions(app)
    clinic = world.clinic

    @app.post("/api/login")
    def login(body: LoginBody) -> dict:
        return {"token": world.login(body.principal_id, body.secret, service="clinic")}

    @app.get("/api/appointments")
    def list_appointments(
        range: str = "day", anchor: str = "", token: str = Depends(bearer_token)
    ) -> list[dict]:
        anchor_date = date.fromisoformat(anchor) if anchor else world.clinic._clock().date()
        rows = clinic.list_appointments(token, range, anchor_date)
        return [appointment_to_doc(a) for a in rows]

    @app.post("/api/appointments", status_code=201)
    def schedule(body: AppointmentBody, token: str = Depends(bearer_token)) -> dict:
        appt = clinic.schedule_appointment(
            token, body.patient_id, from_rfc3339(body.start), body.duration_min
        )
        return appointment_to_doc(appt)

    @app.post("/api/patients/{patient_id}/notes", status_code=201)
    def add_note(patient_id: str, body: NoteBody, token: str = Depends(bearer_token)) -> dict:
        return note_to_doc(clinic.add_note(token, patient_id, body.body))

    @app.post("/api/prescriptions", status_code=201)
    def submit(body: PrescriptionBody, token: str = Depends(bearer_token)) -> dict:
        medicines = [
            Medicine(m.name, m.dosage, m.quantity, m.refills_remaining) for m in body.medicines
        ]
        receipt = clinic.submit_prescription(token, body.patient_id, body.pharmacy_id, medicines)
        return {
            "prescription_id": receipt.prescription_id,
            "pharmacy_id": receipt.pharmacy_id,
            "submitted_at": receipt.submitted_at,
            "acked_at": receipt.acked_at,
            "latency_s": receipt.latency_s,
            "status": receipt.status,
        }

    @app.get("/api/pharmacies/nearest")
    def nearest(lat: float, lon: float, token: str = Depends(bearer_token)) -> dict:
        entry = clinic.find_nearest(token, lat, lon)
        return {
            "pharmacy_id": entry.pharmacy_id,
            "name": entry.name,
            "latitude": entry.latitude,
            "longitude": entry.longitude,
        }

    @app.get("/api/sync/feed")
    def sync_feed(since: str = "start", token: str = Depends(bearer_token)) -> Response:
        world.clinic_sessions.record(token, "sync_feed", since)
        feed = generate_feed(clinic.store, since)
        return Response(content=serialize_feed(feed), media_type="application/atom+xml")

    @app.post("/api/sync/apply")
    async def sync_apply(request: Request, token: str = Depends(bearer_token)) -> dict:
        body = await request.body()
        world.clinic_sessions.record(token, "sync_apply", "-")
        return apply_feed(clinic.store, parse_feed(body)).as_dict()

    if ui_dir and os.path.isdir(ui_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="console")

    return app
