#!/usr/bin/env python3
"""Serve a demo deployment: clinic on one port, a pharmacy on another.

The two apps share one in-process world, so what the physician submits
through the clinic shows up in the pharmacist's queue immediately. If a
console bundle exists at frontend/dist it is served at the clinic root.

  python3 scripts/serve_demo.py [--clinic-port 8600] [--pharmacy-port 8601] [--seed 0]

Demo logins (secret is pw-<id>): dr-alice, nurse-nina, bob-pharmacist,
pat-patient, admin.
"""

import argparse
import pathlib
import threading

import uvicorn

from carelink.clinic.http import create_clinic_app
from carelink.pharmacy.http import create_pharmacy_app
from carelink.world import build_world


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--clinic-port", type=int, default=8600)
    parser.add_argument("--pharmacy-port", type=int, default=8601)
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    world = build_world(seed=args.seed)
    ui_dir = pathlib.Path(__file__).resolve().parent.parent / "frontend" / "dist"
    clinic_app = create_clinic_app(world, ui_dir=str(ui_dir))
    pharmacy_app = create_pharmacy_app(world, "PH-CENTRAL")

    pharmacy_config = uvicorn.Config(
        pharmacy_app, host=args.host, port=args.pharmacy_port, log_level="warning"
    )
    pharmacy_server = uvicorn.Server(pharmacy_config)
    thread = threading.Thread(target=pharmacy_server.run, daemon=True)
    thread.start()

    print(f"clinic:   http://{args.host}:{args.clinic_port}  (console at /)")
    print(f"pharmacy: http://{args.host}:{args.pharmacy_port}")
    uvicorn.run(clinic_app, host=args.host, port=args.clinic_port, log_level="warning")


if __name__ == "__main__":
    main()
