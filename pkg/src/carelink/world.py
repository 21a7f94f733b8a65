"""One-call assembly of a complete simulated deployment.

Builds the clinic, three pharmacies (the central one replicated on two
endpoints), the registry, the in-process transport, the air link, demo
principals with login secrets, and per-principal air-interface keys.
Tests, the latency bench, and the demo servers all start here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .broker.client import ClientBroker
from .broker.dispatcher import Dispatcher
from .broker.named_store import STORE_NAMES, NamedStore, expose_store
from .broker.registry import ServiceRegistry
from .broker.transport import InProcessTransport
from .clinic.directory import LocalDirectory, PharmacyDirectoryEntry
from .clinic.service import ClinicService
from .domain.model import Principal, Role
from .domain.sessions import InvalidSession, SessionManager
from .gsm.link import GsmLink, LinkConfig
from .ids import seeded_ids
from .pharmacy.service import PharmacyService
from .security.auth import SubscriberKey
from .sync.store import ReplicaStore
from .timeutil import Clock, utc_now

PHARMACY_IDS = ("PH-CENTRAL", "PH-EAST", "PH-WEST")

DEMO_PRINCIPALS = (
    Principal("dr-alice", Role.PHYSICIAN, "Dr. Alice Moreau"),
    Principal("dr-omar", Role.PHYSICIAN, "Dr. Omar Haddad"),
    Principal("nurse-nina", Role.NURSE, "Nina Kovacs, RN"),
    Principal("bob-pharmacist", Role.PHARMACIST, "Bob Okafor, PharmD", pharmacy_id="PH-CENTRAL"),
    Principal("east-pharmacist", Role.PHARMACIST, "Dee Tran, PharmD", pharmacy_id="PH-EAST"),
    Principal("pat-patient", Role.PATIENT, "Pat Rivera"),
    Principal("sam-patient", Role.PATIENT, "Sam Chen"),
    Principal("admin", Role.PRIVILEGED, "System Administrator"),
)

DIRECTORY_FIXTURE = (
    PharmacyDirectoryEntry("PH-CENTRAL", "Central Pharmacy", 40.7128, -74.0060),
    PharmacyDirectoryEntry("PH-EAST", "Eastside Dispensary", 40.7306, -73.9515),
    PharmacyDirectoryEntry("PH-WEST", "Westbank Drugs", 40.7100, -74.0500),
)


class BadCredentials(Exception):
    pass


@dataclass
class World:
    principals: dict[str, Principal]
    secrets: dict[str, str]
    subscriber_keys: dict[str, SubscriberKey]
    registry: ServiceRegistry
    transport: InProcessTransport
    broker: ClientBroker
    link: GsmLink
    directory: LocalDirectory
    clinic: ClinicService
    clinic_sessions: SessionManager
    pharmacies: dict[str, PharmacyService] = field(default_factory=dict)
    pharmacy_sessions: dict[str, SessionManager] = field(default_factory=dict)
    named_stores: dict[str, NamedStore] = field(default_factory=dict)

    def login(self, principal_id: str, secret: str, service: str = "clinic") -> str:
        if self.secrets.get(principal_id) != secret:
            raise BadCredentials(principal_id)
        principal = self.principals[principal_id]
        if service == "clinic":
            return self.clinic_sessions.open(principal).token
        if service in self.pharmacy_sessions:
            return self.pharmacy_sessions[service].open(principal).token
        raise InvalidSession(f"no such service: {service}")


def demo_secret(principal_id: str) -> str:
    return f"pw-{principal_id}"


def build_world(
    seed: int = 0,
    link_cfg: Optional[LinkConfig] = None,
    base_service_ms: float = 5.0,
    per_medicine_ms: float = 5.0,
    clock: Clock = utc_now,
) -> World:
    rng = random.Random(seed)
    principals = {p.id: p for p in DEMO_PRINCIPALS}
    secrets = {pid: demo_secret(pid) for pid in principals}
    subscriber_keys = {pid: SubscriberKey(rng.randbytes(16)) for pid in sorted(principals)}

    registry = ServiceRegistry()
    transport = InProcessTransport()
    broker = ClientBroker(registry, transport, ids=seeded_ids(rng.getrandbits(32)))
    link = GsmLink(link_cfg or LinkConfig(rng_seed=seed))
    directory = LocalDirectory(DIRECTORY_FIXTURE)

    clinic_node = Dispatcher()
    transport.bind("node://clinic", clinic_node)
    named_stores = {}
    for store_name in STORE_NAMES:
        named = NamedStore()
        named_stores[store_name] = named
        expose_store(clinic_node, store_name, named)
        registry.register(store_name, "node://clinic")

    pharmacies: dict[str, PharmacyService] = {}
    pharmacy_sessions: dict[str, SessionManager] = {}
    for pharmacy_id in PHARMACY_IDS:
        sessions = SessionManager(clock=clock)
        service = PharmacyService(
            pharmacy_id=pharmacy_id,
            store=ReplicaStore(f"pharmacy-{pharmacy_id}", clock=clock),
            sessions=sessions,
            principals=principals,
            subscriber_keys=subscriber_keys,
            ids=seeded_ids(rng.getrandbits(32)),
            clock=clock,
            base_service_ms=base_service_ms,
            per_medicine_ms=per_medicine_ms,
        )
        node = Dispatcher()
        node.expose(f"pharmacy.{pharmacy_id}", "intake", service.handle_intake)
        primary = f"node://{pharmacy_id.lower()}-1"
        transport.bind(primary, node)
        registry.register(f"pharmacy.{pharmacy_id}", primary)
        if pharmacy_id == "PH-CENTRAL":
            # same service reachable at a second address: a replica that
            # shares state, standing in for a mirrored node
            replica = f"node://{pharmacy_id.lower()}-2"
            transport.bind(replica, node)
            registry.register(f"pharmacy.{pharmacy_id}", replica)
        pharmacies[pharmacy_id] = service
        pharmacy_sessions[pharmacy_id] = sessions

    clinic_sessions = SessionManager(clock=clock)
    clinic = ClinicService(
        store=ReplicaStore("clinic", clock=clock),
        sessions=clinic_sessions,
        principals=principals,
        subscriber_keys=subscriber_keys,
        broker=broker,
        link=link,
        directory=directory,
        ids=seeded_ids(rng.getrandbits(32)),
        clock=clock,
    )

    return World(
        principals=principals,
        secrets=secrets,
        subscriber_keys=subscriber_keys,
        registry=registry,
        transport=transport,
        broker=broker,
        link=link,
        directory=directory,
        clinic=clinic,
        clinic_sessions=clinic_sessions,
        pharmacies=pharmacies,
        pharmacy_sessions=pharmacy_sessions,
        named_stores=named_stores,
    )
