from .client import AllReplicasFailed, ClientBroker, DEFAULT_TIMEOUT_S, RETRY_BUDGET
from .dispatcher import Dispatcher, UnknownOperation
from .messages import BrokerMessage
from .named_store import STORE_NAMES, NamedStore, expose_store
from .registry import (
    DuplicateEndpoint,
    ServiceRecord,
    ServiceRegistry,
    UnknownService,
    dump_registry,
    load_registry,
)
from .transport import EndpointDown, HttpTransport, InProcessTransport, Timeout

__all__ = [
    "AllReplicasFailed",
    "BrokerMessage",
    "ClientBroker",
    "DEFAULT_TIMEOUT_S",
    "Dispatcher",
    "DuplicateEndpoint",
    "EndpointDown",
    "HttpTransport",
    "InProcessTransport",
    "NamedStore",
    "RETRY_BUDGET",
    "STORE_NAMES",
    "ServiceRecord",
    "ServiceRegistry",
    "Timeout",
    "UnknownOperation",
    "UnknownService",
    "dump_registry",
    "expose_store",
    "load_registry",
]
