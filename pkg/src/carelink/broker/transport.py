"""Delivery of broker messages to endpoints, with injectable faults.

The in-process transport binds endpoint addresses straight to dispatchers
and is what tests and the bench use. The HTTP transport posts the same
envelope to a live node.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Protocol

from .dispatcher import Dispatcher
from .messages import BrokerMessage


class EndpointDown(Exception):
    pass


class Timeout(Exception):
    pass


class Transport(Protocol):
    def send(self, endpoint: str, msg: BrokerMessage, timeout_s: float) -> bytes:
        ...


@dataclass
class _Fault:
    mode: str  # "down" | "timeout" | "die_after_effect"
    remaining: Optional[int]  # sends left before auto-heal; None is sticky


class InProcessTransport:
    """Endpoint address -> local dispatcher, plus per-endpoint fault taps."""

    FAULT_MODES = ("down", "timeout", "die_after_effect")

    def __init__(self):
        self._nodes: dict[str, Dispatcher] = {}
        self._faults: dict[str, _Fault] = {}
        self.attempts: dict[str, int] = {}

    def bind(self, endpoint: str, dispatcher: Dispatcher) -> None:
        self._nodes[endpoint] = dispatcher

    def fail(self, endpoint: str, mode: str = "down", times: Optional[int] = None) -> None:
        if mode not in self.FAULT_MODES:
            raise ValueError(f"unknown fault mode: {mode}")
        self._faults[endpoint] = _Fault(mode, times)

    def heal(self, endpoint: str) -> None:
        self._faults.pop(endpoint, None)

    def _consume_fault(self, endpoint: str) -> Optional[str]:
        fault = self._faults.get(endpoint)
        if fault is None:
            return None
        if fault.remaining is not None:
            fault.remaining -= 1
            if fault.remaining <= 0:
                del self._faults[endpoint]
        return fault.mode

    def send(self, endpoint: str, msg: BrokerMessage, timeout_s: float) -> bytes:
        self.attempts[endpoint] = self.attempts.get(endpoint, 0) + 1
        dispatcher = self._nodes.get(endpoint)
        mode = self._consume_fault(endpoint)
        if mode == "down" or dispatcher is None:
            raise EndpointDown(endpoint)
        if mode == "timeout":
            raise Timeout(f"{endpoint} after {timeout_s}s")
        reply = dispatcher.dispatch(msg)
        if mode == "die_after_effect":
            # the handler ran; only the reply is lost, so the caller retries
            raise EndpointDown(f"{endpoint} (reply lost)")
        return reply


class HttpTransport:
    """Posts the envelope to {endpoint}/api/broker on a running node."""

    def __init__(self, client=None):
        if client is None:
            import httpx

            client = httpx.Client()
        self._client = client

    def send(self, endpoint: str, msg: BrokerMessage, timeout_s: float) -> bytes:
        import httpx

        try:
            resp = self._client.post(
                f"{endpoint}/api/broker", json=msg.to_wire(), timeout=timeout_s
            )
        except httpx.TimeoutException as exc:
            raise Timeout(str(exc)) from exc
        except httpx.TransportError as exc:
            raise EndpointDown(str(exc)) from exc
        if resp.status_code >= 500:
            raise EndpointDown(f"{endpoint} -> {resp.status_code}")
        resp.raise_for_status()
        return bytes.fromhex(resp.json()["payload"])
