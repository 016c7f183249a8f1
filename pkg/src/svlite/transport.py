"""UDP carriage of sampled-value frames, unicast or multicast.

The datagram payload is the entire link-level frame, VLAN tag and MAC
addresses included, so a capture of the UDP stream dissects exactly like
the raw stream. The publisher paces with absolute deadlines (tick N fires
at t0 + N * interval) so scheduling error never accumulates as drift.
"""

from __future__ import annotations

import socket
import time
from dataclasses import dataclass
from enum import Enum
from ipaddress import IPv4Address

from . import ber
from .codec import (
    TAG_ASDU,
    TAG_REFRTM,
    TAG_SEQASDU,
    TAG_SEQDATA,
    TAG_SMPCNT,
    SvFrame,
    UtcTimestamp,
    encode_frame,
    pack_seq_data,
)
from .errors import TransportError
from .model import DatasetSchema

DEFAULT_GROUP = "239.255.61.85"
DEFAULT_PORT = 61850
DEFAULT_TTL = 1


class Mode(Enum):
    UNICAST = "unicast"
    MULTICAST = "multicast"


@dataclass(frozen=True)
class EndpointConfig:
    mode: Mode = Mode.MULTICAST
    address: str = DEFAULT_GROUP
    port: int = DEFAULT_PORT
    multicast_ttl: int = DEFAULT_TTL
    bind_interface: str | None = None

    def __post_init__(self):
        addr = IPv4Address(self.address)
        if self.mode is Mode.MULTICAST and not addr.is_multicast:
            raise ValueError(
                f"{self.address} is not in 224.0.0.0/4, required for multicast")
        if not 0 < self.port <= 0xFFFF:
            raise ValueError(f"UDP port {self.port} outside 1..65535")


@dataclass
class PublisherState:
    smp_cnt: int
    wrap_modulus: int
    frames_sent: int = 0
    deadline_misses: int = 0


@dataclass
class ReceiveSummary:
    datagrams: int = 0
    decode_failures: int = 0


def _sleep_until(deadline: float) -> None:
    # Coarse sleep, then a clock spin for the last stretch. A bare sleep
    # overshoots by 100 us or more, and even sleep(0) can stall for tens
    # of milliseconds under sandboxed kernels, so the final approach
    # polls the clock without yielding.
    while True:
        remaining = deadline - time.monotonic()
        if remaining <= 0:
            return
        if remaining > 0.0015:
            time.sleep(remaining - 0.001)


def _tlv_header_at(wire: bytes, cursor: int) -> tuple[int, int, int]:
    tag = wire[cursor]
    length, start = ber.decode_length(wire, cursor + 1)
    return tag, length, start


def _asdu_value_offsets(wire: bytes) -> list[dict[int, int]]:
    """Absolute offsets of the per-tick fields inside an encoded frame.

    With a fixed schema and svID every BER length is constant, so the
    publisher can patch smpCnt, refrTm and seqData bytes in place rather
    than re-encoding the whole frame each tick.
    """
    _, savpdu_len, savpdu_start = _tlv_header_at(wire, 26)
    plans = []
    cursor = savpdu_start
    while cursor < savpdu_start + savpdu_len:
        tag, length, start = _tlv_header_at(wire, cursor)
        if tag == TAG_SEQASDU:
            inner = start
            while inner < start + length:
                a_tag, a_len, a_start = _tlv_header_at(wire, inner)
                if a_tag == TAG_ASDU:
                    fields = {}
                    cur = a_start
                    while cur < a_start + a_len:
                        f_tag, f_len, f_start = _tlv_header_at(wire, cur)
                        fields[f_tag] = f_start
                        cur = f_start + f_len
                    plans.append(fields)
                inner = a_start + a_len
        cursor = start + length
    return plans


def _open_publish_socket(cfg: EndpointConfig) -> socket.socket:
    sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
    try:
        if cfg.mode is Mode.MULTICAST:
            sock.setsockopt(
                socket.IPPROTO_IP, socket.IP_MULTICAST_TTL, cfg.multicast_ttl)
            sock.setsockopt(socket.IPPROTO_IP, socket.IP_MULTICAST_LOOP, 1)
            if cfg.bind_interface:
                sock.setsockopt(
                    socket.IPPROTO_IP, socket.IP_MULTICAST_IF,
                    socket.inet_aton(cfg.bind_interface))
        elif cfg.bind_interface:
            sock.bind((cfg.bind_interface, 0))
    except OSError as exc:
        sock.close()
        raise TransportError(f"publisher socket setup failed: {exc}") from exc
    return sock


def publish_stream(
    cfg: EndpointConfig,
    template: SvFrame,
    schema: DatasetSchema,
    source,
    rate: int,
    frames: int,
    *,
    pace_hz: float | None = None,
    wrap_modulus: int | None = None,
    start_smp_cnt: int = 0,
    sock: socket.socket | None = None,
    timestamper=time.time,
) -> PublisherState:
    """Send ``frames`` datagrams paced at ``pace_hz`` (default: ``rate``).

    ``source(tick)`` supplies the per-member values for seqData packing.
    smpCnt starts at ``start_smp_cnt`` and wraps at ``wrap_modulus``
    (default: ``rate``, one wrap per nominal second). A tick whose send
    completes after the next tick's deadline counts as a deadline miss.
    ``timestamper`` feeds refrTm and exists so tests can pin it. Socket
    failures raise :class:`TransportError` carrying the state accumulated
    so far.
    """
    if rate <= 0:
        raise ValueError(f"rate must be positive, got {rate}")
    if frames < 0:
        raise ValueError(f"frame count must be >= 0, got {frames}")
    wrap = wrap_modulus if wrap_modulus is not None else rate
    pace = pace_hz if pace_hz is not None else float(rate)
    interval = 1.0 / pace
    state = PublisherState(smp_cnt=start_smp_cnt % wrap, wrap_modulus=wrap)
    # Encode once, then patch the variable fields in place each tick; the
    # 250 us budget has no room for a full re-encode.
    wire = bytearray(encode_frame(template, schema))
    plans = _asdu_value_offsets(wire)
    own_sock = sock is None
    if own_sock:
        sock = _open_publish_socket(cfg)
    destination = (cfg.address, cfg.port)
    try:
        t0 = time.monotonic()
        for tick in range(frames):
            _sleep_until(t0 + tick * interval)
            seq_data = pack_seq_data(source(tick), schema)
            stamp = UtcTimestamp.from_unix(timestamper()).to_octets()
            counter = state.smp_cnt.to_bytes(2, "big")
            for fields in plans:
                wire[fields[TAG_SMPCNT]:fields[TAG_SMPCNT] + 2] = counter
                wire[fields[TAG_REFRTM]:fields[TAG_REFRTM] + 8] = stamp
                offset = fields[TAG_SEQDATA]
                wire[offset:offset + len(seq_data)] = seq_data
            try:
                sock.sendto(wire, destination)
            except OSError as exc:
                raise TransportError(
                    f"send to {destination} failed: {exc}", state=state) from exc
            if time.monotonic() > t0 + (tick + 1) * interval:
                state.deadline_misses += 1
            state.frames_sent += 1
            state.smp_cnt = (state.smp_cnt + 1) % wrap
    finally:
        if own_sock:
            sock.close()
    return state


def subscribe(
    cfg: EndpointConfig,
    sink,
    stop,
    *,
    poll_interval: float = 0.05,
    buffer_size: int = 2048,
) -> ReceiveSummary:
    """Receive datagrams and hand each payload to ``sink`` in arrival order.

    Joins the group first in multicast mode. ``stop()`` is polled between
    datagrams; an exception from the sink counts as a decode failure and
    reception continues. Bind or join failures raise
    :class:`TransportError`.
    """
    summary = ReceiveSummary()
    sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
    try:
        sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        try:
            sock.setsockopt(socket.SOL_SOCKET, socket.SO_RCVBUF, 1 << 20)
        except OSError:
            pass  # best effort, kernel may clamp
        try:
            if cfg.mode is Mode.MULTICAST:
                sock.bind(("", cfg.port))
                member = socket.inet_aton(cfg.address) + socket.inet_aton(
                    cfg.bind_interface or "0.0.0.0")
                sock.setsockopt(
                    socket.IPPROTO_IP, socket.IP_ADD_MEMBERSHIP, member)
            else:
                sock.bind((cfg.address, cfg.port))
        except OSError as exc:
            raise TransportError(
                f"bind/join {cfg.address}:{cfg.port} failed: {exc}",
                state=summary) from exc
        sock.settimeout(poll_interval)
        while not stop():
            try:
                data = sock.recv(buffer_size)
            except socket.timeout:
                continue
            summary.datagrams += 1
            try:
                sink(data)
            except Exception:
                summary.decode_failures += 1
    finally:
        sock.close()
    return summary
