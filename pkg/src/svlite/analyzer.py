"""Subscriber-side stream analysis.

Decodes arriving datagrams leniently, infers loss from smpCnt gaps,
separates reordering from loss with a half-window heuristic, and applies
the discard policy: a record whose quality is not good never enters the
accepted stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .codec import DecodeMode, decode_frame, unpack_seq_data
from .errors import SvError
from .model import DatasetSchema, Quality


@dataclass(frozen=True)
class LinkStats:
    received: int
    decode_failures: int
    lost: int
    out_of_order: int
    quality_discarded: int
    loss_rate: float
    inter_arrival_mean: float
    inter_arrival_stddev: float


def format_link_stats(stats: LinkStats) -> str:
    """Aligned key-value text, one counter per line."""
    rows = [
        ("received", str(stats.received)),
        ("decode_failures", str(stats.decode_failures)),
        ("lost", str(stats.lost)),
        ("out_of_order", str(stats.out_of_order)),
        ("quality_discarded", str(stats.quality_discarded)),
        ("loss_rate", f"{stats.loss_rate:.6f}"),
        ("inter_arrival_mean", f"{stats.inter_arrival_mean:.9f} s"),
        ("inter_arrival_stddev", f"{stats.inter_arrival_stddev:.9f} s"),
    ]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


class StreamAnalyzer:
    """Single-stream analysis state; feed datagrams in arrival order.

    ``wrap_modulus`` must match the publisher's smpCnt wrap (the nominal
    samples per second). A forward gap shorter than half the modulus
    counts as loss; a backward step shorter than half the modulus is
    reordering or duplication and adds nothing to the loss count. Frames
    that fail to decode increment ``decode_failures`` only and do not
    advance the expected counter.
    """

    def __init__(self, wrap_modulus: int, schema: DatasetSchema | None = None):
        if wrap_modulus <= 1:
            raise ValueError(f"wrap modulus must exceed 1, got {wrap_modulus}")
        self.wrap_modulus = wrap_modulus
        self.schema = schema
        self.received = 0
        self.decode_failures = 0
        self.lost = 0
        self.out_of_order = 0
        self.quality_discarded = 0
        self.accepted: list = []
        self._expected: int | None = None
        self._last_arrival: float | None = None
        # Welford accumulator over inter-arrival deltas.
        self._deltas = 0
        self._delta_mean = 0.0
        self._delta_m2 = 0.0

    def ingest(self, datagram: bytes, arrival_time: float) -> None:
        try:
            frame = decode_frame(datagram, DecodeMode.LENIENT)
        except SvError:
            self.decode_failures += 1
            return
        if not frame.apdu.asdus:
            self.decode_failures += 1
            return
        self.received += 1
        self._track_arrival(arrival_time)
        smp_cnt = frame.apdu.asdus[0].smp_cnt % self.wrap_modulus
        if self._expected is None:
            self._expected = (smp_cnt + 1) % self.wrap_modulus
        else:
            gap = (smp_cnt - self._expected) % self.wrap_modulus
            if gap == 0:
                self._expected = (smp_cnt + 1) % self.wrap_modulus
            elif gap < self.wrap_modulus / 2:
                self.lost += gap
                self._expected = (smp_cnt + 1) % self.wrap_modulus
            else:
                self.out_of_order += 1
        self._apply_quality_policy(frame)

    def _track_arrival(self, arrival_time: float) -> None:
        if self._last_arrival is not None:
            delta = float(arrival_time) - self._last_arrival
            self._deltas += 1
            diff = delta - self._delta_mean
            self._delta_mean += diff / self._deltas
            self._delta_m2 += diff * (delta - self._delta_mean)
        self._last_arrival = float(arrival_time)

    def _apply_quality_policy(self, frame) -> None:
        if self.schema is None:
            self.accepted.append(None)
            return
        for asdu in frame.apdu.asdus:
            try:
                values = unpack_seq_data(asdu.seq_data, self.schema)
            except SvError:
                self.decode_failures += 1
                continue
            bad = any(
                isinstance(v, tuple) and not _is_good(v[1]) for v in values)
            if bad:
                self.quality_discarded += 1
            else:
                self.accepted.append(values)

    def report(self) -> LinkStats:
        """Snapshot of the counters; safe to call at any time."""
        denominator = self.received + self.lost
        loss_rate = self.lost / denominator if denominator else 0.0
        stddev = math.sqrt(self._delta_m2 / self._deltas) if self._deltas else 0.0
        return LinkStats(
            received=self.received,
            decode_failures=self.decode_failures,
            lost=self.lost,
            out_of_order=self.out_of_order,
            quality_discarded=self.quality_discarded,
            loss_rate=loss_rate,
            inter_arrival_mean=self._delta_mean if self._deltas else 0.0,
            inter_arrival_stddev=stddev,
        )


def _is_good(quality: Quality) -> bool:
    return quality.validity == 0
