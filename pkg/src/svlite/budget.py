"""Bandwidth and structural budget checks for a sampled-value stream.

A stream at nominal frequency f with p points per period sends f*p frames
per second; each frame rides in a UDP datagram whose outer headers add a
fixed overhead on top of the SV payload. The arithmetic here is exact:
rates are integers, intervals are fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .codec import SavApdu
from .errors import UnsupportedRate
from .model import DatasetSchema

# Outer Ethernet(14) + IPv4(20) + UDP(8) around the SV payload.
OVERHEAD_UDP_IPV4 = 42
# Same with IPv6 in place of IPv4.
OVERHEAD_UDP_IPV6 = 62

SUPPORTED_POINTS = (80, 256)

MAX_ASDU_COUNT = 1
MAX_DATA_ATTRIBUTES = 2


@dataclass(frozen=True)
class BudgetReport:
    payload_octets: int
    wire_octets: int
    samples_per_second: int
    bits_per_second: int
    capacity_bps: int
    fits: bool
    margin_bps: int


@dataclass(frozen=True)
class Violation:
    """One breached structural rule with the observed value."""

    rule: str
    observed: int

    def __str__(self):
        return f"{self.rule}({self.observed})"


def _check_points(points_per_period: int) -> None:
    if points_per_period not in SUPPORTED_POINTS:
        raise UnsupportedRate(
            f"{points_per_period} points per period, supported: "
            f"{SUPPORTED_POINTS}")


def project_bitrate(
    payload_octets: int,
    nominal_hz: int,
    points_per_period: int,
    capacity_bps: int,
    overhead_octets: int = OVERHEAD_UDP_IPV4,
) -> BudgetReport:
    """Project the on-air bit rate of a stream and check it against capacity."""
    _check_points(points_per_period)
    if nominal_hz <= 0:
        raise ValueError(f"nominal frequency must be positive, got {nominal_hz}")
    wire = payload_octets + overhead_octets
    sps = nominal_hz * points_per_period
    bps = wire * 8 * sps
    return BudgetReport(
        payload_octets=payload_octets,
        wire_octets=wire,
        samples_per_second=sps,
        bits_per_second=bps,
        capacity_bps=capacity_bps,
        fits=bps <= capacity_bps,
        margin_bps=capacity_bps - bps,
    )


def sample_interval(nominal_hz: int, points_per_period: int) -> Fraction:
    """Exact seconds between consecutive samples."""
    _check_points(points_per_period)
    if nominal_hz <= 0:
        raise ValueError(f"nominal frequency must be positive, got {nominal_hz}")
    return Fraction(1, nominal_hz * points_per_period)


def validate_constraints(apdu: SavApdu, schema: DatasetSchema) -> list[Violation]:
    """Check the recommended payload shape: one ASDU, at most two data attributes."""
    violations = []
    count = len(apdu.asdus)
    if count == 0:
        violations.append(Violation("EmptySavPdu", 0))
    elif count > MAX_ASDU_COUNT:
        violations.append(Violation("AsduCountExceeded", count))
    attributes = schema.data_attribute_count
    if attributes > MAX_DATA_ATTRIBUTES:
        violations.append(Violation("DatasetTooWide", attributes))
    return violations
