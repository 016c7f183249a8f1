"""Domain model of the reduced sampled-value service.

Integer-scaled measurement values, the two-attribute quality, GNSS and
local rectangular coordinates, the sensor logic-node registry and the
dataset layout that governs how seqData octets are packed.

The wire never carries floating point: a transmitted sample is an integer
``i`` that the receiver maps to engineering units as
``(i + offset) * 10**scale_factor``. Offset and scale factor are
configuration, not payload.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from enum import IntEnum

from .errors import Overflow, UnknownLogicNode

_INT8 = (-0x80, 0x7F)
_INT16 = (-0x8000, 0x7FFF)
_INT32 = (-0x8000_0000, 0x7FFF_FFFF)


def _int_range(width: int, signed: bool) -> tuple[int, int]:
    bits = 8 * width
    if signed:
        return -(1 << (bits - 1)), (1 << (bits - 1)) - 1
    return 0, (1 << bits) - 1


def _check_range(name: str, value: int, lo: int, hi: int) -> None:
    if not lo <= value <= hi:
        raise ValueError(f"{name}={value} outside [{lo}, {hi}]")


@dataclass(frozen=True)
class ScaledValue:
    """Transmitted integer sample with its decoding parameters.

    Engineering value is exactly ``(raw_i + offset) * 10**scale_factor``.
    """

    raw_i: int
    offset: int = 0
    scale_factor: int = 0

    def __post_init__(self):
        _check_range("raw_i", self.raw_i, *_INT32)
        _check_range("offset", self.offset, *_INT32)
        _check_range("scale_factor", self.scale_factor, *_INT8)


def to_engineering(v: ScaledValue) -> Decimal:
    """Exact decimal engineering value of a scaled sample."""
    return Decimal(v.raw_i + v.offset).scaleb(v.scale_factor)


def from_engineering(
    x,
    scale_factor: int,
    offset: int = 0,
    width: int = 4,
    signed: bool = True,
) -> int:
    """Quantise an engineering value to the raw integer ``i`` for the wire.

    Rounds half to even so repeated sampling does not bias up or down.
    Floats are interpreted at their shortest decimal representation;
    pass a Decimal or string to control precision explicitly.
    """
    if isinstance(x, float):
        x = Decimal(str(x))
    elif not isinstance(x, Decimal):
        x = Decimal(x)
    scaled = x.scaleb(-scale_factor)
    raw = int(scaled.to_integral_value(rounding=ROUND_HALF_EVEN)) - offset
    lo, hi = _int_range(width, signed)
    if not lo <= raw <= hi:
        raise Overflow(f"raw value {raw} does not fit {width} octets (signed={signed})")
    return raw


class Validity(IntEnum):
    GOOD = 0
    INVALID = 1
    QUESTIONABLE = 2


@dataclass(frozen=True)
class Quality:
    """Reduced quality: validity plus the test flag, nothing else."""

    validity: Validity = Validity.GOOD
    test: bool = False


def encode_quality(q: Quality) -> bytes:
    """Two octets: validity in bits 0-1, test in bit 2, rest zero."""
    word = int(q.validity) | (int(q.test) << 2)
    return bytes([0x00, word])


def decode_quality(octets: bytes) -> Quality:
    if len(octets) != 2:
        raise ValueError(f"quality needs 2 octets, got {len(octets)}")
    word = octets[1]
    validity = Validity(word & 0x03)
    return Quality(validity=validity, test=bool(word & 0x04))


@dataclass(frozen=True)
class GeoCoordinate:
    """GNSS position as raw scaled integers.

    B and L use scale factor -4, H and the precision figures -1, all
    offsets zero. Signs on B/L follow the profile convention (N/S, E/W).
    """

    b_raw: int
    l_raw: int
    h_raw: int
    pdop: int
    hdop: int
    vdop: int

    SCALE_BL = -4
    SCALE_H = -1
    SCALE_DOP = -1

    def __post_init__(self):
        _check_range("b_raw", self.b_raw, -180_000_000, 180_000_000)
        _check_range("l_raw", self.l_raw, -90_000_000, 90_000_000)
        _check_range("h_raw", self.h_raw, -9999, 9999)
        for name in ("pdop", "hdop", "vdop"):
            _check_range(name, getattr(self, name), 5, 999)

    @property
    def latitude(self) -> Decimal:
        return to_engineering(ScaledValue(self.b_raw, 0, self.SCALE_BL))

    @property
    def longitude(self) -> Decimal:
        return to_engineering(ScaledValue(self.l_raw, 0, self.SCALE_BL))

    @property
    def height(self) -> Decimal:
        return to_engineering(ScaledValue(self.h_raw, 0, self.SCALE_H))


@dataclass(frozen=True)
class RectCoordinate:
    """Local rectangular position with a shared scale factor and offset."""

    x_raw: int
    y_raw: int
    z_raw: int
    pdop: int
    xdop: int
    ydop: int
    zdop: int
    scale_factor: int = 0
    offset: int = 0

    SCALE_DOP = -1

    def __post_init__(self):
        for name in ("x_raw", "y_raw", "z_raw"):
            _check_range(name, getattr(self, name), *_INT16)
        _check_range("scale_factor", self.scale_factor, *_INT8)
        _check_range("offset", self.offset, *_INT16)
        for name in ("pdop", "xdop", "ydop", "zdop"):
            _check_range(name, getattr(self, name), 5, 999)


@dataclass(frozen=True)
class LogicNodeDescriptor:
    ln_name: str
    description: str
    measurement_do: str
    cdc: str = "SAV"


# Sensor logic nodes supported on this profile. TEEF covers non-contact
# electric-field measurement alongside the magnetic-field TMGF.
LOGIC_NODES: dict[str, LogicNodeDescriptor] = {
    d.ln_name: d
    for d in (
        LogicNodeDescriptor("TMGF", "Magnetic field sensor", "MagFld"),
        LogicNodeDescriptor("TEEF", "Electrical field sensor", "EleFld"),
        LogicNodeDescriptor("TTMP", "Temperature sensor", "Tmp"),
        LogicNodeDescriptor("TVBR", "Vibration sensor", "Vbr"),
        LogicNodeDescriptor("THUM", "Humidity sensor", "Hmdt"),
        LogicNodeDescriptor("TCTR", "Current transformer", "AmpSv"),
        LogicNodeDescriptor("VCVR", "Voltage transformer", "VolSv"),
    )
}


def lookup_logic_node(name: str) -> LogicNodeDescriptor:
    """Case-sensitive exact lookup in the logic-node registry."""
    try:
        return LOGIC_NODES[name]
    except KeyError:
        raise UnknownLogicNode(f"unknown logic node {name!r}") from None


@dataclass(frozen=True)
class SchemaMember:
    """One packed attribute: dotted name, wire width and scaling."""

    name: str
    width: int
    signed: bool = True
    scale_factor: int = 0
    offset: int = 0
    include_quality: bool = False

    def __post_init__(self):
        if self.width not in (2, 4):
            raise ValueError(f"member width must be 2 or 4, got {self.width}")
        _check_range("scale_factor", self.scale_factor, *_INT8)
        _check_range("offset", self.offset, *_INT32)

    @property
    def packed_width(self) -> int:
        return self.width + (2 if self.include_quality else 0)


def _attribute_key(name: str) -> str:
    # Dataset members reference LN.DO; deeper components are the packed
    # leaves underneath one data attribute.
    parts = name.split(".")
    return ".".join(parts[:2]) if len(parts) >= 2 else name


@dataclass(frozen=True)
class DatasetSchema:
    """Ordered attribute layout governing seqData packing."""

    members: tuple[SchemaMember, ...]

    def __init__(self, members):
        object.__setattr__(self, "members", tuple(members))

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    @property
    def packed_width(self) -> int:
        return sum(m.packed_width for m in self.members)

    @property
    def data_attribute_count(self) -> int:
        """Distinct top-level data attributes referenced by the members."""
        return len({_attribute_key(m.name) for m in self.members})
