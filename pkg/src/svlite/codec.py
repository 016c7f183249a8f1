"""Reduced sampled-value frame codec.

Wire layout of one frame, carried whole inside a UDP datagram:

    dst MAC(6) src MAC(6) TPID 0x8100(2) TCI(2) EtherType 0x88ba(2)
    APPID(2) Length(2) Reserved1(2) Reserved2(2)
    savPdu 0x60 [ noASDU 0x80 | seqASDU 0xA2 [ ASDU 0x30 ... ] ]

Each ASDU holds svID 0x80, smpCnt 0x82, confRev 0x83, refrTm 0x84,
smpSynch 0x85 and seqData 0x87. There is no dataset reference, sample
rate or smpMod field on this profile. Every BER length is computed from
content, and the Length header field is 8 plus the encoded savPdu size.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum, IntEnum

from . import ber
from .errors import (
    BadEtherType,
    BadHeader,
    CountMismatch,
    LengthMismatch,
    OversizeValue,
    SchemaMismatch,
    Truncated,
    UnknownTag,
    UnsupportedLength,
    WidthMismatch,
)
from .model import DatasetSchema, Quality, decode_quality, encode_quality

TPID_VLAN = 0x8100
ETHERTYPE_SV = 0x88BA

TAG_SAVPDU = 0x60
TAG_NOASDU = 0x80
TAG_SEQASDU = 0xA2
TAG_ASDU = 0x30
TAG_SVID = 0x80
TAG_SMPCNT = 0x82
TAG_CONFREV = 0x83
TAG_REFRTM = 0x84
TAG_SMPSYNCH = 0x85
TAG_SEQDATA = 0x87

SVID_MAX_LEN = 64

# APPID + Length + Reserved1 + Reserved2
_FIXED_HEADER_LEN = 8

_ASDU_FIELD_NAMES = {
    TAG_SVID: "svID",
    TAG_SMPCNT: "smpCnt",
    TAG_CONFREV: "confRev",
    TAG_REFRTM: "refrTm",
    TAG_SMPSYNCH: "smpSynch",
    TAG_SEQDATA: "seqData",
}


def mac_from_str(text: str) -> bytes:
    parts = text.split(":")
    if len(parts) != 6:
        raise ValueError(f"MAC address needs 6 octets: {text!r}")
    try:
        mac = bytes(int(p, 16) for p in parts)
    except ValueError:
        raise ValueError(f"bad MAC address {text!r}") from None
    return mac


def mac_to_str(mac: bytes) -> str:
    return ":".join(f"{b:02x}" for b in mac)


class SmpSynch(IntEnum):
    NONE = 0
    LOCAL = 1
    GLOBAL = 2


class DecodeMode(Enum):
    STRICT = "strict"
    LENIENT = "lenient"


@dataclass(frozen=True)
class VlanTag:
    """802.1Q tag content (the TPID itself is fixed at 0x8100)."""

    priority: int = 4
    dei: bool = False
    vid: int = 0

    def __post_init__(self):
        if not 0 <= self.priority <= 7:
            raise ValueError(f"VLAN priority {self.priority} outside 0..7")
        if not 0 <= self.vid <= 0x0FFF:
            raise ValueError(f"VLAN ID {self.vid} outside 0..4095")

    @property
    def tci(self) -> int:
        return (self.priority << 13) | (int(self.dei) << 12) | self.vid

    @classmethod
    def from_tci(cls, tci: int) -> "VlanTag":
        return cls(priority=tci >> 13, dei=bool((tci >> 12) & 1), vid=tci & 0x0FFF)


@dataclass(frozen=True)
class UtcTimestamp:
    """61850-style UTC time: seconds, 24-bit binary fraction, quality octet."""

    seconds: int = 0
    fraction: int = 0
    time_quality: int = 0

    def __post_init__(self):
        if not 0 <= self.seconds <= 0xFFFF_FFFF:
            raise ValueError(f"seconds {self.seconds} outside 32-bit range")
        if not 0 <= self.fraction <= 0xFF_FFFF:
            raise ValueError(f"fraction {self.fraction} outside 24-bit range")
        if not 0 <= self.time_quality <= 0xFF:
            raise ValueError(f"time quality {self.time_quality} outside one octet")

    def to_octets(self) -> bytes:
        return (
            self.seconds.to_bytes(4, "big")
            + self.fraction.to_bytes(3, "big")
            + bytes([self.time_quality])
        )

    @classmethod
    def from_octets(cls, octets: bytes) -> "UtcTimestamp":
        if len(octets) != 8:
            raise WidthMismatch(f"refrTm needs 8 octets, got {len(octets)}")
        return cls(
            seconds=int.from_bytes(octets[0:4], "big"),
            fraction=int.from_bytes(octets[4:7], "big"),
            time_quality=octets[7],
        )

    @classmethod
    def from_unix(cls, t: float, time_quality: int = 0) -> "UtcTimestamp":
        seconds = int(t)
        fraction = int((t - seconds) * (1 << 24))
        return cls(seconds=seconds, fraction=min(fraction, 0xFF_FFFF),
                   time_quality=time_quality)

    @classmethod
    def from_exact_seconds(cls, t, time_quality: int = 0) -> "UtcTimestamp":
        """Exact conversion for rational virtual-clock instants."""
        seconds = int(t)
        fraction = round((t - seconds) * (1 << 24))
        if fraction == 1 << 24:
            seconds, fraction = seconds + 1, 0
        return cls(seconds=seconds, fraction=fraction, time_quality=time_quality)


@dataclass
class Asdu:
    """One sample record inside the savPdu."""

    sv_id: str = ""
    smp_cnt: int = 0
    conf_rev: int = 1
    refr_tm: UtcTimestamp = UtcTimestamp()
    smp_synch: SmpSynch = SmpSynch.NONE
    seq_data: bytes = b""


@dataclass
class SavApdu:
    asdus: list[Asdu] = field(default_factory=list)

    @property
    def no_asdu(self) -> int:
        return len(self.asdus)


@dataclass
class SvFrame:
    """Complete link-level frame, the unit carried in one UDP datagram."""

    dst_mac: bytes
    src_mac: bytes
    vlan: VlanTag
    appid: int
    apdu: SavApdu
    decode_warnings: tuple[str, ...] = field(default=(), compare=False, repr=False)


def _encode_asdu(asdu: Asdu) -> bytes:
    sv_id = asdu.sv_id
    if not isinstance(sv_id, str) or not sv_id or not sv_id.isascii():
        raise ValueError(f"svID must be a non-empty ASCII string, got {sv_id!r}")
    if len(sv_id) > SVID_MAX_LEN:
        raise OversizeValue(f"svID of {len(sv_id)} chars exceeds {SVID_MAX_LEN}")
    return b"".join(
        (
            ber.encode_tlv(TAG_SVID, sv_id.encode("ascii")),
            ber.encode_tlv(TAG_SMPCNT, ber.encode_int_fixed(asdu.smp_cnt, 2)),
            ber.encode_tlv(TAG_CONFREV, ber.encode_int_fixed(asdu.conf_rev, 4)),
            ber.encode_tlv(TAG_REFRTM, asdu.refr_tm.to_octets()),
            ber.encode_tlv(TAG_SMPSYNCH, bytes([int(asdu.smp_synch)])),
            ber.encode_tlv(TAG_SEQDATA, asdu.seq_data),
        )
    )


def encode_frame(frame: SvFrame, schema: DatasetSchema) -> bytes:
    """Byte-exact frame encoding; every BER length derives from content."""
    if not frame.apdu.asdus:
        raise ValueError("savPdu needs at least one ASDU")
    if len(frame.dst_mac) != 6 or len(frame.src_mac) != 6:
        raise ValueError("MAC addresses must be 6 octets")
    for asdu in frame.apdu.asdus:
        if len(asdu.seq_data) != schema.packed_width:
            raise SchemaMismatch(
                f"seqData is {len(asdu.seq_data)} octets, schema packs "
                f"{schema.packed_width}")
    count = len(frame.apdu.asdus)
    if count > 0xFF:
        raise OversizeValue(f"{count} ASDUs exceeds the single-octet noASDU")
    seq_asdu = b"".join(
        ber.encode_tlv(TAG_ASDU, _encode_asdu(a)) for a in frame.apdu.asdus)
    savpdu = ber.encode_tlv(
        TAG_SAVPDU,
        ber.encode_tlv(TAG_NOASDU, bytes([count]))
        + ber.encode_tlv(TAG_SEQASDU, seq_asdu),
    )
    header = struct.pack(
        ">HHHH", frame.appid, _FIXED_HEADER_LEN + len(savpdu), 0, 0)
    return (
        bytes(frame.dst_mac)
        + bytes(frame.src_mac)
        + struct.pack(">HH", TPID_VLAN, frame.vlan.tci)
        + struct.pack(">H", ETHERTYPE_SV)
        + header
        + savpdu
    )


def decode_frame(data: bytes, mode: DecodeMode = DecodeMode.STRICT) -> SvFrame:
    """Parse a frame back into its model.

    Strict mode rejects wrong EtherType, nonzero reserved octets, Length
    disagreement and unknown tags. Lenient mode skips unknown tags and
    records every tolerated inconsistency on ``SvFrame.decode_warnings``,
    which keeps third-party frames with sloppy length octets readable.
    """
    strict = mode is DecodeMode.STRICT
    warnings: list[str] = []
    n = len(data)
    if n < 14:
        raise Truncated(f"frame of {n} octets ends inside the link header")
    dst, src = bytes(data[0:6]), bytes(data[6:12])
    tpid = (data[12] << 8) | data[13]
    if tpid == TPID_VLAN:
        if n < 18:
            raise Truncated("frame ends inside the 802.1Q tag")
        vlan = VlanTag.from_tci((data[14] << 8) | data[15])
        ethertype = (data[16] << 8) | data[17]
        cursor = 18
    elif tpid == ETHERTYPE_SV and not strict:
        warnings.append("missing 802.1Q tag")
        vlan = VlanTag(priority=0)
        ethertype = tpid
        cursor = 14
    else:
        raise BadEtherType(f"expected 802.1Q TPID 0x8100, got 0x{tpid:04x}")
    if ethertype != ETHERTYPE_SV:
        raise BadEtherType(
            f"EtherType 0x{ethertype:04x} is not IEC 61850/SV (0x88ba)")
    if cursor + _FIXED_HEADER_LEN > n:
        raise Truncated("frame ends inside the APPID header")
    appid, length_field, res1, res2 = struct.unpack_from(">HHHH", data, cursor)
    if res1 or res2:
        msg = f"reserved octets nonzero (0x{res1:04x} 0x{res2:04x})"
        if strict:
            raise BadHeader(msg)
        warnings.append(msg)
    cursor += _FIXED_HEADER_LEN
    tag, savpdu, end = ber.decode_tlv(data, cursor)
    if tag != TAG_SAVPDU:
        raise UnknownTag(f"expected savPdu tag 0x60, got 0x{tag:02x}")
    actual = _FIXED_HEADER_LEN + (end - cursor)
    if length_field != actual:
        msg = f"Length field {length_field} != actual APDU length {actual}"
        if strict:
            raise LengthMismatch(msg)
        warnings.append(msg)
    if end != n:
        msg = f"{n - end} trailing octets after savPdu"
        if strict:
            raise LengthMismatch(msg)
        warnings.append(msg)
    apdu = _decode_savpdu(savpdu, strict, warnings)
    return SvFrame(dst, src, vlan, appid, apdu, decode_warnings=tuple(warnings))


def _decode_savpdu(content: bytes, strict: bool, warnings: list[str]) -> SavApdu:
    no_asdu = None
    asdus: list[Asdu] = []
    cursor = 0
    while cursor < len(content):
        tag, value, cursor = ber.decode_tlv(content, cursor)
        if tag == TAG_NOASDU:
            no_asdu = int.from_bytes(value, "big")
        elif tag == TAG_SEQASDU:
            inner = 0
            while inner < len(value):
                t, v, inner = ber.decode_tlv(value, inner)
                if t == TAG_ASDU:
                    asdus.append(_decode_asdu(v, strict, warnings))
                elif strict:
                    raise UnknownTag(f"unexpected tag 0x{t:02x} inside seqASDU")
                else:
                    warnings.append(f"skipped tag 0x{t:02x} inside seqASDU")
        elif strict:
            raise UnknownTag(f"unexpected tag 0x{tag:02x} inside savPdu")
        else:
            warnings.append(f"skipped tag 0x{tag:02x} inside savPdu")
    if no_asdu is None:
        msg = "savPdu carries no noASDU field"
        if strict:
            raise SchemaMismatch(msg)
        warnings.append(msg)
    elif no_asdu != len(asdus):
        msg = f"noASDU says {no_asdu}, found {len(asdus)} ASDU elements"
        if strict:
            raise CountMismatch(msg)
        warnings.append(msg)
    return SavApdu(asdus)


def _decode_asdu(content: bytes, strict: bool, warnings: list[str]) -> Asdu:
    raw: dict[int, bytes] = {}
    cursor = 0
    while cursor < len(content):
        tag, value, cursor = ber.decode_tlv(content, cursor)
        if tag in _ASDU_FIELD_NAMES:
            if tag in raw:
                msg = f"duplicate {_ASDU_FIELD_NAMES[tag]} in ASDU"
                if strict:
                    raise SchemaMismatch(msg)
                warnings.append(msg + ", keeping the last")
            raw[tag] = value
        elif strict:
            raise UnknownTag(f"unexpected tag 0x{tag:02x} inside ASDU")
        else:
            warnings.append(f"skipped tag 0x{tag:02x} inside ASDU")
    missing = [name for tag, name in _ASDU_FIELD_NAMES.items() if tag not in raw]
    if missing:
        msg = "ASDU missing " + ", ".join(missing)
        if strict:
            raise SchemaMismatch(msg)
        warnings.append(msg)

    asdu = Asdu()
    if TAG_SVID in raw:
        try:
            asdu.sv_id = raw[TAG_SVID].decode("ascii")
        except UnicodeDecodeError:
            if strict:
                raise SchemaMismatch("svID is not ASCII") from None
            warnings.append("svID is not ASCII, decoded with replacements")
            asdu.sv_id = raw[TAG_SVID].decode("ascii", "replace")
    asdu.smp_cnt = _decode_uint(raw, TAG_SMPCNT, 2, strict, warnings)
    asdu.conf_rev = _decode_uint(raw, TAG_CONFREV, 4, strict, warnings) \
        if TAG_CONFREV in raw else asdu.conf_rev
    if TAG_REFRTM in raw:
        octets = raw[TAG_REFRTM]
        if len(octets) != 8:
            msg = f"refrTm is {len(octets)} octets, expected 8"
            if strict:
                raise LengthMismatch(msg)
            warnings.append(msg)
            octets = octets[:8].ljust(8, b"\x00")
        asdu.refr_tm = UtcTimestamp.from_octets(octets)
    synch = _decode_uint(raw, TAG_SMPSYNCH, 1, strict, warnings)
    try:
        asdu.smp_synch = SmpSynch(synch)
    except ValueError:
        if strict:
            raise SchemaMismatch(f"smpSynch value {synch} is not 0/1/2") from None
        warnings.append(f"smpSynch value {synch} is not 0/1/2, using none")
        asdu.smp_synch = SmpSynch.NONE
    asdu.seq_data = raw.get(TAG_SEQDATA, b"")
    return asdu


def _decode_uint(raw: dict[int, bytes], tag: int, width: int, strict: bool,
                 warnings: list[str]) -> int:
    if tag not in raw:
        return 0
    octets = raw[tag]
    if len(octets) != width:
        msg = (f"{_ASDU_FIELD_NAMES[tag]} is {len(octets)} octets, "
               f"expected {width}")
        if strict:
            raise LengthMismatch(msg)
        warnings.append(msg)
    return int.from_bytes(octets, "big")


def pack_seq_data(values, schema: DatasetSchema) -> bytes:
    """Concatenate raw samples in schema order, big-endian.

    Each item is a raw integer or a ``(raw, Quality)`` pair; the quality
    octets are appended only for members with ``include_quality`` set
    (defaulting to good when the item carries none).
    """
    if len(values) != len(schema):
        raise CountMismatch(
            f"{len(values)} values for a schema of {len(schema)} members")
    out = bytearray()
    for item, member in zip(values, schema):
        if isinstance(item, tuple):
            value, quality = item
        else:
            value, quality = item, None
        out += ber.encode_int_fixed(value, member.width, signed=member.signed)
        if member.include_quality:
            out += encode_quality(quality if quality is not None else Quality())
    return bytes(out)


def unpack_seq_data(octets: bytes, schema: DatasetSchema) -> list:
    """Inverse of :func:`pack_seq_data`."""
    if len(octets) != schema.packed_width:
        raise WidthMismatch(
            f"{len(octets)} octets against a schema of {schema.packed_width}")
    out = []
    cursor = 0
    for member in schema:
        value = ber.decode_int_fixed(
            octets[cursor:cursor + member.width], signed=member.signed)
        cursor += member.width
        if member.include_quality:
            out.append((value, decode_quality(octets[cursor:cursor + 2])))
            cursor += 2
        else:
            out.append(value)
    return out


# --- dissection ----------------------------------------------------------

_SMP_SYNCH_NAMES = {0: "none", 1: "local", 2: "global"}

DissectLine = tuple[int, str, str, str]


class _OutOfData(Exception):
    def __init__(self, offset: int):
        self.offset = offset


def dissect(data: bytes) -> list[DissectLine]:
    """Best-effort field walk for captures; never raises.

    Returns ``(depth, name, raw_hex, decoded)`` rows in wire order.
    Parse problems become annotation rows, a short buffer ends in a
    ``TRUNCATED at offset N`` row.
    """
    if not data:
        return [(0, "empty capture", "", "")]
    lines: list[DissectLine] = []
    try:
        _dissect_frame(data, lines)
    except _OutOfData as stop:
        lines.append((0, f"TRUNCATED at offset {stop.offset}", "", ""))
    return lines


def render_dissection(lines: list[DissectLine]) -> str:
    rendered = []
    for depth, name, _, decoded in lines:
        text = f"{name}: {decoded}" if decoded else name
        rendered.append("  " * depth + text)
    return "\n".join(rendered)


def _dissect_frame(data: bytes, lines: list[DissectLine]) -> None:
    def take(cursor: int, count: int) -> bytes:
        if cursor + count > len(data):
            raise _OutOfData(len(data))
        return data[cursor:cursor + count]

    c = 0
    dst = take(c, 6)
    lines.append((0, "Destination", dst.hex(), mac_to_str(dst)))
    c += 6
    src = take(c, 6)
    lines.append((0, "Source", src.hex(), mac_to_str(src)))
    c += 6
    tpid = int.from_bytes(take(c, 2), "big")
    if tpid == TPID_VLAN:
        lines.append((0, "Type", take(c, 2).hex(), "0x8100 (802.1Q Virtual LAN)"))
        c += 2
        tci = int.from_bytes(take(c, 2), "big")
        tag = VlanTag.from_tci(tci)
        lines.append((0, "PRI/DEI/ID", take(c, 2).hex(),
                      f"priority {tag.priority}, DEI {int(tag.dei)}, VID {tag.vid}"))
        c += 2
        ethertype = int.from_bytes(take(c, 2), "big")
    else:
        lines.append((0, "no 802.1Q tag", "", ""))
        ethertype = tpid
    note = "IEC 61850/SV" if ethertype == ETHERTYPE_SV else "not IEC 61850/SV"
    lines.append((0, "EtherType", take(c, 2).hex(), f"0x{ethertype:04x} ({note})"))
    c += 2
    lines.append((0, "APPID", take(c, 2).hex(),
                  f"0x{int.from_bytes(take(c, 2), 'big'):04x}"))
    c += 2
    length_field = int.from_bytes(take(c, 2), "big")
    lines.append((0, "Length", take(c, 2).hex(), str(length_field)))
    c += 2
    for name in ("Reserved1", "Reserved2"):
        lines.append((0, name, take(c, 2).hex(),
                      f"0x{int.from_bytes(take(c, 2), 'big'):04x}"))
        c += 2
    apdu_start = c - _FIXED_HEADER_LEN
    end = _dissect_tlv_tree(data, c, lines)
    actual = end - apdu_start
    if length_field != actual:
        lines.append((0, f"Length field {length_field} != actual {actual}", "", ""))
    if end < len(data):
        tail = data[end:]
        lines.append((0, f"{len(tail)} trailing octets", tail.hex(), tail.hex()))


def _read_tlv_header(data: bytes, cursor: int) -> tuple[int, int, int, str]:
    """Returns (tag, content_length, content_start, header_hex)."""
    if cursor >= len(data):
        raise _OutOfData(len(data))
    tag = data[cursor]
    try:
        length, start = ber.decode_length(data, cursor + 1)
    except Truncated:
        raise _OutOfData(len(data)) from None
    except UnsupportedLength:
        raise _OutOfData(cursor + 1) from None
    return tag, length, start, data[cursor:start].hex()


def _dissect_tlv_tree(data: bytes, cursor: int, lines: list[DissectLine]) -> int:
    tag, length, start, header = _read_tlv_header(data, cursor)
    end = start + length
    if tag != TAG_SAVPDU:
        lines.append((0, f"tag 0x{tag:02x}", header,
                      f"{length} octets (expected savPdu 0x60)"))
        if end > len(data):
            raise _OutOfData(len(data))
        return end
    lines.append((0, "savPdu", header, f"{length} octets"))
    if end > len(data):
        raise _OutOfData(len(data))
    c = start
    asdu_index = 0
    while c < end:
        tag, length, start, header = _read_tlv_header(data, c)
        child_end = start + length
        if child_end > end:
            lines.append((1, f"tag 0x{tag:02x} overruns savPdu", header, ""))
            raise _OutOfData(min(len(data), child_end))
        value = data[start:child_end]
        if tag == TAG_NOASDU:
            lines.append((1, "noASDU", data[c:child_end].hex(),
                          str(int.from_bytes(value, "big"))))
        elif tag == TAG_SEQASDU:
            lines.append((1, "seqASDU", header, f"{length} octets"))
            asdu_index = _dissect_asdus(data, start, child_end, lines, asdu_index)
        else:
            lines.append((1, f"tag 0x{tag:02x}", data[c:child_end].hex(),
                          f"{length} octets (skipped)"))
        c = child_end
    return end


def _dissect_asdus(data: bytes, cursor: int, end: int,
                   lines: list[DissectLine], index: int) -> int:
    c = cursor
    while c < end:
        tag, length, start, header = _read_tlv_header(data, c)
        child_end = start + length
        if child_end > end:
            lines.append((2, f"tag 0x{tag:02x} overruns seqASDU", header, ""))
            raise _OutOfData(min(len(data), child_end))
        if tag == TAG_ASDU:
            index += 1
            lines.append((2, f"ASDU{index}", header, f"{length} octets"))
            _dissect_asdu_fields(data, start, child_end, lines)
        else:
            lines.append((2, f"tag 0x{tag:02x}", data[c:child_end].hex(),
                          f"{length} octets (skipped)"))
        c = child_end
    return index


def _dissect_asdu_fields(data: bytes, cursor: int, end: int,
                         lines: list[DissectLine]) -> None:
    c = cursor
    while c < end:
        tag, length, start, _ = _read_tlv_header(data, c)
        child_end = start + length
        if child_end > end or child_end > len(data):
            lines.append((3, f"{_ASDU_FIELD_NAMES.get(tag, f'tag 0x{tag:02x}')} "
                             "overruns ASDU", "", ""))
            raise _OutOfData(min(len(data), child_end))
        value = data[start:child_end]
        raw_hex = data[c:child_end].hex()
        if tag == TAG_SVID:
            lines.append((3, "svID", raw_hex, value.decode("ascii", "replace")))
        elif tag == TAG_SMPCNT:
            lines.append((3, "smpCnt", raw_hex, str(int.from_bytes(value, "big"))))
        elif tag == TAG_CONFREV:
            lines.append((3, "confRev", raw_hex, str(int.from_bytes(value, "big"))))
        elif tag == TAG_REFRTM:
            lines.append((3, "refrTm", raw_hex, _render_refr_tm(value)))
        elif tag == TAG_SMPSYNCH:
            synch = int.from_bytes(value, "big")
            name = _SMP_SYNCH_NAMES.get(synch, "?")
            lines.append((3, "smpSynch", raw_hex, f"{synch} ({name})"))
        elif tag == TAG_SEQDATA:
            lines.append((3, "seqData", raw_hex, f"{length} octets {value.hex()}"))
        else:
            lines.append((3, f"tag 0x{tag:02x}", raw_hex,
                          f"{length} octets (skipped)"))
        c = child_end


def _render_refr_tm(value: bytes) -> str:
    if len(value) != 8:
        return f"{len(value)} octets (expected 8)"
    ts = UtcTimestamp.from_octets(value)
    moment = datetime.fromtimestamp(ts.seconds, tz=timezone.utc)
    return (f"{moment.strftime('%Y-%m-%d %H:%M:%S')}Z "
            f"+{ts.fraction}/16777216 s (q=0x{ts.time_quality:02x})")
