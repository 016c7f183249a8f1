"""Shared test fixtures: the reference frame and an independent TLV walker.

The walker parses lengths with bare index arithmetic so it can confirm
the codec's BER lengths without reusing any codec code.
"""

import random
import string

from svlite.codec import (
    Asdu,
    SavApdu,
    SmpSynch,
    SvFrame,
    UtcTimestamp,
    VlanTag,
    mac_from_str,
    pack_seq_data,
)
from svlite.model import DatasetSchema, Quality, SchemaMember, Validity

# Reference frame assembled by hand, field by field. Lengths were summed
# manually: ASDU content 12+4+6+10+3+16 = 51 (0x33), seqASDU 53 (0x35),
# savPdu content 3+55 = 58 (0x3a), APDU = 8 + 60 = 68 (0x0044), total 86.
GOLDEN_HEX = (
    "18cc188abcdb" "b827eb471fd7"        # dst, src MAC
    "8100" "8000"                        # 802.1Q TPID, priority 4 / DEI 0 / VID 0
    "88ba"                               # EtherType IEC 61850/SV
    "4000"                               # APPID
    "0044"                               # Length 68
    "0000" "0000"                        # Reserved1, Reserved2
    "603a"                               # savPdu
    "800101"                             # noASDU = 1
    "a235"                               # seqASDU
    "3033"                               # ASDU1
    "800a" "787878784d556e6e3031"        # svID "xxxxMUnn01"
    "8202" "0001"                        # smpCnt 1
    "8304" "00000001"                    # confRev 1
    "8408" "0000000000000000"            # refrTm zero
    "8501" "00"                          # smpSynch none
    "870e" "00001111" + "00" * 8 + "0000"  # seqData: intMag, B, L, H
)
GOLDEN_WIRE = bytes.fromhex(GOLDEN_HEX)

GOLDEN_SCHEMA = DatasetSchema([
    SchemaMember("TMGF1.MagFld.instMag.i", width=4),
    SchemaMember("TMGF1.MagFld.GeoCrd.B", width=4, scale_factor=-4),
    SchemaMember("TMGF1.MagFld.GeoCrd.L", width=4, scale_factor=-4),
    SchemaMember("TMGF1.MagFld.GeoCrd.H", width=2, scale_factor=-1),
])

GOLDEN_VALUES = [0x1111, 0, 0, 0]


def golden_frame() -> SvFrame:
    return SvFrame(
        dst_mac=mac_from_str("18:cc:18:8a:bc:db"),
        src_mac=mac_from_str("b8:27:eb:47:1f:d7"),
        vlan=VlanTag(priority=4, dei=False, vid=0),
        appid=0x4000,
        apdu=SavApdu([
            Asdu(sv_id="xxxxMUnn01", smp_cnt=1, conf_rev=1,
                 refr_tm=UtcTimestamp(0, 0, 0), smp_synch=SmpSynch.NONE,
                 seq_data=pack_seq_data(GOLDEN_VALUES, GOLDEN_SCHEMA)),
        ]),
    )


def walk_tlv(buf: bytes, start: int, end: int):
    """Yield (tag, tlv_start, content_start, content_len) tiles.

    Asserts that consecutive TLVs tile [start, end) exactly, which is the
    statement that every BER length equals its content length.
    """
    cursor = start
    while cursor < end:
        assert cursor + 2 <= end, "TLV header overruns container"
        tag = buf[cursor]
        first = buf[cursor + 1]
        if first < 0x80:
            length, header = first, 2
        elif first == 0x81:
            length, header = buf[cursor + 2], 3
        elif first == 0x82:
            length, header = (buf[cursor + 2] << 8) | buf[cursor + 3], 4
        else:
            raise AssertionError(f"unexpected length octet 0x{first:02x}")
        content_start = cursor + header
        assert content_start + length <= end, "TLV content overruns container"
        yield tag, cursor, content_start, length
        cursor = content_start + length
    assert cursor == end, "TLVs do not tile the container exactly"


def verify_frame_lengths(wire: bytes) -> list[int]:
    """Independent structural check; returns the APDU tag sequence."""
    assert wire[12:14] == b"\x81\x00"
    assert wire[16:18] == b"\x88\xba"
    length_field = (wire[20] << 8) | wire[21]
    assert length_field == len(wire) - 18, "Length field vs remaining octets"
    assert wire[22:26] == b"\x00\x00\x00\x00"
    tags = []
    (savpdu,) = walk_tlv(wire, 26, len(wire))
    tags.append(savpdu[0])
    assert savpdu[0] == 0x60
    children = list(walk_tlv(wire, savpdu[2], savpdu[2] + savpdu[3]))
    for tag, _, c_start, c_len in children:
        tags.append(tag)
        if tag == 0xA2:
            for a_tag, _, a_start, a_len in walk_tlv(wire, c_start, c_start + c_len):
                tags.append(a_tag)
                assert a_tag == 0x30
                for f_tag, _, _, _ in walk_tlv(wire, a_start, a_start + a_len):
                    tags.append(f_tag)
    return tags


_SVID_ALPHABET = string.ascii_letters + string.digits


def random_valid_frame(rng: random.Random) -> tuple[SvFrame, DatasetSchema]:
    """Random frame within every wire-format bound, for round-trip checks."""
    members = []
    for index in range(rng.randint(1, 2)):
        members.append(SchemaMember(
            name=f"TCTR{index + 1}.AmpSv.instMag.i",
            width=rng.choice((2, 4)),
            signed=rng.random() < 0.5,
            scale_factor=rng.randint(-4, 2),
            offset=rng.randint(-1000, 1000),
            include_quality=rng.random() < 0.5,
        ))
    schema = DatasetSchema(members)
    asdus = []
    for _ in range(rng.randint(1, 3)):
        values = []
        for member in schema:
            bits = 8 * member.width
            if member.signed:
                raw = rng.randint(-(1 << (bits - 1)), (1 << (bits - 1)) - 1)
            else:
                raw = rng.randint(0, (1 << bits) - 1)
            if member.include_quality:
                quality = Quality(Validity(rng.randint(0, 2)), rng.random() < 0.5)
                values.append((raw, quality))
            else:
                values.append(raw)
        sv_id = "".join(
            rng.choice(_SVID_ALPHABET) for _ in range(rng.randint(1, 64)))
        asdus.append(Asdu(
            sv_id=sv_id,
            smp_cnt=rng.randint(0, 0xFFFF),
            conf_rev=rng.randint(0, 0xFFFF_FFFF),
            refr_tm=UtcTimestamp(rng.randint(0, 0xFFFF_FFFF),
                                 rng.randint(0, 0xFF_FFFF),
                                 rng.randint(0, 0xFF)),
            smp_synch=SmpSynch(rng.randint(0, 2)),
            seq_data=pack_seq_data(values, schema),
        ))
    frame = SvFrame(
        dst_mac=bytes(rng.randrange(256) for _ in range(6)),
        src_mac=bytes(rng.randrange(256) for _ in range(6)),
        vlan=VlanTag(priority=rng.randint(0, 7), dei=rng.random() < 0.5,
                     vid=rng.randint(0, 0x0FFF)),
        appid=rng.randint(0, 0xFFFF),
        apdu=SavApdu(asdus),
    )
    return frame, schema
