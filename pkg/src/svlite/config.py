"""Line-based run configuration: ``key = value``, ``#`` comments.

Repeated ``member`` lines define the dataset layout in packing order and
repeated ``channel`` lines bind one simulated source to each member, in
the same order. The format is deliberately flat so a dumped config
reloads to an identical object and diffs line by line.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codec import SmpSynch, SvFrame, SavApdu, Asdu, UtcTimestamp, VlanTag, \
    mac_from_str, mac_to_str
from .errors import ConfigError
from .model import DatasetSchema, SchemaMember, LOGIC_NODES
from .sources import ChannelSpec, WaveKind
from .transport import EndpointConfig, Mode

_SMP_SYNCH_NAMES = {"none": SmpSynch.NONE, "local": SmpSynch.LOCAL,
                    "global": SmpSynch.GLOBAL}

DEFAULT_MEMBERS = (
    SchemaMember("TMGF1.MagFld.instMag.i", width=4, signed=True),
    SchemaMember("TMGF1.MagFld.GeoCrd.B", width=4, signed=True, scale_factor=-4),
    SchemaMember("TMGF1.MagFld.GeoCrd.L", width=4, signed=True, scale_factor=-4),
    SchemaMember("TMGF1.MagFld.GeoCrd.H", width=2, signed=True, scale_factor=-1),
)

_DEFAULT_CHANNEL_LINES = (
    "sine amp=1000.0",
    "const dc=26.0745",
    "const dc=119.3064",
    "const dc=12.0",
)


@dataclass(frozen=True)
class RunConfig:
    sv_id: str = "xxxxMUnn01"
    appid: int = 0x4000
    dst_mac: bytes = mac_from_str("18:cc:18:8a:bc:db")
    src_mac: bytes = mac_from_str("b8:27:eb:47:1f:d7")
    vlan_priority: int = 4
    vlan_id: int = 0
    conf_rev: int = 1
    smp_synch: SmpSynch = SmpSynch.NONE
    nominal_hz: int = 50
    points_per_period: int = 80
    endpoint: EndpointConfig = EndpointConfig()
    members: tuple[SchemaMember, ...] = DEFAULT_MEMBERS
    channels: tuple[ChannelSpec, ...] = ()

    @property
    def schema(self) -> DatasetSchema:
        return DatasetSchema(self.members)

    @property
    def samples_per_second(self) -> int:
        return self.nominal_hz * self.points_per_period


def default_config() -> RunConfig:
    """Built-in configuration with sources bound to the default members."""
    cfg = RunConfig()
    channels = tuple(
        _parse_channel(0, line, member, cfg.nominal_hz)
        for line, member in zip(_DEFAULT_CHANNEL_LINES, cfg.members))
    return RunConfig(channels=channels)


def build_template(cfg: RunConfig) -> SvFrame:
    """Frame skeleton the publisher updates tick by tick."""
    schema = cfg.schema
    asdu = Asdu(
        sv_id=cfg.sv_id,
        smp_cnt=0,
        conf_rev=cfg.conf_rev,
        refr_tm=UtcTimestamp(),
        smp_synch=cfg.smp_synch,
        seq_data=bytes(schema.packed_width),
    )
    return SvFrame(
        dst_mac=cfg.dst_mac,
        src_mac=cfg.src_mac,
        vlan=VlanTag(priority=cfg.vlan_priority, vid=cfg.vlan_id),
        appid=cfg.appid,
        apdu=SavApdu([asdu]),
    )


def _fail(lineno: int, message: str):
    raise ConfigError(f"line {lineno}: {message}")


def _parse_int(lineno: int, key: str, value: str) -> int:
    try:
        return int(value, 0)
    except ValueError:
        _fail(lineno, f"{key} expects an integer, got {value!r}")


def _parse_member(lineno: int, value: str) -> SchemaMember:
    parts = value.split(":")
    if len(parts) != 6:
        _fail(lineno, "member expects name:width:signed:scale_factor:offset:q|noq")
    name, width, signedness, sf, offset, quality = (p.strip() for p in parts)
    if signedness not in ("signed", "unsigned"):
        _fail(lineno, f"member signedness must be signed|unsigned, got {signedness!r}")
    if quality not in ("q", "noq"):
        _fail(lineno, f"member quality must be q|noq, got {quality!r}")
    try:
        return SchemaMember(
            name=name,
            width=_parse_int(lineno, "width", width),
            signed=signedness == "signed",
            scale_factor=_parse_int(lineno, "scale_factor", sf),
            offset=_parse_int(lineno, "offset", offset),
            include_quality=quality == "q",
        )
    except ValueError as exc:
        _fail(lineno, str(exc))


_CHANNEL_KINDS = {k.value: k for k in WaveKind}
_CHANNEL_KEYS = ("amp", "freq", "phase", "dc", "sigma", "invalid_every")


def _parse_channel(lineno: int, value: str, member: SchemaMember,
                   nominal_hz: int) -> ChannelSpec:
    tokens = value.split()
    if not tokens or tokens[0] not in _CHANNEL_KINDS:
        _fail(lineno, f"channel expects one of {sorted(_CHANNEL_KINDS)} first")
    params = {"freq": float(nominal_hz)}
    for token in tokens[1:]:
        key, sep, raw = token.partition("=")
        if not sep or key not in _CHANNEL_KEYS:
            _fail(lineno, f"bad channel parameter {token!r}, "
                          f"expected key=value with key in {_CHANNEL_KEYS}")
        try:
            params[key] = int(raw) if key == "invalid_every" else float(raw)
        except ValueError:
            _fail(lineno, f"bad number in channel parameter {token!r}")
    ln_name = member.name.split(".")[0].rstrip("0123456789")
    try:
        return ChannelSpec(
            logic_node=LOGIC_NODES.get(ln_name),
            kind=_CHANNEL_KINDS[tokens[0]],
            amplitude=params.get("amp", 0.0),
            frequency_hz=params["freq"],
            phase_rad=params.get("phase", 0.0),
            dc_offset=params.get("dc", 0.0),
            noise_sigma=params.get("sigma", 0.0),
            scale_factor=member.scale_factor,
            offset=member.offset,
            width=member.width,
            invalid_every_nth=params.get("invalid_every", 0),
        )
    except ValueError as exc:
        _fail(lineno, str(exc))


def parse_config(text: str) -> RunConfig:
    scalars: dict[str, tuple[int, str]] = {}
    members: list[SchemaMember] = []
    channel_lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            _fail(lineno, "expected key = value")
        key, value = key.strip(), value.strip()
        if key == "member":
            members.append((lineno, _parse_member(lineno, value)))
        elif key == "channel":
            tokens = value.split()
            if not tokens or tokens[0] not in _CHANNEL_KINDS:
                _fail(lineno,
                      f"channel expects one of {sorted(_CHANNEL_KINDS)} first")
            channel_lines.append((lineno, value))
        elif key in _SCALAR_PARSERS:
            if key in scalars:
                _fail(lineno, f"duplicate key {key!r}")
            scalars[key] = (lineno, value)
        else:
            _fail(lineno, f"unknown key {key!r}")

    fields = {}
    endpoint = {}
    for key, (lineno, value) in scalars.items():
        target, convert = _SCALAR_PARSERS[key]
        parsed = convert(lineno, key, value)
        if target is None:
            fields[key] = parsed
        else:
            endpoint[target] = parsed

    if not members:
        members = [(0, m) for m in DEFAULT_MEMBERS]
    schema = DatasetSchema(m for _, m in members)
    if schema.data_attribute_count > 2:
        _fail(members[-1][0],
              f"dataset spans {schema.data_attribute_count} data attributes, "
              "at most 2 are allowed")
    members = [m for _, m in members]
    fields["members"] = tuple(members)
    nominal_hz = fields.get("nominal_hz", RunConfig.nominal_hz)
    if not channel_lines:
        channel_lines = [(0, line) for line in
                         _DEFAULT_CHANNEL_LINES[:len(members)]]
        while len(channel_lines) < len(members):
            channel_lines.append((0, "const dc=0.0"))
    if len(channel_lines) != len(members):
        _fail(channel_lines[-1][0],
              f"{len(channel_lines)} channel lines for {len(members)} members")
    fields["channels"] = tuple(
        _parse_channel(lineno, value, member, nominal_hz)
        for (lineno, value), member in zip(channel_lines, members))
    try:
        if endpoint:
            fields["endpoint"] = EndpointConfig(**endpoint)
        return RunConfig(**fields)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _scalar(convert):
    return (None, convert)


def _endpoint(name, convert):
    return (name, convert)


def _conv_str(lineno, key, value):
    return value


def _conv_sv_id(lineno, key, value):
    if not value or not value.isascii() or len(value) > 64:
        _fail(lineno, f"{key} must be 1..64 ASCII characters")
    return value


def _conv_int(lineno, key, value):
    return _parse_int(lineno, key, value)


def _conv_int_range(lo, hi):
    def convert(lineno, key, value):
        parsed = _parse_int(lineno, key, value)
        if not lo <= parsed <= hi:
            _fail(lineno, f"{key}={parsed} outside [{lo}, {hi}]")
        return parsed
    return convert


def _conv_points(lineno, key, value):
    parsed = _parse_int(lineno, key, value)
    if parsed not in (80, 256):
        _fail(lineno, f"{key} must be 80 or 256, got {parsed}")
    return parsed


def _conv_mac(lineno, key, value):
    try:
        return mac_from_str(value)
    except ValueError as exc:
        _fail(lineno, str(exc))


def _conv_smp_synch(lineno, key, value):
    try:
        return _SMP_SYNCH_NAMES[value.lower()]
    except KeyError:
        _fail(lineno, f"{key} must be none|local|global, got {value!r}")


def _conv_mode(lineno, key, value):
    try:
        return Mode(value.lower())
    except ValueError:
        _fail(lineno, f"{key} must be unicast|multicast, got {value!r}")


_SCALAR_PARSERS = {
    "sv_id": _scalar(_conv_sv_id),
    "appid": _scalar(_conv_int_range(0, 0xFFFF)),
    "dst_mac": _scalar(_conv_mac),
    "src_mac": _scalar(_conv_mac),
    "vlan_priority": _scalar(_conv_int_range(0, 7)),
    "vlan_id": _scalar(_conv_int_range(0, 0x0FFF)),
    "conf_rev": _scalar(_conv_int_range(0, 0xFFFF_FFFF)),
    "smp_synch": _scalar(_conv_smp_synch),
    "nominal_hz": _scalar(_conv_int_range(1, 1000)),
    "points_per_period": _scalar(_conv_points),
    "endpoint_mode": _endpoint("mode", _conv_mode),
    "endpoint_address": _endpoint("address", _conv_str),
    "endpoint_port": _endpoint("port", _conv_int_range(1, 0xFFFF)),
    "endpoint_ttl": _endpoint("multicast_ttl", _conv_int_range(0, 255)),
    "bind_interface": _endpoint("bind_interface", _conv_str),
}


def load_config(path) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    return parse_config(text)


def dump_config(cfg: RunConfig) -> str:
    """Canonical text form; reloads to an equal RunConfig."""
    lines = [
        "# svlite stream configuration",
        f"sv_id = {cfg.sv_id}",
        f"appid = 0x{cfg.appid:04x}",
        f"dst_mac = {mac_to_str(cfg.dst_mac)}",
        f"src_mac = {mac_to_str(cfg.src_mac)}",
        f"vlan_priority = {cfg.vlan_priority}",
        f"vlan_id = {cfg.vlan_id}",
        f"conf_rev = {cfg.conf_rev}",
        f"smp_synch = {cfg.smp_synch.name.lower()}",
        f"nominal_hz = {cfg.nominal_hz}",
        f"points_per_period = {cfg.points_per_period}",
        f"endpoint_mode = {cfg.endpoint.mode.value}",
        f"endpoint_address = {cfg.endpoint.address}",
        f"endpoint_port = {cfg.endpoint.port}",
        f"endpoint_ttl = {cfg.endpoint.multicast_ttl}",
    ]
    if cfg.endpoint.bind_interface:
        lines.append(f"bind_interface = {cfg.endpoint.bind_interface}")
    for member in cfg.members:
        lines.append(
            "member = {m.name}:{m.width}:{s}:{m.scale_factor}:{m.offset}:{q}"
            .format(m=member, s="signed" if member.signed else "unsigned",
                    q="q" if member.include_quality else "noq"))
    for channel in cfg.channels:
        lines.append(
            f"channel = {channel.kind.value} amp={channel.amplitude!r} "
            f"freq={channel.frequency_hz!r} phase={channel.phase_rad!r} "
            f"dc={channel.dc_offset!r} sigma={channel.noise_sigma!r} "
            f"invalid_every={channel.invalid_every_nth}")
    return "\n".join(lines) + "\n"
