import pytest

from helpers import GOLDEN_SCHEMA, golden_frame
from svlite.analyzer import StreamAnalyzer
from svlite.codec import encode_frame
from svlite.netsim import Channel, ChannelSpec


def _send_all(channel, count, interval=250e-6, payload=b"datagram"):
    for index in range(count):
        channel.transmit(payload + index.to_bytes(4, "big"), index * interval)


class TestLossFree:
    def test_every_datagram_delivered_once(self):
        channel = Channel(ChannelSpec(seed=1, base_latency=1e-3))
        _send_all(channel, 50)
        deliveries = channel.drain()
        assert len(deliveries) == 50
        assert channel.delivered == 50 and channel.lost == 0

    def test_order_preserved_without_jitter(self):
        channel = Channel(ChannelSpec(seed=1))
        _send_all(channel, 20)
        payloads = [p for _, p in channel.drain()]
        assert payloads == sorted(payloads, key=lambda p: p[-4:])

    def test_latency_applied(self):
        channel = Channel(ChannelSpec(seed=1, base_latency=2e-3))
        channel.transmit(b"x", 1.0)
        ((at, _),) = channel.drain()
        assert at == pytest.approx(1.002)


class TestLoss:
    def test_total_loss(self):
        channel = Channel(ChannelSpec(loss_probability=1.0, seed=5))
        _send_all(channel, 10)
        assert channel.drain() == []
        assert channel.lost == 10

    def test_binomial_band(self):
        channel = Channel(ChannelSpec(loss_probability=0.01, seed=42))
        _send_all(channel, 100_000)
        delivered = len(channel.drain())
        # 3 sigma around Binomial(100000, 0.99)
        assert 98_700 <= delivered <= 99_300
        assert delivered == channel.delivered

    def test_conservation_exact(self):
        channel = Channel(ChannelSpec(loss_probability=0.25, jitter=1e-4,
                                      reorder_probability=0.05, seed=99))
        _send_all(channel, 5000)
        delivered = len(channel.drain())
        assert delivered == channel.delivered
        assert channel.delivered + channel.lost == channel.transmitted == 5000


class TestReproducibility:
    def test_identical_runs(self):
        spec = ChannelSpec(loss_probability=0.1, jitter=5e-4,
                           reorder_probability=0.02, seed=1234,
                           base_latency=1e-3)
        runs = []
        for _ in range(2):
            channel = Channel(spec)
            _send_all(channel, 2000)
            runs.append(channel.drain())
        assert runs[0] == runs[1]


class TestJitterReorder:
    def test_drain_before_transmit(self):
        assert Channel(ChannelSpec()).drain() == []

    def test_partial_drain_by_time(self):
        channel = Channel(ChannelSpec(seed=1))
        _send_all(channel, 10, interval=1.0)
        early = channel.drain(until=4.5)
        assert len(early) == 5
        assert len(channel.drain()) == 5

    def test_jitter_can_swap_adjacent_sends(self):
        # Search the seed space for a swap, then check the analyzer calls
        # it reordering rather than loss.
        interval = 250e-6
        swap_seed = None
        for seed in range(1000):
            channel = Channel(ChannelSpec(jitter=300e-6, seed=seed))
            channel.transmit(b"first", 0.0)
            channel.transmit(b"second", interval)
            deliveries = [p for _, p in channel.drain()]
            if deliveries == [b"second", b"first"]:
                swap_seed = seed
                break
        assert swap_seed is not None, "no swapping seed in 0..999"

        frame = golden_frame()
        wires = []
        for smp_cnt in (0, 1):
            frame.apdu.asdus[0].smp_cnt = smp_cnt
            wires.append(encode_frame(frame, GOLDEN_SCHEMA))
        channel = Channel(ChannelSpec(jitter=300e-6, seed=swap_seed))
        channel.transmit(wires[0], 0.0)
        channel.transmit(wires[1], interval)
        analyzer = StreamAnalyzer(4000, GOLDEN_SCHEMA)
        for at, payload in channel.drain():
            analyzer.ingest(payload, at)
        stats = analyzer.report()
        assert stats.out_of_order == 1
        assert stats.lost == 0

    def test_forced_reorder_delays_past_next(self):
        channel = Channel(ChannelSpec(reorder_probability=1.0, seed=3))
        channel.transmit(b"a", 0.0)
        channel.transmit(b"b", 1.0)
        channel.transmit(b"c", 2.0)
        deliveries = channel.drain()
        assert sorted(p for _, p in deliveries) == [b"a", b"b", b"c"]
        assert channel.delivered == 3
        times = {p: at for at, p in deliveries}
        assert times[b"a"] > times[b"b"] or times[b"a"] > 1.0

    def test_delivery_never_precedes_send(self):
        channel = Channel(ChannelSpec(jitter=10.0, seed=8))
        sends = {i: float(i) for i in range(200)}
        for index, at in sends.items():
            channel.transmit(index.to_bytes(2, "big"), at)
        for at, payload in channel.drain():
            assert at >= sends[int.from_bytes(payload, "big")]


class TestChannelSpecValidation:
    @pytest.mark.parametrize("kwargs", [
        dict(loss_probability=-0.1),
        dict(loss_probability=1.1),
        dict(reorder_probability=2.0),
        dict(jitter=-1e-6),
        dict(base_latency=-1.0),
    ])
    def test_rejected(self, kwargs):
        with pytest.raises(ValueError):
            ChannelSpec(**kwargs)
