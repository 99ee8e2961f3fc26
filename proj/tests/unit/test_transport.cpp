#include "fqsim/netem/dumbbell.hpp"
#include "fqsim/transport/pacer.hpp"
#include "fqsim/transport/receiver.hpp"
#include "fqsim/transport/round_clock.hpp"
#include "fqsim/transport/round_ledger.hpp"
#include "fqsim/transport/rtt_estimator.hpp"
#include "fqsim/transport/sender.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace fqsim;

TEST(Pacer, StrictGapIsExact)
{
    Pacer p{10e6, false, SeededRng{1, "p"}};
    EXPECT_EQ(p.next_gap(1500), from_millis(1.2));
    EXPECT_EQ(p.next_gap(1500), from_millis(1.2));
    p.set_rate(1e6);
    EXPECT_EQ(p.nominal_gap(1500), from_millis(12));
}

TEST(Pacer, JitterMultiplierMeanOverManyDraws)
{
    Pacer p{12e6, true, SeededRng{5, "p"}};
    const double nominal = static_cast<double>(p.nominal_gap(1500).count());
    const int n = 100000;
    double sum = 0.0;
    double lo = 10.0;
    double hi = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double m = static_cast<double>(p.next_gap(1500).count()) / nominal;
        sum += m;
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    EXPECT_NEAR(sum / n, 1.0, 0.01);
    EXPECT_GE(lo, 0.5 - 1e-6);
    EXPECT_LT(hi, 1.5);
}

TEST(Pacer, RejectsBadRates)
{
    Pacer p{1e6, false, SeededRng{1, "p"}};
    EXPECT_THROW(p.set_rate(0.0), std::invalid_argument);
    EXPECT_THROW(p.set_rate(-5.0), std::invalid_argument);
    EXPECT_THROW(p.set_rate(std::nan("")), std::invalid_argument);
}

TEST(RttEstimator, MinLatestAndEwma)
{
    RttEstimator r;
    EXPECT_FALSE(r.has_sample());
    const std::vector<double> ms{30, 22, 40, 25, 21.5, 60};
    double srtt = 0.0;
    for (std::size_t i = 0; i < ms.size(); ++i)
    {
        r.add_sample(from_millis(ms[i]));
        srtt = i == 0 ? ms[i] : srtt + (ms[i] - srtt) / 8.0;
    }
    EXPECT_EQ(r.min(), from_millis(21.5));
    EXPECT_EQ(r.latest(), from_millis(60));
    EXPECT_NEAR(to_millis(r.srtt()), srtt, 1e-5);
    r.merge_min(from_millis(20));
    EXPECT_EQ(r.min(), from_millis(20));
    r.merge_min(from_millis(50));
    EXPECT_EQ(r.min(), from_millis(20));
}

TEST(RoundLedger, ReceivingRateFromAckedBytes)
{
    RoundLedger l;
    l.begin(kSimStart, from_millis(150));
    for (int i = 0; i < 125; ++i)
    {
        l.on_acked(1500, 0);
    }
    const RoundReport r = l.close(at_seconds(0.15), from_millis(150));
    EXPECT_DOUBLE_EQ(r.receiving_rate_bps, 125.0 * 1500 * 8 / 0.15);
    EXPECT_NEAR(r.receiving_rate_bps, 10e6, 1e-6);
    EXPECT_EQ(r.sending_rate_bps, 0.0);
}

TEST(RoundLedger, EmptyRoundHasZeroRates)
{
    RoundLedger l;
    l.begin(kSimStart, from_millis(20));
    const RoundReport r = l.close(at_seconds(0.02), from_millis(20));
    EXPECT_EQ(r.sending_rate_bps, 0.0);
    EXPECT_EQ(r.receiving_rate_bps, 0.0);
    EXPECT_FALSE(r.lost());
    EXPECT_EQ(r.loss_fraction(), 0.0);
}

TEST(RoundLedger, CreditsFeedbackToTheSendRound)
{
    RoundLedger l;
    l.begin(kSimStart, from_millis(10));
    for (int i = 0; i < 4; ++i)
    {
        l.on_sent(1500);
    }
    const RoundReport r0 = l.close(at_seconds(0.01), from_millis(10));
    EXPECT_EQ(r0.round_index, 0U);
    // Feedback for round-0 packets arrives during round 1.
    l.on_acked(1500, 0);
    l.on_acked(1500, 0);
    l.on_lost(0);
    l.on_sent(1500);
    const RoundReport r1 = l.close(at_seconds(0.02), from_millis(10));
    EXPECT_EQ(r1.packets_acked, 2U);
    EXPECT_EQ(r1.packets_lost, 1U);

    const auto s0 = l.send_round_report(0);
    ASSERT_TRUE(s0);
    EXPECT_EQ(s0->packets_sent, 4U);
    EXPECT_EQ(s0->packets_acked, 2U);
    EXPECT_EQ(s0->packets_lost, 1U);
    EXPECT_DOUBLE_EQ(s0->sending_rate_bps, 4 * 1500 * 8 / 0.01);
    EXPECT_DOUBLE_EQ(s0->receiving_rate_bps, 2 * 1500 * 8 / 0.01);
    const auto s1 = l.send_round_report(1);
    ASSERT_TRUE(s1);
    EXPECT_EQ(s1->packets_sent, 1U);
    EXPECT_EQ(s1->packets_acked, 0U);
    EXPECT_FALSE(l.send_round_report(7).has_value());
}

TEST(RoundLedger, HistoryIsBounded)
{
    RoundLedger l;
    l.begin(kSimStart, from_millis(1));
    for (int i = 1; i <= 40; ++i)
    {
        l.close(at_seconds(i * 0.001), from_millis(1));
    }
    EXPECT_FALSE(l.send_round_report(0).has_value());
    EXPECT_TRUE(l.send_round_report(40).has_value());
    EXPECT_TRUE(l.send_round_report(40 - RoundLedger::kHistory + 1).has_value());
}

TEST(RoundLedger, RejectsNonPositiveDuration)
{
    RoundLedger l;
    EXPECT_THROW(l.begin(kSimStart, Duration::zero()), std::invalid_argument);
}

namespace {

/// Receiver stand-in that drops chosen sequence numbers and ACKs the rest.
struct SelectiveAcker
{
    Dumbbell& net;
    std::set<std::uint64_t> drop;
    std::vector<std::uint64_t> seen;

    SelectiveAcker(Dumbbell& n, FlowId flow, std::set<std::uint64_t> d) : net{n}, drop{std::move(d)}
    {
        net.attach_receiver(flow, [this](const Packet& p) {
            seen.push_back(p.seq);
            if (drop.count(p.seq) != 0)
            {
                return;
            }
            Packet ack;
            ack.flow = p.flow;
            ack.kind = PacketKind::ack;
            ack.size_bytes = kAckBytes;
            ack.sent_at = p.sent_at;
            ack.acked_seq = p.seq;
            net.send_ack(ack);
        });
    }
};

LinkConfig
fast_link()
{
    LinkConfig cfg;
    cfg.rate_bps = 1'000'000'000;
    cfg.prop_delay = from_millis(1);
    cfg.qdisc.capacity_pkts = 1000;
    return cfg;
}

} // namespace

TEST(Sender, GapRuleDeclaresLossAfterWindowOfLaterAcks)
{
    Engine e;
    Dumbbell net{e, fast_link()};
    SelectiveAcker rx{net, 0, {3}};
    SenderConfig cfg;
    cfg.reorder_window = 3;
    Sender s{e, net, 0, cfg, e.rng("pacer/0")};

    std::vector<std::uint64_t> lost;
    std::uint64_t highest_at_loss = 0;
    s.on_loss([&](std::uint64_t seq, SimTime) {
        lost.push_back(seq);
        highest_at_loss = s.highest_acked();
    });
    // 12 Mbps -> one packet per millisecond.
    s.start(12e6, from_millis(10));
    e.run_until(at_seconds(0.0065));
    s.stop();
    e.run_until(at_seconds(0.1));
    ASSERT_EQ(lost, (std::vector<std::uint64_t>{3}));
    EXPECT_EQ(highest_at_loss, 6U);
    EXPECT_EQ(s.packets_lost(), 1U);
    EXPECT_EQ(s.packets_acked(), 6U);
}

TEST(Sender, NoLossBeforeWindowFills)
{
    Engine e;
    Dumbbell net{e, fast_link()};
    SelectiveAcker rx{net, 0, {3}};
    Sender s{e, net, 0, SenderConfig{}, e.rng("pacer/0")};
    s.start(12e6, from_millis(10));
    // Packets 0..5 sent; 5 is the highest ACK, 3 + 3 > 5.
    e.run_until(at_seconds(0.0055));
    s.stop();
    e.run_until(at_seconds(0.1));
    EXPECT_EQ(s.packets_lost(), 0U);
    EXPECT_EQ(s.outstanding(), 1U);
    s.flush_losses();
    EXPECT_EQ(s.packets_lost(), 1U);
    EXPECT_EQ(s.outstanding(), 0U);
}

TEST(Sender, HandshakeGivesFirstRttSample)
{
    Engine e;
    LinkConfig cfg;
    cfg.rate_bps = 10'000'000;
    cfg.prop_delay = from_millis(10);
    Dumbbell net{e, cfg};
    Receiver rx{net, 0};
    Sender s{e, net, 0, SenderConfig{}, e.rng("pacer/0")};
    SimTime established{};
    s.handshake([&]() { established = e.now(); });
    e.run_until(at_seconds(2));
    EXPECT_TRUE(s.established());
    EXPECT_EQ(established, SimTime{from_millis(21.2)});
    EXPECT_EQ(s.rtt().min(), from_millis(21.2));
    EXPECT_EQ(s.packets_sent(), 0U);
}

TEST(Sender, HandshakeRetriesAfterTimeout)
{
    Engine e;
    Dumbbell net{e, fast_link()};
    // The first attempt (seq 0) vanishes.
    SelectiveAcker rx{net, 0, {0}};
    Sender s{e, net, 0, SenderConfig{}, e.rng("pacer/0")};
    SimTime established{};
    s.handshake([&]() { established = e.now(); });
    e.run_until(at_seconds(3));
    EXPECT_TRUE(s.established());
    EXPECT_GT(established, at_seconds(1.0));
    EXPECT_LT(established, at_seconds(1.01));
}

TEST(Sender, RateChangeRescalesPendingGap)
{
    Engine e;
    Dumbbell net{e, fast_link()};
    std::vector<SimTime> arrivals;
    net.attach_receiver(0, [&](const Packet&) { arrivals.push_back(e.now()); });
    Sender s{e, net, 0, SenderConfig{}, e.rng("pacer/0")};
    s.start(12e6, from_millis(10)); // gap 1 ms
    e.schedule(from_millis(0.5), [&]() { s.set_rate(24e6); });
    e.run_until(at_seconds(0.0012));
    s.stop();
    e.run_until(at_seconds(0.01));
    // Sends at 0 and 0.5 + 0.5/2 = 0.75 ms; arrival adds 12 us + 1 ms.
    ASSERT_GE(arrivals.size(), 2U);
    const Duration path = Duration{12'000} + from_millis(1);
    EXPECT_EQ(arrivals[0], kSimStart + path);
    EXPECT_EQ(arrivals[1], SimTime{from_millis(0.75)} + path);
}

TEST(Sender, ClampsToAccessLinkCeiling)
{
    Engine e;
    Dumbbell net{e, fast_link()};
    SenderConfig cfg;
    cfg.max_rate_bps = 5e6;
    Sender s{e, net, 0, cfg, e.rng("pacer/0")};
    s.set_rate(50e6);
    EXPECT_EQ(s.rate(), 5e6);
}

TEST(Sender, InflightCapPausesAndStallTimeoutResumes)
{
    Engine e;
    Dumbbell net{e, fast_link()};
    std::set<std::uint64_t> all;
    for (std::uint64_t i = 0; i < 100; ++i)
    {
        all.insert(i);
    }
    SelectiveAcker rx{net, 0, all};
    Sender s{e, net, 0, SenderConfig{}, e.rng("pacer/0")};
    s.set_inflight_cap(5);
    s.start(120e6, from_millis(10));
    e.run_until(at_seconds(0.1));
    EXPECT_EQ(s.packets_sent(), 5U);
    EXPECT_EQ(s.packets_lost(), 0U);
    // No RTT sample yet, so the stall timeout is its 200 ms floor.
    e.run_until(at_seconds(0.25));
    EXPECT_EQ(s.packets_lost(), 5U);
    EXPECT_EQ(s.packets_sent(), 10U);
}

TEST(Sender, InflightCapReleasedByAcks)
{
    Engine e;
    Dumbbell net{e, fast_link()};
    Receiver rx{net, 0};
    Sender s{e, net, 0, SenderConfig{}, e.rng("pacer/0")};
    s.set_inflight_cap(4);
    std::uint64_t max_outstanding = 0;
    s.on_ack_event([&](const Packet&, Duration) { max_outstanding = std::max(max_outstanding, s.outstanding()); });
    s.start(1e9, from_millis(10));
    e.run_until(at_seconds(0.5));
    EXPECT_LE(max_outstanding, 4U);
    // About 4 packets per 2 ms round trip for 0.5 s.
    EXPECT_GT(s.packets_acked(), 900U);
    EXPECT_EQ(s.packets_lost(), 0U);
}

TEST(Receiver, AcksEveryPacketEchoingTimestamp)
{
    Engine e;
    Dumbbell net{e, fast_link()};
    Receiver rx{net, 3};
    std::vector<Duration> rtts;
    net.attach_sender(3, [&](const Packet& ack) {
        ASSERT_TRUE(ack.acked_seq.has_value());
        rtts.push_back(e.now() - ack.sent_at);
    });
    for (int i = 0; i < 3; ++i)
    {
        Packet p;
        p.flow = 3;
        p.seq = static_cast<std::uint64_t>(i);
        p.size_bytes = 1500;
        p.sent_at = e.now();
        net.send_data(p);
    }
    e.run_until(at_seconds(1));
    EXPECT_EQ(rx.packets_received(), 3U);
    EXPECT_EQ(rx.bytes_received(), 4500U);
    ASSERT_EQ(rtts.size(), 3U);
    EXPECT_EQ(rtts[0], from_millis(2) + Duration{12'000});
}

TEST(RoundClock, FollowsReturnedDurations)
{
    Engine e;
    std::vector<SimTime> ticks;
    int n = 0;
    RoundClock c{e, [&]() {
                     ticks.push_back(e.now());
                     ++n;
                     return n == 1 ? from_millis(5) : Duration::zero();
                 }};
    c.start(from_millis(10));
    e.run_until(at_seconds(0.015) + Duration{1'500});
    ASSERT_GE(ticks.size(), 3U);
    EXPECT_EQ(ticks[0], at_seconds(0.010));
    EXPECT_EQ(ticks[1], at_seconds(0.015));
    // A zero duration is raised to the 1 us floor.
    EXPECT_EQ(ticks[2], at_seconds(0.015) + RoundClock::kMinRound);
    c.stop();
    EXPECT_FALSE(c.running());
}
