#include "fqsim/fqdetect/loss_ratio.hpp"
#include "fqsim/fqdetect/probe.hpp"
#include "fqsim/fqdetect/probe_connection.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <variant>

using namespace fqsim;

namespace {

RoundReport
round_with(double send_bps, double recv_bps, std::uint64_t lost, double end_s = 1.0)
{
    RoundReport r;
    r.duration = from_millis(50);
    r.start = at_seconds(end_s) - r.duration;
    r.sending_rate_bps = send_bps;
    r.receiving_rate_bps = recv_bps;
    r.packets_sent = 10;
    r.packets_lost = lost;
    return r;
}

// Delivered-fraction ratio built from first principles for the oracle.
double
oracle_ratio(double s1, double r1, double s2, double r2)
{
    const double f1 = r1 / s1;
    const double f2 = r2 / s2;
    return f1 / f2;
}

} // namespace

TEST(LossRatio, FifoFqAndIntermediateExamples)
{
    // Both flows lose the same share.
    EXPECT_DOUBLE_EQ(compute_loss_ratio(10e6, 8e6, 20e6, 16e6), 1.0);
    // Equal goodput despite 2x sending.
    EXPECT_DOUBLE_EQ(compute_loss_ratio(10e6, 5e6, 20e6, 5e6), 2.0);
    EXPECT_NEAR(compute_loss_ratio(10e6, 8e6, 20e6, 12e6), 4.0 / 3.0, 1e-12);
}

TEST(LossRatio, DegenerateInputsThrow)
{
    EXPECT_THROW(compute_loss_ratio(0.0, 1.0, 2.0, 1.0), DegenerateRoundError);
    EXPECT_THROW(compute_loss_ratio(1.0, 1.0, 0.0, 1.0), DegenerateRoundError);
    EXPECT_THROW(compute_loss_ratio(1.0, 1.0, 2.0, 0.0), DegenerateRoundError);
    EXPECT_THROW(compute_loss_ratio(1.0, 0.0, 2.0, 1.0), DegenerateRoundError);
    EXPECT_THROW(compute_loss_ratio(1.0, std::nan(""), 2.0, 1.0), DegenerateRoundError);
    EXPECT_THROW(compute_loss_ratio(1.0, 1.0, INFINITY, 1.0), DegenerateRoundError);
}

TEST(LossRatio, ReportOverloadMatchesScalarForm)
{
    const RoundReport a = round_with(10e6, 7e6, 1);
    const RoundReport b = round_with(20e6, 9e6, 1);
    EXPECT_DOUBLE_EQ(compute_loss_ratio(a, b), compute_loss_ratio(10e6, 7e6, 20e6, 9e6));
}

TEST(LossRatio, ScaleInvariantAndAgreesWithOracle)
{
    SeededRng rng{42, "scale"};
    for (int i = 0; i < 100; ++i)
    {
        const double s1 = rng.uniform(1e5, 1e8);
        const double r1 = s1 * rng.uniform(0.05, 1.0);
        const double s2 = rng.uniform(1e5, 1e8);
        const double r2 = s2 * rng.uniform(0.05, 1.0);
        const double base = compute_loss_ratio(s1, r1, s2, r2);
        EXPECT_NEAR(base, oracle_ratio(s1, r1, s2, r2), 1e-12 * base);
        const double k = rng.uniform(1e-3, 1e3);
        EXPECT_NEAR(compute_loss_ratio(k * s1, k * r1, k * s2, k * r2), base, 1e-9 * base);
    }
}

TEST(FqProbe, DoublesOnLosslessRoundsWithFixedRatio)
{
    FqProbe p{ProbeConfig{}, 1e6};
    EXPECT_EQ(p.rate1(), 1e6);
    EXPECT_EQ(p.rate2(), 2e6);
    for (int i = 1; i <= 3; ++i)
    {
        const ProbeStep s = p.on_round(round_with(1, 1, 0), round_with(2, 2, 0));
        const auto c = std::get<ProbeContinue>(s);
        EXPECT_DOUBLE_EQ(c.rate1_bps, 1e6 * std::pow(2.0, i));
        EXPECT_DOUBLE_EQ(c.rate2_bps, 2.0 * c.rate1_bps);
    }
}

TEST(FqProbe, SingleFlowLossDoesNotCount)
{
    FqProbe p{ProbeConfig{}, 1e6};
    const auto c = std::get<ProbeContinue>(p.on_round(round_with(1, 1, 3), round_with(2, 2, 0)));
    EXPECT_FALSE(c.confirming);
    EXPECT_DOUBLE_EQ(c.rate1_bps, 2e6);
}

TEST(FqProbe, ImmediateVerdictWithoutConfirmation)
{
    ProbeConfig cfg;
    cfg.confirm_rounds = 0;
    FqProbe fq{cfg, 1e6};
    const auto r = std::get<DetectionResult>(fq.on_round(round_with(10e6, 5e6, 2), round_with(20e6, 5e6, 2)));
    EXPECT_TRUE(r.fq_detected);
    EXPECT_DOUBLE_EQ(*r.loss_ratio, 2.0);
    EXPECT_EQ(r.rounds_used, 1U);
    EXPECT_DOUBLE_EQ(r.combined_handover_rate_bps, 10e6);
    EXPECT_FALSE(r.timed_out);

    FqProbe fifo{cfg, 1e6};
    const auto f = std::get<DetectionResult>(fifo.on_round(round_with(10e6, 8e6, 2), round_with(20e6, 16e6, 2)));
    EXPECT_FALSE(f.fq_detected);
    EXPECT_DOUBLE_EQ(*f.loss_ratio, 1.0);
}

TEST(FqProbe, CutoffIsInclusive)
{
    ProbeConfig cfg;
    cfg.confirm_rounds = 0;
    FqProbe p{cfg, 1e6};
    const auto r = std::get<DetectionResult>(p.on_round(round_with(8e6, 6e6, 1), round_with(16e6, 8e6, 1)));
    EXPECT_DOUBLE_EQ(*r.loss_ratio, 1.5);
    EXPECT_TRUE(r.fq_detected);
}

TEST(FqProbe, ConfirmationHoldsRatesAndUsesSecondRound)
{
    FqProbe p{ProbeConfig{}, 1e6};
    const auto hold = std::get<ProbeContinue>(p.on_round(round_with(10e6, 8e6, 1), round_with(20e6, 16e6, 1)));
    EXPECT_TRUE(hold.confirming);
    EXPECT_DOUBLE_EQ(hold.rate1_bps, 1e6);
    const auto r = std::get<DetectionResult>(
        p.on_round(round_with(10e6, 5e6, 1), round_with(20e6, 5e6, 1), at_seconds(3.25)));
    EXPECT_TRUE(r.fq_detected);
    EXPECT_DOUBLE_EQ(*r.loss_ratio, 2.0);
    EXPECT_EQ(r.rounds_used, 2U);
    EXPECT_EQ(r.decided_at, at_seconds(3.25));
    EXPECT_TRUE(p.decided());
    // Further rounds return the stored verdict.
    const auto again = std::get<DetectionResult>(p.on_round(round_with(1, 1, 0), round_with(2, 2, 0)));
    EXPECT_EQ(again.rounds_used, 2U);
}

TEST(FqProbe, LosslessRoundResetsStreak)
{
    FqProbe p{ProbeConfig{}, 1e6};
    ASSERT_TRUE(std::get<ProbeContinue>(p.on_round(round_with(1, 0.5, 1), round_with(2, 1, 1))).confirming);
    const auto resumed = std::get<ProbeContinue>(p.on_round(round_with(1, 1, 0), round_with(2, 2, 0)));
    EXPECT_FALSE(resumed.confirming);
    EXPECT_DOUBLE_EQ(resumed.rate1_bps, 2e6);
    ASSERT_TRUE(std::holds_alternative<ProbeContinue>(p.on_round(round_with(1, 0.5, 1), round_with(2, 1, 1))));
    EXPECT_TRUE(std::holds_alternative<DetectionResult>(p.on_round(round_with(1, 0.5, 1), round_with(2, 1, 1))));
}

TEST(FqProbe, DegenerateRoundIsSkipped)
{
    ProbeConfig cfg;
    cfg.confirm_rounds = 0;
    FqProbe p{cfg, 1e6};
    const auto c = std::get<ProbeContinue>(p.on_round(round_with(10e6, 0.0, 1), round_with(20e6, 5e6, 1)));
    EXPECT_TRUE(c.degenerate);
    EXPECT_DOUBLE_EQ(c.rate1_bps, 1e6);
    EXPECT_FALSE(p.decided());
}

TEST(FqProbe, TimesOutWithoutJointLoss)
{
    ProbeConfig cfg;
    cfg.max_rounds = 5;
    FqProbe p{cfg, 1e3};
    ProbeStep s;
    for (int i = 0; i < 5; ++i)
    {
        s = p.on_round(round_with(1, 1, 0), round_with(2, 2, 1));
    }
    const auto r = std::get<DetectionResult>(s);
    EXPECT_TRUE(r.timed_out);
    EXPECT_FALSE(r.fq_detected);
    EXPECT_FALSE(r.loss_ratio.has_value());
    EXPECT_EQ(r.rounds_used, 5U);
}

TEST(FqProbe, RateCappedByAccessCeiling)
{
    FqProbe p{ProbeConfig{}, 300e6, 1e9};
    const auto c = std::get<ProbeContinue>(p.on_round(round_with(1, 1, 0), round_with(2, 2, 0)));
    EXPECT_DOUBLE_EQ(c.rate1_bps, 500e6);
    EXPECT_DOUBLE_EQ(c.rate2_bps, 1e9);
}

TEST(FqProbe, RejectsInvalidConfig)
{
    ProbeConfig cfg;
    cfg.rate_ratio = 1.0;
    EXPECT_THROW((FqProbe{cfg, 1e6}), std::invalid_argument);
    EXPECT_THROW((FqProbe{ProbeConfig{}, 0.0}), std::invalid_argument);
    ProbeConfig rounds;
    rounds.max_rounds = 0;
    EXPECT_THROW(validate(rounds), std::invalid_argument);
}

namespace {

struct ProbeRun
{
    Engine engine;
    Dumbbell net;
    ProbeConnection conn;

    ProbeRun(QdiscKind q, std::uint64_t seed)
        : engine{seed},
          net{engine, link(q)},
          conn{engine, net, 0, 1, ProbeConnectionConfig{}}
    {
    }

    static LinkConfig link(QdiscKind q)
    {
        LinkConfig cfg;
        cfg.rate_bps = 10'000'000;
        cfg.prop_delay = from_millis(10);
        cfg.qdisc.kind = q;
        cfg.qdisc.capacity_pkts = 100;
        return cfg;
    }
};

} // namespace

TEST(ProbeConnection, DetectsFqAndHandsOverNearCapacity)
{
    ProbeRun run{QdiscKind::fq, 1};
    run.conn.start();
    run.engine.run_until(at_seconds(10));
    ASSERT_TRUE(run.conn.result().has_value());
    const DetectionResult& r = *run.conn.result();
    EXPECT_TRUE(r.fq_detected);
    EXPECT_NEAR(r.combined_handover_rate_bps, 10e6, 1.5e6);
    EXPECT_EQ(run.conn.phase(), ProbeConnection::Phase::handed_over);
    ASSERT_NE(run.conn.controller(), nullptr);
    EXPECT_EQ(run.conn.controller()->name(), "delay_based");
    EXPECT_FALSE(run.conn.secondary().sending());
}

TEST(ProbeConnection, DetectsSharedQueue)
{
    ProbeRun run{QdiscKind::fifo, 1};
    run.conn.start();
    run.engine.run_until(at_seconds(10));
    ASSERT_TRUE(run.conn.result().has_value());
    EXPECT_FALSE(run.conn.result()->fq_detected);
    ASSERT_NE(run.conn.controller(), nullptr);
    EXPECT_EQ(run.conn.controller()->name(), "pcc_like");
}

TEST(ProbeConnection, JitteredPacingAndFixedRateRatio)
{
    ProbeRun run{QdiscKind::fifo, 7};
    run.conn.start();
    run.engine.run_until(at_seconds(0.05));
    EXPECT_TRUE(run.conn.primary().jitter());
    EXPECT_TRUE(run.conn.secondary().jitter());
    run.engine.run_until(at_seconds(10));
    ASSERT_FALSE(run.conn.rounds().empty());
    const auto& trace = run.conn.rounds();
    // The last entry is the handover round, where the secondary stops.
    EXPECT_EQ(trace.back().next_rate2_bps, 0.0);
    for (std::size_t i = 0; i + 1 < trace.size(); ++i)
    {
        const auto& t = trace[i];
        EXPECT_NEAR(t.next_rate2_bps, 2.0 * t.next_rate1_bps, 1e-6 * t.next_rate2_bps);
    }
}
