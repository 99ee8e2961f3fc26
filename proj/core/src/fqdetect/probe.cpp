#include "fqsim/fqdetect/probe.hpp"

#include "fqsim/fqdetect/loss_ratio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fqsim {

void
validate(const ProbeConfig& config)
{
    if (!(config.initial_pkts_per_rtt > 0.0) || !std::isfinite(config.initial_pkts_per_rtt))
    {
        throw std::invalid_argument{"probe initial_pkts_per_rtt must be > 0"};
    }
    if (!(config.rate_ratio > 1.0) || !std::isfinite(config.rate_ratio))
    {
        throw std::invalid_argument{"probe rate_ratio must be > 1"};
    }
    if (!(config.cutoff > 0.0) || !std::isfinite(config.cutoff))
    {
        throw std::invalid_argument{"probe cutoff must be > 0"};
    }
    if (config.max_rounds == 0)
    {
        throw std::invalid_argument{"probe max_rounds must be >= 1"};
    }
}

FqProbe::FqProbe(ProbeConfig config, double initial_rate_bps, double max_rate_bps)
    : config_{config},
      max_rate1_{max_rate_bps / config.rate_ratio},
      rate1_{std::min(initial_rate_bps, max_rate_bps / config.rate_ratio)}
{
    validate(config_);
    if (!(initial_rate_bps > 0.0))
    {
        throw std::invalid_argument{"FqProbe: initial rate must be > 0"};
    }
}

DetectionResult
FqProbe::decide(std::optional<double> ratio, const RoundReport& f1, const RoundReport& f2, bool timed_out,
                SimTime at)
{
    DetectionResult r;
    r.loss_ratio = ratio;
    r.fq_detected = ratio.has_value() && *ratio >= config_.cutoff;
    r.rounds_used = rounds_;
    r.combined_handover_rate_bps = f1.receiving_rate_bps + f2.receiving_rate_bps;
    r.timed_out = timed_out;
    r.decided_at = at;
    result_ = r;
    return r;
}

ProbeStep
FqProbe::on_round(const RoundReport& flow1, const RoundReport& flow2, std::optional<SimTime> now)
{
    if (result_)
    {
        return *result_;
    }
    const SimTime at = now.value_or(flow1.end());
    ++rounds_;
    bool hold = false;
    bool degenerate = false;
    if (flow1.lost() && flow2.lost())
    {
        if (joint_streak_ < config_.confirm_rounds)
        {
            ++joint_streak_;
            hold = true;
        }
        else
        {
            try
            {
                return decide(compute_loss_ratio(flow1, flow2), flow1, flow2, false, at);
            }
            catch (const DegenerateRoundError&)
            {
                degenerate = true;
                hold = true;
            }
        }
    }
    else
    {
        joint_streak_ = 0;
    }
    if (rounds_ >= config_.max_rounds)
    {
        return decide(std::nullopt, flow1, flow2, true, at);
    }
    if (!hold)
    {
        rate1_ = std::min(rate1_ * 2.0, max_rate1_);
    }
    return ProbeContinue{rate1(), rate2(), degenerate, hold && !degenerate};
}

} // namespace fqsim
