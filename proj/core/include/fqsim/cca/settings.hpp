#pragma once

#include "fqsim/cca/controller.hpp"
#include "fqsim/cca/cubic.hpp"
#include "fqsim/cca/delay_based.hpp"
#include "fqsim/cca/pcc_like.hpp"

namespace fqsim {

struct ControllerSettings
{
    RateLimits limits{};
    DelayBasedConfig delay{};
    CubicConfig cubic{};
    PccConfig pcc{};
};

} // namespace fqsim
