#pragma once

// Private helpers shared by the harness translation units.

#include "fqsim/harness/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace fqsim::detail {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Rounds to 6 significant digits so dumped documents are stable.
inline double
sig6(double v)
{
    if (!std::isfinite(v))
    {
        return v;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::strtod(buf, nullptr);
}

inline ordered_json
number(double v)
{
    if (!std::isfinite(v))
    {
        return nullptr;
    }
    return sig6(v);
}

ordered_json scenario_json(const Scenario& scenario);

} // namespace fqsim::detail
