// selftest.hpp: fast invariant suite behind `spinbath selftest`

#pragma once

#include <string>
#include <vector>

namespace spinbath {

struct CheckResult {
    std::string name;
    bool passed{false};
    std::string detail;  // measured value vs tolerance
};

std::vector<CheckResult> run_selftest();

}  // namespace spinbath
