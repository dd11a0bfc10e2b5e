#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coefficients.hpp"

namespace slowsde {

// One checked inequality: `measured` against `bound`, with the direction
// baked into `pass` at check time. Reports carry both numbers so margins
// stay visible.
struct Assertion {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct SuiteResult {
    std::string tag;
    bool pass = true;
    std::vector<Assertion> assertions;
};

struct VerifyCfg {
    std::uint64_t seed = 815;
    int threads = 1;
};

const std::vector<std::string>& verify_suite_tags();

SuiteResult run_suite(const Params& p, const std::string& tag, const VerifyCfg& cfg);

}  // namespace slowsde
