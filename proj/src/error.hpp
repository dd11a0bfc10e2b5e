#pragma once

#include <stdexcept>
#include <string>

namespace slowsde {

// Error categories mirrored one-to-one by the C API status codes.
enum class Errc {
    ok = 0,
    invalid_argument = 1,  // malformed input (bad sizes, unparseable config)
    constraint = 2,        // a named model constraint is violated
    quadrature = 3,        // integration failed to converge
    horizon = 4,           // sequence exhausted before the search finished
    not_found = 5,         // unknown name (suite tag, config key)
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

// Constraint failures carry the violated condition verbatim, e.g. "tau < T violated".
[[noreturn]] inline void fail_constraint(const std::string& condition) {
    throw Error(Errc::constraint, condition + " violated");
}

inline void require(bool ok, const std::string& condition) {
    if (!ok) fail_constraint(condition);
}

}  // namespace slowsde
