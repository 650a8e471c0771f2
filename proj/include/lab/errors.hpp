#pragma once

#include <stdexcept>
#include <string>

namespace lab {

// Every numerical failure carries the name of the operation that raised it,
// so CLI summaries and logs can point at the offender.
class Error : public std::runtime_error {
public:
    Error(std::string op, const std::string& what)
        : std::runtime_error(op + ": " + what), op_(std::move(op)) {}
    const std::string& op() const noexcept { return op_; }

private:
    std::string op_;
};

struct NonConvergence : Error {
    using Error::Error;
};
struct NotHermitian : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct NotIntegrable : Error {
    using Error::Error;
};
struct SlowConvergence : Error {
    using Error::Error;
};
struct BoundaryRoot : Error {
    using Error::Error;
};
struct WindingAmbiguous : Error {
    using Error::Error;
};
struct UnsupportedForm : Error {
    using Error::Error;
};
struct HypothesisFailed : Error {
    using Error::Error;
};
struct ConstructionFailed : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace lab
