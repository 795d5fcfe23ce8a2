#pragma once

#include <stdexcept>
#include <string>

namespace tz {

/// A mathematical precondition does not hold for the given input, e.g. an
/// infinite Reidemeister number where a zeta function was requested.
class MathError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An intermediate integer outgrew the configured bit cap.
class BitLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tz
