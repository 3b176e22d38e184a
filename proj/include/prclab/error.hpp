#pragma once

#include <stdexcept>
#include <string>

namespace prclab {

// All library failures carry a stable machine-checkable kind tag
// ("NotPrime", "LengthMismatch", ...) plus a human message.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

}  // namespace prclab
