#pragma once

#include <stdexcept>
#include <string>

namespace slices {

// Exact arithmetic ran out of representable range (word length / exponent caps).
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// An intersection query exhausted its depth budget without a certificate.
struct UndecidedError : std::runtime_error {
    explicit UndecidedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace slices
