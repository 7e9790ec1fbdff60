#pragma once

#include <stdexcept>
#include <string>

namespace phx {

// Bad input or configuration (unknown key, malformed file, missing field).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The mathematics refuses the input: non-integer roots, bare log terms,
// non-integrable monomials, divergent substitution.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numerical or structural check came out outside tolerance.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace phx
