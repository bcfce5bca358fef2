#pragma once

#include <stdexcept>
#include <string>

namespace ptlab {

// A request is outside what this implementation can compute at desk scale
// (e.g. brute-force enumeration past its cap, seed spaces too large to
// enumerate). Distinct from invalid_argument: the request is legal, we just
// refuse to pretend we can serve it.
struct capability_error : std::runtime_error {
    explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

// An instance generator could not certify its output. Never downgraded to a
// warning: experiments must not run on uncertified instances.
struct generation_error : std::runtime_error {
    explicit generation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ptlab
