#pragma once

#include <stdexcept>
#include <string>

namespace combmod {

// Error classes map one-to-one onto CLI exit codes (see tools/cli.cpp).

/// Malformed or out-of-contract input.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A rotation system that does not describe a planar embedding.
class EmbeddingError : public InputError {
public:
    using InputError::InputError;
};

/// A construction or verification step found a broken invariant.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iteration or size cap reached before a certified answer was available.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, double lower = 0.0, double upper = 0.0)
        : std::runtime_error(what), lower_(lower), upper_(upper) {}
    double lower() const { return lower_; }
    double upper() const { return upper_; }

private:
    double lower_;
    double upper_;
};

}  // namespace combmod
