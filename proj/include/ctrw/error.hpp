#pragma once

#include <stdexcept>
#include <string>

namespace ctrw {

/// Invalid model or sampler parameter (out of range index, bad weights, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A path or grid does not cover the requested horizon.
class CoverageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The model is not covered by any implemented dimension formula or simulator.
class UnsupportedModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Not enough resolved scales to fit a box-counting slope.
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical integration or index search failed.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed experiment or model configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A run exceeded its wall-time budget.
class TimeoutError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ctrw
