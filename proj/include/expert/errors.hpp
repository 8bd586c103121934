#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace expert {

// Base for every error raised by the library. Callers that only care about
// "something was wrong with the request" can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Out-of-domain numeric parameter (q outside [0,1], t_max < 1, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Period index outside the horizon of a path.
class IndexError : public Error {
public:
    using Error::Error;
};

// A belief with zero variance was requested or consumed (q = 1, t = 0).
class DegenerateBeliefError : public Error {
public:
    using Error::Error;
};

// Belief state inconsistent with the current period.
class StateError : public Error {
public:
    using Error::Error;
};

// Strategy or experiment configuration that cannot be honored.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A strategy emitted an action the protocol forbids.
class ProtocolError : public Error {
public:
    using Error::Error;
};

// Argument outside a function's mathematical domain (log_gamma(x <= 0), ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Monte Carlo run aborted because of memory exhaustion.
class ResourceError : public Error {
public:
    ResourceError(const std::string& what, std::uint64_t completed)
        : Error(what), completed_(completed) {}

    std::uint64_t completed_episodes() const noexcept { return completed_; }

private:
    std::uint64_t completed_;
};

}  // namespace expert
