#pragma once

#include <stdexcept>
#include <string>

namespace irsim {

// Malformed or inconsistent configuration input.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical routine failed to reach its requested accuracy. Never
// returned as a silently wrong value.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// A parameter combination makes the transmission prelog nonpositive
// (all frame time would be spent on training).
class InfeasiblePrelogError : public std::domain_error {
public:
    explicit InfeasiblePrelogError(const std::string& what) : std::domain_error(what) {}
};

} // namespace irsim
