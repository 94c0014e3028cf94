#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace radeuler {

/// Argument outside the mathematical domain of an operation (P <= 0, x outside [0, M], ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed input: wrong lengths, too few samples, unreadable files.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure broke down (singular pivot, non-SPD assembly).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a simulation state loses positivity or the mesh tangles.
/// Carries enough context to report where and when the run failed.
class StateInvalidError : public std::runtime_error {
public:
    StateInvalidError(std::string field, std::size_t node, double time, double value);

    const std::string& field() const noexcept { return field_; }
    std::size_t node() const noexcept { return node_; }
    double time() const noexcept { return time_; }
    double value() const noexcept { return value_; }

private:
    std::string field_;
    std::size_t node_;
    double time_;
    double value_;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnsupportedOrderError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// File-system failures, with the offending path in the message.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace radeuler
