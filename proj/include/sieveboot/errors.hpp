#pragma once

#include <stdexcept>
#include <string>

namespace sieveboot {

/// Precondition on sizes, lags or parameters violated.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Series with zero sample variance where a positive one is required.
class DegenerateSeriesError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Toeplitz system too close to singular for Levinson-Durbin.
class ConditioningError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// AR polynomial with a root in the closed unit disk.
class StabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InversionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid experiment configuration. what() carries the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(field) {}

    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace sieveboot
