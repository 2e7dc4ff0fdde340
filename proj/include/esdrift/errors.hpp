#pragma once

#include <stdexcept>
#include <string>

namespace esdrift {

/// Argument outside the mathematical domain of an operation (poles, empty
/// inputs, probabilities outside the image of a bijection).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A set of constants violates one of the inequalities the drift analysis
/// relies on. The message names the inequality.
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative numerical method hit its iteration cap. `achieved()` is the
/// error bound (or estimate) reached when it stopped.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

}  // namespace esdrift
