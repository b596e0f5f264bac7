#pragma once

#include <stdexcept>
#include <string>

namespace spherepack {

// Input outside the documented domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An iterative method did not converge. Carries the last bracket.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double lower, double upper)
        : std::runtime_error(what), lower_(lower), upper_(upper) {}

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }

private:
    double lower_;
    double upper_;
};

// A computed optimum failed its a-posteriori check.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// No admissible configuration improves on the baseline.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace spherepack
