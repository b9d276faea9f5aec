#pragma once

#include <stdexcept>
#include <string>

namespace geodiv {

struct DimensionMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotHermitianError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotPositiveError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct InvalidSubsetError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptyKeepSetError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct OutOfRangeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct StepTooLargeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Adaptive refinement hit the subdivision limit; carries the worst interval.
class QuadratureNotConvergedError : public std::runtime_error {
public:
    QuadratureNotConvergedError(double a, double b, double residual)
        : std::runtime_error("quadrature did not converge on [" + std::to_string(a) + ", " +
                             std::to_string(b) + "], residual " + std::to_string(residual)),
          a_(a), b_(b), residual_(residual) {}

    double interval_begin() const { return a_; }
    double interval_end() const { return b_; }
    double residual() const { return residual_; }

private:
    double a_;
    double b_;
    double residual_;
};

}  // namespace geodiv
