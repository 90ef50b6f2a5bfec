#pragma once

#include <stdexcept>
#include <string>

namespace blab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad argument or violated precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Quadrature or iteration budget exhausted.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// Floating-point phase error estimate above the allowed budget.
class PrecisionError : public Error {
public:
    PrecisionError(const std::string& what, double magnitude) : Error(what), magnitude_(magnitude) {}
    double magnitude() const { return magnitude_; }

private:
    double magnitude_;
};

}  // namespace blab
