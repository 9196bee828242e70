#ifndef AVEBOUNDS_ERRORS_HPP
#define AVEBOUNDS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace avb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatch, unsupported norm, non-finite entries.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A matrix that must be inverted is numerically singular.
class SingularMatrix : public Error {
public:
    using Error::Error;
};

/// The hypothesis of a bound does not hold. `condition()` names the failed test.
class Inapplicable : public Error {
public:
    explicit Inapplicable(std::string condition)
        : Error("inapplicable: " + condition), condition_(std::move(condition)) {}

    const std::string& condition() const noexcept { return condition_; }

private:
    std::string condition_;
};

/// No estimator could be applied, so no answer can be given.
class Inconclusive : public Error {
public:
    using Error::Error;
};

/// A fixed-point solve hit its iteration cap.
class NonConvergence : public Error {
public:
    using Error::Error;
};

} // namespace avb

#endif // AVEBOUNDS_ERRORS_HPP
