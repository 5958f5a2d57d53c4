#pragma once

#include <stdexcept>
#include <string>

namespace momentlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the arguments of an operation was violated.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A connection (or 2-form) failed the symplectic-curvature test.
class NotSymplecticError : public Error {
public:
    NotSymplecticError(const std::string& what, double margin)
        : Error(what + " (margin " + std::to_string(margin) + ")"), margin_(margin)
    {}
    double margin() const noexcept { return margin_; }

private:
    double margin_;
};

/// A Kähler potential left the positive cone.
class KahlerConeError : public Error {
public:
    KahlerConeError(const std::string& what, double margin)
        : Error(what + " (margin " + std::to_string(margin) + ")"), margin_(margin)
    {}
    double margin() const noexcept { return margin_; }

private:
    double margin_;
};

/// An iterative computation failed to reach its accuracy target.
class NumericalError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace momentlab
