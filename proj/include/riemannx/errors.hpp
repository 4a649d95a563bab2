#pragma once

#include <stdexcept>
#include <string>

namespace riemannx {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed argument: non-finite scalar, unsorted breakpoints, bad exponent, ...
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Binary operation applied to vectors living in different spaces.
class SpaceMismatch : public Error {
public:
    using Error::Error;
};

/// A gauge evaluated to a non-positive (or non-finite) width at a point in use.
class InvalidGauge : public Error {
public:
    using Error::Error;
};

/// Bisection could not find a gauge-fine tag before the depth cap. `where()`
/// names the offending subinterval.
class NoFinePartition : public Error {
public:
    NoFinePartition(std::string where, std::string msg)
        : Error(std::move(msg)), where_(std::move(where)) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// An iterative scheme ran out of schedule before meeting its tolerance.
class NoConvergence : public Error {
public:
    using Error::Error;
};

/// A routine that needs an integrable input was handed one carrying a
/// verified divergence certificate.
class DivergentIntegrand : public Error {
public:
    using Error::Error;
};

} // namespace riemannx
