#pragma once

#include <stdexcept>
#include <string>

namespace swirl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class NumericalBlowUp : public Error {
public:
    NumericalBlowUp(const std::string& what, double t) : Error(what), time(t) {}
    double time;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// A planar direction field degenerated (|v_h| below threshold) along a curve.
class DegenerateFieldError : public Error {
public:
    using Error::Error;
};

class ChartError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    PreconditionError(const std::string& what, double measured) : Error(what), measured(measured) {}
    double measured;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class RegimeError : public Error {
public:
    using Error::Error;
};

} // namespace swirl
