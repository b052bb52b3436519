#pragma once

#include <stdexcept>
#include <string>

namespace coagg {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input data failed a structural or sign constraint.
struct ValidationError : Error {
    using Error::Error;
};

/// Scenario text could not be parsed.
struct ParseError : Error {
    using Error::Error;
};

struct ImproperTransfer : Error {
    using Error::Error;
};

struct ZeroDivisor : Error {
    using Error::Error;
};

struct NotHurwitz : Error {
    using Error::Error;
};

struct UnstableSystem : Error {
    using Error::Error;
};

struct IntegratorPresent : Error {
    using Error::Error;
};

struct PoleOnGrid : Error {
    using Error::Error;
};

struct SingularAtFrequency : Error {
    using Error::Error;
};

struct ComplexPoles : Error {
    using Error::Error;
};

struct RepeatedPoles : Error {
    using Error::Error;
};

struct PositivePole : Error {
    using Error::Error;
};

struct NotStrictlyProper : Error {
    using Error::Error;
};

struct UnstableInput : Error {
    using Error::Error;
};

struct OrderTooHigh : Error {
    using Error::Error;
};

struct WrongOrder : Error {
    using Error::Error;
};

struct DCMismatch : Error {
    using Error::Error;
};

struct GridMismatch : Error {
    using Error::Error;
};

struct NotApplicable : Error {
    using Error::Error;
};

struct NumericalError : Error {
    using Error::Error;
};

}  // namespace coagg
