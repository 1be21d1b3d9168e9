#pragma once

#include <stdexcept>
#include <string>

namespace ym {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite coordinates, malformed atoms, undefined map values.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// Zero or negative total mass where positive mass is required.
class DegenerateMeasureError : public Error {
public:
    using Error::Error;
};

/// Operands live in different ambient dimensions.
class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

/// A battery member violates a declared bound required by the operation.
class InvalidBatteryError : public Error {
public:
    using Error::Error;
};

/// Binary Young-function operations require identical carriers.
class CarrierMismatchError : public Error {
public:
    using Error::Error;
};

/// Input file or JSON document does not match the expected schema.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace ym
