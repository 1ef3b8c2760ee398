#pragma once

#include <stdexcept>
#include <string>

namespace bagchain {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two objects live over incompatible variable spaces.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A jet does not carry enough derivative orders for the request.
class InsufficientOrder : public Error {
public:
    using Error::Error;
};

/// An argument violates a precondition (out-of-range label, bad partition, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed textual input (expressions, JSON documents).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace bagchain
