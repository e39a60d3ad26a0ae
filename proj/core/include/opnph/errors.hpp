#pragma once

#include <stdexcept>
#include <string>

namespace opnph {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical integration left the finite range.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, double time_s)
        : Error(what), time_s(time_s) {}
    double time_s;
};

// A signal or sequence is too short for the requested operation.
class LengthError : public Error {
public:
    using Error::Error;
};

// Input is structurally valid but carries no usable information
// (constant signal, all-zero matrix, zero total persistence, ...).
class DegenerateError : public Error {
public:
    using Error::Error;
};

class InvalidInputError : public Error {
public:
    using Error::Error;
};

// Graph operation requires a connected network.
class ConnectivityError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

// Input exceeds a configured size cap.
class SizeError : public Error {
public:
    using Error::Error;
};

// Class labels unusable (single class, mismatched counts, ...).
class LabelError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace opnph
