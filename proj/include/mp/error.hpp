#pragma once

#include <stdexcept>
#include <string>

namespace mp {

// Base class for all errors raised by the library. Nothing here terminates
// the process; every condition is recoverable by the caller.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class PoleError : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

class ZeroDenominator : public Error {
public:
    using Error::Error;
};

// Raised once the configured underflow budget (max_underflows) is exhausted.
class UnderflowLimit : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

class WidthError : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class NotAnInteger : public Error {
public:
    using Error::Error;
};

class LossOfPrecision : public Error {
public:
    using Error::Error;
};

} // namespace mp
