#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tforge {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldMismatch : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    using Error::Error;
};

// Modular inverse failed; carries the offending gcd in printable form.
struct NotInvertible : Error {
    std::string gcd_text;
    NotInvertible(const std::string& msg, std::string gcd)
        : Error(msg + " (gcd = " + gcd + ")"), gcd_text(std::move(gcd)) {}
};

struct InexactDivision : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

// A stated hypothesis of an algorithm does not hold; the message names it.
struct PreconditionError : Error {
    using Error::Error;
};

struct UnsupportedConfiguration : Error {
    using Error::Error;
};

struct BadSpecialization : Error {
    using Error::Error;
};

struct BadReduction : Error {
    using Error::Error;
};

struct InconsistentCounts : Error {
    using Error::Error;
};

struct EnumerationLimit : Error {
    using Error::Error;
};

struct NoUsablePrimes : Error {
    using Error::Error;
};

} // namespace tforge
