#pragma once

#include <stdexcept>
#include <string>

namespace biot3f {

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Raised by the sparse factorization when a pivot vanishes.
class SingularMatrix : public Error {
public:
    using Error::Error;
};

#define BIOT3F_THROW_IF(cond, ExType, msg)  \
    do {                                    \
        if (cond) throw ExType(msg);        \
    } while (false)

} // namespace biot3f
