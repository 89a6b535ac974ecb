#pragma once

#include <stdexcept>
#include <string>

namespace hypin {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument left the domain where a formula is defined (arcsin/arccosh
/// argument, non-hyperbolic triangle, singular derivative, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A bracketing root search found no sign change.
class NoRootError : public Error {
public:
    using Error::Error;
};

/// Group parameter l below 4.
class InvalidL : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class SingularSystemError : public Error {
public:
    using Error::Error;
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

}  // namespace hypin
