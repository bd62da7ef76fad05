#pragma once

#include <stdexcept>

namespace rectbal {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A digit string violates the constraints of its numeration system.
class InvalidRepresentation : public Error {
public:
    using Error::Error;
};

// Zero has no Fibonacci summands.
class EmptyExpansion : public Error {
public:
    using Error::Error;
};

// A word or table larger than the configured generation cap was requested.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class ParityViolation : public Error {
public:
    using Error::Error;
};

// A bounded search ran out of room. Says nothing about existence.
class NotFoundWithinLimit : public Error {
public:
    using Error::Error;
};

class InconsistentSample : public Error {
public:
    using Error::Error;
};

class UndefinedTransition : public Error {
public:
    using Error::Error;
};

} // namespace rectbal
