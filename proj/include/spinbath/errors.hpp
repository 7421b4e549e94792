// errors.hpp: exception hierarchy shared by all spinbath modules

#pragma once

#include <stdexcept>
#include <string>

namespace spinbath {

// Base for everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad physical input: T <= 0, K <= 0, omega == 0, ...
class DomainError : public Error {
public:
    using Error::Error;
};

// omega_1 = lambda_2 - lambda_3 <= 0: the bath occupations would be evaluated
// at negative frequency.
class NonPositiveTransitionFrequency : public DomainError {
public:
    using DomainError::DomainError;
};

class InvalidState : public Error {
public:
    using Error::Error;
};

class BasisMismatch : public Error {
public:
    using Error::Error;
};

// Initial state carries coherences the closed-form propagators do not cover.
class UnsupportedCoherence : public Error {
public:
    using Error::Error;
};

class SingularS : public Error {
public:
    using Error::Error;
};

class NumericalFailure : public Error {
public:
    using Error::Error;
};

class StepTooLarge : public Error {
public:
    using Error::Error;
};

// Malformed or incomplete experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace spinbath
