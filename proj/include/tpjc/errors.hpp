#pragma once

#include <stdexcept>
#include <string>

namespace tpjc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid or inconsistent model constants (zero detuning, negative damping, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// The Fock truncation drops more probability than the configured ceiling allows.
class TruncationError : public Error {
public:
    using Error::Error;
};

// A dispersive-limit operation was requested outside the perturbative regime.
class DispersiveError : public Error {
public:
    using Error::Error;
};

// Step-halving changed the integrated state by more than the gate tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace tpjc
