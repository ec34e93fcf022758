// errors.hpp — exception types for the optomech library

#pragma once

#include <stdexcept>
#include <string>

namespace optomech {

// Invalid input values (non-positive parameters, improper rationals, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A pole or zero sits on (or too close to) the real frequency axis.
struct MarginalPoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Spectrum handed to the factorizer has a real-axis root/pole.
struct MarginalSpectrumError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sampled function is not a valid power spectrum (negative or non-real).
struct NotASpectrumError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integrand does not decay fast enough for a half-line integral.
struct DivergentIntegralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Steady-state quantities requested for unstable dynamics.
struct StationarityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Matrix-equation solver failed to converge or verify.
struct OracleFailureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed loop of the synthesized controller is unstable.
struct ControllerSynthesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Covariance matrix violates physicality beyond tolerance.
struct PhysicalityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad or inconsistent CLI/config input.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal numerical consistency check failed (clustering, reconstruction).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace optomech
