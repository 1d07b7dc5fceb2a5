#pragma once

#include <stdexcept>
#include <string>

namespace landau {

// Base for every error this library throws on contract violations.
struct LandauError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument at an API boundary (out-of-range gamma, size mismatch, ...).
struct InvalidArgument : LandauError {
    using LandauError::LandauError;
};

// Symmetric matrix has an eigenvalue below the admissible clip window.
struct NotPsd : LandauError {
    using LandauError::LandauError;
};

// Input outside the operation's domain (zero vector where a direction is
// needed, non-PD covariance where strict PD is required, zero-energy sample).
struct SingularInput : LandauError {
    using LandauError::LandauError;
};

// pinv_sqrt_apply: right-hand side has mass in the kernel of the left factor.
struct InconsistentRange : LandauError {
    using LandauError::LandauError;
};

// project_conservation cannot rescale (all particles at the mean).
struct DegenerateProjection : LandauError {
    using LandauError::LandauError;
};

// A particle velocity left the sanity envelope during time stepping.
struct BlowUp : LandauError {
    std::size_t step;
    explicit BlowUp(std::size_t step_, const std::string& what_)
        : LandauError(what_), step(step_) {}
};

} // namespace landau
