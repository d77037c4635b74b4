#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace locc {

/// Numerical tolerances shared by every module. The CLI exposes each field as a flag.
struct NumericConfig {
    double unitarity_tol = 1e-9;           ///< ||U^dag U - I||_F bound for UnitaryMatrix
    double eig_reconstruction_tol = 1e-10; ///< ||V diag(l) V^dag - M||_F bound for eig_normal
    double normality_tol = 1e-9;           ///< ||M M^dag - M^dag M||_F bound accepted by eig_normal
    double norm_tol = 1e-10;               ///< state normalisation
    double max_entangled_tol = 1e-8;       ///< max |p_i - 1/d| for "maximally entangled"
    double sum_tol = 1e-10;                ///< one-sided slack on majorization partial sums
    double phase_tol = 1e-7;               ///< eigenphase clustering gap, radians
    double ortho_tol = 1e-9;               ///< |Tr T| < D * ortho_tol means orthogonal
    double fidelity_tol = 1e-9;            ///< protocol accepted when fidelity >= 1 - fidelity_tol
    std::size_t max_dimension = 20736;     ///< largest dense dimension any kernel will build (12^4)
};

inline const NumericConfig& default_config() {
    static const NumericConfig config{};
    return config;
}

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested result exceeds NumericConfig::max_dimension.
class SizingError : public Error {
public:
    using Error::Error;
};

/// Operand shapes do not fit together.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Argument outside the operation's domain (d < 2, m not dividing d, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input violates a documented precondition (not unitary, not maximally entangled, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Eigenphase clustering cannot be decided at the configured phase tolerance.
class AmbiguityError : public Error {
public:
    using Error::Error;
};

/// A post-condition the library guarantees did not hold. Signals a tolerance bug.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace locc
