#pragma once

// Dense complex kernels shared by the rest of the library.
//
// Index convention (used everywhere): a two-factor index is mu = i + d1 * j, so the
// FIRST tensor factor varies fastest. For n factors with dims (d_0, ..., d_{n-1}) the
// flat index is i_0 + d_0 * (i_1 + d_1 * (i_2 + ...)). Note kron(a, b) here equals
// the textbook (first-factor-slowest) kron(b, a).

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "locc/config.hpp"

namespace locc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline bool all_finite(const ComplexMatrix& m) {
    return m.allFinite();
}

inline double frobenius(const ComplexMatrix& m) {
    return m.norm();
}

/// ||U^dag U - I||_F.
inline double unitarity_defect(const ComplexMatrix& u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

/// Tensor product with the first factor varying fastest.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                          const NumericConfig& config = default_config()) {
    const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
    const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
    if (rows > config.max_dimension || cols > config.max_dimension) {
        throw SizingError("kron: result " + std::to_string(rows) + "x" + std::to_string(cols) +
                          " exceeds max dimension " + std::to_string(config.max_dimension));
    }
    ComplexMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    const auto p = a.rows();
    const auto q = a.cols();
    for (Eigen::Index l = 0; l < b.cols(); ++l) {
        for (Eigen::Index k = 0; k < b.rows(); ++k) {
            out.block(k * p, l * q, p, q) = b(k, l) * a;
        }
    }
    return out;
}

/// Tensor product of vectors, first factor fastest.
inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b,
                          const NumericConfig& config = default_config()) {
    const auto n = static_cast<std::size_t>(a.size()) * static_cast<std::size_t>(b.size());
    if (n > config.max_dimension) {
        throw SizingError("kron: vector length " + std::to_string(n) + " exceeds max dimension " +
                          std::to_string(config.max_dimension));
    }
    ComplexVector out(static_cast<Eigen::Index>(n));
    for (Eigen::Index k = 0; k < b.size(); ++k) {
        out.segment(k * a.size(), a.size()) = b(k) * a;
    }
    return out;
}

/// Traces out the second factor of a (d1*d2)x(d1*d2) operator.
inline ComplexMatrix partial_trace_second(const ComplexMatrix& m, std::size_t d1, std::size_t d2) {
    const auto n = static_cast<Eigen::Index>(d1 * d2);
    if (m.rows() != n || m.cols() != n) {
        throw ShapeError("partial_trace_second: expected " + std::to_string(n) + "x" +
                         std::to_string(n) + " operator, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
    }
    const auto a = static_cast<Eigen::Index>(d1);
    ComplexMatrix out = ComplexMatrix::Zero(a, a);
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(d2); ++k) {
        out += m.block(k * a, k * a, a, a);
    }
    return out;
}

/// Reorders tensor factors. Output factor k is input factor perm[k] (0-based), i.e. the
/// amplitude at output multi-index (i_{perm[0]}, i_{perm[1]}, ...) equals the input amplitude
/// at (i_0, i_1, ...).
inline ComplexVector permute_factors(const ComplexVector& v, std::span<const std::size_t> dims,
                                     std::span<const std::size_t> perm) {
    const std::size_t n = dims.size();
    if (perm.size() != n) {
        throw ShapeError("permute_factors: permutation has " + std::to_string(perm.size()) +
                         " entries for " + std::to_string(n) + " factors");
    }
    std::vector<bool> seen(n, false);
    for (const auto p : perm) {
        if (p >= n || seen[p]) {
            throw DomainError("permute_factors: not a bijection on factor indices");
        }
        seen[p] = true;
    }
    const auto total = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    if (static_cast<std::size_t>(v.size()) != total) {
        throw ShapeError("permute_factors: vector length " + std::to_string(v.size()) +
                         " does not match product of dims " + std::to_string(total));
    }

    // Output stride of each INPUT factor.
    std::vector<std::size_t> out_stride_of_input(n);
    std::size_t stride = 1;
    for (std::size_t k = 0; k < n; ++k) {
        out_stride_of_input[perm[k]] = stride;
        stride *= dims[perm[k]];
    }

    ComplexVector out(v.size());
    std::vector<std::size_t> index(n, 0);
    std::size_t target = 0;
    for (std::size_t flat = 0; flat < total; ++flat) {
        out(static_cast<Eigen::Index>(target)) = v(static_cast<Eigen::Index>(flat));
        for (std::size_t k = 0; k < n; ++k) {
            ++index[k];
            target += out_stride_of_input[k];
            if (index[k] < dims[k]) {
                break;
            }
            target -= index[k] * out_stride_of_input[k];
            index[k] = 0;
        }
    }
    return out;
}

inline ComplexVector permute_factors(const ComplexVector& v, std::initializer_list<std::size_t> dims,
                                     std::initializer_list<std::size_t> perm) {
    return permute_factors(v, std::span<const std::size_t>(dims.begin(), dims.size()),
                           std::span<const std::size_t>(perm.begin(), perm.size()));
}

inline std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm) {
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) {
        inv.at(perm[k]) = k;
    }
    return inv;
}

struct EigenSystem {
    std::vector<Complex> eigenvalues;  ///< unsorted; column k of eigenvectors pairs with entry k
    ComplexMatrix eigenvectors;        ///< unitary
};

/// Eigendecomposition of a normal matrix via its complex Schur form, which is diagonal for
/// normal input; the Schur vectors are then an orthonormal eigenbasis.
inline EigenSystem eig_normal(const ComplexMatrix& m, const NumericConfig& config = default_config()) {
    if (m.rows() != m.cols()) {
        throw ShapeError("eig_normal: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
    }
    const double scale = std::max(1.0, m.norm());
    const double commutator = (m * m.adjoint() - m.adjoint() * m).norm();
    if (commutator > config.normality_tol * scale * scale) {
        throw PreconditionError("eig_normal: matrix is not normal, ||MM^dag - M^dag M||_F = " +
                                std::to_string(commutator));
    }
    Eigen::ComplexSchur<ComplexMatrix> schur(m, true);
    if (schur.info() != Eigen::Success) {
        throw InternalError("eig_normal: Schur iteration did not converge");
    }
    EigenSystem out;
    const auto& t = schur.matrixT();
    out.eigenvalues.resize(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
        out.eigenvalues[static_cast<std::size_t>(k)] = t(k, k);
    }
    out.eigenvectors = schur.matrixU();

    const ComplexMatrix rebuilt =
        out.eigenvectors * t.diagonal().asDiagonal() * out.eigenvectors.adjoint();
    const double error = (rebuilt - m).norm();
    if (error > config.eig_reconstruction_tol * scale) {
        throw InternalError("eig_normal: reconstruction error " + std::to_string(error) +
                            " exceeds tolerance");
    }
    return out;
}

/// Principal argument mapped into [0, 2pi).
inline double phase_0_2pi(Complex z) {
    double a = std::arg(z);
    if (a < 0.0) {
        a += kTwoPi;
    }
    if (a >= kTwoPi) {
        a -= kTwoPi;
    }
    return a;
}

/// Distance between two angles on the circle, in [0, pi].
inline double circular_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), kTwoPi);
    return d > kPi ? kTwoPi - d : d;
}

}  // namespace locc
