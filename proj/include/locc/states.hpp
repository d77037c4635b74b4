#pragma once

// Bipartite pure states, Schmidt vectors and the unitary parameterisation of maximally
// entangled states: |psi_U> = (U (x) 1)|psi_max>, |psi_max> = sum_i |i>|i> / sqrt(d).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SVD>

#include "locc/config.hpp"
#include "locc/tensor.hpp"

namespace locc {

/// A square complex matrix that is unitary within NumericConfig::unitarity_tol.
class UnitaryMatrix {
public:
    explicit UnitaryMatrix(ComplexMatrix m, const NumericConfig& config = default_config())
        : matrix_(std::move(m)) {
        if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
            throw ShapeError("UnitaryMatrix: expected a non-empty square matrix, got " +
                             std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()));
        }
        if (!all_finite(matrix_)) {
            throw PreconditionError("UnitaryMatrix: non-finite entry");
        }
        const double defect = unitarity_defect(matrix_);
        if (!(defect < config.unitarity_tol)) {
            throw PreconditionError("UnitaryMatrix: ||U^dag U - I||_F = " + std::to_string(defect) +
                                    " exceeds unitarity tolerance");
        }
    }

    static UnitaryMatrix identity(std::size_t d) {
        return UnitaryMatrix(ComplexMatrix::Identity(static_cast<Eigen::Index>(d),
                                                     static_cast<Eigen::Index>(d)));
    }

    [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    [[nodiscard]] UnitaryMatrix adjoint() const { return UnitaryMatrix(matrix_.adjoint()); }

private:
    ComplexMatrix matrix_;
};

/// Sorted (non-increasing) squared Schmidt coefficients.
class SchmidtVector {
public:
    explicit SchmidtVector(std::vector<double> probs, const NumericConfig& config = default_config())
        : probs_(std::move(probs)) {
        if (probs_.empty()) {
            throw DomainError("SchmidtVector: empty");
        }
        double sum = 0.0;
        for (auto& p : probs_) {
            if (!std::isfinite(p) || p < -config.sum_tol) {
                throw DomainError("SchmidtVector: component " + std::to_string(p) +
                                  " is not a probability");
            }
            p = std::max(p, 0.0);
            sum += p;
        }
        if (std::abs(sum - 1.0) > config.norm_tol) {
            throw DomainError("SchmidtVector: components sum to " + std::to_string(sum) +
                              ", expected 1");
        }
        std::sort(probs_.begin(), probs_.end(), std::greater<>());
    }

    /// Builds from Schmidt coefficients (square roots of the probabilities).
    static SchmidtVector from_coeffs(const std::vector<double>& coeffs,
                                     const NumericConfig& config = default_config()) {
        std::vector<double> probs;
        probs.reserve(coeffs.size());
        for (const double c : coeffs) {
            probs.push_back(c * c);
        }
        return SchmidtVector(std::move(probs), config);
    }

    [[nodiscard]] const std::vector<double>& probs() const noexcept { return probs_; }
    [[nodiscard]] std::size_t size() const noexcept { return probs_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return probs_[i]; }

    /// Largest |p_i - 1/n| over the components.
    [[nodiscard]] double spread_from_uniform() const {
        const double u = 1.0 / static_cast<double>(probs_.size());
        double worst = 0.0;
        for (const double p : probs_) {
            worst = std::max(worst, std::abs(p - u));
        }
        return worst;
    }

private:
    std::vector<double> probs_;
};

/// Pure state of two d-level systems, |psi> = sum_ij c(i, j) |i> (x) |j>.
class BipartiteState {
public:
    explicit BipartiteState(ComplexMatrix amplitudes, const NumericConfig& config = default_config())
        : amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.rows() != amplitudes_.cols() || amplitudes_.rows() < 1) {
            throw ShapeError("BipartiteState: amplitude grid must be d x d, got " +
                             std::to_string(amplitudes_.rows()) + "x" +
                             std::to_string(amplitudes_.cols()));
        }
        if (!all_finite(amplitudes_)) {
            throw DomainError("BipartiteState: non-finite amplitude");
        }
        const double norm2 = amplitudes_.squaredNorm();
        if (std::abs(norm2 - 1.0) > config.norm_tol) {
            throw DomainError("BipartiteState: squared norm " + std::to_string(norm2) +
                              " differs from 1");
        }
    }

    /// Builds from a flat vector in the mu = i + d*j order.
    static BipartiteState from_flat(const ComplexVector& v, const NumericConfig& config = default_config()) {
        const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
        if (d * d != v.size()) {
            throw ShapeError("BipartiteState: flat length " + std::to_string(v.size()) +
                             " is not a perfect square");
        }
        return BipartiteState(Eigen::Map<const ComplexMatrix>(v.data(), d, d), config);
    }

    [[nodiscard]] std::size_t d() const noexcept { return static_cast<std::size_t>(amplitudes_.rows()); }
    [[nodiscard]] const ComplexMatrix& amplitudes() const noexcept { return amplitudes_; }

    /// Flat amplitude vector; column-major storage of the grid is exactly the mu order.
    [[nodiscard]] ComplexVector flat() const {
        return Eigen::Map<const ComplexVector>(amplitudes_.data(), amplitudes_.size());
    }

private:
    ComplexMatrix amplitudes_;
};

struct SchmidtDecomposition {
    SchmidtVector probs;
    ComplexMatrix left;   ///< column k: k-th Schmidt vector of the first system
    ComplexMatrix right;  ///< column k: k-th Schmidt vector of the second system
};

inline BipartiteState max_entangled(std::size_t d) {
    if (d < 2) {
        throw DomainError("max_entangled: d must be >= 2, got " + std::to_string(d));
    }
    const auto n = static_cast<Eigen::Index>(d);
    return BipartiteState(ComplexMatrix::Identity(n, n) / std::sqrt(static_cast<double>(d)));
}

/// (U (x) 1)|psi_max>: amplitudes c(i, j) = U(i, j) / sqrt(d).
inline BipartiteState from_unitary(const UnitaryMatrix& u) {
    return BipartiteState(u.matrix() / std::sqrt(static_cast<double>(u.dim())));
}

inline SchmidtDecomposition schmidt(const BipartiteState& s) {
    Eigen::JacobiSVD<ComplexMatrix> svd(s.amplitudes(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    std::vector<double> probs(static_cast<std::size_t>(sv.size()));
    double total = 0.0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        probs[static_cast<std::size_t>(k)] = sv(k) * sv(k);
        total += probs[static_cast<std::size_t>(k)];
    }
    for (auto& p : probs) {
        p /= total;
    }
    // c = U S V^dag, so |psi> = sum_k s_k |u_k> (x) |conj(v_k)>.
    return {SchmidtVector(std::move(probs)), svd.matrixU(), svd.matrixV().conjugate()};
}

inline bool is_maximally_entangled(const BipartiteState& s, const NumericConfig& config = default_config()) {
    return schmidt(s).probs.spread_from_uniform() <= config.max_entangled_tol;
}

/// Throws PreconditionError naming the Schmidt spread unless s is maximally entangled.
inline void require_maximally_entangled(const BipartiteState& s, const std::string& who,
                                        const NumericConfig& config = default_config()) {
    const double spread = schmidt(s).probs.spread_from_uniform();
    if (spread > config.max_entangled_tol) {
        throw PreconditionError(who + ": state is not maximally entangled (max |p_i - 1/d| = " +
                                std::to_string(spread) + ")");
    }
}

/// Recovers U with (U (x) 1)|psi_max> = s, as U = d * PT(|s><psi_max|).
inline UnitaryMatrix unitary_of_state(const BipartiteState& s, const NumericConfig& config = default_config()) {
    require_maximally_entangled(s, "unitary_of_state", config);
    const auto d = s.d();
    const ComplexMatrix outer = s.flat() * max_entangled(d).flat().adjoint();
    return UnitaryMatrix(static_cast<double>(d) * partial_trace_second(outer, d, d), config);
}

/// <b|a> = sum conj(b(i, j)) a(i, j).
inline Complex overlap(const BipartiteState& a, const BipartiteState& b) {
    if (a.d() != b.d()) {
        throw ShapeError("overlap: dimension mismatch " + std::to_string(a.d()) + " vs " +
                         std::to_string(b.d()));
    }
    return (b.amplitudes().conjugate().cwiseProduct(a.amplitudes())).sum();
}

}  // namespace locc
