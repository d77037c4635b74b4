#pragma once

// Four-particle ground truth for copying protocols. Particle order in the flat vector is
// (1, 2, 3, 4) with particle 1 fastest.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "locc/config.hpp"
#include "locc/protocol.hpp"
#include "locc/states.hpp"
#include "locc/tensor.hpp"

namespace locc {

class FourPartyState {
public:
    FourPartyState(std::size_t d, ComplexVector vector, const NumericConfig& config = default_config())
        : d_(d), vector_(std::move(vector)) {
        const auto expected = d * d * d * d;
        if (static_cast<std::size_t>(vector_.size()) != expected) {
            throw ShapeError("FourPartyState: expected length " + std::to_string(expected) + ", got " +
                             std::to_string(vector_.size()));
        }
        const double n = vector_.norm();
        if (std::abs(n - 1.0) > config.norm_tol) {
            throw DomainError("FourPartyState: norm " + std::to_string(n) + " differs from 1");
        }
    }

    [[nodiscard]] std::size_t d() const noexcept { return d_; }
    [[nodiscard]] const ComplexVector& vector() const noexcept { return vector_; }

private:
    std::size_t d_;
    ComplexVector vector_;
};

/// |psi>_{12} (x) |blank>_{34}.
inline FourPartyState assemble(const BipartiteState& psi, const BipartiteState& blank,
                               const NumericConfig& config = default_config()) {
    if (psi.d() != blank.d()) {
        throw ShapeError("assemble: dimension mismatch " + std::to_string(psi.d()) + " vs " +
                         std::to_string(blank.d()));
    }
    return FourPartyState(psi.d(), kron(psi.flat(), blank.flat(), config), config);
}

/// (1,2,3,4) <-> (1,3,2,4); self-inverse.
inline constexpr std::array<std::size_t, 4> kAliceBobOrder{0, 2, 1, 3};

/// Applies A on particles (1, 3) and B on (2, 4).
inline FourPartyState apply_local(const FourPartyState& state, const UnitaryMatrix& a_op,
                                  const UnitaryMatrix& b_op, const NumericConfig& config = default_config()) {
    const auto d = state.d();
    const auto dd = static_cast<Eigen::Index>(d * d);
    if (a_op.matrix().rows() != dd || b_op.matrix().rows() != dd) {
        throw ShapeError("apply_local: operators must be " + std::to_string(dd) + "x" + std::to_string(dd));
    }
    const std::array<std::size_t, 4> dims{d, d, d, d};
    const ComplexVector grouped = permute_factors(state.vector(), dims, kAliceBobOrder);
    // grouped[mu13 + D^2 nu24] is the (mu13, nu24) entry of a column-major D^2 x D^2 grid,
    // and (A (x) B) acts on it as A X B^T.
    const Eigen::Map<const ComplexMatrix> grid(grouped.data(), dd, dd);
    const ComplexMatrix moved = a_op.matrix() * grid * b_op.matrix().transpose();
    const ComplexVector flat = Eigen::Map<const ComplexVector>(moved.data(), moved.size());
    const auto inverse = inverse_permutation(kAliceBobOrder);
    return FourPartyState(d, permute_factors(flat, dims, inverse), config);
}

/// <psi (x) psi| (A (x) B) |psi (x) blank>; its argument is the protocol phase theta.
inline Complex copy_overlap(const CopyProtocol& protocol, const BipartiteState& psi,
                            const NumericConfig& config = default_config()) {
    if (psi.d() != protocol.d) {
        throw ShapeError("copy_overlap: state has d=" + std::to_string(psi.d()) + ", protocol d=" +
                         std::to_string(protocol.d));
    }
    const auto output = apply_local(assemble(psi, protocol.blank, config), protocol.a_op, protocol.b_op, config);
    const auto target = assemble(psi, psi, config);
    return target.vector().dot(output.vector());
}

/// Phase-insensitive copy fidelity |<psi psi| A (x) B |psi b>|^2 in [0, 1].
inline double verify_copy(const CopyProtocol& protocol, const BipartiteState& psi,
                          const NumericConfig& config = default_config()) {
    return std::clamp(std::norm(copy_overlap(protocol, psi, config)), 0.0, 1.0);
}

struct LoccTranscript {
    std::size_t outcomes = 1;              ///< K, values of the shared random variable
    std::size_t communication_rounds = 0;
    std::vector<double> outcome_probabilities{1.0};
    std::string wiring;
    std::vector<std::string> steps;

    [[nodiscard]] std::string to_string() const {
        std::ostringstream os;
        os << "LOCC transcript (K=" << outcomes << ", classical rounds=" << communication_rounds << ")\n";
        os << "wiring: " << wiring << '\n';
        for (std::size_t i = 0; i < steps.size(); ++i) {
            os << "  " << (i + 1) << ". " << steps[i] << '\n';
        }
        return os.str();
    }
};

/// Synthesised protocols are a single unitary pair (K = 1, f_1 g_1 = 1), so no shared
/// randomness and no classical message is needed.
inline LoccTranscript emit_locc_transcript(const CopyProtocol& protocol) {
    LoccTranscript t;
    t.wiring = protocol.wiring;
    t.steps = {
        "Alice applies A^13 (unitary on her particles 1 and 3)",
        "Alice sends nothing required",
        "Bob applies B^24 (unitary on his particles 2 and 4)",
    };
    return t;
}

}  // namespace locc
