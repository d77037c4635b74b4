#pragma once

// Seeded constructors for test families. Every generator is a pure function of its
// parameters and a 64-bit seed.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/QR>

#include "locc/config.hpp"
#include "locc/states.hpp"
#include "locc/tensor.hpp"

namespace locc {

struct StatePair {
    BipartiteState first;
    BipartiteState second;
    ComplexMatrix planted;  ///< the pair operator U_1 U_2^dag built into the pair
};

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of diag(R)
/// moved into Q.
inline UnitaryMatrix haar_unitary(std::size_t d, std::uint64_t seed) {
    if (d < 1) {
        throw DomainError("haar_unitary: d must be >= 1");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix z(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex rk = r(k, k);
        const double mag = std::abs(rk);
        q.col(k) *= mag > 0.0 ? rk / mag : Complex(1.0, 0.0);
    }
    return UnitaryMatrix(q);
}

namespace detail {

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31U);
}

/// V diag(eigenvalues) V^dag with V Haar.
inline ComplexMatrix conjugate_diagonal(const std::vector<Complex>& eigenvalues, std::uint64_t seed) {
    const auto v = haar_unitary(eigenvalues.size(), seed).matrix();
    const Eigen::Map<const ComplexVector> diag(eigenvalues.data(), static_cast<Eigen::Index>(eigenvalues.size()));
    return v * diag.asDiagonal() * v.adjoint();
}

/// U_1 = T U_2 with U_2 Haar, so pair_operator(psi_1, psi_2) = T.
inline StatePair pair_from_operator(const ComplexMatrix& t, std::uint64_t seed) {
    const auto u2 = haar_unitary(static_cast<std::size_t>(t.rows()), seed);
    UnitaryMatrix u1(t * u2.matrix());
    return {from_unitary(u1), from_unitary(u2), t};
}

/// Unit-modulus values summing to zero. The set is tiled with blocks of size 4, 3 and 2:
/// a 4-block is two free phases a, b closed by the unique unit pair summing to -(a + b);
/// 3-blocks are rotated cube roots of unity and 2-blocks rotated antipodal pairs.
inline std::vector<Complex> traceless_phases(std::size_t d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::vector<std::size_t> blocks;
    std::size_t rest = d;
    while (rest >= 4 && rest != 5) {
        blocks.push_back(4);
        rest -= 4;
    }
    if (rest == 5) {
        blocks.push_back(3);
        rest -= 3;
    }
    if (rest == 3) {
        blocks.push_back(3);
        rest = 0;
    }
    while (rest >= 2) {
        blocks.push_back(2);
        rest -= 2;
    }
    std::vector<Complex> out;
    out.reserve(d);
    for (const auto size : blocks) {
        if (size == 4) {
            const Complex a = std::polar(1.0, angle(rng));
            const Complex b = std::polar(1.0, angle(rng));
            const Complex w = a + b;
            const double half = std::abs(w) / 2.0;
            const Complex dir = half > 1e-12 ? w / std::abs(w) : std::polar(1.0, angle(rng));
            const Complex offset = dir * Complex(0.0, std::sqrt(std::max(0.0, 1.0 - half * half)));
            out.insert(out.end(), {a, b, -half * dir + offset, -half * dir - offset});
        } else {
            const double base = angle(rng);
            for (std::size_t k = 0; k < size; ++k) {
                out.push_back(std::polar(1.0, base + kTwoPi * static_cast<double>(k) / static_cast<double>(size)));
            }
        }
    }
    return out;
}

}  // namespace detail

/// Two orthogonal maximally entangled states related by a random traceless unitary T.
inline StatePair orthogonal_pair(std::size_t d, std::uint64_t seed) {
    if (d < 2) {
        throw DomainError("orthogonal_pair: d must be >= 2");
    }
    std::mt19937_64 rng(detail::derive_seed(seed, 0));
    const auto phases = detail::traceless_phases(d, rng);
    const auto t = detail::conjugate_diagonal(phases, detail::derive_seed(seed, 1));
    return detail::pair_from_operator(t, detail::derive_seed(seed, 2));
}

/// Pair whose operator is e^{i phi} V diag(M-th roots of unity, each D/M times) V^dag.
inline StatePair copyable_pair(std::size_t d, std::size_t m, std::uint64_t seed) {
    if (m < 2 || d < 2 || d % m != 0) {
        throw DomainError("copyable_pair: need m >= 2 dividing d, got d=" + std::to_string(d) +
                          " m=" + std::to_string(m));
    }
    std::mt19937_64 rng(detail::derive_seed(seed, 0));
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    const double phi = angle(rng);
    std::vector<Complex> eigenvalues;
    eigenvalues.reserve(d);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t k = 0; k < d / m; ++k) {
            eigenvalues.push_back(std::polar(1.0, phi + kTwoPi * static_cast<double>(r) / static_cast<double>(m)));
        }
    }
    const auto t = detail::conjugate_diagonal(eigenvalues, detail::derive_seed(seed, 1));
    return detail::pair_from_operator(t, detail::derive_seed(seed, 2));
}

/// Orthogonal but non-copyable pair at D = d1 * d2: the pair operator has the non-degenerate
/// eigenvalues e^{2 pi i j / d1} e^{i j' delta}, j < d1, j' < d2, which sum to zero but are not
/// equally spaced for 0 < delta < 2 pi / D.
inline StatePair nonprime_counterexample(std::size_t d1, std::size_t d2, double delta, std::uint64_t seed) {
    if (d1 < 2 || d2 < 2) {
        throw DomainError("nonprime_counterexample: d1 and d2 must be >= 2");
    }
    const double d = static_cast<double>(d1 * d2);
    if (!(delta > 0.0 && delta < kTwoPi / d)) {
        throw DomainError("nonprime_counterexample: delta=" + std::to_string(delta) +
                          " outside (0, 2pi/D) with D=" + std::to_string(d1 * d2));
    }
    std::vector<Complex> eigenvalues;
    eigenvalues.reserve(d1 * d2);
    for (std::size_t j = 0; j < d1; ++j) {
        for (std::size_t jp = 0; jp < d2; ++jp) {
            eigenvalues.push_back(std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(d1) +
                                                      static_cast<double>(jp) * delta));
        }
    }
    const auto t = detail::conjugate_diagonal(eigenvalues, detail::derive_seed(seed, 1));
    return detail::pair_from_operator(t, detail::derive_seed(seed, 2));
}

}  // namespace locc
