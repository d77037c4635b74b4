#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "locc/tensor.hpp"

namespace locc::testing {

inline ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            m(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    return m;
}

inline ComplexVector random_unit_vector(Eigen::Index n, std::mt19937_64& rng) {
    ComplexVector v = random_matrix(n, 1, rng);
    return v / v.norm();
}

/// Textbook Kronecker product (first factor slowest), written out entry by entry.
inline ComplexMatrix textbook_kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            for (Eigen::Index k = 0; k < b.rows(); ++k) {
                for (Eigen::Index l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

inline ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

/// Spectral projector of a diagonalisable X onto eigenvalue roots[r], by Lagrange
/// interpolation: prod_{s != r} (X - roots[s]) / (roots[r] - roots[s]).
inline ComplexMatrix lagrange_projector(const ComplexMatrix& x, const std::vector<Complex>& roots, std::size_t r) {
    const auto n = x.rows();
    ComplexMatrix p = ComplexMatrix::Identity(n, n);
    for (std::size_t s = 0; s < roots.size(); ++s) {
        if (s != r) {
            p = p * (x - roots[s] * ComplexMatrix::Identity(n, n)) / (roots[r] - roots[s]);
        }
    }
    return p;
}

/// The M-th roots of unity e^{2 pi i r / M}, r = 0..M-1.
inline std::vector<Complex> roots_of_unity(std::size_t m) {
    std::vector<Complex> out;
    for (std::size_t r = 0; r < m; ++r) {
        out.push_back(std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(m)));
    }
    return out;
}

/// Multiset oracle for spectrum(T~ (x) T~) == spectrum(T~ (x) 1) when T~ has eigenvalue
/// e^{2 pi i r / M} with multiplicity mult[r]: count products by residue class.
inline bool spectra_match(const std::vector<std::size_t>& mult) {
    const std::size_t m = mult.size();
    std::size_t d = 0;
    for (const auto x : mult) {
        d += x;
    }
    std::vector<std::size_t> product(m, 0);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            product[(a + b) % m] += mult[a] * mult[b];
        }
    }
    for (std::size_t r = 0; r < m; ++r) {
        if (product[r] != d * mult[r]) {
            return false;
        }
    }
    return true;
}

}  // namespace locc::testing
