#pragma once

// Majorization of Schmidt vectors, Nielsen transformability and self-catalysed copying.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "locc/config.hpp"
#include "locc/states.hpp"

namespace locc {

enum class CatalysisVerdict { direct, catalytic, impossible };

inline std::string_view to_string(CatalysisVerdict v) {
    switch (v) {
        case CatalysisVerdict::direct:
            return "direct";
        case CatalysisVerdict::catalytic:
            return "catalytic";
        case CatalysisVerdict::impossible:
            return "impossible";
    }
    return "?";
}

/// Running sums of the (already descending) components, zero-padded to `length`.
inline std::vector<double> partial_sums(const SchmidtVector& v, std::size_t length) {
    std::vector<double> sums(length, 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < length; ++i) {
        if (i < v.size()) {
            acc += v[i];
        }
        sums[i] = acc;
    }
    return sums;
}

/// True iff w majorizes v: every partial sum of v is <= that of w (one-sided slack sum_tol)
/// and the totals agree.
inline bool majorizes(const SchmidtVector& w, const SchmidtVector& v,
                      const NumericConfig& config = default_config()) {
    const std::size_t n = std::max(w.size(), v.size());
    const auto sw = partial_sums(w, n);
    const auto sv = partial_sums(v, n);
    for (std::size_t r = 0; r < n; ++r) {
        if (sv[r] > sw[r] + config.sum_tol) {
            return false;
        }
    }
    return std::abs(sw[n - 1] - sv[n - 1]) <= config.sum_tol;
}

/// Index of the first partial sum where w fails to majorize v, if any.
inline std::optional<std::size_t> majorization_failure(const SchmidtVector& w, const SchmidtVector& v,
                                                       const NumericConfig& config = default_config()) {
    const std::size_t n = std::max(w.size(), v.size());
    const auto sw = partial_sums(w, n);
    const auto sv = partial_sums(v, n);
    for (std::size_t r = 0; r < n; ++r) {
        if (sv[r] > sw[r] + config.sum_tol) {
            return r;
        }
    }
    return std::nullopt;
}

/// Nielsen: |src> -> |dst> by deterministic LOCC iff src is majorized by dst.
inline bool nielsen_transformable(const SchmidtVector& src, const SchmidtVector& dst,
                                  const NumericConfig& config = default_config()) {
    return majorizes(dst, src, config);
}

/// All pairwise products a_i * b_j, sorted non-increasing.
inline SchmidtVector tensor_product(const SchmidtVector& a, const SchmidtVector& b,
                                    const NumericConfig& config = default_config()) {
    std::vector<double> out;
    out.reserve(a.size() * b.size());
    for (const double x : a.probs()) {
        for (const double y : b.probs()) {
            out.push_back(x * y);
        }
    }
    return SchmidtVector(std::move(out), config);
}

/// Copying psi onto blank: direct if blank -> psi is already LOCC-possible, catalytic if
/// only psi (x) blank -> psi (x) psi is (psi acting as its own catalyst), else impossible.
inline CatalysisVerdict catalytic_copy_check(const SchmidtVector& psi, const SchmidtVector& blank,
                                             const NumericConfig& config = default_config()) {
    if (nielsen_transformable(blank, psi, config)) {
        return CatalysisVerdict::direct;
    }
    if (majorizes(tensor_product(psi, psi, config), tensor_product(psi, blank, config), config)) {
        return CatalysisVerdict::catalytic;
    }
    return CatalysisVerdict::impossible;
}

struct CatalyticPair {
    SchmidtVector psi;
    SchmidtVector blank;
    std::size_t attempt;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31U);
}

inline std::vector<double> squared_normal_probs(std::size_t n, std::size_t support, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> p(n, 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < support; ++i) {
        const double g = normal(rng);
        p[i] = g * g;
        sum += p[i];
    }
    for (auto& x : p) {
        x /= sum;
    }
    return p;
}

}  // namespace detail

/// Randomised search for a (psi, blank) pair of length d with verdict "catalytic".
/// Attempt k draws from its own generator seeded by splitmix64(seed ^ k), so the result is a
/// pure function of (d, attempts, seed). psi drops its trailing component half of the time.
inline std::optional<CatalyticPair> find_catalytic_pair(std::size_t d, std::size_t attempts, std::uint64_t seed,
                                                        const NumericConfig& config = default_config()) {
    if (d < 2) {
        return std::nullopt;
    }
    for (std::size_t k = 0; k < attempts; ++k) {
        std::mt19937_64 rng(detail::splitmix64(seed ^ detail::splitmix64(k)));
        const std::size_t support = (rng() & 1U) != 0U ? d - 1 : d;
        SchmidtVector psi(detail::squared_normal_probs(d, support, rng), config);
        SchmidtVector blank(detail::squared_normal_probs(d, d, rng), config);
        if (catalytic_copy_check(psi, blank, config) == CatalysisVerdict::catalytic) {
            return CatalyticPair{std::move(psi), std::move(blank), k};
        }
    }
    return std::nullopt;
}

}  // namespace locc
