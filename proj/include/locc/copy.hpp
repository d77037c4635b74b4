#pragma once

// Copyability of two orthogonal maximally entangled states with a maximally entangled
// blank, and synthesis of the local unitaries that perform the copy.
//
// For |psi_j> = (U_j (x) 1)|psi_max> the pair operator is T = U_1 U_2^dag. A copy exists iff
// some unitary A on two particles satisfies A (T~ (x) 1) A^dag = T~ (x) T~ with T~ = e^{i dtheta} T,
// which holds iff the eigenvalues of T are, up to a common rotation, the M-th roots of unity
// with equal multiplicity D/M for some M dividing D.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "locc/config.hpp"
#include "locc/protocol.hpp"
#include "locc/simulator.hpp"
#include "locc/states.hpp"
#include "locc/tensor.hpp"

namespace locc {

enum class Orthogonality { orthogonal, identical_up_to_phase, neither };

inline std::string_view to_string(Orthogonality o) {
    switch (o) {
        case Orthogonality::orthogonal:
            return "orthogonal";
        case Orthogonality::identical_up_to_phase:
            return "identical_up_to_phase";
        case Orthogonality::neither:
            return "neither";
    }
    return "?";
}

struct PhaseCluster {
    double phase;  ///< representative phase after rotation removal, in [0, 2pi)
    std::size_t multiplicity;
};

struct SpectrumReport {
    std::vector<double> eigenphases;    ///< raw eigenphases of T in [0, 2pi), ascending
    std::vector<PhaseCluster> clusters; ///< ascending by rotated phase; the first is at 0
    double rotation = 0.0;              ///< dtheta with T~ = e^{i dtheta} T
    std::optional<std::size_t> detected_m;  ///< set when the clusters sit on the M-th roots of unity
    bool equally_spaced = false;
    bool equal_multiplicities = false;
    bool copyable = false;
    Complex trace{0.0, 0.0};

    [[nodiscard]] std::vector<std::size_t> multiplicities() const {
        std::vector<std::size_t> out;
        out.reserve(clusters.size());
        for (const auto& c : clusters) {
            out.push_back(c.multiplicity);
        }
        return out;
    }
};

/// T = D * PT(|psi1><psi2|), which equals U_1 U_2^dag.
inline UnitaryMatrix pair_operator(const BipartiteState& psi1, const BipartiteState& psi2,
                                   const NumericConfig& config = default_config()) {
    if (psi1.d() != psi2.d()) {
        throw ShapeError("pair_operator: dimension mismatch " + std::to_string(psi1.d()) + " vs " +
                         std::to_string(psi2.d()));
    }
    require_maximally_entangled(psi1, "pair_operator (first state)", config);
    require_maximally_entangled(psi2, "pair_operator (second state)", config);
    const auto d = psi1.d();
    const ComplexMatrix outer = psi1.flat() * psi2.flat().adjoint();
    return UnitaryMatrix(static_cast<double>(d) * partial_trace_second(outer, d, d), config);
}

inline Orthogonality orthogonality(const UnitaryMatrix& t, const NumericConfig& config = default_config()) {
    const double d = static_cast<double>(t.dim());
    const double tr = std::abs(t.matrix().trace());
    if (tr < d * config.ortho_tol) {
        return Orthogonality::orthogonal;
    }
    if (tr > d * (1.0 - config.ortho_tol)) {
        return Orthogonality::identical_up_to_phase;
    }
    return Orthogonality::neither;
}

namespace detail {

struct RawCluster {
    double mean_phase;
    std::size_t multiplicity;
};

/// Groups sorted phases on the circle, cutting at gaps larger than phase_tol.
inline std::vector<RawCluster> cluster_phases(const std::vector<double>& sorted, double phase_tol) {
    const std::size_t n = sorted.size();
    std::vector<double> gap_after(n);
    for (std::size_t k = 0; k < n; ++k) {
        gap_after[k] = k + 1 < n ? sorted[k + 1] - sorted[k] : sorted[0] + kTwoPi - sorted[k];
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (n > 1 && gap_after[k] > phase_tol && gap_after[k] <= 2.0 * phase_tol) {
            std::ostringstream os;
            os << "spectral_verdict: ambiguous eigenphase clustering, gap " << gap_after[k]
               << " rad lies between phase_tol and 2*phase_tol (phase_tol=" << phase_tol << ")";
            throw AmbiguityError(os.str());
        }
    }
    // Start right after some cut so no cluster is split by the walk.
    std::size_t start = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (gap_after[k] > phase_tol) {
            start = (k + 1) % n;
            break;
        }
    }
    std::vector<RawCluster> clusters;
    Complex sum{0.0, 0.0};
    std::size_t count = 0;
    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t k = (start + step) % n;
        sum += std::polar(1.0, sorted[k]);
        ++count;
        if (gap_after[k] > phase_tol || step + 1 == n) {
            clusters.push_back({phase_0_2pi(sum), count});
            sum = Complex{0.0, 0.0};
            count = 0;
        }
    }
    return clusters;
}

}  // namespace detail

/// Clusters the eigenphases of T, removes the global rotation and decides copyability.
inline SpectrumReport spectral_verdict(const UnitaryMatrix& t, const NumericConfig& config = default_config()) {
    const auto eig = eig_normal(t.matrix(), config);
    SpectrumReport report;
    report.trace = t.matrix().trace();
    for (const auto& lambda : eig.eigenvalues) {
        report.eigenphases.push_back(phase_0_2pi(lambda));
    }
    std::sort(report.eigenphases.begin(), report.eigenphases.end());

    const auto raw = detail::cluster_phases(report.eigenphases, config.phase_tol);
    double anchor = raw.front().mean_phase;
    for (const auto& c : raw) {
        anchor = std::min(anchor, c.mean_phase);
    }
    report.rotation = -anchor;
    for (const auto& c : raw) {
        double rotated = std::fmod(c.mean_phase - anchor + kTwoPi, kTwoPi);
        if (circular_distance(rotated, 0.0) <= config.phase_tol) {
            rotated = 0.0;
        }
        report.clusters.push_back({rotated, c.multiplicity});
    }
    std::sort(report.clusters.begin(), report.clusters.end(),
              [](const PhaseCluster& a, const PhaseCluster& b) { return a.phase < b.phase; });

    const std::size_t m = report.clusters.size();
    const std::size_t d = t.dim();
    report.equally_spaced = true;
    for (std::size_t r = 0; r < m; ++r) {
        const double root = kTwoPi * static_cast<double>(r) / static_cast<double>(m);
        if (circular_distance(report.clusters[r].phase, root) > config.phase_tol) {
            report.equally_spaced = false;
            break;
        }
    }
    report.equal_multiplicities =
        d % m == 0 && std::all_of(report.clusters.begin(), report.clusters.end(),
                                  [&](const PhaseCluster& c) { return c.multiplicity == d / m; });
    if (report.equally_spaced) {
        report.detected_m = m;
    }
    report.copyable = report.equally_spaced && report.equal_multiplicities;
    return report;
}

/// Degeneracy condition for eigenvalues on the M-th roots of unity:
/// sum_{s,s'} G_{r s s'} d_s d_{s'} == D d_r for every r, where G_{r s s'} = 1 iff
/// s + s' - r == 1 (mod M), indices 1-based.
inline bool degeneracy_form_check(const std::vector<std::size_t>& multiplicities, std::size_t m, std::size_t d) {
    if (m == 0 || multiplicities.size() != m) {
        throw DomainError("degeneracy_form_check: expected " + std::to_string(m) + " multiplicities, got " +
                          std::to_string(multiplicities.size()));
    }
    if (std::accumulate(multiplicities.begin(), multiplicities.end(), std::size_t{0}) != d) {
        throw DomainError("degeneracy_form_check: multiplicities do not sum to D=" + std::to_string(d));
    }
    const auto mm = static_cast<long long>(m);
    for (long long r = 1; r <= mm; ++r) {
        long long lhs = 0;
        for (long long s = 1; s <= mm; ++s) {
            for (long long sp = 1; sp <= mm; ++sp) {
                const long long residue = (((s + sp - r - 1) % mm) + mm) % mm;
                if (residue == 0) {
                    lhs += static_cast<long long>(multiplicities[static_cast<std::size_t>(s - 1)] *
                                                  multiplicities[static_cast<std::size_t>(sp - 1)]);
                }
            }
        }
        const auto rhs = static_cast<long long>(d * multiplicities[static_cast<std::size_t>(r - 1)]);
        if (lhs != rhs) {
            return false;
        }
    }
    return true;
}

/// Unitary A on two particles with A (T~ (x) 1) A^dag = T~ (x) T~, T~ = e^{i rotation} T.
/// A maps an eigenbasis of T~ (x) 1 onto an eigenbasis of T~ (x) T~, cluster by cluster.
inline UnitaryMatrix synthesize_a(const UnitaryMatrix& t, const NumericConfig& config = default_config()) {
    const auto report = spectral_verdict(t, config);
    if (!report.copyable) {
        throw PreconditionError("synthesize_a: spectrum is not a rotated set of equally degenerate roots of unity");
    }
    const auto d = static_cast<Eigen::Index>(t.dim());
    const std::size_t m = report.clusters.size();
    const ComplexMatrix t_tilde = std::polar(1.0, report.rotation) * t.matrix();
    const auto eig = eig_normal(t_tilde, config);

    // Cluster index of each eigenvector of T~ (nearest M-th root of unity).
    std::vector<std::size_t> label(static_cast<std::size_t>(d));
    for (Eigen::Index a = 0; a < d; ++a) {
        const double phase = phase_0_2pi(eig.eigenvalues[static_cast<std::size_t>(a)]);
        const auto r = static_cast<long long>(std::llround(phase * static_cast<double>(m) / kTwoPi));
        label[static_cast<std::size_t>(a)] = static_cast<std::size_t>(r % static_cast<long long>(m));
    }

    const auto n = d * d;
    const ComplexMatrix identity = ComplexMatrix::Identity(d, d);
    ComplexMatrix xi(n, n);
    ComplexMatrix eta(n, n);
    Eigen::Index xi_col = 0;
    Eigen::Index eta_col = 0;
    for (std::size_t r = 0; r < m; ++r) {
        const Eigen::Index xi_begin = xi_col;
        const Eigen::Index eta_begin = eta_col;
        for (Eigen::Index a = 0; a < d; ++a) {
            if (label[static_cast<std::size_t>(a)] != r) {
                continue;
            }
            for (Eigen::Index k = 0; k < d; ++k) {
                xi.col(xi_col++) = kron(ComplexVector(eig.eigenvectors.col(a)), ComplexVector(identity.col(k)), config);
            }
        }
        for (Eigen::Index a = 0; a < d; ++a) {
            for (Eigen::Index b = 0; b < d; ++b) {
                if ((label[static_cast<std::size_t>(a)] + label[static_cast<std::size_t>(b)]) % m != r) {
                    continue;
                }
                eta.col(eta_col++) =
                    kron(ComplexVector(eig.eigenvectors.col(a)), ComplexVector(eig.eigenvectors.col(b)), config);
            }
        }
        if (xi_col - xi_begin != eta_col - eta_begin) {
            throw InternalError("synthesize_a: eigenspace dimension mismatch for cluster " + std::to_string(r) +
                                " (" + std::to_string(xi_col - xi_begin) + " vs " +
                                std::to_string(eta_col - eta_begin) + ")");
        }
    }
    if (xi_col != n || eta_col != n) {
        throw InternalError("synthesize_a: eigenbases do not span the two-particle space");
    }
    return UnitaryMatrix(eta * xi.adjoint(), config);
}

/// Builds (A on 1,3) and (B on 2,4) copying psi1 and psi2 onto blank, then verifies both
/// copies in the four-particle simulator.
inline CopyProtocol synthesize_protocol(const BipartiteState& psi1, const BipartiteState& psi2,
                                        const BipartiteState& blank, const NumericConfig& config = default_config()) {
    if (psi1.d() != psi2.d() || psi1.d() != blank.d()) {
        throw ShapeError("synthesize_protocol: states must share the same d");
    }
    const auto t = pair_operator(psi1, psi2, config);
    const auto relation = orthogonality(t, config);
    if (relation != Orthogonality::orthogonal) {
        std::ostringstream os;
        os << "synthesize_protocol: states are not orthogonal (|<psi2|psi1>| = "
           << std::abs(t.matrix().trace()) / static_cast<double>(t.dim()) << ", " << to_string(relation) << ")";
        throw PreconditionError(os.str());
    }
    const auto report = spectral_verdict(t, config);
    if (!report.copyable) {
        std::ostringstream os;
        os << "synthesize_protocol: pair is not LOCC-copyable (" << report.clusters.size()
           << " eigenphase clusters, equally spaced=" << (report.equally_spaced ? "yes" : "no")
           << ", equal multiplicities=" << (report.equal_multiplicities ? "yes" : "no") << ")";
        throw PreconditionError(os.str());
    }

    const auto a = synthesize_a(t, config);
    const auto u1 = unitary_of_state(psi1, config).matrix();
    const auto ub = unitary_of_state(blank, config).matrix();
    // C_1 = (U_1^dag (x) U_1^dag) A (U_1 (x) U_b) and B = conj(C_1), global phase dropped.
    const ComplexMatrix c1 =
        kron(ComplexMatrix(u1.adjoint()), ComplexMatrix(u1.adjoint()), config) * a.matrix() * kron(u1, ub, config);
    CopyProtocol protocol{psi1.d(), blank, a, UnitaryMatrix(c1.conjugate(), config), {}, kWiring};

    for (const auto* psi : {&psi1, &psi2}) {
        const Complex amplitude = copy_overlap(protocol, *psi, config);
        const double fidelity = std::norm(amplitude);
        if (fidelity < 1.0 - config.fidelity_tol) {
            throw InternalError("synthesize_protocol: verification failed, fidelity " + std::to_string(fidelity));
        }
        protocol.phases.push_back(std::arg(amplitude));
    }
    return protocol;
}

struct PairCheck {
    std::size_t first;
    std::size_t second;
    Orthogonality relation;
    Complex overlap;  ///< <psi_second|psi_first>
    SpectrumReport spectrum;
    bool copyable;    ///< orthogonal and spectrally copyable
};

inline PairCheck check_pair(const BipartiteState& psi1, const BipartiteState& psi2,
                            const NumericConfig& config = default_config()) {
    const auto t = pair_operator(psi1, psi2, config);
    PairCheck out{0, 1, orthogonality(t, config), overlap(psi1, psi2), spectral_verdict(t, config), false};
    out.copyable = out.relation == Orthogonality::orthogonal && out.spectrum.copyable;
    return out;
}

/// Every pair checked individually. For more than two states this is only a necessary
/// condition for copying the whole set.
inline std::vector<PairCheck> pairwise_checks(const std::vector<BipartiteState>& states,
                                              const NumericConfig& config = default_config()) {
    std::vector<PairCheck> out;
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = i + 1; j < states.size(); ++j) {
            auto check = check_pair(states[i], states[j], config);
            check.first = i;
            check.second = j;
            out.push_back(std::move(check));
        }
    }
    return out;
}

}  // namespace locc
