#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "locc/copy.hpp"
#include "locc/generators.hpp"
#include "support.hpp"

namespace locc {
namespace {

using testing::lagrange_projector;
using testing::pauli_x;
using testing::roots_of_unity;

UnitaryMatrix diagonal_unitary(const std::vector<double>& phases) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(phases.size()),
                                          static_cast<Eigen::Index>(phases.size()));
    for (std::size_t k = 0; k < phases.size(); ++k) {
        m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = std::polar(1.0, phases[k]);
    }
    return UnitaryMatrix(m);
}

// A(T~ (x) 1)A^dag == T~ (x) T~ and A P_r A^dag == Q_r for every cluster r.
void expect_intertwines(const UnitaryMatrix& t, const UnitaryMatrix& a, double tol) {
    const auto report = spectral_verdict(t);
    ASSERT_TRUE(report.copyable);
    const auto d = t.matrix().rows();
    const ComplexMatrix t_tilde = std::polar(1.0, report.rotation) * t.matrix();
    const ComplexMatrix one = ComplexMatrix::Identity(d, d);
    const ComplexMatrix left = kron(t_tilde, one);
    const ComplexMatrix right = kron(t_tilde, t_tilde);
    EXPECT_LT((a.matrix() * left * a.matrix().adjoint() - right).norm(), tol);
    EXPECT_LT(unitarity_defect(a.matrix()), tol);
    const auto roots = roots_of_unity(report.clusters.size());
    for (std::size_t r = 0; r < roots.size(); ++r) {
        const ComplexMatrix p = lagrange_projector(left, roots, r);
        const ComplexMatrix q = lagrange_projector(right, roots, r);
        EXPECT_LT((a.matrix() * p * a.matrix().adjoint() - q).norm(), tol) << "cluster " << r;
    }
}

TEST(PairOperator, IdenticalStatesGiveIdentity) {
    const auto s = from_unitary(haar_unitary(4, 1));
    EXPECT_LT((pair_operator(s, s).matrix() - ComplexMatrix::Identity(4, 4)).norm(), 1e-12);
}

TEST(PairOperator, BellPairGivesPauliX) {
    const auto t = pair_operator(max_entangled(2), from_unitary(UnitaryMatrix(pauli_x())));
    EXPECT_LT((t.matrix() - pauli_x()).norm(), 1e-15);
}

TEST(PairOperator, EqualsProductOfRecoveredUnitaries) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::size_t d = 2 + seed % 8;
        const auto psi1 = from_unitary(haar_unitary(d, 3 * seed));
        const auto psi2 = from_unitary(haar_unitary(d, 3 * seed + 1));
        const ComplexMatrix expected =
            unitary_of_state(psi1).matrix() * unitary_of_state(psi2).matrix().adjoint();
        EXPECT_LT((pair_operator(psi1, psi2).matrix() - expected).norm(), 1e-9);
        EXPECT_LT((pair_operator(psi1, psi2).matrix().adjoint() - pair_operator(psi2, psi1).matrix()).norm(), 1e-10);
        EXPECT_LT(std::abs(overlap(psi1, psi2) - pair_operator(psi1, psi2).matrix().trace() / static_cast<double>(d)),
                  1e-10);
    }
}

TEST(PairOperator, RejectsPartiallyEntangled) {
    ComplexMatrix grid = ComplexMatrix::Zero(2, 2);
    grid(0, 0) = std::sqrt(0.6);
    grid(1, 1) = std::sqrt(0.4);
    EXPECT_THROW(pair_operator(BipartiteState(grid), max_entangled(2)), PreconditionError);
    EXPECT_THROW(pair_operator(max_entangled(2), max_entangled(3)), ShapeError);
}

TEST(Orthogonality, Examples) {
    EXPECT_EQ(orthogonality(UnitaryMatrix::identity(3)), Orthogonality::identical_up_to_phase);
    EXPECT_EQ(orthogonality(UnitaryMatrix(pauli_x())), Orthogonality::orthogonal);
    // |1 + e^{i pi/3}| = sqrt(3).
    EXPECT_EQ(orthogonality(diagonal_unitary({0.0, kPi / 3.0})), Orthogonality::neither);
    EXPECT_EQ(orthogonality(diagonal_unitary({0.7, 0.7})), Orthogonality::identical_up_to_phase);
}

TEST(SpectralVerdict, PauliXIsCopyableWithTwoRoots) {
    const auto r = spectral_verdict(UnitaryMatrix(pauli_x()));
    ASSERT_EQ(r.clusters.size(), 2U);
    EXPECT_NEAR(r.clusters[0].phase, 0.0, 1e-12);
    EXPECT_NEAR(r.clusters[1].phase, kPi, 1e-12);
    EXPECT_EQ(r.clusters[0].multiplicity, 1U);
    EXPECT_EQ(r.clusters[1].multiplicity, 1U);
    ASSERT_TRUE(r.detected_m.has_value());
    EXPECT_EQ(*r.detected_m, 2U);
    EXPECT_TRUE(r.copyable);
}

TEST(SpectralVerdict, TracelessQutritIsForcedOntoCubeRoots) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto pair = orthogonal_pair(3, seed);
        const auto r = spectral_verdict(pair_operator(pair.first, pair.second));
        ASSERT_EQ(r.clusters.size(), 3U);
        for (std::size_t k = 0; k < 3; ++k) {
            EXPECT_NEAR(r.clusters[k].phase, kTwoPi * static_cast<double>(k) / 3.0, 1e-9);
        }
        EXPECT_TRUE(r.copyable);
    }
}

TEST(SpectralVerdict, NonprimeCounterexampleIsRejected) {
    const double delta = kPi / 4.0;
    const auto t = diagonal_unitary({0.0, delta, kPi, kPi + delta});
    EXPECT_LT(std::abs(t.matrix().trace()), 1e-15);
    const auto r = spectral_verdict(t);
    EXPECT_EQ(r.clusters.size(), 4U);
    EXPECT_FALSE(r.equally_spaced);
    EXPECT_FALSE(r.detected_m.has_value());
    EXPECT_FALSE(r.copyable);
}

TEST(SpectralVerdict, EqualSpacingWithUnequalMultiplicities) {
    const auto r = spectral_verdict(diagonal_unitary({0.3, 0.3, 0.3 + kPi}));
    EXPECT_TRUE(r.equally_spaced);
    EXPECT_FALSE(r.equal_multiplicities);
    EXPECT_FALSE(r.copyable);
}

TEST(SpectralVerdict, ClusterStraddlingZeroPhase) {
    const auto r = spectral_verdict(diagonal_unitary({-1e-9, 1e-9, kPi, kPi}));
    ASSERT_EQ(r.clusters.size(), 2U);
    EXPECT_EQ(r.clusters[0].multiplicity, 2U);
    EXPECT_TRUE(r.copyable);
}

TEST(SpectralVerdict, IdentityIsTriviallyCopyable) {
    const auto r = spectral_verdict(UnitaryMatrix::identity(4));
    ASSERT_EQ(r.clusters.size(), 1U);
    EXPECT_EQ(r.clusters[0].multiplicity, 4U);
    EXPECT_TRUE(r.copyable);
    EXPECT_EQ(orthogonality(UnitaryMatrix::identity(4)), Orthogonality::identical_up_to_phase);
}

TEST(SpectralVerdict, AmbiguousGapThrows) {
    const NumericConfig config;
    const double gap = 1.5 * config.phase_tol;
    try {
        spectral_verdict(diagonal_unitary({0.0, gap, kPi}), config);
        FAIL() << "expected AmbiguityError";
    } catch (const AmbiguityError& e) {
        EXPECT_NE(std::string(e.what()).find("gap"), std::string::npos);
    }
}

TEST(SpectralVerdict, InvariantUnderGlobalPhaseAndConjugation) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t d = 2 + seed % 7;
        const auto pair = seed % 2 == 0 ? orthogonal_pair(d, seed) : copyable_pair(d, d, seed);
        const auto t = pair_operator(pair.first, pair.second);
        const auto base = spectral_verdict(t);
        const auto v = haar_unitary(d, 100 + seed).matrix();
        const auto phased = spectral_verdict(UnitaryMatrix(std::polar(1.0, angle(rng)) * t.matrix()));
        const auto conjugated = spectral_verdict(UnitaryMatrix(v * t.matrix() * v.adjoint()));
        for (const auto* other : {&phased, &conjugated}) {
            EXPECT_EQ(other->copyable, base.copyable);
            EXPECT_EQ(other->detected_m, base.detected_m);
            ASSERT_EQ(other->clusters.size(), base.clusters.size());
        }
        for (std::size_t k = 0; k < base.clusters.size(); ++k) {
            EXPECT_NEAR(conjugated.clusters[k].phase, base.clusters[k].phase, 1e-9);
            EXPECT_EQ(conjugated.clusters[k].multiplicity, base.clusters[k].multiplicity);
        }
    }
}

TEST(DegeneracyForm, Examples) {
    EXPECT_TRUE(degeneracy_form_check({1, 1}, 2, 2));
    EXPECT_FALSE(degeneracy_form_check({2, 1, 1}, 3, 4));
    EXPECT_TRUE(degeneracy_form_check({2, 2}, 2, 4));
    EXPECT_TRUE(degeneracy_form_check({5}, 1, 5));
}

TEST(DegeneracyForm, AgreesWithMultisetOracle) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t m = 1 + rng() % 6;
        std::vector<std::size_t> mult(m);
        std::size_t d = 0;
        for (auto& x : mult) {
            x = 1 + rng() % 4;
            d += x;
        }
        const bool equal = std::all_of(mult.begin(), mult.end(), [&](std::size_t x) { return x == mult[0]; });
        EXPECT_EQ(degeneracy_form_check(mult, m, d), testing::spectra_match(mult));
        EXPECT_EQ(degeneracy_form_check(mult, m, d), equal);
    }
}

TEST(DegeneracyForm, RejectsInconsistentInput) {
    EXPECT_THROW(degeneracy_form_check({1, 1}, 3, 2), DomainError);
    EXPECT_THROW(degeneracy_form_check({1, 1}, 2, 3), DomainError);
}

TEST(SynthesizeA, IdentityContract) {
    expect_intertwines(UnitaryMatrix::identity(3), synthesize_a(UnitaryMatrix::identity(3)), 1e-9);
}

TEST(SynthesizeA, PauliXContract) {
    const UnitaryMatrix t(pauli_x());
    expect_intertwines(t, synthesize_a(t), 1e-9);
}

TEST(SynthesizeA, BlockUnitaryD6M3) {
    const auto pair = copyable_pair(6, 3, 17);
    const auto t = pair_operator(pair.first, pair.second);
    const auto r = spectral_verdict(t);
    EXPECT_EQ(r.multiplicities(), (std::vector<std::size_t>{2, 2, 2}));
    expect_intertwines(t, synthesize_a(t), 1e-9);
}

TEST(SynthesizeA, RejectsNonCopyable) {
    EXPECT_THROW(synthesize_a(diagonal_unitary({0.0, kPi / 4.0, kPi, kPi + kPi / 4.0})), PreconditionError);
}

TEST(SynthesizeA, Deterministic) {
    const auto pair = copyable_pair(4, 2, 5);
    const auto t = pair_operator(pair.first, pair.second);
    EXPECT_EQ(synthesize_a(t).matrix(), synthesize_a(t).matrix());
}

TEST(SynthesizeProtocol, BellPairWithPhiPlusBlank) {
    const auto psi1 = max_entangled(2);
    const auto psi2 = from_unitary(UnitaryMatrix(pauli_x()));
    const auto protocol = synthesize_protocol(psi1, psi2, max_entangled(2));
    EXPECT_GE(verify_copy(protocol, psi1), 1.0 - 1e-9);
    EXPECT_GE(verify_copy(protocol, psi2), 1.0 - 1e-9);
    EXPECT_EQ(protocol.phases.size(), 2U);
    EXPECT_EQ(protocol.wiring, "A:(1,3) B:(2,4)");
}

TEST(SynthesizeProtocol, RandomQutritPairsAndBlanks) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto pair = orthogonal_pair(3, seed);
        const auto blank = from_unitary(haar_unitary(3, 500 + seed));
        const auto protocol = synthesize_protocol(pair.first, pair.second, blank);
        EXPECT_GE(verify_copy(protocol, pair.first), 1.0 - 1e-9);
        EXPECT_GE(verify_copy(protocol, pair.second), 1.0 - 1e-9);
    }
}

TEST(SynthesizeProtocol, PhasesMatchRotation) {
    // theta_1 - theta_2 equals the rotation removed from T.
    const auto pair = copyable_pair(4, 4, 8);
    const auto blank = from_unitary(haar_unitary(4, 9));
    const auto protocol = synthesize_protocol(pair.first, pair.second, blank);
    const auto report = spectral_verdict(pair_operator(pair.first, pair.second));
    EXPECT_LT(circular_distance(protocol.phases[0] - protocol.phases[1], report.rotation), 1e-8);
}

TEST(SynthesizeProtocol, RejectsCounterexampleAndNonOrthogonal) {
    const auto bad = nonprime_counterexample(2, 2, kPi / 4.0, 3);
    EXPECT_THROW(synthesize_protocol(bad.first, bad.second, max_entangled(4)), PreconditionError);
    const auto s = from_unitary(haar_unitary(3, 1));
    EXPECT_THROW(synthesize_protocol(s, s, max_entangled(3)), PreconditionError);
    const auto a = from_unitary(haar_unitary(3, 2));
    const auto b = from_unitary(haar_unitary(3, 3));
    EXPECT_THROW(synthesize_protocol(a, b, max_entangled(3)), PreconditionError);
    ComplexMatrix grid = ComplexMatrix::Zero(2, 2);
    grid(0, 0) = std::sqrt(0.6);
    grid(1, 1) = std::sqrt(0.4);
    EXPECT_THROW(synthesize_protocol(max_entangled(2), from_unitary(UnitaryMatrix(pauli_x())), BipartiteState(grid)),
                 PreconditionError);
}

TEST(PairwiseChecks, ThreeBellStates) {
    ComplexMatrix z = ComplexMatrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    const std::vector<BipartiteState> states{max_entangled(2), from_unitary(UnitaryMatrix(pauli_x())),
                                             from_unitary(UnitaryMatrix(z))};
    const auto checks = pairwise_checks(states);
    ASSERT_EQ(checks.size(), 3U);
    for (const auto& c : checks) {
        EXPECT_EQ(c.relation, Orthogonality::orthogonal);
        EXPECT_TRUE(c.copyable);
    }
    EXPECT_EQ(checks[2].first, 1U);
    EXPECT_EQ(checks[2].second, 2U);
}

}  // namespace
}  // namespace locc
