// Copies either of two orthogonal Bell states onto a |phi+> blank with one pair of local
// unitaries, then prints the fidelities and the LOCC transcript.

#include <complex>
#include <iostream>

#include "locc/locc.hpp"

int main() {
    using namespace locc;

    ComplexMatrix x = ComplexMatrix::Zero(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    const auto phi_plus = max_entangled(2);
    const auto psi_plus = from_unitary(UnitaryMatrix(x));

    const auto report = spectral_verdict(pair_operator(phi_plus, psi_plus));
    std::cout << "clusters: " << report.clusters.size() << ", M = " << report.detected_m.value_or(0)
              << ", copyable: " << (report.copyable ? "yes" : "no") << "\n";

    const auto protocol = synthesize_protocol(phi_plus, psi_plus, phi_plus);
    std::cout << "fidelity(phi+) = " << verify_copy(protocol, phi_plus) << "\n";
    std::cout << "fidelity(psi+) = " << verify_copy(protocol, psi_plus) << "\n";
    std::cout << emit_locc_transcript(protocol).to_string();
}
