#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "locc/states.hpp"

namespace locc {

/// Particle wiring: Alice holds (1, 3), Bob holds (2, 4); the state to copy sits on (1, 2)
/// and the blank on (3, 4).
inline constexpr const char* kWiring = "A:(1,3) B:(2,4)";

/// Two local unitaries that copy a designed pair of states onto `blank`:
/// (A on 1,3) (x) (B on 2,4) |psi_j>_{12} |blank>_{34} = e^{i theta_j} |psi_j>_{12} |psi_j>_{34}.
struct CopyProtocol {
    std::size_t d;
    BipartiteState blank;
    UnitaryMatrix a_op;  ///< D^2 x D^2, basis |X_mu> = |x_i>_1 |x_j>_3, mu = i + D j
    UnitaryMatrix b_op;  ///< D^2 x D^2, basis |x_i>_2 |x_j>_4
    std::vector<double> phases;
    std::string wiring = kWiring;
};

}  // namespace locc
