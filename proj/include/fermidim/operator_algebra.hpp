#pragma once

#include <map>

#include "fermidim/common.hpp"
#include "fermidim/model_core.hpp"

namespace fermidim {

enum class FermionKind { create, annihilate, number };

// Jordan-Wigner fermions on 2^N occupation states, sign (-1)^{sum_{k<j} n_k}.
Mat fermion_operator(int N, int j, FermionKind kind);

// Temperley-Lieb generator on sites (j, j+1) in tile form, x = i; j = N couples sites N and 1.
Mat tl_generator(int N, int j, bool periodic = false);

// Bilinear form x n_j + x^{-1} n_{j+1} + f_j^+ f_{j+1} + f_{j+1}^+ f_j (open chain).
Mat tl_generator_fermionic(int N, int j);

// rho (cos u I + sin u e_j); only lambda = pi/2 is supported.
Mat face_operator(int N, int j, double u, const ModelParams& params = {}, bool periodic = false);

Report verify_algebra(int N);
Report verify_ybe(int N, double u, double v);

// Per-sector comparison of -sum_{j=1}^N e_j (tile form) with the hopping Hamiltonian that
// closes the ring with the Jordan-Wigner string. Informational; never fails.
struct SectorDeviation {
    int d = 0;
    double residual = 0.0;
    // Relative sign s with tile = hop_open + s * (wrap-around hop), if one fits.
    int boundary_sign = 0;
};
std::vector<SectorDeviation> periodic_hamiltonian_sector_report(int N);

}  // namespace fermidim
