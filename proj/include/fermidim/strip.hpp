#pragma once

#include "fermidim/common.hpp"
#include "fermidim/field.hpp"

namespace fermidim {

// Weights of the left boundary arcs: standard puts x = i on an empty arc and x^{-1} on an
// occupied one; mirrored swaps them.
enum class LeftArc { standard, mirrored };

// Double-row transfer matrix with vacuum boundaries, normalized by 1/sin 2u, D(b, a).
// Any u with sin 2u != 0 is accepted so that D(u + pi/2) and D(-h) are available.
Mat double_row_transfer(int N, cplx u, LeftArc arcs = LeftArc::standard);

// ((cos^{2N} u - sin^{2N} u) / (cos^2 u - sin^2 u))^2
cplx strip_inversion_scalar(int N, cplx u);

// -sum_{j<N} e_j in tile form, and the hopping form with the -i(n_1 - n_N) boundary term.
Mat strip_hamiltonian(int N);
Mat strip_hamiltonian_fermionic(int N);

// Tile form equals the fermionic form and the spectrum is real.
Report verify_strip_hamiltonian(int N);

Report verify_strip_inversion(int N, double u);
Report verify_strip_commutation(int N, double u, double v);

struct DerivativeCheck {
    Report report;
    cplx offset = 0.0;      // scalar part of -1/2 d/du log D(0) - H
    double residual = 0.0;  // after removing the offset
    double d0_deviation = 0.0;
};
// Central difference of log D at +-h; passes when the residual is <= 1e-5.
DerivativeCheck verify_hamiltonian_derivative(int N, LeftArc arcs = LeftArc::standard, double h = 1e-4);

// Zeros of the inversion scalar on Re u = pi/4 at the predicted 1-string ordinates.
Report strip_string_diagnostic(int N);

struct JordanEntry {
    cplx eigenvalue;
    std::string exact;  // field element in exact mode
    std::vector<int> blocks;  // descending
};

struct JordanSpectrum {
    int dim = 0;
    bool exact = false;
    std::vector<JordanEntry> entries;

    int total() const;
    const JordanEntry* find(cplx lambda, double tol = 1e-9) const;
};

enum class JordanMode { numeric, exact };

JordanSpectrum jordan_structure(const Mat& H, JordanMode mode, double tol = 1e-8);

// Block sizes from ranks r_0 = n, r_1, ... of (H - lambda)^k.
std::vector<int> blocks_from_ranks(const std::vector<int>& ranks);

}  // namespace fermidim
