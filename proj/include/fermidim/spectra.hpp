#pragma once

#include "fermidim/common.hpp"
#include "fermidim/cylinder.hpp"
#include "fermidim/qseries.hpp"

namespace fermidim {

// One sign vector of the factorized inversion-identity solution.
// Z4: sector from the alternating sum a = sum_j (-1)^{j+1} eps_j, a = 1 mod 4, ell = |a|.
// R: sum_j eps_j = -ell. NS: the sum over all N signs (including j = N/2 and j = N) is -ell,
// and eps_{N/2} multiplies the eigenvalue.
struct EigenvalueCandidate {
    int N = 0;
    SectorClass cls = SectorClass::Z4;
    std::vector<int> eps;  // eps[j-1]
    int ell = 0;
    int sign = 1;

    // Eigenvalue at rho = 1 times rho^N.
    cplx value(cplx u, double rho = 1.0) const;
    // Exact-ready product at u = pi/4 and rho = sqrt 2 (same number, no complex phases).
    double isotropic_value() const;
};

struct SpectralEntry {
    SectorLabel label;
    cplx value;
    EigenvalueCandidate cand;  // empty eps for numerical entries
};

// All physical candidates in sector ell (one copy, no +-Sz doubling).
std::vector<EigenvalueCandidate> sector_candidates(int N, int ell);

// Complete multiset; sectors Sz and -Sz are listed separately with equal values.
std::vector<SpectralEntry> candidate_spectrum(int N, cplx u, double rho = 1.0);
std::vector<SpectralEntry> numerical_spectrum(int N, cplx u, double rho = 1.0);

struct MatchReport {
    bool pass = true;
    double max_distance = 0.0;
    int matched = 0;
    int unmatched = 0;
    std::vector<std::string> details;
};

MatchReport match_spectra(const std::vector<SpectralEntry>& cand, const std::vector<SpectralEntry>& num, double tol);

// Column of the string diagram. Z4 columns have one slot per position; R and NS columns have a
// left and a right slot per position, and NS columns add an energy-zero dummy right slot.
struct StringColumn {
    std::vector<int> left, right;  // 1-strings per slot, index p-1
    std::vector<Rational> energies;
    int dummy = 0;
    int sigma = 0;

    int ones(int p) const { return left[p - 1] + right[p - 1]; }
    Rational energy() const;
};

struct StringDiagram {
    SectorClass cls = SectorClass::Z4;
    std::vector<double> ordinates;  // y_j = -1/2 log|tan t_j|, per factor
    std::vector<bool> one_string;   // eps_j = -1
    std::vector<bool> upper;        // |tan t_j| <= 1
    StringColumn up, down;
    int sigma = 0, sigma_bar = 0;
    int capacity = 1;  // m_j + n_j per position
};

StringDiagram string_analysis(const EigenvalueCandidate& cand);

// Class constant added to the raw string energies to reach the conformal weights.
Rational string_energy_shift(SectorClass cls);

bool selection_rule_holds(const EigenvalueCandidate& cand, const StringDiagram& sd);
Report verify_selection_rules(int N, double u);

// Raw string generating function of sector ell.
QExponentPoly string_generating_function(int N, int ell);
Report character_crosscheck(int N, int ell);

}  // namespace fermidim
