#pragma once

#include <string>

#include "fermidim/common.hpp"

namespace fermidim {

enum class CountMethod { formula, trace, enumeration, kasteleyn };
const char* to_string(CountMethod m);

struct CountResult {
    int M = 0, N = 0;
    BigInt value = 0;
    CountMethod method = CountMethod::formula;
    double residual = 0.0;
    int precision_bits = 0;
};

// Standard (bond-parallel) orientation; M, N even.
CountResult kasteleyn_count(int M, int N, int precision_bits = 0);

// literal follows the printed sums; corrected restores the eps_{N/2}^M sign on the
// Neveu-Schwarz terms for N even. They differ only for N even and M odd.
enum class FormulaVariant { corrected, literal };

// One evaluation at the given precision; throws if the rounding residual is >= 0.25.
CountResult rotated_count_formula(int M, int N, int precision_bits, FormulaVariant variant = FormulaVariant::corrected);

// Starts from 64 + MN bits (or the requested bits) and doubles until the residual is < 1e-3.
CountResult rotated_count(int M, int N, int precision_bits = 0, FormulaVariant variant = FormulaVariant::corrected);

// Exact Tr T_iso^M for M = 1..max_m from sparse integer columns of the isotropic transfer matrix.
std::vector<BigInt> rotated_trace_series(int max_m, int N);
CountResult rotated_count_trace(int M, int N);

// Brute force over all torus arrow configurations (MN <= 9).
CountResult enumerate_count(int M, int N);

// Both sides of the binomial identity for N even: sums over s = 0 mod 4 and s = 2 mod 4.
std::pair<BigInt, BigInt> binomial_identity_sums(int N);

struct BulkFreeEnergy {
    double infinite_form = 0.0;
    double finite_form = 0.0;
    double difference = 0.0;
};
BulkFreeEnergy bulk_free_energy_forms(double u);
// Second (finite-range) form; throws if the two forms differ by more than 1e-9.
double bulk_free_energy(double u);

struct ThermoResult {
    double G = 0.0;
    double S = 0.0;
    double W = 0.0;
    double W_from_free_energy = 0.0;
    double f_bulk_isotropic = 0.0;
};
ThermoResult residual_entropy();

struct GrowthRow {
    std::string orientation;
    int M = 0, N = 0;
    BigInt value = 0;
    double per_dimer = 0.0;
    double deviation = 0.0;
};
std::vector<GrowthRow> growth_table(int max_size);

}  // namespace fermidim
