#pragma once

#include <array>
#include <map>

#include "fermidim/common.hpp"
#include "fermidim/model_core.hpp"

namespace fermidim {

enum class SectorClass { Z4, Ramond, NeveuSchwarz };

const char* to_string(SectorClass c);

struct SectorLabel {
    int N = 0;
    int d = 0;
    int Sz = 0;
    int ell = 0;
    SectorClass cls = SectorClass::Z4;

    static SectorLabel make(int N, int d);
    bool operator<(const SectorLabel& o) const { return d < o.d; }
    bool operator==(const SectorLabel& o) const { return N == o.N && d == o.d; }
};

SectorClass sector_class(int N, int ell);

// Row of N faces with open horizontal ends. Entry [alpha_0 + 2 alpha_N](b, a) sums the interior
// horizontal occupations of prod_j F(a_j, alpha_{j-1}, b_j, alpha_j).
std::array<Mat, 4> open_row(const FaceTensor& F, int N);

// Periodic single-row transfer matrix, stored as T(b, a) for a -> b.
Mat transfer_matrix(int N, cplx u, const ModelParams& params = {});

struct BlockDecomposition {
    int N = 0;
    std::map<int, Mat> blocks;
    std::map<int, std::vector<std::uint32_t>> basis;
};

std::vector<std::uint32_t> sector_basis(int N, int d);
BlockDecomposition sector_decompose(const Mat& T, int N);

double inversion_scalar_cylinder(int N, int d, double u);
Report verify_inversion_cylinder(int N, double u);

// H = -sum_{j=1}^N e_j, tile form with periodic closure.
Mat hamiltonian_cylinder(int N);

struct BraidResult {
    Mat Bplus, Bminus, J;
    double richardson = 0.0;
    Report report;
};

BraidResult braid_and_j(int N, const ModelParams& params = {});

// Appendix objects: 4x4 two-row matrices, the similarity pair and the triangular targets.
Eigen::Matrix4d appendix_r(int b, int a, double u);
Eigen::Matrix4d appendix_s();
Eigen::Matrix4d appendix_s_inverse();
Eigen::Matrix4d appendix_triangular(int b, int a, double u);
Report verify_appendix_a(double u, int max_n = 4);

Report verify_commutation(int N, double u, double v);
Report verify_crossing(int N, double u);
Report verify_sector_degeneracy(int N, double u);

// T(0)^{-1} T'(0) against sum_j e_j. Informational except for the commutation check.
struct LogDerivativeDiagnostic {
    bool invertible = false;
    double commutator = 0.0;
    double traceless_deviation = 0.0;
    double deviation_from_minus = 0.0;
    cplx trace_part = 0.0;
};
LogDerivativeDiagnostic log_derivative_diagnostic(int N, double u_probe);

}  // namespace fermidim
