#include "fermidim/cylinder.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "fermidim/operator_algebra.hpp"

namespace fermidim {

const char* to_string(SectorClass c) {
    switch (c) {
        case SectorClass::Z4: return "Z4";
        case SectorClass::Ramond: return "R";
        case SectorClass::NeveuSchwarz: return "NS";
    }
    return "?";
}

SectorClass sector_class(int N, int ell) {
    if (N % 2) return SectorClass::Z4;
    return (ell / 2) % 2 == 0 ? SectorClass::Ramond : SectorClass::NeveuSchwarz;
}

SectorLabel SectorLabel::make(int N, int d) {
    if (d < 0 || d > N) throw std::invalid_argument("particle number out of range");
    SectorLabel s;
    s.N = N;
    s.d = d;
    s.Sz = N - 2 * d;
    s.ell = std::abs(s.Sz);
    s.cls = sector_class(N, s.ell);
    return s;
}

std::array<Mat, 4> open_row(const FaceTensor& F, int N) {
    if (N < 1 || N > kDenseCap) throw std::invalid_argument("row size outside dense range");
    const int dim = 1 << N;
    std::array<Mat, 4> out;
    for (auto& m : out) m = Mat::Zero(dim, dim);
    std::vector<cplx> cur, next;
    for (int a = 0; a < dim; ++a) {
        for (int a0 = 0; a0 < 2; ++a0) {
            cur.assign(2, 0.0);
            cur[a0] = 1.0;
            for (int j = 0; j < N; ++j) {
                next.assign(std::size_t(4) << j, 0.0);
                const int aj = (a >> j) & 1;
                for (std::size_t idx = 0; idx < cur.size(); ++idx) {
                    if (cur[idx] == cplx(0.0)) continue;
                    const int bp = static_cast<int>(idx >> 1), al = static_cast<int>(idx & 1);
                    for (int bj = 0; bj < 2; ++bj)
                        for (int ar = 0; ar < 2; ++ar) {
                            const cplx w = F(aj, al, bj, ar);
                            if (w != cplx(0.0)) next[((bp | (bj << j)) << 1) | ar] += cur[idx] * w;
                        }
                }
                cur.swap(next);
            }
            for (std::size_t idx = 0; idx < cur.size(); ++idx)
                if (cur[idx] != cplx(0.0)) out[a0 + 2 * (idx & 1)](idx >> 1, a) += cur[idx];
        }
    }
    return out;
}

Mat transfer_matrix(int N, cplx u, const ModelParams& params) {
    if (!params.free_fermion()) throw std::invalid_argument("transfer matrix requires lambda = pi/2");
    const FaceTensor F = face_tensor(free_fermion_weights(u, params.rho, params.g), Orientation::odd);
    const auto rows = open_row(F, N);
    return rows[0] + rows[3];
}

std::vector<std::uint32_t> sector_basis(int N, int d) {
    std::vector<std::uint32_t> b;
    for (std::uint32_t s = 0; s < (1u << N); ++s)
        if (popcount(s) == d) b.push_back(s);
    return b;
}

BlockDecomposition sector_decompose(const Mat& T, int N) {
    if (T.rows() != (1 << N) || T.cols() != (1 << N)) throw std::invalid_argument("operator size mismatch");
    for (int r = 0; r < T.rows(); ++r)
        for (int c = 0; c < T.cols(); ++c)
            if (popcount(r) != popcount(c) && std::abs(T(r, c)) > 1e-13)
                throw std::runtime_error("particle-number conservation violated");
    BlockDecomposition bd;
    bd.N = N;
    for (int d = 0; d <= N; ++d) {
        auto basis = sector_basis(N, d);
        Mat blk(basis.size(), basis.size());
        for (std::size_t p = 0; p < basis.size(); ++p)
            for (std::size_t q = 0; q < basis.size(); ++q) blk(p, q) = T(basis[p], basis[q]);
        bd.blocks[d] = blk;
        bd.basis[d] = std::move(basis);
    }
    return bd;
}

double inversion_scalar_cylinder(int N, int d, double u) {
    const double c = std::cos(u), s = std::sin(u);
    if (N % 2) return std::pow(c, 2 * N) - std::pow(s, 2 * N);
    const double sign = (d % 2) ? -1.0 : 1.0;
    return std::pow(c, 2 * N) + std::pow(s, 2 * N) + 2.0 * sign * std::pow(s * c, N);
}

Report verify_inversion_cylinder(int N, double u) {
    Report rep;
    rep.name = "inversion-cylinder N=" + std::to_string(N);
    const Mat prod = transfer_matrix(N, u) * transfer_matrix(N, u + kPi / 2);
    const auto bd = sector_decompose(prod, N);
    for (const auto& [d, blk] : bd.blocks) {
        const double sc = inversion_scalar_cylinder(N, d, u);
        const double res = max_abs(blk - sc * Mat::Identity(blk.rows(), blk.cols()));
        rep.check("d=" + std::to_string(d), res, 1e-10);
    }
    return rep;
}

Mat hamiltonian_cylinder(int N) {
    if (N < 2) throw std::invalid_argument("Hamiltonian needs N >= 2");
    Mat h = Mat::Zero(1 << N, 1 << N);
    for (int j = 1; j <= N; ++j) h -= tl_generator(N, j, true);
    return h;
}

namespace {

Mat braid_at(int N, double Y, int sign, const ModelParams& p) {
    const cplx u = cplx(0.0, sign * Y);
    return transfer_matrix(N, u, p) / std::pow(std::sin(u + kPi / 4), N);
}

}  // namespace

BraidResult braid_and_j(int N, const ModelParams& params) {
    BraidResult r;
    r.report.name = "braid N=" + std::to_string(N);
    ModelParams p = params;
    p.rho = 1.0;
    const double u = 0.3711;
    const int dim = 1 << N;
    const Mat I = Mat::Identity(dim, dim);
    const double c = std::cos(u), s = std::sin(u);
    const double scalar = std::pow(c, 2 * N) + ((N % 2) ? -1.0 : 1.0) * std::pow(s, 2 * N);
    r.J = (transfer_matrix(N, u, p) * transfer_matrix(N, u + kPi / 2, p) - scalar * I) / std::pow(s * c, N);

    // Corrections are even in e^{-Y}; eliminate the leading e^{-2Y} term.
    const double w8 = std::exp(16.0), w12 = std::exp(24.0);
    for (int sign : {1, -1}) {
        const Mat b8 = braid_at(N, 8.0, sign, p), b12 = braid_at(N, 12.0, sign, p);
        const Mat b = (w12 * b12 - w8 * b8) / (w12 - w8);
        r.richardson = std::max(r.richardson, max_abs(b - b12));
        (sign > 0 ? r.Bplus : r.Bminus) = b;
    }
    r.report.check("Richardson Y=8 vs Y=12", r.richardson, 1e-8);

    double jdiag = 0.0;
    for (int a = 0; a < dim; ++a) {
        double expect = 0.0;
        if (N % 2 == 0) expect = (popcount(a) % 2) ? -2.0 : 2.0;
        for (int b = 0; b < dim; ++b) jdiag = std::max(jdiag, std::abs(r.J(b, a) - (a == b ? expect : 0.0)));
    }
    r.report.check("J diagonal +-2 by d parity", jdiag, 1e-9);

    Mat target = 2.0 * I;
    if (N % 2 == 0) target += ((N / 2) % 2 ? -1.0 : 1.0) * r.J;
    r.report.check("(B+)^2", max_abs(r.Bplus * r.Bplus - target), 1e-10);
    r.report.check("(B-)^2", max_abs(r.Bminus * r.Bminus - target), 1e-10);
    return r;
}

Eigen::Matrix4d appendix_r(int b, int a, double u) {
    const double s = std::sin(u), c = std::cos(u);
    Eigen::Matrix4d m;
    if (b == 0 && a == 0) m << -s * c, 0, 0, 0, 0, c * c, 0, 0, 0, 1, -s * s, 0, 0, 0, 0, s * c;
    else if (b == 1 && a == 1) m << s * c, 0, 0, 0, 0, -s * s, 1, 0, 0, 0, c * c, 0, 0, 0, 0, -s * c;
    else if (b == 1 && a == 0) m << 0, 0, 0, 0, c, 0, 0, 0, c, 0, 0, 0, 0, -s, s, 0;
    else if (b == 0 && a == 1) m << 0, s, -s, 0, 0, 0, 0, c, 0, 0, 0, c, 0, 0, 0, 0;
    else throw std::invalid_argument("occupations must be 0 or 1");
    return m;
}

Eigen::Matrix4d appendix_s() {
    Eigen::Matrix4d m;
    m << 0, 0, 1, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 1, -1, 0;
    return m;
}

Eigen::Matrix4d appendix_s_inverse() {
    Eigen::Matrix4d m;
    m << 0, 0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0, -1, 0, 0;
    return m;
}

Eigen::Matrix4d appendix_triangular(int b, int a, double u) {
    const double s = std::sin(u), c = std::cos(u);
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    if (b == 0 && a == 0) {
        m.diagonal() << c * c, s * c, -s * c, -s * s;
        m(0, 3) = 1;
    } else if (b == 1 && a == 1) {
        m.diagonal() << c * c, -s * c, s * c, -s * s;
    } else if (b == 1 && a == 0) {
        m(0, 2) = c;
        m(1, 3) = s;
    } else {
        m(0, 1) = -c;
        m(2, 3) = s;
    }
    return m;
}

Report verify_appendix_a(double u, int max_n) {
    Report rep;
    rep.name = "appendix-a";
    const double tol = 1e-12;
    const Eigen::Matrix4d S = appendix_s(), Si = appendix_s_inverse();
    rep.check("S S^{-1} = I", (S * Si - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff(), tol);
    double tri = 0.0;
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a)
            tri = std::max(tri, (S * appendix_r(b, a, u) * Si - appendix_triangular(b, a, u)).cwiseAbs().maxCoeff());
    rep.check("S R S^{-1} triangular", tri, tol);

    for (int N = 1; N <= max_n; ++N) {
        const Mat prod = transfer_matrix(N, u) * transfer_matrix(N, u + kPi / 2);
        double res = 0.0;
        for (int a = 0; a < (1 << N); ++a) {
            for (int b = 0; b < (1 << N); ++b) {
                Eigen::Matrix4d P = Eigen::Matrix4d::Identity();
                for (int j = 1; j <= N; ++j) P = P * appendix_r(occ(b, j), occ(a, j), u);
                res = std::max(res, std::abs(prod(b, a) - P.trace()));
            }
        }
        rep.check("trace product N=" + std::to_string(N), res, tol);

        double inv = 0.0;
        for (int d = 0; d <= N; ++d) {
            // Triangular diagonals give the scalar directly.
            const double s = std::sin(u), c = std::cos(u);
            const double direct = std::pow(c * c, N) + std::pow(-s * s, N) +
                                  ((N - d) % 2 ? -1.0 : 1.0) * std::pow(s * c, N) + (d % 2 ? -1.0 : 1.0) * std::pow(s * c, N);
            inv = std::max(inv, std::abs(direct - inversion_scalar_cylinder(N, d, u)));
        }
        rep.check("diagonal sum = inversion scalar N=" + std::to_string(N), inv, tol);
    }
    return rep;
}

Report verify_commutation(int N, double u, double v) {
    Report rep;
    rep.name = "commutation N=" + std::to_string(N);
    const Mat a = transfer_matrix(N, u), b = transfer_matrix(N, v);
    rep.check("[T(u),T(v)]", max_abs(a * b - b * a), 1e-10);
    const Mat h = hamiltonian_cylinder(N);
    rep.check("[H,T(u)]", max_abs(h * a - a * h), 1e-10);
    return rep;
}

Report verify_crossing(int N, double u) {
    Report rep;
    rep.name = "crossing N=" + std::to_string(N);
    const Mat a = transfer_matrix(N, u);
    rep.check("T(u)^T = T(pi/2-u)", max_abs(Mat(a.transpose()) - transfer_matrix(N, kPi / 2 - u)), 1e-12);
    rep.check("normal", max_abs(a * a.adjoint() - a.adjoint() * a), 1e-10);
    return rep;
}

Report verify_sector_degeneracy(int N, double u) {
    Report rep;
    rep.name = "degeneracy N=" + std::to_string(N);
    const auto bd = sector_decompose(transfer_matrix(N, u), N);
    for (int d = 0; 2 * d < N; ++d) {
        Eigen::ComplexEigenSolver<Mat> e1(bd.blocks.at(d), false), e2(bd.blocks.at(N - d), false);
        std::vector<cplx> x(e1.eigenvalues().data(), e1.eigenvalues().data() + e1.eigenvalues().size());
        std::vector<cplx> y(e2.eigenvalues().data(), e2.eigenvalues().data() + e2.eigenvalues().size());
        double worst = 0.0;
        std::vector<bool> used(y.size(), false);
        for (const auto& v : x) {
            double best = 1e300;
            std::size_t bi = 0;
            for (std::size_t k = 0; k < y.size(); ++k)
                if (!used[k] && std::abs(v - y[k]) < best) best = std::abs(v - y[k]), bi = k;
            used[bi] = true;
            worst = std::max(worst, best);
        }
        rep.check("d=" + std::to_string(d) + " vs " + std::to_string(N - d), worst, 1e-9);
    }
    return rep;
}

LogDerivativeDiagnostic log_derivative_diagnostic(int N, double u_probe) {
    LogDerivativeDiagnostic out;
    const double h = 1e-6;
    const Mat t0 = transfer_matrix(N, 0.0);
    const Mat dt = (transfer_matrix(N, h) - transfer_matrix(N, -h)) / (2 * h);
    Eigen::FullPivLU<Mat> lu(t0);
    out.invertible = lu.isInvertible();
    if (!out.invertible) return out;
    const Mat L = lu.solve(dt);
    const Mat t = transfer_matrix(N, u_probe);
    out.commutator = max_abs(L * t - t * L);
    const int dim = 1 << N;
    Mat e = Mat::Zero(dim, dim);
    for (int j = 1; j <= N; ++j) e += tl_generator(N, j, true);
    out.trace_part = L.trace() / double(dim);
    const Mat traceless = L - out.trace_part * Mat::Identity(dim, dim);
    out.traceless_deviation = max_abs(traceless - e);
    out.deviation_from_minus = max_abs(traceless + e);
    return out;
}

}  // namespace fermidim
