#include "fermidim/strip.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "fermidim/cylinder.hpp"
#include "fermidim/model_core.hpp"
#include "fermidim/operator_algebra.hpp"

namespace fermidim {

Mat double_row_transfer(int N, cplx u, LeftArc arcs) {
    if (N < 2 || N > kDenseCap) throw std::invalid_argument("strip size outside [2, 12]");
    const cplx s2 = std::sin(2.0 * u);
    if (std::abs(s2) < 1e-12) throw std::domain_error("sin 2u vanishes; use the limit");
    const FaceTensor lower = face_tensor(free_fermion_weights(u, 1.0, std::exp(-kI * u)), Orientation::odd);
    const FaceTensor upper = face_tensor(free_fermion_weights(u, 1.0, std::exp(kI * u)), Orientation::even);
    const auto L = open_row(lower, N);
    const auto U = open_row(upper, N);
    const cplx x = kI;
    const cplx left[2] = {arcs == LeftArc::standard ? x : 1.0 / x, arcs == LeftArc::standard ? 1.0 / x : x};
    const int dim = 1 << N;
    Mat D = Mat::Zero(dim, dim);
    for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) D += left[p] * (U[p + 2 * q] * L[p + 2 * q]);
    return D / s2;
}

cplx strip_inversion_scalar(int N, cplx u) {
    const cplx c = std::cos(u), s = std::sin(u);
    const cplx c2 = c * c, sn2 = s * s;
    if (std::abs(c2 - sn2) < 1e-7) {
        // Geometric sum form near u = pi/4.
        cplx sum = 0.0;
        for (int k = 0; k < N; ++k) sum += std::pow(c2, N - 1 - k) * std::pow(sn2, k);
        return sum * sum;
    }
    const cplx r = (std::pow(c, 2 * N) - std::pow(s, 2 * N)) / (c2 - sn2);
    return r * r;
}

Mat strip_hamiltonian(int N) {
    if (N < 2) throw std::invalid_argument("strip Hamiltonian needs N >= 2");
    Mat H = Mat::Zero(1 << N, 1 << N);
    for (int j = 1; j < N; ++j) H -= tl_generator(N, j);
    return H;
}

Mat strip_hamiltonian_fermionic(int N) {
    if (N < 2) throw std::invalid_argument("strip Hamiltonian needs N >= 2");
    Mat H = Mat::Zero(1 << N, 1 << N);
    for (int j = 1; j < N; ++j) {
        H -= fermion_operator(N, j, FermionKind::create) * fermion_operator(N, j + 1, FermionKind::annihilate);
        H -= fermion_operator(N, j + 1, FermionKind::create) * fermion_operator(N, j, FermionKind::annihilate);
    }
    H -= kI * (fermion_operator(N, 1, FermionKind::number) - fermion_operator(N, N, FermionKind::number));
    return H;
}

Report verify_strip_hamiltonian(int N) {
    Report rep;
    rep.name = "strip hamiltonian N=" + std::to_string(N);
    const Mat H = strip_hamiltonian(N);
    rep.check("tile form = fermionic form", max_abs(H - strip_hamiltonian_fermionic(N)), 1e-14);
    Eigen::ComplexEigenSolver<Mat> es(H, false);
    double im = 0.0;
    for (int k = 0; k < es.eigenvalues().size(); ++k) im = std::max(im, std::abs(es.eigenvalues()[k].imag()));
    // Defective eigenvalues split by O(sqrt(eps)) under floating perturbation.
    rep.check("spectrum real", im, 1e-6);
    return rep;
}

Report verify_strip_inversion(int N, double u) {
    Report rep;
    rep.name = "strip inversion N=" + std::to_string(N);
    const Mat D1 = double_row_transfer(N, u);
    const Mat D2 = double_row_transfer(N, u + kPi / 2);
    const cplx s = strip_inversion_scalar(N, u);
    const Mat I = Mat::Identity(1 << N, 1 << N);
    rep.check("D(u) D(u + pi/2) = scalar I", max_abs(D1 * D2 - s * I) / std::max(1.0, std::abs(s)), 1e-10);
    return rep;
}

Report verify_strip_commutation(int N, double u, double v) {
    Report rep;
    rep.name = "strip commutation N=" + std::to_string(N);
    const Mat Du = double_row_transfer(N, u), Dv = double_row_transfer(N, v);
    const Mat H = strip_hamiltonian(N);
    const double scale = std::max(1.0, max_abs(Du) * max_abs(Dv));
    rep.check("[D(u), D(v)]", max_abs(Du * Dv - Dv * Du) / scale, 1e-10);
    rep.check("[H, D(u)]", max_abs(H * Du - Du * H) / std::max(1.0, max_abs(Du)), 1e-10);
    return rep;
}

DerivativeCheck verify_hamiltonian_derivative(int N, LeftArc arcs, double h) {
    if (N < 2 || N > 8) throw std::invalid_argument("derivative check limited to 2 <= N <= 8");
    DerivativeCheck out;
    out.report.name = std::string("strip hamiltonian derivative N=") + std::to_string(N) +
                      (arcs == LeftArc::standard ? "" : " (mirrored arcs)");
    const int dim = 1 << N;
    const Mat I = Mat::Identity(dim, dim);
    const Mat Dp = double_row_transfer(N, h, arcs), Dm = double_row_transfer(N, -h, arcs);
    out.d0_deviation = max_abs(0.5 * (Dp + Dm) - I);
    if (Eigen::FullPivLU<Mat>(Dp).rank() < dim || Eigen::FullPivLU<Mat>(Dm).rank() < dim)
        throw std::runtime_error("D near u = 0 is not invertible");
    const Mat Hd = -0.5 * (Mat(Dp.log()) - Mat(Dm.log())) / (2.0 * h);
    const Mat diff = Hd - strip_hamiltonian(N);
    out.offset = diff.trace() / double(dim);
    out.residual = max_abs(diff - out.offset * I);
    out.report.entries.emplace_back("D(0) deviation", out.d0_deviation);
    out.report.entries.emplace_back("scalar offset", std::abs(out.offset));
    out.report.check("-1/2 dlog D(0) = H up to a scalar", out.residual, 1e-5);
    return out;
}

Report strip_string_diagnostic(int N) {
    Report rep;
    rep.name = "strip 1-string ordinates N=" + std::to_string(N);
    double worst = 0.0;
    // u = pi/4 + i w with w = -1/2 log tan(E pi / 2N), E < N/2.
    for (int j = 1;; ++j) {
        const double E = (N % 2) ? j - 0.5 : j;
        if (2 * E >= N) break;
        const double w = -0.5 * std::log(std::tan(E * kPi / (2 * N)));
        for (double sgn : {1.0, -1.0}) {
            const cplx u(kPi / 4, sgn * w);
            const cplx c = std::cos(u), s = std::sin(u);
            const cplx f = (std::pow(c, 2 * N) - std::pow(s, 2 * N)) / (c * c - s * s);
            worst = std::max(worst, std::abs(f));
        }
    }
    rep.check("scalar vanishes at predicted ordinates", worst, 1e-10);
    return rep;
}

int JordanSpectrum::total() const {
    int t = 0;
    for (const auto& e : entries)
        for (int b : e.blocks) t += b;
    return t;
}

const JordanEntry* JordanSpectrum::find(cplx lambda, double tol) const {
    for (const auto& e : entries)
        if (std::abs(e.eigenvalue - lambda) < tol) return &e;
    return nullptr;
}

std::vector<int> blocks_from_ranks(const std::vector<int>& ranks) {
    std::vector<int> at_least;  // at_least[k-1] = #blocks of size >= k
    for (std::size_t k = 1; k < ranks.size(); ++k) at_least.push_back(ranks[k - 1] - ranks[k]);
    std::vector<int> blocks;
    for (std::size_t k = 0; k < at_least.size(); ++k) {
        const int next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
        for (int c = 0; c < at_least[k] - next; ++c) blocks.push_back(static_cast<int>(k + 1));
    }
    std::sort(blocks.rbegin(), blocks.rend());
    return blocks;
}

namespace {

struct Cluster {
    cplx center;
    int size = 0;
};

std::vector<Cluster> cluster_eigenvalues(const Mat& H) {
    Eigen::ComplexEigenSolver<Mat> es(H, false);
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    std::vector<Cluster> out;
    std::vector<bool> used(ev.size(), false);
    for (std::size_t i = 0; i < ev.size(); ++i) {
        if (used[i]) continue;
        cplx sum = 0.0;
        int n = 0;
        for (std::size_t j = i; j < ev.size(); ++j)
            if (!used[j] && std::abs(ev[j] - ev[i]) < 1e-6) used[j] = true, sum += ev[j], ++n;
        out.push_back({sum / double(n), n});
    }
    return out;
}

int numeric_rank(const Mat& A, double threshold) {
    Eigen::JacobiSVD<Mat> svd(A);
    int r = 0;
    for (int k = 0; k < svd.singularValues().size(); ++k) r += svd.singularValues()[k] > threshold;
    return r;
}

}  // namespace

JordanSpectrum jordan_structure(const Mat& H, JordanMode mode, double tol) {
    if (H.rows() != H.cols()) throw std::invalid_argument("Jordan structure needs a square matrix");
    const int n = static_cast<int>(H.rows());
    if (mode == JordanMode::exact && n > 16) throw std::invalid_argument("exact mode limited to dimension 16");
    if (mode == JordanMode::numeric && n > 256) throw std::invalid_argument("numeric mode limited to dimension 256");
    JordanSpectrum js;
    js.dim = n;
    js.exact = mode == JordanMode::exact;
    const auto clusters = cluster_eigenvalues(H);

    if (mode == JordanMode::numeric) {
        const double norm = std::max(1.0, Eigen::JacobiSVD<Mat>(H).singularValues()[0]);
        const Mat I = Mat::Identity(n, n);
        for (const auto& c : clusters) {
            const Mat A = H - c.center * I;
            std::vector<int> ranks{n};
            Mat P = I;
            for (int k = 1; k <= c.size + 1; ++k) {
                P = P * A;
                ranks.push_back(numeric_rank(P, tol * std::pow(norm, k)));
                if (ranks[k] == ranks[k - 1]) break;
            }
            if (n - ranks.back() != c.size) {
                std::ostringstream os;
                os << "ill-conditioned eigenvalue cluster near " << c.center << "; use exact mode";
                throw std::runtime_error(os.str());
            }
            JordanEntry e;
            e.eigenvalue = c.center;
            e.blocks = blocks_from_ranks(ranks);
            js.entries.push_back(e);
        }
        return js;
    }

    const QMat Hq = to_qmat(H);
    for (const auto& c : clusters) {
        QI2 lam;
        if (!snap_to_field(c.center, lam, 12, 1e-7)) throw std::runtime_error("eigenvalue outside Q(i, sqrt2)");
        const QMat A = qmat_sub(Hq, qmat_scaled_identity(n, lam));
        std::vector<int> ranks{n};
        QMat P = qmat_identity(n);
        for (int k = 1; k <= n; ++k) {
            P = qmat_mul(P, A);
            ranks.push_back(qmat_rank(P));
            if (ranks[k] == ranks[k - 1]) break;
        }
        JordanEntry e;
        e.eigenvalue = lam.to_complex();
        e.exact = lam.to_string();
        e.blocks = blocks_from_ranks(ranks);
        js.entries.push_back(e);
    }
    if (js.total() != n) throw std::runtime_error("exact Jordan blocks do not account for the full space");
    return js;
}

}  // namespace fermidim
