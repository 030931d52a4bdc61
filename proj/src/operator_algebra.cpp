#include "fermidim/operator_algebra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fermidim {

namespace {

void check_size(int N) {
    if (N < 1 || N > kDenseCap) throw std::invalid_argument("N outside dense operator range");
}

Mat identity(int N) { return Mat::Identity(1 << N, 1 << N); }

Mat anticomm(const Mat& a, const Mat& b) { return a * b + b * a; }

}  // namespace

Mat fermion_operator(int N, int j, FermionKind kind) {
    check_size(N);
    if (j < 1 || j > N) throw std::invalid_argument("site index out of range");
    const int dim = 1 << N;
    const std::uint32_t bit = 1u << (j - 1);
    const std::uint32_t below = bit - 1;
    Mat m = Mat::Zero(dim, dim);
    for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(dim); ++s) {
        const double sign = (popcount(s & below) % 2) ? -1.0 : 1.0;
        switch (kind) {
            case FermionKind::create:
                if (!(s & bit)) m(s | bit, s) = sign;
                break;
            case FermionKind::annihilate:
                if (s & bit) m(s & ~bit, s) = sign;
                break;
            case FermionKind::number:
                if (s & bit) m(s, s) = 1.0;
                break;
        }
    }
    return m;
}

Mat tl_generator(int N, int j, bool periodic) {
    check_size(N);
    if (j < 1 || j > N) throw std::invalid_argument("generator index out of range");
    if (j == N && !periodic) throw std::invalid_argument("e_N requires periodic closure");
    if (N < 2) throw std::invalid_argument("generator needs two sites");
    const cplx x = kI;
    const int dim = 1 << N;
    const std::uint32_t p = 1u << (j - 1);
    const std::uint32_t q = 1u << (j % N);
    Mat m = Mat::Zero(dim, dim);
    for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(dim); ++s) {
        const bool ap = s & p, aq = s & q;
        if (ap == aq) continue;
        const std::uint32_t swapped = s ^ p ^ q;
        m(s, s) = ap ? x : 1.0 / x;
        m(swapped, s) = 1.0;
    }
    return m;
}

Mat tl_generator_fermionic(int N, int j) {
    if (j < 1 || j >= N) throw std::invalid_argument("fermionic form defined for 1 <= j < N");
    const cplx x = kI;
    const Mat nj = fermion_operator(N, j, FermionKind::number);
    const Mat nk = fermion_operator(N, j + 1, FermionKind::number);
    const Mat cj = fermion_operator(N, j, FermionKind::create);
    const Mat aj = fermion_operator(N, j, FermionKind::annihilate);
    const Mat ck = fermion_operator(N, j + 1, FermionKind::create);
    const Mat ak = fermion_operator(N, j + 1, FermionKind::annihilate);
    return x * nj + (1.0 / x) * nk + cj * ak + ck * aj;
}

Mat face_operator(int N, int j, double u, const ModelParams& params, bool periodic) {
    if (!params.free_fermion()) throw std::invalid_argument("face operators need lambda = pi/2");
    return params.rho * (std::cos(u) * identity(N) + std::sin(u) * tl_generator(N, j, periodic));
}

Report verify_algebra(int N) {
    Report rep;
    rep.name = "algebra N=" + std::to_string(N);
    if (N < 2) throw std::invalid_argument("verify_algebra needs N >= 2");
    const double tol = 1e-13;
    const Mat I = identity(N);
    std::vector<Mat> c(N + 1), a(N + 1);
    for (int j = 1; j <= N; ++j) {
        c[j] = fermion_operator(N, j, FermionKind::create);
        a[j] = fermion_operator(N, j, FermionKind::annihilate);
    }
    double car = 0.0;
    for (int j = 1; j <= N; ++j) {
        car = std::max(car, max_abs(c[j] * a[j] - fermion_operator(N, j, FermionKind::number)));
        for (int k = 1; k <= N; ++k) {
            car = std::max(car, max_abs(anticomm(a[j], a[k])));
            car = std::max(car, max_abs(anticomm(c[j], c[k])));
            car = std::max(car, max_abs(anticomm(a[j], c[k]) - (j == k ? I : Mat::Zero(I.rows(), I.cols()))));
        }
    }
    rep.check("CAR", car, tol);

    for (int periodic = 0; periodic < 2; ++periodic) {
        const int top = periodic ? N : N - 1;
        if (periodic && N < 3) continue;
        std::vector<Mat> e(top + 1);
        for (int j = 1; j <= top; ++j) e[j] = tl_generator(N, j, periodic);
        double sq = 0.0, braid = 0.0, far = 0.0;
        for (int j = 1; j <= top; ++j) {
            sq = std::max(sq, max_abs(e[j] * e[j]));
            for (int k = 1; k <= top; ++k) {
                int dist = std::abs(j - k);
                if (periodic) dist = std::min(dist, N - dist);
                if (dist == 1) braid = std::max(braid, max_abs(e[j] * e[k] * e[j] - e[j]));
                if (dist >= 2) far = std::max(far, max_abs(e[j] * e[k] - e[k] * e[j]));
            }
        }
        const std::string tag = periodic ? " periodic" : " open";
        rep.check("TL e^2=0" + tag, sq, tol);
        rep.check("TL eee=e" + tag, braid, tol);
        rep.check("TL commute" + tag, far, tol);
    }

    double forms = 0.0;
    for (int j = 1; j < N; ++j) forms = std::max(forms, max_abs(tl_generator(N, j) - tl_generator_fermionic(N, j)));
    rep.check("tile form = fermion bilinear", forms, tol);
    return rep;
}

Report verify_ybe(int N, double u, double v) {
    if (N < 3) throw std::invalid_argument("YBE needs N >= 3");
    Report rep;
    rep.name = "ybe N=" + std::to_string(N);
    const double tol = 1e-12;
    double worst = 0.0;
    for (int j = 1; j + 1 <= N - 1; ++j) {
        const Mat lhs = face_operator(N, j, u) * face_operator(N, j + 1, u + v) * face_operator(N, j, v);
        const Mat rhs = face_operator(N, j + 1, v) * face_operator(N, j, u + v) * face_operator(N, j + 1, u);
        worst = std::max(worst, max_abs(lhs - rhs));
    }
    rep.check("X_j X_{j+1} X_j = X_{j+1} X_j X_{j+1}", worst, tol);

    double inv = 0.0, init = 0.0;
    for (int j = 1; j <= N - 1; ++j) {
        inv = std::max(inv, max_abs(face_operator(N, j, u) * face_operator(N, j, -u) -
                                    std::cos(u) * std::cos(u) * identity(N)));
        init = std::max(init, max_abs(face_operator(N, j, 0.0) - identity(N)));
    }
    rep.check("inversion X(u)X(-u)=cos^2 u", inv, tol);
    rep.check("X(0)=I", init, tol);
    return rep;
}

std::vector<SectorDeviation> periodic_hamiltonian_sector_report(int N) {
    if (N < 3) throw std::invalid_argument("sector report needs N >= 3");
    Mat tile = Mat::Zero(1 << N, 1 << N);
    for (int j = 1; j <= N; ++j) tile -= tl_generator(N, j, true);
    Mat open = Mat::Zero(1 << N, 1 << N);
    for (int j = 1; j < N; ++j) {
        open -= fermion_operator(N, j, FermionKind::create) * fermion_operator(N, j + 1, FermionKind::annihilate);
        open -= fermion_operator(N, j + 1, FermionKind::create) * fermion_operator(N, j, FermionKind::annihilate);
    }
    const Mat wrap = -(fermion_operator(N, N, FermionKind::create) * fermion_operator(N, 1, FermionKind::annihilate) +
                       fermion_operator(N, 1, FermionKind::create) * fermion_operator(N, N, FermionKind::annihilate));
    const Mat fermionic = open + wrap;

    std::vector<SectorDeviation> out;
    for (int d = 0; d <= N; ++d) {
        std::vector<int> basis;
        for (int s = 0; s < (1 << N); ++s)
            if (popcount(s) == d) basis.push_back(s);
        auto restricted = [&](const Mat& m) {
            Mat r(basis.size(), basis.size());
            for (size_t p = 0; p < basis.size(); ++p)
                for (size_t q = 0; q < basis.size(); ++q) r(p, q) = m(basis[p], basis[q]);
            return r;
        };
        SectorDeviation sd;
        sd.d = d;
        sd.residual = max_abs(restricted(tile - fermionic));
        if (max_abs(restricted(tile - (open + wrap))) < 1e-13) sd.boundary_sign = 1;
        else if (max_abs(restricted(tile - (open - wrap))) < 1e-13) sd.boundary_sign = -1;
        out.push_back(sd);
    }
    return out;
}

}  // namespace fermidim
