#include "fermidim/model_core.hpp"

#include <cmath>
#include <stdexcept>

namespace fermidim {

bool ModelParams::free_fermion() const { return std::abs(lambda - kPi / 2) < 1e-15; }

void ModelParams::validate() const {
    if (!(lambda > 0.0 && lambda < kPi)) throw std::invalid_argument("lambda must lie in (0, pi)");
    if (!std::isfinite(rho)) throw std::invalid_argument("rho must be finite");
    if (g == cplx(0.0)) throw std::invalid_argument("gauge g must be nonzero");
}

ModelParams ModelParams::isotropic() {
    ModelParams p;
    p.u = kPi / 4;
    p.rho = std::sqrt(2.0);
    p.g = std::sqrt(2.0);
    return p;
}

FaceWeights face_weights(const ModelParams& p) {
    p.validate();
    FaceWeights w;
    if (p.free_fermion()) {
        w.a = p.rho * std::cos(p.u);
        w.b = p.rho * std::sin(p.u);
    } else {
        w.a = p.rho * std::sin(p.lambda - p.u) / std::sin(p.lambda);
        w.b = p.rho * std::sin(p.u) / std::sin(p.lambda);
    }
    w.c1 = p.rho * p.g;
    w.c2 = p.rho / p.g;
    return w;
}

FaceWeights free_fermion_weights(cplx u, double rho, cplx g) {
    if (g == cplx(0.0)) throw std::invalid_argument("gauge g must be nonzero");
    return {rho * std::cos(u), rho * std::sin(u), rho * g, rho / g};
}

int FaceTensor::nonzero_count() const {
    int n = 0;
    for (const auto& v : w) n += (v != cplx(0.0));
    return n;
}

FaceTensor face_tensor(const FaceWeights& wt, Orientation orientation) {
    FaceTensor odd;
    odd.w[FaceTensor::index(0, 0, 0, 0)] = wt.a;
    odd.w[FaceTensor::index(1, 1, 1, 1)] = wt.a;
    odd.w[FaceTensor::index(1, 0, 1, 0)] = wt.b;
    odd.w[FaceTensor::index(0, 1, 0, 1)] = wt.b;
    odd.w[FaceTensor::index(1, 0, 0, 1)] = wt.c1;
    odd.w[FaceTensor::index(0, 1, 1, 0)] = wt.c2;
    if (orientation == Orientation::odd) return odd;

    FaceTensor even;
    even.orientation = Orientation::even;
    for (int b = 0; b < 2; ++b)
        for (int l = 0; l < 2; ++l)
            for (int t = 0; t < 2; ++t)
                for (int r = 0; r < 2; ++r) even.w[FaceTensor::index(b, l, t, r)] = odd(b, r, t, l);
    return even;
}

TileType classify_tile(int b, int l, int t, int r) {
    switch (FaceTensor::index(b, l, t, r)) {
        case 0b0000: return TileType::a_empty;
        case 0b1111: return TileType::a_full;
        case 0b0101: return TileType::b_vertical;    // (1,0,1,0)
        case 0b1010: return TileType::b_horizontal;  // (0,1,0,1)
        case 0b1001: return TileType::c1;            // (1,0,0,1)
        case 0b0110: return TileType::c2;            // (0,1,1,0)
        default: throw std::invalid_argument("forbidden face tile");
    }
}

cplx DimerPlacement::weight(const FaceWeights& w) const {
    cplx p = 1.0;
    for (const auto& d : dimers) p *= (d.kind == DimerKind::horizontal ? w.a : w.b);
    return p;
}

std::vector<DimerPlacement> dimer_expansion(int b, int l, int t, int r, int row, int col) {
    using MS = MedialSite;
    const Dimer h1{MS::left, MS::bottom, DimerKind::horizontal};
    const Dimer h2{MS::top, MS::right, DimerKind::horizontal};
    const Dimer v1{MS::bottom, MS::right, DimerKind::vertical};
    const Dimer v2{MS::left, MS::top, DimerKind::vertical};

    auto one = [&](std::vector<Dimer> ds, int mult) {
        DimerPlacement p;
        p.row = row;
        p.col = col;
        p.dimers = std::move(ds);
        p.multiplicity = mult;
        return p;
    };
    switch (classify_tile(b, l, t, r)) {
        case TileType::a_empty: return {one({h1}, 1)};
        case TileType::a_full: return {one({h2}, 1)};
        case TileType::b_vertical: return {one({v1}, 1)};
        case TileType::b_horizontal: return {one({v2}, 1)};
        case TileType::c1: return {one({h1, h2}, 2), one({v1, v2}, 2)};
        case TileType::c2: return {one({}, 1)};
    }
    return {};
}

ArrowConfig ArrowConfig::from_bits(int M, int N, std::uint64_t bits) {
    ArrowConfig c;
    c.M = M;
    c.N = N;
    c.vertical.resize(M * N);
    c.horizontal.resize(M * N);
    for (int k = 0; k < M * N; ++k) {
        c.vertical[k] = static_cast<int>((bits >> k) & 1u);
        c.horizontal[k] = static_cast<int>((bits >> (M * N + k)) & 1u);
    }
    return c;
}

cplx configuration_weight(int M, int N, const ArrowConfig& c, const ModelParams& params) {
    if (M < 1 || N < 1 || c.M != M || c.N != N || static_cast<int>(c.vertical.size()) != M * N ||
        static_cast<int>(c.horizontal.size()) != M * N)
        throw std::invalid_argument("arrow configuration dimension mismatch");
    const FaceTensor F = face_tensor(face_weights(params), Orientation::odd);
    cplx w = 1.0;
    for (int r = 0; r < M; ++r) {
        for (int j = 0; j < N; ++j) {
            const int bottom = c.vertical[r * N + j];
            const int top = c.vertical[((r + 1) % M) * N + j];
            const int left = c.horizontal[r * N + j];
            const int right = c.horizontal[r * N + (j + 1) % N];
            w *= F(bottom, left, top, right);
            if (w == cplx(0.0)) return w;
        }
    }
    return w;
}

cplx torus_partition_sum(int M, int N, const ModelParams& params) {
    if (M * N > 10) throw std::invalid_argument("torus enumeration limited to MN <= 10");
    cplx z = 0.0;
    const std::uint64_t total = 1ull << (2 * M * N);
    for (std::uint64_t bits = 0; bits < total; ++bits)
        z += configuration_weight(M, N, ArrowConfig::from_bits(M, N, bits), params);
    return z;
}

}  // namespace fermidim
