#pragma once

#include <array>
#include <vector>

#include "fermidim/common.hpp"

namespace fermidim {

struct ModelParams {
    double lambda = kPi / 2;
    double u = 0.0;
    double rho = 1.0;
    cplx g = 1.0;

    cplx x() const { return std::exp(kI * lambda); }
    cplx z() const { return std::exp(kI * u); }
    bool free_fermion() const;
    void validate() const;

    // rho = g = sqrt(2) at u = pi/4: integer weights (1, 1, 2, 1).
    static ModelParams isotropic();
};

struct FaceWeights {
    cplx a, b, c1, c2;
};

FaceWeights face_weights(const ModelParams& params);

// Free-fermion weights at complex spectral parameter (braid limits).
FaceWeights free_fermion_weights(cplx u, double rho = 1.0, cplx g = 1.0);

enum class Orientation { odd, even };

// Entries indexed by the occupations (bottom, left, top, right) of a face.
struct FaceTensor {
    Orientation orientation = Orientation::odd;
    std::array<cplx, 16> w{};

    static int index(int bottom, int left, int top, int right) {
        return bottom | (left << 1) | (top << 2) | (right << 3);
    }
    cplx operator()(int bottom, int left, int top, int right) const {
        return w[index(bottom, left, top, right)];
    }
    int nonzero_count() const;
};

FaceTensor face_tensor(const FaceWeights& weights, Orientation orientation);

enum class TileType { a_empty, a_full, b_vertical, b_horizontal, c1, c2 };

// Tile of an allowed odd-row face; throws for a forbidden occupation pattern.
TileType classify_tile(int bottom, int left, int top, int right);

enum class MedialSite { bottom, left, top, right };
enum class DimerKind { horizontal, vertical };

struct Dimer {
    MedialSite first, second;
    DimerKind kind;
};

struct DimerPlacement {
    int row = 0, col = 0;
    std::vector<Dimer> dimers;
    int multiplicity = 1;

    // zeta_h = a and zeta_v = b per dimer.
    cplx weight(const FaceWeights& w) const;
};

std::vector<DimerPlacement> dimer_expansion(int bottom, int left, int top, int right, int row = 0,
                                            int col = 0);

// Occupations of the medial edges of an M x N torus.
// vertical[r * N + j]: edge below face (r, j); the edge above is vertical[((r + 1) % M) * N + j].
// horizontal[r * N + j]: edge left of face (r, j); the edge right of it is horizontal[r * N + (j + 1) % N].
struct ArrowConfig {
    int M = 0, N = 0;
    std::vector<int> vertical, horizontal;

    static ArrowConfig from_bits(int M, int N, std::uint64_t bits);
};

cplx configuration_weight(int M, int N, const ArrowConfig& config, const ModelParams& params);

// Sum of configuration_weight over all 4^{MN} torus configurations (MN <= 10).
cplx torus_partition_sum(int M, int N, const ModelParams& params);

}  // namespace fermidim
