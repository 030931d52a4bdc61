#include <gtest/gtest.h>

#include "fermidim/model_core.hpp"

using namespace fermidim;

TEST(ModelParams, CrossingParameter) {
    ModelParams p;
    EXPECT_NEAR(std::abs(p.x() - kI), 0.0, 1e-15);
    p.lambda = 1.1;
    EXPECT_NEAR(std::abs(p.x() + 1.0 / p.x() - 2 * std::cos(1.1)), 0.0, 1e-14);
    EXPECT_FALSE(p.free_fermion());
    p.lambda = 0.0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(FaceWeights, IsotropicPoint) {
    const FaceWeights w = face_weights(ModelParams::isotropic());
    EXPECT_NEAR(std::abs(w.a - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(w.b - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(w.c1 - 2.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(w.c2 - 1.0), 0.0, 1e-14);
}

TEST(FaceWeights, ZeroSpectralParameter) {
    const FaceWeights w = face_weights(ModelParams{});
    EXPECT_NEAR(std::abs(w.a - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(w.b), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(w.c1 - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(w.c2 - 1.0), 0.0, 1e-15);
}

TEST(FaceWeights, FreeFermionCondition) {
    ModelParams p;
    p.u = 0.3;
    p.rho = 1.7;
    p.g = 2.0;
    const FaceWeights w = face_weights(p);
    EXPECT_LE(std::abs(w.a * w.a + w.b * w.b - w.c1 * w.c2), 1e-14);
    EXPECT_LE(std::abs(w.c1 * w.c2 - p.rho * p.rho), 1e-14);
}

TEST(FaceTensor, EntriesAndConservation) {
    const FaceTensor F = face_tensor(face_weights(ModelParams::isotropic()), Orientation::odd);
    EXPECT_NEAR(std::abs(F(1, 0, 0, 1) - 2.0), 0.0, 1e-14);
    EXPECT_EQ(F(1, 1, 0, 0), cplx(0.0));
    EXPECT_EQ(F.nonzero_count(), 6);
    for (int b = 0; b < 2; ++b)
        for (int l = 0; l < 2; ++l)
            for (int t = 0; t < 2; ++t)
                for (int r = 0; r < 2; ++r)
                    if (F(b, l, t, r) != cplx(0.0)) EXPECT_EQ(b + l, t + r);
}

TEST(FaceTensor, EvenIsMirror) {
    ModelParams p;
    p.u = 0.4;
    p.g = cplx(0.3, 1.2);
    const FaceWeights w = face_weights(p);
    const FaceTensor odd = face_tensor(w, Orientation::odd), even = face_tensor(w, Orientation::even);
    for (int b = 0; b < 2; ++b)
        for (int l = 0; l < 2; ++l)
            for (int t = 0; t < 2; ++t)
                for (int r = 0; r < 2; ++r) EXPECT_EQ(even(b, l, t, r), odd(b, r, t, l));
}

TEST(FaceTensor, ZeroParameterIsIdentityOnBottomEqualsTop) {
    // a and c-type entries carry the straight-through paths at u = 0; b vanishes.
    const FaceTensor F = face_tensor(face_weights(ModelParams{}), Orientation::odd);
    EXPECT_EQ(F(1, 0, 1, 0), cplx(0.0));
    EXPECT_EQ(F(0, 1, 0, 1), cplx(0.0));
    EXPECT_EQ(F(0, 0, 0, 0), cplx(1.0));
    EXPECT_EQ(F(1, 1, 1, 1), cplx(1.0));
}

TEST(Tiles, Classification) {
    EXPECT_EQ(classify_tile(0, 0, 0, 0), TileType::a_empty);
    EXPECT_EQ(classify_tile(1, 0, 0, 1), TileType::c1);
    EXPECT_EQ(classify_tile(0, 1, 1, 0), TileType::c2);
    EXPECT_THROW(classify_tile(1, 1, 0, 0), std::invalid_argument);
}

TEST(DimerExpansion, Multiplicities) {
    const auto c1 = dimer_expansion(1, 0, 0, 1);
    ASSERT_EQ(c1.size(), 2u);
    EXPECT_EQ(c1[0].multiplicity, 2);
    const auto c2 = dimer_expansion(0, 1, 1, 0);
    ASSERT_EQ(c2.size(), 1u);
    EXPECT_TRUE(c2[0].dimers.empty());
    const auto a = dimer_expansion(0, 0, 0, 0);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0].dimers.size(), 1u);
    EXPECT_THROW(dimer_expansion(1, 1, 0, 0), std::invalid_argument);
}

TEST(DimerExpansion, PlacementWeightsReproduceTiles) {
    const FaceWeights w = face_weights(ModelParams::isotropic());
    const int pats[6][4] = {{0, 0, 0, 0}, {1, 1, 1, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 0, 1}, {0, 1, 1, 0}};
    const FaceTensor F = face_tensor(w, Orientation::odd);
    for (const auto& p : pats) {
        cplx total = 0.0;
        for (const auto& pl : dimer_expansion(p[0], p[1], p[2], p[3])) total += pl.weight(w);
        EXPECT_NEAR(std::abs(total - F(p[0], p[1], p[2], p[3])), 0.0, 1e-14);
    }
}

TEST(Configuration, SimpleWeights) {
    const ModelParams iso = ModelParams::isotropic();
    ArrowConfig empty = ArrowConfig::from_bits(1, 1, 0);
    EXPECT_NEAR(std::abs(configuration_weight(1, 1, empty, iso) - 1.0), 0.0, 1e-14);
    ArrowConfig one = ArrowConfig::from_bits(2, 2, 0);
    one.vertical[0] = 1;
    EXPECT_EQ(configuration_weight(2, 2, one, iso), cplx(0.0));
}

TEST(Configuration, TorusSums) {
    const ModelParams iso = ModelParams::isotropic();
    EXPECT_NEAR(std::abs(torus_partition_sum(1, 1, iso) - 4.0), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(torus_partition_sum(1, 2, iso) - 8.0), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(torus_partition_sum(2, 2, iso) - 24.0), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(torus_partition_sum(2, 3, iso) - 80.0), 0.0, 1e-9);
}
