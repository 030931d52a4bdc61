#include <gtest/gtest.h>

#include "fermidim/cylinder.hpp"
#include "fermidim/operator_algebra.hpp"

using namespace fermidim;

TEST(Sectors, Labels) {
    const SectorLabel z = SectorLabel::make(5, 2);
    EXPECT_EQ(z.Sz, 1);
    EXPECT_EQ(z.ell, 1);
    EXPECT_EQ(z.cls, SectorClass::Z4);
    EXPECT_EQ(SectorLabel::make(8, 4).cls, SectorClass::Ramond);
    EXPECT_EQ(SectorLabel::make(8, 3).cls, SectorClass::NeveuSchwarz);
    EXPECT_EQ(SectorLabel::make(6, 0).ell, 6);
}

TEST(TransferMatrix, IsotropicSmallSizes) {
    const ModelParams iso = ModelParams::isotropic();
    EXPECT_NEAR(std::abs(transfer_matrix(1, kPi / 4, iso).trace() - 4.0), 0.0, 1e-13);
    const Mat T = transfer_matrix(2, kPi / 4, iso);
    Mat expect(4, 4);
    expect << 2, 0, 0, 0, 0, 2, 2, 0, 0, 2, 2, 0, 0, 0, 0, 2;
    EXPECT_LE(max_abs(T - expect), 1e-13);
    EXPECT_NEAR(std::abs((T * T).trace() - 24.0), 0.0, 1e-12);
}

TEST(TransferMatrix, Commutes) {
    const Mat a = transfer_matrix(3, 0.3), b = transfer_matrix(3, 0.9);
    EXPECT_LE(max_abs(a * b - b * a), 1e-12);
}

TEST(Decomposition, BlockDims) {
    const auto bd3 = sector_decompose(transfer_matrix(3, 0.2), 3);
    const int d3[] = {1, 3, 3, 1};
    for (int d = 0; d <= 3; ++d) EXPECT_EQ(bd3.blocks.at(d).rows(), d3[d]);
    const auto bd4 = sector_decompose(transfer_matrix(4, 0.2), 4);
    int total = 0;
    for (const auto& [d, b] : bd4.blocks) total += b.rows();
    EXPECT_EQ(total, 16);
    EXPECT_EQ(bd4.blocks.at(2).rows(), 6);
    const auto bd2 = sector_decompose(transfer_matrix(2, kPi / 4, ModelParams::isotropic()), 2);
    Mat blk(2, 2);
    blk << 2, 2, 2, 2;
    EXPECT_LE(max_abs(bd2.blocks.at(1) - blk), 1e-13);
}

TEST(Decomposition, RejectsNonConserving) {
    Mat m = Mat::Identity(4, 4);
    m(1, 0) = 1.0;
    EXPECT_THROW(sector_decompose(m, 2), std::runtime_error);
}

TEST(Inversion, Scalars) {
    EXPECT_NEAR(inversion_scalar_cylinder(1, 0, 0.3), std::cos(0.6), 1e-15);
    const double c = std::cos(0.4), s = std::sin(0.4);
    EXPECT_NEAR(inversion_scalar_cylinder(2, 1, 0.4), std::pow(c * c - s * s, 2), 1e-15);
}

TEST(Inversion, AllSectors) {
    for (int N = 1; N <= 8; ++N) {
        const Report r = verify_inversion_cylinder(N, 1.1);
        EXPECT_TRUE(r.pass) << r.summary();
        EXPECT_LE(r.max_residual, 1e-11);
    }
}

TEST(Hamiltonian, CommutesAndActs) {
    const Mat H = hamiltonian_cylinder(4), T = transfer_matrix(4, 0.7);
    EXPECT_LE(max_abs(H * T - T * H), 1e-11);
    const Mat H2 = hamiltonian_cylinder(2);
    // |01> is bits 0b10; both generators hop it to |10> with x + 1/x = 0 on the diagonal.
    EXPECT_NEAR(std::abs(H2(0b10, 0b10)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(H2(0b01, 0b10) + 2.0), 0.0, 1e-15);
    const auto bd = sector_decompose(H, 4);
    Eigen::ComplexEigenSolver<Mat> es(bd.blocks.at(2), false);
    for (int k = 0; k < es.eigenvalues().size(); ++k) EXPECT_LE(std::abs(es.eigenvalues()[k].imag()), 1e-10);
}

TEST(Braid, JAndSquares) {
    const BraidResult odd = braid_and_j(3);
    EXPECT_LE(max_abs(odd.J), 1e-9);
    const BraidResult two = braid_and_j(2);
    EXPECT_NEAR(std::abs(two.J(0, 0) - 2.0), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(two.J(1, 1) + 2.0), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(two.J(3, 3) - 2.0), 0.0, 1e-9);
    const BraidResult four = braid_and_j(4);
    const Mat I = Mat::Identity(16, 16);
    EXPECT_LE(max_abs(four.Bplus * four.Bplus - (2.0 * I + four.J)), 1e-10);
    for (int N = 2; N <= 6; ++N) EXPECT_TRUE(braid_and_j(N).report.pass) << N;
}

TEST(AppendixA, Matrices) {
    const Eigen::Matrix4d S = appendix_s(), Si = appendix_s_inverse();
    EXPECT_LE((S * Si - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff(), 1e-15);
    const double u = 0.5, c = std::cos(u), s = std::sin(u);
    const Eigen::Matrix4d T = S * appendix_r(0, 0, u) * Si;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j) EXPECT_NEAR(T(i, j), 0.0, 1e-14);
    EXPECT_NEAR(T(0, 0), c * c, 1e-14);
    EXPECT_NEAR(T(1, 1), s * c, 1e-14);
    EXPECT_NEAR(T(2, 2), -s * c, 1e-14);
    EXPECT_NEAR(T(3, 3), -s * s, 1e-14);
    const Report r = verify_appendix_a(0.5);
    EXPECT_TRUE(r.pass) << r.summary();
    EXPECT_LE(r.max_residual, 1e-12);
}

TEST(Identities, CrossingCommutationDegeneracy) {
    for (int N = 2; N <= 7; ++N) {
        EXPECT_TRUE(verify_crossing(N, 0.27).pass) << N;
        EXPECT_TRUE(verify_commutation(N, 0.27, 0.93).pass) << N;
        EXPECT_TRUE(verify_sector_degeneracy(N, 0.6).pass) << N;
    }
}

TEST(Diagnostics, LogDerivativeCommutes) {
    const auto d = log_derivative_diagnostic(4, 0.55);
    ASSERT_TRUE(d.invertible);
    EXPECT_LE(d.commutator, 1e-6);
}
