#include <gtest/gtest.h>

#include "fermidim/qseries.hpp"

using namespace fermidim;

namespace {

std::vector<BigInt> ints(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

int column_size_ok(SectorClass cls, int n) {
    if (cls == SectorClass::Ramond) return n % 2 == 0;
    if (cls == SectorClass::NeveuSchwarz) return n % 2 == 1;
    return 1;
}

}  // namespace

TEST(Polynomials, ExponentUnits) {
    EXPECT_EQ(QExponentPoly::to_units(Rational(1, 12)), 8);
    EXPECT_EQ(QExponentPoly::from_units(-12), Rational(-1, 8));
    EXPECT_THROW(QExponentPoly::to_units(Rational(1, 7)), std::invalid_argument);
    const auto p = QExponentPoly::monomial(Rational(1, 2), 0, 3) * QExponentPoly::monomial(Rational(1, 2), Rational(1, 4), 2);
    EXPECT_EQ(p.coefficient(1, Rational(1, 4)), 6);
}

TEST(Gaussian, PrintedCases) {
    EXPECT_EQ(gaussian_binomial(7, 5).dense_q(), ints({1, 1, 2, 2, 3, 3, 3, 2, 2, 1, 1}));
    EXPECT_EQ(gaussian_binomial(6, 2).dense_q(), ints({1, 1, 2, 2, 3, 2, 2, 1, 1}));
    for (int n = 0; n <= 9; ++n) EXPECT_EQ(gaussian_binomial(n, 0).dense_q(), ints({1}));
    EXPECT_THROW(gaussian_binomial(4, 5), std::invalid_argument);
}

TEST(Gaussian, PascalRecurrence) {
    for (int n = 1; n <= 10; ++n)
        for (int m = 1; m < n; ++m) {
            const auto lhs = gaussian_binomial(n, m);
            const auto rhs = gaussian_binomial(n - 1, m - 1) + gaussian_binomial(n - 1, m).shifted(m, 0);
            EXPECT_EQ(lhs, rhs) << n << " " << m;
            EXPECT_EQ(lhs.at_one(), binomial(n, m));
        }
}

TEST(Columns, PrintedCases) {
    EXPECT_EQ(column_generating_function(SectorClass::Z4, 7, -2), gaussian_binomial(7, 5));
    EXPECT_EQ(column_generating_function(SectorClass::Ramond, 6, 1), gaussian_binomial(6, 2));
    EXPECT_EQ(column_generating_function(SectorClass::NeveuSchwarz, 7, 1), gaussian_binomial(7, 2));
}

TEST(Columns, AllFeasibleSigma) {
    for (auto cls : {SectorClass::Z4, SectorClass::Ramond, SectorClass::NeveuSchwarz})
        for (int n = 0; n <= 9; ++n) {
            if (!column_size_ok(cls, n)) {
                EXPECT_THROW(column_generating_function(cls, n, 0), std::invalid_argument);
                continue;
            }
            for (int sigma = -n - 1; sigma <= n + 1; ++sigma) {
                const int m = n / 2 - sigma;
                const auto f = column_generating_function(cls, n, sigma);
                if (m < 0 || m > n) {
                    EXPECT_TRUE(f.empty()) << to_string(cls) << " " << n << " " << sigma;
                    continue;
                }
                EXPECT_EQ(f, gaussian_binomial(n, m)) << to_string(cls) << " " << n << " " << sigma;
            }
        }
}

TEST(Sectors, StateCounts) {
    for (int N = 1; N <= 10; ++N)
        for (int ell = N % 2; ell <= N; ell += 2)
            EXPECT_EQ(finitized_sector_partition(N, ell).at_one(), binomial(N, (N - ell) / 2)) << N << " " << ell;
}

TEST(Sectors, AlternativeZ4Forms) {
    for (int N = 1; N <= 11; N += 2)
        for (int ell = 1; ell <= N; ell += 2)
            EXPECT_EQ(finitized_sector_partition(N, ell, 1), finitized_sector_partition(N, ell, 2)) << N << " " << ell;
}

TEST(Mipf, SumEqualsProduct) {
    for (int N : {2, 4, 6, 8}) {
        const MipfResult r = finitized_mipf(N);
        EXPECT_TRUE(r.equal) << r.first_difference;
        EXPECT_EQ(r.product.at_one(), BigInt(1) << N);
    }
    EXPECT_EQ(finitized_mipf(4).product.at_one(), 16);
}

TEST(Series, EtaAndTheta) {
    const auto eta = eta_theta_truncated(SeriesKind::eta, 0, 0, 6);
    const Rational c(1, 24);
    EXPECT_EQ(eta.coefficient(c, 0), 1);
    EXPECT_EQ(eta.coefficient(c + 1, 0), -1);
    EXPECT_EQ(eta.coefficient(c + 2, 0), -1);
    EXPECT_EQ(eta.coefficient(c + 3, 0), 0);
    EXPECT_EQ(eta.coefficient(c + 5, 0), 1);
    const auto th = eta_theta_truncated(SeriesKind::theta, 0, 2, 9);
    EXPECT_EQ(th.coefficient(0, 0), 1);
    // Exponents (4k)^2/8 = 2k^2.
    EXPECT_EQ(th.coefficient(2, 0), 2);
    EXPECT_EQ(th.coefficient(8, 0), 2);
    EXPECT_EQ(th.coefficient(1, 0), 0);
    EXPECT_EQ(th.coefficient(4, 0), 0);
    const int order = 6;
    const auto sum = eta_theta_truncated(SeriesKind::chi_zero, 0, 0, order) + eta_theta_truncated(SeriesKind::chi_one, 0, 0, order);
    EXPECT_EQ(sum, eta_theta_truncated(SeriesKind::kappa, 1, 2, order));
}

TEST(Continuum, LowOrderAgreement) {
    EXPECT_TRUE(continuum_compare(8, 3).pass);
    EXPECT_TRUE(continuum_compare(12, 4).pass);
    const auto z = continuum_mipf(3);
    const Rational ground = Rational(1, 12) - Rational(1, 8);
    EXPECT_EQ(z.coefficient(ground, ground), 1);
}
