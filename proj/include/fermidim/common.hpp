#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace fermidim {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr cplx kI{0.0, 1.0};

// Largest N for which dense 2^N operators are built.
inline constexpr int kDenseCap = 12;

inline int occ(std::uint32_t bits, int site) { return static_cast<int>((bits >> (site - 1)) & 1u); }
inline int popcount(std::uint32_t bits) { return __builtin_popcount(bits); }

double max_abs(const Mat& m);
BigInt binomial(int n, int k);

// Pass/fail record carried by every verifier.
struct Report {
    std::string name;
    bool pass = true;
    double tol = 0.0;
    double max_residual = 0.0;
    std::vector<std::pair<std::string, double>> entries;
    std::vector<std::string> notes;

    void check(const std::string& what, double residual, double tolerance);
    void require(const std::string& what, bool ok);
    void merge(const Report& other);
    std::string summary() const;
};

}  // namespace fermidim
