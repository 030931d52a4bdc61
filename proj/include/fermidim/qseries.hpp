#pragma once

#include <map>
#include <optional>
#include <string>

#include "fermidim/common.hpp"
#include "fermidim/cylinder.hpp"

namespace fermidim {

// Sparse bivariate series in (q, qbar) with rational exponents and big-integer coefficients.
// Exponents are held as integers in units of 1/96.
class QExponentPoly {
public:
    static constexpr long kDen = 96;
    using Key = std::pair<long, long>;

    static long to_units(const Rational& r);
    static Rational from_units(long u);
    static QExponentPoly monomial(const Rational& eq, const Rational& eqbar, const BigInt& c = 1);

    void add(const Rational& eq, const Rational& eqbar, const BigInt& c);
    void add_units(long eq, long eqbar, const BigInt& c);
    BigInt coefficient(const Rational& eq, const Rational& eqbar) const;

    QExponentPoly& operator+=(const QExponentPoly& o);
    QExponentPoly& operator-=(const QExponentPoly& o);
    QExponentPoly operator+(const QExponentPoly& o) const;
    QExponentPoly operator-(const QExponentPoly& o) const;
    QExponentPoly operator*(const QExponentPoly& o) const;
    QExponentPoly scaled(const BigInt& c) const;
    // Exact division of every coefficient; throws when not divisible.
    QExponentPoly divided_exact(const BigInt& c) const;
    QExponentPoly shifted(const Rational& dq, const Rational& dqbar) const;
    // q -> qbar on a series in q alone.
    QExponentPoly to_qbar() const;
    // f(q) g(qbar) for two series in q alone.
    static QExponentPoly outer(const QExponentPoly& f, const QExponentPoly& g);
    // Drops terms whose q or qbar exponent exceeds the bound.
    QExponentPoly truncated(const Rational& max_q, const Rational& max_qbar) const;

    bool operator==(const QExponentPoly& o) const { return terms_ == o.terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    BigInt at_one() const;
    bool nonnegative() const;
    const std::map<Key, BigInt>& terms() const { return terms_; }
    // Coefficients of q^0..q^deg for a series with integer q exponents and no qbar.
    std::vector<BigInt> dense_q() const;
    std::optional<std::string> first_difference(const QExponentPoly& o) const;
    std::string to_string() const;

private:
    std::map<Key, BigInt> terms_;
};

std::string rational_string(const Rational& r);

QExponentPoly gaussian_binomial(int n, int m);

QExponentPoly column_generating_function(SectorClass cls, int n, int sigma);

// Offset exponent applied to a column with quantum number sigma.
Rational column_offset(SectorClass cls, int sigma);

// Conformal weight Delta_j = (j^2 - 1)/8 at rational index j.
Rational conformal_weight(const Rational& j);

// form = 1 or 2 selects the displayed alternative for Z4 sectors; ignored for N even.
QExponentPoly finitized_sector_partition(int N, int ell, int form = 1);

// Product form of the sum of all odd-ell sectors for N odd.
QExponentPoly z4_sector_sum_product(int N);

struct MipfResult {
    QExponentPoly sector_sum;
    QExponentPoly product;
    bool equal = false;
    std::string first_difference;
};
MipfResult finitized_mipf(int N);

enum class SeriesKind { eta, inverse_eta, eta_cubed, theta, kappa, chi_minus_eighth, chi_zero, chi_one, chi_three_eighths };

// Truncated series in q (terms with exponent <= order kept).
QExponentPoly eta_theta_truncated(SeriesKind kind, int j, int n, int order);

// Continuum assembly |k_0|^2 + 2|k_1|^2 + |k_2|^2 with k_j = theta_{j,2}/eta.
QExponentPoly continuum_mipf(int order);

Report continuum_compare(int N, int order);

}  // namespace fermidim
