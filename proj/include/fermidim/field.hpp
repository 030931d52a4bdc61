#pragma once

#include <array>
#include <vector>

#include "fermidim/common.hpp"

namespace fermidim {

// Element c0 + c1 i + c2 sqrt2 + c3 i sqrt2 of Q(i, sqrt 2).
struct QI2 {
    std::array<Rational, 4> c{};

    QI2() = default;
    QI2(Rational re) { c[0] = std::move(re); }
    QI2(Rational a, Rational b, Rational s, Rational is) : c{std::move(a), std::move(b), std::move(s), std::move(is)} {}

    static QI2 i() { return {0, 1, 0, 0}; }
    static QI2 sqrt2() { return {0, 0, 1, 0}; }

    bool is_zero() const;
    cplx to_complex() const;
    QI2 inverse() const;
    std::string to_string() const;

    friend QI2 operator+(const QI2& x, const QI2& y);
    friend QI2 operator-(const QI2& x, const QI2& y);
    friend QI2 operator-(const QI2& x);
    friend QI2 operator*(const QI2& x, const QI2& y);
    friend QI2 operator/(const QI2& x, const QI2& y) { return x * y.inverse(); }
    friend bool operator==(const QI2& x, const QI2& y);
};

// Nearest element whose real and imaginary parts are r + s sqrt2 with denominators <= max_den.
// Returns false if nothing lies within tol.
bool snap_to_field(cplx z, QI2& out, int max_den = 12, double tol = 1e-9);

using QMat = std::vector<std::vector<QI2>>;

QMat qmat_identity(int n);
QMat qmat_mul(const QMat& a, const QMat& b);
QMat qmat_sub(const QMat& a, const QMat& b);
QMat qmat_scaled_identity(int n, const QI2& s);
int qmat_rank(QMat a);

// Entries must be snappable; throws otherwise.
QMat to_qmat(const Mat& m);

}  // namespace fermidim
