#include "fermidim/field.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fermidim {

namespace {

// Gaussian rational p + q i.
struct GQ {
    Rational p, q;
};

GQ gmul(const GQ& x, const GQ& y) { return {x.p * y.p - x.q * y.q, x.p * y.q + x.q * y.p}; }

GQ ginv(const GQ& x) {
    const Rational n = x.p * x.p + x.q * x.q;
    if (n == 0) throw std::domain_error("division by zero in field");
    return {x.p / n, -x.q / n};
}

double to_d(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

bool QI2::is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }

cplx QI2::to_complex() const {
    const double s = std::sqrt(2.0);
    return {to_d(c[0]) + s * to_d(c[2]), to_d(c[1]) + s * to_d(c[3])};
}

QI2 operator+(const QI2& x, const QI2& y) { return {x.c[0] + y.c[0], x.c[1] + y.c[1], x.c[2] + y.c[2], x.c[3] + y.c[3]}; }
QI2 operator-(const QI2& x, const QI2& y) { return {x.c[0] - y.c[0], x.c[1] - y.c[1], x.c[2] - y.c[2], x.c[3] - y.c[3]}; }
QI2 operator-(const QI2& x) { return {-x.c[0], -x.c[1], -x.c[2], -x.c[3]}; }

QI2 operator*(const QI2& x, const QI2& y) {
    const auto& [a1, b1, c1, d1] = x.c;
    const auto& [a2, b2, c2, d2] = y.c;
    return {a1 * a2 - b1 * b2 + 2 * c1 * c2 - 2 * d1 * d2, a1 * b2 + b1 * a2 + 2 * c1 * d2 + 2 * d1 * c2,
            a1 * c2 + c1 * a2 - b1 * d2 - d1 * b2, a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2};
}

bool operator==(const QI2& x, const QI2& y) { return x.c == y.c; }

// 1/(P + Q sqrt2) = (P - Q sqrt2) / (P^2 - 2 Q^2).
QI2 QI2::inverse() const {
    const GQ P{c[0], c[1]}, Q{c[2], c[3]};
    const GQ P2 = gmul(P, P), Q2 = gmul(Q, Q);
    const GQ inv = ginv({P2.p - 2 * Q2.p, P2.q - 2 * Q2.q});
    const GQ a = gmul(P, inv), b = gmul(Q, inv);
    return {a.p, a.q, -b.p, -b.q};
}

std::string QI2::to_string() const {
    static const char* basis[4] = {"", "i", "sqrt2", "i*sqrt2"};
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < 4; ++k) {
        if (c[k] == 0) continue;
        if (!first) os << " + ";
        os << "(" << c[k] << ")";
        if (k) os << "*" << basis[k];
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

namespace {

bool snap_real(double x, Rational& r1, Rational& r2, int max_den, double tol) {
    const double s = std::sqrt(2.0);
    for (int den = 1; den <= max_den; ++den) {
        const int kmax = static_cast<int>(std::ceil((std::abs(x) + 4.0) * den));
        for (int k2 = 0; k2 <= kmax; ++k2) {
            for (int sgn : {1, -1}) {
                if (k2 == 0 && sgn < 0) continue;
                const double b = sgn * double(k2) / den;
                const double rest = (x - b * s) * den;
                const double k1 = std::round(rest);
                if (std::abs(rest - k1) / den < tol) {
                    r1 = Rational(static_cast<long long>(k1), den);
                    r2 = Rational(sgn * k2, den);
                    return true;
                }
            }
        }
    }
    return false;
}

}  // namespace

bool snap_to_field(cplx z, QI2& out, int max_den, double tol) {
    Rational a, s, b, is;
    if (!snap_real(z.real(), a, s, max_den, tol)) return false;
    if (!snap_real(z.imag(), b, is, max_den, tol)) return false;
    out = QI2(a, b, s, is);
    return true;
}

QMat qmat_identity(int n) { return qmat_scaled_identity(n, QI2(1)); }

QMat qmat_scaled_identity(int n, const QI2& s) {
    QMat m(n, std::vector<QI2>(n));
    for (int k = 0; k < n; ++k) m[k][k] = s;
    return m;
}

QMat qmat_mul(const QMat& a, const QMat& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    QMat c(n, std::vector<QI2>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (!b[l][j].is_zero()) c[i][j] = c[i][j] + a[i][l] * b[l][j];
        }
    return c;
}

QMat qmat_sub(const QMat& a, const QMat& b) {
    QMat c = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] = a[i][j] - b[i][j];
    return c;
}

int qmat_rank(QMat a) {
    const int n = static_cast<int>(a.size());
    if (!n) return 0;
    const int m = static_cast<int>(a[0].size());
    int rank = 0;
    for (int col = 0; col < m && rank < n; ++col) {
        int piv = -1;
        for (int r = rank; r < n; ++r)
            if (!a[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[rank]);
        const QI2 inv = a[rank][col].inverse();
        for (int r = rank + 1; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            const QI2 f = a[r][col] * inv;
            for (int j = col; j < m; ++j)
                if (!a[rank][j].is_zero()) a[r][j] = a[r][j] - f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

QMat to_qmat(const Mat& m) {
    QMat q(m.rows(), std::vector<QI2>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!snap_to_field(m(i, j), q[i][j])) throw std::runtime_error("matrix entry outside Q(i, sqrt2)");
    return q;
}

}  // namespace fermidim
