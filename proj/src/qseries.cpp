#include "fermidim/qseries.hpp"

#include <sstream>
#include <stdexcept>

namespace fermidim {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

long QExponentPoly::to_units(const Rational& r) {
    const Rational s = r * kDen;
    if (denominator(s) != 1) throw std::invalid_argument("exponent denominator does not divide 96");
    return numerator(s).convert_to<long>();
}

Rational QExponentPoly::from_units(long u) { return Rational(u, kDen); }

QExponentPoly QExponentPoly::monomial(const Rational& eq, const Rational& eqbar, const BigInt& c) {
    QExponentPoly p;
    p.add(eq, eqbar, c);
    return p;
}

void QExponentPoly::add(const Rational& eq, const Rational& eqbar, const BigInt& c) {
    add_units(to_units(eq), to_units(eqbar), c);
}

void QExponentPoly::add_units(long eq, long eqbar, const BigInt& c) {
    if (c == 0) return;
    auto it = terms_.find({eq, eqbar});
    if (it == terms_.end()) {
        terms_.emplace(Key{eq, eqbar}, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

BigInt QExponentPoly::coefficient(const Rational& eq, const Rational& eqbar) const {
    auto it = terms_.find({to_units(eq), to_units(eqbar)});
    return it == terms_.end() ? BigInt(0) : it->second;
}

QExponentPoly& QExponentPoly::operator+=(const QExponentPoly& o) {
    for (const auto& [k, c] : o.terms_) add_units(k.first, k.second, c);
    return *this;
}

QExponentPoly& QExponentPoly::operator-=(const QExponentPoly& o) {
    for (const auto& [k, c] : o.terms_) add_units(k.first, k.second, -c);
    return *this;
}

QExponentPoly QExponentPoly::operator+(const QExponentPoly& o) const {
    QExponentPoly r = *this;
    r += o;
    return r;
}

QExponentPoly QExponentPoly::operator-(const QExponentPoly& o) const {
    QExponentPoly r = *this;
    r -= o;
    return r;
}

QExponentPoly QExponentPoly::operator*(const QExponentPoly& o) const {
    QExponentPoly r;
    for (const auto& [k1, c1] : terms_)
        for (const auto& [k2, c2] : o.terms_) r.add_units(k1.first + k2.first, k1.second + k2.second, c1 * c2);
    return r;
}

QExponentPoly QExponentPoly::scaled(const BigInt& c) const {
    QExponentPoly r;
    for (const auto& [k, v] : terms_) r.add_units(k.first, k.second, v * c);
    return r;
}

QExponentPoly QExponentPoly::divided_exact(const BigInt& c) const {
    QExponentPoly r;
    for (const auto& [k, v] : terms_) {
        if (v % c != 0) throw std::runtime_error("coefficient not divisible");
        r.add_units(k.first, k.second, v / c);
    }
    return r;
}

QExponentPoly QExponentPoly::shifted(const Rational& dq, const Rational& dqbar) const {
    const long a = to_units(dq), b = to_units(dqbar);
    QExponentPoly r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(Key{k.first + a, k.second + b}, v);
    return r;
}

QExponentPoly QExponentPoly::to_qbar() const {
    QExponentPoly r;
    for (const auto& [k, v] : terms_) {
        if (k.second != 0) throw std::invalid_argument("to_qbar expects a series in q alone");
        r.terms_.emplace(Key{0, k.first}, v);
    }
    return r;
}

QExponentPoly QExponentPoly::outer(const QExponentPoly& f, const QExponentPoly& g) { return f * g.to_qbar(); }

QExponentPoly QExponentPoly::truncated(const Rational& max_q, const Rational& max_qbar) const {
    const long a = to_units(max_q), b = to_units(max_qbar);
    QExponentPoly r;
    for (const auto& [k, v] : terms_)
        if (k.first <= a && k.second <= b) r.terms_.emplace(k, v);
    return r;
}

BigInt QExponentPoly::at_one() const {
    BigInt s = 0;
    for (const auto& [k, v] : terms_) s += v;
    return s;
}

bool QExponentPoly::nonnegative() const {
    for (const auto& [k, v] : terms_)
        if (v < 0) return false;
    return true;
}

std::vector<BigInt> QExponentPoly::dense_q() const {
    std::vector<BigInt> out;
    for (const auto& [k, v] : terms_) {
        if (k.second != 0 || k.first % kDen != 0 || k.first < 0)
            throw std::invalid_argument("dense_q needs a polynomial in q with integer exponents");
        const std::size_t deg = static_cast<std::size_t>(k.first / kDen);
        if (out.size() <= deg) out.resize(deg + 1, 0);
        out[deg] = v;
    }
    return out;
}

std::string rational_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

std::optional<std::string> QExponentPoly::first_difference(const QExponentPoly& o) const {
    const QExponentPoly diff = *this - o;
    if (diff.empty()) return std::nullopt;
    const auto& [k, v] = *diff.terms_.begin();
    std::ostringstream os;
    os << "q^" << rational_string(from_units(k.first)) << " qbar^" << rational_string(from_units(k.second))
       << ": " << coefficient(from_units(k.first), from_units(k.second)) << " vs "
       << o.coefficient(from_units(k.first), from_units(k.second));
    return os.str();
}

std::string QExponentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << v;
        if (k.first != 0) os << " q^" << rational_string(from_units(k.first));
        if (k.second != 0) os << " qbar^" << rational_string(from_units(k.second));
    }
    return os.str();
}

namespace {

std::vector<BigInt> times_one_minus(const std::vector<BigInt>& p, int k) {
    std::vector<BigInt> r(p.size() + k, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        r[i] += p[i];
        r[i + k] -= p[i];
    }
    return r;
}

std::vector<BigInt> divide_one_minus(const std::vector<BigInt>& p, int k) {
    // p = (1 - q^k) r  =>  r_i = p_i + r_{i-k}
    if (p.size() < static_cast<std::size_t>(k)) throw std::runtime_error("inexact q-division");
    std::vector<BigInt> r(p.size() - k, 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = p[i] + (i >= static_cast<std::size_t>(k) ? r[i - k] : BigInt(0));
    for (std::size_t i = r.size(); i < p.size(); ++i) {
        const BigInt expect = (i >= static_cast<std::size_t>(k) ? -r[i - k] : BigInt(0));
        if (p[i] != expect) throw std::runtime_error("inexact q-division");
    }
    return r;
}

QExponentPoly from_dense(const std::vector<BigInt>& c) {
    QExponentPoly p;
    for (std::size_t i = 0; i < c.size(); ++i) p.add_units(static_cast<long>(i) * QExponentPoly::kDen, 0, c[i]);
    return p;
}

}  // namespace

QExponentPoly gaussian_binomial(int n, int m) {
    if (n < 0 || m < 0 || m > n) throw std::invalid_argument("gaussian_binomial needs 0 <= m <= n");
    std::vector<BigInt> num{1};
    for (int k = 1; k <= m; ++k) num = times_one_minus(num, n - k + 1);
    for (int k = 1; k <= m; ++k) num = divide_one_minus(num, k);
    return from_dense(num);
}

Rational column_offset(SectorClass cls, int sigma) {
    const Rational s = sigma;
    switch (cls) {
        case SectorClass::Z4: return -s * (s + Rational(1, 2)) / 2;
        case SectorClass::Ramond: return -s * s / 2;
        case SectorClass::NeveuSchwarz: return -s * (s + 1) / 2;
    }
    return 0;
}

QExponentPoly column_generating_function(SectorClass cls, int n, int sigma) {
    if (n < 0 || n > 24) throw std::invalid_argument("column size out of range");
    QExponentPoly out;
    const long off = QExponentPoly::to_units(column_offset(cls, sigma));
    if (cls == SectorClass::Z4) {
        // E_p = (2p - 1)/4; sigma = m_even - m_odd.
        for (std::uint32_t m = 0; m < (1u << n); ++m) {
            long e = 0;
            int excess = 0;
            for (int p = 1; p <= n; ++p) {
                if (!((m >> (p - 1)) & 1u)) continue;
                e += (2 * p - 1) * 24;
                excess += (p % 2 == 0) ? 1 : -1;
            }
            if (excess == sigma) out.add_units(e + off, 0, 1);
        }
        return out;
    }
    if (cls == SectorClass::Ramond && n % 2) throw std::invalid_argument("R columns have an even number of slots");
    if (cls == SectorClass::NeveuSchwarz && n % 2 == 0)
        throw std::invalid_argument("NS columns have an odd number of slots");
    const int P = n / 2;
    // Each position holds a left and a right slot; bit 2(p-1) is right, 2(p-1)+1 is left.
    for (std::uint32_t m = 0; m < (1u << (2 * P)); ++m) {
        long e = 0;
        int excess = 0;
        for (int p = 1; p <= P; ++p) {
            const int right = (m >> (2 * (p - 1))) & 1u, left = (m >> (2 * (p - 1) + 1)) & 1u;
            const long ep = (cls == SectorClass::Ramond) ? (2 * p - 1) * 48 : p * 96;
            e += (right + left) * ep;
            excess += right - left;
        }
        if (cls == SectorClass::Ramond) {
            if (excess == sigma) out.add_units(e + off, 0, 1);
        } else {
            // Energy-zero dummy slot: sigma = excess + dummy - 1.
            for (int dummy = 0; dummy < 2; ++dummy)
                if (excess + dummy - 1 == sigma) out.add_units(e + off, 0, 1);
        }
    }
    return out;
}

Rational conformal_weight(const Rational& j) { return (j * j - 1) / 8; }

namespace {

struct ColumnIndices {
    int n1, m1, n2, m2;
};

QExponentPoly qbin_or_zero(int n, int m) {
    if (m < 0 || m > n) return {};
    return gaussian_binomial(n, m);
}

}  // namespace

QExponentPoly finitized_sector_partition(int N, int ell, int form) {
    if (N < 1 || ell < 0 || ell > N || (N - ell) % 2) throw std::invalid_argument("ell must match N parity, 0 <= ell <= N");
    if (form != 1 && form != 2) throw std::invalid_argument("form must be 1 or 2");
    const Rational cq = Rational(1, 12);  // -c/24 with c = -2
    QExponentPoly z;
    for (int k = -N - 2; k <= N + 2; ++k) {
        ColumnIndices ix{};
        if (N % 2) {
            ix.n1 = (N + 1) / 2;
            ix.n2 = (N - 1) / 2;
            if ((N - ell) % 4 == 0) {
                if (form == 1) ix.m1 = (N - ell) / 4 - k, ix.m2 = (N - ell) / 4 + k;
                else ix.m1 = (N + ell + 2) / 4 + k, ix.m2 = (N + ell - 2) / 4 - k;
            } else {
                if (form == 1) ix.m1 = (N - ell + 2) / 4 - k, ix.m2 = (N - ell - 2) / 4 + k;
                else ix.m1 = (N + ell) / 4 + k, ix.m2 = (N + ell) / 4 - k;
            }
        } else if (sector_class(N, ell) == SectorClass::Ramond) {
            ix.n1 = 2 * ((N + 2) / 4);
            ix.m1 = (N + 2 - ell) / 4 - k;
            ix.n2 = 2 * (N / 4);
            ix.m2 = (N - ell) / 4 + k;
        } else {
            ix.n1 = 2 * (N / 4) + 1;
            ix.m1 = (N + 2 - ell) / 4 - k;
            ix.n2 = 2 * ((N + 2) / 4) - 1;
            ix.m2 = (N - ell) / 4 + k;
        }
        const QExponentPoly left = qbin_or_zero(ix.n1, ix.m1);
        const QExponentPoly right = qbin_or_zero(ix.n2, ix.m2);
        if (left.empty() || right.empty()) continue;
        const Rational jl = Rational(2 * k) + Rational(ell, 2);
        const Rational jr = Rational(2 * k) - Rational(ell, 2);
        z += QExponentPoly::outer(left, right).shifted(cq + conformal_weight(jl), cq + conformal_weight(jr));
    }
    return z;
}

namespace {

// prod_{n=1}^{count} (1 + sign q^{(a n + b)/den}) as a series in q.
QExponentPoly product_series(int count, int a, int b, int den, int sign) {
    QExponentPoly p = QExponentPoly::monomial(0, 0, 1);
    for (int n = 1; n <= count; ++n) {
        QExponentPoly f = QExponentPoly::monomial(0, 0, 1);
        f.add(Rational(a * n + b, den), 0, sign);
        p = p * f;
    }
    return p;
}

}  // namespace

QExponentPoly z4_sector_sum_product(int N) {
    if (N % 2 == 0) throw std::invalid_argument("Z4 product form needs N odd");
    QExponentPoly plus = QExponentPoly::outer(product_series((N + 1) / 2, 2, -1, 4, 1),
                                              product_series((N - 1) / 2, 2, -1, 4, 1));
    QExponentPoly minus = QExponentPoly::outer(product_series((N + 1) / 2, 2, -1, 4, -1),
                                               product_series((N - 1) / 2, 2, -1, 4, -1));
    const Rational e = Rational(1, 12) - Rational(3, 32);
    return (plus + minus).divided_exact(2).shifted(e, e);
}

MipfResult finitized_mipf(int N) {
    if (N < 2 || N % 2 || N > 16) throw std::invalid_argument("finitized MIPF needs even N <= 16");
    MipfResult r;
    r.sector_sum = finitized_sector_partition(N, 0);
    for (int ell = 2; ell <= N; ell += 2) r.sector_sum += finitized_sector_partition(N, ell).scaled(2);

    auto sq = [](const QExponentPoly& p) { return p * p; };
    const QExponentPoly up_p = sq(product_series((N + 2) / 4, 2, -1, 2, 1));
    const QExponentPoly lo_p = sq(product_series(N / 4, 2, -1, 2, 1));
    const QExponentPoly up_m = sq(product_series((N + 2) / 4, 2, -1, 2, -1));
    const QExponentPoly lo_m = sq(product_series(N / 4, 2, -1, 2, -1));
    const Rational e1 = Rational(1, 12) - Rational(1, 8);
    QExponentPoly first = (QExponentPoly::outer(up_p, lo_p) + QExponentPoly::outer(up_m, lo_m)).divided_exact(2);
    QExponentPoly second = QExponentPoly::outer(sq(product_series(N / 4, 1, 0, 1, 1)),
                                                sq(product_series((N - 2) / 4, 1, 0, 1, 1)))
                               .scaled(2);
    r.product = first.shifted(e1, e1) + second.shifted(Rational(1, 12), Rational(1, 12));
    auto diff = r.sector_sum.first_difference(r.product);
    r.equal = !diff.has_value();
    if (diff) r.first_difference = *diff;
    return r;
}

namespace {

QExponentPoly truncate_q(const QExponentPoly& p, int order) { return p.truncated(order, 0); }

QExponentPoly inverse_eta(int order) {
    // q^{-1/24} sum_k p(k) q^k
    std::vector<BigInt> part(order + 1, 0);
    part[0] = 1;
    for (int n = 1; n <= order; ++n)
        for (int k = n; k <= order; ++k) part[k] += part[k - n];
    QExponentPoly r;
    for (int k = 0; k <= order; ++k) r.add(Rational(k) - Rational(1, 24), 0, part[k]);
    return truncate_q(r, order);
}

QExponentPoly eta(int order) {
    std::vector<BigInt> c(order + 1, 0);
    c[0] = 1;
    for (int n = 1; n <= order; ++n)
        for (int k = order; k >= n; --k) c[k] -= c[k - n];
    QExponentPoly r;
    for (int k = 0; k <= order; ++k) r.add(Rational(k) + Rational(1, 24), 0, c[k]);
    return truncate_q(r, order);
}

QExponentPoly theta(int j, int n, int order) {
    if (n < 1) throw std::invalid_argument("theta needs n >= 1");
    QExponentPoly r;
    for (int k = -order - 2; k <= order + 2; ++k) {
        const Rational e(BigInt(j + 2 * k * n) * (j + 2 * k * n), 4 * n);
        if (e <= order) r.add(e, 0, 1);
    }
    return r;
}

}  // namespace

QExponentPoly eta_theta_truncated(SeriesKind kind, int j, int n, int order) {
    if (order < 0 || order > 200) throw std::invalid_argument("order must lie in [0, 200]");
    // One extra order absorbs the negative leading exponent of 1/eta.
    const int work = order + 1;
    switch (kind) {
        case SeriesKind::eta: return eta(order);
        case SeriesKind::inverse_eta: return inverse_eta(order);
        case SeriesKind::eta_cubed: return truncate_q(eta(work) * eta(work) * eta(work), order);
        case SeriesKind::theta: return theta(j, n, order);
        case SeriesKind::kappa: return truncate_q(theta(j, n, work) * inverse_eta(work), order);
        case SeriesKind::chi_minus_eighth: return truncate_q(theta(0, 2, work) * inverse_eta(work), order);
        case SeriesKind::chi_three_eighths: return truncate_q(theta(2, 2, work) * inverse_eta(work), order);
        case SeriesKind::chi_zero:
        case SeriesKind::chi_one: {
            const QExponentPoly e3 = eta(work) * eta(work) * eta(work);
            const QExponentPoly t = theta(1, 2, work);
            // Products beyond the working order are incomplete, so cut before halving.
            const QExponentPoly num = truncate_q(kind == SeriesKind::chi_zero ? t + e3 : t - e3, work);
            return truncate_q((num * inverse_eta(work)).divided_exact(2), order);
        }
    }
    return {};
}

QExponentPoly continuum_mipf(int order) {
    QExponentPoly z;
    for (int j = 0; j < 3; ++j) {
        const QExponentPoly k = eta_theta_truncated(SeriesKind::kappa, j, 2, order);
        z += QExponentPoly::outer(k, k).scaled(j == 1 ? 2 : 1);
    }
    return z;
}

Report continuum_compare(int N, int order) {
    Report rep;
    rep.name = "continuum N=" + std::to_string(N);
    const int cutoff = N / 4;
    if (order < cutoff + 1) throw std::invalid_argument("order must exceed the cutoff");
    const MipfResult fin = finitized_mipf(N);
    const Rational ground(-1, 24);
    const Rational bound = ground + cutoff;
    const QExponentPoly cont = continuum_mipf(order).truncated(bound, bound);
    const QExponentPoly cont2 = continuum_mipf(2 * order).truncated(bound, bound);
    const QExponentPoly lat = fin.sector_sum.truncated(bound, bound);
    rep.require("truncation stable under doubling", cont == cont2);
    auto diff = lat.first_difference(cont);
    rep.require("finitized = continuum below cutoff" + (diff ? " (" + *diff + ")" : std::string()), !diff);
    rep.require("ground term (qqbar)^{-1/24}", fin.sector_sum.coefficient(ground, ground) == 1);
    rep.entries.emplace_back("cutoff", cutoff);
    rep.entries.emplace_back("compared_terms", static_cast<double>(cont.size()));
    return rep;
}

}  // namespace fermidim
