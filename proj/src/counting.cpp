#include "fermidim/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace fermidim {

namespace mp = boost::multiprecision;
using Real = mp::mpfr_float;

const char* to_string(CountMethod m) {
    switch (m) {
        case CountMethod::formula: return "formula";
        case CountMethod::trace: return "trace";
        case CountMethod::enumeration: return "enumeration";
        case CountMethod::kasteleyn: return "kasteleyn";
    }
    return "?";
}

namespace {

// Sets the working precision for the lifetime of the guard.
class PrecisionGuard {
public:
    explicit PrecisionGuard(int bits) : saved_(Real::default_precision()) {
        Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2);
    }
    ~PrecisionGuard() { Real::default_precision(saved_); }

private:
    unsigned saved_;
};

Real real_pi() {
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

// Nearest integer and the distance to it.
std::pair<BigInt, double> round_real(const Real& x) {
    Real r = mp::round(x);
    const double residual = static_cast<double>(mp::abs(x - r));
    mpz_t z;
    mpz_init(z);
    mpfr_get_z(z, r.backend().data(), MPFR_RNDN);
    char* s = mpz_get_str(nullptr, 10, z);
    BigInt v(s);
    void (*freefunc)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(s, std::strlen(s) + 1);
    mpz_clear(z);
    return {v, residual};
}

int mod4(int s) { return ((s % 4) + 4) % 4; }

// Coefficients of prod_j (w+_j x + w-_j / x), indexed by s + N.
std::vector<Real> sign_sum_polynomial(const std::vector<Real>& wp, const std::vector<Real>& wm) {
    const int N = static_cast<int>(wp.size());
    std::vector<Real> poly(2 * N + 1, Real(0)), next(2 * N + 1, Real(0));
    poly[N] = 1;
    for (int j = 0; j < N; ++j) {
        for (auto& v : next) v = 0;
        for (int s = 0; s <= 2 * N; ++s) {
            if (poly[s] == 0) continue;
            if (s + 1 <= 2 * N) next[s + 1] += poly[s] * wp[j];
            if (s - 1 >= 0) next[s - 1] += poly[s] * wm[j];
        }
        poly.swap(next);
    }
    return poly;
}

}  // namespace

CountResult kasteleyn_count(int M, int N, int precision_bits) {
    if (M < 2 || N < 2 || M % 2 || N % 2) throw std::invalid_argument("Kasteleyn count needs even M, N >= 2");
    const int bits = precision_bits > 0 ? precision_bits : 64 + M * N;
    PrecisionGuard guard(bits);
    const Real pi = real_pi();
    auto partial = [&](const Real& alpha, const Real& beta) {
        Real p = 1;
        for (int n = 0; n < N / 2; ++n) {
            const Real sn = mp::sin(2 * pi * (n + alpha) / N);
            for (int m = 0; m < M / 2; ++m) {
                const Real sm = mp::sin(2 * pi * (m + beta) / M);
                p *= 4 * (sn * sn + sm * sm);
            }
        }
        return p;
    };
    const Real half = Real(1) / 2;
    const Real z = (partial(half, half) + partial(0, half) + partial(half, 0)) / 2;
    auto [v, res] = round_real(z);
    CountResult r;
    r.M = M;
    r.N = N;
    r.value = v;
    r.method = CountMethod::kasteleyn;
    r.residual = res;
    r.precision_bits = bits;
    if (res >= 0.25) throw std::runtime_error("Kasteleyn product: insufficient precision");
    return r;
}

CountResult rotated_count_formula(int M, int N, int precision_bits, FormulaVariant variant) {
    if (M < 1 || N < 1 || N > 24) throw std::invalid_argument("rotated formula needs M >= 1 and 1 <= N <= 24");
    PrecisionGuard guard(precision_bits);
    const Real pi = real_pi();
    const Real quarter = pi / 4;
    auto weight = [&](const Real& angle) { return mp::pow(mp::cos(angle - quarter), M); };
    auto sign = [](long k) { return (std::abs(k) % 2) ? -1 : 1; };

    Real total = 0;
    if (N % 2) {
        std::vector<Real> wp(N), wm(N);
        for (int j = 1; j <= N; ++j) {
            const Real t = (2 * j - 1) * pi / (4 * N);
            wp[j - 1] = weight(t);
            wm[j - 1] = weight(-t);
        }
        const auto poly = sign_sum_polynomial(wp, wm);
        for (int s = -N + 2; s <= N; s += 4) total += sign(static_cast<long>(M) * (N - s) / 4) * poly[s + N];
        total *= 2;
    } else {
        std::vector<Real> wp(N), wm(N);
        for (int j = 1; j <= N; ++j) {
            const Real t = (2 * j - 1) * pi / (2 * N);
            wp[j - 1] = weight(t);
            wm[j - 1] = weight(-t);
        }
        const auto ramond = sign_sum_polynomial(wp, wm);
        for (int j = 1; j <= N; ++j) {
            const Real t = (j == N / 2) ? Real(0) : Real(j * pi / N);
            wp[j - 1] = weight(t);
            wm[j - 1] = weight(-t);
        }
        if (variant == FormulaVariant::corrected && M % 2) wm[N / 2 - 1] = -wm[N / 2 - 1];
        const auto ns = sign_sum_polynomial(wp, wm);
        for (int s = -N; s <= N; ++s) {
            if (mod4(s) == 0) total += sign(static_cast<long>(M) * (2 * N + s) / 4) * ramond[N - std::abs(s)];
            if (mod4(s) == 2) total += sign(static_cast<long>(M) * (2 * N + std::abs(s) + 2) / 4) * ns[N - std::abs(s)];
        }
    }
    total *= mp::pow(Real(2), M * N);
    auto [v, res] = round_real(total);
    CountResult r;
    r.M = M;
    r.N = N;
    r.value = v;
    r.method = CountMethod::formula;
    r.residual = res;
    r.precision_bits = precision_bits;
    if (res >= 0.25) throw std::runtime_error("rotated formula: insufficient precision");
    return r;
}

CountResult rotated_count(int M, int N, int precision_bits, FormulaVariant variant) {
    int bits = precision_bits > 0 ? precision_bits : 64 + M * N;
    for (int attempt = 0; attempt < 8; ++attempt, bits *= 2) {
        try {
            CountResult r = rotated_count_formula(M, N, bits, variant);
            if (r.residual < 1e-3) return r;
        } catch (const std::runtime_error&) {
        }
    }
    throw std::runtime_error("rotated formula did not converge");
}

namespace {

// Columns of the isotropic transfer matrix (weights a = b = c2 = 1, c1 = 2), T(b, a).
struct SparseColumns {
    int N = 0;
    std::vector<std::uint32_t> start;
    std::vector<std::uint32_t> row;
    std::vector<std::uint64_t> weight;
};

SparseColumns isotropic_columns(int N) {
    SparseColumns sc;
    sc.N = N;
    const std::uint32_t dim = 1u << N;
    sc.start.push_back(0);
    struct State {
        std::uint32_t b;
        int alpha;
        std::uint64_t w;
    };
    std::vector<State> cur, next;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> col;
    for (std::uint32_t a = 0; a < dim; ++a) {
        col.clear();
        for (int a0 = 0; a0 < 2; ++a0) {
            cur.assign(1, {0u, a0, 1u});
            for (int j = 0; j < N; ++j) {
                next.clear();
                const int aj = (a >> j) & 1u;
                for (const auto& st : cur) {
                    for (int bj = 0; bj < 2; ++bj) {
                        const int ar = aj + st.alpha - bj;
                        if (ar < 0 || ar > 1) continue;
                        // (bottom, left, top, right) = (aj, alpha, bj, ar); c1 = (1,0,0,1) weighs 2.
                        const std::uint64_t w = (aj == 1 && st.alpha == 0 && bj == 0) ? 2u : 1u;
                        next.push_back({st.b | (std::uint32_t(bj) << j), ar, st.w * w});
                    }
                }
                cur.swap(next);
            }
            for (const auto& st : cur)
                if (st.alpha == a0) col.emplace_back(st.b, st.w);
        }
        std::sort(col.begin(), col.end());
        for (std::size_t k = 0; k < col.size();) {
            std::uint64_t w = 0;
            std::size_t l = k;
            while (l < col.size() && col[l].first == col[k].first) w += col[l++].second;
            sc.row.push_back(col[k].first);
            sc.weight.push_back(w);
            k = l;
        }
        sc.start.push_back(static_cast<std::uint32_t>(sc.row.size()));
    }
    return sc;
}

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) { return static_cast<std::uint64_t>((u128)a * b % m); }

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (n % p == 0) return n == p;
    std::uint64_t d = n - 1;
    int r = 0;
    while (d % 2 == 0) d /= 2, ++r;
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint32_t canonical_rotation(std::uint32_t s, int N) {
    std::uint32_t best = s;
    const std::uint32_t mask = (N == 32) ? ~0u : ((1u << N) - 1);
    for (int k = 1; k < N; ++k) {
        s = ((s >> 1) | ((s & 1u) << (N - 1))) & mask;
        best = std::min(best, s);
    }
    return best;
}

}  // namespace

std::vector<BigInt> rotated_trace_series(int max_m, int N) {
    if (N < 1 || N > 14) throw std::invalid_argument("trace oracle limited to 1 <= N <= 14");
    if (max_m < 1) throw std::invalid_argument("M must be positive");
    const SparseColumns sc = isotropic_columns(N);
    const std::uint32_t dim = 1u << N;

    // Trace is shift invariant: one representative per necklace, weighted by orbit size.
    std::vector<std::uint32_t> reps;
    std::vector<std::uint64_t> orbit(dim, 0);
    for (std::uint32_t s = 0; s < dim; ++s) orbit[canonical_rotation(s, N)]++;
    for (std::uint32_t s = 0; s < dim; ++s)
        if (orbit[s]) reps.push_back(s);

    // Enough primes for dim * (max column sum)^M.
    std::uint64_t colmax = 1;
    for (std::uint32_t a = 0; a < dim; ++a) {
        std::uint64_t s = 0;
        for (std::uint32_t k = sc.start[a]; k < sc.start[a + 1]; ++k) s += sc.weight[k];
        colmax = std::max(colmax, s);
    }
    const double bound_bits = N + max_m * std::log2(double(colmax)) + 2;
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = (1ull << 61) - 1; primes.size() * 60.0 < bound_bits; p -= 2)
        if (is_prime(p)) primes.push_back(p);

    std::vector<BigInt> result(max_m, 0), modulus(max_m, 1);
    std::vector<std::uint64_t> v(dim), w(dim);
    std::vector<std::uint32_t> support, next_support;
    std::vector<char> mark(dim, 0);
    for (std::uint64_t p : primes) {
        std::vector<std::uint64_t> tr(max_m, 0);
        for (std::uint32_t a : reps) {
            std::fill(v.begin(), v.end(), 0);
            v[a] = 1;
            support.assign(1, a);
            for (int m = 1; m <= max_m; ++m) {
                next_support.clear();
                for (std::uint32_t s : support) {
                    const std::uint64_t vs = v[s];
                    v[s] = 0;
                    if (!vs) continue;
                    for (std::uint32_t k = sc.start[s]; k < sc.start[s + 1]; ++k) {
                        const std::uint32_t b = sc.row[k];
                        if (!mark[b]) mark[b] = 1, next_support.push_back(b);
                        w[b] = (w[b] + mulmod(vs, sc.weight[k], p)) % p;
                    }
                }
                for (std::uint32_t b : next_support) {
                    v[b] = w[b];
                    w[b] = 0;
                    mark[b] = 0;
                }
                support.swap(next_support);
                tr[m - 1] = (tr[m - 1] + mulmod(v[a], orbit[a] % p, p)) % p;
            }
            for (std::uint32_t s : support) v[s] = 0;
        }
        // Chinese remaindering into the running result.
        for (int m = 0; m < max_m; ++m) {
            const std::uint64_t cur = static_cast<std::uint64_t>(result[m] % p);
            const std::uint64_t mod_p = static_cast<std::uint64_t>(modulus[m] % p);
            const std::uint64_t delta = (tr[m] + p - cur) % p;
            const std::uint64_t t = mulmod(delta, powmod(mod_p, p - 2, p), p);
            result[m] += modulus[m] * t;
            modulus[m] *= p;
        }
    }
    return result;
}

CountResult rotated_count_trace(int M, int N) {
    CountResult r;
    r.M = M;
    r.N = N;
    r.value = rotated_trace_series(M, N).back();
    r.method = CountMethod::trace;
    return r;
}

CountResult enumerate_count(int M, int N) {
    if (M < 1 || N < 1 || M * N > 9) throw std::invalid_argument("enumeration limited to MN <= 9");
    // Isotropic tile weights by (bottom, left, top, right) index b | l<<1 | t<<2 | r<<3.
    std::array<int, 16> tile{};
    tile[0b0000] = 1;
    tile[0b1111] = 1;
    tile[0b0101] = 1;
    tile[0b1010] = 1;
    tile[0b1001] = 2;
    tile[0b0110] = 1;
    const int E = M * N;
    BigInt total = 0;
    std::uint64_t acc = 0;
    for (std::uint64_t bits = 0; bits < (1ull << (2 * E)); ++bits) {
        std::uint64_t w = 1;
        for (int r = 0; r < M && w; ++r) {
            for (int j = 0; j < N; ++j) {
                const int bottom = (bits >> (r * N + j)) & 1u;
                const int top = (bits >> (((r + 1) % M) * N + j)) & 1u;
                const int left = (bits >> (E + r * N + j)) & 1u;
                const int right = (bits >> (E + r * N + (j + 1) % N)) & 1u;
                w *= tile[bottom | (left << 1) | (top << 2) | (right << 3)];
                if (!w) break;
            }
        }
        acc += w;
    }
    total = acc;
    CountResult res;
    res.M = M;
    res.N = N;
    res.value = total;
    res.method = CountMethod::enumeration;
    return res;
}

std::pair<BigInt, BigInt> binomial_identity_sums(int N) {
    if (N < 2 || N % 2) throw std::invalid_argument("binomial identity needs even N");
    BigInt r = 0, ns = 0;
    for (int s = -N; s <= N; s += 2) {
        const BigInt c = binomial(N, (N - s) / 2);
        if (mod4(s) == 0) r += c;
        else ns += c;
    }
    return {r, ns};
}

namespace {

// sinh(ut) sinh((pi/2-u)t) / (t sinh(pi t) cosh(pi t/2)) without overflow.
double kernel(double u, double t) {
    if (t == 0.0) return u * (kPi / 2 - u) / kPi;
    const double A = u * t, B = (kPi / 2 - u) * t, C = kPi * t, D = kPi * t / 2;
    const double num = -std::expm1(-2 * A) * -std::expm1(-2 * B);
    const double den = -std::expm1(-2 * C) * (1 + std::exp(-2 * D));
    return std::exp(-kPi * t) * num / den / t;
}

}  // namespace

BulkFreeEnergy bulk_free_energy_forms(double u) {
    if (!(u > 0.0 && u < kPi / 2)) throw std::invalid_argument("bulk free energy needs 0 < u < pi/2");
    BulkFreeEnergy f;
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    const double inf = std::numeric_limits<double>::infinity();
    const double I1 = gauss_kronrod<double, 61>::integrate([u](double t) { return kernel(u, t); }, 0.0, inf, 20, 1e-13, &err);
    f.infinite_form = -2.0 * I1;

    boost::math::quadrature::tanh_sinh<double> ts;
    const double s2u = std::sin(2 * u);
    const double I2 = ts.integrate([s2u](double t) { return std::log(1.0 / std::sin(t) + s2u); }, 0.0, kPi / 2, 1e-13);
    f.finite_form = 0.5 * std::log(2.0) - I2 / kPi;
    f.difference = std::abs(f.infinite_form - f.finite_form);
    return f;
}

double bulk_free_energy(double u) {
    const auto f = bulk_free_energy_forms(u);
    if (f.difference > 1e-9) throw std::runtime_error("bulk free energy forms disagree");
    return f.finite_form;
}

ThermoResult residual_entropy() {
    ThermoResult r;
    boost::math::quadrature::tanh_sinh<double> ts;
    r.G = 0.5 * ts.integrate([](double t) { return std::log(1.0 + 1.0 / std::sin(t)); }, 0.0, kPi / 2, 1e-14);
    r.S = 2.0 * r.G / kPi;
    r.W = std::exp(r.S);
    r.f_bulk_isotropic = bulk_free_energy(kPi / 4);
    r.W_from_free_energy = std::sqrt(2.0) * std::exp(-r.f_bulk_isotropic);
    return r;
}

std::vector<GrowthRow> growth_table(int max_size) {
    if (max_size < 1 || max_size > 20) throw std::invalid_argument("growth table size must lie in [1, 20]");
    const double W = residual_entropy().W;
    std::vector<GrowthRow> rows;
    auto to_double = [](const BigInt& v) { return v.convert_to<double>(); };
    for (int M = 1; M <= max_size; ++M) {
        for (int N : {M, M + 1}) {
            if (N > max_size) continue;
            GrowthRow r;
            r.orientation = "rotated";
            r.M = M;
            r.N = N;
            r.value = rotated_count(M, N).value;
            r.per_dimer = std::exp(std::log(to_double(r.value)) / (M * N));
            r.deviation = r.per_dimer - W;
            rows.push_back(r);
        }
    }
    // Usual orientation: Z~_{2M x N} has MN dimers; N even.
    for (int M = 1; 2 * M <= max_size; ++M) {
        for (int N = 2; N <= max_size; N += 2) {
            if (N != 2 * M && N != M && N != M + 1) continue;
            GrowthRow r;
            r.orientation = "standard";
            r.M = 2 * M;
            r.N = N;
            r.value = kasteleyn_count(2 * M, N).value;
            r.per_dimer = std::exp(std::log(to_double(r.value)) / (M * N));
            r.deviation = r.per_dimer - W;
            rows.push_back(r);
        }
    }
    return rows;
}

}  // namespace fermidim
