#include "fermidim/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace fermidim {

namespace {

int parity_sign(long k) { return (std::abs(k) % 2) ? -1 : 1; }

double ordinate_angle(SectorClass cls, int N, int j) {
    switch (cls) {
        case SectorClass::Z4: return (2 * j - 1) * kPi / (4 * N);
        case SectorClass::Ramond: return (2 * j - 1) * kPi / (2 * N);
        case SectorClass::NeveuSchwarz: return j * kPi / N;
    }
    return 0.0;
}

int alternating_sum(const std::vector<int>& eps) {
    int a = 0;
    for (std::size_t j = 0; j < eps.size(); ++j) a += (j % 2 == 0) ? eps[j] : -eps[j];
    return a;
}

int plain_sum(const std::vector<int>& eps) {
    int s = 0;
    for (int e : eps) s += e;
    return s;
}

}  // namespace

cplx EigenvalueCandidate::value(cplx u, double rho) const {
    const cplx z2 = std::exp(2.0 * kI * u);
    cplx v = std::exp(-kI * double(N) * u) * double(sign) * std::pow(rho, N);
    if (cls == SectorClass::NeveuSchwarz) {
        v *= std::exp(-kI * kPi * double(N - 2) / 4.0) * double(N) / std::pow(2.0, N - 1) * double(eps[N / 2 - 1]);
        for (int j = 1; j <= N; ++j) {
            if (j == N / 2) continue;
            v *= (j == N) ? z2 : z2 + kI * double(eps[j - 1]) * std::tan(ordinate_angle(cls, N, j));
        }
        return v;
    }
    const double norm = (cls == SectorClass::Z4) ? std::pow(2.0, N - 0.5) : std::pow(2.0, N - 1);
    v *= std::exp(-kI * kPi * double(N) / 4.0) / norm;
    for (int j = 1; j <= N; ++j) v *= z2 + kI * double(eps[j - 1]) * std::tan(ordinate_angle(cls, N, j));
    return v;
}

double EigenvalueCandidate::isotropic_value() const {
    double v = sign * std::pow(2.0, N / 2.0);
    if (cls == SectorClass::NeveuSchwarz) {
        v *= eps[N / 2 - 1] * double(N) / std::pow(2.0, N - 1);
        for (int j = 1; j < N; ++j)
            if (j != N / 2) v *= 1.0 + eps[j - 1] * std::tan(ordinate_angle(cls, N, j));
        return v;
    }
    v /= (cls == SectorClass::Z4) ? std::pow(2.0, N - 0.5) : std::pow(2.0, N - 1);
    for (int j = 1; j <= N; ++j) v *= 1.0 + eps[j - 1] * std::tan(ordinate_angle(cls, N, j));
    return v;
}

std::vector<EigenvalueCandidate> sector_candidates(int N, int ell) {
    if (N < 1 || N > 20) throw std::invalid_argument("candidate enumeration needs 1 <= N <= 20");
    if (ell < 0 || ell > N || (N - ell) % 2) throw std::invalid_argument("ell must match N parity");
    const SectorClass cls = sector_class(N, ell);
    std::vector<EigenvalueCandidate> out;
    std::vector<int> eps(N);
    for (std::uint32_t m = 0; m < (1u << N); ++m) {
        for (int j = 0; j < N; ++j) eps[j] = ((m >> j) & 1u) ? -1 : 1;
        EigenvalueCandidate c;
        if (cls == SectorClass::Z4) {
            const int a = alternating_sum(eps);
            if (std::abs(a) != ell || ((a - 1) % 4 + 4) % 4 != 0) continue;
            c.sign = parity_sign((1 - a) / 4);
        } else {
            if (plain_sum(eps) != -ell) continue;
            c.sign = (cls == SectorClass::Ramond) ? parity_sign(ell / 4) : parity_sign((ell + 2) / 4);
        }
        c.N = N;
        c.cls = cls;
        c.eps = eps;
        c.ell = ell;
        out.push_back(c);
    }
    return out;
}

std::vector<SpectralEntry> candidate_spectrum(int N, cplx u, double rho) {
    std::vector<SpectralEntry> out;
    for (int ell = N % 2; ell <= N; ell += 2) {
        const auto cands = sector_candidates(N, ell);
        std::vector<int> ds{(N - ell) / 2};
        if (ell > 0) ds.push_back((N + ell) / 2);
        for (int d : ds)
            for (const auto& c : cands) out.push_back({SectorLabel::make(N, d), c.value(u, rho), c});
    }
    return out;
}

std::vector<SpectralEntry> numerical_spectrum(int N, cplx u, double rho) {
    if (N > 10) throw std::invalid_argument("numerical spectrum limited to N <= 10");
    ModelParams p;
    p.rho = rho;
    const auto bd = sector_decompose(transfer_matrix(N, u, p), N);
    std::vector<SpectralEntry> out;
    for (const auto& [d, blk] : bd.blocks) {
        Eigen::ComplexEigenSolver<Mat> es(blk, false);
        if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failure");
        for (int k = 0; k < es.eigenvalues().size(); ++k) out.push_back({SectorLabel::make(N, d), es.eigenvalues()(k), {}});
    }
    return out;
}

MatchReport match_spectra(const std::vector<SpectralEntry>& cand, const std::vector<SpectralEntry>& num, double tol) {
    MatchReport rep;
    std::map<int, std::vector<cplx>> cs, ns;
    for (const auto& e : cand) cs[e.label.d].push_back(e.value);
    for (const auto& e : num) ns[e.label.d].push_back(e.value);
    std::map<int, bool> keys;
    for (const auto& [d, v] : cs) keys[d] = true;
    for (const auto& [d, v] : ns) keys[d] = true;
    for (const auto& [d, unused] : keys) {
        const auto& a = cs[d];
        const auto& b = ns[d];
        struct Pair {
            double dist;
            std::size_t i, j;
        };
        std::vector<Pair> pairs;
        pairs.reserve(a.size() * b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) pairs.push_back({std::abs(a[i] - b[j]), i, j});
        std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.dist < y.dist; });
        std::vector<bool> ua(a.size(), false), ub(b.size(), false);
        int matched = 0;
        for (const auto& p : pairs) {
            if (ua[p.i] || ub[p.j]) continue;
            if (p.dist > tol) {
                std::ostringstream os;
                os << "d=" << d << ": nearest pair distance " << p.dist << " (candidate " << a[p.i] << ", numeric " << b[p.j] << ")";
                rep.details.push_back(os.str());
                break;
            }
            ua[p.i] = ub[p.j] = true;
            ++matched;
            rep.max_distance = std::max(rep.max_distance, p.dist);
        }
        rep.matched += matched;
        const int missing = static_cast<int>(std::max(a.size(), b.size())) - matched;
        if (missing > 0 || a.size() != b.size()) {
            std::ostringstream os;
            os << "d=" << d << ": " << a.size() << " candidates, " << b.size() << " numeric, " << matched << " matched";
            rep.details.push_back(os.str());
        }
        rep.unmatched += missing;
    }
    rep.pass = rep.unmatched == 0;
    return rep;
}

Rational StringColumn::energy() const {
    Rational e = 0;
    for (std::size_t p = 0; p < energies.size(); ++p) e += energies[p] * (left[p] + right[p]);
    return e;
}

namespace {

StringColumn make_column(int positions, SectorClass cls) {
    StringColumn c;
    c.left.assign(positions, 0);
    c.right.assign(positions, 0);
    for (int p = 1; p <= positions; ++p) {
        switch (cls) {
            case SectorClass::Z4: c.energies.push_back(Rational(2 * p - 1, 4)); break;
            case SectorClass::Ramond: c.energies.push_back(Rational(2 * p - 1, 2)); break;
            case SectorClass::NeveuSchwarz: c.energies.push_back(Rational(p)); break;
        }
    }
    return c;
}

}  // namespace

StringDiagram string_analysis(const EigenvalueCandidate& cand) {
    const int N = cand.N;
    const auto& eps = cand.eps;
    StringDiagram sd;
    sd.cls = cand.cls;
    for (int j = 1; j <= N; ++j) {
        const double t = ordinate_angle(cand.cls, N, j);
        double y = -0.5 * std::log(std::abs(std::tan(t)));
        bool up = std::abs(std::tan(t)) <= 1.0;
        if (cand.cls == SectorClass::NeveuSchwarz && j == N) y = std::numeric_limits<double>::infinity(), up = true;
        if (cand.cls == SectorClass::NeveuSchwarz && j == N / 2) y = -std::numeric_limits<double>::infinity(), up = false;
        sd.ordinates.push_back(y);
        sd.upper.push_back(up);
        sd.one_string.push_back(eps[j - 1] == -1);
    }

    if (cand.cls == SectorClass::Z4) {
        sd.capacity = 1;
        sd.up = make_column((N + 1) / 2, cand.cls);
        sd.down = make_column((N - 1) / 2, cand.cls);
        for (int j = 1; j <= N; ++j) {
            const int m = eps[j - 1] == -1;
            if (2 * j - 1 <= N) sd.up.right[j - 1] = m;
            else sd.down.right[N - j] = m;
        }
        for (StringColumn* c : {&sd.up, &sd.down}) {
            c->sigma = 0;
            for (std::size_t p = 1; p <= c->right.size(); ++p) c->sigma += (p % 2 == 0 ? 1 : -1) * c->right[p - 1];
        }
    } else if (cand.cls == SectorClass::Ramond) {
        sd.capacity = 2;
        sd.up = make_column((N + 2) / 4, cand.cls);
        sd.down = make_column(N / 4, cand.cls);
        for (int j = 1; j <= N / 2; ++j) {
            const int right = eps[j - 1] == -1;
            const int left = eps[N - j] == +1;
            if (2 * j - 1 <= N / 2) sd.up.right[j - 1] = right, sd.up.left[j - 1] = left;
            else sd.down.right[N / 2 - j] = right, sd.down.left[N / 2 - j] = left;
        }
        for (StringColumn* c : {&sd.up, &sd.down}) {
            c->sigma = 0;
            for (std::size_t p = 0; p < c->right.size(); ++p) c->sigma += c->right[p] - c->left[p];
        }
    } else {
        sd.capacity = 2;
        sd.up = make_column(N / 4, cand.cls);
        sd.down = make_column(N / 2 - 1 - N / 4, cand.cls);
        for (int j = 1; j < N / 2; ++j) {
            const int right = eps[j - 1] == -1;
            const int left = eps[N - j - 1] == +1;
            if (4 * j <= N) sd.up.right[j - 1] = right, sd.up.left[j - 1] = left;
            else sd.down.right[N / 2 - j - 1] = right, sd.down.left[N / 2 - j - 1] = left;
        }
        sd.up.dummy = eps[N - 1] == -1;
        sd.down.dummy = eps[N / 2 - 1] == -1;
        for (StringColumn* c : {&sd.up, &sd.down}) {
            c->sigma = c->dummy - 1;
            for (std::size_t p = 0; p < c->right.size(); ++p) c->sigma += c->right[p] - c->left[p];
        }
    }
    sd.sigma = sd.up.sigma;
    sd.sigma_bar = sd.down.sigma;
    return sd;
}

Rational string_energy_shift(SectorClass cls) {
    switch (cls) {
        case SectorClass::Z4: return Rational(3, 32);
        case SectorClass::Ramond: return Rational(1, 8);
        case SectorClass::NeveuSchwarz: return Rational(0);
    }
    return 0;
}

bool selection_rule_holds(const EigenvalueCandidate& cand, const StringDiagram& sd) {
    const int total = sd.sigma + sd.sigma_bar;
    if ((sd.sigma - sd.sigma_bar) % 2) return false;
    const int ell = cand.ell;
    switch (cand.cls) {
        case SectorClass::Z4: return total == ((ell % 4 == 1) ? (ell - 1) / 2 : -(ell + 1) / 2);
        case SectorClass::Ramond: return 2 * total == ell;
        case SectorClass::NeveuSchwarz: return 2 * total == ell - 2;
    }
    return false;
}

Report verify_selection_rules(int N, double u) {
    Report rep;
    rep.name = "selection-rules N=" + std::to_string(N);
    const auto cand = candidate_spectrum(N, u);
    const auto num = numerical_spectrum(N, u);
    const auto m = match_spectra(cand, num, 1e-8);
    rep.require("candidate/numeric match", m.pass);
    for (const auto& d : m.details) rep.notes.push_back(d);
    int bad = 0, total = 0;
    for (int ell = N % 2; ell <= N; ell += 2) {
        for (const auto& c : sector_candidates(N, ell)) {
            ++total;
            const auto sd = string_analysis(c);
            if (!selection_rule_holds(c, sd)) {
                ++bad;
                if (bad <= 5) {
                    std::ostringstream os;
                    os << "ell=" << ell << " eps=";
                    for (int e : c.eps) os << (e > 0 ? '+' : '-');
                    os << " sigma=" << sd.sigma << " sigma_bar=" << sd.sigma_bar;
                    rep.notes.push_back(os.str());
                }
            }
        }
    }
    rep.entries.emplace_back("checked", total);
    rep.check("violations", bad, 0);
    return rep;
}

QExponentPoly string_generating_function(int N, int ell) {
    QExponentPoly gf;
    for (const auto& c : sector_candidates(N, ell)) {
        const auto sd = string_analysis(c);
        gf.add(sd.up.energy(), sd.down.energy(), 1);
    }
    return gf;
}

Report character_crosscheck(int N, int ell) {
    Report rep;
    rep.name = "characters N=" + std::to_string(N) + " ell=" + std::to_string(ell);
    const SectorClass cls = sector_class(N, ell);
    const QExponentPoly gf = string_generating_function(N, ell);
    const Rational shift = string_energy_shift(cls) - Rational(1, 12);
    const QExponentPoly target = finitized_sector_partition(N, ell).shifted(shift, shift);
    auto diff = gf.first_difference(target);
    rep.require("string generating function = finitized partition" + (diff ? " (" + *diff + ")" : std::string()), !diff);
    rep.require("count = binomial", gf.at_one() == binomial(N, (N - ell) / 2));

    // Column-by-column: each (sigma, sigma_bar) group factorizes into Gaussian binomials.
    std::map<std::pair<int, int>, QExponentPoly> groups;
    int n_up = 0, n_down = 0;
    for (const auto& c : sector_candidates(N, ell)) {
        const auto sd = string_analysis(c);
        groups[{sd.sigma, sd.sigma_bar}].add(sd.up.energy(), sd.down.energy(), 1);
        n_up = static_cast<int>(sd.up.right.size());
        n_down = static_cast<int>(sd.down.right.size());
    }
    auto slots = [&](int positions) {
        if (cls == SectorClass::Z4) return positions;
        if (cls == SectorClass::Ramond) return 2 * positions;
        return 2 * positions + 1;
    };
    const int s_up = slots(n_up), s_down = slots(n_down);
    int bad = 0;
    for (const auto& [key, poly] : groups) {
        const auto [s, sb] = key;
        const int m1 = s_up / 2 - s, m2 = s_down / 2 - sb;
        QExponentPoly expect;
        if (m1 >= 0 && m1 <= s_up && m2 >= 0 && m2 <= s_down)
            expect = QExponentPoly::outer(gaussian_binomial(s_up, m1), gaussian_binomial(s_down, m2))
                         .shifted(-column_offset(cls, s), -column_offset(cls, sb));
        if (!(expect == poly)) ++bad;
    }
    rep.check("(sigma, sigma_bar) groups not matching binomial pairs", bad, 0);
    return rep;
}

}  // namespace fermidim
