#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "fermidim/counting.hpp"
#include "fermidim/cylinder.hpp"
#include "fermidim/operator_algebra.hpp"
#include "fermidim/qseries.hpp"
#include "fermidim/spectra.hpp"
#include "fermidim/strip.hpp"

using namespace fermidim;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void fail(const std::string& why) {
        if (pass) detail << "first failure: " << why << "; ";
        pass = false;
    }
    void expect(bool ok, const std::string& why) {
        if (!ok) fail(why);
    }
};

int failures = 0;

void criterion(int k, double limit_seconds, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_seconds > 0 && secs > limit_seconds) {
        std::ostringstream os;
        os << "time " << secs << " s exceeds " << limit_seconds << " s";
        o.fail(os.str());
    }
    if (!o.pass) ++failures;
    std::cout << "Criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << "  (" << o.detail.str() << "time "
              << secs << " s)" << std::endl;
}

std::string tag(int M, int N) { return std::to_string(M) + "x" + std::to_string(N); }

}  // namespace

int main() {
    std::cout.precision(4);

    criterion(1, 10.0, [](Outcome& o) {
        const long table[5][5] = {{4, 8, 16, 32, 64},
                                  {0, 24, 80, 288, 1088},
                                  {0, 0, 448, 2624, 15616},
                                  {0, 0, 0, 26752, 280832},
                                  {0, 0, 0, 0, 5080064}};
        int checked = 0;
        for (int M = 1; M <= 5; ++M)
            for (int N = M; N <= 5; ++N, ++checked)
                o.expect(rotated_count(M, N).value == table[M - 1][N - 1], "rotated " + tag(M, N));
        o.expect(rotated_count(8, 8).value == BigInt("38735278017380352"), "rotated 8x8");
        o.detail << checked + 1 << " rotated entries; ";
    });

    criterion(2, 1.0, [](Outcome& o) {
        const long table[4][4] = {{8, 36, 200, 1156}, {0, 272, 3108, 39952}, {0, 0, 90176, 3113860}, {0, 0, 0, 311853312}};
        for (int a = 1; a <= 4; ++a)
            for (int b = a; b <= 4; ++b) {
                o.expect(kasteleyn_count(2 * a, 2 * b).value == table[a - 1][b - 1], "standard " + tag(2 * a, 2 * b));
                o.expect(kasteleyn_count(2 * b, 2 * a).value == table[a - 1][b - 1], "standard " + tag(2 * b, 2 * a));
            }
        o.detail << "10 standard entries, both orders; ";
    });

    criterion(3, 60.0, [](Outcome& o) {
        int small = 0, large = 0;
        for (int M = 1; M <= 9; ++M)
            for (int N = 1; M * N <= 9; ++N, ++small) {
                const BigInt f = rotated_count(M, N).value;
                o.expect(f == rotated_count_trace(M, N).value, "trace " + tag(M, N));
                o.expect(f == enumerate_count(M, N).value, "enumeration " + tag(M, N));
            }
        for (int N = 1; N <= 12; ++N) {
            const auto series = rotated_trace_series(12, N);
            for (int M = 1; M <= 12; ++M, ++large)
                o.expect(rotated_count(M, N).value == series[M - 1], "formula vs trace " + tag(M, N));
        }
        o.detail << small << " triple checks, " << large << " formula/trace pairs; ";
    });

    criterion(4, 120.0, [](Outcome& o) {
        std::mt19937_64 rng(20240607);
        std::uniform_real_distribution<double> dist(0.05, kPi / 2 - 0.05);
        double worst = 0.0, richardson = 0.0;
        auto take = [&](const Report& r) {
            worst = std::max(worst, r.max_residual);
            o.expect(r.pass && r.max_residual <= 1e-10, r.name);
        };
        for (int N = 2; N <= 8; ++N) {
            take(verify_algebra(N));
            const BraidResult br = braid_and_j(N);
            richardson = std::max(richardson, br.richardson);
            o.expect(br.report.pass, br.report.name);
            // The Richardson entry measures the limit extrapolation, not the identity.
            for (const auto& [what, value] : br.report.entries)
                if (what.rfind("Richardson", 0) != 0) {
                    worst = std::max(worst, value);
                    o.expect(value <= 1e-10, br.report.name + " " + what);
                }
            for (int k = 0; k < 10; ++k) {
                const double u = dist(rng), v = dist(rng);
                take(verify_ybe(std::max(N, 3), u, v));
                take(verify_crossing(N, u));
                take(verify_commutation(N, u, v));
                take(verify_inversion_cylinder(N, u));
                take(verify_strip_inversion(N, u));
                take(verify_strip_commutation(N, u, v));
                if (N == 2) take(verify_appendix_a(u));
            }
        }
        o.detail << "max residual " << worst << ", braid extrapolation " << richardson << "; ";
    });

    criterion(5, 0.0, [](Outcome& o) {
        std::mt19937_64 rng(777);
        std::uniform_real_distribution<double> dist(0.05, kPi / 2 - 0.05);
        double worst = 0.0;
        int matched = 0;
        for (int N = 1; N <= 8; ++N)
            for (int k = 0; k < 3; ++k) {
                const double u = dist(rng);
                const MatchReport m = match_spectra(candidate_spectrum(N, u), numerical_spectrum(N, u), 1e-8);
                o.expect(m.pass && m.unmatched == 0, "spectrum N=" + std::to_string(N));
                worst = std::max(worst, m.max_distance);
                matched += m.matched;
                const Report sel = verify_selection_rules(N, u);
                o.expect(sel.pass, sel.name);
            }
        o.detail << matched << " eigenvalues matched, max distance " << worst << "; ";
    });

    criterion(6, 0.0, [](Outcome& o) {
        o.expect(column_generating_function(SectorClass::Z4, 7, -2) == gaussian_binomial(7, 5), "[7,5]");
        o.expect(column_generating_function(SectorClass::Ramond, 6, 1) == gaussian_binomial(6, 2), "[6,2]");
        o.expect(column_generating_function(SectorClass::NeveuSchwarz, 7, 1) == gaussian_binomial(7, 2), "[7,2]");
        int checked = 0;
        for (auto cls : {SectorClass::Z4, SectorClass::Ramond, SectorClass::NeveuSchwarz})
            for (int n = 0; n <= 9; ++n) {
                if ((cls == SectorClass::Ramond && n % 2) || (cls == SectorClass::NeveuSchwarz && n % 2 == 0)) continue;
                for (int m = 0; m <= n; ++m, ++checked) {
                    const int sigma = n / 2 - m;
                    o.expect(column_generating_function(cls, n, sigma) == gaussian_binomial(n, m),
                             std::string(to_string(cls)) + " n=" + std::to_string(n) + " sigma=" + std::to_string(sigma));
                }
            }
        o.detail << checked << " columns; ";
    });

    criterion(7, 0.0, [](Outcome& o) {
        for (int N : {2, 4, 6, 8}) {
            const MipfResult r = finitized_mipf(N);
            o.expect(r.equal, "sum vs product N=" + std::to_string(N) + " " + r.first_difference);
            o.expect(r.product.at_one() == (BigInt(1) << N), "Z(1) N=" + std::to_string(N));
        }
        for (int N : {8, 12}) {
            const Report r = continuum_compare(N, N / 4 + 1);
            o.expect(r.pass, r.name);
        }
    });

    criterion(8, 0.0, [](Outcome& o) {
        int sectors = 0;
        for (int N = 1; N <= 6; ++N)
            for (int ell = N % 2; ell <= N; ell += 2, ++sectors) {
                const Report r = character_crosscheck(N, ell);
                o.expect(r.pass, r.name);
            }
        o.detail << sectors << " sectors; ";
    });

    criterion(9, 0.0, [](Outcome& o) {
        const ThermoResult t = residual_entropy();
        o.expect(std::abs(t.G - 0.915965594) <= 1e-8, "G");
        o.expect(std::abs(t.S - 0.583121808) <= 1e-8, "S");
        o.expect(std::abs(t.W - 1.791622812) <= 1e-8, "W");
        o.expect(std::abs(t.W_from_free_energy - 1.791622812) <= 1e-8, "W from f_bulk");
        double worst = 0.0;
        for (int k = 1; k <= 20; ++k) {
            const double u = k * (kPi / 2) / 21;
            worst = std::max(worst, bulk_free_energy_forms(u).difference);
        }
        o.expect(worst <= 1e-9, "free energy forms");
        double prev = 1e9;
        for (int M : {4, 6, 8, 10, 12}) {
            const double g = std::exp(std::log(rotated_count(M, M).value.convert_to<double>()) / (M * M));
            o.expect(g < prev && g > t.W, "growth M=" + std::to_string(M));
            prev = g;
        }
        o.detail << "G=" << std::setprecision(10) << t.G << " S=" << t.S << " W=" << t.W << std::setprecision(4)
                 << ", forms differ by " << worst << ", 12x12 growth " << prev << "; ";
    });

    criterion(10, 0.0, [](Outcome& o) {
        const JordanSpectrum j2 = jordan_structure(strip_hamiltonian(2), JordanMode::exact);
        o.expect(j2.entries.size() == 1 && j2.find(0.0) && j2.find(0.0)->blocks == std::vector<int>{2, 1, 1}, "N=2");
        const JordanSpectrum j4 = jordan_structure(strip_hamiltonian(4), JordanMode::exact);
        const double r2 = std::sqrt(2.0);
        o.expect(j4.entries.size() == 3, "N=4 eigenvalue count");
        o.expect(j4.find(0.0) && j4.find(0.0)->blocks == std::vector<int>{2, 2, 1, 1, 1, 1}, "N=4 zero");
        o.expect(j4.find(r2) && j4.find(r2)->blocks == std::vector<int>{2, 1, 1}, "N=4 +sqrt2");
        o.expect(j4.find(-r2) && j4.find(-r2)->blocks == std::vector<int>{2, 1, 1}, "N=4 -sqrt2");
        for (int N = 2; N <= 8; ++N) {
            const Report r = verify_strip_hamiltonian(N);
            o.expect(r.pass, r.name);
        }
    });

    return failures ? 1 : 0;
}
