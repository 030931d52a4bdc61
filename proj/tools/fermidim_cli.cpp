#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "fermidim/counting.hpp"
#include "fermidim/cylinder.hpp"
#include "fermidim/operator_algebra.hpp"
#include "fermidim/qseries.hpp"
#include "fermidim/spectra.hpp"
#include "fermidim/strip.hpp"

using json = nlohmann::ordered_json;
using namespace fermidim;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Settings {
    std::string format = "json";
    int precision_bits = 0;
    double u = 0.37;
    double v = 0.81;
};

std::string big(const BigInt& v) { return v.str(); }

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json report_json(const Report& r) {
    json j;
    j["name"] = r.name;
    j["pass"] = r.pass;
    j["tol"] = r.tol;
    j["max_residual"] = r.max_residual;
    json e = json::object();
    for (const auto& [k, v] : r.entries) e[k] = v;
    j["entries"] = e;
    j["notes"] = r.notes;
    return j;
}

json count_json(const CountResult& r) {
    return {{"M", r.M}, {"N", r.N}, {"value", big(r.value)}, {"method", to_string(r.method)},
            {"residual", r.residual}, {"precision_bits", r.precision_bits}};
}

json jordan_json(const JordanSpectrum& js) {
    json arr = json::array();
    for (const auto& e : js.entries) {
        json j{{"eigenvalue", cplx_json(e.eigenvalue)}, {"blocks", e.blocks}};
        if (!e.exact.empty()) j["exact"] = e.exact;
        arr.push_back(j);
    }
    return arr;
}

json poly_json(const QExponentPoly& p) {
    json arr = json::array();
    for (const auto& [k, c] : p.terms())
        arr.push_back({{"q", rational_string(QExponentPoly::from_units(k.first))},
                       {"qbar", rational_string(QExponentPoly::from_units(k.second))},
                       {"coefficient", big(c)}});
    return arr;
}

// Key = value lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void emit(const json& doc, const std::string& format) {
    if (format == "json") {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    if (format == "text") {
        for (const auto& [k, v] : doc.items()) std::cout << k << ": " << (v.is_primitive() ? scalar_text(v) : v.dump()) << "\n";
        return;
    }
    // csv: the "rows" array if present, otherwise one row of the scalar fields.
    json rows = doc.contains("rows") && doc["rows"].is_array() ? doc["rows"] : json::array({doc});
    if (rows.empty()) return;
    std::vector<std::string> header;
    for (const auto& [k, v] : rows[0].items())
        if (v.is_primitive()) header.push_back(k);
    for (std::size_t i = 0; i < header.size(); ++i) std::cout << (i ? "," : "") << header[i];
    std::cout << "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < header.size(); ++i)
            std::cout << (i ? "," : "") << (r.contains(header[i]) ? scalar_text(r[header[i]]) : "");
        std::cout << "\n";
    }
}

json run_verify(const std::string& target, int N, double u, double v) {
    std::vector<Report> reps;
    auto want = [&](const char* t) { return target == t || target == "all"; };
    if (want("algebra")) reps.push_back(verify_algebra(N));
    if (want("ybe")) reps.push_back(verify_ybe(std::max(N, 3), u, v));
    if (target == "all") {
        reps.push_back(verify_crossing(N, u));
        reps.push_back(verify_commutation(N, u, v));
        reps.push_back(verify_strip_commutation(std::max(N, 2), u, v));
        reps.push_back(verify_strip_hamiltonian(std::max(N, 2)));
    }
    if (want("inversion-cylinder")) reps.push_back(verify_inversion_cylinder(N, u));
    if (want("inversion-strip")) reps.push_back(verify_strip_inversion(std::max(N, 2), u));
    if (want("appendix-a")) reps.push_back(verify_appendix_a(u));
    if (want("selection-rules")) reps.push_back(verify_selection_rules(N, u));
    if (want("braid")) reps.push_back(braid_and_j(N).report);
    if (reps.empty()) throw UsageError("unknown verify target " + target);
    json doc;
    bool pass = true;
    double worst = 0.0;
    json list = json::array();
    for (const auto& r : reps) {
        pass = pass && r.pass;
        worst = std::max(worst, r.max_residual);
        list.push_back(report_json(r));
    }
    doc["target"] = target;
    doc["N"] = N;
    doc["u"] = u;
    doc["max_residual"] = worst;
    doc["pass"] = pass;
    doc["reports"] = list;
    return doc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Free-fermion dimer model: counting, spectra, q-series and strip operators"};
    app.require_subcommand(1);
    app.fallthrough();

    Settings cfg;
    std::string format, config_path;
    int precision_cli = 0;
    app.add_option("--format", format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--config", config_path, "key = value defaults file");
    app.add_option("--precision-bits", precision_cli, "working precision for multiprecision sums");

    std::string count_kind;
    int cM = 0, cN = 0;
    auto* count = app.add_subcommand("count", "dimer configuration counts on the M x N torus");
    count->add_option("kind", count_kind, "rotated | standard | oracle")->required()->check(CLI::IsMember({"rotated", "standard", "oracle"}));
    count->add_option("M", cM)->required();
    count->add_option("N", cN)->required();

    int sN = 0;
    double su = 0.37;
    auto* spectrum = app.add_subcommand("spectrum", "candidate spectrum against exact diagonalization");
    spectrum->add_option("N", sN)->required();
    spectrum->add_option("u", su)->required();

    std::string vtarget;
    int vN = 4;
    double vu = -1.0, vv = -1.0;
    auto* verify = app.add_subcommand("verify", "identity checks");
    verify->add_option("target", vtarget)
        ->required()
        ->check(CLI::IsMember({"ybe", "algebra", "inversion-cylinder", "inversion-strip", "appendix-a", "selection-rules", "braid", "all"}));
    verify->add_option("N", vN);
    verify->add_option("u", vu);
    verify->add_option("v", vv);

    std::string qkind;
    int qa = 0, qb = 0, qform = 1;
    auto* qs = app.add_subcommand("qseries", "q-polynomials: binomial n m | sector N ell | mipf N | continuum N order");
    qs->add_option("kind", qkind)->required()->check(CLI::IsMember({"binomial", "sector", "mipf", "continuum"}));
    qs->add_option("a", qa)->required();
    qs->add_option("b", qb);
    qs->add_option("--form", qform, "alternative Z4 form (1 or 2)");

    int jN = 0;
    bool jexact = false;
    auto* jordan = app.add_subcommand("jordan", "Jordan structure of the strip Hamiltonian");
    jordan->add_option("N", jN)->required();
    jordan->add_flag("--exact", jexact, "exact arithmetic over Q(i, sqrt2)");

    auto* entropy = app.add_subcommand("entropy", "Catalan constant, residual entropy and growth constant");

    int gmax = 0;
    auto* growth = app.add_subcommand("growth", "per-dimer growth of exact counts");
    growth->add_option("MAX", gmax)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!config_path.empty()) {
            for (const auto& [k, v] : read_config(config_path)) {
                if (k == "precision_bits") cfg.precision_bits = std::stoi(v);
                else if (k == "format") cfg.format = v;
                else if (k == "u") cfg.u = std::stod(v);
                else if (k == "v") cfg.v = std::stod(v);
                else throw UsageError("unknown config key " + k);
            }
        }
        if (const char* env = std::getenv("FERMIDIM_PRECISION_BITS")) cfg.precision_bits = std::atoi(env);
        if (precision_cli) cfg.precision_bits = precision_cli;
        if (!format.empty()) cfg.format = format;
        if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text") throw UsageError("unknown format " + cfg.format);
        if (cfg.precision_bits && cfg.precision_bits < 53) throw UsageError("precision must be at least 53 bits");

        json doc;
        bool pass = true;
        if (*count) {
            if (count_kind == "rotated") {
                doc = count_json(rotated_count(cM, cN, cfg.precision_bits));
            } else if (count_kind == "standard") {
                doc = count_json(kasteleyn_count(cM, cN, cfg.precision_bits));
            } else {
                const CountResult f = rotated_count(cM, cN, cfg.precision_bits);
                const CountResult t = rotated_count_trace(cM, cN);
                doc = {{"M", cM}, {"N", cN}, {"formula", big(f.value)}, {"trace", big(t.value)}};
                pass = f.value == t.value;
                if (cM * cN <= 9) {
                    const CountResult e = enumerate_count(cM, cN);
                    doc["enumeration"] = big(e.value);
                    pass = pass && e.value == f.value;
                }
                doc["pass"] = pass;
            }
        } else if (*spectrum) {
            const auto cand = candidate_spectrum(sN, su);
            const auto num = numerical_spectrum(sN, su);
            const MatchReport m = match_spectra(cand, num, 1e-8);
            json rows = json::array();
            for (const auto& e : cand)
                rows.push_back({{"d", e.label.d}, {"ell", e.label.ell}, {"class", to_string(e.label.cls)},
                                {"re", e.value.real()}, {"im", e.value.imag()}});
            doc = {{"N", sN}, {"u", su}, {"matched", m.matched}, {"unmatched", m.unmatched},
                   {"max_distance", m.max_distance}, {"pass", m.pass}, {"rows", rows}};
            pass = m.pass;
        } else if (*verify) {
            doc = run_verify(vtarget, vN, vu >= 0 ? vu : cfg.u, vv >= 0 ? vv : cfg.v);
            pass = doc["pass"];
        } else if (*qs) {
            if (qkind == "binomial") {
                const auto p = gaussian_binomial(qa, qb);
                json coeffs = json::array();
                for (const auto& c : p.dense_q()) coeffs.push_back(big(c));
                doc = {{"n", qa}, {"m", qb}, {"coefficients", coeffs}, {"at_one", big(p.at_one())}};
            } else if (qkind == "sector") {
                const auto p = finitized_sector_partition(qa, qb, qform);
                doc = {{"N", qa}, {"ell", qb}, {"at_one", big(p.at_one())}, {"rows", poly_json(p)}};
            } else if (qkind == "mipf") {
                const MipfResult r = finitized_mipf(qa);
                doc = {{"N", qa}, {"equal", r.equal}, {"at_one", big(r.product.at_one())}, {"pass", r.equal}};
                if (!r.equal) doc["first_difference"] = r.first_difference;
                doc["rows"] = poly_json(r.product);
                pass = r.equal;
            } else {
                const int order = qb > 0 ? qb : qa / 4 + 1;
                const Report r = continuum_compare(qa, order);
                doc = report_json(r);
                pass = r.pass;
            }
        } else if (*jordan) {
            const JordanSpectrum js = jordan_structure(strip_hamiltonian(jN), jexact ? JordanMode::exact : JordanMode::numeric);
            doc = {{"N", jN}, {"mode", jexact ? "exact" : "numeric"}, {"dim", js.dim}, {"spectrum", jordan_json(js)}};
        } else if (*entropy) {
            const ThermoResult t = residual_entropy();
            doc = {{"G", t.G}, {"S", t.S}, {"W", t.W}, {"W_from_free_energy", t.W_from_free_energy},
                   {"f_bulk_isotropic", t.f_bulk_isotropic}};
        } else if (*growth) {
            json rows = json::array();
            for (const auto& r : growth_table(gmax))
                rows.push_back({{"orientation", r.orientation}, {"M", r.M}, {"N", r.N}, {"value", big(r.value)},
                                {"per_dimer", r.per_dimer}, {"deviation", r.deviation}});
            doc = {{"max", gmax}, {"rows", rows}};
        }
        emit(doc, cfg.format);
        return pass ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
