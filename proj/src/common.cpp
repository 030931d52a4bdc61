#include "fermidim/common.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fermidim {

double max_abs(const Mat& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

void Report::check(const std::string& what, double residual, double tolerance) {
    entries.emplace_back(what, residual);
    if (!(residual <= tolerance)) {
        pass = false;
        std::ostringstream os;
        os << what << ": residual " << residual << " > " << tolerance;
        notes.push_back(os.str());
    }
    if (std::isnan(residual)) max_residual = residual;
    else max_residual = std::max(max_residual, residual);
    tol = std::max(tol, tolerance);
}

void Report::require(const std::string& what, bool ok) {
    if (!ok) {
        pass = false;
        notes.push_back(what + ": failed");
    }
}

void Report::merge(const Report& other) {
    pass = pass && other.pass;
    max_residual = std::max(max_residual, other.max_residual);
    tol = std::max(tol, other.tol);
    for (const auto& e : other.entries) entries.emplace_back(other.name + "/" + e.first, e.second);
    for (const auto& n : other.notes) notes.push_back(other.name + ": " + n);
}

std::string Report::summary() const {
    std::ostringstream os;
    os << name << (pass ? " PASS" : " FAIL") << " max_residual=" << max_residual;
    for (const auto& n : notes) os << "\n  " << n;
    return os.str();
}

}  // namespace fermidim
