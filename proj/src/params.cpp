#include "soliton/params.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace soliton {

FlowParams derive_params(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.25)) {
        if (alpha == 0.25)
            throw validation_error(
                "alpha = 1/4 is the affine-critical exponent; the sub-critical "
                "analysis (1-4*alpha divisors) degenerates there");
        if (alpha == 0.0)
            throw validation_error("alpha = 0 is a critical exponent; alpha must lie in (0, 1/4)");
        throw validation_error("alpha must lie in the open interval (0, 1/4)");
    }

    FlowParams p;
    p.alpha = alpha;

    // largest m with m^2 < 1/alpha <= (m+1)^2
    const double inv = 1.0 / alpha;
    int m = static_cast<int>(std::floor(std::sqrt(inv)));
    while (double(m) * m >= inv) --m;
    while (double(m + 1) * (m + 1) < inv) ++m;
    p.m = m;

    const double q = 2.0 * alpha * (1.0 - 2.0 * alpha);
    p.c_alpha = std::pow(q, alpha);
    p.beta_plus_0 = -2.0 * alpha;
    p.beta_minus_0 = 2.0 * alpha - 1.0;
    p.growth_exponent_graph = 1.0 / (1.0 - 2.0 * alpha);
    p.growth_exponent_dual = 1.0 / (2.0 * alpha);
    return p;
}

bool FoldSet::contains(int fold) const {
    return std::find(folds.begin(), folds.end(), fold) != folds.end();
}

FoldSet classify_shrinkers(const FlowParams& params) {
    // Andrews: the circle always; k-fold curves exactly for 3 <= k <= m.
    FoldSet set;
    set.m = params.m;
    set.folds.push_back(fold_round);
    for (int k = 3; k <= params.m; ++k) set.folds.push_back(k);
    return set;
}

void validate_grid_size(int n) {
    if (n < 8) throw validation_error("periodic grid needs n >= 8");
    if (n % 2 != 0) throw validation_error("periodic grid needs even n");
}

PeriodicGrid::PeriodicGrid(int n_samples) : n(n_samples), values(n_samples, 0.0) {
    validate_grid_size(n_samples);
}

PeriodicGrid::PeriodicGrid(int n_samples, double constant)
    : n(n_samples), values(n_samples, constant) {
    validate_grid_size(n_samples);
}

double PeriodicGrid::min() const { return *std::min_element(values.begin(), values.end()); }
double PeriodicGrid::max() const { return *std::max_element(values.begin(), values.end()); }

StripGrid::StripGrid(double smin, double smax, int ns, int ntheta)
    : s_min(smin), s_max(smax), n_s(ns), n_theta(ntheta) {
    if (!(s_min < s_max)) throw validation_error("strip grid needs s_min < s_max");
    if (n_s < 16) throw validation_error("strip grid needs n_s >= 16");
    if (n_theta < 8) throw validation_error("strip grid needs n_theta >= 8");
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    auto trim = [](std::string s) {
        const char* ws = " \t\r\n";
        auto b = s.find_first_not_of(ws);
        if (b == std::string::npos) return std::string();
        auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw validation_error("config line is not 'key = value': " + line);
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty()) throw validation_error("config line has empty key: " + line);
        cfg.entries[key] = val;
    }
    return cfg;
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    char* end = nullptr;
    double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str() || *end != '\0')
        throw validation_error("config value for '" + key + "' is not a number: " + it->second);
    return v;
}

int Config::get_int(const std::string& key, int fallback) const {
    double v = get_double(key, double(fallback));
    int i = static_cast<int>(v);
    if (double(i) != v)
        throw validation_error("config value for '" + key + "' is not an integer");
    return i;
}

}  // namespace soliton
