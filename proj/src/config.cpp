#include "hawkes/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "hawkes/errors.hpp"

namespace hawkes {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key, int line) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("config line " + std::to_string(line) + ": key '" + key +
                          "' expects a number, got '" + v + "'");
    return x;
}

long long parse_int(const std::string& v, const std::string& key, int line) {
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("config line " + std::to_string(line) + ": key '" + key +
                          "' expects an integer, got '" + v + "'");
    return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    RunConfig cfg = parse_config_text(ss.str(), path);
    return cfg;
}

RunConfig parse_config_text(const std::string& text, const std::string& name) {
    RunConfig cfg;
    cfg.source_path = name;

    std::map<std::string, std::pair<std::string, int>> kv; // key -> (value, line)
    {
        std::stringstream ss(text);
        std::string line;
        int lineno = 0;
        while (std::getline(ss, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": expected 'key = value', got '" + line + "'");
            const std::string key = trim(line.substr(0, eq));
            const std::string val = trim(line.substr(eq + 1));
            if (key.empty() || val.empty())
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": empty key or value");
            if (kv.count(key))
                throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" +
                                  key + "'");
            kv[key] = {val, lineno};
        }
    }

    const auto take = [&](const std::string& key) -> std::optional<std::pair<std::string, int>> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        auto out = it->second;
        kv.erase(it);
        return out;
    };
    const auto defaulted = [&](const std::string& key, const std::string& value) {
        cfg.applied_defaults.push_back(key + "=" + value);
    };

    // kernel
    if (auto fam = take("kernel.family")) {
        cfg.kernel_family = fam->first;
        if (cfg.kernel_family == "exponential") {
            auto a = take("kernel.a"), b = take("kernel.b");
            if (!a || !b)
                throw ConfigError("config: exponential kernel needs kernel.a and kernel.b");
            cfg.kernel_a = parse_double(a->first, "kernel.a", a->second);
            cfg.kernel_b = parse_double(b->first, "kernel.b", b->second);
        } else if (cfg.kernel_family == "truncated_power") {
            auto c0 = take("kernel.c0"), beta = take("kernel.beta"), tcut = take("kernel.tcut");
            if (!c0 || !beta || !tcut)
                throw ConfigError(
                    "config: truncated_power kernel needs kernel.c0, kernel.beta, kernel.tcut");
            cfg.kernel_c0 = parse_double(c0->first, "kernel.c0", c0->second);
            cfg.kernel_beta = parse_double(beta->first, "kernel.beta", beta->second);
            cfg.kernel_tcut = parse_double(tcut->first, "kernel.tcut", tcut->second);
        } else if (cfg.kernel_family == "tabulated") {
            auto f = take("kernel.file");
            if (!f) throw ConfigError("config: tabulated kernel needs kernel.file");
            cfg.kernel_file = f->first;
        } else if (cfg.kernel_family == "zero") {
            // no parameters
        } else {
            throw ConfigError("config line " + std::to_string(fam->second) +
                              ": unknown kernel.family '" + cfg.kernel_family + "'");
        }
    } else {
        throw ConfigError("config: missing required key kernel.family");
    }

    if (auto a = take("alpha"))
        cfg.alpha = parse_double(a->first, "alpha", a->second);
    else
        throw ConfigError("config: missing required key alpha");
    if (!(cfg.alpha > 0.0)) throw ConfigError("config: alpha must be positive");

    if (auto l = take("L"))
        cfg.L = static_cast<int>(parse_int(l->first, "L", l->second));
    else
        throw ConfigError("config: missing required key L");
    if (cfg.L < 1) throw ConfigError("config: L must be >= 1");

    if (auto w = take("window")) {
        if (w->first == "circulant")
            cfg.window = Window::Circulant;
        else if (w->first == "restricted")
            cfg.window = Window::Restricted;
        else
            throw ConfigError("config line " + std::to_string(w->second) +
                              ": window must be circulant or restricted");
    } else {
        defaulted("window", "circulant");
    }

    if (auto t = take("T"))
        cfg.T = parse_double(t->first, "T", t->second);
    else
        throw ConfigError("config: missing required key T");
    if (!(cfg.T > 0.0)) throw ConfigError("config: T must be positive");

    if (auto hh = take("h")) {
        cfg.h = parse_double(hh->first, "h", hh->second);
        if (!(cfg.h > 0.0) || cfg.h > cfg.T) throw ConfigError("config: h must lie in (0, T]");
    } else {
        cfg.h = cfg.T / 2000.0;
        defaulted("h", fmt(cfg.h));
    }

    if (auto m = take("mu")) {
        cfg.mu_spec = m->first;
    } else {
        cfg.mu_spec = "constant:1";
        defaulted("mu", cfg.mu_spec);
    }

    if (auto r = take("replicas")) {
        cfg.replicas = static_cast<int>(parse_int(r->first, "replicas", r->second));
        if (cfg.replicas < 1) throw ConfigError("config: replicas must be >= 1");
    } else {
        defaulted("replicas", "100");
    }

    if (auto ts = take("times")) {
        for (const auto& item : split(ts->first, ','))
            cfg.times.push_back(parse_double(item, "times", ts->second));
        if (cfg.times.empty()) throw ConfigError("config: times must not be empty");
        for (std::size_t i = 0; i < cfg.times.size(); ++i) {
            if (!(cfg.times[i] > 0.0) || cfg.times[i] > cfg.T)
                throw ConfigError("config: times must lie in (0, T]");
            if (i > 0 && !(cfg.times[i] > cfg.times[i - 1]))
                throw ConfigError("config: times must be strictly increasing");
        }
    } else {
        cfg.times = {cfg.T};
        defaulted("times", fmt(cfg.T));
    }

    if (auto s = take("sites")) {
        for (const auto& item : split(s->first, ',')) {
            const int d = static_cast<int>(parse_int(item, "sites", s->second));
            if (d < -cfg.L || d > cfg.L)
                throw ConfigError("config: site displacement outside [-L, L]");
            cfg.site_displacements.push_back(d);
        }
    } else {
        cfg.site_displacements = {0, cfg.L};
        defaulted("sites", "0," + std::to_string(cfg.L));
    }

    if (auto t = take("target")) {
        if (t->first == "subcritical")
            cfg.target = Target::SubCriticalLaw;
        else if (t->first == "supercritical")
            cfg.target = Target::SuperCriticalLaw;
        else if (t->first == "meanfield")
            cfg.target = Target::MeanFieldOnly;
        else
            throw ConfigError("config line " + std::to_string(t->second) +
                              ": target must be subcritical, supercritical or meanfield");
    } else {
        defaulted("target", "meanfield");
    }

    if (auto s = take("seed")) {
        cfg.seed = static_cast<std::uint64_t>(parse_int(s->first, "seed", s->second));
    } else {
        defaulted("seed", "0");
    }
    if (auto g = take("guard")) {
        const long long v = parse_int(g->first, "guard", g->second);
        if (v < 1) throw ConfigError("config: guard must be positive");
        cfg.guard = static_cast<std::uint64_t>(v);
    } else {
        defaulted("guard", "100000000");
    }

    if (auto p = take("powers")) {
        for (const auto& item : split(p->first, ','))
            cfg.powers.push_back(static_cast<int>(parse_int(item, "powers", p->second)));
    } else {
        cfg.powers = {0, 1, 2, 4, 8, 16, 32, 64};
        defaulted("powers", "0,1,2,4,8,16,32,64");
    }

    if (auto p = take("stable.n")) {
        for (const auto& item : split(p->first, ','))
            cfg.stable_n.push_back(static_cast<int>(parse_int(item, "stable.n", p->second)));
    } else {
        cfg.stable_n = {16, 64, 256};
        defaulted("stable.n", "16,64,256");
    }
    if (auto p = take("stable.max_deficit"))
        cfg.stable_max_deficit = parse_double(p->first, "stable.max_deficit", p->second);

    if (!kv.empty()) {
        const auto& first = *kv.begin();
        throw ConfigError("config line " + std::to_string(first.second.second) +
                          ": unknown key '" + first.first + "'");
    }
    return cfg;
}

std::string RunConfig::canonical_text() const {
    std::map<std::string, std::string> m;
    m["kernel.family"] = kernel_family;
    if (kernel_family == "exponential") {
        m["kernel.a"] = fmt(kernel_a);
        m["kernel.b"] = fmt(kernel_b);
    } else if (kernel_family == "truncated_power") {
        m["kernel.c0"] = fmt(kernel_c0);
        m["kernel.beta"] = fmt(kernel_beta);
        m["kernel.tcut"] = fmt(kernel_tcut);
    } else if (kernel_family == "tabulated") {
        m["kernel.file"] = kernel_file;
    }
    m["alpha"] = fmt(alpha);
    m["L"] = std::to_string(L);
    m["window"] = window == Window::Circulant ? "circulant" : "restricted";
    m["mu"] = mu_spec;
    m["T"] = fmt(T);
    m["h"] = fmt(h);
    m["replicas"] = std::to_string(replicas);
    {
        std::string s;
        for (std::size_t i = 0; i < times.size(); ++i) s += (i ? "," : "") + fmt(times[i]);
        m["times"] = s;
    }
    {
        std::string s;
        for (std::size_t i = 0; i < site_displacements.size(); ++i)
            s += (i ? "," : "") + std::to_string(site_displacements[i]);
        m["sites"] = s;
    }
    m["target"] = target_name(target);
    m["seed"] = std::to_string(seed);
    m["guard"] = std::to_string(guard);
    {
        std::string s;
        for (std::size_t i = 0; i < powers.size(); ++i)
            s += (i ? "," : "") + std::to_string(powers[i]);
        m["powers"] = s;
    }
    {
        std::string s;
        for (std::size_t i = 0; i < stable_n.size(); ++i)
            s += (i ? "," : "") + std::to_string(stable_n[i]);
        m["stable.n"] = s;
    }
    if (stable_max_deficit) m["stable.max_deficit"] = fmt(*stable_max_deficit);

    std::string out;
    for (const auto& [k, v] : m) out += k + "=" + v + "\n";
    return out;
}

std::uint64_t RunConfig::config_hash() const { return fnv1a64(canonical_text()); }

TemporalKernel RunConfig::make_kernel() const {
    if (kernel_family == "exponential") return TemporalKernel::exponential(kernel_a, kernel_b);
    if (kernel_family == "truncated_power")
        return TemporalKernel::truncated_power(kernel_c0, kernel_beta, kernel_tcut);
    if (kernel_family == "zero") return TemporalKernel::zero();
    if (kernel_family == "tabulated") {
        std::ifstream in(kernel_file);
        if (!in) throw ConfigError("kernel.file not readable: " + kernel_file);
        std::vector<double> grid, values;
        std::string line;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            const auto parts = split(line, ',');
            if (parts.size() != 2)
                throw ConfigError("kernel.file: expected 't,value' rows in " + kernel_file);
            grid.push_back(parse_double(parts[0], "kernel.file t", 0));
            values.push_back(parse_double(parts[1], "kernel.file value", 0));
        }
        return TemporalKernel::tabulated(std::move(grid), std::move(values));
    }
    throw ConfigError("unknown kernel family: " + kernel_family);
}

LatticeKernel RunConfig::make_lattice() const { return LatticeKernel(alpha, L, window); }

std::vector<double> RunConfig::make_mu() const {
    const int N = 2 * L + 1;
    std::vector<double> mu(static_cast<std::size_t>(N), 0.0);
    const auto parts = split(mu_spec, ':');
    if (parts.empty()) throw ConfigError("mu: empty spec");
    if (parts[0] == "constant") {
        if (parts.size() != 2) throw ConfigError("mu: expected constant:<value>");
        const double v = parse_double(parts[1], "mu", 0);
        if (v < 0.0) throw ConfigError("mu: baseline must be nonnegative");
        std::fill(mu.begin(), mu.end(), v);
    } else if (parts[0] == "alternating") {
        // indicator of even displacements
        for (int d = -L; d <= L; ++d)
            mu[static_cast<std::size_t>(d + L)] = (std::abs(d) % 2 == 0) ? 1.0 : 0.0;
    } else if (parts[0] == "delta") {
        if (parts.size() != 3) throw ConfigError("mu: expected delta:<displacement>:<value>");
        const int d = static_cast<int>(parse_int(parts[1], "mu", 0));
        const double v = parse_double(parts[2], "mu", 0);
        if (d < -L || d > L) throw ConfigError("mu: delta displacement outside [-L, L]");
        if (v < 0.0) throw ConfigError("mu: baseline must be nonnegative");
        mu[static_cast<std::size_t>(d + L)] = v;
    } else if (parts[0] == "file") {
        if (parts.size() != 2) throw ConfigError("mu: expected file:<path>");
        std::ifstream in(parts[1]);
        if (!in) throw ConfigError("mu file not readable: " + parts[1]);
        double v;
        std::size_t i = 0;
        while (in >> v) {
            if (i >= mu.size()) throw ConfigError("mu file: more than 2L+1 values");
            if (v < 0.0) throw ConfigError("mu file: values must be nonnegative");
            mu[i++] = v;
        }
        if (i != mu.size()) throw ConfigError("mu file: expected exactly 2L+1 values");
    } else {
        throw ConfigError("mu: unknown spec '" + mu_spec + "'");
    }
    return mu;
}

HawkesConfig RunConfig::make_hawkes_config() const {
    HawkesConfig hc(make_lattice(), make_kernel(), make_mu(), T, seed);
    hc.explosion_guard = guard;
    return hc;
}

ExperimentPlan RunConfig::make_plan() const {
    // fail fast: regime must match the requested target before any simulation
    const KernelAnalysis an = make_kernel().analyze();
    if (target == Target::SubCriticalLaw && an.regime != Regime::SubCritical)
        throw RegimeError("target is subcritical but the kernel has I = " + std::to_string(an.I) +
                          " (" + regime_name(an.regime) + ")");
    if (target == Target::SuperCriticalLaw && an.regime != Regime::SuperCritical)
        throw RegimeError("target is supercritical but the kernel has I = " +
                          std::to_string(an.I) + " (" + regime_name(an.regime) + ")");

    ExperimentPlan plan{make_hawkes_config(), replicas, times, {}, target};
    for (int d : site_displacements) plan.observed_sites.push_back(d + L);
    plan.validate();
    return plan;
}

} // namespace hawkes
