#include "slwave/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "slwave/expr.hpp"

namespace slwave {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail_line(std::size_t line, const std::string& msg) {
    throw UsageError("config error at line " + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& v, std::size_t line) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (...) {
        fail_line(line, "bad numeric value '" + v + "'");
    }
}

long to_long(const std::string& v, std::size_t line) {
    try {
        std::size_t used = 0;
        const long n = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return n;
    } catch (...) {
        fail_line(line, "bad integer value '" + v + "'");
    }
}

bool to_bool(const std::string& v, std::size_t line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail_line(line, "bad boolean value '" + v + "' (use true/false)");
}

void validate(const RunConfig& cfg) {
    if (cfg.N_modes < 1) throw UsageError("config: N_modes must be >= 1");
    if (cfg.m < 2 || cfg.m % 2 != 0) throw UsageError("config: m must be even and >= 2");
    if (!(cfg.tol > 0.0)) throw UsageError("config: tol must be positive");
    if (!(cfg.T > 0.0)) throw UsageError("config: T must be positive");
    if (cfg.time_samples < 2) throw UsageError("config: time_samples must be >= 2");
    if (cfg.k_min > cfg.k_max) throw UsageError("config: ladder has k_min > k_max");
    if (cfg.k_min < 1) throw UsageError("config: k_min must be >= 1");
    if (!(cfg.M >= 0.0)) throw UsageError("config: M must be nonnegative");
    if (cfg.kernel != "bump" && cfg.kernel != "bump2")
        throw UsageError("config: unknown kernel '" + cfg.kernel + "'");
    if (cfg.kernel_b != "bump" && cfg.kernel_b != "bump2")
        throw UsageError("config: unknown kernel_b '" + cfg.kernel_b + "'");
}

RunConfig parse_cfg(std::istream& in) {
    RunConfig cfg;
    std::string section;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail_line(lineno, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "problem" && section != "numerics" && section != "vws" &&
                section != "output")
                fail_line(lineno, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail_line(lineno, "expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (section.empty()) fail_line(lineno, "key '" + key + "' outside any section");

        if (section == "problem") {
            if (key == "p") cfg.p = val;
            else if (key == "nu") cfg.nu = val;
            else if (key == "u0") cfg.u0 = val;
            else if (key == "u1") cfg.u1 = val;
            else if (key == "f") cfg.f = val;
            else if (key == "u0_prime") cfg.u0_prime = val;
            else if (key == "u0_second") cfg.u0_second = val;
            else if (key == "u1_prime") cfg.u1_prime = val;
            else if (key == "u1_second") cfg.u1_second = val;
            else fail_line(lineno, "unknown key '" + key + "' in [problem]");
        } else if (section == "numerics") {
            if (key == "N_modes") cfg.N_modes = static_cast<std::size_t>(to_long(val, lineno));
            else if (key == "m") cfg.m = static_cast<std::size_t>(to_long(val, lineno));
            else if (key == "tol") cfg.tol = to_double(val, lineno);
            else if (key == "T") cfg.T = to_double(val, lineno);
            else if (key == "time_samples")
                cfg.time_samples = static_cast<std::size_t>(to_long(val, lineno));
            else fail_line(lineno, "unknown key '" + key + "' in [numerics]");
        } else if (section == "vws") {
            if (key == "k_min") cfg.k_min = static_cast<int>(to_long(val, lineno));
            else if (key == "k_max") cfg.k_max = static_cast<int>(to_long(val, lineno));
            else if (key == "kernel") cfg.kernel = val;
            else if (key == "kernel_b") cfg.kernel_b = val;
            else if (key == "M") cfg.M = to_double(val, lineno);
            else if (key == "mollify_data") cfg.mollify_data = to_bool(val, lineno);
            else fail_line(lineno, "unknown key '" + key + "' in [vws]");
        } else {  // output
            if (key == "dir") cfg.out_dir = val;
            else if (key == "formats") cfg.formats = val;
            else fail_line(lineno, "unknown key '" + key + "' in [output]");
        }
    }
    validate(cfg);
    return cfg;
}

}  // namespace

ordered_json config_to_json(const RunConfig& cfg) {
    ordered_json j;
    j["problem"] = {{"p", cfg.p},
                    {"nu", cfg.nu},
                    {"u0", cfg.u0},
                    {"u1", cfg.u1},
                    {"f", cfg.f},
                    {"u0_prime", cfg.u0_prime},
                    {"u0_second", cfg.u0_second},
                    {"u1_prime", cfg.u1_prime},
                    {"u1_second", cfg.u1_second}};
    j["numerics"] = {{"N_modes", cfg.N_modes},
                     {"m", cfg.m},
                     {"tol", cfg.tol},
                     {"T", cfg.T},
                     {"time_samples", cfg.time_samples}};
    j["vws"] = {{"k_min", cfg.k_min},
                {"k_max", cfg.k_max},
                {"kernel", cfg.kernel},
                {"kernel_b", cfg.kernel_b},
                {"M", cfg.M},
                {"mollify_data", cfg.mollify_data}};
    j["output"] = {{"dir", cfg.out_dir}, {"formats", cfg.formats}};
    return j;
}

RunConfig config_from_json(const ordered_json& j) {
    RunConfig cfg;
    try {
        const auto& p = j.at("problem");
        cfg.p = p.at("p").get<std::string>();
        cfg.nu = p.at("nu").get<std::string>();
        cfg.u0 = p.at("u0").get<std::string>();
        cfg.u1 = p.at("u1").get<std::string>();
        cfg.f = p.at("f").get<std::string>();
        cfg.u0_prime = p.value("u0_prime", std::string());
        cfg.u0_second = p.value("u0_second", std::string());
        cfg.u1_prime = p.value("u1_prime", std::string());
        cfg.u1_second = p.value("u1_second", std::string());
        const auto& n = j.at("numerics");
        cfg.N_modes = n.at("N_modes").get<std::size_t>();
        cfg.m = n.at("m").get<std::size_t>();
        cfg.tol = n.at("tol").get<double>();
        cfg.T = n.at("T").get<double>();
        cfg.time_samples = n.at("time_samples").get<std::size_t>();
        const auto& v = j.at("vws");
        cfg.k_min = v.at("k_min").get<int>();
        cfg.k_max = v.at("k_max").get<int>();
        cfg.kernel = v.at("kernel").get<std::string>();
        cfg.kernel_b = v.at("kernel_b").get<std::string>();
        cfg.M = v.at("M").get<double>();
        cfg.mollify_data = v.at("mollify_data").get<bool>();
        const auto& o = j.at("output");
        cfg.out_dir = o.at("dir").get<std::string>();
        cfg.formats = o.at("formats").get<std::string>();
    } catch (const ordered_json::exception& e) {
        throw UsageError(std::string("config JSON error: ") + e.what());
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
        ordered_json j;
        try {
            in >> j;
        } catch (const ordered_json::exception& e) {
            throw UsageError(std::string("config JSON parse error: ") + e.what());
        }
        return config_from_json(j);
    }
    return parse_cfg(in);
}

void split_jumps(const PiecewiseSmoothFn& fn, PiecewiseSmoothFn* smooth,
                 std::vector<SingularDescriptor::Jump>* jumps) {
    jumps->clear();
    const auto& bps = fn.breakpoints();
    std::vector<double> offsets{0.0};  // cumulative jump left of each piece
    for (double b : bps) {
        const double h = fn.jump(b);
        if (std::abs(h) > 1e-14) jumps->push_back({b, h});
        offsets.push_back(offsets.back() + h);
    }
    if (jumps->empty()) {
        *smooth = fn;
        return;
    }
    std::vector<PiecewiseSmoothFn::Piece> pieces;
    for (std::size_t i = 0; i <= bps.size(); ++i) {
        const double off = offsets[i];
        pieces.push_back(PiecewiseSmoothFn::Piece{
            [fn, off](double x) { return fn.value(x) - off; },
            [fn](double x) { return fn.derivative(x); }});
    }
    *smooth = PiecewiseSmoothFn(bps, std::move(pieces));
}

AssembledProblem assemble_problem(const RunConfig& cfg, const Grid& grid) {
    AssembledProblem ap;
    const PiecewiseSmoothFn p = make_profile(cfg.p);
    const PiecewiseSmoothFn nu = make_profile(cfg.nu);
    const PiecewiseSmoothFn u0 = make_profile(cfg.u0);
    const PiecewiseSmoothFn u1 = make_profile(cfg.u1);

    ap.cs.p = p;
    ap.cs.p_prime = p.piecewise_derivative();
    ap.cs.nu = nu;
    ap.cs.regularity = RegularityClass::classical;

    ap.data.u0.resize(grid.size());
    ap.data.u1.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ap.data.u0[i] = u0.value(grid.node(i));
        ap.data.u1[i] = u1.value(grid.node(i));
    }
    auto optional_samples = [&](const std::string& spec, std::vector<double>* out) {
        if (spec.empty()) return;
        const PiecewiseSmoothFn fn = make_profile(spec);
        out->resize(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) (*out)[i] = fn.value(grid.node(i));
    };
    optional_samples(cfg.u0_prime, &ap.data.u0_prime);
    optional_samples(cfg.u0_second, &ap.data.u0_second);
    optional_samples(cfg.u1_prime, &ap.data.u1_prime);
    optional_samples(cfg.u1_second, &ap.data.u1_second);

    ap.f = make_forcing_expr(cfg.f);

    split_jumps(p, &ap.vws.p, &ap.vws.p_jumps);
    ap.vws.p_prime = ap.vws.p.piecewise_derivative();
    split_jumps(nu, &ap.vws.nu, &ap.vws.nu_jumps);
    ap.vws.u0 = u0;
    ap.vws.u1 = u1;
    ap.vws.f = ap.f;
    ap.vws.T_end = cfg.T;
    ap.vws.N_modes = cfg.N_modes;
    ap.vws.grid_m = cfg.m;
    ap.vws.tol = cfg.tol;
    ap.vws.mollify_data = cfg.mollify_data;
    return ap;
}

}  // namespace slwave
