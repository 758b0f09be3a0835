#include "hoadi/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hoadi {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not a number: '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not an integer: '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "on" || value == "true" || value == "1") return true;
    if (value == "off" || value == "false" || value == "0") return false;
    throw std::invalid_argument("config key '" + key + "': expected on|off, got '" + value + "'");
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_int(key, trim(tok)));
    if (out.empty()) throw std::invalid_argument("config key '" + key + "': empty list");
    return out;
}

ModelKind parse_kind(const std::string& value) {
    if (value == "heston" || value == "sqr") return ModelKind::Sqr;
    if (value == "garch" || value == "var") return ModelKind::Var;
    if (value == "three_halves") return ModelKind::ThreeHalves;
    if (value == "sqrn") return ModelKind::SqrN;
    if (value == "varn") return ModelKind::VarN;
    if (value == "three_halves_n") return ModelKind::ThreeHalvesN;
    if (value == "custom") return ModelKind::Custom;
    throw std::invalid_argument(
        "config key 'kind': expected heston|garch|three_halves|sqrn|varn|three_halves_n|custom, got '"
        + value + "'");
}

void apply(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto range = [&](bool ok, const std::string& what) {
        if (!ok) throw std::invalid_argument("config key '" + key + "': " + what + ", got '" + value + "'");
    };
    if (key == "kind") {
        cfg.kind = parse_kind(value);
        const ModelKindInfo info = kind_info(cfg.kind);
        if (cfg.kind != ModelKind::Custom) {
            cfg.setup.params.alpha = info.alpha;
            cfg.setup.params.beta = info.beta;
            cfg.setup.params.drift = info.drift;
        }
    } else if (key == "alpha") {
        const double v = parse_double(key, value);
        range(v >= 0.0, "must be >= 0");
        cfg.setup.params.alpha = v;
    } else if (key == "beta") {
        const double v = parse_double(key, value);
        range(v >= 0.0, "must be >= 0");
        cfg.setup.params.beta = v;
    } else if (key == "kappa") {
        const double v = parse_double(key, value);
        range(v >= 0.0, "must be >= 0");
        cfg.setup.params.kappa = v;
    } else if (key == "theta") {
        const double v = parse_double(key, value);
        range(v >= 0.0, "must be >= 0");
        cfg.setup.params.theta = v;
    } else if (key == "v") {
        const double v = parse_double(key, value);
        range(v > 0.0, "must be > 0");
        cfg.setup.params.v = v;
    } else if (key == "rho") {
        const double v = parse_double(key, value);
        range(v >= -1.0 && v <= 1.0, "must lie in [-1, 1]");
        cfg.setup.params.rho = v;
    } else if (key == "r") {
        const double v = parse_double(key, value);
        range(v >= 0.0, "must be >= 0");
        cfg.setup.params.r = v;
    } else if (key == "lambda0") {
        cfg.setup.params.lambda0 = parse_double(key, value);
    } else if (key == "strike") {
        const double v = parse_double(key, value);
        range(v > 0.0, "must be > 0");
        cfg.setup.spec.strike = v;
    } else if (key == "maturity") {
        const double v = parse_double(key, value);
        range(v > 0.0, "must be > 0");
        cfg.setup.spec.maturity = v;
        cfg.setup.domain.T = v;
    } else if (key == "L1") {
        cfg.setup.domain.L1 = parse_double(key, value);
    } else if (key == "K1") {
        cfg.setup.domain.K1 = parse_double(key, value);
    } else if (key == "L2") {
        const double v = parse_double(key, value);
        range(v > 0.0, "must be > 0");
        cfg.setup.domain.L2 = v;
    } else if (key == "K2") {
        cfg.setup.domain.K2 = parse_double(key, value);
    } else if (key == "phi") {
        const double v = parse_double(key, value);
        range(v > 0.0 && v <= 1.0, "must lie in (0, 1]");
        cfg.setup.adi.phi = v;
    } else if (key == "psi") {
        const double v = parse_double(key, value);
        range(v == 0.5, "must equal 0.5 (second order in time)");
        cfg.setup.adi.psi = v;
    } else if (key == "dt_factor") {
        const double v = parse_double(key, value);
        range(v > 0.0, "must be > 0");
        cfg.setup.dt_factor = v;
    } else if (key == "smoothing") {
        cfg.setup.smoothing = parse_bool(key, value);
    } else if (key == "smoothing_scale") {
        const double v = parse_double(key, value);
        range(v > 0.0 && v <= 4.0, "must lie in (0, 4]");
        cfg.setup.smoothing_scale = v;
    } else if (key == "smoothing_h") {
        if (value == "auto") cfg.setup.smoothing_h.reset();
        else {
            const double v = parse_double(key, value);
            range(v > 0.0, "must be auto or > 0");
            cfg.setup.smoothing_h = v;
        }
    } else if (key == "kernel_resolution") {
        const int v = parse_int(key, value);
        range(v >= 1024, "must be >= 1024");
        cfg.setup.kernel_resolution = v;
    } else if (key == "threads") {
        const int v = parse_int(key, value);
        range(v >= 0, "must be >= 0 (0 = hardware)");
        cfg.setup.threads = v;
    } else if (key == "method") {
        range(value == "full" || value == "sparse", "must be full|sparse");
        cfg.method = value;
    } else if (key == "level") {
        const int v = parse_int(key, value);
        range(v >= 3 && v <= 16, "must lie in [3, 16]");
        cfg.level = v;
    } else if (key == "exclusion_min") {
        const int v = parse_int(key, value);
        range(v >= 3, "must be >= 3 (solver needs 7 nodes per axis)");
        cfg.exclusion_min = v;
    } else if (key == "subgrid_dt") {
        if (value == "max") cfg.subgrid_dt = SubgridDtRule::MaxLevel;
        else if (value == "sum") cfg.subgrid_dt = SubgridDtRule::SumLevel;
        else if (value == "level") cfg.subgrid_dt = SubgridDtRule::CombinationLevel;
        else range(false, "must be max|sum|level");
    } else if (key == "eval_level") {
        if (value == "auto") cfg.eval_level.reset();
        else {
            const int v = parse_int(key, value);
            range(v >= 3 && v <= 12, "must be auto or in [3, 12]");
            cfg.eval_level = v;
        }
    } else if (key == "ref_level") {
        const int v = parse_int(key, value);
        range(v >= 5 && v <= 10, "must lie in [5, 10]");
        cfg.reference_level = v;
    } else if (key == "study_full_ns") {
        cfg.study_full_ns = parse_int_list(key, value);
    } else if (key == "study_sparse_ns") {
        cfg.study_sparse_ns = parse_int_list(key, value);
    } else if (key == "spot") {
        const double v = parse_double(key, value);
        range(v > 0.0, "must be > 0");
        cfg.spot = v;
    } else if (key == "sigma") {
        const double v = parse_double(key, value);
        range(v > 0.0, "must be > 0");
        cfg.sigma = v;
    } else if (key == "out_dir") {
        cfg.out_dir = value;
    } else if (key == "cache_dir") {
        cfg.cache_dir = value;
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "kind", "alpha", "beta", "kappa", "theta", "v", "rho", "r", "lambda0",
        "strike", "maturity", "L1", "K1", "L2", "K2", "phi", "psi", "dt_factor",
        "smoothing", "smoothing_scale", "smoothing_h", "kernel_resolution", "threads", "method", "level",
        "exclusion_min", "subgrid_dt", "eval_level", "ref_level",
        "study_full_ns", "study_sparse_ns", "spot", "sigma", "out_dir", "cache_dir"};
    return keys;
}

RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides) {
    RunConfig cfg;
    if (!path.empty()) {
        std::ifstream is(path);
        if (!is) throw std::invalid_argument("cannot open config file: " + path);
        std::string line;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument(path + ":" + std::to_string(lineno)
                                            + ": expected key = value");
            apply(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("override must be key=value: '" + ov + "'");
        apply(cfg, trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)));
    }
    cfg.setup.validate();
    return cfg;
}

std::string RunConfig::resolved_cache_dir() const {
    if (!cache_dir.empty()) return cache_dir;
    if (const char* env = std::getenv("HOADI_CACHE_DIR"); env && *env) return env;
    return (std::filesystem::path(out_dir) / "cache").string();
}

}  // namespace hoadi
