#include "hoadi/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hoadi/grid_io.hpp"
#include "hoadi/version.hpp"

namespace hoadi {

namespace fs = std::filesystem;

namespace {

std::string fnv1a(const std::string& text) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string setup_hash(const SolveSetup& setup) {
    std::ostringstream ss;
    const ModelParams& p = setup.params;
    ss << "kappa=" << fmt(p.kappa) << ";theta=" << fmt(p.theta) << ";v=" << fmt(p.v)
       << ";rho=" << fmt(p.rho) << ";r=" << fmt(p.r) << ";alpha=" << fmt(p.alpha)
       << ";beta=" << fmt(p.beta) << ";lambda0=" << fmt(p.lambda0)
       << ";drift=" << (p.drift == DriftForm::Linear ? "lin" : "n")
       << ";E=" << fmt(setup.spec.strike) << ";T=" << fmt(setup.spec.maturity)
       << ";L1=" << fmt(setup.domain.L1) << ";K1=" << fmt(setup.domain.K1)
       << ";L2=" << fmt(setup.domain.L2) << ";K2=" << fmt(setup.domain.K2)
       << ";phi=" << fmt(setup.adi.phi) << ";psi=" << fmt(setup.adi.psi)
       << ";c=" << fmt(setup.dt_factor) << ";smooth=" << (setup.smoothing ? 1 : 0)
       << ";hscale=" << fmt(setup.smoothing_scale)
       << ";hfix=" << (setup.smoothing_h ? fmt(*setup.smoothing_h) : "auto");
    return fnv1a(ss.str());
}

std::string Provenance::to_text() const {
    std::ostringstream ss;
    ss << "params_hash=" << params_hash << "\n"
       << "level=" << level.l1 << "," << level.l2 << "\n"
       << "dt_rule=" << dt_rule << "\n"
       << "smoothing_h=" << fmt(smoothing_h) << "\n"
       << "version=" << version << "\n";
    return ss.str();
}

Provenance Provenance::from_text(const std::string& text) {
    Provenance p;
    std::istringstream is(text);
    std::string line;
    std::map<std::string, std::string> kv;
    while (std::getline(is, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    p.params_hash = kv["params_hash"];
    if (std::sscanf(kv["level"].c_str(), "%d,%d", &p.level.l1, &p.level.l2) != 2)
        throw std::runtime_error("Provenance: bad level line");
    p.dt_rule = kv["dt_rule"];
    p.smoothing_h = std::stod(kv["smoothing_h"]);
    p.version = kv["version"];
    return p;
}

Provenance reference_provenance(const SolveSetup& setup, LevelIndex level) {
    Provenance prov;
    prov.params_hash = setup_hash(setup);
    prov.level = level;
    prov.dt_rule = "dt=" + std::string("c*delta^2,c=") + fmt(setup.dt_factor);
    const UniformGrid grid(setup.domain, level);
    prov.smoothing_h = setup.smoothing ? setup.resolve_smoothing_h(grid) : 0.0;
    prov.version = kVersion;
    return prov;
}

ReferenceSolution build_reference(const SolveSetup& setup, int level) {
    const LevelIndex li{level, level};
    const UniformGrid grid(setup.domain, li);
    const TimeGrid tg = timegrid_for(std::pow(2.0, -level), setup.domain.T, setup.dt_factor);
    GridField field = solve_on_grid(setup, grid, tg);
    return {grid, std::move(field), reference_provenance(setup, li)};
}

namespace {

std::string ref_basename(const Provenance& prov) {
    return "ref_" + fnv1a(prov.to_text());
}

}  // namespace

void save_reference(const std::string& dir, const ReferenceSolution& ref) {
    fs::create_directories(dir);
    const std::string base = (fs::path(dir) / ref_basename(ref.prov)).string();
    const std::string tmp_bin = base + ".vgf.tmp";
    const std::string tmp_prov = base + ".prov.tmp";
    write_field_binary(tmp_bin, ref.field);
    {
        std::ofstream os(tmp_prov);
        os << ref.prov.to_text();
    }
    fs::rename(tmp_bin, base + ".vgf");
    fs::rename(tmp_prov, base + ".prov");
}

bool load_reference(const std::string& dir, const SolveSetup& setup, int level,
                    ReferenceSolution& out) {
    const Provenance want = reference_provenance(setup, LevelIndex{level, level});
    const std::string base = (fs::path(dir) / ref_basename(want)).string();
    std::ifstream prov_in(base + ".prov");
    if (!prov_in) return false;
    std::stringstream buffer;
    buffer << prov_in.rdbuf();
    Provenance got = Provenance::from_text(buffer.str());
    if (!(got == want)) return false;
    const UniformGrid grid(setup.domain, want.level);
    out = ReferenceSolution{grid, read_field_binary(base + ".vgf", grid), got};
    return true;
}

ReferenceSolution get_or_build_reference(const std::string& cache_dir, const SolveSetup& setup,
                                         int level) {
    ReferenceSolution ref{UniformGrid(setup.domain, LevelIndex{0, 0}), GridField(UniformGrid(setup.domain, LevelIndex{0, 0})), {}};
    if (!cache_dir.empty() && load_reference(cache_dir, setup, level, ref)) return ref;
    ref = build_reference(setup, level);
    if (!cache_dir.empty()) save_reference(cache_dir, ref);
    return ref;
}

double region_max_error_vs_reference(const UniformGrid& agrid, const GridField& a,
                                     const ReferenceSolution& ref, const OptionSpec& spec,
                                     const ModelParams& params) {
    // sample the region densely: the candidate is interpolated to the
    // reference nodes, so the measured maximum does not depend on how the
    // coarse nodes happen to fall relative to the region
    const RegionMask mask = eval_region_mask(ref.grid, spec, params);
    const GridField on_ref = interpolate_to(agrid, a, ref.grid);
    double m = 0.0;
    for (int j = mask.j_lo; j <= mask.j_hi; ++j)
        for (int i = mask.i_lo; i <= mask.i_hi; ++i)
            m = std::max(m, std::abs(on_ref.at(i, j) - ref.field.at(i, j)));
    return m;
}

double region_max_error(const UniformGrid& agrid, const GridField& a, const ReferenceSolution& ref,
                        const RegionMask& mask) {
    if (mask.count() <= 0) throw std::invalid_argument("region_max_error: empty mask");
    const GridField ref_on_a = interpolate_to(ref.grid, ref.field, agrid);
    double m = 0.0;
    for (int j = mask.j_lo; j <= mask.j_hi; ++j)
        for (int i = mask.i_lo; i <= mask.i_hi; ++i)
            m = std::max(m, std::abs(a.at(i, j) - ref_on_a.at(i, j)));
    return m;
}

std::vector<double> estimate_order(std::span<const double> errors) {
    if (errors.size() < 2) throw std::invalid_argument("estimate_order: need at least 2 entries");
    for (double e : errors)
        if (!(e > 0.0)) throw std::invalid_argument("estimate_order: errors must be positive");
    std::vector<double> orders;
    orders.reserve(errors.size() - 1);
    for (size_t k = 1; k < errors.size(); ++k)
        orders.push_back(std::log2(errors[k - 1] / errors[k]));
    return orders;
}

std::vector<StudyRow> StudyResult::by_method(const std::string& method) const {
    std::vector<StudyRow> out;
    for (const auto& row : rows)
        if (row.method == method) out.push_back(row);
    return out;
}

StudyResult run_study(const StudyConfig& config) {
    config.setup.validate();
    StudyResult result;
    SolveSetup setup = config.setup;
    if (setup.smoothing && !setup.smoothing_h) {
        // Every run in the study, the reference included, solves the same
        // mollified problem: the step is anchored to the coarsest grid that
        // enters the comparison, so the high order is visible from the first
        // refinement on.
        int anchor = config.smoothing_anchor_level;
        if (anchor <= 0) {
            anchor = config.reference_level;
            for (int n : config.full_ns) anchor = std::min(anchor, n);
            for (int n : config.sparse_ns) anchor = std::min(anchor, config.exclusion_min);
        }
        const UniformGrid coarsest(setup.domain, LevelIndex{anchor, anchor});
        setup.smoothing_h = setup.smoothing_scale * coarsest.dx();
    }
    const ReferenceSolution ref =
        get_or_build_reference(config.cache_dir, setup, config.reference_level);
    result.reference = ref.prov;

    for (int n : config.full_ns) {
        FullSolve fs = full_grid_solve(setup, n);
        StudyRow row;
        row.method = "full";
        row.n = n;
        row.nodes = fs.grid.node_count();
        row.error = region_max_error_vs_reference(fs.grid, fs.field, ref, setup.spec, setup.params);
        row.seconds = fs.stats.seconds;
        result.rows.push_back(row);
    }
    for (int n : config.sparse_ns) {
        SparseSolve ss = sparse_solve(setup, n, config.subgrid_dt, config.exclusion_min);
        StudyRow row;
        row.method = "sparse";
        row.n = n;
        row.nodes = ss.nodes;
        row.error = region_max_error_vs_reference(ss.target, ss.field, ref, setup.spec, setup.params);
        row.seconds = ss.seconds;
        result.rows.push_back(row);
    }
    return result;
}

void write_study_csv(const std::string& path, const StudyResult& result) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os.precision(12);
    os << "method,n,nodes,error,seconds\n";
    for (const auto& row : result.rows)
        os << row.method << "," << row.n << "," << row.nodes << "," << row.error << ","
           << row.seconds << "\n";
}

}  // namespace hoadi
