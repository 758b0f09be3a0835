#pragma once

#include <span>
#include <string>
#include <vector>

#include "hoadi/grid.hpp"
#include "hoadi/pricing.hpp"

namespace hoadi {

// Identifies exactly which problem/protocol a cached reference solves.
struct Provenance {
    std::string params_hash;  // hash over model, option, domain, ADI and dt protocol
    LevelIndex level;
    std::string dt_rule;      // e.g. "dt=5*delta^2"
    double smoothing_h = 0.0;
    std::string version;

    std::string to_text() const;
    static Provenance from_text(const std::string& text);
    bool operator==(const Provenance&) const = default;
};

std::string setup_hash(const SolveSetup& setup);

struct ReferenceSolution {
    UniformGrid grid;
    GridField field;
    Provenance prov;
};

Provenance reference_provenance(const SolveSetup& setup, LevelIndex level);
ReferenceSolution build_reference(const SolveSetup& setup, int level);

// Disk cache: <dir>/ref_<hash>.vgf plus a plain-text .prov sidecar; a cache
// hit requires the provenance to match exactly. Writes go through a
// temporary file and an atomic rename.
void save_reference(const std::string& dir, const ReferenceSolution& ref);
bool load_reference(const std::string& dir, const SolveSetup& setup, int level,
                    ReferenceSolution& out);
ReferenceSolution get_or_build_reference(const std::string& cache_dir, const SolveSetup& setup,
                                         int level);

// max over the mask (on `agrid`) of |a - ref|, the reference interpolated to
// the coarse nodes (an exact copy when the nodes coincide).
double region_max_error(const UniformGrid& agrid, const GridField& a, const ReferenceSolution& ref,
                        const RegionMask& mask);

// max over the reference grid's region mask of |a - ref| with the candidate
// interpolated to the reference nodes: a dense, level-independent sampling
// of the region.
double region_max_error_vs_reference(const UniformGrid& agrid, const GridField& a,
                                     const ReferenceSolution& ref, const OptionSpec& spec,
                                     const ModelParams& params);

// order_k = log2(e_{k-1} / e_k); defined from the second entry on.
std::vector<double> estimate_order(std::span<const double> errors);

struct StudyRow {
    std::string method;  // "full" | "sparse"
    int n = 0;
    long nodes = 0;
    double error = 0.0;
    double seconds = 0.0;
};

struct StudyConfig {
    SolveSetup setup;
    std::vector<int> full_ns{3, 4, 5, 6};
    std::vector<int> sparse_ns{7, 8, 9, 10};
    int reference_level = 8;
    SubgridDtRule subgrid_dt = SubgridDtRule::MaxLevel;
    int exclusion_min = 3;
    int smoothing_anchor_level = 0;  // 0: coarsest level in the study
    std::string cache_dir;  // empty: build the reference in memory only
};

struct StudyResult {
    std::vector<StudyRow> rows;
    Provenance reference;

    std::vector<StudyRow> by_method(const std::string& method) const;
};

StudyResult run_study(const StudyConfig& config);

// CSV with header "method,n,nodes,error,seconds".
void write_study_csv(const std::string& path, const StudyResult& result);

}  // namespace hoadi
