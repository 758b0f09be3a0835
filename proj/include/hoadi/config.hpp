#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hoadi/harness.hpp"
#include "hoadi/pricing.hpp"

namespace hoadi {

// Validated run configuration assembled from a key=value file plus
// command-line overrides. Unknown keys are errors.
struct RunConfig {
    SolveSetup setup;
    ModelKind kind = ModelKind::Custom;
    std::string method = "full";  // full | sparse
    int level = 6;                // full-grid or combination level n
    int exclusion_min = 3;
    SubgridDtRule subgrid_dt = SubgridDtRule::MaxLevel;
    std::optional<int> eval_level;
    int reference_level = 8;
    std::vector<int> study_full_ns{3, 4, 5, 6};
    std::vector<int> study_sparse_ns{7, 8, 9, 10};
    double spot = 100.0;
    double sigma = 0.1;
    std::string out_dir = "out";
    std::string cache_dir;  // empty: HOADI_CACHE_DIR or <out_dir>/cache

    std::string resolved_cache_dir() const;
};

// Parses `path` (empty: defaults only), then applies key=value overrides.
// Throws std::invalid_argument with the key name and the accepted range.
RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides = {});

// All recognised keys, for error messages and docs.
const std::vector<std::string>& config_keys();

}  // namespace hoadi
