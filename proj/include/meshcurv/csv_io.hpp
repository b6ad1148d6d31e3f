#pragma once

#include <string>
#include <utility>
#include <vector>

#include "meshcurv/bench.hpp"
#include "meshcurv/shape_operator.hpp"
#include "meshcurv/tri_mesh.hpp"

namespace meshcurv {

/// Ordered key=value pairs embedded as '# key=value' comment lines at the
/// top of every CSV, recording what produced it. The timestamp honors
/// SOURCE_DATE_EPOCH so reproducible runs stay byte-identical.
struct RunManifest {
    std::vector<std::pair<std::string, std::string>> entries;

    void set(std::string key, std::string value) {
        entries.emplace_back(std::move(key), std::move(value));
    }

    /// Seeds the manifest with command, tool version and timestamp.
    static RunManifest create(const std::string& command);
};

/// One row per vertex per method block:
/// vertex,x,y,z,method,K,H,k1,k2,d1x,d1y,d1z,d2x,d2y,d2z,boundary,degraded
/// with 17-significant-digit floats, NaN spelled 'nan', rows ordered by
/// vertex index within each block.
std::string write_curvature_csv(const TriMesh& mesh,
                                const std::vector<std::vector<CurvatureResult<double>>>& per_method,
                                const RunManifest& manifest);

/// Ensemble statistics: one row per (sweep, unit, method) with sweep in
/// {surface, partition, overall}; overall rows use unit_index -1.
std::string write_bench_csv(const BenchReport& report, const RunManifest& manifest);

}  // namespace meshcurv
