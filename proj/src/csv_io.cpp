#include "meshcurv/csv_io.hpp"

#include <cstdint>
#include <cstdlib>
#include <ctime>

#include "meshcurv/num_format.hpp"
#include "meshcurv/version.hpp"

namespace meshcurv {

namespace {

std::string utc_timestamp() {
    std::time_t t = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        const long long forced = std::strtoll(epoch, &end, 10);
        if (end && *end == '\0') t = static_cast<std::time_t>(forced);
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string manifest_header(const RunManifest& manifest) {
    std::string out;
    for (const auto& [key, value] : manifest.entries) out += "# " + key + "=" + value + "\n";
    return out;
}

std::string stats_row(const char* sweep, int unit, const char* method, const MethodStats& s) {
    std::string row = sweep;
    row += "," + std::to_string(unit) + "," + method;
    row += "," + format_double17(s.mean_err_k) + "," + format_double17(s.std_err_k);
    row += "," + format_double17(s.mean_err_h) + "," + format_double17(s.std_err_h);
    row += "," + std::to_string(s.n_kept) + "," + std::to_string(s.n_excluded) + "," +
           std::to_string(s.n_degraded) + "\n";
    return row;
}

}  // namespace

RunManifest RunManifest::create(const std::string& command) {
    RunManifest m;
    m.set("command", command);
    m.set("version", kVersion);
    m.set("timestamp", utc_timestamp());
    return m;
}

std::string write_curvature_csv(const TriMesh& mesh,
                                const std::vector<std::vector<CurvatureResult<double>>>& per_method,
                                const RunManifest& manifest) {
    std::string out = manifest_header(manifest);
    out += "vertex,x,y,z,method,K,H,k1,k2,d1x,d1y,d1z,d2x,d2y,d2z,boundary,degraded\n";
    for (const auto& results : per_method) {
        for (std::size_t v = 0; v < results.size(); ++v) {
            const CurvatureResult<double>& r = results[v];
            out += std::to_string(v);
            for (int c = 0; c < 3; ++c) out += "," + format_double17(mesh.vertices()(static_cast<int>(v), c));
            out += ",";
            out += method_name(r.method);
            out += "," + format_double17(r.gaussian) + "," + format_double17(r.mean);
            out += "," + format_double17(r.kappa1) + "," + format_double17(r.kappa2);
            for (int c = 0; c < 3; ++c) out += "," + format_double17(r.dir1[c]);
            for (int c = 0; c < 3; ++c) out += "," + format_double17(r.dir2[c]);
            out += r.boundary ? ",1" : ",0";
            out += r.degraded ? ",1\n" : ",0\n";
        }
    }
    return out;
}

std::string write_bench_csv(const BenchReport& report, const RunManifest& manifest) {
    std::string out = manifest_header(manifest);
    out += "sweep,unit_index,method,mean_errK,std_errK,mean_errH,std_errH,n_kept,n_excluded,n_degraded\n";
    const auto& methods = report.config.methods;
    for (int i = 0; i < report.config.n_surfaces; ++i)
        for (std::size_t m = 0; m < methods.size(); ++m)
            out += stats_row("surface", i, method_name(methods[m]),
                             report.surface_stats(i, static_cast<int>(m)));
    for (int j = 0; j < report.config.n_partitions; ++j)
        for (std::size_t m = 0; m < methods.size(); ++m)
            out += stats_row("partition", j, method_name(methods[m]),
                             report.partition_stats(j, static_cast<int>(m)));
    for (std::size_t m = 0; m < methods.size(); ++m)
        out += stats_row("overall", -1, method_name(methods[m]), report.overall_stats(static_cast<int>(m)));
    return out;
}

}  // namespace meshcurv
