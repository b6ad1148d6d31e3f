#include "meshcurv/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "meshcurv/bench.hpp"
#include "meshcurv/csv_io.hpp"
#include "meshcurv/errors.hpp"
#include "meshcurv/gauss_estimator.hpp"
#include "meshcurv/mesh_io.hpp"
#include "meshcurv/num_format.hpp"
#include "meshcurv/tri_mesh.hpp"
#include "meshcurv/version.hpp"

namespace meshcurv {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFindings = 2;
constexpr int kExitRuntime = 3;

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    return static_cast<bool>(out);
}

std::vector<Method> parse_method_list(const std::string& list, bool allow_all) {
    if (allow_all && list == "all")
        return {Method::GaussGrad, Method::TaubinArea, Method::TaubinCentroid, Method::ChenSchmitt};
    std::vector<Method> methods;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const std::size_t comma = list.find(',', pos);
        const std::string name = list.substr(pos, comma == std::string::npos ? comma : comma - pos);
        const auto method = method_from_name(name);
        if (!method) throw CLI::ValidationError("--method", "unknown method '" + name + "'");
        methods.push_back(*method);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (methods.empty()) throw CLI::ValidationError("--method", "empty method list");
    return methods;
}

template <class T>
std::pair<T, T> parse_range(const std::string& text, const char* flag) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError(flag, "expected LO:HI, got '" + text + "'");
    std::pair<T, T> range;
    try {
        if constexpr (std::is_integral_v<T>) {
            range.first = static_cast<T>(std::stol(text.substr(0, colon)));
            range.second = static_cast<T>(std::stol(text.substr(colon + 1)));
        } else {
            range.first = static_cast<T>(std::stod(text.substr(0, colon)));
            range.second = static_cast<T>(std::stod(text.substr(colon + 1)));
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError(flag, "expected LO:HI, got '" + text + "'");
    }
    if (range.second < range.first) throw CLI::ValidationError(flag, "empty range '" + text + "'");
    return range;
}

int run_estimate(const std::string& input, const std::vector<Method>& methods,
                 const std::string& method_list, const std::string& output, int threads) {
    TriMesh mesh;
    try {
        mesh = load_mesh(input);
    } catch (const ParseError& e) {
        std::cerr << "error: " << input << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << input << ": " << e.what() << "\n";
        return kExitUsage;
    }

    std::vector<std::vector<CurvatureResult<double>>> per_method;
    per_method.reserve(methods.size());
    for (const Method m : methods) per_method.push_back(estimate_curvatures(mesh, m, threads));

    RunManifest manifest = RunManifest::create("estimate");
    manifest.set("input", input);
    manifest.set("method", method_list);
    if (!write_file(output, write_curvature_csv(mesh, per_method, manifest))) {
        std::cerr << "error: cannot write '" << output << "'\n";
        return kExitRuntime;
    }
    return kExitOk;
}

int run_bench(const BenchConfig& config, const std::string& degrees, const std::string& radii,
              const std::string& valence, const std::string& methods, const std::string& output) {
    const BenchReport report = run_ensemble(config);

    RunManifest manifest = RunManifest::create("bench");
    manifest.set("surfaces", std::to_string(config.n_surfaces));
    manifest.set("partitions", std::to_string(config.n_partitions));
    manifest.set("seed", std::to_string(config.seed));
    manifest.set("degrees", degrees);
    manifest.set("radii", radii);
    manifest.set("valence", valence);
    manifest.set("coeff_bound", format_double17(config.coeff_bound));
    manifest.set("methods", methods);
    manifest.set("normals", config.normals == NormalPolicy::Sampled ? "sampled" : "estimated");
    if (!write_file(output, write_bench_csv(report, manifest))) {
        std::cerr << "error: cannot write '" << output << "'\n";
        return kExitRuntime;
    }
    return kExitOk;
}

int run_check(const std::string& input) {
    TriMesh mesh;
    try {
        mesh = load_mesh(input);
    } catch (const ParseError& e) {
        std::cerr << "error: " << input << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const DegenerateFace& e) {
        std::cout << "finding: " << e.what() << "\n";
        return kExitFindings;
    } catch (const DuplicateVertexInFace& e) {
        std::cout << "finding: " << e.what() << "\n";
        return kExitFindings;
    } catch (const IndexOutOfRange& e) {
        std::cout << "finding: " << e.what() << "\n";
        return kExitFindings;
    } catch (const Error& e) {
        std::cerr << "error: " << input << ": " << e.what() << "\n";
        return kExitUsage;
    }

    const std::vector<EdgeConflict> conflicts = check_orientation(mesh);
    int n_boundary = 0;
    for (int v = 0; v < mesh.num_vertices(); ++v)
        if (mesh.star(v).is_boundary) ++n_boundary;

    std::cout << input << ": " << mesh.num_vertices() << " vertices, " << mesh.num_faces()
              << " faces, " << n_boundary << " boundary vertices\n";
    for (const EdgeConflict& c : conflicts)
        std::cout << "finding: edge (" << c.v0 << ", " << c.v1 << ") wound the same way by faces "
                  << c.face_a << " and " << c.face_b << "\n";
    if (!conflicts.empty()) {
        std::cout << conflicts.size() << " orientation finding(s)\n";
        return kExitFindings;
    }
    std::cout << "orientation consistent\n";
    return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Curvature estimation on triangular meshes"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string input, output;
    std::string method = "gauss-grad";
    int threads = 0;

    CLI::App* estimate = app.add_subcommand("estimate", "Per-vertex curvature of a mesh file to CSV");
    estimate->add_option("--input", input, "mesh file (.off or .obj)")->required();
    estimate->add_option("--method", method,
                         "gauss-grad | taubin-area | taubin-centroid | chen-schmitt | all");
    estimate->add_option("--output", output, "CSV path")->required();
    estimate->add_option("--threads", threads, "worker threads (default: all cores)");

    BenchConfig config;
    std::string degrees = "2:3", radii = "0.05:0.15", valence = "5:9";
    std::string bench_methods = "gauss-grad,taubin-area,taubin-centroid,chen-schmitt";

    CLI::App* bench = app.add_subcommand("bench", "Random-surface error ensemble to CSV");
    bench->add_option("--surfaces", config.n_surfaces, "number of random surfaces")
        ->check(CLI::PositiveNumber);
    bench->add_option("--partitions", config.n_partitions, "number of random fan partitions")
        ->check(CLI::PositiveNumber);
    bench->add_option("--seed", config.seed, "RNG seed");
    bench->add_option("--degrees", degrees, "polynomial degree range LO:HI");
    bench->add_option("--radii", radii, "fan radius range LO:HI");
    bench->add_option("--valence", valence, "fan vertex count range LO:HI");
    bench->add_option("--coeff-bound", config.coeff_bound, "coefficients drawn from [-B, B]");
    bench->add_option("--methods", bench_methods, "comma-separated method list");
    std::string normals = "sampled";
    bench->add_option("--normals", normals,
                      "Gauss map source per trial: sampled (from the surface) | estimated (from the mesh)");
    bench->add_option("--output", output, "CSV path")->required();
    bench->add_option("--threads", config.n_threads, "worker threads (default: all cores)");

    CLI::App* check = app.add_subcommand("check", "Orientation / degeneracy report");
    check->add_option("--input", input, "mesh file (.off or .obj)")->required();

    std::vector<Method> estimate_methods;
    try {
        app.parse(argc, argv);
        if (estimate->parsed()) estimate_methods = parse_method_list(method, /*allow_all=*/true);
        if (bench->parsed()) {
            std::tie(config.degree_min, config.degree_max) = parse_range<int>(degrees, "--degrees");
            std::tie(config.radius_min, config.radius_max) = parse_range<double>(radii, "--radii");
            std::tie(config.valence_min, config.valence_max) = parse_range<int>(valence, "--valence");
            config.methods = parse_method_list(bench_methods, /*allow_all=*/false);
            if (normals == "sampled")
                config.normals = NormalPolicy::Sampled;
            else if (normals == "estimated")
                config.normals = NormalPolicy::Estimated;
            else
                throw CLI::ValidationError("--normals", "expected 'sampled' or 'estimated'");
            if (config.valence_min < 3)
                throw CLI::ValidationError("--valence", "fans need at least 3 vertices");
            if (config.radius_min <= 0) throw CLI::ValidationError("--radii", "radii must be positive");
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (estimate->parsed()) return run_estimate(input, estimate_methods, method, output, threads);
        if (bench->parsed()) return run_bench(config, degrees, radii, valence, bench_methods, output);
        if (check->parsed()) return run_check(input);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace meshcurv
