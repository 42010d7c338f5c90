#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "mgo/io.hpp"
#include "mgo/preprocess.hpp"
#include "mgo/reductions.hpp"
#include "mgo/solvers.hpp"

namespace {

constexpr int kExitInputError = 2;
constexpr int kExitValidation = 3;
constexpr int kExitCapExceeded = 4;
constexpr int kExitInternal = 5;

int exact_cap_from_env(int fallback) {
    if (const char* raw = std::getenv("MGO_EXACT_CAP")) {
        try {
            return std::stoi(raw);
        } catch (const std::exception&) {
            throw mgo::InputError("MGO_EXACT_CAP must be an integer");
        }
    }
    return fallback;
}

const std::vector<std::string> kAlgorithms = {
    "greedy_cuberoot", "greedy_delta", "treewidth",          "fvs",
    "tree_centroid",   "exact",        "fixed_paths_greedy", "fixed_paths_exact"};

bool is_fixed_paths(const std::string& algorithm) {
    return algorithm.rfind("fixed_paths", 0) == 0;
}

// Maps a provided decomposition through a contraction: bags keep validity on
// the contracted graph because contraction is a minor operation.
mgo::TreeDecomposition map_decomposition(const mgo::TreeDecomposition& decomposition,
                                         const mgo::ContractionRecord& record) {
    mgo::TreeDecomposition mapped;
    mapped.tree_edges = decomposition.tree_edges;
    for (const auto& bag : decomposition.bags) {
        std::vector<mgo::Vertex> image;
        for (mgo::Vertex v : bag) {
            image.push_back(record.vertex_map[v]);
        }
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        mapped.bags.push_back(std::move(image));
    }
    return mapped;
}

std::vector<mgo::Vertex> map_fvs(const std::vector<mgo::Vertex>& fvs,
                                 const mgo::ContractionRecord& record) {
    std::vector<mgo::Vertex> image;
    for (mgo::Vertex v : fvs) {
        image.push_back(record.vertex_map[v]);
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    return image;
}

struct PipelineOutcome {
    mgo::SolveResult result;        // over the solved (possibly contracted) graph
    mgo::Orientation lifted;        // over the original graph
    int verified_satisfied = 0;     // recount over the original instance
    int auto_satisfied = 0;
};

PipelineOutcome run_pipeline(const mgo::Instance& instance, const std::string& algorithm,
                             bool preprocess, int exact_cap) {
    PipelineOutcome outcome;

    if (is_fixed_paths(algorithm)) {
        if (!instance.all_mandated()) {
            throw mgo::InputError("algorithm " + algorithm +
                                  " needs a mandated path (X line) for every request");
        }
        std::vector<std::vector<mgo::Vertex>> paths;
        for (const auto& p : instance.mandated) {
            paths.push_back(*p);
        }
        const mgo::FixedPathInstance fixed =
            mgo::make_fixed_path_instance(instance.graph, instance.requests, paths);
        outcome.result = mgo::solve_fixed_paths(fixed,
                                                algorithm == "fixed_paths_exact"
                                                    ? mgo::FixedPathMode::exact
                                                    : mgo::FixedPathMode::greedy);
        outcome.lifted = outcome.result.orientation;
        outcome.verified_satisfied = static_cast<int>(outcome.result.satisfied.size());
        return outcome;
    }

    // Split trivially satisfied requests (source == target) off up front.
    std::vector<mgo::Request> live;
    int trivial = 0;
    for (const auto& r : instance.requests) {
        if (r.source == r.target) {
            ++trivial;
        } else {
            live.push_back(r);
        }
    }

    const mgo::MixedGraph* solve_graph = &instance.graph;
    mgo::PreprocessResult preprocessed;
    bool contracted = false;
    if (preprocess) {
        preprocessed = mgo::contract_cycles(instance.graph, live);
        solve_graph = &preprocessed.graph;
        live = preprocessed.requests;
        trivial += static_cast<int>(preprocessed.record.auto_satisfied.size());
        contracted = true;
    }
    outcome.auto_satisfied = trivial;

    if (algorithm == "greedy_cuberoot") {
        outcome.result = mgo::solve_greedy_cuberoot(*solve_graph, live);
    } else if (algorithm == "greedy_delta") {
        outcome.result = mgo::solve_greedy_delta(*solve_graph, live);
    } else if (algorithm == "tree_centroid") {
        outcome.result = mgo::solve_tree_centroid(*solve_graph, live);
    } else if (algorithm == "exact") {
        outcome.result = mgo::solve_exact(*solve_graph, live, exact_cap);
    } else if (algorithm == "treewidth") {
        mgo::TreeDecomposition decomposition;
        if (instance.decomposition) {
            decomposition = contracted
                                ? map_decomposition(*instance.decomposition, preprocessed.record)
                                : *instance.decomposition;
        } else {
            decomposition = mgo::tree_decomposition_min_fill(*solve_graph);
        }
        outcome.result = mgo::solve_treewidth(*solve_graph, live, decomposition);
    } else if (algorithm == "fvs") {
        mgo::FeedbackVertexSet fvs;
        if (instance.has_fvs_hint()) {
            fvs.method = mgo::FeedbackVertexSet::Method::provided;
            fvs.vertices = contracted ? map_fvs(instance.fvs_hint, preprocessed.record)
                                      : instance.fvs_hint;
            mgo::validate_fvs(*solve_graph, fvs.vertices);
        } else {
            fvs = mgo::feedback_vertex_set_heuristic(*solve_graph);
        }
        outcome.result = mgo::solve_fvs(*solve_graph, live, fvs);
    } else {
        throw mgo::InputError("unknown algorithm '" + algorithm + "'");
    }

    outcome.lifted = contracted ? mgo::lift_orientation(instance.graph, preprocessed.record,
                                                        outcome.result.orientation)
                                : outcome.result.orientation;

    const mgo::SatisfactionResult verified =
        mgo::count_satisfied(instance.graph, outcome.lifted, instance.requests);
    outcome.verified_satisfied = verified.count;
    mgo::internal_check(outcome.verified_satisfied >=
                            static_cast<int>(outcome.result.satisfied.size()) + trivial,
                        "lifting lost satisfied requests");
    return outcome;
}

int cmd_solve(const std::string& instance_path, const std::string& algorithm,
              bool no_preprocess, const std::string& orientation_out,
              const std::string& report_out) {
    const mgo::Instance instance = mgo::load_instance(instance_path);
    const int cap = exact_cap_from_env(20);
    const PipelineOutcome outcome =
        run_pipeline(instance, algorithm, !no_preprocess && !is_fixed_paths(algorithm), cap);

    const std::string orientation_path =
        orientation_out.empty() ? instance_path + ".orient" : orientation_out;
    mgo::save_orientation(outcome.lifted, orientation_path);
    mgo::ReportRecord report;
    report.instance_digest = mgo::instance_digest(instance);
    report.algorithm = algorithm;
    report.satisfied = outcome.verified_satisfied;
    report.auto_satisfied = outcome.auto_satisfied;
    report.certificate = outcome.result.certificate;
    report.wall_seconds = outcome.result.wall_seconds;
    const std::string text = mgo::emit_report(report);
    std::cout << text;
    if (!report_out.empty()) {
        mgo::write_file(report_out, text);
    }
    return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& orientation_path,
               bool verbose) {
    const mgo::Instance instance = mgo::load_instance(instance_path);
    const mgo::PartialOrientation partial =
        mgo::load_orientation(orientation_path, instance.graph);
    if (const auto violation = mgo::validate_orientation(instance.graph, partial)) {
        std::cout << "valid=0\n"
                  << "violation_edge=" << violation->edge_id << '\n'
                  << "violation=" << violation->reason << '\n';
        return kExitValidation;
    }
    const mgo::Orientation orientation = mgo::to_orientation(partial);
    const mgo::SatisfactionResult sat =
        mgo::count_satisfied(instance.graph, orientation, instance.requests);
    std::cout << "valid=1\n"
              << "instance_digest=" << mgo::instance_digest(instance) << '\n'
              << "requests_total=" << instance.requests.size() << '\n'
              << "satisfied=" << sat.count << '\n';
    if (!instance.requests.empty() && instance.all_mandated()) {
        int fixed = 0;
        for (std::size_t i = 0; i < instance.requests.size(); ++i) {
            const auto& path = *instance.mandated[i];
            bool oriented = true;
            for (std::size_t s = 0; s + 1 < path.size() && oriented; ++s) {
                bool step_ok = false;
                for (const mgo::EdgeRef& e : instance.graph.incident(path[s])) {
                    if (e.kind == mgo::EdgeKind::directed) {
                        const auto& d = instance.graph.directed(e.index);
                        step_ok = step_ok || (d.tail == path[s] && d.head == path[s + 1]);
                    } else {
                        const mgo::Arc& arc = orientation.arcs[e.index];
                        step_ok = step_ok || (arc.from == path[s] && arc.to == path[s + 1]);
                    }
                }
                oriented = step_ok;
            }
            fixed += oriented;
        }
        std::cout << "fixed_path_satisfied=" << fixed << '\n';
    }
    if (verbose) {
        for (std::size_t i = 0; i < instance.requests.size(); ++i) {
            const auto& r = instance.requests[i];
            std::cout << "request " << r.id << ' ' << r.source << ' ' << r.target << ' '
                      << (sat.flags[i] ? "satisfied" : "unsatisfied") << '\n';
        }
    }
    return 0;
}

int cmd_preprocess(const std::string& instance_path, const std::string& out,
                   const std::string& record_out) {
    const mgo::Instance instance = mgo::load_instance(instance_path);
    const mgo::PreprocessResult result =
        mgo::contract_cycles(instance.graph, instance.requests);

    mgo::Instance contracted;
    contracted.graph = result.graph;
    for (std::size_t i = 0; i < result.requests.size(); ++i) {
        contracted.requests.push_back(mgo::Request{static_cast<int>(i),
                                                   result.requests[i].source,
                                                   result.requests[i].target});
    }
    contracted.mandated.assign(contracted.requests.size(), std::nullopt);
    mgo::save_instance(contracted, out);

    std::ostringstream record;
    const mgo::ContractionRecord& r = result.record;
    record << "PREC 1 " << r.original_vertex_count << ' ' << result.graph.vertex_count()
           << ' ' << r.steps.size() << '\n';
    for (std::size_t v = 0; v < r.vertex_map.size(); ++v) {
        record << "M " << v << ' ' << r.vertex_map[v] << '\n';
    }
    for (const auto& [edge, arc] : r.internal_orientation) {
        record << "I " << edge << ' ' << arc.from << ' ' << arc.to << '\n';
    }
    for (std::size_t j = 0; j < r.undirected_origin.size(); ++j) {
        record << "E " << j << ' ' << r.undirected_origin[j] << '\n';
    }
    for (int id : r.auto_satisfied) {
        record << "A " << id << '\n';
    }
    for (std::size_t i = 0; i < result.requests.size(); ++i) {
        record << "Q " << i << ' ' << result.requests[i].id << '\n';
    }
    for (std::size_t s = 0; s < r.steps.size(); ++s) {
        for (const auto& step : r.steps[s].steps) {
            record << "S " << s << ' '
                   << (step.edge.kind == mgo::EdgeKind::directed ? 'D' : 'U') << ' '
                   << step.edge.index << ' ' << step.from << ' ' << step.to << '\n';
        }
    }
    mgo::write_file(record_out, record.str());
    std::cout << "contracted_vertices=" << result.graph.vertex_count() << '\n'
              << "contracted_undirected=" << result.graph.undirected_count() << '\n'
              << "steps=" << r.steps.size() << '\n'
              << "auto_satisfied=" << r.auto_satisfied.size() << '\n';
    return 0;
}

// Edge-list files: `<vertices> <edges>` then one `a b` line per edge.
std::pair<int, std::vector<std::pair<int, int>>> load_edge_list(const std::string& path) {
    std::istringstream in(mgo::read_file(path));
    int vertices = 0, count = 0;
    if (!(in >> vertices >> count)) {
        throw mgo::InputError(path + ": expected '<vertices> <edges>' header");
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < count; ++i) {
        int a = 0, b = 0;
        if (!(in >> a >> b)) {
            throw mgo::InputError(path + ": expected " + std::to_string(count) +
                                  " edge lines");
        }
        edges.emplace_back(a, b);
    }
    return {vertices, edges};
}

int cmd_generate(const std::string& kind, const std::string& out,
                 const std::string& source_path, int vertices, double directed_prob,
                 double undirected_prob, int requests, unsigned long long seed, int rows,
                 int cols, const std::string& orientation_out) {
    mgo::GeneratedInstance generated;
    std::string orientation_text;
    if (kind == "random") {
        mgo::RandomInstanceParams params;
        params.vertex_count = vertices;
        params.directed_probability = directed_prob;
        params.undirected_probability = undirected_prob;
        params.request_count = requests;
        params.seed = seed;
        generated = mgo::gen_random_instance(params);
    } else if (kind == "grid-full") {
        mgo::GridInstance grid = mgo::gen_grid_full_orientation(rows, cols);
        generated.graph = grid.graph;
        if (requests > 0) {
            mgo::RandomInstanceParams params;
            params.vertex_count = grid.graph.vertex_count();
            params.request_count = requests;
            params.seed = seed;
            mgo::GeneratedInstance sampled = mgo::gen_random_instance(params);
            generated.requests = sampled.requests;
        }
        generated.metadata.emplace_back("kind", "grid_full");
        generated.metadata.emplace_back("rows", std::to_string(rows));
        generated.metadata.emplace_back("cols", std::to_string(cols));
        generated.metadata.emplace_back("property", "orientation is strongly connected");
        orientation_text = mgo::emit_orientation(grid.orientation);
    } else if (kind == "independent-set-reduction") {
        const auto [q, edges] = load_edge_list(source_path);
        generated = mgo::gen_from_independent_set({q, edges});
    } else if (kind == "dicut-reduction") {
        const auto [q, arcs] = load_edge_list(source_path);
        generated = mgo::gen_from_dicut({q, arcs});
    } else {
        throw mgo::InputError("unknown generator kind '" + kind + "'");
    }

    mgo::Instance instance;
    instance.graph = generated.graph;
    instance.requests = generated.requests;
    instance.mandated.assign(instance.requests.size(), std::nullopt);
    for (std::size_t i = 0; i < generated.mandated_paths.size(); ++i) {
        instance.mandated[i] = generated.mandated_paths[i];
    }
    mgo::save_instance(instance, out);
    mgo::write_file(out + ".meta", mgo::emit_metadata(generated.metadata));
    if (!orientation_text.empty()) {
        const std::string path = orientation_out.empty() ? out + ".orient" : orientation_out;
        mgo::write_file(path, orientation_text);
    }
    std::cout << "instance=" << out << '\n'
              << "vertices=" << instance.graph.vertex_count() << '\n'
              << "requests=" << instance.requests.size() << '\n';
    return 0;
}

int cmd_bench(const std::string& suite_dir, const std::string& algorithms_csv,
              const std::string& out) {
    std::vector<std::string> algorithms;
    {
        std::istringstream in(algorithms_csv);
        std::string token;
        while (std::getline(in, token, ',')) {
            if (!token.empty()) {
                algorithms.push_back(token);
            }
        }
    }
    if (algorithms.empty()) {
        throw mgo::InputError("bench needs --algorithms a,b,c");
    }
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(suite_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".mgo") {
            files.push_back(entry.path().string());
        }
    }
    std::sort(files.begin(), files.end());

    const int cap = exact_cap_from_env(20);
    std::ostringstream csv;
    csv << "instance,algorithm,vertices,directed,undirected,requests,satisfied,optimum,"
           "ratio,status\n";
    struct RatioAccumulator {
        double sum = 0;
        int count = 0;
    };
    std::map<std::string, RatioAccumulator> ratios;

    for (const std::string& file : files) {
        mgo::Instance instance;
        std::string optimum_text;
        long long optimum = -1;
        std::string load_error;
        try {
            instance = mgo::load_instance(file);
            try {
                const PipelineOutcome exact = run_pipeline(instance, "exact", true, cap);
                optimum = exact.verified_satisfied;
                optimum_text = std::to_string(optimum);
            } catch (const mgo::CapExceeded&) {
                optimum = -1;
            }
        } catch (const std::exception& e) {
            load_error = e.what();
        }
        const std::string base = std::filesystem::path(file).filename().string();
        for (const std::string& algorithm : algorithms) {
            csv << base << ',' << algorithm << ',';
            if (!load_error.empty()) {
                std::string sanitized = load_error;
                std::replace(sanitized.begin(), sanitized.end(), ',', ';');
                csv << ",,,,,," << ',' << "error: " << sanitized << '\n';
                continue;
            }
            csv << instance.graph.vertex_count() << ',' << instance.graph.directed_count()
                << ',' << instance.graph.undirected_count() << ','
                << instance.requests.size() << ',';
            try {
                const PipelineOutcome outcome = run_pipeline(instance, algorithm, true, cap);
                csv << outcome.verified_satisfied << ',' << optimum_text << ',';
                if (optimum > 0) {
                    char buffer[32];
                    std::snprintf(buffer, sizeof(buffer), "%.6f",
                                  static_cast<double>(outcome.verified_satisfied) /
                                      static_cast<double>(optimum));
                    csv << buffer;
                    ratios[algorithm].sum += static_cast<double>(outcome.verified_satisfied) /
                                             static_cast<double>(optimum);
                    ++ratios[algorithm].count;
                } else if (optimum == 0) {
                    csv << "1.000000";
                    ratios[algorithm].sum += 1.0;
                    ++ratios[algorithm].count;
                }
                csv << ",ok\n";
            } catch (const std::exception& e) {
                std::string sanitized = e.what();
                std::replace(sanitized.begin(), sanitized.end(), ',', ';');
                csv << ",," << ',' << "error: " << sanitized << '\n';
            }
        }
    }
    for (const std::string& algorithm : algorithms) {
        csv << "MEAN," << algorithm << ",,,,,,,";
        const auto it = ratios.find(algorithm);
        if (it != ratios.end() && it->second.count > 0) {
            char buffer[32];
            std::snprintf(buffer, sizeof(buffer), "%.6f",
                          it->second.sum / it->second.count);
            csv << buffer;
        }
        csv << ",summary\n";
    }
    mgo::write_file(out, csv.str());
    std::cout << "instances=" << files.size() << '\n'
              << "algorithms=" << algorithms.size() << '\n'
              << "csv=" << out << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximum mixed graph orientation toolkit"};
    app.require_subcommand(1);

    // solve
    std::string instance_path, algorithm = "greedy_cuberoot", orientation_out, report_out;
    bool no_preprocess = false;
    CLI::App* solve = app.add_subcommand("solve", "orient an instance");
    solve->add_option("instance", instance_path, "instance file")->required();
    solve->add_option("--algorithm", algorithm, "one of: greedy_cuberoot, greedy_delta, "
                                                "treewidth, fvs, tree_centroid, exact, "
                                                "fixed_paths_greedy, fixed_paths_exact")
        ->check(CLI::IsMember(kAlgorithms));
    solve->add_flag("--no-preprocess", no_preprocess,
                    "skip cycle contraction (solvers then reject cyclic input)");
    solve->add_option("--orientation-out", orientation_out, "write the orientation here");
    solve->add_option("--report-out", report_out, "also write the report here");

    // verify
    std::string verify_instance, verify_orientation;
    bool verbose = false;
    CLI::App* verify = app.add_subcommand("verify", "recheck an orientation file");
    verify->add_option("instance", verify_instance)->required();
    verify->add_option("orientation", verify_orientation)->required();
    verify->add_flag("--verbose", verbose, "print one line per request");

    // preprocess
    std::string pre_instance, pre_out, pre_record;
    CLI::App* preprocess = app.add_subcommand("preprocess", "contract cycles and emit the result");
    preprocess->add_option("instance", pre_instance)->required();
    preprocess->add_option("--out", pre_out, "contracted instance path")->required();
    preprocess->add_option("--record-out", pre_record, "contraction record path")->required();

    // generate
    std::string gen_kind, gen_out, gen_source, gen_orientation_out;
    int gen_vertices = 8, gen_requests = 0, gen_rows = 2, gen_cols = 2;
    double gen_pd = 0.2, gen_pu = 0.3;
    unsigned long long gen_seed = 1;
    CLI::App* generate = app.add_subcommand("generate", "emit instances");
    generate->add_option("kind", gen_kind,
                         "random | grid-full | independent-set-reduction | dicut-reduction")
        ->required();
    generate->add_option("--out", gen_out, "instance path")->required();
    generate->add_option("--source", gen_source, "edge-list file for the reductions");
    generate->add_option("--vertices", gen_vertices);
    generate->add_option("--directed-prob", gen_pd);
    generate->add_option("--undirected-prob", gen_pu);
    generate->add_option("--requests", gen_requests);
    generate->add_option("--seed", gen_seed);
    generate->add_option("--rows", gen_rows);
    generate->add_option("--cols", gen_cols);
    generate->add_option("--orientation-out", gen_orientation_out);

    // bench
    std::string bench_dir, bench_algorithms, bench_out;
    CLI::App* bench = app.add_subcommand("bench", "run algorithms over a directory of instances");
    bench->add_option("suite", bench_dir, "directory of .mgo files")->required();
    bench->add_option("--algorithms", bench_algorithms, "comma-separated list")->required();
    bench->add_option("--out", bench_out, "CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            return cmd_solve(instance_path, algorithm, no_preprocess, orientation_out,
                             report_out);
        }
        if (verify->parsed()) {
            return cmd_verify(verify_instance, verify_orientation, verbose);
        }
        if (preprocess->parsed()) {
            return cmd_preprocess(pre_instance, pre_out, pre_record);
        }
        if (generate->parsed()) {
            return cmd_generate(gen_kind, gen_out, gen_source, gen_vertices, gen_pd, gen_pu,
                                gen_requests, gen_seed, gen_rows, gen_cols,
                                gen_orientation_out);
        }
        if (bench->parsed()) {
            return cmd_bench(bench_dir, bench_algorithms, bench_out);
        }
    } catch (const mgo::CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return kExitCapExceeded;
    } catch (const mgo::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const mgo::ContractViolation& e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        return kExitValidation;
    } catch (const mgo::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const mgo::InternalInvariantError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInternal;
    }
    return 0;
}
