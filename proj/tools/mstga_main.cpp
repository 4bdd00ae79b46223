// Command-line front end: similarity weighting, skeleton extraction,
// community detection, evaluation, and the benchmark harnesses.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "mstga/bench.hpp"

namespace {

using namespace mstga;

// Deterministic subcommands still accept --seed so every subcommand shares
// the same surface; they do not consume it.
void attach_unused_seed(CLI::App* cmd, std::uint64_t& seed) {
    cmd->add_option("--seed", seed,
                    "unused by this deterministic subcommand");
}

struct SimilarityFlags {
    std::string name = "jaccard";
    SimilarityParams params;

    void attach(CLI::App* cmd) {
        cmd->add_option("--similarity", name,
                        "one of cn|jaccard|cosine|hpi|aa|ra|cndp|srw|hin")
            ->capture_default_str();
        cmd->add_option("--beta", params.cndp_beta,
                        "degree-penalization exponent constant (cndp)")
            ->capture_default_str();
        cmd->add_option("--walk-horizon", params.walk_horizon,
                        "random-walk horizon T (srw/hin)")
            ->capture_default_str();
    }

    SimilarityKind kind() const {
        const auto kind = similarity_from_name(name);
        if (!kind) {
            throw CLI::ValidationError("--similarity",
                                       "unknown similarity '" + name + "'");
        }
        return *kind;
    }
};

struct GaFlags {
    GaConfig config;
    std::string mutation = "sine";
    double target_q = std::numeric_limits<double>::quiet_NaN();

    void attach(CLI::App* cmd) {
        cmd->add_option("--pop-size", config.population_size)
            ->capture_default_str();
        cmd->add_option("--max-gens", config.max_generations)
            ->capture_default_str();
        cmd->add_option("--stall-gens", config.stall_generations)
            ->capture_default_str();
        cmd->add_option("--delta", config.delta)->capture_default_str();
        cmd->add_option("--mutation", mutation, "uniform|weight|sine")
            ->capture_default_str();
        cmd->add_option("--mutation-rate", config.mutation_rate)
            ->capture_default_str();
        cmd->add_option("--flips", config.flips_per_mutation)
            ->capture_default_str();
        cmd->add_option("--seed", config.rng_seed)->capture_default_str();
        cmd->add_option("--target-q", target_q,
                        "stop once best modularity exceeds this");
    }

    GaConfig resolved() const {
        GaConfig resolved_config = config;
        const auto kind = mutation_from_name(mutation);
        if (!kind) {
            throw CLI::ValidationError("--mutation",
                                       "unknown mutation '" + mutation + "'");
        }
        resolved_config.mutation_kind = *kind;
        if (!std::isnan(target_q)) {
            resolved_config.target_q = target_q;
        }
        return resolved_config;
    }
};

std::ofstream open_or_die(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    return out;
}

void report_drops(const LoadResult& loaded, const std::string& path) {
    if (loaded.dropped_self_loops || loaded.dropped_duplicates) {
        std::cerr << "warning: " << path << ": dropped "
                  << loaded.dropped_self_loops << " self-loop(s) and "
                  << loaded.dropped_duplicates << " duplicate edge(s)\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Community detection by evolutionary search over a "
                 "similarity-weighted spanning-tree encoding"};
    app.require_subcommand(1);

    // ---- weigh ----
    auto* weigh = app.add_subcommand(
        "weigh", "weight every edge with a node-similarity measure");
    std::string weigh_graph, weigh_out;
    std::uint64_t weigh_seed = 0;
    SimilarityFlags weigh_sim;
    weigh->add_option("--graph", weigh_graph, "edge-list file")->required();
    attach_unused_seed(weigh, weigh_seed);
    weigh_sim.attach(weigh);
    weigh->add_option("--out", weigh_out, "output file (default: stdout)");
    weigh->callback([&] {
        const LoadResult loaded = load_edge_list_file(weigh_graph);
        report_drops(loaded, weigh_graph);
        const WeightedGraph wg =
            weigh_edges(loaded.graph, weigh_sim.kind(), weigh_sim.params);
        if (weigh_out.empty()) {
            write_weighted_edge_list(std::cout, wg);
        } else {
            auto out = open_or_die(weigh_out);
            write_weighted_edge_list(out, wg);
        }
    });

    // ---- mst ----
    auto* mst = app.add_subcommand(
        "mst", "extract the maximum-similarity spanning forest");
    std::string mst_graph, mst_out;
    std::uint64_t mst_seed = 0;
    SimilarityFlags mst_sim;
    mst->add_option("--graph", mst_graph, "edge-list file")->required();
    attach_unused_seed(mst, mst_seed);
    mst_sim.attach(mst);
    mst->add_option("--out", mst_out, "output file (default: stdout)");
    mst->callback([&] {
        const LoadResult loaded = load_edge_list_file(mst_graph);
        report_drops(loaded, mst_graph);
        const WeightedGraph wg =
            weigh_edges(loaded.graph, mst_sim.kind(), mst_sim.params);
        const SkeletonTree tree = build_max_spanning_forest(wg);
        if (mst_out.empty()) {
            write_skeleton(std::cout, tree, loaded.graph);
        } else {
            auto out = open_or_die(mst_out);
            write_skeleton(out, tree, loaded.graph);
        }
    });

    // ---- detect ----
    auto* detect = app.add_subcommand("detect", "run the full pipeline");
    std::string detect_graph, detect_truth, detect_out = "partition.txt";
    std::string detect_log = "run.csv", detect_dir = ".";
    std::uint32_t detect_reps = 10;
    SimilarityFlags detect_sim;
    GaFlags detect_ga;
    detect->add_option("--graph", detect_graph, "edge-list file")->required();
    detect_sim.attach(detect);
    detect_ga.attach(detect);
    detect->add_option("--truth", detect_truth,
                       "ground-truth file for NMI in the summary");
    detect->add_option("--reps", detect_reps,
                       "repetitions with seeds seed..seed+R-1")
        ->capture_default_str();
    detect->add_option("--out", detect_out, "best partition file")
        ->capture_default_str();
    detect->add_option("--log", detect_log, "best run's per-generation log")
        ->capture_default_str();
    detect->add_option("--out-dir", detect_dir,
                       "directory for per-repetition files and summary.csv")
        ->capture_default_str();
    detect->callback([&] {
        ExperimentSpec spec;
        spec.dataset_paths = {detect_graph};
        if (!detect_truth.empty()) {
            spec.truth_path = detect_truth;
        }
        spec.similarity = detect_sim.kind();
        spec.similarity_params = detect_sim.params;
        spec.repetitions = detect_reps;
        spec.ga = detect_ga.resolved();
        spec.output_dir = detect_dir;
        const auto rows = run_detect(spec);

        const auto best = std::max_element(
            rows.begin(), rows.end(),
            [](const DetectRunRow& a, const DetectRunRow& b) {
                return a.best_q < b.best_q;
            });
        std::filesystem::copy_file(
            best->partition_path, detect_out,
            std::filesystem::copy_options::overwrite_existing);
        std::filesystem::path log_src = best->partition_path;
        log_src.replace_extension();  // drop .txt
        log_src.replace_extension(".runlog.csv");
        std::filesystem::copy_file(
            log_src, detect_log,
            std::filesystem::copy_options::overwrite_existing);

        std::cout << "best_q " << best->best_q;
        if (best->nmi) {
            std::cout << " nmi " << *best->nmi;
        }
        std::cout << " seed " << best->seed << " generations "
                  << best->generations << '\n';
    });

    // ---- eval ----
    auto* eval = app.add_subcommand(
        "eval", "score a partition file (modularity, NMI, sizes)");
    std::string eval_graph, eval_partition, eval_truth, eval_out;
    std::uint64_t eval_seed = 0;
    eval->add_option("--graph", eval_graph, "edge-list file")->required();
    attach_unused_seed(eval, eval_seed);
    eval->add_option("--partition", eval_partition,
                     "node_label community_id lines")
        ->required();
    eval->add_option("--truth", eval_truth, "ground-truth file");
    eval->add_option("--out", eval_out, "output file (default: stdout)");
    eval->callback([&] {
        const LoadResult loaded = load_edge_list_file(eval_graph);
        report_drops(loaded, eval_graph);
        const GroundTruth as_partition =
            GroundTruth::load_file(eval_partition, loaded.graph);
        if (!as_partition.covers_all_nodes) {
            throw std::runtime_error(eval_partition +
                                     ": partition does not cover every node");
        }
        const Partition partition =
            partition_from_assignment(as_partition.assignment, loaded.graph);

        nlohmann::json result;
        result["q"] = modularity(partition, loaded.graph);
        result["communities"] = partition.community_count();
        std::map<std::uint32_t, std::uint32_t> histogram;
        for (std::uint32_t size : partition.community_sizes) {
            ++histogram[size];
        }
        nlohmann::json sizes = nlohmann::json::object();
        for (const auto& [size, count] : histogram) {
            sizes[std::to_string(size)] = count;
        }
        result["size_histogram"] = sizes;
        if (!eval_truth.empty()) {
            const GroundTruth truth =
                GroundTruth::load_file(eval_truth, loaded.graph);
            result["nmi"] = nmi(partition, truth);
        } else {
            result["nmi"] = nullptr;
        }
        if (eval_out.empty()) {
            std::cout << result.dump(2) << '\n';
        } else {
            auto out = open_or_die(eval_out);
            out << result.dump(2) << '\n';
        }
    });

    // ---- initpop-bench ----
    auto* initpop = app.add_subcommand(
        "initpop-bench",
        "compare proposed vs random initial populations, paired by seed");
    std::vector<std::string> initpop_graphs;
    std::string initpop_out;
    std::uint32_t initpop_reps = 20;
    SimilarityFlags initpop_sim;
    GaFlags initpop_ga;
    initpop->add_option("--graph", initpop_graphs, "edge-list file(s)")
        ->required();
    initpop_sim.attach(initpop);
    initpop_ga.attach(initpop);
    initpop->add_option("--reps", initpop_reps)->capture_default_str();
    initpop->add_option("--out", initpop_out, "CSV output (default: stdout)");
    initpop->callback([&] {
        ExperimentSpec spec;
        spec.dataset_paths = initpop_graphs;
        spec.similarity = initpop_sim.kind();
        spec.similarity_params = initpop_sim.params;
        spec.repetitions = initpop_reps;
        spec.ga = initpop_ga.resolved();
        const auto rows = run_initpop_bench(spec);
        if (initpop_out.empty()) {
            write_initpop_csv(std::cout, rows);
        } else {
            auto out = open_or_die(initpop_out);
            write_initpop_csv(out, rows);
        }
    });

    // ---- mutation-bench ----
    auto* mutbench = app.add_subcommand(
        "mutation-bench",
        "convergence study across the three mutation functions");
    std::vector<std::string> mutbench_graphs;
    std::string mutbench_out, mutbench_stats;
    std::uint32_t mutbench_reps = 30;
    SimilarityFlags mutbench_sim;
    GaFlags mutbench_ga;
    mutbench_ga.target_q = 0.435;  // the stock stopping rule of this study
    mutbench->add_option("--graph", mutbench_graphs, "edge-list file(s)")
        ->required();
    mutbench_sim.attach(mutbench);
    mutbench_ga.attach(mutbench);
    mutbench->add_option("--reps", mutbench_reps)->capture_default_str();
    mutbench->add_option("--out", mutbench_out, "per-run CSV (default: stdout)");
    mutbench->add_option("--stats", mutbench_stats, "box-plot stats CSV");
    mutbench->callback([&] {
        ExperimentSpec spec;
        spec.dataset_paths = mutbench_graphs;
        spec.similarity = mutbench_sim.kind();
        spec.similarity_params = mutbench_sim.params;
        spec.repetitions = mutbench_reps;
        spec.ga = mutbench_ga.resolved();
        const auto rows = run_mutation_bench(spec);
        if (mutbench_out.empty()) {
            write_mutation_csv(std::cout, rows);
        } else {
            auto out = open_or_die(mutbench_out);
            write_mutation_csv(out, rows);
        }
        if (!mutbench_stats.empty()) {
            auto out = open_or_die(mutbench_stats);
            write_mutation_stats_csv(out, rows);
        }
    });

    // ---- gen-planted ----
    auto* planted = app.add_subcommand(
        "gen-planted", "generate a planted-partition benchmark graph");
    PlantedPartitionSpec planted_spec;
    std::string planted_graph = "planted.txt", planted_truth = "planted_truth.txt";
    planted->add_option("--communities", planted_spec.communities)
        ->capture_default_str();
    planted->add_option("--size", planted_spec.community_size,
                        "nodes per community")
        ->capture_default_str();
    planted->add_option("--p-in", planted_spec.p_in)->capture_default_str();
    planted->add_option("--p-out", planted_spec.p_out)->capture_default_str();
    planted->add_option("--seed", planted_spec.seed)->capture_default_str();
    planted->add_option("--out-graph", planted_graph)->capture_default_str();
    planted->add_option("--out-truth", planted_truth)->capture_default_str();
    planted->callback([&] {
        const PlantedGraph graph = generate_planted(planted_spec);
        write_planted(graph, planted_graph, planted_truth, planted_spec);
        std::cout << "nodes " << graph.node_count << " edges "
                  << graph.edges.size() << '\n';
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
}
