#include "mstga/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace mstga {

namespace {

std::string dataset_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path.string());
    }
    return out;
}

double population_best(const std::vector<Chromosome>& population) {
    double best = population.front().fitness;
    for (const Chromosome& c : population) {
        best = std::max(best, c.fitness);
    }
    return best;
}

double population_mean(const std::vector<Chromosome>& population) {
    double sum = 0.0;
    for (const Chromosome& c : population) {
        sum += c.fitness;
    }
    return sum / static_cast<double>(population.size());
}

// Linear interpolation between order statistics.
double quantile(const std::vector<double>& sorted, double p) {
    if (sorted.size() == 1) {
        return sorted.front();
    }
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) {
        return sorted.back();
    }
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

}  // namespace

std::vector<DetectRunRow> run_detect(const ExperimentSpec& spec) {
    std::vector<DetectRunRow> rows;
    std::filesystem::create_directories(spec.output_dir);

    for (const std::string& path : spec.dataset_paths) {
        const Graph graph = load_edge_list_file(path).graph;
        std::optional<GroundTruth> truth;
        if (spec.truth_path) {
            truth = GroundTruth::load_file(*spec.truth_path, graph);
        }
        const WeightedGraph weighted =
            weigh_edges(graph, spec.similarity, spec.similarity_params);
        const SkeletonTree tree = build_max_spanning_forest(weighted);
        const std::string stem = dataset_stem(path);

        for (std::uint32_t rep = 0; rep < spec.repetitions; ++rep) {
            GaConfig config = spec.ga;
            config.rng_seed = spec.ga.rng_seed + rep;

            const auto start = std::chrono::steady_clock::now();
            EvolveResult result = evolve(graph, tree, config);
            const auto elapsed = std::chrono::duration<double, std::milli>(
                std::chrono::steady_clock::now() - start);

            const Partition best_partition = decode(result.best, tree, graph);

            const std::string base =
                stem + "_" + std::string(similarity_name(spec.similarity)) +
                "_seed" + std::to_string(config.rng_seed);
            const auto partition_path =
                std::filesystem::path(spec.output_dir) / (base + ".partition.txt");
            {
                auto out = open_output(partition_path);
                write_partition(out, best_partition, graph);
            }
            {
                auto out = open_output(std::filesystem::path(spec.output_dir) /
                                       (base + ".runlog.csv"));
                write_run_log_csv(out, result.log);
            }

            DetectRunRow row;
            row.dataset = stem;
            row.similarity = std::string(similarity_name(spec.similarity));
            row.seed = config.rng_seed;
            row.best_q = result.best.fitness;
            if (truth) {
                row.nmi = nmi(best_partition, *truth);
            }
            row.generations = result.generations_run;
            row.wall_ms = elapsed.count();
            row.partition_path = partition_path.string();
            rows.push_back(std::move(row));
        }
    }

    auto out = open_output(std::filesystem::path(spec.output_dir) / "summary.csv");
    write_detect_summary_csv(out, rows);
    return rows;
}

std::vector<InitPopRow> run_initpop_bench(const ExperimentSpec& spec) {
    std::vector<InitPopRow> rows;
    for (const std::string& path : spec.dataset_paths) {
        const Graph graph = load_edge_list_file(path).graph;
        const WeightedGraph weighted =
            weigh_edges(graph, spec.similarity, spec.similarity_params);
        const SkeletonTree tree = build_max_spanning_forest(weighted);
        const std::string stem = dataset_stem(path);

        for (std::uint32_t rep = 0; rep < spec.repetitions; ++rep) {
            const std::uint64_t seed = spec.ga.rng_seed + rep;
            GaConfig config = spec.ga;
            config.rng_seed = seed;

            Rng rng_proposed(seed);
            const auto proposed =
                generate_initial_population(tree, graph, config, rng_proposed);
            Rng rng_random(seed);
            const auto random = generate_random_population(
                tree, graph, config.population_size, rng_random);

            rows.push_back({stem, seed, "proposed", population_best(proposed),
                            population_mean(proposed)});
            rows.push_back({stem, seed, "random", population_best(random),
                            population_mean(random)});
        }
    }
    return rows;
}

void write_initpop_csv(std::ostream& out, const std::vector<InitPopRow>& rows) {
    out << "dataset,seed,mode,q_max,q_avg\n";
    for (const InitPopRow& row : rows) {
        out << row.dataset << ',' << row.seed << ',' << row.mode << ','
            << row.q_max << ',' << row.q_avg << '\n';
    }
}

BoxStats box_stats(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("box stats need at least one value");
    }
    std::sort(values.begin(), values.end());
    BoxStats stats;
    stats.min = values.front();
    stats.max = values.back();
    stats.q1 = quantile(values, 0.25);
    stats.median = quantile(values, 0.5);
    stats.q3 = quantile(values, 0.75);
    const double iqr = stats.q3 - stats.q1;
    const double low = stats.q1 - 1.5 * iqr;
    const double high = stats.q3 + 1.5 * iqr;
    for (double v : values) {
        if (v < low || v > high) {
            stats.outliers.push_back(v);
        }
    }
    return stats;
}

std::vector<MutationRunRow> run_mutation_bench(const ExperimentSpec& spec) {
    std::vector<MutationRunRow> rows;
    for (const std::string& path : spec.dataset_paths) {
        const Graph graph = load_edge_list_file(path).graph;
        const WeightedGraph weighted =
            weigh_edges(graph, spec.similarity, spec.similarity_params);
        const SkeletonTree tree = build_max_spanning_forest(weighted);
        const std::string stem = dataset_stem(path);

        for (MutationKind kind : {MutationKind::Uniform, MutationKind::SineBased,
                                  MutationKind::WeightBased}) {
            for (std::uint32_t rep = 0; rep < spec.repetitions; ++rep) {
                GaConfig config = spec.ga;
                config.mutation_kind = kind;
                config.rng_seed = spec.ga.rng_seed + rep;
                EvolveResult result = evolve(graph, tree, config);
                rows.push_back({stem, std::string(mutation_name(kind)),
                                config.rng_seed, result.generations_run,
                                result.best.fitness});
            }
        }
    }
    return rows;
}

void write_mutation_csv(std::ostream& out,
                        const std::vector<MutationRunRow>& rows) {
    out << "dataset,mutation,seed,generations,best_q\n";
    for (const MutationRunRow& row : rows) {
        out << row.dataset << ',' << row.mutation << ',' << row.seed << ','
            << row.generations << ',' << row.best_q << '\n';
    }
}

void write_mutation_stats_csv(std::ostream& out,
                              const std::vector<MutationRunRow>& rows) {
    out << "dataset,mutation,metric,min,q1,median,q3,max,outliers\n";
    std::vector<std::pair<std::string, std::string>> groups;
    for (const MutationRunRow& row : rows) {
        const auto group = std::make_pair(row.dataset, row.mutation);
        if (std::find(groups.begin(), groups.end(), group) == groups.end()) {
            groups.push_back(group);
        }
    }
    for (const auto& [dataset, mutation] : groups) {
        std::vector<double> generations;
        std::vector<double> best_q;
        for (const MutationRunRow& row : rows) {
            if (row.dataset == dataset && row.mutation == mutation) {
                generations.push_back(static_cast<double>(row.generations));
                best_q.push_back(row.best_q);
            }
        }
        for (const auto& [metric, values] :
             {std::make_pair(std::string("generations"), generations),
              std::make_pair(std::string("best_q"), best_q)}) {
            const BoxStats stats = box_stats(values);
            out << dataset << ',' << mutation << ',' << metric << ','
                << stats.min << ',' << stats.q1 << ',' << stats.median << ','
                << stats.q3 << ',' << stats.max << ',';
            for (std::size_t i = 0; i < stats.outliers.size(); ++i) {
                out << (i ? "|" : "") << stats.outliers[i];
            }
            out << '\n';
        }
    }
}

PlantedGraph generate_planted(const PlantedPartitionSpec& spec) {
    if (spec.communities == 0 || spec.community_size == 0) {
        throw std::invalid_argument("planted partition needs k >= 1, s >= 1");
    }
    if (!(0.0 <= spec.p_out && spec.p_out < spec.p_in && spec.p_in <= 1.0)) {
        throw std::invalid_argument("require 0 <= p_out < p_in <= 1");
    }
    PlantedGraph planted;
    planted.node_count = spec.communities * spec.community_size;
    planted.truth.resize(planted.node_count);
    for (NodeId v = 0; v < planted.node_count; ++v) {
        planted.truth[v] = v / spec.community_size;
    }
    Rng rng(spec.seed);
    for (NodeId u = 0; u < planted.node_count; ++u) {
        for (NodeId v = u + 1; v < planted.node_count; ++v) {
            const double p =
                planted.truth[u] == planted.truth[v] ? spec.p_in : spec.p_out;
            if (uniform01(rng) < p) {
                planted.edges.push_back({u, v});
            }
        }
    }
    return planted;
}

void write_planted(const PlantedGraph& planted, const std::string& graph_path,
                   const std::string& truth_path,
                   const PlantedPartitionSpec& spec) {
    auto graph_out = open_output(graph_path);
    graph_out << "# planted partition: k=" << spec.communities
              << " s=" << spec.community_size << " p_in=" << spec.p_in
              << " p_out=" << spec.p_out << " seed=" << spec.seed << '\n';
    for (const Edge& e : planted.edges) {
        graph_out << e.u << ' ' << e.v << '\n';
    }
    auto truth_out = open_output(truth_path);
    truth_out << "# planted partition ground truth, seed=" << spec.seed << '\n';
    for (NodeId v = 0; v < planted.node_count; ++v) {
        truth_out << v << ' ' << planted.truth[v] << '\n';
    }
}

void write_detect_summary_csv(std::ostream& out,
                              const std::vector<DetectRunRow>& rows) {
    out << "dataset,similarity,seed,best_q,nmi,generations,wall_ms\n";
    for (const DetectRunRow& row : rows) {
        out << row.dataset << ',' << row.similarity << ',' << row.seed << ','
            << row.best_q << ',';
        if (row.nmi) {
            out << *row.nmi;
        }
        out << ',' << row.generations << ',' << row.wall_ms << '\n';
    }
}

void write_run_log_csv(std::ostream& out,
                       const std::vector<GenerationLogRow>& log) {
    out << "generation,best_q,mean_q,alpha,communities\n";
    for (const GenerationLogRow& row : log) {
        out << row.generation << ',' << row.best_q << ',' << row.mean_q << ','
            << row.alpha << ',' << row.communities << '\n';
    }
}

}  // namespace mstga
