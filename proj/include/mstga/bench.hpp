#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mstga/ga.hpp"
#include "mstga/metrics.hpp"
#include "mstga/similarity.hpp"

namespace mstga {

// One experiment: dataset(s), similarity choice, repetition count and the
// GA configuration shared by all repetitions. Repetition r runs with seed
// ga.rng_seed + r, which is recorded in every output row.
struct ExperimentSpec {
    std::vector<std::string> dataset_paths;
    std::optional<std::string> truth_path;
    SimilarityKind similarity = SimilarityKind::Jaccard;
    SimilarityParams similarity_params;
    std::uint32_t repetitions = 10;
    GaConfig ga;
    std::string output_dir = ".";
};

struct DetectRunRow {
    std::string dataset;
    std::string similarity;
    std::uint64_t seed;
    double best_q;
    std::optional<double> nmi;
    std::uint32_t generations;
    double wall_ms;
    std::string partition_path;
};

// Full pipeline (weigh -> skeleton -> evolve -> decode) per repetition.
// Writes a partition file and a per-generation run log for each repetition
// plus a summary.csv, and returns the summary rows.
std::vector<DetectRunRow> run_detect(const ExperimentSpec& spec);

struct InitPopRow {
    std::string dataset;
    std::uint64_t seed;
    std::string mode;  // "proposed" or "random"
    double q_max;
    double q_avg;
};

// Initial-population quality comparison: proposed generator vs uniform
// random bit strings, paired by seed.
std::vector<InitPopRow> run_initpop_bench(const ExperimentSpec& spec);
void write_initpop_csv(std::ostream& out, const std::vector<InitPopRow>& rows);

struct MutationRunRow {
    std::string dataset;
    std::string mutation;
    std::uint64_t seed;
    std::uint32_t generations;
    double best_q;
};

struct BoxStats {
    double min;
    double q1;
    double median;
    double q3;
    double max;
    std::vector<double> outliers;  // beyond 1.5 IQR whiskers
};

BoxStats box_stats(std::vector<double> values);

// Runs every mutation kind for the spec's repetition count and collects
// generations-to-stop and final best modularity per run.
std::vector<MutationRunRow> run_mutation_bench(const ExperimentSpec& spec);
void write_mutation_csv(std::ostream& out,
                        const std::vector<MutationRunRow>& rows);
void write_mutation_stats_csv(std::ostream& out,
                              const std::vector<MutationRunRow>& rows);

// Planted-partition generator: k blocks of s nodes, intra-block edges with
// probability p_in, inter-block with p_out.
struct PlantedPartitionSpec {
    std::uint32_t communities = 2;
    std::uint32_t community_size = 16;
    double p_in = 0.5;
    double p_out = 0.02;
    std::uint64_t seed = 0;
};

struct PlantedGraph {
    std::uint32_t node_count;
    std::vector<Edge> edges;
    std::vector<std::uint32_t> truth;  // node -> planted block
};

// Throws std::invalid_argument unless 0 <= p_out < p_in <= 1.
PlantedGraph generate_planted(const PlantedPartitionSpec& spec);
void write_planted(const PlantedGraph& planted, const std::string& graph_path,
                   const std::string& truth_path,
                   const PlantedPartitionSpec& spec);

void write_detect_summary_csv(std::ostream& out,
                              const std::vector<DetectRunRow>& rows);
void write_run_log_csv(std::ostream& out,
                       const std::vector<GenerationLogRow>& log);

}  // namespace mstga
