#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mstga/encoding.hpp"
#include "mstga/rng.hpp"

namespace mstga {

enum class MutationKind { Uniform, WeightBased, SineBased };

std::optional<MutationKind> mutation_from_name(std::string_view name);
std::string_view mutation_name(MutationKind kind);

struct GaConfig {
    std::uint32_t population_size = 100;  // use ~300 for large graphs
    std::uint32_t max_generations = 300;
    std::uint32_t stall_generations = 50;
    double delta = 0.1;  // step constant of the adaptive schedule
    MutationKind mutation_kind = MutationKind::SineBased;
    double mutation_rate = 0.2;  // fraction of children mutated
    std::uint32_t flips_per_mutation = 1;
    std::uint64_t rng_seed = 0;
    std::optional<double> target_q;  // early stop once best fitness exceeds it
    bool validate_caches = false;    // re-check cached fitness every generation
};

// Self-adaptive control parameter of the sine-based mutation schedule.
struct AdaptiveState {
    double alpha = 0.5;
    std::uint32_t generation_index = 0;
    std::vector<double> best_fitness_history;
};

struct MutationDistribution {
    std::vector<double> probabilities;  // per gene, sums to 1
};

struct GenerationLogRow {
    std::uint32_t generation;
    double best_q;
    double mean_q;
    double alpha;
    std::uint32_t communities;
};

enum class StopReason { MaxGenerations, Stall, TargetReached };

struct EvolveResult {
    Chromosome best;
    std::vector<GenerationLogRow> log;
    std::uint32_t generations_run = 0;
    StopReason stop_reason = StopReason::MaxGenerations;
};

// Fills the per-community modularity cache and total fitness; returns the
// decoded partition.
Partition evaluate(Chromosome& c, const SkeletonTree& tree, const Graph& g);

// Grows tree-connected communities of roughly ceil(sqrt(n)) nodes around
// randomly ordered seed edges; the decoded result is always a valid
// partition.
Chromosome generate_initial_individual(const SkeletonTree& tree, Rng& rng);

// Deterministic core of the generator: seed edges are consumed in the given
// order (a permutation of all gene indices). Exposed for tests.
Chromosome initial_individual_from_order(const SkeletonTree& tree,
                                         std::span<const GeneIndex> seed_order,
                                         Rng& rng);

std::vector<Chromosome> generate_initial_population(const SkeletonTree& tree,
                                                    const Graph& g,
                                                    const GaConfig& config,
                                                    Rng& rng);

// Baseline for comparisons: independent uniform bits.
std::vector<Chromosome> generate_random_population(const SkeletonTree& tree,
                                                   const Graph& g,
                                                   std::uint32_t count, Rng& rng);

// Cumulative-probability pick over non-negative weights for r in [0, 1).
std::size_t roulette_pick_from_weights(std::span<const double> weights, double r);

// Fitness-proportional selection. Fitness values are shifted by
// min + 1e-6 first, so negative modularity and all-equal pools are safe.
std::size_t roulette_select(std::span<const double> fitnesses, Rng& rng);

// Community-transfer recombination: communities of both parents are pooled,
// sorted by cached q, and moved to the child best-first; transfers that lose
// nodes fragment into their skeleton components. Cached q values are reused
// for intact transfers.
Chromosome crossover(const Chromosome& a, const Chromosome& b,
                     const SkeletonTree& tree, const Graph& g);

MutationDistribution build_mutation_distribution(const Chromosome& c,
                                                 const SkeletonTree& tree,
                                                 MutationKind kind, double alpha);

// Flips `flips` distinct genes sampled from the distribution and repairs the
// fitness cache, recomputing q only for communities that changed.
Chromosome mutate(const Chromosome& c, const MutationDistribution& dist,
                  std::uint32_t flips, const SkeletonTree& tree, const Graph& g,
                  Rng& rng);

// alpha <- |sin(pi/6 + q * delta * pi)| when the best fitness did not
// improve; unchanged otherwise.
AdaptiveState update_alpha(AdaptiveState state, bool improved, double delta);

EvolveResult evolve(const Graph& g, const SkeletonTree& tree,
                    const GaConfig& config);

}  // namespace mstga
