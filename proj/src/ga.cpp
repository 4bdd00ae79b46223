#include "mstga/ga.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "mstga/metrics.hpp"

namespace mstga {

namespace {

constexpr double kRouletteShift = 1e-6;
constexpr std::uint32_t kNoGroup = std::numeric_limits<std::uint32_t>::max();

std::vector<std::vector<NodeId>> member_lists(
    std::span<const std::uint32_t> assignment, std::uint32_t communities) {
    std::vector<std::vector<NodeId>> members(communities);
    for (NodeId v = 0; v < assignment.size(); ++v) {
        members[assignment[v]].push_back(v);
    }
    return members;
}

// q(C) for one community given its member list, against the full graph.
double community_q_of_members(std::span<const NodeId> members,
                              std::span<const std::uint32_t> assignment,
                              std::uint32_t community, const Graph& g) {
    std::uint64_t intra = 0;
    std::uint64_t degree_sum = 0;
    for (NodeId v : members) {
        degree_sum += g.degree(v);
        for (NodeId w : g.neighbors(v)) {
            if (w > v && assignment[w] == community) {
                ++intra;
            }
        }
    }
    return community_q(intra, degree_sum, g.edge_count());
}

// Canonical (smallest-member-first) community ids from the gene vector.
std::pair<std::vector<std::uint32_t>, std::uint32_t> assignment_from_genes(
    std::span<const std::uint8_t> genes, const SkeletonTree& tree) {
    std::vector<std::uint32_t> parent(tree.node_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (GeneIndex i = 0; i < genes.size(); ++i) {
        if (genes[i] == 0) {
            const Edge e = tree.edge_of_gene(i);
            const std::uint32_t a = find(e.u);
            const std::uint32_t b = find(e.v);
            if (a != b) {
                parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    std::vector<std::uint32_t> assignment(tree.node_count());
    std::vector<std::uint32_t> root_to_id(tree.node_count(), kNoGroup);
    std::uint32_t next = 0;
    for (NodeId v = 0; v < tree.node_count(); ++v) {
        const std::uint32_t root = find(v);
        if (root_to_id[root] == kNoGroup) {
            root_to_id[root] = next++;
        }
        assignment[v] = root_to_id[root];
    }
    return {std::move(assignment), next};
}

}  // namespace

std::optional<MutationKind> mutation_from_name(std::string_view name) {
    if (name == "uniform") return MutationKind::Uniform;
    if (name == "weight") return MutationKind::WeightBased;
    if (name == "sine") return MutationKind::SineBased;
    return std::nullopt;
}

std::string_view mutation_name(MutationKind kind) {
    switch (kind) {
        case MutationKind::Uniform: return "uniform";
        case MutationKind::WeightBased: return "weight";
        case MutationKind::SineBased: return "sine";
    }
    return "?";
}

Partition evaluate(Chromosome& c, const SkeletonTree& tree, const Graph& g) {
    Partition p = decode(c, tree, g);
    c.community_q.resize(p.community_count());
    double total = 0.0;
    for (std::uint32_t i = 0; i < p.community_count(); ++i) {
        c.community_q[i] = community_q(p.intra_edges[i], p.degree_sums[i],
                                       g.edge_count());
        total += c.community_q[i];
    }
    c.fitness = total;
    return p;
}

Chromosome initial_individual_from_order(const SkeletonTree& tree,
                                         std::span<const GeneIndex> seed_order,
                                         Rng& rng) {
    const NodeId n = tree.node_count();
    const std::uint32_t threshold = static_cast<std::uint32_t>(
        std::ceil(std::sqrt(static_cast<double>(n))));

    Chromosome c;
    c.genes.assign(tree.gene_count(), 0);
    std::vector<std::uint32_t> community(n, kNoGroup);
    std::uint32_t community_token = 0;
    std::vector<NodeId> frontier;
    std::vector<GeneIndex> broken_at_border;

    // Grows one community by BFS over unbroken tree edges, starting from the
    // unvisited endpoints of the seed edge. Stops once `threshold` nodes are
    // collected (then seals every edge leaving the community), or when the
    // frontier runs out (then reconnects one broken border edge at random,
    // merging with a neighboring community).
    auto grow = [&](GeneIndex seed) {
        const std::uint32_t token = community_token++;
        frontier.clear();
        broken_at_border.clear();
        const Edge seed_edge = tree.edge_of_gene(seed);
        for (NodeId endpoint : {seed_edge.u, seed_edge.v}) {
            if (community[endpoint] == kNoGroup) {
                community[endpoint] = token;
                frontier.push_back(endpoint);
            }
        }
        std::uint32_t size = static_cast<std::uint32_t>(frontier.size());
        bool reached_threshold = size >= threshold;
        for (std::size_t next = 0; next < frontier.size() && !reached_threshold;
             ++next) {
            const NodeId x = frontier[next];
            for (GeneIndex i : tree.incident_genes(x)) {
                if (c.genes[i] == 1) {
                    broken_at_border.push_back(i);
                    continue;
                }
                const NodeId y = tree.other_endpoint(i, x);
                if (community[y] != kNoGroup) {
                    continue;
                }
                community[y] = token;
                frontier.push_back(y);
                if (++size >= threshold) {
                    reached_threshold = true;
                    break;
                }
            }
        }
        if (reached_threshold) {
            for (NodeId x : frontier) {
                for (GeneIndex i : tree.incident_genes(x)) {
                    if (community[tree.other_endpoint(i, x)] != token) {
                        c.genes[i] = 1;
                    }
                }
            }
        } else if (!broken_at_border.empty()) {
            const GeneIndex pick = broken_at_border[uniform_below(
                rng, broken_at_border.size())];
            c.genes[pick] = 0;
        }
    };

    for (GeneIndex seed : seed_order) {
        const Edge e = tree.edge_of_gene(seed);
        if (community[e.u] == kNoGroup || community[e.v] == kNoGroup) {
            grow(seed);
        }
    }
    return c;
}

Chromosome generate_initial_individual(const SkeletonTree& tree, Rng& rng) {
    std::vector<GeneIndex> order(tree.gene_count());
    std::iota(order.begin(), order.end(), 0);
    shuffle(order, rng);
    return initial_individual_from_order(tree, order, rng);
}

std::vector<Chromosome> generate_initial_population(const SkeletonTree& tree,
                                                    const Graph& g,
                                                    const GaConfig& config,
                                                    Rng& rng) {
    std::vector<Chromosome> population;
    population.reserve(config.population_size);
    for (std::uint32_t i = 0; i < config.population_size; ++i) {
        Chromosome c = generate_initial_individual(tree, rng);
        evaluate(c, tree, g);
        population.push_back(std::move(c));
    }
    return population;
}

std::vector<Chromosome> generate_random_population(const SkeletonTree& tree,
                                                   const Graph& g,
                                                   std::uint32_t count,
                                                   Rng& rng) {
    std::vector<Chromosome> population;
    population.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        Chromosome c;
        c.genes.resize(tree.gene_count());
        for (auto& gene : c.genes) {
            gene = static_cast<std::uint8_t>(uniform_below(rng, 2));
        }
        evaluate(c, tree, g);
        population.push_back(std::move(c));
    }
    return population;
}

std::size_t roulette_pick_from_weights(std::span<const double> weights,
                                       double r) {
    double total = 0.0;
    for (double w : weights) {
        total += w;
    }
    const double target = r * total;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        cumulative += weights[i];
        if (target < cumulative) {
            return i;
        }
    }
    return weights.size() - 1;  // r == 1 - eps with rounding
}

std::size_t roulette_select(std::span<const double> fitnesses, Rng& rng) {
    if (fitnesses.empty()) {
        throw std::invalid_argument("cannot select from an empty population");
    }
    const double min_fitness = *std::min_element(fitnesses.begin(),
                                                 fitnesses.end());
    std::vector<double> weights(fitnesses.size());
    for (std::size_t i = 0; i < fitnesses.size(); ++i) {
        weights[i] = fitnesses[i] - min_fitness + kRouletteShift;
    }
    return roulette_pick_from_weights(weights, uniform01(rng));
}

Chromosome crossover(const Chromosome& a, const Chromosome& b,
                     const SkeletonTree& tree, const Graph& g) {
    const Chromosome* parents[2] = {&a, &b};
    Partition partitions[2] = {decode(a, tree, g), decode(b, tree, g)};

    struct PoolEntry {
        double q;
        std::uint8_t parent;
        std::uint32_t community;
    };
    std::vector<PoolEntry> pool;
    pool.reserve(partitions[0].community_count() +
                 partitions[1].community_count());
    for (std::uint8_t side = 0; side < 2; ++side) {
        const Partition& p = partitions[side];
        // a cache is only trusted when it matches the decoded community count
        const bool cached =
            parents[side]->community_q.size() == p.community_count();
        for (std::uint32_t comm = 0; comm < p.community_count(); ++comm) {
            const double q = cached ? parents[side]->community_q[comm]
                                    : community_q(p.intra_edges[comm],
                                                  p.degree_sums[comm],
                                                  g.edge_count());
            pool.push_back({q, side, comm});
        }
    }
    std::sort(pool.begin(), pool.end(), [](const PoolEntry& x, const PoolEntry& y) {
        if (x.q != y.q) {
            return x.q > y.q;
        }
        if (x.community != y.community) {
            return x.community < y.community;
        }
        return x.parent < y.parent;
    });

    std::vector<std::vector<NodeId>> members[2] = {
        member_lists(partitions[0].assignment, partitions[0].community_count()),
        member_lists(partitions[1].assignment, partitions[1].community_count())};

    // Transfer communities best-first; nodes already claimed stay put, so a
    // partially claimed community fragments.
    std::vector<std::uint32_t> group(g.node_count(), kNoGroup);
    std::vector<double> intact_q;  // NaN marks a fragmented transfer
    for (const PoolEntry& entry : pool) {
        const auto& source = members[entry.parent][entry.community];
        std::size_t taken = 0;
        for (NodeId v : source) {
            if (group[v] == kNoGroup) {
                group[v] = static_cast<std::uint32_t>(intact_q.size());
                ++taken;
            }
        }
        if (taken == 0) {
            continue;
        }
        intact_q.push_back(taken == source.size()
                               ? entry.q
                               : std::numeric_limits<double>::quiet_NaN());
    }

    Chromosome child;
    child.genes.resize(tree.gene_count());
    for (GeneIndex i = 0; i < tree.gene_count(); ++i) {
        const Edge e = tree.edge_of_gene(i);
        child.genes[i] = group[e.u] != group[e.v] ? 1 : 0;
    }

    // Child communities are the skeleton components of each transfer group.
    // An intact transfer is one component by construction and keeps its q;
    // fragments are re-scored.
    auto [assignment, community_count] = assignment_from_genes(child.genes, tree);
    auto child_members = member_lists(assignment, community_count);
    child.community_q.resize(community_count);
    double total = 0.0;
    for (std::uint32_t comm = 0; comm < community_count; ++comm) {
        const std::uint32_t gid = group[child_members[comm].front()];
        if (!std::isnan(intact_q[gid])) {
            child.community_q[comm] = intact_q[gid];
        } else {
            child.community_q[comm] = community_q_of_members(
                child_members[comm], assignment, comm, g);
        }
        total += child.community_q[comm];
    }
    child.fitness = total;
    return child;
}

MutationDistribution build_mutation_distribution(const Chromosome& c,
                                                 const SkeletonTree& tree,
                                                 MutationKind kind,
                                                 double alpha) {
    const GeneIndex genes = tree.gene_count();
    if (genes == 0) {
        throw std::invalid_argument("chromosome has no genes to mutate");
    }
    MutationDistribution dist;
    dist.probabilities.assign(genes, 0.0);

    auto uniform = [&] {
        std::fill(dist.probabilities.begin(), dist.probabilities.end(),
                  1.0 / genes);
    };

    switch (kind) {
        case MutationKind::Uniform:
            uniform();
            break;
        case MutationKind::WeightBased: {
            double total = 0.0;
            for (GeneIndex i = 0; i < genes; ++i) {
                dist.probabilities[i] = tree.weight_of_gene(i);
                total += dist.probabilities[i];
            }
            if (total <= 0.0) {
                uniform();  // all-zero similarity weights
            } else {
                for (double& p : dist.probabilities) {
                    p /= total;
                }
            }
            break;
        }
        case MutationKind::SineBased: {
            std::vector<GeneIndex> broken;
            for (GeneIndex i = 0; i < genes; ++i) {
                if (c.genes[i] == 1) {
                    dist.probabilities[i] = 1.0;
                    broken.push_back(i);
                }
            }
            if (broken.empty()) {
                uniform();  // no border edges to anchor the shape
                break;
            }
            // From each border edge, walk the tree outward and add a
            // depth-shaped increment to every reachable unbroken gene;
            // other border edges stop the walk.
            std::vector<std::uint8_t> visited(tree.node_count());
            std::deque<std::pair<NodeId, std::uint32_t>> queue;
            for (GeneIndex border : broken) {
                std::fill(visited.begin(), visited.end(), 0);
                queue.clear();
                const Edge e = tree.edge_of_gene(border);
                visited[e.u] = visited[e.v] = 1;
                queue.push_back({e.u, 0});
                queue.push_back({e.v, 0});
                while (!queue.empty()) {
                    const auto [x, node_depth] = queue.front();
                    queue.pop_front();
                    const double d = node_depth + 1;
                    const double interior = std::exp2(-1.0 / d);
                    const double increment =
                        alpha * interior + (1.0 - alpha) * (1.0 - interior);
                    for (GeneIndex i : tree.incident_genes(x)) {
                        if (c.genes[i] == 1) {
                            continue;
                        }
                        const NodeId y = tree.other_endpoint(i, x);
                        if (visited[y]) {
                            continue;
                        }
                        visited[y] = 1;
                        dist.probabilities[i] += increment;
                        queue.push_back({y, node_depth + 1});
                    }
                }
            }
            double total = 0.0;
            for (double p : dist.probabilities) {
                total += p;
            }
            for (double& p : dist.probabilities) {
                p /= total;
            }
            break;
        }
    }
    return dist;
}

Chromosome mutate(const Chromosome& c, const MutationDistribution& dist,
                  std::uint32_t flips, const SkeletonTree& tree, const Graph& g,
                  Rng& rng) {
    if (dist.probabilities.size() != c.genes.size()) {
        throw std::invalid_argument("distribution does not match chromosome");
    }
    if (flips > c.genes.size()) {
        throw std::invalid_argument("more flips requested than genes");
    }

    Chromosome child = c;
    std::vector<double> weights(dist.probabilities.begin(),
                                dist.probabilities.end());
    std::vector<std::uint8_t> chosen(c.genes.size(), 0);
    for (std::uint32_t f = 0; f < flips; ++f) {
        double total = 0.0;
        for (double w : weights) {
            total += w;
        }
        std::size_t idx;
        if (total > 0.0) {
            idx = roulette_pick_from_weights(weights, uniform01(rng));
        } else {
            // Distribution support exhausted; fall back to a uniform pick
            // among the remaining genes.
            std::size_t skip = uniform_below(rng, c.genes.size() - f);
            idx = 0;
            while (chosen[idx] || skip > 0) {
                if (!chosen[idx]) {
                    --skip;
                }
                ++idx;
            }
        }
        chosen[idx] = 1;
        weights[idx] = 0.0;
        child.genes[idx] ^= 1;
    }

    // Repair the cache: communities untouched by the flips keep their q.
    const Partition old = decode(c, tree, g);
    const bool cached = c.community_q.size() == old.community_count();
    auto [assignment, community_count] = assignment_from_genes(child.genes, tree);
    auto new_members = member_lists(assignment, community_count);
    child.community_q.resize(community_count);
    double total_q = 0.0;
    for (std::uint32_t comm = 0; comm < community_count; ++comm) {
        const auto& nodes = new_members[comm];
        const std::uint32_t old_comm = old.assignment[nodes.front()];
        bool unchanged = cached && old.community_sizes[old_comm] == nodes.size();
        if (unchanged) {
            for (NodeId v : nodes) {
                if (old.assignment[v] != old_comm) {
                    unchanged = false;
                    break;
                }
            }
        }
        if (unchanged) {
            child.community_q[comm] = c.community_q[old_comm];
        } else {
            child.community_q[comm] =
                community_q_of_members(nodes, assignment, comm, g);
        }
        total_q += child.community_q[comm];
    }
    child.fitness = total_q;
    return child;
}

AdaptiveState update_alpha(AdaptiveState state, bool improved, double delta) {
    if (!improved) {
        const double z = std::numbers::pi / 6.0 +
                         state.generation_index * delta * std::numbers::pi;
        state.alpha = std::abs(std::sin(z));
    }
    return state;
}

EvolveResult evolve(const Graph& g, const SkeletonTree& tree,
                    const GaConfig& config) {
    if (config.population_size < 4 || config.population_size % 2 != 0) {
        throw std::invalid_argument("population size must be even and >= 4");
    }
    if (config.delta <= 0.0) {
        throw std::invalid_argument("delta must be positive");
    }
    if (config.mutation_rate < 0.0 || config.mutation_rate > 1.0) {
        throw std::invalid_argument("mutation rate must be in [0, 1]");
    }
    if (config.flips_per_mutation == 0 ||
        config.flips_per_mutation > tree.gene_count()) {
        throw std::invalid_argument("flips per mutation out of range");
    }

    Rng rng(config.rng_seed);
    std::vector<Chromosome> population =
        generate_initial_population(tree, g, config, rng);

    auto best_of = [](const std::vector<Chromosome>& pop) {
        return std::max_element(pop.begin(), pop.end(),
                                [](const Chromosome& x, const Chromosome& y) {
                                    return x.fitness < y.fitness;
                                });
    };
    auto mean_of = [](const std::vector<Chromosome>& pop) {
        double sum = 0.0;
        for (const Chromosome& c : pop) {
            sum += c.fitness;
        }
        return sum / static_cast<double>(pop.size());
    };

    EvolveResult result;
    result.best = *best_of(population);

    AdaptiveState state;
    state.best_fitness_history.push_back(result.best.fitness);
    result.log.push_back({0, result.best.fitness, mean_of(population),
                          state.alpha,
                          static_cast<std::uint32_t>(
                              result.best.community_q.size())});

    std::uint32_t stall = 0;
    for (std::uint32_t gen = 1; gen <= config.max_generations; ++gen) {
        result.generations_run = gen;

        std::vector<double> fitnesses(population.size());
        for (std::size_t i = 0; i < population.size(); ++i) {
            fitnesses[i] = population[i].fitness;
        }

        std::vector<Chromosome> children;
        children.reserve(config.population_size / 2);
        for (std::uint32_t i = 0; i < config.population_size / 2; ++i) {
            const std::size_t pa = roulette_select(fitnesses, rng);
            const std::size_t pb = roulette_select(fitnesses, rng);
            children.push_back(
                crossover(population[pa], population[pb], tree, g));
        }
        for (Chromosome& child : children) {
            if (uniform01(rng) < config.mutation_rate) {
                const MutationDistribution dist = build_mutation_distribution(
                    child, tree, config.mutation_kind, state.alpha);
                child = mutate(child, dist, config.flips_per_mutation, tree, g,
                               rng);
            }
        }

        for (Chromosome& child : children) {
            population.push_back(std::move(child));
        }
        std::stable_sort(population.begin(), population.end(),
                         [](const Chromosome& x, const Chromosome& y) {
                             return x.fitness > y.fitness;
                         });
        population.resize(config.population_size);

        const bool improved = population.front().fitness > result.best.fitness;
        if (improved) {
            result.best = population.front();
        }
        state.generation_index = gen;
        state = update_alpha(state, improved, config.delta);
        state.best_fitness_history.push_back(result.best.fitness);
        result.log.push_back({gen, result.best.fitness, mean_of(population),
                              state.alpha,
                              static_cast<std::uint32_t>(
                                  result.best.community_q.size())});

        if (config.validate_caches) {
            Chromosome probe = population[uniform_below(rng, population.size())];
            const double cached = probe.fitness;
            evaluate(probe, tree, g);
            if (std::abs(cached - probe.fitness) > 1e-9) {
                throw std::logic_error("cached fitness drifted from decode");
            }
        }

        if (config.target_q && result.best.fitness > *config.target_q) {
            result.stop_reason = StopReason::TargetReached;
            return result;
        }
        stall = improved ? 0 : stall + 1;
        if (stall >= config.stall_generations) {
            result.stop_reason = StopReason::Stall;
            return result;
        }
    }
    result.stop_reason = StopReason::MaxGenerations;
    return result;
}

}  // namespace mstga
