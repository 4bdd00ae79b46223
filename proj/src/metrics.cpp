#include "mstga/metrics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace mstga {

double community_q(std::uint64_t intra_edges, std::uint64_t degree_sum,
                   std::uint64_t edge_count) {
    if (edge_count == 0) {
        throw std::invalid_argument("modularity is undefined for an empty graph");
    }
    const double m = static_cast<double>(edge_count);
    const double half_degree_ratio = static_cast<double>(degree_sum) / (2.0 * m);
    return static_cast<double>(intra_edges) / m -
           half_degree_ratio * half_degree_ratio;
}

double modularity(const Partition& p, const Graph& g) {
    double q = 0.0;
    for (std::uint32_t c = 0; c < p.community_count(); ++c) {
        q += community_q(p.intra_edges[c], p.degree_sums[c], g.edge_count());
    }
    return q;
}

GroundTruth GroundTruth::load(std::istream& in, const Graph& g) {
    GroundTruth truth;
    truth.assignment.assign(g.node_count(),
                            std::numeric_limits<std::uint32_t>::max());
    std::unordered_map<std::string, std::uint32_t> community_ids;
    std::size_t assigned = 0;

    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::istringstream tokens(line);
        std::string node, community, extra;
        if (!(tokens >> node) || node.front() == '#') {
            continue;
        }
        if (!(tokens >> community) || (tokens >> extra)) {
            throw std::runtime_error("line " + std::to_string(line_number) +
                                     ": expected node and community tokens");
        }
        const auto id = g.node_of_label(node);
        if (!id) {
            throw std::runtime_error("line " + std::to_string(line_number) +
                                     ": unknown node '" + node + "'");
        }
        if (truth.assignment[*id] != std::numeric_limits<std::uint32_t>::max()) {
            throw std::runtime_error("line " + std::to_string(line_number) +
                                     ": node '" + node + "' listed twice");
        }
        const auto community_it =
            community_ids.emplace(community,
                                  static_cast<std::uint32_t>(community_ids.size()))
                .first;
        truth.assignment[*id] = community_it->second;
        ++assigned;
    }
    truth.covers_all_nodes = assigned == g.node_count();
    return truth;
}

GroundTruth GroundTruth::load_file(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open ground-truth file: " + path);
    }
    try {
        return load(in, g);
    } catch (const std::runtime_error& err) {
        throw std::runtime_error(path + ": " + err.what());
    }
}

namespace {

// Entropy of a cluster-size histogram: -sum (c/n) log (c/n), natural log.
double entropy(const std::vector<std::uint64_t>& sizes, double n) {
    double sum = 0.0;
    for (std::uint64_t c : sizes) {
        if (c > 0) {
            sum += static_cast<double>(c) * std::log(static_cast<double>(c));
        }
    }
    return std::log(n) - sum / n;
}

}  // namespace

double nmi(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    if (a.size() != b.size() || a.empty()) {
        throw std::invalid_argument("assignments must cover the same node set");
    }
    const double n = static_cast<double>(a.size());

    std::uint32_t ka = 0, kb = 0;
    for (std::size_t v = 0; v < a.size(); ++v) {
        ka = std::max(ka, a[v] + 1);
        kb = std::max(kb, b[v] + 1);
    }
    std::vector<std::uint64_t> sizes_a(ka, 0), sizes_b(kb, 0);
    std::unordered_map<std::uint64_t, std::uint64_t> joint;
    for (std::size_t v = 0; v < a.size(); ++v) {
        ++sizes_a[a[v]];
        ++sizes_b[b[v]];
        ++joint[(static_cast<std::uint64_t>(a[v]) << 32) | b[v]];
    }

    const double ha = entropy(sizes_a, n);
    const double hb = entropy(sizes_b, n);
    if (ha + hb == 0.0) {
        return 1.0;  // both are the single all-in-one cluster
    }

    std::vector<std::uint64_t> joint_sizes;
    joint_sizes.reserve(joint.size());
    for (const auto& [key, count] : joint) {
        joint_sizes.push_back(count);
    }
    const double hab = entropy(joint_sizes, n);
    const double mutual_information = ha + hb - hab;
    return 2.0 * mutual_information / (ha + hb);
}

double nmi(const Partition& p, const GroundTruth& truth) {
    if (!truth.covers_all_nodes) {
        throw std::invalid_argument(
            "ground truth does not cover every graph node");
    }
    return nmi(p.assignment, truth.assignment);
}

}  // namespace mstga
