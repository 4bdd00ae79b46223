#include "mstga/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace mstga {

Graph::Graph(NodeId node_count, std::vector<Edge> edges,
             std::vector<std::string> labels)
    : node_count_(node_count), edges_(std::move(edges)), labels_(std::move(labels)) {
    if (node_count_ == 0) {
        throw std::invalid_argument("graph must have at least one node");
    }
    if (labels_.empty()) {
        labels_.reserve(node_count_);
        for (NodeId v = 0; v < node_count_; ++v) {
            labels_.push_back(std::to_string(v));
        }
    }
    if (labels_.size() != node_count_) {
        throw std::invalid_argument("label count does not match node count");
    }
    for (NodeId v = 0; v < node_count_; ++v) {
        label_to_id_.emplace(labels_[v], v);
    }

    std::vector<std::size_t> degree(node_count_, 0);
    for (const Edge& e : edges_) {
        if (e.u >= node_count_ || e.v >= node_count_) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (e.u == e.v) {
            throw std::invalid_argument("self-loops are not allowed");
        }
        if (e.u > e.v) {
            throw std::invalid_argument("edges must be stored with u < v");
        }
        ++degree[e.u];
        ++degree[e.v];
    }

    adjacency_offsets_.assign(node_count_ + 1, 0);
    for (NodeId v = 0; v < node_count_; ++v) {
        adjacency_offsets_[v + 1] = adjacency_offsets_[v] + degree[v];
    }
    adjacency_.resize(adjacency_offsets_.back());
    std::vector<std::size_t> cursor(adjacency_offsets_.begin(),
                                    adjacency_offsets_.end() - 1);
    for (const Edge& e : edges_) {
        adjacency_[cursor[e.u]++] = e.v;
        adjacency_[cursor[e.v]++] = e.u;
    }
    for (NodeId v = 0; v < node_count_; ++v) {
        auto begin = adjacency_.begin() +
                     static_cast<std::ptrdiff_t>(adjacency_offsets_[v]);
        auto end = adjacency_.begin() +
                   static_cast<std::ptrdiff_t>(adjacency_offsets_[v + 1]);
        std::sort(begin, end);
        if (std::adjacent_find(begin, end) != end) {
            throw std::invalid_argument("duplicate edges are not allowed");
        }
    }
}

std::span<const NodeId> Graph::neighbors(NodeId v) const {
    return {adjacency_.data() + adjacency_offsets_[v],
            adjacency_offsets_[v + 1] - adjacency_offsets_[v]};
}

NodeId Graph::degree(NodeId v) const {
    return static_cast<NodeId>(adjacency_offsets_[v + 1] - adjacency_offsets_[v]);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<NodeId> Graph::node_of_label(const std::string& label) const {
    auto it = label_to_id_.find(label);
    if (it == label_to_id_.end()) {
        return std::nullopt;
    }
    return it->second;
}

LoadResult load_edge_list(std::istream& in) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> ids;
    std::vector<Edge> edges;
    std::unordered_set<std::uint64_t> seen;
    std::size_t self_loops = 0;
    std::size_t duplicates = 0;

    auto intern = [&](const std::string& token) {
        auto [it, inserted] = ids.emplace(token, static_cast<NodeId>(labels.size()));
        if (inserted) {
            labels.push_back(token);
        }
        return it->second;
    };

    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::istringstream tokens(line);
        std::string a, b, extra;
        if (!(tokens >> a) || a.front() == '#') {
            continue;  // blank or comment line
        }
        if (!(tokens >> b) || (tokens >> extra)) {
            throw std::runtime_error("line " + std::to_string(line_number) +
                                     ": expected two node tokens");
        }
        NodeId u = intern(a);
        NodeId v = intern(b);
        if (u == v) {
            ++self_loops;
            continue;
        }
        if (u > v) {
            std::swap(u, v);
        }
        const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
        if (!seen.insert(key).second) {
            ++duplicates;
            continue;
        }
        edges.push_back({u, v});
    }

    if (edges.empty()) {
        throw std::runtime_error("edge list is empty");
    }
    const NodeId node_count = static_cast<NodeId>(labels.size());
    return {Graph(node_count, std::move(edges), std::move(labels)), self_loops,
            duplicates};
}

LoadResult load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open graph file: " + path);
    }
    try {
        return load_edge_list(in);
    } catch (const std::runtime_error& err) {
        throw std::runtime_error(path + ": " + err.what());
    }
}

void write_edge_list(std::ostream& out, const Graph& g) {
    for (const Edge& e : g.edges()) {
        out << g.label(e.u) << ' ' << g.label(e.v) << '\n';
    }
}

double clustering_coefficient(const Graph& g, NodeId v) {
    const NodeId d = g.degree(v);
    if (d < 2) {
        return 0.0;
    }
    auto nb = g.neighbors(v);
    std::size_t closed = 0;  // ordered pairs (a, b) of adjacent neighbors
    for (NodeId a : nb) {
        auto na = g.neighbors(a);
        std::size_t i = 0, j = 0;
        while (i < nb.size() && j < na.size()) {
            if (nb[i] < na[j]) {
                ++i;
            } else if (nb[i] > na[j]) {
                ++j;
            } else {
                ++closed;
                ++i;
                ++j;
            }
        }
    }
    return static_cast<double>(closed) / (static_cast<double>(d) * (d - 1));
}

double mean_clustering_coefficient(const Graph& g) {
    double total = 0.0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        total += clustering_coefficient(g, v);
    }
    return total / g.node_count();
}

std::uint32_t h_index(const Graph& g, NodeId v) {
    std::vector<NodeId> degrees;
    degrees.reserve(g.degree(v));
    for (NodeId w : g.neighbors(v)) {
        degrees.push_back(g.degree(w));
    }
    std::sort(degrees.begin(), degrees.end(), std::greater<>());
    std::uint32_t h = 0;
    while (h < degrees.size() && degrees[h] >= h + 1) {
        ++h;
    }
    return h;
}

}  // namespace mstga
