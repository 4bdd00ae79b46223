#include "mstga/similarity.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace mstga {

namespace {

std::vector<NodeId> common_neighbors(const Graph& g, NodeId u, NodeId v) {
    auto nu = g.neighbors(u);
    auto nv = g.neighbors(v);
    std::vector<NodeId> common;
    std::size_t i = 0, j = 0;
    while (i < nu.size() && j < nv.size()) {
        if (nu[i] < nv[j]) {
            ++i;
        } else if (nu[i] > nv[j]) {
            ++j;
        } else {
            common.push_back(nu[i]);
            ++i;
            ++j;
        }
    }
    return common;
}

std::size_t intersection_size(std::span<const NodeId> a, std::span<const NodeId> b) {
    std::size_t count = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (a[i] > b[j]) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

double adamic_adar(const Graph& g, NodeId u, NodeId v) {
    double sum = 0.0;
    for (NodeId k : common_neighbors(g, u, v)) {
        if (g.degree(k) >= 2) {  // log(1) = 0 would divide by zero
            sum += 1.0 / std::log(static_cast<double>(g.degree(k)));
        }
    }
    return sum;
}

double resource_allocation(const Graph& g, NodeId u, NodeId v) {
    double sum = 0.0;
    for (NodeId k : common_neighbors(g, u, v)) {
        sum += 1.0 / g.degree(k);
    }
    return sum;
}

double cndp_with_mean(const Graph& g, NodeId u, NodeId v, double beta,
                      double mean_clustering) {
    const auto common = common_neighbors(g, u, v);
    double sum = 0.0;
    for (NodeId k : common) {
        const auto ck = intersection_size(g.neighbors(k), common);
        if (ck == 0) {
            continue;
        }
        sum += static_cast<double>(ck) *
               std::pow(static_cast<double>(g.degree(k)), -beta * mean_clustering);
    }
    return sum;
}

// Average degree and average h-index over the neighbors of u.
std::pair<double, double> neighbor_averages(const Graph& g, NodeId u) {
    if (g.degree(u) == 0) {
        return {0.0, 0.0};
    }
    double deg_sum = 0.0, h_sum = 0.0;
    for (NodeId k : g.neighbors(u)) {
        deg_sum += g.degree(k);
        h_sum += h_index(g, k);
    }
    const double d = g.degree(u);
    return {deg_sum / d, h_sum / d};
}

// sum over l = 2..T of coeff_u * pi_{u,v}(l) + coeff_v * pi_{v,u}(l)
double walk_similarity(const Graph& g, NodeId u, NodeId v, int horizon,
                       double coeff_u, double coeff_v) {
    if (horizon < 2) {
        throw std::invalid_argument("walk horizon must be >= 2");
    }
    WalkMatrix walk(g);
    const auto rows_u = walk.power_rows(u, horizon);
    const auto rows_v = walk.power_rows(v, horizon);
    double sum = 0.0;
    for (int l = 2; l <= horizon; ++l) {
        sum += coeff_u * rows_u[l][v] + coeff_v * rows_v[l][u];
    }
    return sum;
}

}  // namespace

std::optional<SimilarityKind> similarity_from_name(std::string_view name) {
    if (name == "cn") return SimilarityKind::CommonNeighbors;
    if (name == "jaccard") return SimilarityKind::Jaccard;
    if (name == "cosine") return SimilarityKind::Cosine;
    if (name == "hpi") return SimilarityKind::HubPromoted;
    if (name == "aa") return SimilarityKind::AdamicAdar;
    if (name == "ra") return SimilarityKind::ResourceAllocation;
    if (name == "cndp") return SimilarityKind::Cndp;
    if (name == "srw") return SimilarityKind::Srw;
    if (name == "hin") return SimilarityKind::Hin;
    return std::nullopt;
}

std::string_view similarity_name(SimilarityKind kind) {
    switch (kind) {
        case SimilarityKind::CommonNeighbors: return "cn";
        case SimilarityKind::Jaccard: return "jaccard";
        case SimilarityKind::Cosine: return "cosine";
        case SimilarityKind::HubPromoted: return "hpi";
        case SimilarityKind::AdamicAdar: return "aa";
        case SimilarityKind::ResourceAllocation: return "ra";
        case SimilarityKind::Cndp: return "cndp";
        case SimilarityKind::Srw: return "srw";
        case SimilarityKind::Hin: return "hin";
    }
    return "?";
}

std::vector<std::vector<double>> WalkMatrix::power_rows(NodeId u, int horizon) const {
    const Graph& g = *graph_;
    std::vector<std::vector<double>> rows;
    rows.reserve(horizon + 1);
    std::vector<double> row(g.node_count(), 0.0);
    row[u] = 1.0;
    rows.push_back(row);
    for (int l = 1; l <= horizon; ++l) {
        std::vector<double> next(g.node_count(), 0.0);
        for (NodeId x = 0; x < g.node_count(); ++x) {
            if (rows.back()[x] == 0.0 || g.degree(x) == 0) {
                continue;
            }
            const double share = rows.back()[x] / g.degree(x);
            for (NodeId y : g.neighbors(x)) {
                next[y] += share;
            }
        }
        rows.push_back(std::move(next));
    }
    return rows;
}

double srw_similarity(const Graph& g, NodeId u, NodeId v, int horizon) {
    const double two_m = 2.0 * static_cast<double>(g.edge_count());
    return walk_similarity(g, u, v, horizon, g.degree(u) / two_m,
                           g.degree(v) / two_m);
}

double hin_similarity(const Graph& g, NodeId u, NodeId v, int horizon) {
    const double two_m = 2.0 * static_cast<double>(g.edge_count());
    const auto [du, hu] = neighbor_averages(g, u);
    const auto [dv, hv] = neighbor_averages(g, v);
    return walk_similarity(g, u, v, horizon, std::sqrt(du * hu) / two_m,
                           std::sqrt(dv * hv) / two_m);
}

double cndp_similarity(const Graph& g, NodeId u, NodeId v, double beta) {
    return cndp_with_mean(g, u, v, beta, mean_clustering_coefficient(g));
}

WeightedGraph weigh_edges(const Graph& g, SimilarityKind kind,
                          const SimilarityParams& params) {
    std::vector<double> weights(g.edge_count(), 0.0);

    if (kind == SimilarityKind::Srw || kind == SimilarityKind::Hin) {
        if (params.walk_horizon < 2) {
            throw std::invalid_argument("walk horizon must be >= 2");
        }
        // One pass of transition-matrix powers per node covers its half of
        // every incident edge's sum.
        const double two_m = 2.0 * static_cast<double>(g.edge_count());
        std::vector<double> coeff(g.node_count());
        for (NodeId u = 0; u < g.node_count(); ++u) {
            if (kind == SimilarityKind::Srw) {
                coeff[u] = g.degree(u) / two_m;
            } else {
                const auto [d, h] = neighbor_averages(g, u);
                coeff[u] = std::sqrt(d * h) / two_m;
            }
        }
        WalkMatrix walk(g);
        std::vector<std::vector<std::size_t>> incident(g.node_count());
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            incident[g.edges()[e].u].push_back(e);
            incident[g.edges()[e].v].push_back(e);
        }
        for (NodeId u = 0; u < g.node_count(); ++u) {
            if (incident[u].empty()) {
                continue;
            }
            const auto rows = walk.power_rows(u, params.walk_horizon);
            for (std::size_t e : incident[u]) {
                const Edge edge = g.edges()[e];
                const NodeId other = edge.u == u ? edge.v : edge.u;
                for (int l = 2; l <= params.walk_horizon; ++l) {
                    weights[e] += coeff[u] * rows[l][other];
                }
            }
        }
        return {g, std::move(weights)};
    }

    const double mean_cc = kind == SimilarityKind::Cndp
                               ? mean_clustering_coefficient(g)
                               : 0.0;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto [u, v] = g.edges()[e];
        const double cn =
            static_cast<double>(common_neighbors(g, u, v).size());
        const double du = g.degree(u);
        const double dv = g.degree(v);
        switch (kind) {
            case SimilarityKind::CommonNeighbors:
                weights[e] = cn;
                break;
            case SimilarityKind::Jaccard:
                weights[e] = cn / (du + dv - cn);
                break;
            case SimilarityKind::Cosine:
                weights[e] = cn / std::sqrt(du * dv);
                break;
            case SimilarityKind::HubPromoted:
                weights[e] = cn / std::min(du, dv);
                break;
            case SimilarityKind::AdamicAdar:
                weights[e] = adamic_adar(g, u, v);
                break;
            case SimilarityKind::ResourceAllocation:
                weights[e] = resource_allocation(g, u, v);
                break;
            case SimilarityKind::Cndp:
                weights[e] = cndp_with_mean(g, u, v, params.cndp_beta, mean_cc);
                break;
            default:
                break;
        }
    }
    return {g, std::move(weights)};
}

void write_weighted_edge_list(std::ostream& out, const WeightedGraph& wg) {
    for (std::size_t e = 0; e < wg.graph.edge_count(); ++e) {
        const Edge edge = wg.graph.edges()[e];
        out << wg.graph.label(edge.u) << ' ' << wg.graph.label(edge.v) << ' '
            << wg.weights[e] << '\n';
    }
}

}  // namespace mstga
