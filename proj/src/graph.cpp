#include "abusekit/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "abusekit/errors.hpp"
#include "abusekit/io.hpp"

namespace abusekit::graph {

SocialGraph SocialGraph::from_edges(const std::vector<std::pair<std::string, std::string>>& edges) {
    SocialGraph g;

    std::set<std::string> nodes;
    for (const auto& [src, dst] : edges) {
        nodes.insert(src);
        nodes.insert(dst);
    }
    g.ids_.assign(nodes.begin(), nodes.end());
    for (std::size_t i = 0; i < g.ids_.size(); ++i) g.index_[g.ids_[i]] = i;

    const std::size_t n = g.ids_.size();
    g.out_.resize(n);
    g.in_.resize(n);
    g.und_.resize(n);

    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& [src, dst] : edges) {
        if (src == dst) continue;  // self-loop
        const std::size_t u = g.index_[src];
        const std::size_t v = g.index_[dst];
        if (!seen.insert({u, v}).second) continue;  // duplicate
        g.out_[u].push_back(v);
        g.in_[v].push_back(u);
    }
    g.edge_count_ = seen.size();

    std::set<std::pair<std::size_t, std::size_t>> und_seen;
    for (const auto& [u, v] : seen) {
        const auto key = std::minmax(u, v);
        if (und_seen.insert({key.first, key.second}).second) {
            g.und_[key.first].push_back(key.second);
            g.und_[key.second].push_back(key.first);
        }
    }
    for (auto& adj : g.out_) std::sort(adj.begin(), adj.end());
    for (auto& adj : g.in_) std::sort(adj.begin(), adj.end());
    for (auto& adj : g.und_) std::sort(adj.begin(), adj.end());
    return g;
}

std::size_t SocialGraph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw ContractViolation("unknown node: " + id);
    return it->second;
}

double reciprocity(const SocialGraph& g, const std::string& node) {
    const std::size_t u = g.index_of(node);
    const auto& friends = g.out_neighbors(u);
    if (friends.empty()) return 0.0;

    const auto& followers = g.in_neighbors(u);
    std::size_t returned = 0;
    for (std::size_t f : friends) {
        if (std::binary_search(followers.begin(), followers.end(), f)) ++returned;
    }
    return static_cast<double>(returned) / static_cast<double>(friends.size());
}

namespace {

// L2-normalize in place; an all-zero vector becomes uniform with unit norm.
void normalize_or_uniform(std::vector<double>& v) {
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) {
        const double u = 1.0 / std::sqrt(static_cast<double>(v.size()));
        std::fill(v.begin(), v.end(), u);
        return;
    }
    for (double& x : v) x /= norm;
}

double max_component_change(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
    return d;
}

}  // namespace

HitsScores hits(const SocialGraph& g, double tol, int max_iter) {
    const std::size_t n = g.node_count();
    if (n == 0) throw ContractViolation("hits: empty graph");

    HitsScores s;
    s.hub.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
    s.authority = s.hub;

    for (int iter = 1; iter <= max_iter; ++iter) {
        std::vector<double> auth(n, 0.0), hub(n, 0.0);
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t u : g.in_neighbors(v)) auth[v] += s.hub[u];
        }
        normalize_or_uniform(auth);
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v : g.out_neighbors(u)) hub[u] += auth[v];
        }
        normalize_or_uniform(hub);

        const double delta = std::max(max_component_change(auth, s.authority),
                                      max_component_change(hub, s.hub));
        s.authority = std::move(auth);
        s.hub = std::move(hub);
        s.iterations = iter;
        if (delta < tol) return s;
    }
    throw ConvergenceError("hits: no convergence after " + std::to_string(max_iter) + " iterations",
                           s.authority);
}

std::vector<double> eigenvector_centrality(const SocialGraph& g, double tol, int max_iter) {
    const std::size_t n = g.node_count();
    if (n == 0) throw ContractViolation("eigenvector_centrality: empty graph");

    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int iter = 1; iter <= max_iter; ++iter) {
        std::vector<double> next(n, 0.0);
        for (std::size_t u = 0; u < n; ++u) {
            double acc = x[u];  // the +I shift
            for (std::size_t v : g.undirected_neighbors(u)) acc += x[v];
            next[u] = acc;
        }
        normalize_or_uniform(next);
        const double delta = max_component_change(next, x);
        x = std::move(next);
        if (delta < tol) return x;
    }
    throw ConvergenceError("eigenvector_centrality: no convergence after " +
                               std::to_string(max_iter) + " iterations",
                           x);
}

double closeness(const SocialGraph& g, const std::string& node) {
    const std::size_t n = g.node_count();
    const std::size_t src = g.index_of(node);
    if (n < 2) return 0.0;

    std::vector<int> dist(n, -1);
    std::deque<std::size_t> queue{src};
    dist[src] = 0;
    double harmonic = 0.0;
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        if (dist[u] > 0) harmonic += 1.0 / static_cast<double>(dist[u]);
        for (std::size_t v : g.undirected_neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return harmonic / static_cast<double>(n - 1);
}

double clustering_coefficient(const SocialGraph& g, const std::string& node) {
    const std::size_t u = g.index_of(node);
    const auto& nbrs = g.undirected_neighbors(u);
    const std::size_t k = nbrs.size();
    if (k < 2) return 0.0;

    std::size_t links = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const auto& ni = g.undirected_neighbors(nbrs[i]);
        for (std::size_t j = i + 1; j < k; ++j) {
            if (std::binary_search(ni.begin(), ni.end(), nbrs[j])) ++links;
        }
    }
    return 2.0 * static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1));
}

namespace {

// Weighted undirected multigraph for the aggregation phases. Self-loop weight
// holds twice the internal edge weight, matching the 2m bookkeeping.
struct WeightedGraph {
    std::vector<std::vector<std::pair<std::size_t, double>>> adj;  // excludes self-loops
    std::vector<double> self_loop;
    std::vector<double> degree;  // weighted degree including self-loops
    double total_weight = 0.0;   // 2m

    std::size_t size() const { return adj.size(); }
};

WeightedGraph weighted_from(const SocialGraph& g) {
    WeightedGraph wg;
    const std::size_t n = g.node_count();
    wg.adj.resize(n);
    wg.self_loop.assign(n, 0.0);
    wg.degree.assign(n, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v : g.undirected_neighbors(u)) {
            wg.adj[u].push_back({v, 1.0});
        }
        wg.degree[u] = static_cast<double>(g.undirected_neighbors(u).size());
        wg.total_weight += wg.degree[u];
    }
    return wg;
}

// One pass of local moving; returns true if any node changed community.
bool local_moving(const WeightedGraph& wg, std::vector<int>& community) {
    const std::size_t n = wg.size();
    const double two_m = wg.total_weight;
    if (two_m == 0.0) return false;

    std::vector<double> community_total(n, 0.0);  // sum of degrees per community
    for (std::size_t u = 0; u < n; ++u) community_total[static_cast<std::size_t>(community[u])] += wg.degree[u];

    bool moved_any = false;
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t u = 0; u < n; ++u) {
            const int current = community[u];
            std::unordered_map<int, double> links;  // weight from u into each neighbor community
            links[current] += 0.0;
            for (const auto& [v, w] : wg.adj[u]) links[community[v]] += w;

            community_total[static_cast<std::size_t>(current)] -= wg.degree[u];

            int best = current;
            double best_gain = links[current] - community_total[static_cast<std::size_t>(current)] * wg.degree[u] / two_m;
            for (const auto& [cand, w] : links) {
                if (cand == current) continue;
                const double gain = w - community_total[static_cast<std::size_t>(cand)] * wg.degree[u] / two_m;
                if (gain > best_gain + 1e-12 || (std::fabs(gain - best_gain) <= 1e-12 && cand < best)) {
                    best = cand;
                    best_gain = gain;
                }
            }

            community_total[static_cast<std::size_t>(best)] += wg.degree[u];
            if (best != current) {
                community[u] = best;
                improved = true;
                moved_any = true;
            }
        }
    }
    return moved_any;
}

double weighted_modularity(const WeightedGraph& wg, const std::vector<int>& community) {
    const double two_m = wg.total_weight;
    if (two_m == 0.0) return 0.0;

    std::unordered_map<int, double> internal, total;
    for (std::size_t u = 0; u < wg.size(); ++u) {
        const int c = community[u];
        total[c] += wg.degree[u];
        internal[c] += wg.self_loop[u];
        for (const auto& [v, w] : wg.adj[u]) {
            if (community[v] == c) internal[c] += w;
        }
    }
    double q = 0.0;
    for (const auto& [c, tot] : total) {
        q += internal[c] / two_m - (tot / two_m) * (tot / two_m);
    }
    return q;
}

// Collapse communities into super-nodes; maps old community ids to 0..k-1 in
// ascending order so the next pass is deterministic.
WeightedGraph aggregate(const WeightedGraph& wg, const std::vector<int>& community,
                        std::vector<int>& renumbered) {
    std::set<int> distinct(community.begin(), community.end());
    std::unordered_map<int, int> remap;
    int next = 0;
    for (int c : distinct) remap[c] = next++;

    renumbered.resize(community.size());
    for (std::size_t u = 0; u < community.size(); ++u) renumbered[u] = remap[community[u]];

    WeightedGraph out;
    const std::size_t k = distinct.size();
    out.adj.resize(k);
    out.self_loop.assign(k, 0.0);
    out.degree.assign(k, 0.0);
    out.total_weight = wg.total_weight;

    std::map<std::pair<int, int>, double> cross;
    for (std::size_t u = 0; u < wg.size(); ++u) {
        const int cu = renumbered[u];
        out.self_loop[static_cast<std::size_t>(cu)] += wg.self_loop[u];
        out.degree[static_cast<std::size_t>(cu)] += wg.degree[u];
        for (const auto& [v, w] : wg.adj[u]) {
            const int cv = renumbered[v];
            if (cu == cv) {
                out.self_loop[static_cast<std::size_t>(cu)] += w;  // both directions land here
            } else {
                cross[{cu, cv}] += w;
            }
        }
    }
    for (const auto& [key, w] : cross) {
        out.adj[static_cast<std::size_t>(key.first)].push_back({static_cast<std::size_t>(key.second), w});
    }
    return out;
}

}  // namespace

double partition_modularity(const SocialGraph& g, const std::vector<int>& community) {
    return weighted_modularity(weighted_from(g), community);
}

LouvainResult louvain(const SocialGraph& g) {
    LouvainResult result;
    const std::size_t n = g.node_count();
    result.community.resize(n);
    std::iota(result.community.begin(), result.community.end(), 0);
    if (n == 0) return result;

    WeightedGraph level = weighted_from(g);
    std::vector<int> membership(n);
    std::iota(membership.begin(), membership.end(), 0);  // node -> current-level community

    while (true) {
        std::vector<int> community(level.size());
        std::iota(community.begin(), community.end(), 0);
        const bool moved = local_moving(level, community);
        if (!moved) break;

        std::vector<int> renumbered;
        WeightedGraph next = aggregate(level, community, renumbered);
        for (std::size_t u = 0; u < n; ++u) {
            membership[u] = renumbered[static_cast<std::size_t>(membership[u])];
        }
        if (next.size() == level.size()) break;  // no shrink, nothing left to gain
        level = std::move(next);
    }

    // Renumber final communities to 0..k-1 by first appearance in node order.
    std::unordered_map<int, int> remap;
    int next_id = 0;
    for (std::size_t u = 0; u < n; ++u) {
        auto [it, fresh] = remap.try_emplace(membership[u], next_id);
        if (fresh) ++next_id;
        result.community[u] = it->second;
    }
    result.modularity = partition_modularity(g, result.community);
    return result;
}

double power_difference(double user_ratio, const std::vector<double>& mentioned_ratios) {
    if (mentioned_ratios.empty()) return 0.0;
    double sum = 0.0;
    for (double r : mentioned_ratios) sum += r;
    return user_ratio - sum / static_cast<double>(mentioned_ratios.size());
}

CentralityScores analyze(const SocialGraph& g, double tol, int max_iter) {
    CentralityScores s;
    s.ids = g.ids();
    const std::size_t n = g.node_count();
    s.in_degree.resize(n);
    s.out_degree.resize(n);
    s.ratio.resize(n);
    s.reciprocity.resize(n);
    s.closeness.resize(n);
    s.clustering.resize(n);

    for (std::size_t u = 0; u < n; ++u) {
        const double followers = static_cast<double>(g.in_neighbors(u).size());
        const double friends = static_cast<double>(g.out_neighbors(u).size());
        s.in_degree[u] = followers;
        s.out_degree[u] = friends;
        s.ratio[u] = followers / std::max(friends, 1.0);
        s.reciprocity[u] = reciprocity(g, s.ids[u]);
        s.closeness[u] = closeness(g, s.ids[u]);
        s.clustering[u] = clustering_coefficient(g, s.ids[u]);
    }

    auto hits_scores = hits(g, tol, max_iter);
    s.hub = std::move(hits_scores.hub);
    s.authority = std::move(hits_scores.authority);
    s.eigenvector = eigenvector_centrality(g, tol, max_iter);

    auto communities = louvain(g);
    s.community = std::move(communities.community);
    s.modularity = communities.modularity;
    return s;
}

std::vector<std::pair<std::string, std::string>> load_edges(const std::filesystem::path& path) {
    std::vector<std::pair<std::string, std::string>> edges;
    std::size_t line_no = 0;
    for (const auto& line : io::read_lines(path)) {
        ++line_no;
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ParseError("edge list line " + std::to_string(line_no) + ": expected src<TAB>dst");
        }
        edges.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
    return edges;
}

}  // namespace abusekit::graph
