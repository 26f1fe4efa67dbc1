#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace abusekit::graph {

// Directed follower graph. An edge (u, v) means u follows v, so v is one of
// u's friends and u is one of v's followers. Self-loops and duplicate edges
// are dropped at construction. Immutable afterwards.
class SocialGraph {
public:
    static SocialGraph from_edges(const std::vector<std::pair<std::string, std::string>>& edges);

    std::size_t node_count() const { return ids_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    bool has_node(const std::string& id) const { return index_.count(id) > 0; }
    std::size_t index_of(const std::string& id) const;
    const std::string& id_of(std::size_t idx) const { return ids_[idx]; }
    const std::vector<std::string>& ids() const { return ids_; }

    // out = friends (who the node follows), in = followers.
    const std::vector<std::size_t>& out_neighbors(std::size_t idx) const { return out_[idx]; }
    const std::vector<std::size_t>& in_neighbors(std::size_t idx) const { return in_[idx]; }
    const std::vector<std::size_t>& undirected_neighbors(std::size_t idx) const { return und_[idx]; }

private:
    std::vector<std::string> ids_;  // sorted ascending, so analytics order is reproducible
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::vector<std::size_t>> out_, in_, und_;
    std::size_t edge_count_ = 0;
};

// Fraction of the node's outgoing follows that are returned; 0 without friends.
double reciprocity(const SocialGraph& g, const std::string& node);

struct HitsScores {
    std::vector<double> hub;        // unit L2 norm across nodes
    std::vector<double> authority;  // unit L2 norm across nodes
    int iterations = 0;
};

// Mutually recursive hub/authority scores via iterated updates with L2
// normalization each round; converged when no component moves more than tol.
// Throws ConvergenceError (carrying the last authority iterate) on timeout.
HitsScores hits(const SocialGraph& g, double tol = 1e-8, int max_iter = 1000);

// Principal eigenvector of the undirected adjacency, entrywise nonnegative,
// unit L2 norm. Iterates on A + I so bipartite structures cannot oscillate.
std::vector<double> eigenvector_centrality(const SocialGraph& g, double tol = 1e-8, int max_iter = 1000);

// Harmonic closeness on the undirected view, normalized by (n - 1);
// unreachable nodes contribute zero.
double closeness(const SocialGraph& g, const std::string& node);

// Undirected local clustering coefficient; 0 for degree < 2.
double clustering_coefficient(const SocialGraph& g, const std::string& node);

struct LouvainResult {
    std::vector<int> community;  // per node index, ids form a partition 0..k-1
    double modularity = 0.0;     // of the final partition on the input graph
};

// Greedy modularity optimization: node-moving passes in ascending node-id
// order, then graph aggregation, repeated until no gain.
LouvainResult louvain(const SocialGraph& g);

// Modularity of an arbitrary partition of the undirected view.
double partition_modularity(const SocialGraph& g, const std::vector<int>& community);

// Followers/friends power gap against the mentioned users; 0 without mentions.
double power_difference(double user_ratio, const std::vector<double>& mentioned_ratios);

struct CentralityScores {
    std::vector<std::string> ids;
    std::vector<double> in_degree, out_degree, ratio, reciprocity, hub, authority,
        eigenvector, closeness, clustering;
    std::vector<int> community;
    double modularity = 0.0;
};

CentralityScores analyze(const SocialGraph& g, double tol = 1e-8, int max_iter = 1000);

std::vector<std::pair<std::string, std::string>> load_edges(const std::filesystem::path& path);

}  // namespace abusekit::graph
