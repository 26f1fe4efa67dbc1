#include "abusekit/ml.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "abusekit/errors.hpp"
#include "abusekit/io.hpp"
#include "abusekit/rng.hpp"

namespace abusekit::ml {

std::vector<std::string> Dataset::classes() const {
    std::set<std::string> s(y.begin(), y.end());
    return {s.begin(), s.end()};
}

std::map<std::string, std::size_t> Dataset::class_counts() const {
    std::map<std::string, std::size_t> counts;
    for (const auto& label : y) ++counts[label];
    return counts;
}

namespace {

int severity_rank(const std::string& label) {
    if (label == "bully") return 0;
    if (label == "aggressor" || label == "offensive") return 1;
    if (label == "spammer" || label == "spam") return 2;
    if (label == "normal") return 3;
    return 4;
}

}  // namespace

bool severity_less(const std::string& a, const std::string& b) {
    const int ra = severity_rank(a), rb = severity_rank(b);
    if (ra != rb) return ra < rb;
    return a < b;
}

std::string Classifier::predict(const std::vector<double>& row) const {
    const auto probs = predict_proba(row);
    const auto& labels = classes();
    std::size_t best = 0;
    for (std::size_t i = 1; i < probs.size(); ++i) {
        if (probs[i] > probs[best] ||
            (probs[i] == probs[best] && severity_less(labels[i], labels[best]))) {
            best = i;
        }
    }
    return labels[best];
}

// ---------------------------------------------------------------- Naive Bayes

namespace {

constexpr double kVarianceFloor = 1e-9;

struct ClassSlice {
    std::string label;
    std::vector<std::size_t> rows;
    double log_prior = 0.0;
};

std::vector<ClassSlice> slice_by_class(const Dataset& ds, bool require_two_classes = true) {
    std::map<std::string, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < ds.y.size(); ++i) by_label[ds.y[i]].push_back(i);
    if (require_two_classes && by_label.size() < 2) {
        throw ContractViolation("training set has a single class");
    }
    std::vector<ClassSlice> slices;
    for (auto& [label, rows] : by_label) {
        ClassSlice s;
        s.label = label;
        s.log_prior = std::log(static_cast<double>(rows.size()) / static_cast<double>(ds.y.size()));
        s.rows = std::move(rows);
        slices.push_back(std::move(s));
    }
    return slices;
}

std::vector<double> softmax_from_log(std::vector<double> log_joint) {
    const double top = *std::max_element(log_joint.begin(), log_joint.end());
    double total = 0.0;
    for (double& v : log_joint) {
        v = std::exp(v - top);
        total += v;
    }
    for (double& v : log_joint) v /= total;
    return log_joint;
}

class GaussianNb final : public Classifier {
public:
    explicit GaussianNb(const Dataset& train) {
        const auto slices = slice_by_class(train);
        const std::size_t f_count = train.feature_names.size();
        for (const auto& s : slices) {
            classes_.push_back(s.label);
            log_priors_.push_back(s.log_prior);
            std::vector<double> mean(f_count, 0.0), var(f_count, 0.0);
            for (std::size_t r : s.rows) {
                for (std::size_t f = 0; f < f_count; ++f) mean[f] += train.x[r][f];
            }
            const double n = static_cast<double>(s.rows.size());
            for (double& m : mean) m /= n;
            for (std::size_t r : s.rows) {
                for (std::size_t f = 0; f < f_count; ++f) {
                    const double d = train.x[r][f] - mean[f];
                    var[f] += d * d;
                }
            }
            for (double& v : var) v = std::max(v / n, kVarianceFloor);
            means_.push_back(std::move(mean));
            vars_.push_back(std::move(var));
        }
    }

    const std::vector<std::string>& classes() const override { return classes_; }

    std::vector<double> predict_proba(const std::vector<double>& row) const override {
        std::vector<double> log_joint(classes_.size());
        for (std::size_t c = 0; c < classes_.size(); ++c) {
            double ll = log_priors_[c];
            for (std::size_t f = 0; f < row.size(); ++f) {
                const double d = row[f] - means_[c][f];
                ll += -0.5 * std::log(2.0 * M_PI * vars_[c][f]) - d * d / (2.0 * vars_[c][f]);
            }
            log_joint[c] = ll;
        }
        return softmax_from_log(std::move(log_joint));
    }

private:
    std::vector<std::string> classes_;
    std::vector<double> log_priors_;
    std::vector<std::vector<double>> means_, vars_;
};

class KernelNb final : public Classifier {
public:
    explicit KernelNb(const Dataset& train) {
        const auto slices = slice_by_class(train);
        const std::size_t f_count = train.feature_names.size();
        for (const auto& s : slices) {
            classes_.push_back(s.label);
            log_priors_.push_back(s.log_prior);
            std::vector<std::vector<double>> feature_samples(f_count);
            std::vector<double> bandwidth(f_count);
            const double n = static_cast<double>(s.rows.size());
            for (std::size_t f = 0; f < f_count; ++f) {
                auto& vals = feature_samples[f];
                vals.reserve(s.rows.size());
                for (std::size_t r : s.rows) vals.push_back(train.x[r][f]);
                double mean = std::accumulate(vals.begin(), vals.end(), 0.0) / n;
                double var = 0.0;
                for (double v : vals) var += (v - mean) * (v - mean);
                var /= n;
                // Silverman's rule with a floor for constant features.
                bandwidth[f] = std::max(1.06 * std::sqrt(var) * std::pow(n, -0.2), 1e-6);
            }
            samples_.push_back(std::move(feature_samples));
            bandwidths_.push_back(std::move(bandwidth));
        }
    }

    const std::vector<std::string>& classes() const override { return classes_; }

    std::vector<double> predict_proba(const std::vector<double>& row) const override {
        std::vector<double> log_joint(classes_.size());
        for (std::size_t c = 0; c < classes_.size(); ++c) {
            double ll = log_priors_[c];
            for (std::size_t f = 0; f < row.size(); ++f) {
                const double h = bandwidths_[c][f];
                double density = 0.0;
                for (double v : samples_[c][f]) {
                    const double z = (row[f] - v) / h;
                    density += std::exp(-0.5 * z * z);
                }
                density /= static_cast<double>(samples_[c][f].size()) * h * std::sqrt(2.0 * M_PI);
                ll += std::log(std::max(density, 1e-300));
            }
            log_joint[c] = ll;
        }
        return softmax_from_log(std::move(log_joint));
    }

private:
    std::vector<std::string> classes_;
    std::vector<double> log_priors_;
    std::vector<std::vector<std::vector<double>>> samples_;  // class x feature x values
    std::vector<std::vector<double>> bandwidths_;
};

}  // namespace

std::unique_ptr<Classifier> train_nb(const Dataset& train) {
    return std::make_unique<GaussianNb>(train);
}

std::unique_ptr<Classifier> train_kernel_nb(const Dataset& train) {
    return std::make_unique<KernelNb>(train);
}

// -------------------------------------------------------------- Random Forest

namespace {

struct TreeNode {
    int feature = -1;           // -1 marks a leaf
    double threshold = 0.0;
    int left = -1, right = -1;
    std::vector<double> distribution;  // leaf class shares
};

// Everything a tree needs while growing; not retained afterwards. The index
// buffer is partitioned in place and the sort scratch is shared across nodes.
struct TreeBuildContext {
    const Dataset& ds;
    const std::vector<std::size_t>& class_index;
    std::size_t n_classes;
    int max_depth;  // 0 = unlimited
    std::size_t mtry;
    std::mt19937_64& gen;
    std::vector<std::size_t> indices;                    // the bootstrap sample
    std::vector<std::size_t> candidates;                 // feature id scratch
    std::vector<std::pair<double, std::size_t>> sorted;  // (value, class) scratch
    std::vector<double> counts, left, right;             // class-count scratch
};

class DecisionTree {
public:
    explicit DecisionTree(TreeBuildContext& ctx) {
        ctx.candidates.resize(ctx.ds.feature_names.size());
        std::iota(ctx.candidates.begin(), ctx.candidates.end(), 0);
        ctx.counts.resize(ctx.n_classes);
        ctx.left.resize(ctx.n_classes);
        ctx.right.resize(ctx.n_classes);
        build(ctx, 0, ctx.indices.size(), 0);
    }

    const std::vector<double>& leaf_distribution(const std::vector<double>& row) const {
        int node = 0;
        while (nodes_[static_cast<std::size_t>(node)].feature >= 0) {
            const auto& nd = nodes_[static_cast<std::size_t>(node)];
            node = row[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left : nd.right;
        }
        return nodes_[static_cast<std::size_t>(node)].distribution;
    }

private:
    static double gini(const std::vector<double>& counts, double total) {
        double g = 1.0;
        for (double c : counts) {
            const double p = c / total;
            g -= p * p;
        }
        return g;
    }

    int build(TreeBuildContext& ctx, std::size_t lo, std::size_t hi, int depth) {
        auto& counts = ctx.counts;
        std::fill(counts.begin(), counts.end(), 0.0);
        for (std::size_t i = lo; i < hi; ++i) counts[ctx.class_index[ctx.indices[i]]] += 1.0;
        const double total = static_cast<double>(hi - lo);

        const bool pure = std::count_if(counts.begin(), counts.end(),
                                        [](double c) { return c > 0.0; }) <= 1;
        const bool depth_capped = ctx.max_depth > 0 && depth >= ctx.max_depth;

        int best_feature = -1;
        double best_threshold = 0.0, best_score = std::numeric_limits<double>::infinity();
        if (!pure && !depth_capped && hi - lo >= 2) {
            // Sample mtry distinct candidate features.
            const std::size_t f_count = ctx.candidates.size();
            const std::size_t take = std::min(ctx.mtry, f_count);
            for (std::size_t i = 0; i < take; ++i) {
                std::swap(ctx.candidates[i], ctx.candidates[i + rng::uniform_index(ctx.gen, f_count - i)]);
            }

            auto& sorted = ctx.sorted;
            for (std::size_t c = 0; c < take; ++c) {
                const std::size_t feature = ctx.candidates[c];
                sorted.clear();
                for (std::size_t i = lo; i < hi; ++i) {
                    const std::size_t r = ctx.indices[i];
                    sorted.emplace_back(ctx.ds.x[r][feature], ctx.class_index[r]);
                }
                std::sort(sorted.begin(), sorted.end());
                if (sorted.front().first == sorted.back().first) continue;  // constant here

                std::fill(ctx.left.begin(), ctx.left.end(), 0.0);
                std::copy(counts.begin(), counts.end(), ctx.right.begin());
                for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
                    ctx.left[sorted[i].second] += 1.0;
                    ctx.right[sorted[i].second] -= 1.0;
                    if (sorted[i].first == sorted[i + 1].first) continue;
                    const double nl = static_cast<double>(i + 1);
                    const double nr = total - nl;
                    const double score = (nl * gini(ctx.left, nl) + nr * gini(ctx.right, nr)) / total;
                    if (score < best_score) {
                        best_score = score;
                        best_feature = static_cast<int>(feature);
                        best_threshold = sorted[i].first + (sorted[i + 1].first - sorted[i].first) / 2.0;
                    }
                }
            }
        }

        if (best_feature < 0) {
            TreeNode leaf;
            leaf.distribution.resize(ctx.n_classes);
            for (std::size_t c = 0; c < ctx.n_classes; ++c) leaf.distribution[c] = counts[c] / total;
            nodes_.push_back(std::move(leaf));
            return static_cast<int>(nodes_.size()) - 1;
        }

        const auto mid_it = std::partition(
            ctx.indices.begin() + static_cast<std::ptrdiff_t>(lo),
            ctx.indices.begin() + static_cast<std::ptrdiff_t>(hi), [&](std::size_t r) {
                return ctx.ds.x[r][static_cast<std::size_t>(best_feature)] <= best_threshold;
            });
        const std::size_t mid = static_cast<std::size_t>(mid_it - ctx.indices.begin());

        const int self = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        nodes_[static_cast<std::size_t>(self)].feature = best_feature;
        nodes_[static_cast<std::size_t>(self)].threshold = best_threshold;
        const int left_id = build(ctx, lo, mid, depth + 1);
        const int right_id = build(ctx, mid, hi, depth + 1);
        nodes_[static_cast<std::size_t>(self)].left = left_id;
        nodes_[static_cast<std::size_t>(self)].right = right_id;
        return self;
    }

    std::vector<TreeNode> nodes_;
};

class RandomForest final : public Classifier {
public:
    RandomForest(const Dataset& train, const RfConfig& cfg) {
        classes_ = train.classes();
        if (classes_.size() < 2) throw ContractViolation("train_rf: need at least 2 classes");

        std::map<std::string, std::size_t> class_pos;
        for (std::size_t i = 0; i < classes_.size(); ++i) class_pos[classes_[i]] = i;
        std::vector<std::size_t> class_index(train.y.size());
        for (std::size_t i = 0; i < train.y.size(); ++i) class_index[i] = class_pos[train.y[i]];

        const std::size_t n = train.y.size();
        const std::size_t mtry = static_cast<std::size_t>(
            std::ceil(std::sqrt(static_cast<double>(train.feature_names.size()))));

        std::uint64_t seed_state = cfg.seed;
        trees_.reserve(static_cast<std::size_t>(cfg.n_trees));
        for (int t = 0; t < cfg.n_trees; ++t) {
            std::mt19937_64 gen(rng::split_seed(seed_state));
            TreeBuildContext ctx{train, class_index, classes_.size(), cfg.max_depth, mtry,
                                 gen,   {},          {},              {},            {}, {}, {}};
            ctx.indices.resize(n);
            ctx.sorted.reserve(n);
            for (std::size_t i = 0; i < n; ++i) ctx.indices[i] = rng::uniform_index(gen, n);
            trees_.emplace_back(ctx);
        }
    }

    const std::vector<std::string>& classes() const override { return classes_; }

    std::vector<double> predict_proba(const std::vector<double>& row) const override {
        std::vector<double> probs(classes_.size(), 0.0);
        for (const auto& tree : trees_) {
            const auto& dist = tree.leaf_distribution(row);
            for (std::size_t c = 0; c < probs.size(); ++c) probs[c] += dist[c];
        }
        for (double& p : probs) p /= static_cast<double>(trees_.size());
        return probs;
    }

private:
    std::vector<std::string> classes_;
    std::vector<DecisionTree> trees_;
};

}  // namespace

std::unique_ptr<Classifier> train_rf(const Dataset& train, const RfConfig& cfg) {
    return std::make_unique<RandomForest>(train, cfg);
}

// ------------------------------------------------------------------- Boosting

namespace {

class SammeBoost final : public Classifier {
public:
    SammeBoost(const Dataset& train, const LearnerFactory& base, const BoostConfig& cfg) {
        classes_ = train.classes();
        if (classes_.size() < 2) throw ContractViolation("train_boosted: need at least 2 classes");
        const std::size_t n = train.y.size();
        const double k = static_cast<double>(classes_.size());

        std::vector<double> weights(n, 1.0 / static_cast<double>(n));
        std::uint64_t seed_state = cfg.seed;

        for (int round = 0; round < cfg.rounds; ++round) {
            const std::uint64_t round_seed = rng::split_seed(seed_state);
            // Round one sees uniform weights, so the base trains on the data
            // as-is; later rounds train on weighted resamples.
            auto model = round == 0 ? base(train, round_seed)
                                    : base(weighted_resample(train, weights, round_seed), round_seed);

            double err = 0.0;
            std::vector<std::string> predictions(n);
            for (std::size_t i = 0; i < n; ++i) {
                predictions[i] = model->predict(train.x[i]);
                if (predictions[i] != train.y[i]) err += weights[i];
            }

            if (err >= 1.0 - 1.0 / k) {
                // No better than chance; a first-round failure leaves the lone
                // member so predictions stay defined.
                if (members_.empty()) {
                    members_.push_back(std::move(model));
                    alphas_.push_back(1.0);
                    weak_first_round_ = true;
                }
                break;
            }

            err = std::max(err, 1e-10);
            const double alpha = std::log((1.0 - err) / err) + std::log(k - 1.0);
            members_.push_back(std::move(model));
            alphas_.push_back(alpha);

            if (err <= 1e-10) break;  // already separated

            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (predictions[i] != train.y[i]) weights[i] *= std::exp(alpha);
                total += weights[i];
            }
            for (double& w : weights) w /= total;
        }
    }

    bool weak_first_round() const { return weak_first_round_; }

    const std::vector<std::string>& classes() const override { return classes_; }

    std::vector<double> predict_proba(const std::vector<double>& row) const override {
        std::vector<double> score(classes_.size(), 0.0);
        double total = 0.0;
        for (std::size_t m = 0; m < members_.size(); ++m) {
            const std::string label = members_[m]->predict(row);
            const auto it = std::find(classes_.begin(), classes_.end(), label);
            score[static_cast<std::size_t>(it - classes_.begin())] += alphas_[m];
            total += alphas_[m];
        }
        if (total > 0.0) {
            for (double& s : score) s /= total;
        }
        return score;
    }

private:
    static Dataset weighted_resample(const Dataset& ds, const std::vector<double>& weights,
                                     std::uint64_t seed) {
        std::mt19937_64 gen(seed);
        std::vector<double> cumulative(weights.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            acc += weights[i];
            cumulative[i] = acc;
        }
        Dataset out;
        out.feature_names = ds.feature_names;
        out.x.reserve(ds.x.size());
        out.y.reserve(ds.y.size());
        for (std::size_t i = 0; i < ds.x.size(); ++i) {
            const double u = rng::uniform_real(gen, 0.0, acc);
            const std::size_t pick = static_cast<std::size_t>(
                std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
            out.x.push_back(ds.x[pick]);
            out.y.push_back(ds.y[pick]);
        }
        // A resample can drop a class entirely; re-seat one instance of each
        // so the base learner keeps the full label set.
        std::set<std::string> present(out.y.begin(), out.y.end());
        std::size_t slot = 0;
        for (const auto& label : ds.classes()) {
            if (present.count(label)) continue;
            for (std::size_t i = 0; i < ds.y.size(); ++i) {
                if (ds.y[i] == label) {
                    out.x[slot] = ds.x[i];
                    out.y[slot] = ds.y[i];
                    ++slot;
                    break;
                }
            }
        }
        return out;
    }

    std::vector<std::string> classes_;
    std::vector<std::unique_ptr<Classifier>> members_;
    std::vector<double> alphas_;
    bool weak_first_round_ = false;
};

}  // namespace

std::unique_ptr<Classifier> train_boosted(const Dataset& train, const LearnerFactory& base,
                                          const BoostConfig& cfg) {
    return std::make_unique<SammeBoost>(train, base, cfg);
}

// ------------------------------------------------------------------- Ensemble

std::string ensemble_vote(const std::vector<const Classifier*>& models, const std::vector<double>& row) {
    if (models.empty()) throw ContractViolation("ensemble_vote: no models");
    std::map<std::string, int> votes;
    for (const auto* m : models) ++votes[m->predict(row)];
    std::string best;
    int best_count = -1;
    for (const auto& [label, count] : votes) {
        if (count > best_count || (count == best_count && severity_less(label, best))) {
            best = label;
            best_count = count;
        }
    }
    return best;
}

EnsembleClassifier::EnsembleClassifier(std::vector<std::unique_ptr<Classifier>> members)
    : members_(std::move(members)) {
    if (members_.empty()) throw ContractViolation("EnsembleClassifier: no members");
    classes_ = members_.front()->classes();
}

std::vector<double> EnsembleClassifier::predict_proba(const std::vector<double>& row) const {
    // Vote shares, so predict() realizes the majority-vote combination rule.
    std::vector<double> shares(classes_.size(), 0.0);
    for (const auto& m : members_) {
        const std::string label = m->predict(row);
        const auto it = std::find(classes_.begin(), classes_.end(), label);
        if (it != classes_.end()) shares[static_cast<std::size_t>(it - classes_.begin())] += 1.0;
    }
    for (double& s : shares) s /= static_cast<double>(members_.size());
    return shares;
}

std::unique_ptr<Classifier> train_default_ensemble(const Dataset& train, std::uint64_t seed) {
    std::uint64_t state = seed;
    std::vector<std::unique_ptr<Classifier>> members;
    members.push_back(train_rf(train, {.n_trees = 100, .max_depth = 0, .seed = rng::split_seed(state)}));
    members.push_back(train_kernel_nb(train));
    members.push_back(train_nb(train));
    const std::uint64_t boost_seed = rng::split_seed(state);
    members.push_back(train_boosted(
        train,
        [](const Dataset& ds, std::uint64_t s) {
            return train_rf(ds, {.n_trees = 25, .max_depth = 0, .seed = s});
        },
        {.rounds = 10, .seed = boost_seed}));
    return std::make_unique<EnsembleClassifier>(std::move(members));
}

// -------------------------------------------------------------------- Metrics

namespace {

// One-vs-rest AUC via the rank statistic with midranks for ties.
double rank_auc(const std::vector<double>& scores, const std::vector<bool>& positive) {
    std::size_t n_pos = 0;
    for (bool p : positive) n_pos += p ? 1 : 0;
    const std::size_t n_neg = positive.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) return 0.5;

    std::vector<std::size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    double rank_sum = 0.0;
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) ++j;
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            if (positive[idx[k]]) rank_sum += midrank;
        }
        i = j;
    }
    const double n_pos_d = static_cast<double>(n_pos);
    const double n_neg_d = static_cast<double>(n_neg);
    return (rank_sum - n_pos_d * (n_pos_d + 1.0) / 2.0) / (n_pos_d * n_neg_d);
}

struct FoldOutcome {
    std::vector<std::string> y_true, y_pred;
    std::vector<std::vector<double>> scores;
};

EvalReport evaluate(const std::vector<std::string>& classes, const FoldOutcome& out) {
    const std::size_t k = classes.size();
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < k; ++i) pos[classes[i]] = i;

    EvalReport r;
    r.classes = classes;
    r.confusion.assign(k, std::vector<double>(k, 0.0));
    std::size_t correct = 0;
    for (std::size_t i = 0; i < out.y_true.size(); ++i) {
        r.confusion[pos.at(out.y_true[i])][pos.at(out.y_pred[i])] += 1.0;
        if (out.y_true[i] == out.y_pred[i]) ++correct;
    }
    r.accuracy = out.y_true.empty() ? 0.0
                                    : static_cast<double>(correct) / static_cast<double>(out.y_true.size());

    const double total = static_cast<double>(out.y_true.size());
    for (std::size_t c = 0; c < k; ++c) {
        ClassMetrics m;
        double tp = r.confusion[c][c];
        double fp = 0.0, support = 0.0;
        for (std::size_t o = 0; o < k; ++o) {
            if (o != c) fp += r.confusion[o][c];
            support += r.confusion[c][o];
        }
        m.support = support;
        m.precision = (tp + fp) > 0.0 ? tp / (tp + fp) : 0.0;
        m.recall = support > 0.0 ? tp / support : 0.0;
        m.f1 = (m.precision + m.recall) > 0.0
                   ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
                   : 0.0;

        std::vector<double> class_scores(out.y_true.size());
        std::vector<bool> positive(out.y_true.size());
        for (std::size_t i = 0; i < out.y_true.size(); ++i) {
            class_scores[i] = out.scores[i][c];
            positive[i] = out.y_true[i] == classes[c];
        }
        m.auc = rank_auc(class_scores, positive);
        r.per_class[classes[c]] = m;

        r.weighted.precision += m.precision * support / total;
        r.weighted.recall += m.recall * support / total;
        r.weighted.f1 += m.f1 * support / total;
        r.weighted.auc += m.auc * support / total;
        r.weighted.support += support;
    }

    r.confusion_pct.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t c = 0; c < k; ++c) {
        double row_total = 0.0;
        for (double v : r.confusion[c]) row_total += v;
        if (row_total > 0.0) {
            for (std::size_t o = 0; o < k; ++o) r.confusion_pct[c][o] = 100.0 * r.confusion[c][o] / row_total;
        }
    }
    return r;
}

}  // namespace

EvalReport metrics(const std::vector<std::string>& y_true, const std::vector<std::string>& y_pred,
                   const std::vector<std::vector<double>>& y_scores) {
    if (y_true.size() != y_pred.size() || y_true.size() != y_scores.size()) {
        throw ContractViolation("metrics: length mismatch");
    }
    std::set<std::string> labels(y_true.begin(), y_true.end());
    labels.insert(y_pred.begin(), y_pred.end());
    FoldOutcome out{y_true, y_pred, y_scores};
    return evaluate({labels.begin(), labels.end()}, out);
}

EvalReport repeated_cv(const Dataset& ds, const LearnerFactory& make, int repeats, int folds,
                       std::uint64_t seed) {
    const auto classes = ds.classes();
    if (classes.size() < 2) throw ContractViolation("repeated_cv: need at least 2 classes");
    for (const auto& [label, count] : ds.class_counts()) {
        if (count < 2) throw ContractViolation("repeated_cv: class " + label + " has fewer than 2 instances");
    }

    std::map<std::string, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < ds.y.size(); ++i) by_class[ds.y[i]].push_back(i);

    std::vector<EvalReport> repeat_reports;
    std::uint64_t state = seed;
    for (int rep = 0; rep < repeats; ++rep) {
        std::mt19937_64 gen(rng::split_seed(state));

        // Stratified assignment: shuffle within class, deal round-robin.
        std::vector<int> fold_of(ds.y.size(), 0);
        for (auto& [label, rows] : by_class) {
            std::vector<std::size_t> shuffled = rows;
            rng::shuffle(shuffled, gen);
            for (std::size_t i = 0; i < shuffled.size(); ++i) {
                fold_of[shuffled[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
            }
        }

        FoldOutcome pooled;
        pooled.y_true.resize(ds.y.size());
        pooled.y_pred.resize(ds.y.size());
        pooled.scores.resize(ds.y.size());
        for (int f = 0; f < folds; ++f) {
            Dataset train;
            train.feature_names = ds.feature_names;
            std::vector<std::size_t> test_rows;
            for (std::size_t i = 0; i < ds.y.size(); ++i) {
                if (fold_of[i] == f) {
                    test_rows.push_back(i);
                } else {
                    train.x.push_back(ds.x[i]);
                    train.y.push_back(ds.y[i]);
                }
            }
            if (test_rows.empty()) continue;

            auto model = make(train, rng::split_seed(state));
            const auto& model_classes = model->classes();
            for (std::size_t i : test_rows) {
                const auto probs = model->predict_proba(ds.x[i]);
                pooled.y_true[i] = ds.y[i];
                pooled.y_pred[i] = model->predict(ds.x[i]);
                // Align scores to the dataset's class list.
                std::vector<double> aligned(classes.size(), 0.0);
                for (std::size_t c = 0; c < model_classes.size(); ++c) {
                    const auto it = std::lower_bound(classes.begin(), classes.end(), model_classes[c]);
                    if (it != classes.end() && *it == model_classes[c]) {
                        aligned[static_cast<std::size_t>(it - classes.begin())] = probs[c];
                    }
                }
                pooled.scores[i] = std::move(aligned);
            }
        }
        repeat_reports.push_back(evaluate(classes, pooled));
    }

    // Average the repeat-level reports; STD across repeats.
    EvalReport final_report;
    final_report.classes = classes;
    final_report.repeats = repeats;
    final_report.folds = folds;
    const double n_reps = static_cast<double>(repeat_reports.size());
    const std::size_t k = classes.size();
    final_report.confusion.assign(k, std::vector<double>(k, 0.0));
    final_report.confusion_pct.assign(k, std::vector<double>(k, 0.0));

    auto mean_std = [&](auto&& getter) {
        double mean = 0.0;
        for (const auto& r : repeat_reports) mean += getter(r);
        mean /= n_reps;
        double var = 0.0;
        for (const auto& r : repeat_reports) {
            const double d = getter(r) - mean;
            var += d * d;
        }
        return std::pair<double, double>{mean, std::sqrt(var / n_reps)};
    };

    for (const auto& label : classes) {
        ClassMetrics m;
        std::tie(m.precision, m.precision_std) =
            mean_std([&](const EvalReport& r) { return r.per_class.at(label).precision; });
        std::tie(m.recall, m.recall_std) =
            mean_std([&](const EvalReport& r) { return r.per_class.at(label).recall; });
        std::tie(m.f1, m.f1_std) = mean_std([&](const EvalReport& r) { return r.per_class.at(label).f1; });
        std::tie(m.auc, m.auc_std) = mean_std([&](const EvalReport& r) { return r.per_class.at(label).auc; });
        m.support = repeat_reports.front().per_class.at(label).support;
        final_report.per_class[label] = m;
    }
    std::tie(final_report.weighted.precision, final_report.weighted.precision_std) =
        mean_std([](const EvalReport& r) { return r.weighted.precision; });
    std::tie(final_report.weighted.recall, final_report.weighted.recall_std) =
        mean_std([](const EvalReport& r) { return r.weighted.recall; });
    std::tie(final_report.weighted.f1, final_report.weighted.f1_std) =
        mean_std([](const EvalReport& r) { return r.weighted.f1; });
    std::tie(final_report.weighted.auc, final_report.weighted.auc_std) =
        mean_std([](const EvalReport& r) { return r.weighted.auc; });
    final_report.weighted.support = repeat_reports.front().weighted.support;
    std::tie(final_report.accuracy, final_report.accuracy_std) =
        mean_std([](const EvalReport& r) { return r.accuracy; });

    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            for (const auto& r : repeat_reports) final_report.confusion[a][b] += r.confusion[a][b];
            final_report.confusion[a][b] /= n_reps;
        }
        double row_total = 0.0;
        for (double v : final_report.confusion[a]) row_total += v;
        if (row_total > 0.0) {
            for (std::size_t b = 0; b < k; ++b) {
                final_report.confusion_pct[a][b] = 100.0 * final_report.confusion[a][b] / row_total;
            }
        }
    }
    return final_report;
}

// ---------------------------------------------------------- Information gain

namespace {

double entropy(const std::map<std::string, std::size_t>& counts, double total) {
    double h = 0.0;
    for (const auto& [label, count] : counts) {
        if (count == 0) continue;
        const double p = static_cast<double>(count) / total;
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace

std::vector<std::pair<std::string, double>> info_gain_ranking(const Dataset& ds, int bins) {
    if (ds.classes().size() < 2) throw ContractViolation("info_gain_ranking: need at least 2 classes");
    const double n = static_cast<double>(ds.y.size());
    const double h_y = entropy(ds.class_counts(), n);

    std::vector<std::pair<std::string, double>> gains;
    for (std::size_t f = 0; f < ds.feature_names.size(); ++f) {
        std::vector<double> values(ds.x.size());
        for (std::size_t i = 0; i < ds.x.size(); ++i) values[i] = ds.x[i][f];

        std::vector<double> sorted = values;
        std::sort(sorted.begin(), sorted.end());
        std::vector<double> distinct = sorted;
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

        std::map<int, std::map<std::string, std::size_t>> bin_counts;
        if (distinct.size() <= static_cast<std::size_t>(bins)) {
            // Few distinct values: each value is its own bin.
            for (std::size_t i = 0; i < values.size(); ++i) {
                const int bin = static_cast<int>(
                    std::lower_bound(distinct.begin(), distinct.end(), values[i]) - distinct.begin());
                ++bin_counts[bin][ds.y[i]];
            }
        } else {
            // Equal-frequency edges at the quantiles; a value equal to an edge
            // falls in the lower bin.
            std::vector<double> edges;
            for (int b = 1; b < bins; ++b) {
                const std::size_t at = static_cast<std::size_t>(
                    static_cast<double>(sorted.size()) * static_cast<double>(b) / static_cast<double>(bins));
                const double edge = sorted[std::min(at, sorted.size() - 1)];
                if (edges.empty() || edge > edges.back()) edges.push_back(edge);
            }
            for (std::size_t i = 0; i < values.size(); ++i) {
                const int bin = static_cast<int>(
                    std::lower_bound(edges.begin(), edges.end(), values[i]) - edges.begin());
                ++bin_counts[bin][ds.y[i]];
            }
        }

        double h_cond = 0.0;
        for (const auto& [bin, counts] : bin_counts) {
            double bin_total = 0.0;
            for (const auto& [label, c] : counts) bin_total += static_cast<double>(c);
            h_cond += bin_total / n * entropy(counts, bin_total);
        }
        gains.emplace_back(ds.feature_names[f], std::max(h_y - h_cond, 0.0));
    }

    double total_gain = 0.0;
    for (const auto& [name, g] : gains) total_gain += g;
    for (auto& [name, g] : gains) g = total_gain > 0.0 ? 100.0 * g / total_gain : 0.0;
    std::sort(gains.begin(), gains.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return gains;
}

// --------------------------------------------------------------------- Setups

Setup setup_from_string(const std::string& s) {
    if (s == "four_class") return Setup::four_class;
    if (s == "three_no_spam") return Setup::three_no_spam;
    if (s == "three_offensive") return Setup::three_offensive;
    if (s == "two_offensive") return Setup::two_offensive;
    throw ConfigError("unknown setup: " + s);
}

std::string to_string(Setup s) {
    switch (s) {
        case Setup::four_class: return "four_class";
        case Setup::three_no_spam: return "three_no_spam";
        case Setup::three_offensive: return "three_offensive";
        case Setup::two_offensive: return "two_offensive";
    }
    return "four_class";
}

Dataset apply_setup(const Dataset& ds, Setup setup) {
    const bool drop_spam = setup == Setup::three_no_spam || setup == Setup::two_offensive;
    const bool merge_offensive = setup == Setup::three_offensive || setup == Setup::two_offensive;

    Dataset out;
    out.feature_names = ds.feature_names;
    for (std::size_t i = 0; i < ds.y.size(); ++i) {
        std::string label = ds.y[i];
        if (drop_spam && label == "spammer") continue;
        if (merge_offensive && (label == "bully" || label == "aggressor")) label = "offensive";
        out.x.push_back(ds.x[i]);
        out.y.push_back(std::move(label));
    }
    return out;
}

EvalReport run_setup(const Dataset& ds, Setup setup, const LearnerFactory& make, int repeats,
                     int folds, std::uint64_t seed) {
    return repeated_cv(apply_setup(ds, setup), make, repeats, folds, seed);
}

// ------------------------------------------------------------------------ I/O

Dataset load_dataset_csv(const std::filesystem::path& path) {
    const auto lines = io::read_lines(path);
    if (lines.empty()) throw ParseError("dataset csv is empty: " + path.string());

    Dataset ds;
    auto header = io::split_csv(lines.front());
    if (header.empty() || header.back() != "label") {
        throw ParseError("dataset csv must end with a 'label' column");
    }
    header.pop_back();
    ds.feature_names = header;

    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto fields = io::split_csv(lines[i]);
        if (fields.size() != ds.feature_names.size() + 1) {
            throw ParseError("dataset csv line " + std::to_string(i + 1) + ": wrong field count");
        }
        std::vector<double> row(ds.feature_names.size());
        for (std::size_t f = 0; f < row.size(); ++f) row[f] = std::stod(fields[f]);
        ds.x.push_back(std::move(row));
        ds.y.push_back(fields.back());
    }
    return ds;
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& ds) {
    std::string out;
    for (const auto& name : ds.feature_names) {
        out += name;
        out.push_back(',');
    }
    out += "label\n";
    for (std::size_t i = 0; i < ds.x.size(); ++i) {
        for (double v : ds.x[i]) {
            out += io::format_double(v);
            out.push_back(',');
        }
        out += ds.y[i];
        out.push_back('\n');
    }
    io::write_text(path, out);
}

// ------------------------------------------------------------------ Reporting

nlohmann::json EvalReport::to_json() const {
    nlohmann::json j;
    j["repeats"] = repeats;
    j["folds"] = folds;
    j["classes"] = classes;
    j["accuracy"] = accuracy;
    j["accuracy_std"] = accuracy_std;
    for (const auto& [label, m] : per_class) {
        j["per_class"][label] = {
            {"precision", m.precision}, {"precision_std", m.precision_std},
            {"recall", m.recall},       {"recall_std", m.recall_std},
            {"f1", m.f1},               {"f1_std", m.f1_std},
            {"auc", m.auc},             {"auc_std", m.auc_std},
            {"support", m.support},
        };
    }
    j["weighted"] = {
        {"precision", weighted.precision}, {"precision_std", weighted.precision_std},
        {"recall", weighted.recall},       {"recall_std", weighted.recall_std},
        {"f1", weighted.f1},               {"f1_std", weighted.f1_std},
        {"auc", weighted.auc},             {"auc_std", weighted.auc_std},
    };
    j["confusion"] = confusion;
    j["confusion_pct"] = confusion_pct;
    if (!feature_ranking.empty()) {
        nlohmann::json ranking = nlohmann::json::array();
        for (const auto& [name, gain] : feature_ranking) {
            ranking.push_back({{"feature", name}, {"gain_pct", gain}});
        }
        j["feature_ranking"] = ranking;
    }
    return j;
}

std::string EvalReport::render_text() const {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(3);
    os << "class            prec    rec     f1      auc     support\n";
    for (const auto& [label, m] : per_class) {
        os << label;
        for (std::size_t i = label.size(); i < 17; ++i) os << ' ';
        os << m.precision << "   " << m.recall << "   " << m.f1 << "   " << m.auc << "   "
           << m.support << "\n";
    }
    os << "weighted         " << weighted.precision << "   " << weighted.recall << "   "
       << weighted.f1 << "   " << weighted.auc << "\n";
    os << "accuracy " << accuracy << " (std " << accuracy_std << ")\n";

    os << "\nconfusion (rows = truth, mean counts over repeats):\n";
    for (std::size_t a = 0; a < classes.size(); ++a) {
        os << classes[a];
        for (std::size_t i = classes[a].size(); i < 17; ++i) os << ' ';
        for (std::size_t b = 0; b < classes.size(); ++b) {
            os << confusion[a][b] << " (" << confusion_pct[a][b] << "%)  ";
        }
        os << "\n";
    }
    if (!feature_ranking.empty()) {
        os << "\ntop features by information gain:\n";
        for (const auto& [name, gain] : feature_ranking) {
            os << "  " << name << "  " << gain << "%\n";
        }
    }
    return os.str();
}

}  // namespace abusekit::ml
