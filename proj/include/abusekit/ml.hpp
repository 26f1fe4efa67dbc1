#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace abusekit::ml {

struct Dataset {
    std::vector<std::vector<double>> x;
    std::vector<std::string> y;
    std::vector<std::string> feature_names;

    std::vector<std::string> classes() const;  // sorted unique labels
    std::map<std::string, std::size_t> class_counts() const;
};

// Tie-break order for votes: more severe labels win. Unknown labels rank
// after the known ones, alphabetically.
bool severity_less(const std::string& a, const std::string& b);

class Classifier {
public:
    virtual ~Classifier() = default;

    virtual const std::vector<std::string>& classes() const = 0;

    // Probabilities aligned with classes().
    virtual std::vector<double> predict_proba(const std::vector<double>& row) const = 0;

    std::string predict(const std::vector<double>& row) const;
};

// Gaussian Naive Bayes: class priors from frequencies, per-feature normal
// likelihoods with a variance floor so constant features survive.
std::unique_ptr<Classifier> train_nb(const Dataset& train);

// Naive Bayes with kernel-density likelihoods; the ensemble's second
// probabilistic member.
std::unique_ptr<Classifier> train_kernel_nb(const Dataset& train);

struct RfConfig {
    int n_trees = 100;
    int max_depth = 0;  // 0 = unlimited
    std::uint64_t seed = 0;
};

// Bootstrap-sampled trees, ceil(sqrt(F)) random features per split, Gini
// impurity, majority vote across trees.
std::unique_ptr<Classifier> train_rf(const Dataset& train, const RfConfig& cfg = {});

using LearnerFactory = std::function<std::unique_ptr<Classifier>(const Dataset&, std::uint64_t)>;

struct BoostConfig {
    int rounds = 10;
    std::uint64_t seed = 0;
};

struct BoostedModel;

// Multiclass staged boosting (SAMME) over the given base learner, trained on
// weighted bootstrap resamples. Stops early if the first round is no better
// than chance.
std::unique_ptr<Classifier> train_boosted(const Dataset& train, const LearnerFactory& base,
                                          const BoostConfig& cfg = {});

// Plurality vote across member predictions, severity tie-break.
std::string ensemble_vote(const std::vector<const Classifier*>& models, const std::vector<double>& row);

class EnsembleClassifier : public Classifier {
public:
    explicit EnsembleClassifier(std::vector<std::unique_ptr<Classifier>> members);

    const std::vector<std::string>& classes() const override { return classes_; }
    std::vector<double> predict_proba(const std::vector<double>& row) const override;

private:
    std::vector<std::unique_ptr<Classifier>> members_;
    std::vector<std::string> classes_;
};

// The four-member combination evaluated in the study: random forest, two
// Bayes variants, and boosted forests.
std::unique_ptr<Classifier> train_default_ensemble(const Dataset& train, std::uint64_t seed);

struct ClassMetrics {
    double precision = 0.0, recall = 0.0, f1 = 0.0, auc = 0.0;
    double precision_std = 0.0, recall_std = 0.0, f1_std = 0.0, auc_std = 0.0;
    double support = 0.0;
};

struct EvalReport {
    std::vector<std::string> classes;
    std::map<std::string, ClassMetrics> per_class;
    ClassMetrics weighted;
    double accuracy = 0.0;
    double accuracy_std = 0.0;
    std::vector<std::vector<double>> confusion;      // mean counts; rows sum to supports
    std::vector<std::vector<double>> confusion_pct;  // row percentages
    std::vector<std::pair<std::string, double>> feature_ranking;  // (name, gain %) when requested
    int repeats = 1;
    int folds = 1;

    nlohmann::json to_json() const;
    std::string render_text() const;
};

// Single-split evaluation; scores rows align with classes (sorted labels).
EvalReport metrics(const std::vector<std::string>& y_true, const std::vector<std::string>& y_pred,
                   const std::vector<std::vector<double>>& y_scores);

// Stratified repeated k-fold CV. Metrics are averaged over the repeat-level
// results; the reported STD is across repeats.
EvalReport repeated_cv(const Dataset& ds, const LearnerFactory& make, int repeats = 10,
                       int folds = 10, std::uint64_t seed = 0);

// Entropy reduction of the label per feature, equal-frequency binning,
// reported as percent of the total gain, descending.
std::vector<std::pair<std::string, double>> info_gain_ranking(const Dataset& ds, int bins = 10);

enum class Setup { four_class, three_no_spam, three_offensive, two_offensive };

Setup setup_from_string(const std::string& s);
std::string to_string(Setup s);

// Label-space transform per experimental setup (drop spam rows and/or merge
// bully+aggressor into "offensive").
Dataset apply_setup(const Dataset& ds, Setup setup);

EvalReport run_setup(const Dataset& ds, Setup setup, const LearnerFactory& make, int repeats = 10,
                     int folds = 10, std::uint64_t seed = 0);

Dataset load_dataset_csv(const std::filesystem::path& path);
void write_dataset_csv(const std::filesystem::path& path, const Dataset& ds);

}  // namespace abusekit::ml
