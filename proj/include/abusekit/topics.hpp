#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace abusekit::topics {

struct LdaConfig {
    int n_topics = 5;       // useful range 2..15
    int batch_size = 256;
    double kappa = 0.6;     // learning-rate forgetfulness, in (0.5, 1]
    double tau0 = 1.0;      // damps the earliest updates
    int epochs = 10;
    std::uint64_t seed = 0;
    int min_count = 2;      // vocabulary floor
};

struct TopicModel {
    std::vector<std::string> vocabulary;
    std::vector<std::vector<double>> topic_word;  // K x V, rows sum to 1
    std::vector<std::vector<double>> doc_topic;   // M x K, rows sum to 1
    std::vector<double> epoch_perplexity;         // training-set perplexity per epoch
};

// Online variational Bayes with learning rate (tau0 + t)^(-kappa) and
// symmetric Dirichlet priors 1/K. Deterministic for a fixed seed.
TopicModel fit_lda(const std::vector<std::vector<std::string>>& docs, const LdaConfig& cfg);

// k highest-probability words per topic, ties broken lexicographically.
std::vector<std::vector<std::string>> top_words(const TopicModel& model, std::size_t k);

}  // namespace abusekit::topics
