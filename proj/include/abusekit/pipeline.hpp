#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace abusekit::pipeline {

// Parsed run manifest. Defaults are the study's stated settings: 8-hour
// sessions, 5-hashtag and 0.8-similarity spam cutoffs, alpha 0.01, 100 trees,
// 10x10 cross-validation.
struct PipelineConfig {
    // inputs
    std::filesystem::path corpus;
    std::filesystem::path edges;
    std::filesystem::path annotations;
    std::filesystem::path lexicons;
    std::filesystem::path embeddings;
    std::filesystem::path stopwords;
    std::vector<std::pair<std::string, std::filesystem::path>> status_snapshots;

    // params
    double t_l_hours = 8.0;
    std::size_t min_tweets = 5;
    double hashtag_cutoff = 5.0;
    double sim_cutoff = 0.8;
    double alpha = 0.01;
    std::string exclusions = "paper-default";  // or comma-separated names, or "none"
    std::uint64_t seed = 42;
    int repeats = 10;
    int folds = 10;
    int trees = 100;
    std::string setup = "four_class";
    std::string learner = "rf";  // nb | rf | ensemble
    int lda_topics = 5;
    int lda_batch = 256;
    double lda_kappa = 0.6;
    double lda_tau0 = 1.0;
    int lda_epochs = 10;
    std::int64_t window_start = 0;
    std::int64_t window_end = 0;
    std::int64_t now_epoch = 0;

    // stage toggles, all on by default
    std::map<std::string, bool> stages = {
        {"ingest", true}, {"preprocess", true}, {"sessions", true}, {"features", true},
        {"graph", true},  {"stats", true},      {"ml", true},       {"status", true},
        {"topics", true},
    };

    std::filesystem::path out_dir = "out";

    // Throws ConfigError on unknown sections/keys before anything runs.
    static PipelineConfig load(const std::filesystem::path& path);
};

// Runs the enabled stages in order, writing every intermediate under
// cfg.out_dir. Returns 0 on success, 2 when an input is missing, 1 when a
// stage fails (the failing stage is named on the log stream).
int run_pipeline(const PipelineConfig& cfg, std::ostream& log);

}  // namespace abusekit::pipeline
