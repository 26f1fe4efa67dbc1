#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "abusekit/corpus.hpp"
#include "abusekit/sessions.hpp"

namespace abusekit::synth {

// Behavior knobs for one class. Ranges are half-open [lo, hi) for uniform
// draws; the defaults keep the four classes separable in the directions the
// feature analysis expects (short bully interarrivals, spammer hashtag load,
// follower-poor abusers).
struct ClassKnobs {
    int tweets_min = 6, tweets_max = 12;
    std::int64_t gap_min = 3600, gap_max = 21600;  // interarrival seconds
    int hashtags_min = 0, hashtags_max = 2;        // per tweet, inclusive
    int urls_min = 0, urls_max = 1;                // per tweet, inclusive
    double retweet_rate = 0.1;
    int mentions_max = 1;
    int negative_terms_min = 0, negative_terms_max = 0;
    int positive_terms_min = 0, positive_terms_max = 0;
    int promo_terms_min = 0, promo_terms_max = 0;
    double curse_rate = 0.0;     // chance a tweet carries a curse term
    double emoticon_rate = 0.0;  // chance a tweet ends with an emoticon
    double shout_rate = 0.0;     // chance a word is written uppercase
    std::int64_t followers_min = 100, followers_max = 1000;
    std::int64_t friends_min = 100, friends_max = 1000;
    std::int64_t lists_min = 0, lists_max = 10;
    std::int64_t posts_min = 100, posts_max = 2000;
    std::int64_t age_days_min = 100, age_days_max = 800;
    int follow_min = 5, follow_max = 15;  // graph out-edges
    double reciprocate_rate = 0.3;
    double location_rate = 0.5;
    double description_rate = 0.5;
};

struct SynthConfig {
    std::uint64_t seed = 42;
    std::map<sessions::Label, int> class_counts = {
        {sessions::Label::bully, 58},
        {sessions::Label::aggressor, 43},
        {sessions::Label::spammer, 415},
        {sessions::Label::normal, 787},
    };
    // Obvious spam accounts planted to violate the preprocessing cutoffs;
    // they carry no annotations.
    int blatant_spammers = 60;

    std::int64_t window_start = 1464739200;          // 2016-06-01T00:00:00Z
    std::int64_t window_secs = 92LL * 86400LL;       // three months

    ClassKnobs knobs(sessions::Label l) const;
};

struct SynthBundle {
    std::vector<corpus::Tweet> tweets;
    std::vector<corpus::UserProfile> profiles;
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<sessions::Annotation> annotations;
    std::map<std::string, sessions::Label> gold_labels;     // the labeled users
    std::vector<std::string> blatant_spam_ids;              // planted filter violations
    // snapshot label -> user_id -> provider code (0 active, 50 deleted, 63 suspended)
    std::map<std::string, std::map<std::string, int>> status_codes;
    std::int64_t window_start = 0;
    std::int64_t now_epoch = 0;  // end of the observation window
};

// Deterministic under cfg.seed: one generator, fixed draw order (classes in
// severity order, users in id order, then edges, annotations, statuses).
SynthBundle generate(const SynthConfig& cfg);

// Writes every external format the other commands consume, plus a ready
// pipeline.cfg: corpus.ndjson, edges.tsv, annotations.csv, gold_labels.csv,
// lexicons/, embeddings.txt, stopwords.txt, status_codes_*.csv.
void write_bundle(const SynthBundle& bundle, const std::filesystem::path& dir);

// The fixed lexicon fixtures the generator vocabulary is scored against.
std::string sentiment_lexicon_tsv();
std::string emotion_lexicon_tsv();
std::string hate_lexicon_tsv();
std::string curse_lexicon_tsv();
std::string emoticon_lexicon_tsv();
std::string pos_lexicon_tsv();
std::string embeddings_txt();
std::string stopwords_txt();

}  // namespace abusekit::synth
