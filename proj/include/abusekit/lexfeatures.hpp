#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "abusekit/corpus.hpp"
#include "abusekit/preprocess.hpp"
#include "abusekit/sessions.hpp"

namespace abusekit::feats {

enum class PosTag { adjective, adverb, noun, verb, other };

inline constexpr std::array<const char*, 6> kEmotionNames = {"anger", "disgust", "fear",
                                                             "joy",   "sadness", "surprise"};

// Pluggable score files standing in for the external sentiment/hate/POS/
// embedding products; only scale and sign semantics are contractual.
struct LexiconSet {
    std::unordered_map<std::string, int> sentiment;                   // term -> integer score
    std::unordered_map<std::string, std::array<double, 6>> emotion;   // componentwise in [0,1]
    std::unordered_map<std::string, double> hate;                     // [0,100]
    std::unordered_set<std::string> curse;
    std::vector<std::string> emoticons;                               // glyph strings
    std::unordered_map<std::string, PosTag> pos;
    std::unordered_map<std::string, std::vector<double>> embeddings;  // uniform dimension
    std::size_t embedding_dim = 0;
};

// Reads sentiment.tsv, emotion.tsv, hate.tsv, curse.tsv, emoticons.tsv and
// pos.tsv from dir; missing files load as empty lexicons.
LexiconSet load_lexicons(const std::filesystem::path& dir);

// Embedding file: term then D space-separated reals per line; D is inferred
// from the first line and enforced on the rest.
void load_embeddings(LexiconSet& lex, const std::filesystem::path& path);

struct TextFeatures {
    double avg_hashtags = 0.0;
    double avg_emoticons = 0.0;
    double avg_uppercase = 0.0;
    double avg_urls = 0.0;
    double avg_sentiment = 0.0;  // in [-4, 4]
    std::array<double, 6> emotion_scores{};
    double hate_score = 0.0;
    double curse_flag_rate = 0.0;  // fraction of tweets with a curse term
    std::vector<double> embedding_avg;
    double pos_adjectives = 0.0;
    double pos_adverbs = 0.0;
    double pos_nouns = 0.0;
    double pos_verbs = 0.0;
    double mentions_total = 0.0;
    double mentions_unique = 0.0;
    double retweets = 0.0;
    double avg_words_per_sentence = 0.0;
    double avg_word_length = 0.0;
};

struct UserFeatures {
    double avg_posts = 0.0;        // statuses_count stands in for posting volume
    double posts_in_window = 0.0;  // observed tweets; kept alongside for audit
    double account_age_days = 0.0;
    double verified = 0.0;
    double subscribed_lists = 0.0;
    double interarrival_median_secs = 0.0;
    double default_profile_image = 0.0;
    double session_count = 0.0;
    double session_size_avg = 0.0;
    double session_size_median = 0.0;
    double session_size_std = 0.0;
    double has_location = 0.0;
    double description_length = 0.0;
};

struct NetworkFeatures {
    double friends = 0.0;
    double followers = 0.0;
    double followers_friends_ratio = 0.0;
    double hubs = 0.0;
    double authority = 0.0;
    double power_difference = 0.0;
    double clustering_coefficient = 0.0;
    double reciprocity = 0.0;
    double eigenvector = 0.0;
    double closeness = 0.0;
    double louvain_modularity = 0.0;
};

// Mean over tweets of the per-tweet lexicon sum clamped to [-4, 4].
double sentiment_score(const std::vector<preprocess::CleanedTweet>& tweets, const LexiconSet& lex);

// Uppercase characters, excluding the first character of each sentence.
std::size_t uppercase_count(std::string_view raw_text);

// Mean of the vectors of all in-vocabulary tokens; zero vector if none match.
std::vector<double> embedding_avg(const std::vector<preprocess::CleanedTweet>& tweets,
                                  const LexiconSet& lex);

struct PosCounts {
    double adjectives = 0.0, adverbs = 0.0, nouns = 0.0, verbs = 0.0;
};

// Per-tweet tag counts via dictionary lookup, averaged over the user's tweets.
PosCounts pos_counts(const std::vector<preprocess::CleanedTweet>& tweets, const LexiconSet& lex);

struct Stylistic {
    double avg_words_per_sentence = 0.0;
    double avg_word_length = 0.0;
};

Stylistic stylistic(const std::vector<std::string>& raw_texts);

TextFeatures text_features(const std::vector<corpus::Tweet>& raw,
                           const std::vector<preprocess::CleanedTweet>& cleaned,
                           const LexiconSet& lex);

UserFeatures user_features(const corpus::UserProfile& profile,
                           const std::vector<corpus::Tweet>& tweets,
                           const std::vector<sessions::Session>& user_sessions,
                           std::int64_t now);

// The canonical feature-name list. Most names are one column; emotion_scores
// spans 6, embedding_avg spans the embedding dimension, and session_stats
// spans 4 (count, avg, median, std). 38 names in total.
struct FeatureName {
    std::string name;
    std::size_t span;
};

std::vector<FeatureName> feature_schema(std::size_t embedding_dim);

// The features whose class distributions were not usefully separable and are
// dropped from modeling by default.
const std::set<std::string>& default_exclusions();

struct FeatureVector {
    std::vector<std::string> column_names;  // expanded names of active columns
    std::vector<double> values;
    std::vector<std::string> active_features;  // schema names that survived the mask
};

// Lays out the active features in schema order; unknown exclusion names are a
// configuration error.
FeatureVector assemble_vector(const UserFeatures& uf, const TextFeatures& tf,
                              const NetworkFeatures& nf, const std::set<std::string>& exclusions,
                              std::size_t embedding_dim);

}  // namespace abusekit::feats
