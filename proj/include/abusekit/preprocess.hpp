#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "abusekit/corpus.hpp"

namespace abusekit::preprocess {

struct CleanedTweet {
    std::string id;
    std::vector<std::string> tokens;  // lowercase; no numbers, stop words, punctuation, mentions
};

enum class SpamReason { none, hashtags, duplication, both };

std::string_view to_string(SpamReason r);

struct SpamVerdict {
    std::string user_id;
    double avg_hashtags = 0.0;
    double avg_intra_similarity = 0.0;
    bool is_spam = false;
    SpamReason reason = SpamReason::none;
};

struct SpamCutoffs {
    double hashtag_avg = 5.0;   // strict: spam when average is above this
    double similarity = 0.8;    // strict: spam when above this
};

std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path);

// Lowercases and tokenizes; drops @-mentions, stop words, and tokens that are
// empty after digits and punctuation are stripped.
CleanedTweet clean_text(std::string id, std::string_view raw,
                        const std::unordered_set<std::string>& stopwords);

std::vector<CleanedTweet> clean_tweets(const std::vector<corpus::Tweet>& tweets,
                                       const std::unordered_set<std::string>& stopwords);

// Single-character edit distance (insert, delete, substitute), computed
// row-by-row so memory stays linear in the shorter string.
std::size_t levenshtein(std::string_view a, std::string_view b);

// Mean over all unordered pairs of 1 - lev(a,b)/max(|a|,|b|) on the joined
// token strings. Fewer than two tweets cannot self-duplicate, so 0.
double intra_similarity(const std::vector<CleanedTweet>& tweets);

struct SpamFilterResult {
    std::map<std::string, std::vector<corpus::Tweet>> kept;
    std::vector<SpamVerdict> verdicts;  // all users, ordered by user_id
};

// Removes users whose tweets average more hashtags than the cutoff or whose
// intra-tweet similarity is above the cutoff. Boundary values are kept.
SpamFilterResult spam_filter(const std::map<std::string, std::vector<corpus::Tweet>>& users,
                             const std::unordered_set<std::string>& stopwords,
                             SpamCutoffs cutoffs = {});

}  // namespace abusekit::preprocess
