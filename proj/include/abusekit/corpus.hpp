#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace abusekit::corpus {

struct Tweet {
    std::string id;
    std::string user_id;
    std::int64_t timestamp = 0;  // epoch seconds UTC
    std::string text;
    std::vector<std::string> hashtags;  // lowercase, no '#'
    std::vector<std::string> mentions;  // mentioned user ids
    int urls = 0;
    bool is_retweet = false;
    bool is_reply = false;
};

struct UserProfile {
    std::string user_id;
    std::int64_t created_at = 0;  // epoch seconds UTC
    std::int64_t statuses_count = 0;
    std::int64_t followers_count = 0;
    std::int64_t friends_count = 0;
    std::int64_t listed_count = 0;
    std::int64_t favourites_count = 0;
    bool verified = false;
    bool default_profile_image = false;
    std::optional<std::string> location;
    std::optional<std::string> description;
};

// The collection filter terms: fixed seeds plus a dynamic top-N list that is
// refreshed from the term frequencies of each time period.
struct KeywordList {
    std::set<std::string> seeds;       // nonempty, lowercase
    std::vector<std::string> dynamic;  // descending frequency, <= n_top entries
    std::size_t n_top = 10;
    std::int64_t period_secs = 86400;
};

struct LoadResult {
    std::vector<Tweet> tweets;
    std::vector<UserProfile> users;
    std::size_t skipped = 0;
};

// Reads line-delimited records ({"kind":"tweet",...} / {"kind":"user",...}).
// In strict mode a malformed line raises ParseError with its line number;
// otherwise malformed lines are counted and skipped.
LoadResult load_records(const std::filesystem::path& path, bool strict);

void write_records(const std::filesystem::path& path, const std::vector<Tweet>& tweets,
                   const std::vector<UserProfile>& users);

std::string serialize_tweet(const Tweet& t);
std::string serialize_user(const UserProfile& u);

// Replaces the dynamic list with the top-N terms of the period's counts,
// descending count with lexicographic tie-break. Seeds are untouched.
KeywordList update_keyword_list(KeywordList list, const std::map<std::string, std::uint64_t>& term_counts);

// Keeps tweets whose hashtags or lowercased text tokens intersect
// seeds + dynamic, preserving input order.
std::vector<Tweet> filter_by_keywords(const std::vector<Tweet>& tweets, const KeywordList& list);

// Hashtag + token counts for one period, the input to update_keyword_list.
std::map<std::string, std::uint64_t> count_terms(const std::vector<Tweet>& tweets);

std::map<std::string, std::vector<Tweet>> group_by_user(const std::vector<Tweet>& tweets);

}  // namespace abusekit::corpus
