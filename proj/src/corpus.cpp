#include "abusekit/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "abusekit/errors.hpp"
#include "abusekit/io.hpp"
#include "abusekit/text.hpp"

namespace abusekit::corpus {

namespace {

using nlohmann::json;

json tweet_to_json(const Tweet& t) {
    json j;
    j["kind"] = "tweet";
    j["id"] = t.id;
    j["user_id"] = t.user_id;
    j["timestamp"] = t.timestamp;
    j["text"] = t.text;
    j["hashtags"] = t.hashtags;
    j["mentions"] = t.mentions;
    j["urls"] = t.urls;
    j["is_retweet"] = t.is_retweet;
    j["is_reply"] = t.is_reply;
    return j;
}

json user_to_json(const UserProfile& u) {
    json j;
    j["kind"] = "user";
    j["user_id"] = u.user_id;
    j["created_at"] = u.created_at;
    j["statuses_count"] = u.statuses_count;
    j["followers_count"] = u.followers_count;
    j["friends_count"] = u.friends_count;
    j["listed_count"] = u.listed_count;
    j["favourites_count"] = u.favourites_count;
    j["verified"] = u.verified;
    j["default_profile_image"] = u.default_profile_image;
    if (u.location) j["location"] = *u.location;
    if (u.description) j["description"] = *u.description;
    return j;
}

Tweet tweet_from_json(const json& j) {
    Tweet t;
    t.id = j.at("id").get<std::string>();
    t.user_id = j.at("user_id").get<std::string>();
    t.timestamp = j.at("timestamp").get<std::int64_t>();
    t.text = j.at("text").get<std::string>();
    t.hashtags = j.at("hashtags").get<std::vector<std::string>>();
    t.mentions = j.at("mentions").get<std::vector<std::string>>();
    t.urls = j.at("urls").get<int>();
    t.is_retweet = j.at("is_retweet").get<bool>();
    t.is_reply = j.at("is_reply").get<bool>();
    if (t.timestamp <= 0) throw ParseError("tweet timestamp must be positive");
    if (t.urls < 0) throw ParseError("tweet urls must be nonnegative");
    for (const auto& h : t.hashtags) {
        if (h.find('#') != std::string::npos || h.find(' ') != std::string::npos)
            throw ParseError("hashtag contains '#' or whitespace: " + h);
    }
    return t;
}

UserProfile user_from_json(const json& j) {
    UserProfile u;
    u.user_id = j.at("user_id").get<std::string>();
    u.created_at = j.at("created_at").get<std::int64_t>();
    u.statuses_count = j.at("statuses_count").get<std::int64_t>();
    u.followers_count = j.at("followers_count").get<std::int64_t>();
    u.friends_count = j.at("friends_count").get<std::int64_t>();
    u.listed_count = j.at("listed_count").get<std::int64_t>();
    u.favourites_count = j.at("favourites_count").get<std::int64_t>();
    u.verified = j.at("verified").get<bool>();
    u.default_profile_image = j.at("default_profile_image").get<bool>();
    if (j.contains("location")) u.location = j.at("location").get<std::string>();
    if (j.contains("description")) u.description = j.at("description").get<std::string>();
    if (u.statuses_count < 0 || u.followers_count < 0 || u.friends_count < 0 ||
        u.listed_count < 0 || u.favourites_count < 0)
        throw ParseError("profile counts must be nonnegative");
    return u;
}

}  // namespace

LoadResult load_records(const std::filesystem::path& path, bool strict) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path.string());

    LoadResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            json j = json::parse(line);
            const std::string kind = j.at("kind").get<std::string>();
            if (kind == "tweet") {
                result.tweets.push_back(tweet_from_json(j));
            } else if (kind == "user") {
                result.users.push_back(user_from_json(j));
            } else {
                throw ParseError("unknown record kind: " + kind);
            }
        } catch (const std::exception& e) {
            if (strict) {
                throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
            }
            ++result.skipped;
        }
    }
    return result;
}

std::string serialize_tweet(const Tweet& t) { return tweet_to_json(t).dump(); }

std::string serialize_user(const UserProfile& u) { return user_to_json(u).dump(); }

void write_records(const std::filesystem::path& path, const std::vector<Tweet>& tweets,
                   const std::vector<UserProfile>& users) {
    std::string out;
    for (const auto& t : tweets) {
        out += serialize_tweet(t);
        out.push_back('\n');
    }
    for (const auto& u : users) {
        out += serialize_user(u);
        out.push_back('\n');
    }
    io::write_text(path, out);
}

KeywordList update_keyword_list(KeywordList list, const std::map<std::string, std::uint64_t>& term_counts) {
    std::vector<std::pair<std::string, std::uint64_t>> ranked(term_counts.begin(), term_counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    list.dynamic.clear();
    for (const auto& [term, count] : ranked) {
        if (list.dynamic.size() >= list.n_top) break;
        list.dynamic.push_back(term);
    }
    return list;
}

std::vector<Tweet> filter_by_keywords(const std::vector<Tweet>& tweets, const KeywordList& list) {
    if (list.seeds.empty()) throw ContractViolation("filter_by_keywords: empty seed set");

    std::unordered_set<std::string> terms(list.seeds.begin(), list.seeds.end());
    terms.insert(list.dynamic.begin(), list.dynamic.end());

    std::vector<Tweet> kept;
    for (const auto& t : tweets) {
        bool match = std::any_of(t.hashtags.begin(), t.hashtags.end(),
                                 [&](const std::string& h) { return terms.count(h) > 0; });
        if (!match) {
            for (const auto& tok : text::tokenize(t.text)) {
                if (terms.count(tok)) {
                    match = true;
                    break;
                }
            }
        }
        if (match) kept.push_back(t);
    }
    return kept;
}

std::map<std::string, std::uint64_t> count_terms(const std::vector<Tweet>& tweets) {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& t : tweets) {
        for (const auto& h : t.hashtags) ++counts[h];
        for (const auto& tok : text::tokenize(t.text)) ++counts[tok];
    }
    return counts;
}

std::map<std::string, std::vector<Tweet>> group_by_user(const std::vector<Tweet>& tweets) {
    std::map<std::string, std::vector<Tweet>> grouped;
    for (const auto& t : tweets) grouped[t.user_id].push_back(t);
    return grouped;
}

}  // namespace abusekit::corpus
