#include "abusekit/preprocess.hpp"

#include <algorithm>
#include <cctype>

#include "abusekit/errors.hpp"
#include "abusekit/io.hpp"
#include "abusekit/text.hpp"

namespace abusekit::preprocess {

std::string_view to_string(SpamReason r) {
    switch (r) {
        case SpamReason::none: return "none";
        case SpamReason::hashtags: return "hashtags";
        case SpamReason::duplication: return "duplication";
        case SpamReason::both: return "both";
    }
    return "none";
}

std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path) {
    std::unordered_set<std::string> words;
    for (const auto& line : io::read_lines(path)) {
        if (!line.empty()) words.insert(text::to_lower(line));
    }
    return words;
}

CleanedTweet clean_text(std::string id, std::string_view raw,
                        const std::unordered_set<std::string>& stopwords) {
    CleanedTweet out;
    out.id = std::move(id);
    for (const auto& word : text::whitespace_split(raw)) {
        if (word.front() == '@') continue;  // mention
        std::string token;
        for (unsigned char c : word) {
            if (c >= 0x80) {
                token.push_back(static_cast<char>(c));
            } else if (std::isalpha(c)) {
                token.push_back(static_cast<char>(std::tolower(c)));
            }
            // digits and punctuation are dropped
        }
        if (token.empty()) continue;
        if (stopwords.count(token)) continue;
        out.tokens.push_back(std::move(token));
    }
    return out;
}

std::vector<CleanedTweet> clean_tweets(const std::vector<corpus::Tweet>& tweets,
                                       const std::unordered_set<std::string>& stopwords) {
    std::vector<CleanedTweet> out;
    out.reserve(tweets.size());
    for (const auto& t : tweets) out.push_back(clean_text(t.id, t.text, stopwords));
    return out;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
    if (a.size() < b.size()) std::swap(a, b);  // b is the shorter
    const std::size_t n = b.size();
    std::vector<std::size_t> row(n + 1);
    for (std::size_t j = 0; j <= n; ++j) row[j] = j;

    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= n; ++j) {
            const std::size_t above = row[j];
            const std::size_t subst = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, subst});
            diag = above;
        }
    }
    return row[n];
}

namespace {

std::string joined(const CleanedTweet& t) {
    std::string s;
    for (std::size_t i = 0; i < t.tokens.size(); ++i) {
        if (i) s.push_back(' ');
        s += t.tokens[i];
    }
    return s;
}

double pair_similarity(const std::string& a, const std::string& b) {
    const std::size_t longest = std::max(a.size(), b.size());
    if (longest == 0) return 1.0;  // two empty strings are identical
    return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

}  // namespace

double intra_similarity(const std::vector<CleanedTweet>& tweets) {
    if (tweets.size() < 2) return 0.0;

    std::vector<std::string> texts;
    texts.reserve(tweets.size());
    for (const auto& t : tweets) texts.push_back(joined(t));

    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        for (std::size_t j = i + 1; j < texts.size(); ++j) {
            total += pair_similarity(texts[i], texts[j]);
            ++pairs;
        }
    }
    return total / static_cast<double>(pairs);
}

SpamFilterResult spam_filter(const std::map<std::string, std::vector<corpus::Tweet>>& users,
                             const std::unordered_set<std::string>& stopwords,
                             SpamCutoffs cutoffs) {
    SpamFilterResult result;
    for (const auto& [user_id, tweets] : users) {
        SpamVerdict v;
        v.user_id = user_id;

        if (!tweets.empty()) {
            std::size_t hashtag_total = 0;
            for (const auto& t : tweets) hashtag_total += t.hashtags.size();
            v.avg_hashtags = static_cast<double>(hashtag_total) / static_cast<double>(tweets.size());
        }
        v.avg_intra_similarity = intra_similarity(clean_tweets(tweets, stopwords));

        const bool too_many_hashtags = v.avg_hashtags > cutoffs.hashtag_avg;
        const bool too_similar = v.avg_intra_similarity > cutoffs.similarity;
        v.is_spam = too_many_hashtags || too_similar;
        if (too_many_hashtags && too_similar) {
            v.reason = SpamReason::both;
        } else if (too_many_hashtags) {
            v.reason = SpamReason::hashtags;
        } else if (too_similar) {
            v.reason = SpamReason::duplication;
        }

        if (!v.is_spam) result.kept.emplace(user_id, tweets);
        result.verdicts.push_back(std::move(v));
    }
    return result;
}

}  // namespace abusekit::preprocess
