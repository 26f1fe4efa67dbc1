#include "abusekit/lexfeatures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "abusekit/errors.hpp"
#include "abusekit/io.hpp"
#include "abusekit/stats.hpp"
#include "abusekit/text.hpp"

namespace abusekit::feats {

namespace {

std::vector<std::pair<std::string, std::string>> read_tsv(const std::filesystem::path& path) {
    std::vector<std::pair<std::string, std::string>> rows;
    if (!std::filesystem::exists(path)) return rows;
    for (const auto& line : io::read_lines(path)) {
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            rows.emplace_back(line, "");
        } else {
            rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
        }
    }
    return rows;
}

PosTag pos_from_string(const std::string& s) {
    if (s == "adjective") return PosTag::adjective;
    if (s == "adverb") return PosTag::adverb;
    if (s == "noun") return PosTag::noun;
    if (s == "verb") return PosTag::verb;
    return PosTag::other;
}

}  // namespace

LexiconSet load_lexicons(const std::filesystem::path& dir) {
    LexiconSet lex;
    for (const auto& [term, payload] : read_tsv(dir / "sentiment.tsv")) {
        lex.sentiment[term] = std::stoi(payload);
    }
    for (const auto& [term, payload] : read_tsv(dir / "emotion.tsv")) {
        auto parts = io::split_csv(payload);
        if (parts.size() != 6) throw ParseError("emotion lexicon: expected 6 values for " + term);
        std::array<double, 6> v{};
        for (std::size_t i = 0; i < 6; ++i) v[i] = std::stod(parts[i]);
        lex.emotion[term] = v;
    }
    for (const auto& [term, payload] : read_tsv(dir / "hate.tsv")) {
        const double score = std::stod(payload);
        if (score < 0.0 || score > 100.0) throw ParseError("hate score outside [0,100] for " + term);
        lex.hate[term] = score;
    }
    for (const auto& [term, payload] : read_tsv(dir / "curse.tsv")) {
        (void)payload;
        lex.curse.insert(term);
    }
    for (const auto& [term, payload] : read_tsv(dir / "emoticons.tsv")) {
        (void)payload;
        lex.emoticons.push_back(term);
    }
    for (const auto& [term, payload] : read_tsv(dir / "pos.tsv")) {
        lex.pos[term] = pos_from_string(payload);
    }
    return lex;
}

void load_embeddings(LexiconSet& lex, const std::filesystem::path& path) {
    lex.embeddings.clear();
    lex.embedding_dim = 0;
    for (const auto& line : io::read_lines(path)) {
        if (line.empty()) continue;
        std::vector<std::string> parts = text::whitespace_split(line);
        if (parts.size() < 2) throw ParseError("embedding line needs a term and at least one value");
        std::vector<double> vec;
        vec.reserve(parts.size() - 1);
        for (std::size_t i = 1; i < parts.size(); ++i) vec.push_back(std::stod(parts[i]));
        if (lex.embedding_dim == 0) {
            lex.embedding_dim = vec.size();
        } else if (vec.size() != lex.embedding_dim) {
            throw ParseError("embedding dimension mismatch for term " + parts[0]);
        }
        lex.embeddings[parts[0]] = std::move(vec);
    }
}

double sentiment_score(const std::vector<preprocess::CleanedTweet>& tweets, const LexiconSet& lex) {
    if (tweets.empty()) return 0.0;
    double total = 0.0;
    for (const auto& t : tweets) {
        double score = 0.0;
        for (const auto& tok : t.tokens) {
            auto it = lex.sentiment.find(tok);
            if (it != lex.sentiment.end()) score += it->second;
        }
        total += std::clamp(score, -4.0, 4.0);
    }
    return total / static_cast<double>(tweets.size());
}

std::size_t uppercase_count(std::string_view raw_text) {
    std::size_t count = 0;
    bool at_sentence_start = true;
    for (unsigned char c : raw_text) {
        if (c == '.' || c == '!' || c == '?') {
            at_sentence_start = true;
            continue;
        }
        if (std::isspace(c)) continue;
        if (at_sentence_start) {
            at_sentence_start = false;  // skip the sentence-initial character
            continue;
        }
        if (c < 0x80 && std::isupper(c)) ++count;
    }
    return count;
}

std::vector<double> embedding_avg(const std::vector<preprocess::CleanedTweet>& tweets,
                                  const LexiconSet& lex) {
    if (lex.embeddings.empty()) throw ContractViolation("embedding_avg: no embeddings loaded");
    std::vector<double> sum(lex.embedding_dim, 0.0);
    std::size_t hits = 0;
    for (const auto& t : tweets) {
        for (const auto& tok : t.tokens) {
            auto it = lex.embeddings.find(tok);
            if (it == lex.embeddings.end()) continue;
            for (std::size_t i = 0; i < lex.embedding_dim; ++i) sum[i] += it->second[i];
            ++hits;
        }
    }
    if (hits > 0) {
        for (double& v : sum) v /= static_cast<double>(hits);
    }
    return sum;
}

PosCounts pos_counts(const std::vector<preprocess::CleanedTweet>& tweets, const LexiconSet& lex) {
    PosCounts avg;
    if (tweets.empty()) return avg;
    for (const auto& t : tweets) {
        for (const auto& tok : t.tokens) {
            auto it = lex.pos.find(tok);
            if (it == lex.pos.end()) continue;
            switch (it->second) {
                case PosTag::adjective: avg.adjectives += 1.0; break;
                case PosTag::adverb: avg.adverbs += 1.0; break;
                case PosTag::noun: avg.nouns += 1.0; break;
                case PosTag::verb: avg.verbs += 1.0; break;
                case PosTag::other: break;
            }
        }
    }
    const double n = static_cast<double>(tweets.size());
    avg.adjectives /= n;
    avg.adverbs /= n;
    avg.nouns /= n;
    avg.verbs /= n;
    return avg;
}

Stylistic stylistic(const std::vector<std::string>& raw_texts) {
    std::size_t sentence_count = 0, word_count = 0, char_count = 0;
    std::size_t words_in_sentences = 0;
    for (const auto& text : raw_texts) {
        for (const auto& sentence : text::split_sentences(text)) {
            const auto words = text::whitespace_split(sentence);
            if (words.empty()) continue;
            ++sentence_count;
            words_in_sentences += words.size();
            for (const auto& w : words) {
                ++word_count;
                char_count += w.size();
            }
        }
    }
    Stylistic s;
    if (sentence_count > 0)
        s.avg_words_per_sentence = static_cast<double>(words_in_sentences) / static_cast<double>(sentence_count);
    if (word_count > 0)
        s.avg_word_length = static_cast<double>(char_count) / static_cast<double>(word_count);
    return s;
}

TextFeatures text_features(const std::vector<corpus::Tweet>& raw,
                           const std::vector<preprocess::CleanedTweet>& cleaned,
                           const LexiconSet& lex) {
    TextFeatures f;
    f.embedding_avg.assign(lex.embedding_dim, 0.0);
    if (raw.empty()) return f;
    const double n = static_cast<double>(raw.size());

    std::set<std::string> unique_mentions;
    std::vector<std::string> texts;
    texts.reserve(raw.size());
    for (const auto& t : raw) {
        f.avg_hashtags += static_cast<double>(t.hashtags.size());
        f.avg_urls += static_cast<double>(t.urls);
        f.avg_uppercase += static_cast<double>(uppercase_count(t.text));
        for (const auto& glyph : lex.emoticons) {
            f.avg_emoticons += static_cast<double>(text::count_occurrences(t.text, glyph));
        }
        f.mentions_total += static_cast<double>(t.mentions.size());
        unique_mentions.insert(t.mentions.begin(), t.mentions.end());
        if (t.is_retweet) f.retweets += 1.0;
        texts.push_back(t.text);
    }
    f.avg_hashtags /= n;
    f.avg_urls /= n;
    f.avg_uppercase /= n;
    f.avg_emoticons /= n;
    f.mentions_unique = static_cast<double>(unique_mentions.size());

    f.avg_sentiment = sentiment_score(cleaned, lex);

    double curse_tweets = 0.0;
    for (const auto& t : cleaned) {
        // per-tweet means; tweets without matches contribute zero
        std::array<double, 6> emo{};
        double hate = 0.0;
        std::size_t emo_hits = 0, hate_hits = 0;
        bool cursed = false;
        for (const auto& tok : t.tokens) {
            if (auto it = lex.emotion.find(tok); it != lex.emotion.end()) {
                for (std::size_t i = 0; i < 6; ++i) emo[i] += it->second[i];
                ++emo_hits;
            }
            if (auto it = lex.hate.find(tok); it != lex.hate.end()) {
                hate += it->second;
                ++hate_hits;
            }
            if (lex.curse.count(tok)) cursed = true;
        }
        if (emo_hits > 0) {
            for (std::size_t i = 0; i < 6; ++i) f.emotion_scores[i] += emo[i] / static_cast<double>(emo_hits);
        }
        if (hate_hits > 0) f.hate_score += hate / static_cast<double>(hate_hits);
        if (cursed) curse_tweets += 1.0;
    }
    for (double& v : f.emotion_scores) v /= n;
    f.hate_score /= n;
    f.curse_flag_rate = curse_tweets / n;

    if (!lex.embeddings.empty()) f.embedding_avg = embedding_avg(cleaned, lex);

    const PosCounts pos = pos_counts(cleaned, lex);
    f.pos_adjectives = pos.adjectives;
    f.pos_adverbs = pos.adverbs;
    f.pos_nouns = pos.nouns;
    f.pos_verbs = pos.verbs;

    const Stylistic sty = stylistic(texts);
    f.avg_words_per_sentence = sty.avg_words_per_sentence;
    f.avg_word_length = sty.avg_word_length;
    return f;
}

UserFeatures user_features(const corpus::UserProfile& profile,
                           const std::vector<corpus::Tweet>& tweets,
                           const std::vector<sessions::Session>& user_sessions,
                           std::int64_t now) {
    if (now < profile.created_at) throw ContractViolation("user_features: now precedes account creation");

    UserFeatures f;
    f.avg_posts = static_cast<double>(profile.statuses_count);
    f.posts_in_window = static_cast<double>(tweets.size());
    f.account_age_days = static_cast<double>(now - profile.created_at) / 86400.0;
    f.verified = profile.verified ? 1.0 : 0.0;
    f.subscribed_lists = static_cast<double>(profile.listed_count);
    f.default_profile_image = profile.default_profile_image ? 1.0 : 0.0;
    f.has_location = profile.location.has_value() ? 1.0 : 0.0;
    f.description_length = profile.description ? static_cast<double>(profile.description->size()) : 0.0;

    if (tweets.size() >= 2) {
        std::vector<double> stamps;
        stamps.reserve(tweets.size());
        for (const auto& t : tweets) stamps.push_back(static_cast<double>(t.timestamp));
        std::sort(stamps.begin(), stamps.end());
        std::vector<double> gaps;
        gaps.reserve(stamps.size() - 1);
        for (std::size_t i = 1; i < stamps.size(); ++i) gaps.push_back(stamps[i] - stamps[i - 1]);
        f.interarrival_median_secs = stats::describe(gaps).median;
    }

    if (!user_sessions.empty()) {
        std::vector<double> sizes;
        sizes.reserve(user_sessions.size());
        for (const auto& s : user_sessions) sizes.push_back(static_cast<double>(s.tweets.size()));
        const auto d = stats::describe(sizes);
        f.session_count = static_cast<double>(user_sessions.size());
        f.session_size_avg = d.mean;
        f.session_size_median = d.median;
        f.session_size_std = d.std_dev;
    }
    return f;
}

std::vector<FeatureName> feature_schema(std::size_t embedding_dim) {
    return {
        // user
        {"avg_posts", 1},
        {"account_age_days", 1},
        {"verified", 1},
        {"subscribed_lists", 1},
        {"interarrival_median", 1},
        {"default_profile_image", 1},
        {"session_stats", 4},
        {"has_location", 1},
        {"description_length", 1},
        // text
        {"avg_hashtags", 1},
        {"avg_emoticons", 1},
        {"avg_uppercase", 1},
        {"avg_urls", 1},
        {"avg_sentiment", 1},
        {"emotion_scores", 6},
        {"hate_score", 1},
        {"embedding_avg", embedding_dim},
        {"curse_flag_rate", 1},
        {"pos_adjectives", 1},
        {"pos_adverbs", 1},
        {"pos_nouns", 1},
        {"pos_verbs", 1},
        {"mentions_total", 1},
        {"mentions_unique", 1},
        {"retweets", 1},
        {"avg_words_per_sentence", 1},
        {"avg_word_length", 1},
        // network
        {"friends", 1},
        {"followers", 1},
        {"followers_friends_ratio", 1},
        {"hubs", 1},
        {"authority", 1},
        {"power_difference", 1},
        {"clustering_coefficient", 1},
        {"reciprocity", 1},
        {"eigenvector", 1},
        {"closeness", 1},
        {"louvain_modularity", 1},
    };
}

const std::set<std::string>& default_exclusions() {
    static const std::set<std::string> excluded = {
        "verified",       "default_profile_image", "session_stats",  "has_location",
        "description_length", "emotion_scores",    "hate_score",     "embedding_avg",
        "curse_flag_rate", "mentions_total",       "mentions_unique", "retweets",
        "closeness",      "louvain_modularity",
    };
    return excluded;
}

FeatureVector assemble_vector(const UserFeatures& uf, const TextFeatures& tf,
                              const NetworkFeatures& nf, const std::set<std::string>& exclusions,
                              std::size_t embedding_dim) {
    const auto schema = feature_schema(embedding_dim);

    std::set<std::string> known;
    for (const auto& f : schema) known.insert(f.name);
    for (const auto& name : exclusions) {
        if (!known.count(name)) throw ConfigError("unknown feature name in exclusions: " + name);
    }

    std::map<std::string, std::vector<double>> columns;
    columns["avg_posts"] = {uf.avg_posts};
    columns["account_age_days"] = {uf.account_age_days};
    columns["verified"] = {uf.verified};
    columns["subscribed_lists"] = {uf.subscribed_lists};
    columns["interarrival_median"] = {uf.interarrival_median_secs};
    columns["default_profile_image"] = {uf.default_profile_image};
    columns["session_stats"] = {uf.session_count, uf.session_size_avg, uf.session_size_median,
                                uf.session_size_std};
    columns["has_location"] = {uf.has_location};
    columns["description_length"] = {uf.description_length};
    columns["avg_hashtags"] = {tf.avg_hashtags};
    columns["avg_emoticons"] = {tf.avg_emoticons};
    columns["avg_uppercase"] = {tf.avg_uppercase};
    columns["avg_urls"] = {tf.avg_urls};
    columns["avg_sentiment"] = {tf.avg_sentiment};
    columns["emotion_scores"] = std::vector<double>(tf.emotion_scores.begin(), tf.emotion_scores.end());
    columns["hate_score"] = {tf.hate_score};
    std::vector<double> emb = tf.embedding_avg;
    emb.resize(embedding_dim, 0.0);
    columns["embedding_avg"] = std::move(emb);
    columns["curse_flag_rate"] = {tf.curse_flag_rate};
    columns["pos_adjectives"] = {tf.pos_adjectives};
    columns["pos_adverbs"] = {tf.pos_adverbs};
    columns["pos_nouns"] = {tf.pos_nouns};
    columns["pos_verbs"] = {tf.pos_verbs};
    columns["mentions_total"] = {tf.mentions_total};
    columns["mentions_unique"] = {tf.mentions_unique};
    columns["retweets"] = {tf.retweets};
    columns["avg_words_per_sentence"] = {tf.avg_words_per_sentence};
    columns["avg_word_length"] = {tf.avg_word_length};
    columns["friends"] = {nf.friends};
    columns["followers"] = {nf.followers};
    columns["followers_friends_ratio"] = {nf.followers_friends_ratio};
    columns["hubs"] = {nf.hubs};
    columns["authority"] = {nf.authority};
    columns["power_difference"] = {nf.power_difference};
    columns["clustering_coefficient"] = {nf.clustering_coefficient};
    columns["reciprocity"] = {nf.reciprocity};
    columns["eigenvector"] = {nf.eigenvector};
    columns["closeness"] = {nf.closeness};
    columns["louvain_modularity"] = {nf.louvain_modularity};

    FeatureVector out;
    for (const auto& f : schema) {
        if (exclusions.count(f.name)) continue;
        out.active_features.push_back(f.name);
        const auto& vals = columns.at(f.name);
        if (f.span == 1) {
            out.column_names.push_back(f.name);
            out.values.push_back(vals[0]);
        } else {
            for (std::size_t i = 0; i < f.span; ++i) {
                out.column_names.push_back(f.name + "_" + std::to_string(i));
                out.values.push_back(i < vals.size() ? vals[i] : 0.0);
            }
        }
    }
    return out;
}

}  // namespace abusekit::feats
