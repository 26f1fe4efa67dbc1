#include "abusekit/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "abusekit/errors.hpp"
#include "abusekit/io.hpp"
#include "abusekit/rng.hpp"

namespace abusekit::synth {

namespace {

using sessions::Label;

const std::vector<Label> kLabelOrder = {Label::bully, Label::aggressor, Label::spammer,
                                        Label::normal};

const std::vector<std::pair<const char*, int>> kNegativeTerms = {
    {"awful", -2}, {"hate", -2}, {"trash", -2}, {"loser", -2},
    {"stupid", -2}, {"angry", -1}, {"bad", -1},  {"worst", -2},
};
const std::vector<std::pair<const char*, int>> kPositiveTerms = {
    {"great", 2}, {"love", 2}, {"good", 2}, {"happy", 1}, {"nice", 1}, {"best", 2},
};
const std::vector<const char*> kPromoTerms = {"follow", "win",   "free",  "click",
                                              "deal",   "offer", "bonus", "prize"};
const std::vector<const char*> kCurseTerms = {"darn", "heck", "frick", "dang"};
const std::vector<const char*> kEmoticons = {":)", ":(", ":D"};

const std::map<Label, std::vector<const char*>> kHashtagPools = {
    {Label::bully, {"gametalk", "hotpatch", "rant"}},
    {Label::aggressor, {"gametalk", "hottake", "rant"}},
    {Label::spammer, {"freestuff", "dealz", "winbig", "promo"}},
    {Label::normal, {"sports", "music", "news", "daily"}},
};

std::string filler_word(std::size_t i) {
    static const std::array<const char*, 10> syllable = {"ba", "de", "ki", "lo", "mu",
                                                         "na", "po", "ra", "su", "ta"};
    return std::string(syllable[(i / 100) % 10]) + syllable[(i / 10) % 10] + syllable[i % 10];
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::int64_t draw_i64(std::mt19937_64& gen, std::int64_t lo, std::int64_t hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<std::int64_t>(rng::uniform_index(gen, static_cast<std::size_t>(hi - lo)));
}

int draw_int_inclusive(std::mt19937_64& gen, int lo, int hi) {
    return static_cast<int>(draw_i64(gen, lo, hi + 1));
}

bool draw_chance(std::mt19937_64& gen, double p) { return rng::uniform_real(gen, 0.0, 1.0) < p; }

std::string user_id_for(std::size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "u%05zu", index + 1);
    return buf;
}

std::string to_upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

ClassKnobs SynthConfig::knobs(Label l) const {
    ClassKnobs k;
    switch (l) {
        case Label::bully:
            k.tweets_min = 8; k.tweets_max = 14;
            k.gap_min = 30; k.gap_max = 600;
            k.hashtags_min = 2; k.hashtags_max = 4;
            k.urls_min = 0; k.urls_max = 1;
            k.retweet_rate = 0.1;
            k.mentions_max = 2;
            k.negative_terms_min = 3; k.negative_terms_max = 5;
            k.curse_rate = 0.7;
            k.emoticon_rate = 0.05;
            k.shout_rate = 0.1;
            k.followers_min = 20; k.followers_max = 120;
            k.friends_min = 200; k.friends_max = 700;
            k.lists_min = 0; k.lists_max = 15;
            k.posts_min = 1000; k.posts_max = 5000;
            k.age_days_min = 100; k.age_days_max = 400;
            k.follow_min = 4; k.follow_max = 10;
            k.reciprocate_rate = 0.7;
            k.location_rate = 0.3;
            k.description_rate = 0.3;
            break;
        case Label::aggressor:
            k.tweets_min = 7; k.tweets_max = 12;
            k.gap_min = 700; k.gap_max = 1500;
            k.hashtags_min = 2; k.hashtags_max = 4;
            k.urls_min = 0; k.urls_max = 1;
            k.retweet_rate = 0.1;
            k.mentions_max = 2;
            k.negative_terms_min = 1; k.negative_terms_max = 1;
            k.curse_rate = 0.3;
            k.emoticon_rate = 0.05;
            k.shout_rate = 0.3;
            k.followers_min = 50; k.followers_max = 250;
            k.friends_min = 150; k.friends_max = 600;
            k.lists_min = 0; k.lists_max = 15;
            k.posts_min = 800; k.posts_max = 4000;
            k.age_days_min = 200; k.age_days_max = 800;
            k.follow_min = 4; k.follow_max = 10;
            k.reciprocate_rate = 0.7;
            k.location_rate = 0.3;
            k.description_rate = 0.3;
            break;
        case Label::spammer:
            k.tweets_min = 10; k.tweets_max = 20;
            k.gap_min = 1600; k.gap_max = 3600;
            k.hashtags_min = 3; k.hashtags_max = 5;
            k.urls_min = 1; k.urls_max = 2;
            k.retweet_rate = 0.1;
            k.mentions_max = 2;
            k.promo_terms_min = 3; k.promo_terms_max = 5;
            k.curse_rate = 0.02;
            k.emoticon_rate = 0.05;
            k.followers_min = 30; k.followers_max = 150;
            k.friends_min = 800; k.friends_max = 2500;
            k.lists_min = 0; k.lists_max = 15;
            k.posts_min = 5000; k.posts_max = 50000;
            k.age_days_min = 30; k.age_days_max = 300;
            k.follow_min = 15; k.follow_max = 30;
            k.reciprocate_rate = 0.05;
            k.location_rate = 0.2;
            k.description_rate = 0.4;
            break;
        case Label::normal:
            k.tweets_min = 6; k.tweets_max = 12;
            k.gap_min = 3700; k.gap_max = 21600;
            k.hashtags_min = 0; k.hashtags_max = 2;
            k.urls_min = 0; k.urls_max = 1;
            k.retweet_rate = 0.4;
            k.mentions_max = 1;
            k.positive_terms_min = 1; k.positive_terms_max = 2;
            k.curse_rate = 0.02;
            k.emoticon_rate = 0.4;
            k.followers_min = 500; k.followers_max = 3000;
            k.friends_min = 200; k.friends_max = 900;
            k.lists_min = 20; k.lists_max = 80;
            k.posts_min = 500; k.posts_max = 5000;
            k.age_days_min = 300; k.age_days_max = 1200;
            k.follow_min = 5; k.follow_max = 15;
            k.reciprocate_rate = 0.3;
            k.location_rate = 0.8;
            k.description_rate = 0.8;
            break;
    }
    return k;
}

namespace {

struct UserPlan {
    std::string id;
    Label label;
    bool blatant = false;
};

corpus::UserProfile make_profile(std::mt19937_64& gen, const std::string& id, const ClassKnobs& k,
                                 std::int64_t window_start) {
    corpus::UserProfile p;
    p.user_id = id;
    p.created_at = window_start - draw_i64(gen, k.age_days_min, k.age_days_max) * 86400;
    p.statuses_count = draw_i64(gen, k.posts_min, k.posts_max);
    p.followers_count = draw_i64(gen, k.followers_min, k.followers_max);
    p.friends_count = draw_i64(gen, k.friends_min, k.friends_max);
    p.listed_count = draw_i64(gen, k.lists_min, k.lists_max);
    p.favourites_count = draw_i64(gen, 0, 2000);
    p.verified = false;
    p.default_profile_image = draw_chance(gen, 0.1);
    if (draw_chance(gen, k.location_rate)) p.location = "city " + filler_word(rng::uniform_index(gen, 1000));
    if (draw_chance(gen, k.description_rate)) {
        p.description = "posting about " + filler_word(rng::uniform_index(gen, 1000)) + " and " +
                        filler_word(rng::uniform_index(gen, 1000));
    }
    return p;
}

}  // namespace

SynthBundle generate(const SynthConfig& cfg) {
    for (const auto& [label, count] : cfg.class_counts) {
        (void)label;
        if (count < 0) throw ContractViolation("synth: negative class count");
    }

    SynthBundle bundle;
    bundle.window_start = cfg.window_start;
    bundle.now_epoch = cfg.window_start + cfg.window_secs;
    std::mt19937_64 gen(cfg.seed);

    // Plan users: labeled classes in severity order, then the blatant spammers.
    std::vector<UserPlan> plans;
    for (Label label : kLabelOrder) {
        auto it = cfg.class_counts.find(label);
        const int count = it == cfg.class_counts.end() ? 0 : it->second;
        for (int i = 0; i < count; ++i) {
            plans.push_back({user_id_for(plans.size()), label, false});
        }
    }
    for (int i = 0; i < cfg.blatant_spammers; ++i) {
        plans.push_back({user_id_for(plans.size()), Label::spammer, true});
    }

    std::vector<std::string> normal_ids;
    for (const auto& p : plans) {
        if (!p.blatant && p.label == Label::normal) normal_ids.push_back(p.id);
    }

    // --- tweets and profiles, user by user ---
    std::size_t tweet_counter = 0;
    auto next_tweet_id = [&tweet_counter] {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "t%07zu", ++tweet_counter);
        return std::string(buf);
    };

    for (const auto& plan : plans) {
        const ClassKnobs k = cfg.knobs(plan.label);
        bundle.profiles.push_back(make_profile(gen, plan.id, k, cfg.window_start));
        if (!plan.blatant) bundle.gold_labels[plan.id] = plan.label;
        else bundle.blatant_spam_ids.push_back(plan.id);

        const int n_tweets = draw_int_inclusive(gen, k.tweets_min, k.tweets_max);
        std::int64_t t = cfg.window_start + draw_i64(gen, 0, cfg.window_secs - 7 * 86400);

        // Blatant behavior: half overload hashtags, half duplicate a template,
        // every third does both.
        const bool blatant_hashtags = plan.blatant && (bundle.blatant_spam_ids.size() % 2 == 0 ||
                                                       bundle.blatant_spam_ids.size() % 3 == 0);
        const bool blatant_duplicates = plan.blatant && (bundle.blatant_spam_ids.size() % 2 == 1 ||
                                                         bundle.blatant_spam_ids.size() % 3 == 0);

        const auto& tag_pool = kHashtagPools.at(plan.label);

        // Duplicators need near-identical text, so their tag list is drawn
        // once and reused; varying tags would re-diversify the cleaned text.
        std::vector<std::string> fixed_tags;
        if (blatant_duplicates) {
            const int n_tags = blatant_hashtags ? draw_int_inclusive(gen, 6, 9)
                                                : draw_int_inclusive(gen, k.hashtags_min, k.hashtags_max);
            for (int h = 0; h < n_tags; ++h) {
                std::string tag(tag_pool[rng::uniform_index(gen, tag_pool.size())]);
                if (blatant_hashtags) tag += filler_word(rng::uniform_index(gen, 1000));
                fixed_tags.push_back(std::move(tag));
            }
        }
        for (int i = 0; i < n_tweets; ++i) {
            corpus::Tweet tw;
            tw.id = next_tweet_id();
            tw.user_id = plan.id;
            tw.timestamp = t;
            t += draw_i64(gen, k.gap_min, k.gap_max);

            std::vector<std::string> words;
            if (blatant_duplicates) {
                words = {"win", "free", "click", "deal", "bonus", "offer"};
                words.push_back(draw_chance(gen, 0.5) ? "now" : "today");
            } else {
                const int negatives = k.negative_terms_max == 0
                                          ? 0
                                          : draw_int_inclusive(gen, k.negative_terms_min, k.negative_terms_max);
                for (int w = 0; w < negatives; ++w) {
                    words.push_back(kNegativeTerms[rng::uniform_index(gen, kNegativeTerms.size())].first);
                }
                const int positives = k.positive_terms_max == 0
                                          ? 0
                                          : draw_int_inclusive(gen, k.positive_terms_min, k.positive_terms_max);
                for (int w = 0; w < positives; ++w) {
                    words.push_back(kPositiveTerms[rng::uniform_index(gen, kPositiveTerms.size())].first);
                }
                const int promos = k.promo_terms_max == 0
                                       ? 0
                                       : draw_int_inclusive(gen, k.promo_terms_min, k.promo_terms_max);
                for (int w = 0; w < promos; ++w) {
                    words.push_back(kPromoTerms[rng::uniform_index(gen, kPromoTerms.size())]);
                }
                if (draw_chance(gen, k.curse_rate)) {
                    words.push_back(kCurseTerms[rng::uniform_index(gen, kCurseTerms.size())]);
                }
                const int fillers = draw_int_inclusive(gen, 2, 4);
                for (int w = 0; w < fillers; ++w) {
                    words.push_back(filler_word(rng::uniform_index(gen, 1000)));
                }
            }

            for (auto& w : words) {
                if (draw_chance(gen, k.shout_rate)) w = to_upper(w);
            }

            // mentions: abusers target normal users
            const int mentions = k.mentions_max == 0 ? 0 : draw_int_inclusive(gen, 0, k.mentions_max);
            for (int m = 0; m < mentions && !normal_ids.empty(); ++m) {
                const auto& victim = normal_ids[rng::uniform_index(gen, normal_ids.size())];
                if (victim == plan.id) continue;
                tw.mentions.push_back(victim);
                words.push_back("@" + victim);
            }

            if (blatant_duplicates) {
                for (const auto& tag : fixed_tags) {
                    tw.hashtags.push_back(tag);
                    words.push_back("#" + tag);
                }
            } else {
                const int tags = blatant_hashtags
                                     ? draw_int_inclusive(gen, 6, 9)
                                     : draw_int_inclusive(gen, k.hashtags_min, k.hashtags_max);
                for (int h = 0; h < tags; ++h) {
                    std::string tag(tag_pool[rng::uniform_index(gen, tag_pool.size())]);
                    if (blatant_hashtags) tag += filler_word(rng::uniform_index(gen, 1000));
                    tw.hashtags.push_back(tag);
                    words.push_back("#" + tag);
                }
            }

            tw.urls = draw_int_inclusive(gen, k.urls_min, k.urls_max);
            tw.is_retweet = draw_chance(gen, k.retweet_rate);
            tw.is_reply = draw_chance(gen, 0.2);

            std::string text;
            for (std::size_t w = 0; w < words.size(); ++w) {
                if (w > 0) text += (w % 6 == 0) ? ". " : " ";
                text += words[w];
            }
            if (draw_chance(gen, k.emoticon_rate)) {
                text += " ";
                text += kEmoticons[rng::uniform_index(gen, kEmoticons.size())];
            }
            tw.text = std::move(text);
            bundle.tweets.push_back(std::move(tw));
        }
    }

    // --- follower edges, user by user ---
    std::set<std::pair<std::string, std::string>> edge_set;
    for (const auto& plan : plans) {
        const ClassKnobs k = cfg.knobs(plan.label);
        const int follows = draw_int_inclusive(gen, k.follow_min, k.follow_max);
        for (int e = 0; e < follows; ++e) {
            const auto& target = plans[rng::uniform_index(gen, plans.size())].id;
            if (target == plan.id) continue;
            if (edge_set.insert({plan.id, target}).second) {
                bundle.edges.emplace_back(plan.id, target);
            }
            if (draw_chance(gen, k.reciprocate_rate) && edge_set.insert({target, plan.id}).second) {
                bundle.edges.emplace_back(target, plan.id);
            }
        }
    }

    // --- annotations per batch: majority always lands on the gold label, with
    // the observed 15/37/48 absolute/strong/basic strength mix ---
    std::size_t worker_counter = 0;
    auto next_worker = [&worker_counter] {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "w%03zu", worker_counter++ % 834);
        return std::string(buf);
    };

    std::map<std::string, std::vector<corpus::Tweet>> by_user;
    for (const auto& tw : bundle.tweets) {
        if (bundle.gold_labels.count(tw.user_id)) by_user[tw.user_id].push_back(tw);
    }
    for (const auto& [user_id, tweets] : by_user) {
        const Label gold = bundle.gold_labels.at(user_id);
        auto user_sessions = sessions::build_sessions(tweets);
        for (const auto& batch : sessions::make_batches(user_sessions)) {
            const double strength = rng::uniform_real(gen, 0.0, 1.0);
            int gold_votes = strength < 0.15 ? 5 : (strength < 0.52 ? 4 : 3);

            std::vector<Label> others;
            for (Label l : kLabelOrder) {
                if (l != gold) others.push_back(l);
            }
            std::vector<Label> votes(static_cast<std::size_t>(gold_votes), gold);
            while (votes.size() < 5) {
                votes.push_back(others[rng::uniform_index(gen, others.size())]);
            }
            for (Label vote : votes) {
                sessions::Annotation a;
                a.batch_id = batch.id;
                a.worker_id = next_worker();
                a.label = vote;
                a.is_control = false;
                bundle.annotations.push_back(std::move(a));
            }
        }
    }

    // A few control rows so the aggregation path that excludes them is
    // exercised; roughly the observed per-class control accuracy.
    const std::vector<std::pair<Label, double>> control_mix = {
        {Label::spammer, 0.84}, {Label::bully, 0.54}, {Label::aggressor, 0.61}};
    int control_index = 0;
    for (const auto& [gold, accuracy] : control_mix) {
        const std::string batch_id = "ctrl:" + std::to_string(control_index++);
        for (int i = 0; i < 10; ++i) {
            sessions::Annotation a;
            a.batch_id = batch_id;
            a.worker_id = next_worker();
            a.is_control = true;
            a.gold = gold;
            if (draw_chance(gen, accuracy)) {
                a.label = gold;
            } else {
                std::vector<Label> others;
                for (Label l : kLabelOrder) {
                    if (l != gold) others.push_back(l);
                }
                a.label = others[rng::uniform_index(gen, others.size())];
            }
            bundle.annotations.push_back(std::move(a));
        }
    }

    // --- status snapshots encoded from per-class shares ---
    struct ShareRow {
        double deleted, suspended;
    };
    const std::map<std::string, std::map<Label, ShareRow>> snapshot_shares = {
        {"nov2016",
         {{Label::bully, {32.76, 0.0}},
          {Label::aggressor, {20.93, 13.95}},
          {Label::spammer, {7.71, 20.72}},
          {Label::normal, {5.72, 7.75}}}},
        {"dec2017",
         {{Label::bully, {37.93, 6.90}},
          {Label::aggressor, {23.26, 23.25}},
          {Label::spammer, {12.53, 37.35}},
          {Label::normal, {8.01, 14.61}}}},
        {"sept2018",
         {{Label::bully, {39.66, 55.17}},
          {Label::aggressor, {23.26, 51.16}},
          {Label::spammer, {11.57, 38.80}},
          {Label::normal, {9.02, 22.11}}}},
    };

    std::map<Label, std::vector<std::string>> ids_by_label;
    for (const auto& plan : plans) {
        if (!plan.blatant) ids_by_label[plan.label].push_back(plan.id);
    }
    for (const auto& [snapshot, shares] : snapshot_shares) {
        auto& codes = bundle.status_codes[snapshot];
        for (const auto& [label, share] : shares) {
            const auto& ids = ids_by_label[label];
            const auto n = static_cast<double>(ids.size());
            const auto suspended = static_cast<std::size_t>(std::llround(share.suspended * n / 100.0));
            const auto deleted = static_cast<std::size_t>(std::llround(share.deleted * n / 100.0));
            for (std::size_t i = 0; i < ids.size(); ++i) {
                int code = 0;
                if (i < suspended) code = 63;
                else if (i < suspended + deleted) code = 50;
                codes[ids[i]] = code;
            }
        }
    }
    return bundle;
}

std::string sentiment_lexicon_tsv() {
    std::string out;
    for (const auto& [term, score] : kNegativeTerms) {
        out += term;
        out += "\t" + std::to_string(score) + "\n";
    }
    for (const auto& [term, score] : kPositiveTerms) {
        out += term;
        out += "\t" + std::to_string(score) + "\n";
    }
    return out;
}

std::string emotion_lexicon_tsv() {
    // anger,disgust,fear,joy,sadness,surprise
    return "hate\t0.9,0.6,0.1,0.0,0.2,0.0\n"
           "angry\t0.95,0.3,0.1,0.0,0.1,0.0\n"
           "awful\t0.5,0.8,0.2,0.0,0.4,0.1\n"
           "trash\t0.6,0.7,0.0,0.0,0.2,0.0\n"
           "worst\t0.5,0.5,0.1,0.0,0.5,0.1\n"
           "happy\t0.0,0.0,0.0,0.9,0.0,0.1\n"
           "love\t0.0,0.0,0.0,0.95,0.0,0.1\n"
           "great\t0.0,0.0,0.0,0.8,0.0,0.2\n"
           "nice\t0.0,0.0,0.0,0.7,0.0,0.0\n";
}

std::string hate_lexicon_tsv() {
    return "trash\t70\nloser\t60\nstupid\t50\nworst\t40\nawful\t35\n";
}

std::string curse_lexicon_tsv() {
    std::string out;
    for (const char* term : kCurseTerms) {
        out += term;
        out += "\n";
    }
    return out;
}

std::string emoticon_lexicon_tsv() {
    std::string out;
    for (const char* glyph : kEmoticons) {
        out += glyph;
        out += "\n";
    }
    return out;
}

std::string pos_lexicon_tsv() {
    return "great\tadjective\ngood\tadjective\nnice\tadjective\nhappy\tadjective\n"
           "awful\tadjective\nbad\tadjective\nstupid\tadjective\nangry\tadjective\n"
           "free\tadjective\nbest\tadjective\nworst\tadjective\n"
           "game\tnoun\nteam\tnoun\nday\tnoun\ndeal\tnoun\noffer\tnoun\nbonus\tnoun\n"
           "prize\tnoun\nloser\tnoun\ntrash\tnoun\nnews\tnoun\n"
           "love\tverb\nhate\tverb\nwin\tverb\nfollow\tverb\nclick\tverb\nplay\tverb\npost\tverb\n"
           "very\tadverb\nreally\tadverb\nalways\tadverb\nnever\tadverb\n";
}

std::string embeddings_txt() {
    // Deterministic 8-dimensional vectors for every scored term.
    std::vector<std::string> vocab;
    for (const auto& [term, score] : kNegativeTerms) vocab.push_back(term);
    for (const auto& [term, score] : kPositiveTerms) vocab.push_back(term);
    for (const char* term : kPromoTerms) vocab.push_back(term);
    for (const char* term : kCurseTerms) vocab.push_back(term);
    std::sort(vocab.begin(), vocab.end());
    vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());

    std::string out;
    for (const auto& term : vocab) {
        out += term;
        std::uint64_t h = fnv1a(term);
        for (int d = 0; d < 8; ++d) {
            h = h * 6364136223846793005ULL + 1442695040888963407ULL;
            const double v = static_cast<double>(h >> 11) * 0x1.0p-53 * 2.0 - 1.0;
            out += " " + io::format_double(std::round(v * 1000.0) / 1000.0);
        }
        out += "\n";
    }
    return out;
}

std::string stopwords_txt() {
    return "the\na\nan\nand\nor\nto\nof\nin\non\nis\nit\ni\nyou\nwe\nthey\nthis\nthat\n"
           "for\nwith\nas\nat\nbe\nare\nwas\nso\nbut\nnot\nmy\nyour\n";
}

void write_bundle(const SynthBundle& bundle, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);

    corpus::write_records(dir / "corpus.ndjson", bundle.tweets, bundle.profiles);

    std::string edges;
    for (const auto& [src, dst] : bundle.edges) {
        edges += src;
        edges.push_back('\t');
        edges += dst;
        edges.push_back('\n');
    }
    io::write_text(dir / "edges.tsv", edges);

    sessions::write_annotations_csv(dir / "annotations.csv", bundle.annotations);

    std::string gold = "user_id,label\n";
    for (const auto& [user_id, label] : bundle.gold_labels) {
        gold += user_id;
        gold.push_back(',');
        gold += sessions::to_string(label);
        gold.push_back('\n');
    }
    io::write_text(dir / "gold_labels.csv", gold);

    io::write_text(dir / "lexicons/sentiment.tsv", sentiment_lexicon_tsv());
    io::write_text(dir / "lexicons/emotion.tsv", emotion_lexicon_tsv());
    io::write_text(dir / "lexicons/hate.tsv", hate_lexicon_tsv());
    io::write_text(dir / "lexicons/curse.tsv", curse_lexicon_tsv());
    io::write_text(dir / "lexicons/emoticons.tsv", emoticon_lexicon_tsv());
    io::write_text(dir / "lexicons/pos.tsv", pos_lexicon_tsv());
    io::write_text(dir / "embeddings.txt", embeddings_txt());
    io::write_text(dir / "stopwords.txt", stopwords_txt());

    for (const auto& [snapshot, codes] : bundle.status_codes) {
        std::string csv = "user_id,code\n";
        for (const auto& [user_id, code] : codes) {
            csv += user_id;
            csv.push_back(',');
            csv += std::to_string(code);
            csv.push_back('\n');
        }
        io::write_text(dir / ("status_codes_" + snapshot + ".csv"), csv);
    }

    std::ostringstream cfg;
    cfg << "[inputs]\n"
        << "corpus = corpus.ndjson\n"
        << "edges = edges.tsv\n"
        << "annotations = annotations.csv\n"
        << "lexicons = lexicons\n"
        << "embeddings = embeddings.txt\n"
        << "stopwords = stopwords.txt\n"
        << "status_snapshots = nov2016:status_codes_nov2016.csv;dec2017:status_codes_dec2017.csv;"
           "sept2018:status_codes_sept2018.csv\n"
        << "\n[params]\n"
        << "t_l_hours = 8\n"
        << "min_tweets = 5\n"
        << "hashtag_cutoff = 5\n"
        << "sim_cutoff = 0.8\n"
        << "alpha = 0.01\n"
        << "exclusions = paper-default\n"
        << "seed = 42\n"
        << "repeats = 10\n"
        << "folds = 10\n"
        << "trees = 100\n"
        << "setup = four_class\n"
        << "learner = rf\n"
        << "lda_topics = 5\n"
        << "lda_batch = 256\n"
        << "lda_kappa = 0.6\n"
        << "lda_tau0 = 1\n"
        << "lda_epochs = 10\n"
        << "window_start = " << bundle.window_start << "\n"
        << "window_end = " << bundle.now_epoch << "\n"
        << "now_epoch = " << bundle.now_epoch << "\n";
    io::write_text(dir / "pipeline.cfg", cfg.str());
}

}  // namespace abusekit::synth
