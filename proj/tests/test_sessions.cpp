#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "abusekit/errors.hpp"
#include "abusekit/sessions.hpp"

using namespace abusekit;
using sessions::Label;

namespace {

corpus::Tweet at(const std::string& user, std::int64_t ts, int seq) {
    corpus::Tweet t;
    t.id = "t" + std::to_string(10000 + seq);
    t.user_id = user;
    t.timestamp = ts;
    t.text = "text";
    return t;
}

std::vector<corpus::Tweet> timeline(const std::vector<std::int64_t>& stamps) {
    std::vector<corpus::Tweet> out;
    for (std::size_t i = 0; i < stamps.size(); ++i) {
        out.push_back(at("u1", stamps[i], static_cast<int>(i)));
    }
    return out;
}

sessions::Annotation vote(const std::string& batch, const std::string& worker, Label label,
                          bool control = false, std::optional<Label> gold = std::nullopt) {
    sessions::Annotation a;
    a.batch_id = batch;
    a.worker_id = worker;
    a.label = label;
    a.is_control = control;
    a.gold = gold;
    return a;
}

}  // namespace

TEST_CASE("filter_low_activity drops users below five tweets in the window") {
    std::map<std::string, std::vector<corpus::Tweet>> users;
    users["four"] = timeline({10, 20, 30, 40});
    users["five"] = timeline({10, 20, 30, 40, 50});
    users["outside"] = timeline({10, 20, 30, 1000000, 1000001});

    const auto kept = sessions::filter_low_activity(users, 5, 0, 100);
    CHECK(kept.count("four") == 0);
    CHECK(kept.count("five") == 1);
    CHECK(kept.count("outside") == 0);

    CHECK(sessions::filter_low_activity({}, 5, 0, 100).empty());
}

TEST_CASE("build_sessions splits exactly on gaps above the threshold") {
    const std::int64_t hour = 3600;

    auto s = sessions::build_sessions(timeline({0, 3 * hour, 12 * hour}), 8 * hour);
    REQUIRE(s.size() == 2);
    CHECK(s[0].tweets.size() == 2);
    CHECK(s[1].tweets.size() == 1);
    CHECK(s[0].index == 0);
    CHECK(s[1].index == 1);

    auto single = sessions::build_sessions(timeline({42}), 8 * hour);
    REQUIRE(single.size() == 1);
    CHECK(single[0].tweets.size() == 1);

    // gaps exactly 8h stay in one session
    auto exact = sessions::build_sessions(timeline({0, 8 * hour, 16 * hour}), 8 * hour);
    CHECK(exact.size() == 1);

    CHECK_THROWS_AS(sessions::build_sessions(timeline({100, 50})), ContractViolation);
}

TEST_CASE("sessions partition the input") {
    std::mt19937_64 gen(13);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::int64_t> stamps;
        std::int64_t t = 0;
        const std::size_t n = 1 + gen() % 40;
        for (std::size_t i = 0; i < n; ++i) {
            t += static_cast<std::int64_t>(gen() % (12 * 3600));
            stamps.push_back(t);
        }
        const auto tl = timeline(stamps);
        const auto sess = sessions::build_sessions(tl, 8 * 3600);

        std::vector<corpus::Tweet> rebuilt;
        for (const auto& s : sess) {
            for (std::size_t i = 1; i < s.tweets.size(); ++i) {
                CHECK(s.tweets[i].timestamp - s.tweets[i - 1].timestamp <= 8 * 3600);
            }
            rebuilt.insert(rebuilt.end(), s.tweets.begin(), s.tweets.end());
        }
        REQUIRE(rebuilt.size() == tl.size());
        for (std::size_t i = 0; i < tl.size(); ++i) CHECK(rebuilt[i].id == tl[i].id);

        for (std::size_t i = 1; i < sess.size(); ++i) {
            CHECK(sess[i].tweets.front().timestamp - sess[i - 1].tweets.back().timestamp > 8 * 3600);
        }
    }
}

TEST_CASE("make_batches sizes") {
    auto session_of = [](std::size_t n) {
        sessions::Session s;
        s.user_id = "u1";
        s.index = 0;
        for (std::size_t i = 0; i < n; ++i) s.tweets.push_back(at("u1", static_cast<std::int64_t>(i), static_cast<int>(i)));
        return s;
    };

    CHECK(sessions::make_batches({session_of(4)}).empty());

    auto seven = sessions::make_batches({session_of(7)});
    REQUIRE(seven.size() == 1);
    CHECK(seven[0].tweets.size() == 7);

    auto big = sessions::make_batches({session_of(23)});
    REQUIRE(big.size() == 3);
    CHECK(big[0].tweets.size() == 8);
    CHECK(big[1].tweets.size() == 8);
    CHECK(big[2].tweets.size() == 7);

    // chronological order is preserved across the split
    std::vector<std::string> ids;
    for (const auto& b : big) {
        for (const auto& t : b.tweets) ids.push_back(t.id);
    }
    CHECK(std::is_sorted(ids.begin(), ids.end()));
}

TEST_CASE("every batch is 5-10 tweets on random sessions") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 200; ++trial) {
        sessions::Session s;
        s.user_id = "u1";
        const std::size_t n = gen() % 60;
        for (std::size_t i = 0; i < n; ++i) s.tweets.push_back(at("u1", static_cast<std::int64_t>(i), static_cast<int>(i)));
        const auto batches = sessions::make_batches({s});

        std::size_t covered = 0;
        for (const auto& b : batches) {
            CHECK(b.tweets.size() >= 5);
            CHECK(b.tweets.size() <= 10);
            covered += b.tweets.size();
        }
        if (n >= 5) {
            CHECK(covered == n);  // a split session's batches reassemble it
        } else {
            CHECK(batches.empty());
        }
    }
}

TEST_CASE("aggregate_annotations majority rules") {
    auto agg = sessions::aggregate_annotations(
        "b1", {vote("b1", "w1", Label::bully), vote("b1", "w2", Label::bully),
               vote("b1", "w3", Label::bully), vote("b1", "w4", Label::spammer),
               vote("b1", "w5", Label::normal)});
    CHECK(agg.final_label == Label::bully);
    CHECK(agg.strength == sessions::MajorityStrength::basic);

    auto unanimous = sessions::aggregate_annotations(
        "b2", {vote("b2", "w1", Label::normal), vote("b2", "w2", Label::normal),
               vote("b2", "w3", Label::normal), vote("b2", "w4", Label::normal),
               vote("b2", "w5", Label::normal)});
    CHECK(unanimous.final_label == Label::normal);
    CHECK(unanimous.strength == sessions::MajorityStrength::absolute);

    auto split = sessions::aggregate_annotations(
        "b3", {vote("b3", "w1", Label::bully), vote("b3", "w2", Label::bully),
               vote("b3", "w3", Label::spammer), vote("b3", "w4", Label::spammer),
               vote("b3", "w5", Label::normal)});
    CHECK_FALSE(split.final_label.has_value());
    CHECK(split.strength == sessions::MajorityStrength::none);

    CHECK_THROWS_AS(sessions::aggregate_annotations("b4", {vote("b4", "w1", Label::bully)}),
                    ContractViolation);

    // control votes are not counted
    auto with_control = sessions::aggregate_annotations(
        "b5", {vote("b5", "w1", Label::normal), vote("b5", "w2", Label::normal),
               vote("b5", "w3", Label::normal), vote("b5", "w4", Label::normal),
               vote("b5", "w5", Label::bully), vote("b5", "w6", Label::bully, true, Label::bully)});
    CHECK(with_control.final_label == Label::normal);
    CHECK(with_control.strength == sessions::MajorityStrength::strong);
}

TEST_CASE("aggregate_annotations is permutation-invariant") {
    std::vector<sessions::Annotation> votes = {
        vote("b", "w1", Label::aggressor), vote("b", "w2", Label::aggressor),
        vote("b", "w3", Label::aggressor), vote("b", "w4", Label::normal),
        vote("b", "w5", Label::spammer)};
    const auto base = sessions::aggregate_annotations("b", votes);
    std::sort(votes.begin(), votes.end(),
              [](const auto& a, const auto& b) { return a.worker_id > b.worker_id; });
    const auto shuffled = sessions::aggregate_annotations("b", votes);
    CHECK(base.final_label == shuffled.final_label);
    CHECK(base.strength == shuffled.strength);
    CHECK(base.votes == shuffled.votes);
}

TEST_CASE("user_label majority with severity tie-break") {
    CHECK(sessions::user_label({Label::bully}) == Label::bully);
    CHECK(sessions::user_label({Label::normal, Label::normal, Label::spammer}) == Label::normal);
    CHECK(sessions::user_label({Label::bully, Label::aggressor}) == Label::bully);

    // all two-batch combinations: the majority (or the more severe on ties)
    const std::vector<Label> all = {Label::bully, Label::aggressor, Label::spammer, Label::normal};
    for (Label a : all) {
        for (Label b : all) {
            const Label got = sessions::user_label({a, b});
            const Label expected =
                (a == b) ? a : (sessions::severity_rank(a) < sessions::severity_rank(b) ? a : b);
            CHECK(got == expected);
        }
    }

    CHECK_THROWS_AS(sessions::user_label({}), ContractViolation);
}

TEST_CASE("control_accuracy overall and per label") {
    std::vector<sessions::Annotation> controls;
    controls.push_back(vote("c1", "w1", Label::bully, true, Label::bully));
    controls.push_back(vote("c2", "w2", Label::normal, true, Label::bully));
    controls.push_back(vote("c3", "w3", Label::spammer, true, Label::spammer));
    const auto acc = sessions::control_accuracy(controls);
    CHECK(acc.overall == doctest::Approx(2.0 / 3.0));
    CHECK(acc.per_label.at(Label::bully) == doctest::Approx(0.5));
    CHECK(acc.per_label.at(Label::spammer) == doctest::Approx(1.0));
}

TEST_CASE("control accuracy mirrors the observed per-class mix") {
    // 100 spam controls at 84%, 50 bully at 54%, 200 aggressive at 61%
    // -> overall 220/350 = 0.6686
    std::vector<sessions::Annotation> controls;
    auto push = [&controls](Label gold, int total, int correct) {
        for (int i = 0; i < total; ++i) {
            const Label given = i < correct ? gold : Label::normal;
            controls.push_back(vote("c", "w" + std::to_string(controls.size()), given, true, gold));
        }
    };
    push(Label::spammer, 100, 84);
    push(Label::bully, 50, 27);
    push(Label::aggressor, 200, 122);

    const auto acc = sessions::control_accuracy(controls);
    CHECK(acc.per_label.at(Label::spammer) == doctest::Approx(0.84));
    CHECK(acc.per_label.at(Label::bully) == doctest::Approx(0.54));
    CHECK(acc.per_label.at(Label::aggressor) == doctest::Approx(0.61));
    CHECK(std::fabs(acc.overall - 0.67) < 0.005);
}

TEST_CASE("annotation csv round trip") {
    const auto path = std::filesystem::temp_directory_path() / "abusekit_annotations.csv";
    std::vector<sessions::Annotation> rows = {
        vote("u1:0", "w1", Label::bully),
        vote("u1:0", "w2", Label::normal),
        vote("ctrl:0", "w3", Label::spammer, true, Label::spammer),
    };
    sessions::write_annotations_csv(path, rows);
    const auto loaded = sessions::load_annotations_csv(path);
    REQUIRE(loaded.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(loaded[i].batch_id == rows[i].batch_id);
        CHECK(loaded[i].worker_id == rows[i].worker_id);
        CHECK(loaded[i].label == rows[i].label);
        CHECK(loaded[i].is_control == rows[i].is_control);
        CHECK(loaded[i].gold == rows[i].gold);
    }
}
