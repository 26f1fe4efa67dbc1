#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "abusekit/errors.hpp"
#include "abusekit/topics.hpp"

using namespace abusekit;

namespace {

// Two disjoint vocabularies, one per planted topic.
std::vector<std::vector<std::string>> planted_corpus(std::size_t docs_per_topic,
                                                     std::size_t words_per_doc, std::uint64_t seed) {
    std::vector<std::string> vocab_a, vocab_b;
    for (int i = 0; i < 30; ++i) {
        vocab_a.push_back("alpha" + std::to_string(i));
        vocab_b.push_back("beta" + std::to_string(i));
    }
    std::mt19937_64 gen(seed);
    std::vector<std::vector<std::string>> docs;
    for (std::size_t d = 0; d < 2 * docs_per_topic; ++d) {
        const auto& vocab = d % 2 == 0 ? vocab_a : vocab_b;
        std::vector<std::string> doc;
        for (std::size_t w = 0; w < words_per_doc; ++w) {
            doc.push_back(vocab[gen() % vocab.size()]);
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

double planted_purity(const std::vector<std::string>& top, const std::string& prefix) {
    double hits = 0.0;
    for (const auto& w : top) {
        if (w.rfind(prefix, 0) == 0) hits += 1.0;
    }
    return hits / static_cast<double>(top.size());
}

}  // namespace

TEST_CASE("degenerate corpus concentrates mass on the only word") {
    std::vector<std::vector<std::string>> docs(8, std::vector<std::string>(5, "word"));
    topics::LdaConfig cfg;
    cfg.n_topics = 2;
    cfg.seed = 1;
    const auto model = topics::fit_lda(docs, cfg);
    REQUIRE(model.vocabulary == std::vector<std::string>{"word"});
    for (const auto& row : model.topic_word) {
        CHECK(row[0] == doctest::Approx(1.0));
    }
}

TEST_CASE("planted topics are recovered with high top-word purity") {
    const auto docs = planted_corpus(100, 20, 5);
    topics::LdaConfig cfg;
    cfg.n_topics = 2;
    cfg.seed = 7;
    const auto model = topics::fit_lda(docs, cfg);
    const auto top = topics::top_words(model, 10);
    REQUIRE(top.size() == 2);

    const double purity_a0 = planted_purity(top[0], "alpha");
    const double purity_b0 = planted_purity(top[0], "beta");
    const double dominant0 = std::max(purity_a0, purity_b0);
    CHECK(dominant0 >= 0.8);

    // the two topics specialize to different vocabularies
    const std::string first = purity_a0 >= purity_b0 ? "beta" : "alpha";
    CHECK(planted_purity(top[1], first) >= 0.8);
}

TEST_CASE("distribution rows are simplices") {
    const auto docs = planted_corpus(30, 15, 11);
    topics::LdaConfig cfg;
    cfg.n_topics = 3;
    cfg.seed = 3;
    const auto model = topics::fit_lda(docs, cfg);
    for (const auto& row : model.topic_word) {
        double sum = 0.0;
        for (double v : row) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(std::fabs(sum - 1.0) <= 1e-9);
    }
    for (const auto& row : model.doc_topic) {
        double sum = 0.0;
        for (double v : row) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(std::fabs(sum - 1.0) <= 1e-9);
    }
}

TEST_CASE("same seed gives an identical model") {
    const auto docs = planted_corpus(20, 12, 13);
    topics::LdaConfig cfg;
    cfg.n_topics = 2;
    cfg.seed = 99;
    const auto a = topics::fit_lda(docs, cfg);
    const auto b = topics::fit_lda(docs, cfg);
    CHECK(a.topic_word == b.topic_word);
    CHECK(a.doc_topic == b.doc_topic);
}

TEST_CASE("training perplexity improves from first to last epoch") {
    const auto docs = planted_corpus(60, 15, 17);
    topics::LdaConfig cfg;
    cfg.n_topics = 2;
    cfg.seed = 23;
    const auto model = topics::fit_lda(docs, cfg);
    REQUIRE(model.epoch_perplexity.size() == static_cast<std::size_t>(cfg.epochs));
    CHECK(model.epoch_perplexity.back() < model.epoch_perplexity.front());
}

TEST_CASE("top_words ordering and tie-breaks") {
    topics::TopicModel model;
    model.vocabulary = {"a", "b"};
    model.topic_word = {{0.5, 0.5}};
    CHECK(topics::top_words(model, 1) == std::vector<std::vector<std::string>>{{"a"}});

    model.topic_word = {{0.2, 0.8}};
    CHECK(topics::top_words(model, 2) == std::vector<std::vector<std::string>>{{"b", "a"}});

    CHECK_THROWS_AS(topics::top_words(model, 3), ContractViolation);
}

TEST_CASE("vocabulary pruning and config validation") {
    // "rare" appears once and falls below min_count = 2
    std::vector<std::vector<std::string>> docs = {{"seen", "seen", "rare"}, {"seen", "seen"}};
    topics::LdaConfig cfg;
    cfg.n_topics = 2;
    const auto model = topics::fit_lda(docs, cfg);
    CHECK(model.vocabulary == std::vector<std::string>{"seen"});

    std::vector<std::vector<std::string>> only_rare = {{"once"}, {"twice"}};
    CHECK_THROWS_AS(topics::fit_lda(only_rare, cfg), ContractViolation);
    CHECK_THROWS_AS(topics::fit_lda({}, cfg), ContractViolation);

    topics::LdaConfig bad = cfg;
    bad.kappa = 0.4;
    CHECK_THROWS_AS(topics::fit_lda(docs, bad), ContractViolation);
    bad = cfg;
    bad.n_topics = 1;
    CHECK_THROWS_AS(topics::fit_lda(docs, bad), ContractViolation);
}
