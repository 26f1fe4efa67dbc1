#include "abusekit/topics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "abusekit/errors.hpp"
#include "abusekit/rng.hpp"

namespace abusekit::topics {

namespace {

double digamma(double x) {
    double result = 0.0;
    while (x < 6.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv -
              inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
    return result;
}

struct BagOfWords {
    std::vector<std::size_t> word_ids;
    std::vector<double> counts;
    double total = 0.0;
};

// E[log beta_kw] for one topic row of lambda.
std::vector<double> expected_log(const std::vector<double>& row) {
    double sum = 0.0;
    for (double v : row) sum += v;
    const double psi_sum = digamma(sum);
    std::vector<double> out(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) out[i] = digamma(row[i]) - psi_sum;
    return out;
}

// Variational E-step for one document; returns gamma and fills phi-weighted
// sufficient statistics into sstats when provided.
std::vector<double> infer_doc(const BagOfWords& doc, const std::vector<std::vector<double>>& elog_beta,
                              double alpha, std::size_t n_topics,
                              std::vector<std::vector<double>>* sstats) {
    const std::size_t k_count = n_topics;
    std::vector<double> gamma(k_count, 1.0);
    std::vector<double> elog_theta(k_count);

    std::vector<double> phi(k_count);
    for (int round = 0; round < 100; ++round) {
        {
            double gsum = 0.0;
            for (double v : gamma) gsum += v;
            const double psi_sum = digamma(gsum);
            for (std::size_t k = 0; k < k_count; ++k) elog_theta[k] = digamma(gamma[k]) - psi_sum;
        }

        std::vector<double> next(k_count, alpha);
        for (std::size_t w = 0; w < doc.word_ids.size(); ++w) {
            const std::size_t word = doc.word_ids[w];
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < k_count; ++k) {
                phi[k] = elog_theta[k] + elog_beta[k][word];
                best = std::max(best, phi[k]);
            }
            double norm = 0.0;
            for (std::size_t k = 0; k < k_count; ++k) {
                phi[k] = std::exp(phi[k] - best);
                norm += phi[k];
            }
            for (std::size_t k = 0; k < k_count; ++k) {
                next[k] += doc.counts[w] * phi[k] / norm;
            }
        }

        double change = 0.0;
        for (std::size_t k = 0; k < k_count; ++k) change += std::fabs(next[k] - gamma[k]);
        gamma = std::move(next);
        if (change / static_cast<double>(k_count) < 1e-3) break;
    }

    if (sstats) {
        // Recompute phi under the final gamma and accumulate n_dw * phi.
        double gsum = 0.0;
        for (double v : gamma) gsum += v;
        const double psi_sum = digamma(gsum);
        for (std::size_t k = 0; k < k_count; ++k) elog_theta[k] = digamma(gamma[k]) - psi_sum;
        for (std::size_t w = 0; w < doc.word_ids.size(); ++w) {
            const std::size_t word = doc.word_ids[w];
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < k_count; ++k) {
                phi[k] = elog_theta[k] + elog_beta[k][word];
                best = std::max(best, phi[k]);
            }
            double norm = 0.0;
            for (std::size_t k = 0; k < k_count; ++k) {
                phi[k] = std::exp(phi[k] - best);
                norm += phi[k];
            }
            for (std::size_t k = 0; k < k_count; ++k) {
                (*sstats)[k][word] += doc.counts[w] * phi[k] / norm;
            }
        }
    }
    return gamma;
}

std::vector<std::vector<double>> normalized_rows(const std::vector<std::vector<double>>& m) {
    std::vector<std::vector<double>> out = m;
    for (auto& row : out) {
        double sum = 0.0;
        for (double v : row) sum += v;
        if (sum <= 0.0) continue;
        for (double& v : row) v /= sum;
        // squeeze accumulated rounding into the largest entry
        double total = std::accumulate(row.begin(), row.end(), 0.0);
        auto largest = std::max_element(row.begin(), row.end());
        *largest += 1.0 - total;
    }
    return out;
}

double corpus_perplexity(const std::vector<BagOfWords>& docs,
                         const std::vector<std::vector<double>>& lambda, double alpha,
                         std::size_t n_topics) {
    const auto beta = normalized_rows(lambda);
    std::vector<std::vector<double>> elog_beta(lambda.size());
    for (std::size_t k = 0; k < lambda.size(); ++k) elog_beta[k] = expected_log(lambda[k]);

    double log_likelihood = 0.0;
    double token_count = 0.0;
    for (const auto& doc : docs) {
        auto gamma = infer_doc(doc, elog_beta, alpha, n_topics, nullptr);
        double gsum = 0.0;
        for (double v : gamma) gsum += v;
        for (std::size_t w = 0; w < doc.word_ids.size(); ++w) {
            double p = 0.0;
            for (std::size_t k = 0; k < n_topics; ++k) {
                p += gamma[k] / gsum * beta[k][doc.word_ids[w]];
            }
            log_likelihood += doc.counts[w] * std::log(std::max(p, 1e-300));
        }
        token_count += doc.total;
    }
    if (token_count == 0.0) return 0.0;
    return std::exp(-log_likelihood / token_count);
}

}  // namespace

TopicModel fit_lda(const std::vector<std::vector<std::string>>& docs, const LdaConfig& cfg) {
    if (docs.empty()) throw ContractViolation("fit_lda: empty corpus");
    if (cfg.n_topics < 2) throw ContractViolation("fit_lda: need at least 2 topics");
    if (!(cfg.kappa > 0.5 && cfg.kappa <= 1.0)) throw ContractViolation("fit_lda: kappa outside (0.5, 1]");
    if (cfg.tau0 < 0.0) throw ContractViolation("fit_lda: negative tau0");

    // Vocabulary: tokens occurring at least min_count times, sorted.
    std::map<std::string, std::size_t> term_counts;
    for (const auto& doc : docs) {
        for (const auto& tok : doc) ++term_counts[tok];
    }
    TopicModel model;
    std::map<std::string, std::size_t> vocab_index;
    for (const auto& [term, count] : term_counts) {
        if (count >= static_cast<std::size_t>(cfg.min_count)) {
            vocab_index[term] = model.vocabulary.size();
            model.vocabulary.push_back(term);
        }
    }
    if (model.vocabulary.empty()) throw ContractViolation("fit_lda: empty vocabulary after pruning");

    const std::size_t v_count = model.vocabulary.size();
    const std::size_t k_count = static_cast<std::size_t>(cfg.n_topics);
    const std::size_t d_count = docs.size();
    const double alpha = 1.0 / static_cast<double>(cfg.n_topics);
    const double eta = 1.0 / static_cast<double>(cfg.n_topics);

    std::vector<BagOfWords> bags(d_count);
    for (std::size_t d = 0; d < d_count; ++d) {
        std::map<std::size_t, double> counts;
        for (const auto& tok : docs[d]) {
            auto it = vocab_index.find(tok);
            if (it != vocab_index.end()) counts[it->second] += 1.0;
        }
        for (const auto& [w, c] : counts) {
            bags[d].word_ids.push_back(w);
            bags[d].counts.push_back(c);
            bags[d].total += c;
        }
    }

    std::mt19937_64 gen(cfg.seed);
    std::gamma_distribution<double> init_gamma(100.0, 0.01);
    std::vector<std::vector<double>> lambda(k_count, std::vector<double>(v_count));
    for (auto& row : lambda) {
        for (double& v : row) v = init_gamma(gen);
    }

    const std::size_t batch_size = std::min<std::size_t>(static_cast<std::size_t>(cfg.batch_size), d_count);
    std::vector<std::size_t> order(d_count);
    std::iota(order.begin(), order.end(), 0);

    long long step = 0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng::shuffle(order, gen);
        for (std::size_t start = 0; start < d_count; start += batch_size) {
            const std::size_t end = std::min(start + batch_size, d_count);

            std::vector<std::vector<double>> elog_beta(k_count);
            for (std::size_t k = 0; k < k_count; ++k) elog_beta[k] = expected_log(lambda[k]);

            std::vector<std::vector<double>> sstats(k_count, std::vector<double>(v_count, 0.0));
            for (std::size_t i = start; i < end; ++i) {
                infer_doc(bags[order[i]], elog_beta, alpha, k_count, &sstats);
            }

            const double rho = std::pow(cfg.tau0 + static_cast<double>(step), -cfg.kappa);
            const double scale = static_cast<double>(d_count) / static_cast<double>(end - start);
            for (std::size_t k = 0; k < k_count; ++k) {
                for (std::size_t w = 0; w < v_count; ++w) {
                    const double target = eta + scale * sstats[k][w];
                    lambda[k][w] = (1.0 - rho) * lambda[k][w] + rho * target;
                }
            }
            ++step;
        }
        model.epoch_perplexity.push_back(corpus_perplexity(bags, lambda, alpha, k_count));
    }

    model.topic_word = normalized_rows(lambda);

    std::vector<std::vector<double>> elog_beta(k_count);
    for (std::size_t k = 0; k < k_count; ++k) elog_beta[k] = expected_log(lambda[k]);
    model.doc_topic.resize(d_count);
    std::vector<std::vector<double>> gamma_rows(d_count);
    for (std::size_t d = 0; d < d_count; ++d) {
        gamma_rows[d] = infer_doc(bags[d], elog_beta, alpha, k_count, nullptr);
    }
    model.doc_topic = normalized_rows(gamma_rows);
    return model;
}

std::vector<std::vector<std::string>> top_words(const TopicModel& model, std::size_t k) {
    if (k > model.vocabulary.size()) throw ContractViolation("top_words: k exceeds vocabulary size");

    std::vector<std::vector<std::string>> out;
    out.reserve(model.topic_word.size());
    for (const auto& row : model.topic_word) {
        std::vector<std::size_t> idx(row.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (row[a] != row[b]) return row[a] > row[b];
            return model.vocabulary[a] < model.vocabulary[b];
        });
        std::vector<std::string> words;
        words.reserve(k);
        for (std::size_t i = 0; i < k; ++i) words.push_back(model.vocabulary[idx[i]]);
        out.push_back(std::move(words));
    }
    return out;
}

}  // namespace abusekit::topics
