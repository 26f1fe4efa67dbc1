#include <filesystem>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <unordered_set>

#include <CLI11.hpp>
#include <json.hpp>

#include "abusekit/corpus.hpp"
#include "abusekit/errors.hpp"
#include "abusekit/graph.hpp"
#include "abusekit/io.hpp"
#include "abusekit/lexfeatures.hpp"
#include "abusekit/ml.hpp"
#include "abusekit/pipeline.hpp"
#include "abusekit/preprocess.hpp"
#include "abusekit/sessions.hpp"
#include "abusekit/stats.hpp"
#include "abusekit/status.hpp"
#include "abusekit/synth.hpp"
#include "abusekit/text.hpp"
#include "abusekit/topics.hpp"

namespace {

using namespace abusekit;

std::vector<double> load_column(const std::filesystem::path& path) {
    std::vector<double> values;
    for (const auto& line : io::read_lines(path)) {
        if (line.empty()) continue;
        try {
            values.push_back(std::stod(line));
        } catch (const std::exception&) {
            // header or junk line; skip
        }
    }
    return values;
}

std::map<std::string, std::string> load_label_csv(const std::filesystem::path& path) {
    std::map<std::string, std::string> labels;
    bool first = true;
    for (const auto& line : io::read_lines(path)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("user_id,", 0) == 0) continue;
        }
        auto fields = io::split_csv(line);
        if (fields.size() >= 2) labels[fields[0]] = fields[1];
    }
    return labels;
}

int cmd_corpus_filter(const std::string& seeds_csv, std::size_t top_n, std::int64_t period_secs,
                      const std::string& in, const std::string& out) {
    corpus::KeywordList list;
    std::stringstream ss(seeds_csv);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (!part.empty()) list.seeds.insert(text::to_lower(part));
    }
    list.n_top = top_n;
    list.period_secs = period_secs;

    const auto loaded = corpus::load_records(in, false);

    // One pass per period: update the dynamic list from the terms of the
    // previous period, then filter.
    std::vector<corpus::Tweet> kept;
    std::vector<corpus::Tweet> period;
    std::int64_t period_end = 0;
    for (const auto& t : loaded.tweets) {
        if (period_end == 0) period_end = t.timestamp + period_secs;
        if (t.timestamp >= period_end) {
            list = corpus::update_keyword_list(list, corpus::count_terms(period));
            period.clear();
            period_end = t.timestamp + period_secs;
        }
        period.push_back(t);
        if (!corpus::filter_by_keywords({t}, list).empty()) kept.push_back(t);
    }
    corpus::write_records(out, kept, loaded.users);
    std::cout << "kept " << kept.size() << " of " << loaded.tweets.size() << " tweets\n";
    return 0;
}

int cmd_preprocess(const std::string& stopwords, double hashtag_cutoff, double sim_cutoff,
                   const std::string& in, const std::string& out, const std::string& verdicts) {
    const auto stop = preprocess::load_stopwords(stopwords);
    const auto loaded = corpus::load_records(in, false);
    const auto result =
        preprocess::spam_filter(corpus::group_by_user(loaded.tweets), stop, {hashtag_cutoff, sim_cutoff});

    std::vector<corpus::Tweet> kept_tweets;
    for (const auto& t : loaded.tweets) {
        if (result.kept.count(t.user_id)) kept_tweets.push_back(t);
    }
    std::vector<corpus::UserProfile> kept_users;
    for (const auto& u : loaded.users) {
        if (result.kept.count(u.user_id) || !corpus::group_by_user(loaded.tweets).count(u.user_id)) {
            kept_users.push_back(u);
        }
    }
    corpus::write_records(out, kept_tweets, kept_users);

    std::string csv = "user_id,avg_hashtags,avg_sim,is_spam,reason\n";
    for (const auto& v : result.verdicts) {
        csv += v.user_id + "," + io::format_double(v.avg_hashtags) + "," +
               io::format_double(v.avg_intra_similarity) + "," + (v.is_spam ? "1" : "0") + "," +
               std::string(preprocess::to_string(v.reason)) + "\n";
    }
    io::write_text(verdicts, csv);
    std::cout << "kept " << result.kept.size() << " users\n";
    return 0;
}

int cmd_sessions_build(double t_l_hours, std::size_t min_tweets, std::int64_t window_start,
                       std::int64_t window_end, const std::string& in, const std::string& out) {
    const auto loaded = corpus::load_records(in, false);
    auto grouped = corpus::group_by_user(loaded.tweets);
    if (window_end > 0) {
        grouped = sessions::filter_low_activity(grouped, min_tweets, window_start, window_end);
    }
    const auto all = sessions::sessions_by_user(grouped, static_cast<std::int64_t>(t_l_hours * 3600));
    const auto batches = sessions::make_batches(all);
    sessions::write_batches(out, batches);
    std::cout << all.size() << " sessions, " << batches.size() << " batches\n";
    return 0;
}

int cmd_sessions_aggregate(const std::string& annotations_path, const std::string& out,
                           const std::string& user_labels_out) {
    const auto annotations = sessions::load_annotations_csv(annotations_path);
    std::map<std::string, std::vector<sessions::Annotation>> by_batch;
    std::vector<sessions::Annotation> controls;
    for (const auto& a : annotations) {
        if (a.is_control) {
            controls.push_back(a);
        } else {
            by_batch[a.batch_id].push_back(a);
        }
    }

    std::string csv = "batch_id,final_label,strength\n";
    std::map<std::string, std::vector<sessions::Label>> per_user;
    for (const auto& [batch_id, votes] : by_batch) {
        const auto agg = sessions::aggregate_annotations(batch_id, votes);
        csv += batch_id + ",";
        csv += agg.final_label ? std::string(sessions::to_string(*agg.final_label)) : "none";
        csv += "," + std::string(sessions::to_string(agg.strength)) + "\n";
        if (agg.final_label) {
            const auto colon = batch_id.find(':');
            per_user[colon == std::string::npos ? batch_id : batch_id.substr(0, colon)].push_back(
                *agg.final_label);
        }
    }
    io::write_text(out, csv);

    if (!user_labels_out.empty()) {
        std::string labels_csv = "user_id,label\n";
        for (const auto& [user_id, labels] : per_user) {
            labels_csv += user_id + "," +
                          std::string(sessions::to_string(sessions::user_label(labels))) + "\n";
        }
        io::write_text(user_labels_out, labels_csv);
    }
    if (!controls.empty()) {
        const auto acc = sessions::control_accuracy(controls);
        std::cout << "control accuracy: " << acc.overall << " over " << acc.total << " cases\n";
    }
    std::cout << by_batch.size() << " batches aggregated\n";
    return 0;
}

int cmd_features_extract(const std::string& lexicons, const std::string& embeddings,
                         const std::string& exclude, const std::string& in,
                         const std::string& stopwords, const std::string& labels_path,
                         const std::string& edges, std::int64_t now, const std::string& out) {
    auto lex = feats::load_lexicons(lexicons);
    if (!embeddings.empty()) feats::load_embeddings(lex, embeddings);
    const auto stop = stopwords.empty() ? std::unordered_set<std::string>{}
                                        : preprocess::load_stopwords(stopwords);

    std::set<std::string> exclusions;
    if (exclude == "paper-default") {
        exclusions = feats::default_exclusions();
    } else if (!exclude.empty() && exclude != "none") {
        std::stringstream ss(exclude);
        std::string part;
        while (std::getline(ss, part, ',')) {
            if (!part.empty()) exclusions.insert(part);
        }
    }

    const auto loaded = corpus::load_records(in, false);
    auto grouped = corpus::group_by_user(loaded.tweets);
    std::map<std::string, corpus::UserProfile> profiles;
    for (const auto& u : loaded.users) profiles[u.user_id] = u;
    std::map<std::string, std::string> labels;
    if (!labels_path.empty()) labels = load_label_csv(labels_path);

    graph::CentralityScores scores;
    std::map<std::string, std::size_t> score_index;
    bool have_graph = false;
    if (!edges.empty()) {
        const auto g = graph::SocialGraph::from_edges(graph::load_edges(edges));
        scores = graph::analyze(g);
        for (std::size_t i = 0; i < scores.ids.size(); ++i) score_index[scores.ids[i]] = i;
        have_graph = true;
    }

    std::int64_t now_epoch = now;
    if (now_epoch == 0) {
        for (const auto& t : loaded.tweets) now_epoch = std::max(now_epoch, t.timestamp);
    }

    ml::Dataset ds;
    for (const auto& [user_id, tweets] : grouped) {
        auto prof = profiles.find(user_id);
        if (prof == profiles.end()) continue;

        const auto cleaned = preprocess::clean_tweets(tweets, stop);
        const auto tf = feats::text_features(tweets, cleaned, lex);
        std::map<std::string, std::vector<corpus::Tweet>> one{{user_id, tweets}};
        const auto user_sessions = sessions::sessions_by_user(one);
        const auto uf = feats::user_features(prof->second, tweets, user_sessions, now_epoch);

        feats::NetworkFeatures nf;
        nf.followers = static_cast<double>(prof->second.followers_count);
        nf.friends = static_cast<double>(prof->second.friends_count);
        nf.followers_friends_ratio = nf.followers / std::max(nf.friends, 1.0);
        if (have_graph) {
            auto idx = score_index.find(user_id);
            if (idx != score_index.end()) {
                const auto i = idx->second;
                nf.hubs = scores.hub[i];
                nf.authority = scores.authority[i];
                nf.clustering_coefficient = scores.clustering[i];
                nf.reciprocity = scores.reciprocity[i];
                nf.eigenvector = scores.eigenvector[i];
                nf.closeness = scores.closeness[i];
                nf.louvain_modularity = scores.modularity;
            }
        }

        const auto fv = feats::assemble_vector(uf, tf, nf, exclusions, lex.embedding_dim);
        if (ds.feature_names.empty()) ds.feature_names = fv.column_names;
        ds.x.push_back(fv.values);
        auto lbl = labels.find(user_id);
        ds.y.push_back(lbl == labels.end() ? "unlabeled" : lbl->second);
    }
    ml::write_dataset_csv(out, ds);
    std::cout << ds.x.size() << " feature rows, " << ds.feature_names.size() << " columns\n";
    return 0;
}

int cmd_graph_analyze(const std::string& edges, double tol, int max_iter, const std::string& out) {
    const auto g = graph::SocialGraph::from_edges(graph::load_edges(edges));
    const auto scores = graph::analyze(g, tol, max_iter);
    std::string csv =
        "user_id,in_degree,out_degree,ratio,reciprocity,hub,authority,eigenvector,closeness,"
        "clustering,community\n";
    for (std::size_t i = 0; i < scores.ids.size(); ++i) {
        csv += scores.ids[i] + "," + io::format_double(scores.in_degree[i]) + "," +
               io::format_double(scores.out_degree[i]) + "," + io::format_double(scores.ratio[i]) +
               "," + io::format_double(scores.reciprocity[i]) + "," + io::format_double(scores.hub[i]) +
               "," + io::format_double(scores.authority[i]) + "," +
               io::format_double(scores.eigenvector[i]) + "," + io::format_double(scores.closeness[i]) +
               "," + io::format_double(scores.clustering[i]) + "," +
               std::to_string(scores.community[i]) + "\n";
    }
    io::write_text(out, csv);
    std::cout << g.node_count() << " nodes, " << g.edge_count() << " edges, modularity "
              << scores.modularity << "\n";
    return 0;
}

int cmd_stats_ks(const std::string& a_path, const std::string& b_path, double alpha) {
    const auto result = stats::ks_two_sample(load_column(a_path), load_column(b_path), alpha);
    nlohmann::json j;
    j["d_statistic"] = result.d_statistic;
    j["n"] = result.n;
    j["m"] = result.m;
    j["alpha"] = result.alpha;
    j["critical_value"] = result.critical_value;
    j["reject_null"] = result.reject_null;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_stats_kappa(const std::string& ratings_path) {
    std::vector<std::vector<int>> ratings;
    bool first = true;
    for (const auto& line : io::read_lines(ratings_path)) {
        if (line.empty()) continue;
        auto fields = io::split_csv(line);
        std::vector<int> row;
        bool numeric = true;
        for (const auto& f : fields) {
            try {
                row.push_back(std::stoi(f));
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
        }
        if (!numeric && first) {
            first = false;
            continue;  // header
        }
        first = false;
        if (numeric) ratings.push_back(std::move(row));
    }
    const auto result = stats::fleiss_kappa(ratings);
    nlohmann::json j;
    j["kappa"] = result.kappa;
    j["p_a"] = result.p_a;
    j["p_e"] = result.p_e;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_topics_fit(int k, int batch, double kappa, double tau0, int epochs, std::uint64_t seed,
                   const std::string& in, const std::string& out_dir) {
    std::vector<std::vector<std::string>> docs;
    for (const auto& line : io::read_lines(in)) {
        if (line.empty()) continue;
        docs.push_back(text::whitespace_split(line));
    }
    topics::LdaConfig cfg;
    cfg.n_topics = k;
    cfg.batch_size = batch;
    cfg.kappa = kappa;
    cfg.tau0 = tau0;
    cfg.epochs = epochs;
    cfg.seed = seed;
    const auto model = topics::fit_lda(docs, cfg);

    const std::filesystem::path dir(out_dir);
    std::string vocab;
    for (const auto& term : model.vocabulary) vocab += term + "\n";
    io::write_text(dir / "vocabulary.txt", vocab);

    auto write_matrix = [&dir](const std::string& name, const std::vector<std::vector<double>>& m) {
        std::string csv;
        for (const auto& row : m) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) csv.push_back(',');
                csv += io::format_double(row[i]);
            }
            csv.push_back('\n');
        }
        io::write_text(dir / name, csv);
    };
    write_matrix("topic_word.csv", model.topic_word);
    write_matrix("doc_topic.csv", model.doc_topic);

    const auto words = topics::top_words(model, std::min<std::size_t>(10, model.vocabulary.size()));
    std::string top;
    for (std::size_t t = 0; t < words.size(); ++t) {
        top += std::to_string(t + 1);
        for (const auto& w : words[t]) top += " " + w;
        top += "\n";
    }
    io::write_text(dir / "top_words.txt", top);
    std::cout << "fitted " << k << " topics over " << model.vocabulary.size() << " terms\n";
    return 0;
}

int cmd_ml_run(const std::string& setup, const std::string& learner, int repeats, int folds,
               std::uint64_t seed, int trees, const std::string& in, const std::string& out,
               bool with_ranking) {
    const auto ds = ml::load_dataset_csv(in);
    ml::LearnerFactory factory;
    if (learner == "nb") {
        factory = [](const ml::Dataset& d, std::uint64_t) { return ml::train_nb(d); };
    } else if (learner == "rf") {
        factory = [trees](const ml::Dataset& d, std::uint64_t s) {
            return ml::train_rf(d, {.n_trees = trees, .max_depth = 0, .seed = s});
        };
    } else if (learner == "ensemble") {
        factory = [](const ml::Dataset& d, std::uint64_t s) { return ml::train_default_ensemble(d, s); };
    } else {
        throw ConfigError("unknown learner: " + learner);
    }

    auto setup_ds = ml::apply_setup(ds, ml::setup_from_string(setup));
    auto report = ml::repeated_cv(setup_ds, factory, repeats, folds, seed);
    if (with_ranking) {
        auto ranking = ml::info_gain_ranking(setup_ds);
        if (ranking.size() > 12) ranking.resize(12);
        report.feature_ranking = std::move(ranking);
    }
    io::write_text(out, report.to_json().dump(2) + "\n");
    std::cout << report.render_text();
    return 0;
}

int cmd_status_fetch(const std::string& provider, const std::string& in, const std::string& codes,
                     const std::string& base_url, const std::string& snapshot,
                     std::size_t max_in_flight, const std::string& out) {
    std::vector<std::string> ids;
    for (const auto& line : io::read_lines(in)) {
        if (!line.empty() && line != "user_id") ids.push_back(line);
    }
    std::unique_ptr<status::StatusProvider> p;
    if (provider == "mock") {
        p = std::make_unique<status::MockStatusProvider>(codes);
    } else if (provider == "live") {
        p = std::make_unique<status::HttpStatusProvider>(base_url);
    } else {
        throw ConfigError("unknown provider: " + provider);
    }
    const auto statuses = status::fetch_statuses(*p, ids, snapshot, max_in_flight);
    status::write_status_csv(out, statuses);
    std::cout << statuses.size() << " statuses fetched\n";
    return 0;
}

int cmd_status_compare(const std::vector<std::string>& snapshot_specs, const std::string& labels_path,
                       const std::string& out) {
    const auto labels = load_label_csv(labels_path);
    std::vector<std::vector<status::AccountStatus>> snapshots;
    for (const auto& spec : snapshot_specs) {
        const auto colon = spec.find(':');
        if (colon == std::string::npos) throw ConfigError("snapshot spec must be label:path");
        snapshots.push_back(status::load_status_csv(spec.substr(colon + 1), spec.substr(0, colon)));
    }
    const auto diff = status::snapshot_compare(snapshots, labels);

    nlohmann::json j;
    j["snapshots"] = diff.snapshots;
    for (const auto& [label, per_snapshot] : diff.shares) {
        for (const auto& [snap, share] : per_snapshot) {
            j["shares"][label][snap] = {{"active", share.active},
                                        {"deleted", share.deleted},
                                        {"suspended", share.suspended}};
        }
    }
    for (const auto& [label, deltas] : diff.deltas) {
        for (const auto& d : deltas) {
            j["deltas"][label].push_back(
                {{"active", d.active}, {"deleted", d.deleted}, {"suspended", d.suspended}});
        }
    }
    io::write_text(out, j.dump(2) + "\n");
    std::cout << "compared " << snapshots.size() << " snapshots\n";
    return 0;
}

int cmd_synth(std::uint64_t seed, const std::string& out_dir, const std::string& counts_spec,
              int blatant) {
    synth::SynthConfig cfg;
    cfg.seed = seed;
    cfg.blatant_spammers = blatant;
    if (!counts_spec.empty()) {
        cfg.class_counts.clear();
        std::stringstream ss(counts_spec);
        std::string part;
        while (std::getline(ss, part, ',')) {
            const auto eq = part.find('=');
            if (eq == std::string::npos) throw ConfigError("counts spec must be label=count,...");
            const auto label = sessions::label_from_string(part.substr(0, eq));
            if (!label) throw ConfigError("unknown label in counts: " + part);
            cfg.class_counts[*label] = std::stoi(part.substr(eq + 1));
        }
    }
    const auto bundle = synth::generate(cfg);
    synth::write_bundle(bundle, out_dir);
    std::cout << "generated " << bundle.gold_labels.size() << " labeled users, "
              << bundle.tweets.size() << " tweets -> " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"abusive-behavior detection pipeline"};
    app.require_subcommand(1);

    std::string log_level = "info";
    app.add_option("--log-level", log_level, "quiet|info");

    // corpus
    auto* corpus_cmd = app.add_subcommand("corpus", "corpus ingestion and keyword filtering");
    auto* corpus_filter = corpus_cmd->add_subcommand("filter", "keyword-driven collection filter");
    std::string seeds, cf_in, cf_out;
    std::size_t top_n = 10;
    std::int64_t period_secs = 86400;
    corpus_filter->add_option("--seeds", seeds, "comma-separated seed terms")->required();
    corpus_filter->add_option("--top-n", top_n, "dynamic list size");
    corpus_filter->add_option("--period-secs", period_secs, "dynamic update period");
    corpus_filter->add_option("--in", cf_in)->required();
    corpus_filter->add_option("--out", cf_out)->required();

    // preprocess
    auto* pre_cmd = app.add_subcommand("preprocess", "cleaning and spam-user removal");
    std::string pp_stop, pp_in, pp_out, pp_verdicts;
    double hashtag_cutoff = 5.0, sim_cutoff = 0.8;
    pre_cmd->add_option("--stopwords", pp_stop)->required();
    pre_cmd->add_option("--hashtag-cutoff", hashtag_cutoff);
    pre_cmd->add_option("--sim-cutoff", sim_cutoff);
    pre_cmd->add_option("--in", pp_in)->required();
    pre_cmd->add_option("--out", pp_out)->required();
    pre_cmd->add_option("--verdicts", pp_verdicts)->required();

    // sessions
    auto* ses_cmd = app.add_subcommand("sessions", "sessionization and label aggregation");
    auto* ses_build = ses_cmd->add_subcommand("build", "build sessions and batches");
    double t_l_hours = 8.0;
    std::size_t min_tweets = 5;
    std::int64_t win_start = 0, win_end = 0;
    std::string sb_in, sb_out;
    ses_build->add_option("--t-l-hours", t_l_hours);
    ses_build->add_option("--min-tweets", min_tweets);
    ses_build->add_option("--window-start", win_start);
    ses_build->add_option("--window-end", win_end);
    ses_build->add_option("--in", sb_in)->required();
    ses_build->add_option("--out", sb_out)->required();
    auto* ses_agg = ses_cmd->add_subcommand("aggregate", "aggregate crowd labels");
    std::string sa_annotations, sa_out, sa_labels;
    ses_agg->add_option("--annotations", sa_annotations)->required();
    ses_agg->add_option("--out", sa_out)->required();
    ses_agg->add_option("--user-labels", sa_labels);

    // features
    auto* feat_cmd = app.add_subcommand("features", "feature extraction");
    auto* feat_extract = feat_cmd->add_subcommand("extract", "assemble per-user feature vectors");
    std::string fx_lex, fx_emb, fx_exclude = "paper-default", fx_in, fx_stop, fx_labels, fx_edges,
                fx_out;
    std::int64_t fx_now = 0;
    feat_extract->add_option("--lexicons", fx_lex)->required();
    feat_extract->add_option("--embeddings", fx_emb);
    feat_extract->add_option("--exclude", fx_exclude, "comma list, 'paper-default', or 'none'");
    feat_extract->add_option("--in", fx_in)->required();
    feat_extract->add_option("--stopwords", fx_stop);
    feat_extract->add_option("--labels", fx_labels, "user_id,label csv");
    feat_extract->add_option("--edges", fx_edges);
    feat_extract->add_option("--now", fx_now, "feature-extraction clock (epoch secs)");
    feat_extract->add_option("--out", fx_out)->required();

    // graph
    auto* graph_cmd = app.add_subcommand("graph", "network analytics");
    auto* graph_analyze = graph_cmd->add_subcommand("analyze", "centralities and communities");
    std::string ga_edges, ga_out;
    double ga_tol = 1e-8;
    int ga_iter = 1000;
    graph_analyze->add_option("--edges", ga_edges)->required();
    graph_analyze->add_option("--tol", ga_tol);
    graph_analyze->add_option("--max-iter", ga_iter);
    graph_analyze->add_option("--out", ga_out)->required();

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "statistical tests");
    auto* stats_ks = stats_cmd->add_subcommand("ks", "two-sample Kolmogorov-Smirnov");
    std::string ks_a, ks_b;
    double ks_alpha = 0.01;
    stats_ks->add_option("--a", ks_a)->required();
    stats_ks->add_option("--b", ks_b)->required();
    stats_ks->add_option("--alpha", ks_alpha);
    auto* stats_kappa = stats_cmd->add_subcommand("kappa", "Fleiss' kappa agreement");
    std::string kappa_ratings;
    stats_kappa->add_option("--ratings", kappa_ratings)->required();

    // topics
    auto* topics_cmd = app.add_subcommand("topics", "LDA topic summaries");
    auto* topics_fit = topics_cmd->add_subcommand("fit", "fit an LDA model");
    int lda_k = 5, lda_batch = 256, lda_epochs = 10;
    double lda_kappa = 0.6, lda_tau0 = 1.0;
    std::uint64_t lda_seed = 42;
    std::string tf_in, tf_out = "topics_out";
    topics_fit->add_option("--k", lda_k);
    topics_fit->add_option("--batch", lda_batch);
    topics_fit->add_option("--kappa", lda_kappa);
    topics_fit->add_option("--tau0", lda_tau0);
    topics_fit->add_option("--epochs", lda_epochs);
    topics_fit->add_option("--seed", lda_seed);
    topics_fit->add_option("--in", tf_in, "line-delimited token lists")->required();
    topics_fit->add_option("--out-dir", tf_out);

    // ml
    auto* ml_cmd = app.add_subcommand("ml", "classification experiments");
    auto* ml_run = ml_cmd->add_subcommand("run", "repeated cross-validated evaluation");
    std::string ml_setup = "four_class", ml_learner = "rf", ml_in, ml_out = "ml_report.json";
    int ml_repeats = 10, ml_folds = 10, ml_trees = 100;
    std::uint64_t ml_seed = 42;
    bool ml_ranking = false;
    ml_run->add_option("--setup", ml_setup, "four_class|three_no_spam|three_offensive|two_offensive");
    ml_run->add_option("--learner", ml_learner, "nb|rf|ensemble");
    ml_run->add_option("--repeats", ml_repeats);
    ml_run->add_option("--folds", ml_folds);
    ml_run->add_option("--seed", ml_seed);
    ml_run->add_option("--trees", ml_trees);
    ml_run->add_option("--in", ml_in, "dataset csv")->required();
    ml_run->add_option("--out", ml_out);
    ml_run->add_flag("--ranking", ml_ranking, "attach information-gain ranking");

    // status
    auto* status_cmd = app.add_subcommand("status", "account-status analytics");
    auto* status_fetch = status_cmd->add_subcommand("fetch", "resolve statuses via a provider");
    std::string sf_provider = "mock", sf_in, sf_codes, sf_base, sf_snapshot = "snapshot", sf_out;
    std::size_t sf_inflight = 8;
    status_fetch->add_option("--provider", sf_provider, "mock|live");
    status_fetch->add_option("--in", sf_in, "one user id per line")->required();
    status_fetch->add_option("--codes", sf_codes, "mock code csv");
    status_fetch->add_option("--base-url", sf_base, "live provider base url");
    status_fetch->add_option("--snapshot", sf_snapshot);
    status_fetch->add_option("--max-in-flight", sf_inflight);
    status_fetch->add_option("--out", sf_out)->required();
    auto* status_compare = status_cmd->add_subcommand("compare", "snapshot breakdowns and deltas");
    std::vector<std::string> sc_snapshots;
    std::string sc_labels, sc_out = "status_compare.json";
    status_compare->add_option("--snapshots", sc_snapshots, "label:path, repeatable")->required();
    status_compare->add_option("--labels", sc_labels, "user_id,label csv")->required();
    status_compare->add_option("--out", sc_out);

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "synthetic corpus generation");
    auto* synth_gen = synth_cmd->add_subcommand("generate", "emit a full desk-scale bundle");
    std::uint64_t sg_seed = 42;
    std::string sg_out = "synth_out", sg_counts;
    int sg_blatant = 60;
    synth_gen->add_option("--seed", sg_seed);
    synth_gen->add_option("--out-dir", sg_out);
    synth_gen->add_option("--counts", sg_counts, "bully=58,aggressor=43,spammer=415,normal=787");
    synth_gen->add_option("--blatant", sg_blatant, "planted spam-filter violations");

    // pipeline
    auto* pipe_cmd = app.add_subcommand("pipeline", "run the full pipeline from a config");
    std::string pl_config, pl_out;
    pipe_cmd->add_option("--config", pl_config)->required();
    pipe_cmd->add_option("--out-dir", pl_out, "overrides the default 'out' directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (corpus_filter->parsed()) return cmd_corpus_filter(seeds, top_n, period_secs, cf_in, cf_out);
        if (pre_cmd->parsed()) {
            return cmd_preprocess(pp_stop, hashtag_cutoff, sim_cutoff, pp_in, pp_out, pp_verdicts);
        }
        if (ses_build->parsed()) {
            return cmd_sessions_build(t_l_hours, min_tweets, win_start, win_end, sb_in, sb_out);
        }
        if (ses_agg->parsed()) return cmd_sessions_aggregate(sa_annotations, sa_out, sa_labels);
        if (feat_extract->parsed()) {
            return cmd_features_extract(fx_lex, fx_emb, fx_exclude, fx_in, fx_stop, fx_labels,
                                        fx_edges, fx_now, fx_out);
        }
        if (graph_analyze->parsed()) return cmd_graph_analyze(ga_edges, ga_tol, ga_iter, ga_out);
        if (stats_ks->parsed()) return cmd_stats_ks(ks_a, ks_b, ks_alpha);
        if (stats_kappa->parsed()) return cmd_stats_kappa(kappa_ratings);
        if (topics_fit->parsed()) {
            return cmd_topics_fit(lda_k, lda_batch, lda_kappa, lda_tau0, lda_epochs, lda_seed, tf_in,
                                  tf_out);
        }
        if (ml_run->parsed()) {
            return cmd_ml_run(ml_setup, ml_learner, ml_repeats, ml_folds, ml_seed, ml_trees, ml_in,
                              ml_out, ml_ranking);
        }
        if (status_fetch->parsed()) {
            return cmd_status_fetch(sf_provider, sf_in, sf_codes, sf_base, sf_snapshot, sf_inflight,
                                    sf_out);
        }
        if (status_compare->parsed()) return cmd_status_compare(sc_snapshots, sc_labels, sc_out);
        if (synth_gen->parsed()) return cmd_synth(sg_seed, sg_out, sg_counts, sg_blatant);
        if (pipe_cmd->parsed()) {
            abusekit::pipeline::PipelineConfig cfg;
            try {
                cfg = abusekit::pipeline::PipelineConfig::load(pl_config);
            } catch (const abusekit::ConfigError& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return 2;
            } catch (const abusekit::ParseError& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return 2;
            }
            if (!pl_out.empty()) cfg.out_dir = pl_out;
            return abusekit::pipeline::run_pipeline(cfg, std::cout);
        }
    } catch (const abusekit::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "no subcommand selected\n";
    return 2;
}
