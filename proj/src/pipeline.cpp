#include "abusekit/pipeline.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "abusekit/corpus.hpp"
#include "abusekit/errors.hpp"
#include "abusekit/graph.hpp"
#include "abusekit/io.hpp"
#include "abusekit/lexfeatures.hpp"
#include "abusekit/ml.hpp"
#include "abusekit/preprocess.hpp"
#include "abusekit/rng.hpp"
#include "abusekit/sessions.hpp"
#include "abusekit/stats.hpp"
#include "abusekit/status.hpp"
#include "abusekit/topics.hpp"

namespace abusekit::pipeline {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

const std::set<std::string> kInputKeys = {"corpus",    "edges",     "annotations",     "lexicons",
                                          "embeddings", "stopwords", "status_snapshots"};
const std::set<std::string> kParamKeys = {
    "t_l_hours", "min_tweets", "hashtag_cutoff", "sim_cutoff", "alpha",      "exclusions",
    "seed",      "repeats",    "folds",          "trees",      "setup",      "learner",
    "lda_topics", "lda_batch", "lda_kappa",      "lda_tau0",   "lda_epochs", "window_start",
    "window_end", "now_epoch"};

}  // namespace

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
    PipelineConfig cfg;
    const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    auto resolve = [&base](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp : base / fp;
    };

    std::string section;
    std::size_t line_no = 0;
    for (const auto& raw : io::read_lines(path)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            if (section != "inputs" && section != "params" && section != "stages") {
                throw ConfigError("unknown config section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (section == "inputs") {
            if (!kInputKeys.count(key)) throw ConfigError("unknown input key: " + key);
            if (key == "corpus") cfg.corpus = resolve(value);
            else if (key == "edges") cfg.edges = resolve(value);
            else if (key == "annotations") cfg.annotations = resolve(value);
            else if (key == "lexicons") cfg.lexicons = resolve(value);
            else if (key == "embeddings") cfg.embeddings = resolve(value);
            else if (key == "stopwords") cfg.stopwords = resolve(value);
            else {
                cfg.status_snapshots.clear();
                std::stringstream ss(value);
                std::string part;
                while (std::getline(ss, part, ';')) {
                    const auto colon = part.find(':');
                    if (colon == std::string::npos) {
                        throw ConfigError("status_snapshots: expected label:path;...");
                    }
                    cfg.status_snapshots.emplace_back(trim(part.substr(0, colon)),
                                                      resolve(trim(part.substr(colon + 1))));
                }
            }
        } else if (section == "params") {
            if (!kParamKeys.count(key)) throw ConfigError("unknown param key: " + key);
            if (key == "t_l_hours") cfg.t_l_hours = std::stod(value);
            else if (key == "min_tweets") cfg.min_tweets = static_cast<std::size_t>(std::stoull(value));
            else if (key == "hashtag_cutoff") cfg.hashtag_cutoff = std::stod(value);
            else if (key == "sim_cutoff") cfg.sim_cutoff = std::stod(value);
            else if (key == "alpha") cfg.alpha = std::stod(value);
            else if (key == "exclusions") cfg.exclusions = value;
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "repeats") cfg.repeats = std::stoi(value);
            else if (key == "folds") cfg.folds = std::stoi(value);
            else if (key == "trees") cfg.trees = std::stoi(value);
            else if (key == "setup") cfg.setup = value;
            else if (key == "learner") cfg.learner = value;
            else if (key == "lda_topics") cfg.lda_topics = std::stoi(value);
            else if (key == "lda_batch") cfg.lda_batch = std::stoi(value);
            else if (key == "lda_kappa") cfg.lda_kappa = std::stod(value);
            else if (key == "lda_tau0") cfg.lda_tau0 = std::stod(value);
            else if (key == "lda_epochs") cfg.lda_epochs = std::stoi(value);
            else if (key == "window_start") cfg.window_start = std::stoll(value);
            else if (key == "window_end") cfg.window_end = std::stoll(value);
            else if (key == "now_epoch") cfg.now_epoch = std::stoll(value);
        } else if (section == "stages") {
            if (!cfg.stages.count(key)) throw ConfigError("unknown stage: " + key);
            cfg.stages[key] = value == "on" || value == "true" || value == "1";
        } else {
            throw ConfigError("key outside any section: " + key);
        }
    }
    return cfg;
}

namespace {

struct PipelineState {
    corpus::LoadResult loaded;
    std::map<std::string, std::vector<corpus::Tweet>> kept_users;  // after spam filter
    std::map<std::string, corpus::UserProfile> profiles;
    std::unordered_set<std::string> stopword_set;
    std::vector<sessions::Session> all_sessions;                 // post low-activity filter
    std::map<std::string, std::string> user_labels;              // from aggregation
    feats::LexiconSet lex;
    ml::Dataset dataset;
    std::map<std::string, std::size_t> dataset_row_of_user;
    std::vector<std::string> dataset_users;
};

std::set<std::string> parse_exclusions(const std::string& spec) {
    if (spec == "paper-default") return feats::default_exclusions();
    if (spec == "none" || spec.empty()) return {};
    std::set<std::string> out;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (!part.empty()) out.insert(trim(part));
    }
    return out;
}

ml::LearnerFactory make_learner(const std::string& name, int trees) {
    if (name == "nb") {
        return [](const ml::Dataset& ds, std::uint64_t) { return ml::train_nb(ds); };
    }
    if (name == "rf") {
        return [trees](const ml::Dataset& ds, std::uint64_t seed) {
            return ml::train_rf(ds, {.n_trees = trees, .max_depth = 0, .seed = seed});
        };
    }
    if (name == "ensemble") {
        return [](const ml::Dataset& ds, std::uint64_t seed) {
            return ml::train_default_ensemble(ds, seed);
        };
    }
    throw ConfigError("unknown learner: " + name);
}

void stage_ingest(const PipelineConfig& cfg, PipelineState& st) {
    st.loaded = corpus::load_records(cfg.corpus, false);
    for (const auto& u : st.loaded.users) st.profiles[u.user_id] = u;

    nlohmann::json j;
    j["tweets"] = st.loaded.tweets.size();
    j["users"] = st.loaded.users.size();
    j["skipped_lines"] = st.loaded.skipped;
    io::write_text(cfg.out_dir / "ingest_summary.json", j.dump(2) + "\n");
}

void stage_preprocess(const PipelineConfig& cfg, PipelineState& st) {
    st.stopword_set = preprocess::load_stopwords(cfg.stopwords);
    auto grouped = corpus::group_by_user(st.loaded.tweets);
    auto result = preprocess::spam_filter(grouped, st.stopword_set,
                                          {cfg.hashtag_cutoff, cfg.sim_cutoff});
    st.kept_users = std::move(result.kept);

    std::string csv = "user_id,avg_hashtags,avg_sim,is_spam,reason\n";
    for (const auto& v : result.verdicts) {
        csv += v.user_id + "," + io::format_double(v.avg_hashtags) + "," +
               io::format_double(v.avg_intra_similarity) + "," + (v.is_spam ? "1" : "0") + "," +
               std::string(preprocess::to_string(v.reason)) + "\n";
    }
    io::write_text(cfg.out_dir / "spam_verdicts.csv", csv);
}

void stage_sessions(const PipelineConfig& cfg, PipelineState& st) {
    const auto t_l = static_cast<std::int64_t>(cfg.t_l_hours * 3600.0);
    auto active = sessions::filter_low_activity(st.kept_users, cfg.min_tweets, cfg.window_start,
                                                cfg.window_end);
    st.all_sessions = sessions::sessions_by_user(active, t_l);
    auto batches = sessions::make_batches(st.all_sessions);
    sessions::write_batches(cfg.out_dir / "batches.ndjson", batches);

    const auto annotations = sessions::load_annotations_csv(cfg.annotations);
    std::map<std::string, std::vector<sessions::Annotation>> by_batch;
    std::vector<sessions::Annotation> controls;
    for (const auto& a : annotations) {
        if (a.is_control) {
            controls.push_back(a);
        } else {
            by_batch[a.batch_id].push_back(a);
        }
    }

    std::string agg_csv = "batch_id,final_label,strength,bully,aggressor,spammer,normal\n";
    std::map<std::string, std::vector<sessions::Label>> labels_by_user;
    for (const auto& [batch_id, votes] : by_batch) {
        const auto agg = sessions::aggregate_annotations(batch_id, votes);
        agg_csv += batch_id + ",";
        agg_csv += agg.final_label ? std::string(sessions::to_string(*agg.final_label)) : "none";
        agg_csv += "," + std::string(sessions::to_string(agg.strength));
        for (auto label : {sessions::Label::bully, sessions::Label::aggressor,
                           sessions::Label::spammer, sessions::Label::normal}) {
            auto it = agg.votes.find(label);
            agg_csv += "," + std::to_string(it == agg.votes.end() ? 0 : it->second);
        }
        agg_csv += "\n";
        if (agg.final_label) {
            const auto colon = batch_id.find(':');
            const std::string user_id = colon == std::string::npos ? batch_id : batch_id.substr(0, colon);
            labels_by_user[user_id].push_back(*agg.final_label);
        }
    }
    io::write_text(cfg.out_dir / "aggregated_labels.csv", agg_csv);

    std::string labels_csv = "user_id,label,batches\n";
    for (const auto& [user_id, batch_labels] : labels_by_user) {
        const auto final_label = sessions::user_label(batch_labels);
        st.user_labels[user_id] = std::string(sessions::to_string(final_label));
        labels_csv += user_id + "," + std::string(sessions::to_string(final_label)) + "," +
                      std::to_string(batch_labels.size()) + "\n";
    }
    io::write_text(cfg.out_dir / "user_labels.csv", labels_csv);

    if (!controls.empty()) {
        const auto acc = sessions::control_accuracy(controls);
        nlohmann::json j;
        j["overall"] = acc.overall;
        j["total"] = acc.total;
        for (const auto& [label, value] : acc.per_label) {
            j["per_label"][std::string(sessions::to_string(label))] = value;
        }
        io::write_text(cfg.out_dir / "control_accuracy.json", j.dump(2) + "\n");
    }
}

void stage_features_graph(const PipelineConfig& cfg, PipelineState& st, bool run_graph) {
    st.lex = feats::load_lexicons(cfg.lexicons);
    if (std::filesystem::exists(cfg.embeddings)) feats::load_embeddings(st.lex, cfg.embeddings);

    graph::SocialGraph g;
    graph::CentralityScores scores;
    std::map<std::string, std::size_t> score_index;
    if (run_graph) {
        g = graph::SocialGraph::from_edges(graph::load_edges(cfg.edges));
        scores = graph::analyze(g);
        for (std::size_t i = 0; i < scores.ids.size(); ++i) score_index[scores.ids[i]] = i;

        std::string csv =
            "user_id,in_degree,out_degree,ratio,reciprocity,hub,authority,eigenvector,closeness,"
            "clustering,community\n";
        for (std::size_t i = 0; i < scores.ids.size(); ++i) {
            csv += scores.ids[i] + "," + io::format_double(scores.in_degree[i]) + "," +
                   io::format_double(scores.out_degree[i]) + "," + io::format_double(scores.ratio[i]) +
                   "," + io::format_double(scores.reciprocity[i]) + "," +
                   io::format_double(scores.hub[i]) + "," + io::format_double(scores.authority[i]) +
                   "," + io::format_double(scores.eigenvector[i]) + "," +
                   io::format_double(scores.closeness[i]) + "," +
                   io::format_double(scores.clustering[i]) + "," +
                   std::to_string(scores.community[i]) + "\n";
        }
        io::write_text(cfg.out_dir / "graph_scores.csv", csv);
        nlohmann::json j;
        j["nodes"] = g.node_count();
        j["edges"] = g.edge_count();
        j["modularity"] = scores.modularity;
        io::write_text(cfg.out_dir / "graph_summary.json", j.dump(2) + "\n");
    }

    // profile-count followers/friends ratio, used for power difference
    auto profile_ratio = [&](const std::string& user_id) {
        auto it = st.profiles.find(user_id);
        if (it == st.profiles.end()) return 0.0;
        return static_cast<double>(it->second.followers_count) /
               std::max(static_cast<double>(it->second.friends_count), 1.0);
    };

    std::map<std::string, std::vector<sessions::Session>> sessions_of;
    for (const auto& s : st.all_sessions) sessions_of[s.user_id].push_back(s);

    const auto exclusions = parse_exclusions(cfg.exclusions);
    const std::int64_t now = cfg.now_epoch > 0 ? cfg.now_epoch : cfg.window_end;

    ml::Dataset ds;
    bool first_row = true;
    for (const auto& [user_id, label] : st.user_labels) {
        auto kept = st.kept_users.find(user_id);
        auto prof = st.profiles.find(user_id);
        if (kept == st.kept_users.end() || prof == st.profiles.end()) continue;

        const auto cleaned = preprocess::clean_tweets(kept->second, st.stopword_set);
        const auto tf = feats::text_features(kept->second, cleaned, st.lex);
        const auto uf = feats::user_features(prof->second, kept->second, sessions_of[user_id], now);

        feats::NetworkFeatures nf;
        nf.followers = static_cast<double>(prof->second.followers_count);
        nf.friends = static_cast<double>(prof->second.friends_count);
        nf.followers_friends_ratio = nf.followers / std::max(nf.friends, 1.0);
        std::vector<double> mentioned_ratios;
        std::set<std::string> mentioned;
        for (const auto& t : kept->second) mentioned.insert(t.mentions.begin(), t.mentions.end());
        for (const auto& m : mentioned) {
            if (st.profiles.count(m)) mentioned_ratios.push_back(profile_ratio(m));
        }
        nf.power_difference = graph::power_difference(nf.followers_friends_ratio, mentioned_ratios);
        if (run_graph) {
            auto idx = score_index.find(user_id);
            if (idx != score_index.end()) {
                const std::size_t i = idx->second;
                nf.hubs = scores.hub[i];
                nf.authority = scores.authority[i];
                nf.clustering_coefficient = scores.clustering[i];
                nf.reciprocity = scores.reciprocity[i];
                nf.eigenvector = scores.eigenvector[i];
                nf.closeness = scores.closeness[i];
                nf.louvain_modularity = scores.modularity;
            }
        }

        const auto fv = feats::assemble_vector(uf, tf, nf, exclusions, st.lex.embedding_dim);
        if (first_row) {
            ds.feature_names = fv.column_names;
            first_row = false;
        }
        ds.x.push_back(fv.values);
        ds.y.push_back(label);
        st.dataset_row_of_user[user_id] = ds.x.size() - 1;
        st.dataset_users.push_back(user_id);
    }
    st.dataset = std::move(ds);
    ml::write_dataset_csv(cfg.out_dir / "dataset.csv", st.dataset);
}

void stage_stats(const PipelineConfig& cfg, PipelineState& st) {
    // Class-vs-class KS tests on a few headline features.
    const std::vector<std::string> interesting = {"interarrival_median", "avg_sentiment",
                                                  "avg_hashtags", "followers"};
    std::string csv = "feature,group_a,group_b,d_statistic,critical_value,reject_null\n";
    for (const auto& feature : interesting) {
        const auto it = std::find(st.dataset.feature_names.begin(), st.dataset.feature_names.end(),
                                  feature);
        if (it == st.dataset.feature_names.end()) continue;
        const auto f = static_cast<std::size_t>(it - st.dataset.feature_names.begin());

        std::map<std::string, std::vector<double>> by_label;
        for (std::size_t i = 0; i < st.dataset.x.size(); ++i) {
            by_label[st.dataset.y[i]].push_back(st.dataset.x[i][f]);
        }
        auto normal = by_label.find("normal");
        if (normal == by_label.end()) continue;
        for (const auto& [label, values] : by_label) {
            if (label == "normal" || values.empty()) continue;
            const auto ks = stats::ks_two_sample(values, normal->second, cfg.alpha);
            csv += feature + "," + label + ",normal," + io::format_double(ks.d_statistic) + "," +
                   io::format_double(ks.critical_value) + "," + (ks.reject_null ? "1" : "0") + "\n";
        }
    }
    io::write_text(cfg.out_dir / "stats_ks.csv", csv);

    // Inter-rater agreement over the full annotation matrix.
    const auto annotations = sessions::load_annotations_csv(cfg.annotations);
    std::map<std::string, std::array<int, 4>> counts;
    for (const auto& a : annotations) {
        if (a.is_control) continue;
        ++counts[a.batch_id][static_cast<std::size_t>(sessions::severity_rank(a.label))];
    }
    std::vector<std::vector<int>> ratings;
    for (const auto& [batch_id, row] : counts) {
        ratings.push_back({row[0], row[1], row[2], row[3]});
    }
    if (!ratings.empty()) {
        const auto kappa = stats::fleiss_kappa(ratings);
        nlohmann::json j;
        j["kappa"] = kappa.kappa;
        j["p_a"] = kappa.p_a;
        j["p_e"] = kappa.p_e;
        j["items"] = ratings.size();
        io::write_text(cfg.out_dir / "annotation_kappa.json", j.dump(2) + "\n");
    }
}

void stage_ml(const PipelineConfig& cfg, PipelineState& st) {
    const auto setup = ml::setup_from_string(cfg.setup);
    const auto learner = make_learner(cfg.learner, cfg.trees);
    auto setup_ds = ml::apply_setup(st.dataset, setup);
    auto report = ml::repeated_cv(setup_ds, learner, cfg.repeats, cfg.folds, cfg.seed);

    auto ranking = ml::info_gain_ranking(setup_ds);
    if (ranking.size() > 12) ranking.resize(12);
    report.feature_ranking = std::move(ranking);

    io::write_text(cfg.out_dir / "ml_report.json", report.to_json().dump(2) + "\n");
    io::write_text(cfg.out_dir / "ml_report.txt", report.render_text());
}

void stage_status(const PipelineConfig& cfg, PipelineState& st) {
    if (cfg.status_snapshots.empty()) return;

    std::vector<std::string> ids;
    for (const auto& [user_id, label] : st.user_labels) ids.push_back(user_id);
    std::map<std::string, std::string> groups(st.user_labels.begin(), st.user_labels.end());

    std::vector<std::vector<status::AccountStatus>> snapshots;
    for (const auto& [label, path] : cfg.status_snapshots) {
        status::MockStatusProvider provider(path);
        snapshots.push_back(status::fetch_statuses(provider, ids, label));
        status::write_status_csv(cfg.out_dir / ("status_" + label + ".csv"), snapshots.back());
    }

    // Distribution table for the latest snapshot.
    nlohmann::json dist_json;
    const auto distribution = status::status_distribution(snapshots.back(), groups);
    for (const auto& [group, share] : distribution) {
        dist_json[group] = {{"active", share.active},
                            {"deleted", share.deleted},
                            {"suspended", share.suspended}};
    }
    io::write_text(cfg.out_dir / "status_distribution.json", dist_json.dump(2) + "\n");

    if (snapshots.size() >= 2) {
        const auto diff = status::snapshot_compare(snapshots, groups);
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
                j["deltas"][label].push_back({{"active", d.active},
                                              {"deleted", d.deleted},
                                              {"suspended", d.suspended}});
            }
        }
        io::write_text(cfg.out_dir / "status_snapshots.json", j.dump(2) + "\n");
    }

    // Suspension-engine emulation on the latest snapshot's labels.
    ml::Dataset status_ds;
    status_ds.feature_names = st.dataset.feature_names;
    std::map<std::string, status::AccountState> state_of;
    for (const auto& s : snapshots.back()) state_of[s.user_id] = s.state;
    for (std::size_t i = 0; i < st.dataset_users.size(); ++i) {
        auto it = state_of.find(st.dataset_users[i]);
        if (it == state_of.end()) continue;
        status_ds.x.push_back(st.dataset.x[i]);
        status_ds.y.push_back(std::string(status::to_string(it->second)));
    }
    if (status_ds.classes().size() >= 2) {
        const auto report = status::train_status_classifier(status_ds, cfg.seed, cfg.repeats, cfg.folds);
        io::write_text(cfg.out_dir / "status_classifier.json", report.to_json().dump(2) + "\n");
        io::write_text(cfg.out_dir / "status_classifier.txt", report.render_text());
    }
}

void stage_topics(const PipelineConfig& cfg, PipelineState& st) {
    // Per-category topic summaries over cleaned tweet text.
    std::map<std::string, std::vector<std::vector<std::string>>> docs_by_label;
    for (const auto& [user_id, label] : st.user_labels) {
        auto kept = st.kept_users.find(user_id);
        if (kept == st.kept_users.end()) continue;
        for (const auto& cleaned : preprocess::clean_tweets(kept->second, st.stopword_set)) {
            if (!cleaned.tokens.empty()) docs_by_label[label].push_back(cleaned.tokens);
        }
    }

    for (const auto& [label, docs] : docs_by_label) {
        if (docs.size() < 10) continue;
        topics::LdaConfig lda_cfg;
        lda_cfg.n_topics = cfg.lda_topics;
        lda_cfg.batch_size = cfg.lda_batch;
        lda_cfg.kappa = cfg.lda_kappa;
        lda_cfg.tau0 = cfg.lda_tau0;
        lda_cfg.epochs = cfg.lda_epochs;
        lda_cfg.seed = cfg.seed;
        const auto model = topics::fit_lda(docs, lda_cfg);
        const auto words = topics::top_words(model, std::min<std::size_t>(10, model.vocabulary.size()));

        std::string out;
        for (std::size_t k = 0; k < words.size(); ++k) {
            out += std::to_string(k + 1);
            for (const auto& w : words[k]) out += " " + w;
            out += "\n";
        }
        io::write_text(cfg.out_dir / ("topics_" + label + ".txt"), out);
    }
}

}  // namespace

int run_pipeline(const PipelineConfig& cfg, std::ostream& log) {
    // Input existence is checked up front so a bad manifest fails fast.
    std::vector<std::filesystem::path> required;
    if (cfg.stages.at("ingest")) required.push_back(cfg.corpus);
    if (cfg.stages.at("preprocess")) required.push_back(cfg.stopwords);
    if (cfg.stages.at("sessions")) required.push_back(cfg.annotations);
    if (cfg.stages.at("graph")) required.push_back(cfg.edges);
    if (cfg.stages.at("status")) {
        for (const auto& [label, path] : cfg.status_snapshots) required.push_back(path);
    }
    for (const auto& path : required) {
        if (!std::filesystem::exists(path)) {
            log << "missing input: " << path.string() << "\n";
            return 2;
        }
    }
    std::filesystem::create_directories(cfg.out_dir);

    PipelineState st;
    const std::vector<std::pair<std::string, std::function<void()>>> stage_list = {
        {"ingest", [&] { stage_ingest(cfg, st); }},
        {"preprocess", [&] { stage_preprocess(cfg, st); }},
        {"sessions", [&] { stage_sessions(cfg, st); }},
        {"features", [&] { stage_features_graph(cfg, st, cfg.stages.at("graph")); }},
        {"stats", [&] { stage_stats(cfg, st); }},
        {"ml", [&] { stage_ml(cfg, st); }},
        {"status", [&] { stage_status(cfg, st); }},
        {"topics", [&] { stage_topics(cfg, st); }},
    };

    nlohmann::json summary;
    for (const auto& [name, run] : stage_list) {
        if (!cfg.stages.at(name)) {
            summary["stages"][name] = "skipped";
            continue;
        }
        try {
            run();
            summary["stages"][name] = "ok";
            log << "stage " << name << ": ok\n";
        } catch (const std::exception& e) {
            log << "stage " << name << " failed: " << e.what() << "\n";
            return 1;
        }
    }
    io::write_text(cfg.out_dir / "pipeline_summary.json", summary.dump(2) + "\n");
    return 0;
}

}  // namespace abusekit::pipeline
