#include "abusekit/sessions.hpp"

#include <algorithm>

#include <json.hpp>

#include "abusekit/errors.hpp"
#include "abusekit/io.hpp"

namespace abusekit::sessions {

std::string_view to_string(Label l) {
    switch (l) {
        case Label::bully: return "bully";
        case Label::aggressor: return "aggressor";
        case Label::spammer: return "spammer";
        case Label::normal: return "normal";
    }
    return "normal";
}

std::optional<Label> label_from_string(std::string_view s) {
    if (s == "bully") return Label::bully;
    if (s == "aggressor") return Label::aggressor;
    if (s == "spammer") return Label::spammer;
    if (s == "normal") return Label::normal;
    return std::nullopt;
}

int severity_rank(Label l) {
    switch (l) {
        case Label::bully: return 0;
        case Label::aggressor: return 1;
        case Label::spammer: return 2;
        case Label::normal: return 3;
    }
    return 3;
}

std::string_view to_string(MajorityStrength s) {
    switch (s) {
        case MajorityStrength::none: return "none";
        case MajorityStrength::basic: return "basic";
        case MajorityStrength::strong: return "strong";
        case MajorityStrength::absolute: return "absolute";
    }
    return "none";
}

std::map<std::string, std::vector<corpus::Tweet>> filter_low_activity(
    const std::map<std::string, std::vector<corpus::Tweet>>& users, std::size_t min_tweets,
    std::int64_t window_start, std::int64_t window_end) {
    if (window_end < window_start) throw ContractViolation("filter_low_activity: empty window");

    std::map<std::string, std::vector<corpus::Tweet>> kept;
    for (const auto& [user_id, tweets] : users) {
        std::size_t in_window = 0;
        for (const auto& t : tweets) {
            if (t.timestamp >= window_start && t.timestamp <= window_end) ++in_window;
        }
        if (in_window >= min_tweets) kept.emplace(user_id, tweets);
    }
    return kept;
}

std::vector<Session> build_sessions(const std::vector<corpus::Tweet>& sorted_tweets, std::int64_t t_l) {
    for (std::size_t i = 1; i < sorted_tweets.size(); ++i) {
        const auto& prev = sorted_tweets[i - 1];
        const auto& cur = sorted_tweets[i];
        if (cur.user_id != prev.user_id) {
            throw ContractViolation("build_sessions: timeline mixes users");
        }
        if (cur.timestamp < prev.timestamp ||
            (cur.timestamp == prev.timestamp && cur.id < prev.id)) {
            throw ContractViolation("build_sessions: tweets not sorted by (timestamp, id)");
        }
    }

    std::vector<Session> out;
    for (const auto& t : sorted_tweets) {
        if (out.empty() || t.timestamp - out.back().tweets.back().timestamp > t_l) {
            Session s;
            s.user_id = t.user_id;
            s.index = out.size();
            out.push_back(std::move(s));
        }
        out.back().tweets.push_back(t);
    }
    return out;
}

std::vector<Session> sessions_by_user(const std::map<std::string, std::vector<corpus::Tweet>>& users,
                                      std::int64_t t_l) {
    std::vector<Session> all;
    for (const auto& [user_id, tweets] : users) {
        std::vector<corpus::Tweet> sorted = tweets;
        std::sort(sorted.begin(), sorted.end(), [](const corpus::Tweet& a, const corpus::Tweet& b) {
            if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
            return a.id < b.id;
        });
        auto sessions = build_sessions(sorted, t_l);
        all.insert(all.end(), std::make_move_iterator(sessions.begin()),
                   std::make_move_iterator(sessions.end()));
    }
    return all;
}

std::vector<Batch> make_batches(const std::vector<Session>& sessions) {
    std::vector<Batch> out;
    std::map<std::string, std::size_t> per_user_counter;
    for (const auto& s : sessions) {
        const std::size_t size = s.tweets.size();
        if (size < 5) continue;

        // ceil(size/10) chunks, sizes as equal as possible, larger first.
        const std::size_t chunks = (size + 9) / 10;
        const std::size_t base = size / chunks;
        const std::size_t remainder = size % chunks;

        std::size_t offset = 0;
        for (std::size_t c = 0; c < chunks; ++c) {
            const std::size_t chunk_size = base + (c < remainder ? 1 : 0);
            Batch b;
            b.user_id = s.user_id;
            b.session_index = s.index;
            std::size_t& counter = per_user_counter[s.user_id];
            b.id = s.user_id + ":" + std::to_string(counter++);
            b.tweets.assign(s.tweets.begin() + static_cast<std::ptrdiff_t>(offset),
                            s.tweets.begin() + static_cast<std::ptrdiff_t>(offset + chunk_size));
            offset += chunk_size;
            out.push_back(std::move(b));
        }
    }
    return out;
}

AggregatedLabel aggregate_annotations(const std::string& batch_id,
                                      const std::vector<Annotation>& annotations) {
    std::vector<const Annotation*> votes;
    for (const auto& a : annotations) {
        if (!a.is_control) votes.push_back(&a);
    }
    if (votes.size() != 5) {
        throw ContractViolation("aggregate_annotations: batch " + batch_id + " has " +
                                std::to_string(votes.size()) + " votes, expected 5");
    }

    AggregatedLabel agg;
    agg.batch_id = batch_id;
    for (const auto* a : votes) ++agg.votes[a->label];

    int best = 0;
    for (const auto& [label, count] : agg.votes) {
        if (count > best) {
            best = count;
            agg.final_label = label;
        }
    }
    if (best >= 5) {
        agg.strength = MajorityStrength::absolute;
    } else if (best == 4) {
        agg.strength = MajorityStrength::strong;
    } else if (best == 3) {
        agg.strength = MajorityStrength::basic;
    } else {
        agg.strength = MajorityStrength::none;
        agg.final_label.reset();
    }
    return agg;
}

Label user_label(const std::vector<Label>& batch_labels) {
    if (batch_labels.empty()) throw ContractViolation("user_label: no labeled batches");

    std::map<Label, int> counts;
    for (Label l : batch_labels) ++counts[l];

    Label best = batch_labels.front();
    int best_count = -1;
    for (const auto& [label, count] : counts) {
        if (count > best_count ||
            (count == best_count && severity_rank(label) < severity_rank(best))) {
            best = label;
            best_count = count;
        }
    }
    return best;
}

ControlAccuracy control_accuracy(const std::vector<Annotation>& controls) {
    ControlAccuracy acc;
    std::map<Label, std::pair<std::size_t, std::size_t>> per;  // gold -> (correct, total)
    std::size_t correct = 0;
    for (const auto& a : controls) {
        if (!a.gold) throw ContractViolation("control_accuracy: control annotation without gold label");
        auto& [c, t] = per[*a.gold];
        ++t;
        if (a.label == *a.gold) {
            ++c;
            ++correct;
        }
    }
    acc.total = controls.size();
    if (acc.total > 0) acc.overall = static_cast<double>(correct) / static_cast<double>(acc.total);
    for (const auto& [label, ct] : per) {
        acc.per_label[label] = static_cast<double>(ct.first) / static_cast<double>(ct.second);
    }
    return acc;
}

std::vector<Annotation> load_annotations_csv(const std::filesystem::path& path) {
    std::vector<Annotation> out;
    bool first = true;
    std::size_t line_no = 0;
    for (const auto& line : io::read_lines(path)) {
        ++line_no;
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("batch_id,", 0) == 0) continue;  // header
        }
        auto fields = io::split_csv(line);
        if (fields.size() < 4) throw ParseError("annotations line " + std::to_string(line_no) + ": too few fields");
        Annotation a;
        a.batch_id = fields[0];
        a.worker_id = fields[1];
        auto label = label_from_string(fields[2]);
        if (!label) throw ParseError("annotations line " + std::to_string(line_no) + ": bad label " + fields[2]);
        a.label = *label;
        a.is_control = fields[3] == "1" || fields[3] == "true";
        if (fields.size() >= 5 && !fields[4].empty()) {
            auto gold = label_from_string(fields[4]);
            if (!gold) throw ParseError("annotations line " + std::to_string(line_no) + ": bad gold label");
            a.gold = *gold;
        }
        out.push_back(std::move(a));
    }
    return out;
}

void write_annotations_csv(const std::filesystem::path& path, const std::vector<Annotation>& annotations) {
    std::string out = "batch_id,worker_id,label,is_control,gold_label\n";
    for (const auto& a : annotations) {
        out += a.batch_id;
        out.push_back(',');
        out += a.worker_id;
        out.push_back(',');
        out += to_string(a.label);
        out += a.is_control ? ",1," : ",0,";
        if (a.gold) out += to_string(*a.gold);
        out.push_back('\n');
    }
    io::write_text(path, out);
}

void write_batches(const std::filesystem::path& path, const std::vector<Batch>& batches) {
    std::string out;
    for (const auto& b : batches) {
        nlohmann::json j;
        j["batch_id"] = b.id;
        j["user_id"] = b.user_id;
        j["session_index"] = b.session_index;
        std::vector<std::string> ids;
        ids.reserve(b.tweets.size());
        for (const auto& t : b.tweets) ids.push_back(t.id);
        j["tweet_ids"] = ids;
        out += j.dump();
        out.push_back('\n');
    }
    io::write_text(path, out);
}

}  // namespace abusekit::sessions
