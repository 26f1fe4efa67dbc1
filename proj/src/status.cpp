#include "abusekit/status.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <set>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "abusekit/errors.hpp"
#include "abusekit/io.hpp"

namespace abusekit::status {

std::string_view to_string(AccountState s) {
    switch (s) {
        case AccountState::active: return "active";
        case AccountState::deleted: return "deleted";
        case AccountState::suspended: return "suspended";
    }
    return "active";
}

AccountState resolve_status(const ProviderReply& reply) {
    if (reply.success) return AccountState::active;
    if (reply.error_code == 63) return AccountState::suspended;
    if (reply.error_code == 50) return AccountState::deleted;
    throw ParseError("unknown status code: " + std::to_string(reply.error_code));
}

MockStatusProvider::MockStatusProvider(const std::filesystem::path& csv) {
    bool first = true;
    for (const auto& line : io::read_lines(csv)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("user_id,", 0) == 0) continue;
        }
        auto fields = io::split_csv(line);
        if (fields.size() != 2) throw ParseError("status mock: expected user_id,code");
        codes_[fields[0]] = std::stoi(fields[1]);
    }
}

ProviderReply MockStatusProvider::fetch(const std::string& user_id) {
    auto it = codes_.find(user_id);
    if (it == codes_.end()) throw ParseError("status mock: unknown user " + user_id);
    if (it->second == 0) return {true, 0};
    return {false, it->second};
}

HttpStatusProvider::HttpStatusProvider(std::string base_url) {
    // Accept "host:port" or "http://host:port".
    std::string rest = base_url;
    if (rest.rfind("http://", 0) == 0) rest = rest.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) {
        host_ = rest;
    } else {
        host_ = rest.substr(0, colon);
        port_ = std::stoi(rest.substr(colon + 1));
    }
}

ProviderReply HttpStatusProvider::fetch(const std::string& user_id) {
    httplib::Client client(host_, port_);
    auto res = client.Get(("/status/" + user_id).c_str());
    if (!res) throw ParseError("status http: no response for " + user_id);
    if (res->status != 200) throw ParseError("status http: " + std::to_string(res->status));
    const auto body = nlohmann::json::parse(res->body);
    const int code = body.at("code").get<int>();
    if (code == 0) return {true, 0};
    return {false, code};
}

std::vector<AccountStatus> fetch_statuses(StatusProvider& provider,
                                          const std::vector<std::string>& user_ids,
                                          const std::string& snapshot_label,
                                          std::size_t max_in_flight) {
    std::vector<AccountStatus> results(user_ids.size());
    std::vector<std::exception_ptr> failures(user_ids.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= user_ids.size()) return;
            try {
                AccountStatus s;
                s.user_id = user_ids[i];
                s.state = resolve_status(provider.fetch(user_ids[i]));
                s.snapshot = snapshot_label;
                results[i] = std::move(s);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    const std::size_t n_threads = std::max<std::size_t>(1, std::min(max_in_flight, user_ids.size()));
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
    std::sort(results.begin(), results.end(),
              [](const AccountStatus& a, const AccountStatus& b) { return a.user_id < b.user_id; });
    return results;
}

namespace {

StatusShare share_of(std::size_t active, std::size_t deleted, std::size_t suspended) {
    const double total = static_cast<double>(active + deleted + suspended);
    StatusShare s;
    if (total > 0.0) {
        s.active = 100.0 * static_cast<double>(active) / total;
        s.deleted = 100.0 * static_cast<double>(deleted) / total;
        s.suspended = 100.0 * static_cast<double>(suspended) / total;
    }
    return s;
}

}  // namespace

std::map<std::string, StatusShare> status_distribution(
    const std::vector<AccountStatus>& statuses, const std::map<std::string, std::string>& groups) {
    std::map<std::string, std::array<std::size_t, 3>> counts;
    for (const auto& s : statuses) {
        auto it = groups.find(s.user_id);
        if (it == groups.end()) throw ContractViolation("status_distribution: no group for user " + s.user_id);
        ++counts[it->second][static_cast<std::size_t>(s.state)];
    }
    std::map<std::string, StatusShare> out;
    for (const auto& [group, c] : counts) {
        out[group] = share_of(c[0], c[1], c[2]);
    }
    return out;
}

ml::EvalReport train_status_classifier(const ml::Dataset& ds, std::uint64_t seed, int repeats,
                                       int folds) {
    if (ds.classes().size() < 2) {
        throw ContractViolation("train_status_classifier: need at least 2 statuses");
    }
    return ml::repeated_cv(
        ds,
        [](const ml::Dataset& train, std::uint64_t s) {
            return ml::train_rf(train, {.n_trees = 100, .max_depth = 0, .seed = s});
        },
        repeats, folds, seed);
}

SnapshotDiff snapshot_compare(const std::vector<std::vector<AccountStatus>>& snapshots,
                              const std::map<std::string, std::string>& behavior_labels) {
    if (snapshots.size() < 2) throw ContractViolation("snapshot_compare: need at least 2 snapshots");

    // All snapshots must cover the same user universe.
    std::set<std::string> universe;
    for (const auto& s : snapshots.front()) universe.insert(s.user_id);
    for (std::size_t i = 1; i < snapshots.size(); ++i) {
        std::set<std::string> other;
        for (const auto& s : snapshots[i]) other.insert(s.user_id);
        if (other != universe) {
            std::vector<std::string> diff;
            std::set_symmetric_difference(universe.begin(), universe.end(), other.begin(),
                                          other.end(), std::back_inserter(diff));
            std::string msg = "snapshot_compare: user universes differ:";
            for (const auto& id : diff) msg += " " + id;
            throw ContractViolation(msg);
        }
    }

    SnapshotDiff out;
    for (const auto& snap : snapshots) {
        if (snap.empty()) throw ContractViolation("snapshot_compare: empty snapshot");
        out.snapshots.push_back(snap.front().snapshot);

        std::map<std::string, std::array<std::size_t, 3>> counts;
        for (const auto& s : snap) {
            auto it = behavior_labels.find(s.user_id);
            if (it == behavior_labels.end()) {
                throw ContractViolation("snapshot_compare: no behavior label for " + s.user_id);
            }
            ++counts[it->second][static_cast<std::size_t>(s.state)];
        }
        for (const auto& [label, c] : counts) {
            out.shares[label][snap.front().snapshot] = share_of(c[0], c[1], c[2]);
        }
    }

    for (auto& [label, per_snapshot] : out.shares) {
        for (std::size_t i = 1; i < out.snapshots.size(); ++i) {
            const auto& prev = per_snapshot[out.snapshots[i - 1]];
            const auto& cur = per_snapshot[out.snapshots[i]];
            StatusShare delta;
            delta.active = cur.active - prev.active;
            delta.deleted = cur.deleted - prev.deleted;
            delta.suspended = cur.suspended - prev.suspended;
            out.deltas[label].push_back(delta);
        }
    }
    return out;
}

std::vector<AccountStatus> load_status_csv(const std::filesystem::path& path,
                                           const std::string& snapshot_label) {
    std::vector<AccountStatus> out;
    bool first = true;
    for (const auto& line : io::read_lines(path)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("user_id,", 0) == 0) continue;
        }
        auto fields = io::split_csv(line);
        if (fields.size() != 2) throw ParseError("status csv: expected user_id,status");
        AccountStatus s;
        s.user_id = fields[0];
        if (fields[1] == "active") {
            s.state = AccountState::active;
        } else if (fields[1] == "deleted") {
            s.state = AccountState::deleted;
        } else if (fields[1] == "suspended") {
            s.state = AccountState::suspended;
        } else {
            throw ParseError("status csv: unknown status " + fields[1]);
        }
        s.snapshot = snapshot_label;
        out.push_back(std::move(s));
    }
    return out;
}

void write_status_csv(const std::filesystem::path& path, const std::vector<AccountStatus>& statuses) {
    std::string out = "user_id,status\n";
    for (const auto& s : statuses) {
        out += s.user_id;
        out.push_back(',');
        out += to_string(s.state);
        out.push_back('\n');
    }
    io::write_text(path, out);
}

}  // namespace abusekit::status
