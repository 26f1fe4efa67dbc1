#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "abusekit/ml.hpp"

namespace abusekit::status {

enum class AccountState { active, deleted, suspended };

std::string_view to_string(AccountState s);

struct AccountStatus {
    std::string user_id;
    AccountState state = AccountState::active;
    std::string snapshot;  // free-form label, e.g. "sept2018"
};

struct ProviderReply {
    bool success = false;
    int error_code = 0;  // meaningful only when !success
};

// 63 -> suspended, 50 -> deleted, success -> active. Anything else is an
// error so a silently mislabeled account cannot leak into the tables.
AccountState resolve_status(const ProviderReply& reply);

class StatusProvider {
public:
    virtual ~StatusProvider() = default;
    virtual ProviderReply fetch(const std::string& user_id) = 0;
};

// Backed by a CSV of user_id,code rows; code 0 means a successful lookup.
class MockStatusProvider final : public StatusProvider {
public:
    explicit MockStatusProvider(const std::filesystem::path& csv);
    ProviderReply fetch(const std::string& user_id) override;

private:
    std::map<std::string, int> codes_;
};

// GET <base_url>/status/<user_id>, expecting {"code": N} with the same code
// semantics as the mock.
class HttpStatusProvider final : public StatusProvider {
public:
    explicit HttpStatusProvider(std::string base_url);
    ProviderReply fetch(const std::string& user_id) override;

private:
    std::string host_;
    int port_ = 80;
};

// Looks up every id, at most max_in_flight concurrently, and returns results
// sorted by user_id regardless of completion order.
std::vector<AccountStatus> fetch_statuses(StatusProvider& provider,
                                          const std::vector<std::string>& user_ids,
                                          const std::string& snapshot_label,
                                          std::size_t max_in_flight = 8);

struct StatusShare {
    double active = 0.0, deleted = 0.0, suspended = 0.0;  // percentages, sum 100
};

// Per-group percentages of active/deleted/suspended.
std::map<std::string, StatusShare> status_distribution(
    const std::vector<AccountStatus>& statuses, const std::map<std::string, std::string>& groups);

// Random-forest emulation of the platform's enforcement outcome, evaluated
// with the standard repeated CV harness.
ml::EvalReport train_status_classifier(const ml::Dataset& features_with_status_labels,
                                       std::uint64_t seed, int repeats = 10, int folds = 10);

struct SnapshotDiff {
    std::vector<std::string> snapshots;  // in input order
    // behavior label -> snapshot -> share
    std::map<std::string, std::map<std::string, StatusShare>> shares;
    // behavior label -> consecutive snapshot-pair deltas (percentage points)
    std::map<std::string, std::vector<StatusShare>> deltas;
};

// Per-label status percentages per snapshot plus deltas between consecutive
// snapshots. All snapshots must cover the same users.
SnapshotDiff snapshot_compare(const std::vector<std::vector<AccountStatus>>& snapshots,
                              const std::map<std::string, std::string>& behavior_labels);

std::vector<AccountStatus> load_status_csv(const std::filesystem::path& path,
                                           const std::string& snapshot_label);
void write_status_csv(const std::filesystem::path& path, const std::vector<AccountStatus>& statuses);

}  // namespace abusekit::status
