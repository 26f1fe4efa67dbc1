#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abusekit/corpus.hpp"

namespace abusekit::sessions {

inline constexpr std::int64_t kDefaultGapSecs = 8 * 3600;

// A maximal run of one user's time-sorted tweets with consecutive gaps <= t_l.
struct Session {
    std::string user_id;
    std::vector<corpus::Tweet> tweets;
    std::size_t index = 0;  // position within the user's session sequence
};

// A 5-10 tweet chunk of a session, the unit shown to annotators.
struct Batch {
    std::string id;  // "<user_id>:<k>", k counting the user's batches
    std::string user_id;
    std::vector<corpus::Tweet> tweets;
    std::size_t session_index = 0;
};

enum class Label { bully, aggressor, spammer, normal };

std::string_view to_string(Label l);
std::optional<Label> label_from_string(std::string_view s);

// Lower rank = more severe; used for tie-breaking.
int severity_rank(Label l);

struct Annotation {
    std::string batch_id;
    std::string worker_id;
    Label label = Label::normal;
    bool is_control = false;
    std::optional<Label> gold;  // control cases carry the known answer
};

enum class MajorityStrength { none, basic, strong, absolute };

std::string_view to_string(MajorityStrength s);

struct AggregatedLabel {
    std::string batch_id;
    std::optional<Label> final_label;  // present iff some label got >= 3 of 5 votes
    std::map<Label, int> votes;
    MajorityStrength strength = MajorityStrength::none;
};

// Drops users with fewer than min_tweets tweets inside [window_start, window_end].
std::map<std::string, std::vector<corpus::Tweet>> filter_low_activity(
    const std::map<std::string, std::vector<corpus::Tweet>>& users, std::size_t min_tweets,
    std::int64_t window_start, std::int64_t window_end);

// Partitions one user's tweets sorted by (timestamp, id); a new session
// starts exactly when the gap to the previous tweet exceeds t_l.
std::vector<Session> build_sessions(const std::vector<corpus::Tweet>& sorted_tweets,
                                    std::int64_t t_l = kDefaultGapSecs);

// Sorts each user's timeline and sessionizes it; output grouped by user_id.
std::vector<Session> sessions_by_user(const std::map<std::string, std::vector<corpus::Tweet>>& users,
                                      std::int64_t t_l = kDefaultGapSecs);

// Sessions under 5 tweets are dropped; 5-10 become one batch; larger sessions
// split into ceil(size/10) contiguous chunks as evenly as possible, larger
// chunks first.
std::vector<Batch> make_batches(const std::vector<Session>& sessions);

AggregatedLabel aggregate_annotations(const std::string& batch_id,
                                      const std::vector<Annotation>& annotations);

// Majority over a user's batch labels, ties resolved toward the more severe.
Label user_label(const std::vector<Label>& batch_labels);

struct ControlAccuracy {
    double overall = 0.0;
    std::map<Label, double> per_label;
    std::size_t total = 0;
};

ControlAccuracy control_accuracy(const std::vector<Annotation>& controls);

// CSV: batch_id,worker_id,label,is_control,gold_label(optional)
std::vector<Annotation> load_annotations_csv(const std::filesystem::path& path);
void write_annotations_csv(const std::filesystem::path& path, const std::vector<Annotation>& annotations);

void write_batches(const std::filesystem::path& path, const std::vector<Batch>& batches);

}  // namespace abusekit::sessions
