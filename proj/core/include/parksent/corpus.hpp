#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parksent/timeutil.hpp"
#include "parksent/wordtable.hpp"

namespace parksent {

/// One geotagged, timestamped message.
/// facility_id is empty until spatial_join annotates the record.
struct MessageRecord {
    std::string id;
    std::string user_id;
    Instant timestamp = 0;
    std::string text;
    std::string language;  // BCP-47-ish tag, may be empty (unknown)
    double lat = 0.0;
    double lon = 0.0;
    std::optional<std::string> facility_id;
};

struct IngestOptions {
    bool strict = false;  // abort on bad rows instead of skipping
    std::optional<Instant> study_start;
    std::optional<Instant> study_end;
};

struct IngestStats {
    std::uint64_t rows_read = 0;
    std::uint64_t kept = 0;
    std::uint64_t malformed = 0;
    std::uint64_t out_of_range = 0;
    std::uint64_t out_of_window = 0;
    std::uint64_t duplicate_ids = 0;
};

/// Read newline-delimited JSON records {id, user_id, timestamp, text,
/// language, lat, lon}. Duplicate ids keep the first occurrence. Output is
/// sorted by (user_id, timestamp, id), so it does not depend on input order.
/// In strict mode a malformed or out-of-range row throws ValidationError;
/// otherwise the row is counted and skipped.
std::vector<MessageRecord> ingest_jsonl(std::istream& in, const IngestOptions& options,
                                        IngestStats* stats = nullptr);

/// Same contract for CSV input with a header row naming the same columns.
std::vector<MessageRecord> ingest_csv(std::istream& in, const IngestOptions& options,
                                      IngestStats* stats = nullptr);

/// One corpus line as written by the `ingest`/`join` subcommands.
std::string to_jsonl(const MessageRecord& record);

struct UserFilterConfig {
    int max_messages_per_day = 100;
    double max_duplicate_ratio = 0.5;
    /// Users whose in-park messages are all in another language are dropped.
    /// Empty disables the language rule. Users with no in-park messages are
    /// not touched by it.
    std::string exposure_language = "en";
    TzOffset timezone = TzOffset::utc_minus_7();
};

struct UserFilterStats {
    std::uint64_t users_before = 0;
    std::uint64_t users_kept = 0;
    std::uint64_t removed_rate = 0;       // over max messages/day
    std::uint64_t removed_duplicates = 0; // over duplicate-text ratio
    std::uint64_t removed_language = 0;   // no in-park message in the language
    std::uint64_t messages_removed = 0;
};

/// Drop bot-like and off-language users. Expects a corpus already annotated
/// by spatial_join (the language rule looks at in-park messages).
std::vector<MessageRecord> filter_users(std::span<const MessageRecord> corpus,
                                        const UserFilterConfig& config,
                                        UserFilterStats* stats = nullptr);

}  // namespace parksent
