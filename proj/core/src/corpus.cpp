#include "parksent/corpus.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "parksent/csv.hpp"
#include "parksent/errors.hpp"

namespace parksent {

namespace {

using nlohmann::json;

struct RowError {
    enum Kind { Malformed, OutOfRange, OutOfWindow } kind;
    std::string message;
};

std::optional<RowError> validate_record(MessageRecord& rec, const IngestOptions& options) {
    if (rec.id.empty() || rec.user_id.empty())
        return RowError{RowError::Malformed, "empty id or user_id"};
    if (rec.lat < -90.0 || rec.lat > 90.0 || rec.lon < -180.0 || rec.lon > 180.0)
        return RowError{RowError::OutOfRange,
                        "coordinates out of range (lat " + csv::format_double(rec.lat) + ", lon " +
                            csv::format_double(rec.lon) + ")"};
    if ((options.study_start && rec.timestamp < *options.study_start) ||
        (options.study_end && rec.timestamp > *options.study_end))
        return RowError{RowError::OutOfWindow, "timestamp outside study window"};
    return std::nullopt;
}

MessageRecord record_from_json(const json& j) {
    MessageRecord rec;
    rec.id = j.at("id").get<std::string>();
    rec.user_id = j.at("user_id").get<std::string>();
    rec.timestamp = parse_rfc3339(j.at("timestamp").get<std::string>());
    rec.text = j.at("text").get<std::string>();
    if (j.contains("language") && !j["language"].is_null())
        rec.language = j["language"].get<std::string>();
    rec.lat = j.at("lat").get<double>();
    rec.lon = j.at("lon").get<double>();
    if (j.contains("facility_id") && !j["facility_id"].is_null())
        rec.facility_id = j["facility_id"].get<std::string>();
    return rec;
}

void finalize(std::vector<MessageRecord>& corpus, IngestStats* stats, IngestStats& local) {
    std::sort(corpus.begin(), corpus.end(), [](const MessageRecord& a, const MessageRecord& b) {
        if (a.user_id != b.user_id) return a.user_id < b.user_id;
        if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
        return a.id < b.id;
    });
    local.kept = corpus.size();
    if (stats) *stats = local;
}

template <typename ReadRow>
std::vector<MessageRecord> ingest_impl(const IngestOptions& options, IngestStats* stats,
                                       ReadRow&& read_row) {
    std::vector<MessageRecord> corpus;
    std::unordered_set<std::string> seen_ids;
    IngestStats local;

    for (;;) {
        std::optional<MessageRecord> rec;
        ++local.rows_read;
        try {
            rec = read_row();
        } catch (const std::exception& e) {
            if (options.strict)
                throw ValidationError("row " + std::to_string(local.rows_read) + ": " + e.what());
            ++local.malformed;
            continue;
        }
        if (!rec) {
            --local.rows_read;  // the EOF probe was not a row
            break;
        }

        if (const auto err = validate_record(*rec, options)) {
            if (err->kind == RowError::Malformed) {
                if (options.strict)
                    throw ValidationError("row " + std::to_string(local.rows_read) + ": " +
                                          err->message);
                ++local.malformed;
            } else if (err->kind == RowError::OutOfRange) {
                if (options.strict)
                    throw ValidationError("row " + std::to_string(local.rows_read) + ": " +
                                          err->message);
                ++local.out_of_range;
            } else {
                ++local.out_of_window;
            }
            continue;
        }
        if (!seen_ids.insert(rec->id).second) {
            ++local.duplicate_ids;
            continue;
        }
        corpus.push_back(std::move(*rec));
    }

    finalize(corpus, stats, local);
    return corpus;
}

}  // namespace

std::vector<MessageRecord> ingest_jsonl(std::istream& in, const IngestOptions& options,
                                        IngestStats* stats) {
    std::string line;
    return ingest_impl(options, stats, [&]() -> std::optional<MessageRecord> {
        for (;;) {
            if (!std::getline(in, line)) return std::nullopt;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            return record_from_json(json::parse(line));
        }
    });
}

std::vector<MessageRecord> ingest_csv(std::istream& in, const IngestOptions& options,
                                      IngestStats* stats) {
    const auto header = csv::read_row(in);
    if (!header) throw ValidationError("empty CSV corpus: missing header row");
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header->size(); ++i) col[(*header)[i]] = i;
    for (const char* required : {"id", "user_id", "timestamp", "text", "lat", "lon"})
        if (!col.contains(required))
            throw ValidationError(std::string("CSV corpus header is missing column '") + required +
                                  "'");

    return ingest_impl(options, stats, [&]() -> std::optional<MessageRecord> {
        const auto row = csv::read_row(in);
        if (!row) return std::nullopt;
        auto field = [&](const char* name) -> const std::string& {
            const auto it = col.find(name);
            if (it == col.end() || it->second >= row->size())
                throw ValidationError(std::string("missing field '") + name + "'");
            return (*row)[it->second];
        };
        MessageRecord rec;
        rec.id = field("id");
        rec.user_id = field("user_id");
        rec.timestamp = parse_rfc3339(field("timestamp"));
        rec.text = field("text");
        if (col.contains("language") && col["language"] < row->size())
            rec.language = (*row)[col["language"]];
        rec.lat = std::stod(field("lat"));
        rec.lon = std::stod(field("lon"));
        return rec;
    });
}

std::string to_jsonl(const MessageRecord& record) {
    json j;
    j["id"] = record.id;
    j["user_id"] = record.user_id;
    j["timestamp"] = format_rfc3339_utc(record.timestamp);
    j["text"] = record.text;
    j["language"] = record.language;
    j["lat"] = record.lat;
    j["lon"] = record.lon;
    if (record.facility_id) j["facility_id"] = *record.facility_id;
    return j.dump();
}

std::vector<MessageRecord> filter_users(std::span<const MessageRecord> corpus,
                                        const UserFilterConfig& config, UserFilterStats* stats) {
    // corpus is sorted by user; group in one pass
    UserFilterStats local;
    std::vector<MessageRecord> out;
    out.reserve(corpus.size());

    std::size_t i = 0;
    while (i < corpus.size()) {
        std::size_t j = i;
        while (j < corpus.size() && corpus[j].user_id == corpus[i].user_id) ++j;
        const auto user = corpus.subspan(i, j - i);
        ++local.users_before;

        bool drop = false;

        // messages-per-day cap
        std::map<std::int64_t, int> per_day;
        for (const auto& m : user) ++per_day[local_civil_day(m.timestamp, config.timezone)];
        for (const auto& [day, n] : per_day) {
            (void)day;
            if (n > config.max_messages_per_day) {
                drop = true;
                ++local.removed_rate;
                break;
            }
        }

        // duplicate-text ratio: share of messages whose text occurs
        // more than once for this user
        if (!drop) {
            std::map<std::string_view, std::uint64_t> text_counts;
            for (const auto& m : user) ++text_counts[m.text];
            std::uint64_t duplicated = 0;
            for (const auto& [text, n] : text_counts) {
                (void)text;
                if (n > 1) duplicated += n;
            }
            const double ratio =
                user.empty() ? 0.0 : static_cast<double>(duplicated) / static_cast<double>(user.size());
            if (ratio > config.max_duplicate_ratio) {
                drop = true;
                ++local.removed_duplicates;
            }
        }

        // language rule, applied only to park visitors
        if (!drop && !config.exposure_language.empty()) {
            bool has_in_park = false;
            bool has_in_language = false;
            for (const auto& m : user) {
                if (!m.facility_id) continue;
                has_in_park = true;
                if (m.language == config.exposure_language) {
                    has_in_language = true;
                    break;
                }
            }
            if (has_in_park && !has_in_language) {
                drop = true;
                ++local.removed_language;
            }
        }

        if (drop) {
            local.messages_removed += user.size();
        } else {
            ++local.users_kept;
            out.insert(out.end(), user.begin(), user.end());
        }
        i = j;
    }

    if (stats) *stats = local;
    return out;
}

}  // namespace parksent
