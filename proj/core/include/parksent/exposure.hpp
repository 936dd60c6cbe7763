#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "parksent/corpus.hpp"
#include "parksent/geo.hpp"
#include "parksent/timeutil.hpp"
#include "parksent/wordtable.hpp"

namespace parksent {

/// Anchor for relative-hour binning: the user's first in-facility message on
/// a given calendar day (in the study timezone). At most one per (user, day).
struct ExposureEvent {
    std::string user_id;
    std::int64_t local_day = 0;  // days since epoch in the study timezone
    std::string message_id;
    std::string facility_id;
    Instant exposure_time = 0;
};

/// Relative-hour bin of a time offset: sign(dt) * ceil(|dt| in hours).
/// dt = -3.5 h -> -4, dt = +2.25 h -> +3, dt exactly +1 h -> +1.
int relative_bin(std::int64_t delta_seconds);

// Baseline pool: more than 1 and up to 6 hours before exposure.
inline constexpr int kBaselineLowBin = -6;
inline constexpr int kBaselineHighBin = -2;

struct BinnedMessage {
    std::string id;
    std::string user_id;
    int bin = 0;
    bool in_park = false;                // message itself lies in a facility
    std::string exposure_facility_id;    // facility of the anchoring exposure
    WordTable words;
};

struct BinStats {
    std::uint64_t message_count = 0;
    std::uint64_t in_park_count = 0;
};

struct BinDiagnostics {
    std::uint64_t users_with_events = 0;
    std::uint64_t events = 0;
    std::uint64_t messages_binned = 0;
    std::uint64_t dropped_no_event = 0;   // user had no exposure at all
    std::uint64_t dropped_outside_window = 0;
    double avg_secondary_in_park = 0.0;   // per user with events
    double frac_users_no_secondary = 0.0;
};

/// Messages assigned to relative-hour bins around their nearest exposure.
/// Invariants: bin 0 holds exactly the exposure messages; every kept message
/// is in exactly one bin; |bin| <= window_hours.
class BinnedCorpus {
public:
    BinnedCorpus() = default;
    BinnedCorpus(int window_hours, std::vector<BinnedMessage> messages,
                 BinDiagnostics diagnostics = {});

    int window_hours() const { return window_hours_; }
    std::span<const BinnedMessage> messages() const { return messages_; }
    std::span<const BinnedMessage> messages_in_bin(int bin) const;
    const BinDiagnostics& diagnostics() const { return diagnostics_; }

    WordTable bin_table(int bin) const;
    BinStats bin_stats(int bin) const;
    std::vector<int> occupied_bins() const;

    std::string to_json_string() const;
    static BinnedCorpus from_json(std::istream& in);

private:
    int window_hours_ = 24;
    std::vector<BinnedMessage> messages_;  // sorted by (bin, user_id, id)
    BinDiagnostics diagnostics_;
};

/// First in-facility message per user per local calendar day.
/// Order-independent: ties on the earliest timestamp break on message id.
std::vector<ExposureEvent> detect_exposures(std::span<const MessageRecord> corpus, TzOffset tz);

/// Bin every message against its nearest exposure (same user only, absolute
/// time distance, equidistant ties to the earlier exposure). Messages more
/// than window_hours from every exposure, and messages of users with no
/// exposures, are dropped and counted. Non-exposure messages sharing the
/// exposure's exact timestamp are treated as immediately-post (bin +1) so
/// bin 0 stays exclusively the exposure messages.
BinnedCorpus assign_bins(std::span<const MessageRecord> corpus,
                         std::span<const ExposureEvent> events, int window_hours);

/// Restriction of analyses to exposures in a category or an explicit
/// facility set.
struct FacilityFilter {
    std::optional<ParkCategory> category;
    std::optional<std::set<std::string>> facility_ids;

    /// Allowed facility-id set resolved against a facility list; nullopt
    /// means "all facilities pass".
    std::optional<std::set<std::string>> resolve(std::span<const ParkFacility> facilities) const;
};

/// Messages with bin in [bin_lo, bin_hi], optionally restricted to exposures
/// in `allowed` facilities and optionally excluding in-park-flagged messages.
std::vector<const BinnedMessage*> select_messages(
    const BinnedCorpus& binned, int bin_lo, int bin_hi,
    const std::optional<std::set<std::string>>& allowed = std::nullopt,
    bool include_in_park = true);

/// Pooled baseline word table (bins -6..-2). Throws EmptyPoolError carrying
/// the zero word count when nothing lands in the pool.
WordTable baseline_table(const BinnedCorpus& binned,
                         const std::optional<std::set<std::string>>& allowed = std::nullopt);

}  // namespace parksent
