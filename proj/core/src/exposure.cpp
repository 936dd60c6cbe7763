#include "parksent/exposure.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <map>

#include <json.hpp>

#include "parksent/errors.hpp"

namespace parksent {

namespace {

using nlohmann::json;

bool binned_order(const BinnedMessage& a, const BinnedMessage& b) {
    if (a.bin != b.bin) return a.bin < b.bin;
    if (a.user_id != b.user_id) return a.user_id < b.user_id;
    return a.id < b.id;
}

json wordtable_to_json(const WordTable& table) {
    json j = json::object();
    for (const auto& [word, n] : table.counts) j[word] = n;
    return j;
}

WordTable wordtable_from_json(const json& j) {
    WordTable t;
    for (const auto& [word, n] : j.items()) t.add(word, n.get<std::uint64_t>());
    return t;
}

}  // namespace

int relative_bin(std::int64_t delta_seconds) {
    if (delta_seconds == 0) return 0;
    const std::int64_t magnitude = std::llabs(delta_seconds);
    const int hours = static_cast<int>((magnitude + 3599) / 3600);  // ceil
    return delta_seconds > 0 ? hours : -hours;
}

std::vector<ExposureEvent> detect_exposures(std::span<const MessageRecord> corpus, TzOffset tz) {
    // earliest in-facility message per (user, local day); ties on timestamp
    // break on message id so input order never matters
    std::map<std::pair<std::string, std::int64_t>, const MessageRecord*> firsts;
    for (const auto& msg : corpus) {
        if (!msg.facility_id) continue;
        const auto key = std::make_pair(msg.user_id, local_civil_day(msg.timestamp, tz));
        auto [it, inserted] = firsts.emplace(key, &msg);
        if (!inserted) {
            const MessageRecord* cur = it->second;
            if (msg.timestamp < cur->timestamp ||
                (msg.timestamp == cur->timestamp && msg.id < cur->id))
                it->second = &msg;
        }
    }

    std::vector<ExposureEvent> events;
    events.reserve(firsts.size());
    for (const auto& [key, msg] : firsts)
        events.push_back(ExposureEvent{key.first, key.second, msg->id, *msg->facility_id,
                                       msg->timestamp});
    return events;
}

BinnedCorpus::BinnedCorpus(int window_hours, std::vector<BinnedMessage> messages,
                           BinDiagnostics diagnostics)
    : window_hours_(window_hours), messages_(std::move(messages)), diagnostics_(diagnostics) {
    std::sort(messages_.begin(), messages_.end(), binned_order);
}

std::span<const BinnedMessage> BinnedCorpus::messages_in_bin(int bin) const {
    const auto lo = std::lower_bound(messages_.begin(), messages_.end(), bin,
                                     [](const BinnedMessage& m, int b) { return m.bin < b; });
    const auto hi = std::upper_bound(messages_.begin(), messages_.end(), bin,
                                     [](int b, const BinnedMessage& m) { return b < m.bin; });
    return std::span<const BinnedMessage>(messages_.data() + (lo - messages_.begin()),
                                          static_cast<std::size_t>(hi - lo));
}

WordTable BinnedCorpus::bin_table(int bin) const {
    WordTable table;
    for (const auto& m : messages_in_bin(bin)) table.merge(m.words);
    return table;
}

BinStats BinnedCorpus::bin_stats(int bin) const {
    BinStats stats;
    for (const auto& m : messages_in_bin(bin)) {
        ++stats.message_count;
        if (m.in_park) ++stats.in_park_count;
    }
    return stats;
}

std::vector<int> BinnedCorpus::occupied_bins() const {
    std::vector<int> bins;
    for (const auto& m : messages_)
        if (bins.empty() || bins.back() != m.bin) bins.push_back(m.bin);
    return bins;
}

std::string BinnedCorpus::to_json_string() const {
    json bins = json::object();
    for (const int bin : occupied_bins()) {
        const BinStats stats = bin_stats(bin);
        bins[std::to_string(bin)] = {{"message_count", stats.message_count},
                                     {"in_park_count", stats.in_park_count},
                                     {"words", wordtable_to_json(bin_table(bin))}};
    }

    json messages = json::array();
    for (const auto& m : messages_) {
        messages.push_back({{"id", m.id},
                            {"user_id", m.user_id},
                            {"bin", m.bin},
                            {"in_park", m.in_park},
                            {"exposure_facility_id", m.exposure_facility_id},
                            {"words", wordtable_to_json(m.words)}});
    }

    json doc;
    doc["window_hours"] = window_hours_;
    doc["bins"] = bins;
    doc["messages"] = messages;
    doc["diagnostics"] = {{"users_with_events", diagnostics_.users_with_events},
                          {"events", diagnostics_.events},
                          {"messages_binned", diagnostics_.messages_binned},
                          {"dropped_no_event", diagnostics_.dropped_no_event},
                          {"dropped_outside_window", diagnostics_.dropped_outside_window},
                          {"avg_secondary_in_park", diagnostics_.avg_secondary_in_park},
                          {"frac_users_no_secondary", diagnostics_.frac_users_no_secondary}};
    return doc.dump(2);
}

BinnedCorpus BinnedCorpus::from_json(std::istream& in) {
    json doc = json::parse(in);
    std::vector<BinnedMessage> messages;
    for (const auto& j : doc.at("messages")) {
        BinnedMessage m;
        m.id = j.at("id").get<std::string>();
        m.user_id = j.at("user_id").get<std::string>();
        m.bin = j.at("bin").get<int>();
        m.in_park = j.at("in_park").get<bool>();
        m.exposure_facility_id = j.at("exposure_facility_id").get<std::string>();
        m.words = wordtable_from_json(j.at("words"));
        messages.push_back(std::move(m));
    }
    BinDiagnostics diag;
    if (doc.contains("diagnostics")) {
        const json& d = doc["diagnostics"];
        diag.users_with_events = d.value("users_with_events", 0ull);
        diag.events = d.value("events", 0ull);
        diag.messages_binned = d.value("messages_binned", 0ull);
        diag.dropped_no_event = d.value("dropped_no_event", 0ull);
        diag.dropped_outside_window = d.value("dropped_outside_window", 0ull);
        diag.avg_secondary_in_park = d.value("avg_secondary_in_park", 0.0);
        diag.frac_users_no_secondary = d.value("frac_users_no_secondary", 0.0);
    }
    return BinnedCorpus(doc.at("window_hours").get<int>(), std::move(messages), diag);
}

BinnedCorpus assign_bins(std::span<const MessageRecord> corpus,
                         std::span<const ExposureEvent> events, int window_hours) {
    if (window_hours < 1) throw ValidationError("window_hours must be >= 1");

    // per-user exposures sorted by time
    std::map<std::string, std::vector<const ExposureEvent*>> by_user;
    std::map<std::string, const ExposureEvent*> by_message;
    for (const auto& ev : events) {
        by_user[ev.user_id].push_back(&ev);
        by_message[ev.message_id] = &ev;
    }
    for (auto& [user, evs] : by_user) {
        (void)user;
        std::sort(evs.begin(), evs.end(), [](const ExposureEvent* a, const ExposureEvent* b) {
            return a->exposure_time < b->exposure_time;
        });
    }

    const std::int64_t window_seconds = static_cast<std::int64_t>(window_hours) * 3600;
    BinDiagnostics diag;
    diag.events = events.size();
    diag.users_with_events = by_user.size();

    std::vector<BinnedMessage> binned;
    std::map<std::string, std::uint64_t> secondary_in_park_per_user;

    for (const auto& msg : corpus) {
        // exposure messages anchor themselves
        if (const auto it = by_message.find(msg.id); it != by_message.end()) {
            binned.push_back(BinnedMessage{msg.id, msg.user_id, 0, true, it->second->facility_id,
                                           tokenize(msg.text)});
            continue;
        }

        const auto user_it = by_user.find(msg.user_id);
        if (user_it == by_user.end()) {
            ++diag.dropped_no_event;
            continue;
        }

        // nearest exposure by absolute distance; equidistant -> earlier one,
        // making the message a post-message
        const ExposureEvent* nearest = nullptr;
        std::int64_t best = 0;
        for (const ExposureEvent* ev : user_it->second) {
            const std::int64_t dist = std::llabs(msg.timestamp - ev->exposure_time);
            if (!nearest || dist < best) {
                nearest = ev;
                best = dist;
            }
        }
        if (best > window_seconds) {
            ++diag.dropped_outside_window;
            continue;
        }

        const std::int64_t dt = msg.timestamp - nearest->exposure_time;
        const int bin = dt == 0 ? 1 : relative_bin(dt);
        const bool in_park = msg.facility_id.has_value();
        if (in_park) ++secondary_in_park_per_user[msg.user_id];
        binned.push_back(
            BinnedMessage{msg.id, msg.user_id, bin, in_park, nearest->facility_id,
                          tokenize(msg.text)});
    }

    diag.messages_binned = binned.size();
    if (diag.users_with_events > 0) {
        std::uint64_t secondary_total = 0;
        std::uint64_t users_without = 0;
        for (const auto& [user, evs] : by_user) {
            (void)evs;
            const auto it = secondary_in_park_per_user.find(user);
            if (it == secondary_in_park_per_user.end()) ++users_without;
            else secondary_total += it->second;
        }
        diag.avg_secondary_in_park =
            static_cast<double>(secondary_total) / static_cast<double>(diag.users_with_events);
        diag.frac_users_no_secondary =
            static_cast<double>(users_without) / static_cast<double>(diag.users_with_events);
    }

    return BinnedCorpus(window_hours, std::move(binned), diag);
}

std::optional<std::set<std::string>> FacilityFilter::resolve(
    std::span<const ParkFacility> facilities) const {
    if (!category && !facility_ids) return std::nullopt;
    std::set<std::string> allowed;
    for (const auto& f : facilities) {
        if (category && f.category != *category) continue;
        if (facility_ids && !facility_ids->contains(f.id)) continue;
        allowed.insert(f.id);
    }
    return allowed;
}

std::vector<const BinnedMessage*> select_messages(
    const BinnedCorpus& binned, int bin_lo, int bin_hi,
    const std::optional<std::set<std::string>>& allowed, bool include_in_park) {
    std::vector<const BinnedMessage*> out;
    for (const auto& m : binned.messages()) {
        if (m.bin < bin_lo || m.bin > bin_hi) continue;
        if (allowed && !allowed->contains(m.exposure_facility_id)) continue;
        if (!include_in_park && m.in_park) continue;
        out.push_back(&m);
    }
    return out;
}

WordTable baseline_table(const BinnedCorpus& binned,
                         const std::optional<std::set<std::string>>& allowed) {
    WordTable pool;
    for (const BinnedMessage* m : select_messages(binned, kBaselineLowBin, kBaselineHighBin, allowed))
        pool.merge(m->words);
    if (pool.total == 0)
        throw EmptyPoolError("baseline pool is empty (bins -6..-2, word count 0)");
    return pool;
}

}  // namespace parksent
