#include "parksent/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "parksent/csv.hpp"
#include "parksent/errors.hpp"
#include "parksent/rng.hpp"
#include "parksent/wordtable.hpp"

namespace parksent {

namespace {

using nlohmann::json;

constexpr double kParkCenterLon = -122.44;
constexpr double kParkCenterLat = 37.77;
constexpr double kParkHalfWidth = 0.002;   // ~200 m
constexpr double kOutsideLonOffset = 0.05; // well clear of the park

std::string padded(const char* prefix, int value, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%0*d", prefix, width, value);
    return buf;
}

}  // namespace

Scenario Scenario::from_json(std::istream& in) {
    json doc = json::parse(in);
    Scenario s;
    s.seed = doc.value("seed", s.seed);
    s.users = doc.value("users", s.users);
    s.messages_per_user_per_bin = doc.value("messages_per_user_per_bin", s.messages_per_user_per_bin);
    if (doc.contains("words_per_message")) {
        s.words_per_message_min = doc["words_per_message"].value("min", s.words_per_message_min);
        s.words_per_message_max = doc["words_per_message"].value("max", s.words_per_message_max);
    }
    for (const auto& w : doc.at("vocabulary"))
        s.vocabulary.push_back(VocabularyWord{w.at("word").get<std::string>(),
                                              w.at("score").get<double>(),
                                              w.at("probability").get<double>()});
    if (doc.contains("effect_profile"))
        for (const auto& [bin, shift] : doc["effect_profile"].items())
            s.effect_profile[std::stoi(bin)] = shift.get<double>();
    if (doc.contains("bins"))
        for (const auto& b : doc["bins"]) s.bins.push_back(b.get<int>());
    s.window_hours = doc.value("window_hours", s.window_hours);
    s.exposure_time = doc.value("exposure_time", s.exposure_time);
    s.park_name = doc.value("park_name", s.park_name);
    s.park_category = doc.value("park_category", s.park_category);
    s.validate();
    return s;
}

double Scenario::baseline_sentiment() const {
    double h = 0.0;
    for (const auto& w : vocabulary) h += w.probability * w.score;
    return h;
}

std::vector<double> Scenario::mixture_for_bin(int bin) const {
    std::vector<double> p;
    p.reserve(vocabulary.size());
    const auto it = effect_profile.find(bin);
    const double shift = it == effect_profile.end() ? 0.0 : it->second;
    if (shift == 0.0) {
        for (const auto& w : vocabulary) p.push_back(w.probability);
        return p;
    }
    const double h0 = baseline_sentiment();
    double variance = 0.0;
    for (const auto& w : vocabulary) variance += w.probability * (w.score - h0) * (w.score - h0);
    if (variance == 0.0)
        throw ValidationError("infeasible tilt: vocabulary has zero score variance");
    const double lambda = shift / variance;
    for (const auto& w : vocabulary) {
        const double weight = w.probability * (1.0 + lambda * (w.score - h0));
        if (weight < 0.0)
            throw ValidationError("infeasible tilt: shift " + csv::format_double(shift) +
                                  " at bin " + std::to_string(bin) +
                                  " exceeds the vocabulary's achievable range");
        p.push_back(weight);
    }
    return p;
}

double Scenario::expected_sentiment(int bin) const {
    const auto p = mixture_for_bin(bin);
    double h = 0.0;
    for (std::size_t i = 0; i < vocabulary.size(); ++i) h += p[i] * vocabulary[i].score;
    return h;
}

void Scenario::validate() const {
    if (users < 1) throw ValidationError("scenario: users must be >= 1");
    if (messages_per_user_per_bin < 0.0)
        throw ValidationError("scenario: message rate must be >= 0");
    if (words_per_message_min < 1 || words_per_message_max < words_per_message_min)
        throw ValidationError("scenario: bad words_per_message bounds");
    if (window_hours < 1) throw ValidationError("scenario: window_hours must be >= 1");
    if (vocabulary.empty()) throw ValidationError("scenario: vocabulary is empty");

    double prob_sum = 0.0;
    std::set<std::string> seen;
    for (const auto& w : vocabulary) {
        if (w.probability < 0.0)
            throw ValidationError("scenario: negative probability for '" + w.word + "'");
        if (w.score < kMinScore || w.score > kMaxScore)
            throw ValidationError("scenario: score for '" + w.word + "' outside [1, 9]");
        if (!seen.insert(w.word).second)
            throw ValidationError("scenario: duplicate vocabulary word '" + w.word + "'");
        const WordTable tokens = tokenize(w.word);
        if (tokens.counts.size() != 1 || tokens.counts.begin()->first != w.word)
            throw ValidationError("scenario: vocabulary word '" + w.word +
                                  "' does not tokenize to itself");
        prob_sum += w.probability;
    }
    if (std::abs(prob_sum - 1.0) > 1e-9)
        throw ValidationError("scenario: vocabulary probabilities sum to " +
                              csv::format_double(prob_sum) + ", expected 1");

    const WordTable name_tokens = tokenize(park_name);
    for (const auto& [token, n] : name_tokens.counts) {
        (void)n;
        if (seen.contains(token))
            throw ValidationError("scenario: park name token '" + token +
                                  "' collides with a vocabulary word (the stoplist would "
                                  "unscore it)");
    }

    for (const auto& [bin, shift] : effect_profile) {
        if (bin < -window_hours || bin > window_hours)
            throw ValidationError("scenario: effect bin " + std::to_string(bin) +
                                  " outside the window");
        (void)shift;
        mixture_for_bin(bin);  // feasibility
    }
    for (const int bin : bins)
        if (bin == 0 || bin < -window_hours || bin > window_hours)
            throw ValidationError("scenario: populated bin " + std::to_string(bin) +
                                  " must be nonzero and inside the window");
    parse_rfc3339(exposure_time);
}

SynthData generate(const Scenario& scenario) {
    scenario.validate();

    SynthData data;
    data.truth.seed = scenario.seed;
    data.truth.baseline_sentiment = scenario.baseline_sentiment();
    data.truth.planted_shift = scenario.effect_profile;

    // park square centered on a fixed point
    Ring outer = {{kParkCenterLon - kParkHalfWidth, kParkCenterLat - kParkHalfWidth},
                  {kParkCenterLon + kParkHalfWidth, kParkCenterLat - kParkHalfWidth},
                  {kParkCenterLon + kParkHalfWidth, kParkCenterLat + kParkHalfWidth},
                  {kParkCenterLon - kParkHalfWidth, kParkCenterLat + kParkHalfWidth}};
    data.park.id = "synth-park-1";
    data.park.name = scenario.park_name;
    data.park.category = parse_category(scenario.park_category);
    data.park.category_label = scenario.park_category;
    data.park.geometry.push_back(PolygonWithHoles{std::move(outer), {}});
    data.park.acres = 24.0;

    for (const auto& w : scenario.vocabulary)
        data.lexicon_entries.push_back(LexiconEntry{w.word, w.score});

    std::vector<int> bins = scenario.bins;
    if (bins.empty()) {
        for (int b = -scenario.window_hours; b <= scenario.window_hours; ++b)
            if (b != 0) bins.push_back(b);
    }
    std::sort(bins.begin(), bins.end());

    // per-bin cumulative mixtures, bin 0 included for the exposure draws
    std::map<int, std::vector<double>> cumulative;
    auto cumulative_for = [&](int bin) {
        auto p = scenario.mixture_for_bin(bin);
        double acc = 0.0;
        for (double& v : p) {
            acc += v;
            v = acc;
        }
        return p;
    };
    for (const int b : bins) cumulative.emplace(b, cumulative_for(b));
    cumulative.emplace(0, cumulative_for(0));

    for (const int b : bins) data.truth.expected_sentiment[b] = scenario.expected_sentiment(b);
    data.truth.expected_sentiment[0] = scenario.expected_sentiment(0);

    const Instant exposure_time = parse_rfc3339(scenario.exposure_time);
    auto eng = rng::make_engine(scenario.seed, {rng::kStreamSynth});

    auto draw_word = [&](const std::vector<double>& cum) -> const std::string& {
        const double u = rng::uniform01(eng) * cum.back();
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        const std::size_t i = std::min(static_cast<std::size_t>(it - cum.begin()),
                                       cum.size() - 1);
        return scenario.vocabulary[i].word;
    };
    auto draw_text = [&](const std::vector<double>& cum) {
        const int n_words = static_cast<int>(rng::uniform_int(
            eng, scenario.words_per_message_min, scenario.words_per_message_max));
        std::string text;
        for (int w = 0; w < n_words; ++w) {
            if (w) text.push_back(' ');
            text += draw_word(cum);
        }
        return text;
    };

    int message_counter = 0;
    for (int u = 0; u < scenario.users; ++u) {
        const std::string user_id = padded("u", u + 1, 5);

        // exposure message, inside the park
        MessageRecord exposure;
        exposure.id = padded("m", ++message_counter, 8);
        exposure.user_id = user_id;
        exposure.timestamp = exposure_time;
        exposure.text = draw_text(cumulative.at(0));
        exposure.language = "en";
        exposure.lat = kParkCenterLat;
        exposure.lon = kParkCenterLon;
        data.messages.push_back(std::move(exposure));

        for (const int b : bins) {
            const std::uint32_t count = rng::poisson(eng, scenario.messages_per_user_per_bin);
            for (std::uint32_t m = 0; m < count; ++m) {
                // |dt| uniform over the bin's half-open hour: ((|b|-1)h, |b|h]
                const std::int64_t magnitude = rng::uniform_int(
                    eng, static_cast<std::int64_t>(std::abs(b) - 1) * 3600 + 1,
                    static_cast<std::int64_t>(std::abs(b)) * 3600);
                const std::int64_t dt = b > 0 ? magnitude : -magnitude;
                MessageRecord msg;
                msg.id = padded("m", ++message_counter, 8);
                msg.user_id = user_id;
                msg.timestamp = exposure_time + dt;
                msg.text = draw_text(cumulative.at(b));
                msg.language = "en";
                msg.lat = kParkCenterLat;
                msg.lon = kParkCenterLon + kOutsideLonOffset;
                data.messages.push_back(std::move(msg));
            }
        }
    }
    return data;
}

std::string SynthData::corpus_jsonl() const {
    std::string out;
    for (const auto& msg : messages) {
        out += to_jsonl(msg);
        out.push_back('\n');
    }
    return out;
}

std::string SynthData::facility_geojson() const {
    return facilities_to_geojson({&park, 1});
}

std::string SynthData::lexicon_csv() const {
    std::ostringstream out;
    csv::write_row(out, {"word", "score"});
    for (const auto& entry : lexicon_entries)
        csv::write_row(out, {entry.word, csv::format_double(entry.score)});
    return out.str();
}

std::string SynthData::ground_truth_json() const {
    json doc;
    doc["seed"] = truth.seed;
    doc["baseline_sentiment"] = truth.baseline_sentiment;
    json expected = json::object();
    for (const auto& [bin, h] : truth.expected_sentiment) expected[std::to_string(bin)] = h;
    doc["expected_sentiment"] = expected;
    json shifts = json::object();
    for (const auto& [bin, s] : truth.planted_shift) shifts[std::to_string(bin)] = s;
    doc["planted_shift"] = shifts;
    return doc.dump(2);
}

}  // namespace parksent
