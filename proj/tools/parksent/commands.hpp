#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace parksent::cli {

/// A required input path that is absent or does not exist. Exit code 2.
class MissingInputError : public std::runtime_error {
public:
    explicit MissingInputError(const std::string& what) : std::runtime_error(what) {}
};

/// Flag values as parsed; nullopt means "not given on the command line".
struct Options {
    std::optional<std::string> config;
    std::optional<std::string> corpus, facilities, lexicon, raster, water, binned, veg, scenario;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint32_t> runs;
    std::optional<double> fraction;
    std::optional<std::string> lens;       // "low,high"
    std::optional<std::string> lens_mode;  // open | closed
    std::optional<std::string> tz;
    std::optional<int> window;
    std::optional<double> veg_threshold;
    std::optional<std::string> category;
    bool strict = false;
    bool exclude_in_park = false;
    bool convergence = false;
    std::optional<std::uint32_t> threads;
    std::optional<std::string> word;
    std::optional<int> smoothing;
    std::optional<int> half_window;
    std::optional<int> max_per_day;
    std::optional<double> dup_ratio;
    std::optional<std::string> language;
    std::optional<std::string> study_start, study_end;
};

/// Flags override the JSON config file, which overrides built-in defaults.
struct Resolved {
    std::string out = "out";
    std::string corpus, facilities, lexicon, raster, water, binned, veg, scenario;
    std::uint64_t seed = 0;
    std::uint32_t runs = 100;
    double fraction = 0.8;
    double lens_low = 4.0;
    double lens_high = 6.0;
    std::string lens_mode = "open";
    std::string tz = "UTC-7";
    int window = 24;
    double veg_threshold = 0.2;
    std::string category;  // empty: all facilities
    bool strict = false;
    bool include_in_park = true;
    bool convergence = false;
    std::uint32_t threads = 1;
    std::string word;
    int smoothing = 3;
    int half_window = 12;
    int max_per_day = 100;
    double dup_ratio = 0.5;
    std::string language = "en";
    std::string study_start, study_end;

    nlohmann::json to_json() const;
};

Resolved resolve(const Options& options);

int cmd_ingest(const Resolved& cfg);
int cmd_join(const Resolved& cfg);
int cmd_bin(const Resolved& cfg);
int cmd_curve(const Resolved& cfg);
int cmd_change(const Resolved& cfg);
int cmd_duration(const Resolved& cfg);
int cmd_shift(const Resolved& cfg);
int cmd_series(const Resolved& cfg);
int cmd_veg(const Resolved& cfg);
int cmd_report(const Resolved& cfg);
int cmd_synth(const Resolved& cfg);

}  // namespace parksent::cli
