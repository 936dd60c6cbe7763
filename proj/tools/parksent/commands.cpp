#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "parksent/corpus.hpp"
#include "parksent/csv.hpp"
#include "parksent/errors.hpp"
#include "parksent/exposure.hpp"
#include "parksent/geo.hpp"
#include "parksent/hedonics.hpp"
#include "parksent/lexicon.hpp"
#include "parksent/rng.hpp"
#include "parksent/synth.hpp"
#include "parksent/vegetation.hpp"
#include "parksent/wordshift.hpp"
#include "sidecar.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace parksent::cli {

namespace {

json load_config_file(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw MissingInputError("config file '" + path + "' not found");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError("config file '" + path + "': " + e.what());
    }
}

template <typename T>
void take(T& dst, const json& config, const char* key) {
    if (config.contains(key)) dst = config.at(key).get<T>();
}

template <typename T, typename U>
void take(T& dst, const std::optional<U>& flag) {
    if (flag) dst = static_cast<T>(*flag);
}

fs::path require_input(const std::string& path, const char* what) {
    if (path.empty()) throw MissingInputError(std::string("no ") + what + " path given");
    if (!fs::exists(path))
        throw MissingInputError(std::string(what) + " file '" + path + "' not found");
    return fs::path(path);
}

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw MissingInputError("cannot open '" + path.string() + "'");
    return in;
}

/// Buffered output set: nothing touches the filesystem until every
/// computation has succeeded, so failed runs leave no partial files.
class OutputSet {
public:
    OutputSet(const Resolved& cfg, std::string subcommand)
        : out_dir_(cfg.out), subcommand_(std::move(subcommand)), cfg_(cfg) {}

    void add(const std::string& name, std::string content) {
        files_.emplace_back(name, std::move(content));
    }
    void add_input(const fs::path& path) { inputs_.push_back(path); }
    json& extra_meta() { return extra_; }

    void write() {
        fs::create_directories(out_dir_);
        std::vector<std::string> names;
        for (const auto& [name, content] : files_) {
            std::ofstream out(out_dir_ / name, std::ios::binary);
            out.write(content.data(), static_cast<std::streamsize>(content.size()));
            if (!out) throw std::runtime_error("failed writing '" + name + "'");
            names.push_back(name);
        }
        json meta = make_sidecar(subcommand_, cfg_.to_json(), inputs_, names);
        if (!extra_.is_null()) meta["stats"] = extra_;
        std::ofstream out(out_dir_ / (subcommand_ + "_meta.json"));
        out << meta.dump(2) << '\n';
    }

private:
    fs::path out_dir_;
    std::string subcommand_;
    const Resolved& cfg_;
    std::vector<std::pair<std::string, std::string>> files_;
    std::vector<fs::path> inputs_;
    json extra_;
};

IngestOptions ingest_options(const Resolved& cfg) {
    IngestOptions opts;
    opts.strict = cfg.strict;
    if (!cfg.study_start.empty()) opts.study_start = parse_rfc3339(cfg.study_start);
    if (!cfg.study_end.empty()) opts.study_end = parse_rfc3339(cfg.study_end);
    return opts;
}

std::vector<MessageRecord> load_corpus(const fs::path& path, const Resolved& cfg,
                                       IngestStats* stats = nullptr) {
    auto in = open_input(path);
    if (path.extension() == ".csv") return ingest_csv(in, ingest_options(cfg), stats);
    return ingest_jsonl(in, ingest_options(cfg), stats);
}

std::string corpus_to_jsonl(std::span<const MessageRecord> corpus) {
    std::string out;
    for (const auto& msg : corpus) {
        out += to_jsonl(msg);
        out.push_back('\n');
    }
    return out;
}

Lens lens_from(const Resolved& cfg) {
    Lens lens;
    lens.low = cfg.lens_low;
    lens.high = cfg.lens_high;
    if (cfg.lens_mode == "open") lens.mode = Lens::Mode::Open;
    else if (cfg.lens_mode == "closed") lens.mode = Lens::Mode::Closed;
    else throw ValidationError("lens mode must be 'open' or 'closed'");
    if (lens.low > lens.high) throw ValidationError("lens low bound exceeds high bound");
    return lens;
}

BootstrapConfig bootstrap_config(const Resolved& cfg) {
    return BootstrapConfig{cfg.runs, cfg.fraction, cfg.seed, cfg.threads};
}

struct PreparedLexicon {
    Lexicon lexicon;                  // lens- and stoplist-filtered
    std::set<std::string> stoplist;   // park-name tokens
    std::size_t raw_entries = 0;
};

PreparedLexicon prepare_lexicon(const Resolved& cfg, std::span<const ParkFacility> facilities,
                                OutputSet& outputs) {
    const fs::path path = require_input(cfg.lexicon, "lexicon");
    outputs.add_input(path);
    auto in = open_input(path);
    PreparedLexicon prepared;
    Lexicon raw = load_lexicon(in);
    prepared.raw_entries = raw.size();

    std::vector<std::string> names;
    names.reserve(facilities.size());
    for (const auto& f : facilities) names.push_back(f.name);
    prepared.stoplist = park_name_stoplist(names);
    prepared.lexicon = remove_words(apply_lens(raw, lens_from(cfg)), prepared.stoplist);

    std::string stoplist_text;
    for (const auto& word : prepared.stoplist) {
        stoplist_text += word;
        stoplist_text.push_back('\n');
    }
    outputs.add("stoplist.txt", std::move(stoplist_text));
    return prepared;
}

std::vector<ParkFacility> load_facilities(const Resolved& cfg, OutputSet& outputs) {
    const fs::path path = require_input(cfg.facilities, "facilities");
    outputs.add_input(path);
    auto in = open_input(path);
    return load_facilities_geojson(in);
}

BinnedCorpus load_binned(const Resolved& cfg, OutputSet& outputs) {
    const fs::path path = require_input(cfg.binned, "binned corpus");
    outputs.add_input(path);
    auto in = open_input(path);
    try {
        return BinnedCorpus::from_json(in);
    } catch (const json::exception& e) {
        throw ValidationError("binned corpus '" + path.string() + "': " + e.what());
    }
}

std::optional<std::set<std::string>> resolve_filter(const Resolved& cfg,
                                                    std::span<const ParkFacility> facilities) {
    if (cfg.category.empty()) return std::nullopt;
    FacilityFilter filter;
    const ParkCategory parsed = parse_category(cfg.category);
    if (parsed != ParkCategory::Other) {
        filter.category = parsed;
    } else {
        // custom label: exact match on the displayed category
        std::set<std::string> ids;
        for (const auto& f : facilities)
            if (f.category_display() == cfg.category) ids.insert(f.id);
        filter.facility_ids = std::move(ids);
    }
    return filter.resolve(facilities);
}

std::vector<const WordTable*> words_of(const std::vector<const BinnedMessage*>& messages) {
    std::vector<const WordTable*> words;
    words.reserve(messages.size());
    for (const BinnedMessage* m : messages) words.push_back(&m->words);
    return words;
}

json lexicon_meta(const PreparedLexicon& prepared) {
    return {{"raw_entries", prepared.raw_entries},
            {"effective_entries", prepared.lexicon.size()},
            {"stoplist_words", prepared.stoplist.size()}};
}

json rng_meta(std::uint64_t seed,
              std::initializer_list<std::pair<const char*, std::uint64_t>> streams) {
    json tags = json::object();
    for (const auto& [name, tag] : streams) tags[name] = tag;
    return {{"master_seed", seed},
            {"derivation", "mt19937_64(splitmix64_chain(seed, stream_tag, index))"},
            {"stream_tags", tags}};
}

std::string diff_csv(const DiffEstimate& est) {
    std::ostringstream out;
    csv::write_row(out, {"delta_mean", "ci_low", "ci_high", "t_statistic", "reject_null",
                         "n_ref_messages", "n_comp_messages", "discarded_runs"});
    csv::write_row(out, {csv::format_double(est.delta_mean), csv::format_double(est.ci_low),
                         csv::format_double(est.ci_high), csv::format_double(est.t_statistic),
                         est.reject_null ? "true" : "false", std::to_string(est.n_ref_messages),
                         std::to_string(est.n_comp_messages), std::to_string(est.discarded_runs)});
    return out.str();
}

}  // namespace

json Resolved::to_json() const {
    json j;
    j["out"] = out;
    if (!corpus.empty()) j["corpus"] = corpus;
    if (!facilities.empty()) j["facilities"] = facilities;
    if (!lexicon.empty()) j["lexicon"] = lexicon;
    if (!raster.empty()) j["raster"] = raster;
    if (!water.empty()) j["water"] = water;
    if (!binned.empty()) j["binned"] = binned;
    if (!veg.empty()) j["veg"] = veg;
    if (!scenario.empty()) j["scenario"] = scenario;
    j["seed"] = seed;
    j["runs"] = runs;
    j["fraction"] = fraction;
    j["lens"] = {lens_low, lens_high};
    j["lens_mode"] = lens_mode;
    j["tz"] = tz;
    j["window"] = window;
    j["veg_threshold"] = veg_threshold;
    if (!category.empty()) j["category"] = category;
    j["strict"] = strict;
    j["include_in_park"] = include_in_park;
    j["threads"] = threads;
    if (!word.empty()) j["word"] = word;
    j["smoothing"] = smoothing;
    j["half_window"] = half_window;
    j["max_per_day"] = max_per_day;
    j["dup_ratio"] = dup_ratio;
    j["language"] = language;
    if (!study_start.empty()) j["study_start"] = study_start;
    if (!study_end.empty()) j["study_end"] = study_end;
    return j;
}

Resolved resolve(const Options& options) {
    Resolved cfg;
    const json config = load_config_file(options.config.value_or(""));

    take(cfg.out, config, "out");
    take(cfg.corpus, config, "corpus");
    take(cfg.facilities, config, "facilities");
    take(cfg.lexicon, config, "lexicon");
    take(cfg.raster, config, "raster");
    take(cfg.water, config, "water");
    take(cfg.binned, config, "binned");
    take(cfg.veg, config, "veg");
    take(cfg.scenario, config, "scenario");
    take(cfg.seed, config, "seed");
    take(cfg.runs, config, "runs");
    take(cfg.fraction, config, "fraction");
    if (config.contains("lens")) {
        cfg.lens_low = config["lens"].at(0).get<double>();
        cfg.lens_high = config["lens"].at(1).get<double>();
    }
    take(cfg.lens_mode, config, "lens_mode");
    take(cfg.tz, config, "tz");
    take(cfg.window, config, "window");
    take(cfg.veg_threshold, config, "veg_threshold");
    take(cfg.category, config, "category");
    take(cfg.strict, config, "strict");
    take(cfg.include_in_park, config, "include_in_park");
    take(cfg.threads, config, "threads");
    take(cfg.word, config, "word");
    take(cfg.smoothing, config, "smoothing");
    take(cfg.half_window, config, "half_window");
    take(cfg.max_per_day, config, "max_per_day");
    take(cfg.dup_ratio, config, "dup_ratio");
    take(cfg.language, config, "language");
    take(cfg.study_start, config, "study_start");
    take(cfg.study_end, config, "study_end");

    take(cfg.out, options.out);
    take(cfg.corpus, options.corpus);
    take(cfg.facilities, options.facilities);
    take(cfg.lexicon, options.lexicon);
    take(cfg.raster, options.raster);
    take(cfg.water, options.water);
    take(cfg.binned, options.binned);
    take(cfg.veg, options.veg);
    take(cfg.scenario, options.scenario);
    take(cfg.seed, options.seed);
    take(cfg.runs, options.runs);
    take(cfg.fraction, options.fraction);
    if (options.lens) {
        const auto comma = options.lens->find(',');
        if (comma == std::string::npos)
            throw ValidationError("--lens expects 'low,high'");
        cfg.lens_low = std::stod(options.lens->substr(0, comma));
        cfg.lens_high = std::stod(options.lens->substr(comma + 1));
    }
    take(cfg.lens_mode, options.lens_mode);
    take(cfg.tz, options.tz);
    take(cfg.window, options.window);
    take(cfg.veg_threshold, options.veg_threshold);
    take(cfg.category, options.category);
    if (options.strict) cfg.strict = true;
    if (options.exclude_in_park) cfg.include_in_park = false;
    if (options.convergence) cfg.convergence = true;
    take(cfg.threads, options.threads);
    take(cfg.word, options.word);
    take(cfg.smoothing, options.smoothing);
    take(cfg.half_window, options.half_window);
    take(cfg.max_per_day, options.max_per_day);
    take(cfg.dup_ratio, options.dup_ratio);
    take(cfg.language, options.language);
    take(cfg.study_start, options.study_start);
    take(cfg.study_end, options.study_end);

    TzOffset::parse(cfg.tz);  // fail fast on a bad timezone
    if (cfg.runs < 1) throw ValidationError("--runs must be >= 1");
    if (!(cfg.fraction > 0.0) || cfg.fraction > 1.0)
        throw ValidationError("--fraction must be in (0, 1]");
    if (cfg.window < 1) throw ValidationError("--window must be >= 1");
    if (cfg.threads < 1) throw ValidationError("--threads must be >= 1");
    return cfg;
}

int cmd_ingest(const Resolved& cfg) {
    OutputSet outputs(cfg, "ingest");
    const fs::path path = require_input(cfg.corpus, "corpus");
    outputs.add_input(path);

    IngestStats stats;
    const auto corpus = load_corpus(path, cfg, &stats);
    outputs.add("corpus.jsonl", corpus_to_jsonl(corpus));
    outputs.extra_meta() = {{"rows_read", stats.rows_read},
                            {"kept", stats.kept},
                            {"malformed", stats.malformed},
                            {"out_of_range", stats.out_of_range},
                            {"out_of_window", stats.out_of_window},
                            {"duplicate_ids", stats.duplicate_ids}};
    outputs.write();
    return 0;
}

int cmd_join(const Resolved& cfg) {
    OutputSet outputs(cfg, "join");
    const fs::path corpus_path = require_input(cfg.corpus, "corpus");
    outputs.add_input(corpus_path);
    auto corpus = load_corpus(corpus_path, cfg);
    const auto facilities = load_facilities(cfg, outputs);

    spatial_join(corpus, facilities);
    std::uint64_t in_park = 0;
    for (const auto& m : corpus)
        if (m.facility_id) ++in_park;

    outputs.add("annotated.jsonl", corpus_to_jsonl(corpus));
    outputs.extra_meta() = {{"messages", corpus.size()},
                            {"in_facility", in_park},
                            {"facilities", facilities.size()}};
    outputs.write();
    return 0;
}

int cmd_bin(const Resolved& cfg) {
    OutputSet outputs(cfg, "bin");
    const fs::path corpus_path = require_input(cfg.corpus, "annotated corpus");
    outputs.add_input(corpus_path);
    const auto corpus = load_corpus(corpus_path, cfg);

    const TzOffset tz = TzOffset::parse(cfg.tz);
    UserFilterConfig filter_config;
    filter_config.max_messages_per_day = cfg.max_per_day;
    filter_config.max_duplicate_ratio = cfg.dup_ratio;
    filter_config.exposure_language = cfg.language;
    filter_config.timezone = tz;
    UserFilterStats filter_stats;
    const auto filtered = filter_users(corpus, filter_config, &filter_stats);

    const auto events = detect_exposures(filtered, tz);
    const BinnedCorpus binned = assign_bins(filtered, events, cfg.window);

    outputs.add("binned.json", binned.to_json_string() + "\n");
    const auto& diag = binned.diagnostics();
    outputs.extra_meta() = {{"users_before", filter_stats.users_before},
                            {"users_kept", filter_stats.users_kept},
                            {"removed_rate", filter_stats.removed_rate},
                            {"removed_duplicates", filter_stats.removed_duplicates},
                            {"removed_language", filter_stats.removed_language},
                            {"events", diag.events},
                            {"messages_binned", diag.messages_binned},
                            {"dropped_no_event", diag.dropped_no_event},
                            {"dropped_outside_window", diag.dropped_outside_window},
                            {"avg_secondary_in_park", diag.avg_secondary_in_park},
                            {"frac_users_no_secondary", diag.frac_users_no_secondary}};
    outputs.write();
    return 0;
}

int cmd_curve(const Resolved& cfg) {
    OutputSet outputs(cfg, "curve");
    const BinnedCorpus binned = load_binned(cfg, outputs);
    if (binned.messages().empty())
        throw EmptyPoolError("curve: binned corpus has no messages");
    const auto facilities = load_facilities(cfg, outputs);
    const auto prepared = prepare_lexicon(cfg, facilities, outputs);
    const auto allowed = resolve_filter(cfg, facilities);

    const auto curve = sentiment_curve(binned, prepared.lexicon, bootstrap_config(cfg), allowed);

    std::ostringstream out;
    csv::write_row(out, {"bin", "mean", "ci_low", "ci_high", "n_words", "n_messages"});
    for (const auto& point : curve) {
        const auto msgs = select_messages(binned, point.bin, point.bin, allowed);
        if (point.estimate) {
            const auto& est = *point.estimate;
            csv::write_row(out, {std::to_string(point.bin), csv::format_double(est.mean),
                                 csv::format_double(est.ci_low), csv::format_double(est.ci_high),
                                 std::to_string(est.n_words), std::to_string(est.n_messages)});
        } else {
            csv::write_row(out, {std::to_string(point.bin), "", "", "", "0",
                                 std::to_string(msgs.size())});
        }
    }
    outputs.add("curve.csv", out.str());
    outputs.extra_meta() = {{"lexicon", lexicon_meta(prepared)},
                            {"rng", rng_meta(cfg.seed, {{"curve_bin", rng::kStreamCurve},
                                                        {"bootstrap_run", rng::kStreamBootstrap}})}};
    outputs.write();
    return 0;
}

int cmd_change(const Resolved& cfg) {
    OutputSet outputs(cfg, "change");
    const BinnedCorpus binned = load_binned(cfg, outputs);
    const auto facilities = load_facilities(cfg, outputs);
    const auto prepared = prepare_lexicon(cfg, facilities, outputs);
    const auto allowed = resolve_filter(cfg, facilities);

    const auto baseline = select_messages(binned, kBaselineLowBin, kBaselineHighBin, allowed);
    const auto exposed = select_messages(binned, 0, 0, allowed);
    if (baseline.empty())
        throw EmptyPoolError("change: baseline pool is empty (bins -6..-2, word count 0)");
    if (exposed.empty()) throw EmptyPoolError("change: no exposure messages in bin 0");

    const auto baseline_words = words_of(baseline);
    const auto exposed_words = words_of(exposed);
    const DiffEstimate est =
        change_in_sentiment(baseline_words, exposed_words, prepared.lexicon, bootstrap_config(cfg));
    outputs.add("change.csv", diff_csv(est));

    if (cfg.convergence) {
        const std::uint32_t counts[] = {50, 100, 200};
        const auto points = convergence_check(baseline_words, exposed_words, prepared.lexicon,
                                              bootstrap_config(cfg), counts);
        std::ostringstream out;
        csv::write_row(out, {"runs", "ci_low", "ci_high", "ci_width"});
        for (const auto& p : points)
            csv::write_row(out, {std::to_string(p.runs), csv::format_double(p.ci_low),
                                 csv::format_double(p.ci_high), csv::format_double(p.ci_width)});
        outputs.add("convergence.csv", out.str());
    }
    outputs.extra_meta() = {{"lexicon", lexicon_meta(prepared)},
                            {"rng", rng_meta(cfg.seed,
                                             {{"bootstrap_run", rng::kStreamBootstrap}})}};
    outputs.write();
    return 0;
}

int cmd_duration(const Resolved& cfg) {
    OutputSet outputs(cfg, "duration");
    const BinnedCorpus binned = load_binned(cfg, outputs);
    const auto facilities = load_facilities(cfg, outputs);
    const auto prepared = prepare_lexicon(cfg, facilities, outputs);
    const auto allowed = resolve_filter(cfg, facilities);

    const DurationResult result = duration(binned, prepared.lexicon, cfg.include_in_park,
                                           bootstrap_config(cfg), allowed);

    std::ostringstream out;
    csv::write_row(out, {"bin", "delta_mean", "ci_low", "ci_high", "t_statistic", "reject_null",
                         "n_messages"});
    for (const auto& [bin, est] : result.per_bin)
        csv::write_row(out, {std::to_string(bin), csv::format_double(est.delta_mean),
                             csv::format_double(est.ci_low), csv::format_double(est.ci_high),
                             csv::format_double(est.t_statistic),
                             est.reject_null ? "true" : "false",
                             std::to_string(est.n_comp_messages)});
    outputs.add("duration.csv", out.str());

    json summary;
    summary["duration_hours"] = result.hours;
    summary["include_secondary_in_park"] = cfg.include_in_park;
    outputs.add("duration.json", summary.dump(2) + "\n");
    outputs.extra_meta() = {{"duration_hours", result.hours},
                            {"lexicon", lexicon_meta(prepared)},
                            {"rng", rng_meta(cfg.seed, {{"duration_bin", rng::kStreamDuration},
                                                        {"bootstrap_run", rng::kStreamBootstrap}})}};
    outputs.write();
    return 0;
}

int cmd_shift(const Resolved& cfg) {
    OutputSet outputs(cfg, "shift");
    const BinnedCorpus binned = load_binned(cfg, outputs);
    const auto facilities = load_facilities(cfg, outputs);
    const auto prepared = prepare_lexicon(cfg, facilities, outputs);
    const auto allowed = resolve_filter(cfg, facilities);

    WordTable reference;
    for (const BinnedMessage* m :
         select_messages(binned, kBaselineLowBin, kBaselineHighBin, allowed))
        reference.merge(m->words);
    WordTable comparison;
    for (const BinnedMessage* m : select_messages(binned, 0, 0, allowed))
        comparison.merge(m->words);
    if (reference.total == 0)
        throw EmptyPoolError("shift: baseline pool is empty (bins -6..-2, word count 0)");
    if (comparison.total == 0) throw EmptyPoolError("shift: no words in bin 0");

    const WordShiftResult result = word_shift(reference, comparison, prepared.lexicon);

    std::ostringstream out;
    csv::write_row(out, {"rank", "word", "score", "polarity", "direction", "contribution",
                         "p_ref", "p_comp"});
    int rank = 0;
    for (const auto& entry : result.entries)
        csv::write_row(out, {std::to_string(++rank), entry.word, csv::format_double(entry.score),
                             polarity_name(entry.polarity), direction_name(entry.direction),
                             csv::format_double(entry.contribution),
                             csv::format_double(entry.p_ref), csv::format_double(entry.p_comp)});
    outputs.add("shift.csv", out.str());
    outputs.extra_meta() = {{"h_ref", result.h_ref},
                            {"h_comp", result.h_comp},
                            {"difference", result.h_comp - result.h_ref},
                            {"lexicon", lexicon_meta(prepared)}};
    outputs.write();
    return 0;
}

int cmd_series(const Resolved& cfg) {
    OutputSet outputs(cfg, "series");
    const BinnedCorpus binned = load_binned(cfg, outputs);
    if (cfg.word.empty()) throw ValidationError("series: --word is required");
    if (binned.messages().empty())
        throw EmptyPoolError("series: binned corpus has no messages");

    const FrequencySeries series =
        frequency_timeseries(binned, cfg.word, cfg.smoothing, cfg.half_window);

    std::ostringstream out;
    csv::write_row(out, {"bin", "raw", "smoothed", "window_mean"});
    const std::string mean_text =
        series.window_mean ? csv::format_double(*series.window_mean) : "";
    for (const auto& point : series.points)
        csv::write_row(out, {std::to_string(point.bin),
                             point.raw ? csv::format_double(*point.raw) : "",
                             point.smoothed ? csv::format_double(*point.smoothed) : "",
                             mean_text});
    outputs.add("series.csv", out.str());
    // denominator note: frequency is per all tokenized words in the bin,
    // not just lexicon-scored ones
    outputs.extra_meta() = {{"word", cfg.word},
                            {"denominator", "all_tokens"},
                            {"smoothing_window", cfg.smoothing},
                            {"half_window", cfg.half_window}};
    outputs.write();
    return 0;
}

int cmd_veg(const Resolved& cfg) {
    OutputSet outputs(cfg, "veg");
    const fs::path raster_path = require_input(cfg.raster, "raster");
    outputs.add_input(raster_path);
    auto raster_in = open_input(raster_path);
    const RasterGrid raster = RasterGrid::load_json(raster_in);
    const auto facilities = load_facilities(cfg, outputs);

    std::vector<PolygonWithHoles> water;
    if (!cfg.water.empty()) {
        const fs::path water_path = require_input(cfg.water, "water mask");
        outputs.add_input(water_path);
        auto water_in = open_input(water_path);
        water = load_polygons_geojson(water_in);
    }

    std::ostringstream out;
    csv::write_row(out, {"facility_id", "name", "category", "acres", "mean_ndvi",
                         "percent_vegetated", "pixels_total", "pixels_water", "pixels_nodata"});
    for (const auto& facility : facilities) {
        const ParkVegStats stats = park_stats(raster, facility, water, cfg.veg_threshold);
        csv::write_row(out, {facility.id, facility.name, facility.category_display(),
                             csv::format_double(facility.acres),
                             csv::format_double(stats.mean_ndvi),
                             csv::format_double(stats.percent_vegetated),
                             std::to_string(stats.pixels_total),
                             std::to_string(stats.pixels_water),
                             std::to_string(stats.pixels_nodata)});
    }
    outputs.add("veg.csv", out.str());
    outputs.write();
    return 0;
}

int cmd_report(const Resolved& cfg) {
    OutputSet outputs(cfg, "report");
    const fs::path veg_path = require_input(cfg.veg, "veg stats");
    outputs.add_input(veg_path);
    auto in = open_input(veg_path);

    const auto header = csv::read_row(in);
    if (!header) throw ValidationError("veg stats file is empty");
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header->size(); ++i) col[(*header)[i]] = i;
    for (const char* required : {"facility_id", "category", "acres", "mean_ndvi",
                                 "percent_vegetated"})
        if (!col.contains(required))
            throw ValidationError(std::string("veg stats file is missing column '") + required +
                                  "'");

    std::vector<ParkVegStats> stats;
    std::vector<ParkFacility> facilities;
    for (;;) {
        const auto row = csv::read_row(in);
        if (!row) break;
        if (row->size() < col.size()) throw ValidationError("short row in veg stats file");
        ParkVegStats s;
        s.facility_id = (*row)[col["facility_id"]];
        s.mean_ndvi = std::stod((*row)[col["mean_ndvi"]]);
        s.percent_vegetated = std::stod((*row)[col["percent_vegetated"]]);
        stats.push_back(s);
        ParkFacility f;
        f.id = s.facility_id;
        const std::string label = (*row)[col["category"]];
        f.category = parse_category(label);
        f.category_label = label;
        f.acres = std::stod((*row)[col["acres"]]);
        facilities.push_back(std::move(f));
    }
    if (stats.empty()) throw EmptyPoolError("report: veg stats file has no rows");

    const auto rows = category_report(stats, facilities);
    std::ostringstream out;
    csv::write_row(out, {"category", "count", "mean_acres", "mean_ndvi",
                         "mean_percent_vegetated"});
    for (const auto& row : rows)
        csv::write_row(out, {row.category, std::to_string(row.count),
                             csv::format_double(row.mean_acres), csv::format_double(row.mean_ndvi),
                             csv::format_double(row.mean_percent_vegetated)});
    outputs.add("report.csv", out.str());
    outputs.write();
    return 0;
}

int cmd_synth(const Resolved& cfg) {
    OutputSet outputs(cfg, "synth");
    const fs::path scenario_path = require_input(cfg.scenario, "scenario");
    outputs.add_input(scenario_path);
    auto in = open_input(scenario_path);
    Scenario scenario;
    try {
        scenario = Scenario::from_json(in);
    } catch (const json::exception& e) {
        throw ValidationError("scenario '" + scenario_path.string() + "': " + e.what());
    }
    if (cfg.seed != 0) scenario.seed = cfg.seed;

    const SynthData data = generate(scenario);
    outputs.add("corpus.jsonl", data.corpus_jsonl());
    outputs.add("facilities.geojson", data.facility_geojson() + "\n");
    outputs.add("lexicon.csv", data.lexicon_csv());
    outputs.add("ground_truth.json", data.ground_truth_json() + "\n");
    outputs.extra_meta() = {{"messages", data.messages.size()},
                            {"users", scenario.users},
                            {"scenario_seed", scenario.seed},
                            {"rng", rng_meta(scenario.seed, {{"synth", rng::kStreamSynth}})}};
    outputs.write();
    return 0;
}

}  // namespace parksent::cli
