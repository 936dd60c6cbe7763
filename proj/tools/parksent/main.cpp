#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "parksent/errors.hpp"
#include "parksent/version.hpp"

using parksent::cli::Options;
using parksent::cli::Resolved;

namespace {

int fail(int code, const std::string& kind, const std::string& message) {
    nlohmann::json err;
    err["error"] = {{"code", code}, {"kind", kind}, {"message", message}};
    std::cerr << err.dump() << '\n';
    return code;
}

void add_common_flags(CLI::App* cmd, Options& options) {
    cmd->add_option("--config", options.config, "JSON config file; flags override it");
    cmd->add_option("--out", options.out, "output directory (default: out)");
    cmd->add_option("--seed", options.seed, "master seed for all randomness");
    cmd->add_option("--threads", options.threads, "bootstrap worker threads");
    cmd->add_flag("--strict", options.strict, "abort on malformed rows instead of skipping");
}

void add_analysis_flags(CLI::App* cmd, Options& options) {
    cmd->add_option("--binned", options.binned, "binned corpus JSON from `bin`");
    cmd->add_option("--lexicon", options.lexicon, "word,score lexicon CSV/TSV");
    cmd->add_option("--facilities", options.facilities, "facilities GeoJSON");
    cmd->add_option("--runs", options.runs, "bootstrap runs (default 100)");
    cmd->add_option("--fraction", options.fraction, "subsample fraction (default 0.8)");
    cmd->add_option("--lens", options.lens, "score exclusion band 'low,high' (default 4,6)");
    cmd->add_option("--lens-mode", options.lens_mode, "open|closed band bounds (default open)");
    cmd->add_option("--category", options.category, "restrict to one facility category");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parksent: event-relative sentiment and greenspace statistics toolkit"};
    app.set_version_flag("--version", std::string("parksent ") + parksent::kVersion);
    app.require_subcommand(1);

    Options options;
    std::map<std::string, std::function<int(const Resolved&)>> handlers;

    auto* ingest = app.add_subcommand("ingest", "validate and normalize a raw corpus");
    add_common_flags(ingest, options);
    ingest->add_option("--corpus", options.corpus, "JSONL or CSV corpus");
    ingest->add_option("--study-start", options.study_start, "drop messages before (RFC 3339)");
    ingest->add_option("--study-end", options.study_end, "drop messages after (RFC 3339)");
    handlers["ingest"] = parksent::cli::cmd_ingest;

    auto* join = app.add_subcommand("join", "annotate messages with containing facilities");
    add_common_flags(join, options);
    join->add_option("--corpus", options.corpus, "ingested corpus.jsonl");
    join->add_option("--facilities", options.facilities, "facilities GeoJSON");
    handlers["join"] = parksent::cli::cmd_join;

    auto* bin = app.add_subcommand("bin", "filter users, detect exposures, bin by relative hour");
    add_common_flags(bin, options);
    bin->add_option("--corpus", options.corpus, "annotated.jsonl from `join`");
    bin->add_option("--tz", options.tz, "study timezone, fixed UTC offset (default UTC-7)");
    bin->add_option("--window", options.window, "window half-width in hours (default 24)");
    bin->add_option("--max-per-day", options.max_per_day, "user cap on messages/day (default 100)");
    bin->add_option("--dup-ratio", options.dup_ratio, "user cap on duplicate-text ratio (default 0.5)");
    bin->add_option("--language", options.language, "required exposure language (default en, '' disables)");
    handlers["bin"] = parksent::cli::cmd_bin;

    auto* curve = app.add_subcommand("curve", "per-bin bootstrap sentiment across the window");
    add_common_flags(curve, options);
    add_analysis_flags(curve, options);
    handlers["curve"] = parksent::cli::cmd_curve;

    auto* change = app.add_subcommand("change", "bootstrap change in sentiment, baseline vs bin 0");
    add_common_flags(change, options);
    add_analysis_flags(change, options);
    change->add_flag("--convergence", options.convergence,
                     "also re-estimate at 50/100/200 runs and report CI drift");
    handlers["change"] = parksent::cli::cmd_change;

    auto* duration = app.add_subcommand("duration", "hours of elevated sentiment after exposure");
    add_common_flags(duration, options);
    add_analysis_flags(duration, options);
    duration->add_flag("--exclude-in-park", options.exclude_in_park,
                       "exclude secondary in-park messages from post bins");
    handlers["duration"] = parksent::cli::cmd_duration;

    auto* shift = app.add_subcommand("shift", "word-level decomposition of baseline vs bin 0");
    add_common_flags(shift, options);
    add_analysis_flags(shift, options);
    handlers["shift"] = parksent::cli::cmd_shift;

    auto* series = app.add_subcommand("series", "per-bin relative frequency of one word");
    add_common_flags(series, options);
    series->add_option("--binned", options.binned, "binned corpus JSON from `bin`");
    series->add_option("--word", options.word, "word to track");
    series->add_option("--smoothing", options.smoothing, "odd moving-average width (default 3)");
    series->add_option("--half-window", options.half_window, "series half-width in bins (default 12)");
    handlers["series"] = parksent::cli::cmd_series;

    auto* veg = app.add_subcommand("veg", "per-facility NDVI and percent vegetated");
    add_common_flags(veg, options);
    veg->add_option("--raster", options.raster, "two-band JSON raster");
    veg->add_option("--facilities", options.facilities, "facilities GeoJSON");
    veg->add_option("--water", options.water, "water-mask GeoJSON (optional)");
    veg->add_option("--veg-threshold", options.veg_threshold,
                    "NDVI threshold for 'vegetated' (default 0.2)");
    handlers["veg"] = parksent::cli::cmd_veg;

    auto* report = app.add_subcommand("report", "per-category means from veg stats");
    add_common_flags(report, options);
    report->add_option("--veg", options.veg, "veg.csv from `veg`");
    handlers["report"] = parksent::cli::cmd_report;

    auto* synth = app.add_subcommand("synth", "generate a synthetic corpus with known truth");
    add_common_flags(synth, options);
    synth->add_option("--scenario", options.scenario, "scenario JSON");
    handlers["synth"] = parksent::cli::cmd_synth;

    CLI11_PARSE(app, argc, argv);

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        const Resolved cfg = parksent::cli::resolve(options);
        return handlers.at(name)(cfg);
    } catch (const parksent::cli::MissingInputError& e) {
        return fail(2, "missing_input", e.what());
    } catch (const parksent::EmptyPoolError& e) {
        return fail(3, "empty_pool", e.what());
    } catch (const parksent::ValidationError& e) {
        return fail(4, "validation", e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(4, "validation", e.what());
    } catch (const std::exception& e) {
        return fail(1, "internal", e.what());
    }
}
