#include "cli.hpp"

#include "tsboot/compliance.hpp"
#include "tsboot/config.hpp"
#include "tsboot/csv.hpp"
#include "tsboot/error.hpp"
#include "tsboot/resampler.hpp"
#include "tsboot/stats.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace tsboot::cli {

namespace {

struct Options {
    std::string input;
    std::string output;
    std::string config;
    std::optional<std::string> method;
    std::optional<std::size_t> block_length;
    std::optional<double> geometric_p;
    std::optional<std::string> window;
    std::optional<double> tukey_alpha;
    std::optional<std::string> ar_order;
    std::optional<std::string> max_ar_order;
    std::optional<std::string> distribution;
    std::optional<std::string> statistic;
    std::optional<std::string> n_states;
    std::optional<std::string> inner_method;
    std::optional<std::size_t> inner_block_length;
    std::optional<std::size_t> n_bootstraps;
    std::optional<std::string> seed;
    bool return_indices = false;
    std::size_t threads = 1;
    std::string csv_prefix;
    std::size_t horizon = 12;
    std::vector<double> coverage;
    std::optional<std::string> forecast_ar_order;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptySeries:
        case ErrorCode::NonFinite:
        case ErrorCode::InputError:
            return kExitInput;
        case ErrorCode::MalformedConfig:
        case ErrorCode::InvalidSpec:
        case ErrorCode::BlockTooLong:
        case ErrorCode::NonUniformLengths:
            return kExitConfig;
        default:
            return kExitModel;
    }
}

std::optional<std::size_t> parse_count_or_auto(const std::string& text, const char* flag) {
    if (text == "auto" || text == "Auto") return std::nullopt;
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
        throw ConfigError(std::string(flag) + " expects a positive integer or 'auto'");
    }
    return value;
}

std::string read_file(const std::string& path, int error_kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        if (error_kind == kExitConfig) throw ConfigError("cannot open config file '" + path + "'");
        throw Error(ErrorCode::InputError, "cannot open file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

template <typename F>
auto as_config(F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

ResamplerSpec effective_spec(const Options& o) {
    ResamplerSpec spec;
    if (!o.config.empty()) {
        const std::string text = read_file(o.config, kExitConfig);
        spec = as_config([&] { return parse_config(text, false); });
    }
    if (o.method) spec.method = as_config([&] { return parse_method(*o.method); });
    if (o.block_length) spec.block_length = *o.block_length;
    if (o.geometric_p) spec.geometric_p = *o.geometric_p;
    if (o.window) spec.window = as_config([&] { return parse_window(*o.window); });
    if (o.tukey_alpha) spec.tukey_alpha = *o.tukey_alpha;
    if (o.ar_order) spec.ar_order = parse_count_or_auto(*o.ar_order, "--ar-order");
    if (o.max_ar_order) spec.max_ar_order = parse_count_or_auto(*o.max_ar_order, "--max-ar-order");
    if (o.distribution) {
        spec.distribution = as_config([&] { return parse_distribution(*o.distribution); });
    }
    if (o.statistic) spec.statistic = as_config([&] { return parse_statistic(*o.statistic); });
    if (o.n_states) spec.n_states = parse_count_or_auto(*o.n_states, "--n-states");
    if (o.inner_method || o.inner_block_length) {
        ResamplerSpec inner = spec.inner ? *spec.inner : ResamplerSpec{};
        if (!spec.inner) inner.block_length = spec.block_length;
        if (o.inner_method) inner.method = as_config([&] { return parse_method(*o.inner_method); });
        if (o.inner_block_length) inner.block_length = *o.inner_block_length;
        spec.inner = std::make_shared<const ResamplerSpec>(std::move(inner));
    }
    if (spec.block_length == 0) throw ConfigError("block_length must be positive");
    return as_config([&] { return normalize_spec(std::move(spec)); });
}

RunConfig effective_run(const Options& o, std::size_t default_bootstraps) {
    RunConfig run;
    run.n_bootstraps = o.n_bootstraps.value_or(default_bootstraps);
    run.return_indices = o.return_indices;
    run.threads = o.threads;
    std::optional<std::string> seed_text = o.seed;
    if (!seed_text) {
        if (const char* env = std::getenv("TSBOOT_SEED")) seed_text = std::string(env);
    }
    if (seed_text) {
        std::uint64_t seed = 0;
        const auto [ptr, ec] =
            std::from_chars(seed_text->data(), seed_text->data() + seed_text->size(), seed);
        if (ec != std::errc() || ptr != seed_text->data() + seed_text->size()) {
            throw ConfigError("seed must be an unsigned 64-bit integer, got '" + *seed_text + "'");
        }
        run.seed = seed;
    }
    return run;
}

nlohmann::json metadata(const TimeSeries& series, const ResamplerSpec& spec, const RunConfig& run,
                        const char* command) {
    nlohmann::json m;
    m["type"] = "metadata";
    m["format_version"] = kFormatVersion;
    m["command"] = command;
    m["n"] = series.length();
    m["d"] = series.channels();
    m["spec"] = spec_to_json(spec);
    m["seed"] = run.seed;
    m["n_bootstraps"] = run.n_bootstraps;
    m["return_indices"] = run.return_indices;
    return m;
}

void write_replicate(std::ostream& out, const BootstrapReplicate& rep) {
    out << R"({"type":"replicate","ordinal":)" << rep.ordinal << R"(,"values":[)";
    for (std::size_t t = 0; t < rep.values.rows(); ++t) {
        if (t > 0) out << ',';
        out << '[';
        for (std::size_t c = 0; c < rep.values.cols(); ++c) {
            if (c > 0) out << ',';
            out << format_real(rep.values(t, c));
        }
        out << ']';
    }
    out << ']';
    if (rep.indices) {
        out << R"(,"indices":[)";
        for (std::size_t t = 0; t < rep.indices->size(); ++t) {
            if (t > 0) out << ',';
            out << (*rep.indices)[t];
        }
        out << ']';
    }
    out << "}\n";
}

/// Wraps --output: a file when given, the caller's stream otherwise.
class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw Error(ErrorCode::InputError, "cannot open output file '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

int cmd_bootstrap(const Options& o, std::ostream& out) {
    const ResamplerSpec spec = effective_spec(o);
    const RunConfig run = effective_run(o, 10);
    const TimeSeries series = read_csv(o.input);
    validate_series(series);
    OutputTarget target(o.output, out);
    std::ostream& os = target.get();

    const Resampler resampler(spec);
    os << metadata(series, resampler.spec(), run, "bootstrap").dump() << '\n';
    resampler.generate(series, run, [&](BootstrapReplicate&& rep) {
        write_replicate(os, rep);
        os.flush();
        if (!o.csv_prefix.empty()) {
            const std::string path = o.csv_prefix + std::to_string(rep.ordinal) + ".csv";
            std::ofstream csv(path, std::ios::binary | std::ios::trunc);
            if (!csv) throw Error(ErrorCode::InputError, "cannot write '" + path + "'");
            write_csv(csv, TimeSeries(std::move(rep.values), series.channel_names()));
        }
    });
    return kExitOk;
}

int cmd_summarize(const Options& o, std::ostream& out) {
    const ResamplerSpec spec = effective_spec(o);
    const RunConfig run = effective_run(o, 100);
    if (run.n_bootstraps < 1) throw ConfigError("summarize needs at least one replicate");
    const std::vector<double> coverage = o.coverage.empty() ? std::vector<double>{0.9} : o.coverage;
    for (const double c : coverage) {
        if (!(c > 0.0 && c < 1.0)) throw ConfigError("coverage must lie in (0, 1)");
    }
    const TimeSeries series = read_csv(o.input);
    validate_series(series);
    OutputTarget target(o.output, out);

    const Resampler resampler(spec);
    const auto replicates = resampler.bootstrap(series, run);
    const std::vector<double> levels = {0.025, 0.25, 0.5, 0.75, 0.975};
    nlohmann::json record;
    record["type"] = "summary";
    record["n_replicates"] = replicates.size();
    for (const auto& [stat_name, stat] :
         std::vector<std::pair<std::string, Statistic>>{{"mean", mean_of}, {"variance", variance_of}}) {
        const ReplicateSummary summary = summarize(replicates, stat, levels);
        nlohmann::json channels = nlohmann::json::array();
        for (const auto& ch : summary.channels) {
            nlohmann::json j;
            j["mean"] = ch.mean;
            j["std"] = ch.std;
            nlohmann::json q = nlohmann::json::array();
            for (const auto& [level, value] : ch.quantiles) q.push_back({{"q", level}, {"value", value}});
            j["quantiles"] = q;
            nlohmann::json intervals = nlohmann::json::array();
            if (replicates.size() >= 2) {
                for (const double c : coverage) {
                    const auto [lo, hi] = percentile_interval(ch.statistic_values, c);
                    intervals.push_back({{"coverage", c}, {"lower", lo}, {"upper", hi}});
                }
            }
            j["intervals"] = intervals;
            channels.push_back(j);
        }
        record["statistics"][stat_name] = channels;
    }
    std::ostream& os = target.get();
    os << metadata(series, resampler.spec(), run, "summarize").dump() << '\n';
    os << record.dump() << '\n';
    return kExitOk;
}

int cmd_forecast(const Options& o, std::ostream& out) {
    const ResamplerSpec spec = effective_spec(o);
    const RunConfig run = effective_run(o, 200);
    const std::vector<double> coverage =
        o.coverage.empty() ? std::vector<double>{0.8, 0.95} : o.coverage;
    ForecasterSpec forecaster;
    if (o.forecast_ar_order) {
        forecaster.ar_order = parse_count_or_auto(*o.forecast_ar_order, "--forecast-ar-order");
    }
    forecaster.max_ar_order = spec.max_ar_order;
    if (o.horizon < 1) throw ConfigError("--horizon must be positive");
    const TimeSeries series = read_csv(o.input);
    validate_series(series);
    OutputTarget target(o.output, out);

    const ForecastIntervals fc = bagging_forecast(series, spec, forecaster, o.horizon, coverage, run);
    nlohmann::json record;
    record["type"] = "forecast";
    record["horizon"] = fc.horizon;
    record["n_models"] = fc.n_models;
    record["n_dropped"] = fc.n_dropped;
    nlohmann::json channels = nlohmann::json::array();
    for (const auto& ch : fc.channels) {
        nlohmann::json j;
        j["point"] = ch.point;
        nlohmann::json bands = nlohmann::json::array();
        for (const auto& b : ch.bands) {
            bands.push_back({{"coverage", b.coverage}, {"lower", b.lower}, {"upper", b.upper}});
        }
        j["bands"] = bands;
        channels.push_back(j);
    }
    record["channels"] = channels;
    std::ostream& os = target.get();
    os << metadata(series, spec, run, "forecast").dump() << '\n';
    os << record.dump() << '\n';
    return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
    const ResamplerSpec spec = effective_spec(o);
    const RunConfig run = effective_run(o, 5);
    OutputTarget target(o.output, out);
    std::ostream& os = target.get();
    const ComplianceReport report = check_resampler(spec, run.n_bootstraps);
    os << "check " << report.method << " n_bootstraps=" << report.n_bootstraps << '\n';
    for (const auto& c : report.checks) {
        os << "  " << c.name << ": " << to_string(c.outcome);
        if (!c.detail.empty()) os << " (" << c.detail << ")";
        os << '\n';
    }
    os << (report.passed() ? "all checks passed" : "compliance checks failed") << '\n';
    return report.passed() ? kExitOk : kExitCheckFailed;
}

void add_spec_options(CLI::App& app, Options& o) {
    app.add_option("--config", o.config, "Resampler config file");
    app.add_option("--method", o.method, "Bootstrap method, e.g. MovingBlock");
    app.add_option("--block-length", o.block_length, "Block length");
    app.add_option("--geometric-p", o.geometric_p, "Stationary bootstrap probability");
    app.add_option("--window", o.window, "Taper window: Bartlett, Hamming, Hanning, Blackman, Tukey");
    app.add_option("--tukey-alpha", o.tukey_alpha, "Tukey taper fraction");
    app.add_option("--ar-order", o.ar_order, "AR order or 'auto'");
    app.add_option("--max-ar-order", o.max_ar_order, "Largest AR order considered by 'auto'");
    app.add_option("--distribution", o.distribution, "Gaussian or Empirical");
    app.add_option("--statistic", o.statistic, "Mean, Std or MeanAndStd");
    app.add_option("--n-states", o.n_states, "Markov state count or 'auto'");
    app.add_option("--inner-method", o.inner_method, "Inner block method for Block* variants");
    app.add_option("--inner-block-length", o.inner_block_length, "Inner block length");
    app.add_option("--n-bootstraps", o.n_bootstraps, "Number of replicates");
    app.add_option("--seed", o.seed, "Seed (default: $TSBOOT_SEED, else 0)");
    app.add_option("--threads", o.threads, "Worker threads (0 = all cores)");
    app.add_option("--output", o.output, "Output file (default: stdout)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Time-series bootstrap engine"};
    app.require_subcommand(1);

    auto* boot = app.add_subcommand("bootstrap", "Emit bootstrap replicates as NDJSON records");
    add_spec_options(*boot, o);
    boot->add_option("--input", o.input, "Input CSV")->required();
    boot->add_flag("--return-indices", o.return_indices, "Attach source indices");
    boot->add_option("--csv-prefix", o.csv_prefix, "Also write replicate k to <prefix>k.csv");

    auto* summ = app.add_subcommand("summarize", "Summarize replicate means and variances");
    add_spec_options(*summ, o);
    summ->add_option("--input", o.input, "Input CSV")->required();
    summ->add_option("--coverage", o.coverage, "Interval coverage (repeatable)");

    auto* fore = app.add_subcommand("forecast", "Bagged AR forecast intervals");
    add_spec_options(*fore, o);
    fore->add_option("--input", o.input, "Input CSV")->required();
    fore->add_option("--horizon", o.horizon, "Forecast horizon");
    fore->add_option("--coverage", o.coverage, "Band coverage (repeatable)");
    fore->add_option("--forecast-ar-order", o.forecast_ar_order, "Forecaster AR order or 'auto'");

    auto* check = app.add_subcommand("check", "Run the resampler compliance suite");
    add_spec_options(*check, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }

    try {
        if (*boot) return cmd_bootstrap(o, out);
        if (*summ) return cmd_summarize(o, out);
        if (*fore) return cmd_forecast(o, out);
        return cmd_check(o, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitModel;
    }
}

}  // namespace tsboot::cli
