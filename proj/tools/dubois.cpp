// SPDX-License-Identifier: Apache-2.0
//
// dubois: render wrapped/standard bar charts, profile datasets, run the
// dataset simulator, analyze experiment responses and serve the UI API.
// Exit codes: 0 success, 1 validation error, 2 I/O error.
#include <array>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dubois/error.hpp"
#include "dubois/io.hpp"
#include "dubois/layout.hpp"
#include "dubois/metrics.hpp"
#include "dubois/render_svg.hpp"
#include "dubois/serialize.hpp"
#include "dubois/service.hpp"
#include "dubois/simulator.hpp"
#include "dubois/stats.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr std::uint64_t kDefaultSeed = 7;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("DUBOIS_SEED"); env && *env) {
        std::uint64_t v = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw UsageError("DUBOIS_SEED must be an unsigned integer, got '" + std::string(s) + "'");
        }
        return v;
    }
    return kDefaultSeed;
}

void emit(const std::string& content, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << content;
        std::cout.flush();
    } else {
        dubois::write_file(out, content);
    }
}

struct RenderArgs {
    std::string input;
    bool wrapped = false;
    std::optional<double> t1;
    double t2 = 1.0;
    double width = 800.0;
    double height = 500.0;
    bool sort = false;
    std::optional<std::uint64_t> shuffle;
    std::string out = "-";
    std::string title;
    int ticks = 5;
    bool no_grid = false;
};

int run_render(const RenderArgs& a) {
    const dubois::Dataset d = dubois::load_dataset(a.input);
    dubois::ChartConfig cfg;
    if (a.wrapped) {
        if (!a.t1) throw UsageError("--t1 is required with --wrapped");
        cfg.chart_kind = dubois::ChartKind::Wrapped;
        cfg.t1 = *a.t1;
        cfg.t2 = a.t2;
    }
    cfg.plot_width_px = a.width - cfg.margins.left - cfg.margins.right;
    cfg.plot_height_px = a.height - cfg.margins.top - cfg.margins.bottom;
    if (cfg.plot_width_px <= 0 || cfg.plot_height_px <= 0) {
        throw UsageError("--width/--height leave no room for the plot area");
    }
    cfg.tick_count = a.ticks;
    if (a.sort) cfg.bar_order = dubois::Sorted{};
    if (a.shuffle) cfg.bar_order = dubois::Shuffled{*a.shuffle};

    const auto layout = dubois::layout_chart(d, cfg);
    dubois::Style style;
    if (!a.title.empty()) style.title = a.title;
    style.show_gridlines = !a.no_grid;
    const std::string svg = dubois::render_svg(layout, style);

    const auto report = dubois::profile_report(d);
    const auto& p = report["profile"];
    const auto& r = report["recommendation"];
    std::cerr << "profile: normalized_entropy=" << p["normalized_entropy"].dump()
              << " h_spread=" << p["h_spread"].dump() << " entropy_bin=" << p["entropy_bin"].get<std::string>()
              << " hspread_bin=" << p["hspread_bin"].get<std::string>() << "\n";
    std::cerr << "recommendation: " << r["chart"].get<std::string>();
    if (!r["reasons"].empty()) {
        std::cerr << " (";
        for (std::size_t i = 0; i < r["reasons"].size(); ++i) {
            std::cerr << (i ? ", " : "") << r["reasons"][i].get<std::string>();
        }
        std::cerr << ")";
    }
    std::cerr << "\n";
    emit(svg, a.out);
    return kExitOk;
}

struct MetricsArgs {
    std::string input;
    double entropy_cutoff = 0.75;
    double hspread_cutoff = 4.5;
};

int run_metrics(const MetricsArgs& a) {
    const dubois::Dataset d = dubois::load_dataset(a.input);
    std::cout << dubois::profile_report(d, a.entropy_cutoff, a.hspread_cutoff).dump(2) << "\n";
    return kExitOk;
}

struct SimulateArgs {
    std::size_t count = 10'000;
    std::size_t categories = 15;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> sample_seed;
    double sigma_lo = dubois::LogNormalGenerator{}.sigma_lo;
    double sigma_hi = dubois::LogNormalGenerator{}.sigma_hi;
    unsigned threads = 1;
    std::string outdir;
};

int run_simulate(const SimulateArgs& a) {
    dubois::SimConfig cfg;
    cfg.dataset_count = a.count;
    cfg.categories_per_dataset = a.categories;
    cfg.seed = resolve_seed(a.seed);
    cfg.generator = dubois::LogNormalGenerator{a.sigma_lo, a.sigma_hi};
    cfg.threads = a.threads;
    cfg.validate();

    std::error_code ec;
    fs::create_directories(a.outdir, ec);
    if (ec) throw dubois::Error(dubois::ErrorCode::Io, "cannot create '" + a.outdir + "': " + ec.message());

    const auto grid = dubois::simulate(cfg);
    const auto samples = dubois::sample_bins(grid, a.sample_seed.value_or(cfg.seed));

    std::string occupancy = "entropy_bin,hspread_bin,count\n";
    for (int e = 0; e < dubois::kBinCount; ++e) {
        for (int h = 0; h < dubois::kBinCount; ++h) {
            occupancy += grid.bins.entropy_label(e) + "," + grid.bins.hspread_label(h) + "," +
                         std::to_string(grid.count({e, h})) + "\n";
        }
    }
    std::array<std::size_t, dubois::kBinCount> below{};
    for (std::size_t i : grid.out_of_range) ++below[static_cast<std::size_t>(grid.profiles[i].hspread_bin)];
    for (int h = 0; h < dubois::kBinCount; ++h) {
        occupancy += std::string(dubois::kBelowRangeLabel) + "," + grid.bins.hspread_label(h) + "," +
                     std::to_string(below[static_cast<std::size_t>(h)]) + "\n";
    }
    dubois::write_file(fs::path(a.outdir) / "occupancy.csv", occupancy);
    for (const auto& s : samples) {
        dubois::write_file(fs::path(a.outdir) / dubois::sample_file_name(grid.bins, s.cell),
                           dubois::dataset_to_csv(s.dataset));
    }
    std::cout << "simulated " << grid.datasets.size() << " datasets; " << grid.occupied_cells()
              << " of 16 cells occupied; " << grid.out_of_range.size() << " below range\n";
    std::cout << occupancy;
    return kExitOk;
}

struct AnalyzeArgs {
    std::string responses;
    std::string datasets;
    std::optional<int> screen_max_errors;
    bool exclude_wrong_id = false;
    int resamples = 10'000;
    double level = 0.95;
    std::optional<std::uint64_t> seed;
    std::string design = "within";
    std::string paired_d = "dav";
    std::string format = "json";
    std::string out = "-";
};

int run_analyze(const AnalyzeArgs& a) {
    const auto responses = dubois::parse_responses_csv(dubois::read_file(a.responses));
    const auto datasets = dubois::load_dataset_dir(a.datasets);
    dubois::AnalysisConfig cfg;
    cfg.resamples = a.resamples;
    cfg.level = a.level;
    cfg.seed = resolve_seed(a.seed);
    cfg.design = a.design == "between" ? dubois::Design::Between : dubois::Design::Within;
    cfg.paired_variant = a.paired_d == "dz" ? dubois::PairedVariant::Dz : dubois::PairedVariant::Dav;
    cfg.screen_max_errors = a.screen_max_errors;
    cfg.exclude_wrong_identification = a.exclude_wrong_id;
    const auto report = dubois::analyze(responses, datasets, cfg);
    emit(a.format == "table" ? dubois::report_table(report) : dubois::to_json(report).dump(2) + "\n", a.out);
    return kExitOk;
}

struct ServeArgs {
    int port = 8787;
    std::string host = "127.0.0.1";
    std::string static_dir;
};

int run_serve(const ServeArgs& a) {
    if (a.port < 1 || a.port > 65535) throw UsageError("invalid port " + std::to_string(a.port) + " (1-65535)");
    dubois::ServiceOptions opts;
    opts.host = a.host;
    opts.port = a.port;
    if (!a.static_dir.empty()) {
        if (!fs::is_directory(a.static_dir)) {
            throw dubois::Error(dubois::ErrorCode::Io, "static dir '" + a.static_dir + "' does not exist");
        }
        opts.static_dir = a.static_dir;
    }
    std::cerr << "listening on http://" << a.host << ":" << a.port << "\n";
    dubois::serve(opts);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wrapped bar chart toolkit: layout, SVG rendering, dataset metrics, simulation and analysis"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);

    RenderArgs render;
    auto* cmd_render = app.add_subcommand("render", "Render a dataset as an SVG bar chart");
    cmd_render->add_option("--input", render.input, "Dataset file (.csv or .json)")->required();
    cmd_render->add_flag("--wrapped", render.wrapped, "Draw a wrapped bar chart");
    cmd_render->add_option("--t1", render.t1, "Axis maximum / first wrap threshold (required with --wrapped)");
    cmd_render->add_option("--t2", render.t2, "Wrap length as a fraction of t1, in (0, 1]");
    cmd_render->add_option("--width", render.width, "Image width in px");
    cmd_render->add_option("--height", render.height, "Image height in px");
    auto* sort = cmd_render->add_flag("--sort", render.sort, "Sort bars by descending value");
    cmd_render->add_option("--shuffle", render.shuffle, "Shuffle bars with this seed")->excludes(sort);
    cmd_render->add_option("--out", render.out, "Output path ('-' for stdout)");
    cmd_render->add_option("--title", render.title, "Chart title");
    cmd_render->add_option("--ticks", render.ticks, "Number of axis ticks")->check(CLI::Range(2, 100));
    cmd_render->add_flag("--no-grid", render.no_grid, "Hide gridlines");

    MetricsArgs metrics;
    auto* cmd_metrics = app.add_subcommand("metrics", "Print entropy / H-spread profile and recommendation as JSON");
    cmd_metrics->add_option("--input", metrics.input, "Dataset file (.csv or .json)")->required();
    cmd_metrics->add_option("--entropy-cutoff", metrics.entropy_cutoff, "Recommend wrapped below this normalized entropy");
    cmd_metrics->add_option("--hspread-cutoff", metrics.hspread_cutoff, "Recommend wrapped above this H-spread");

    SimulateArgs sim;
    auto* cmd_sim = app.add_subcommand("simulate", "Simulate datasets, bin them and sample one per cell");
    cmd_sim->add_option("--count", sim.count, "Number of datasets")->check(CLI::PositiveNumber);
    cmd_sim->add_option("--categories", sim.categories, "Categories per dataset")->check(CLI::Range(2, 1000));
    cmd_sim->add_option("--seed", sim.seed, "Generation seed (fallback: $DUBOIS_SEED, then 7)");
    cmd_sim->add_option("--sample-seed", sim.sample_seed, "Per-cell sampling seed (default: --seed)");
    cmd_sim->add_option("--sigma-lo", sim.sigma_lo, "Lower bound of the log-normal sigma range");
    cmd_sim->add_option("--sigma-hi", sim.sigma_hi, "Upper bound of the log-normal sigma range");
    cmd_sim->add_option("--threads", sim.threads, "Worker threads")->check(CLI::Range(1, 256));
    cmd_sim->add_option("--outdir", sim.outdir, "Output directory")->required();

    AnalyzeArgs an;
    auto* cmd_an = app.add_subcommand("analyze", "Analyze experiment responses against their datasets");
    cmd_an->add_option("--responses", an.responses, "Responses CSV")->required();
    cmd_an->add_option("--datasets", an.datasets, "Directory of dataset files")->required();
    cmd_an->add_option("--screen-max-errors", an.screen_max_errors,
                       "Drop participants with more wrong identify_max trials than this");
    cmd_an->add_flag("--exclude-wrong-id", an.exclude_wrong_id,
                     "Drop ratio trials whose matching identification was wrong");
    cmd_an->add_option("--resamples", an.resamples, "Bootstrap resamples")->check(CLI::Range(1, 10'000'000));
    cmd_an->add_option("--level", an.level, "Confidence level")->check(CLI::Range(0.5, 0.9999));
    cmd_an->add_option("--seed", an.seed, "Bootstrap seed (fallback: $DUBOIS_SEED, then 7)");
    cmd_an->add_option("--design", an.design, "within or between subjects")->check(CLI::IsMember({"within", "between"}));
    cmd_an->add_option("--paired-d", an.paired_d, "Paired Cohen's d variant")->check(CLI::IsMember({"dav", "dz"}));
    cmd_an->add_option("--format", an.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    cmd_an->add_option("--out", an.out, "Output path ('-' for stdout)");

    ServeArgs srv;
    auto* cmd_srv = app.add_subcommand("serve", "Serve the JSON API (and optionally the UI bundle)");
    cmd_srv->add_option("--port", srv.port, "TCP port (1-65535)");
    cmd_srv->add_option("--host", srv.host, "Bind address");
    cmd_srv->add_option("--static-dir", srv.static_dir, "Directory with the built UI to serve at /");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (cmd_render->parsed()) return run_render(render);
        if (cmd_metrics->parsed()) return run_metrics(metrics);
        if (cmd_sim->parsed()) return run_simulate(sim);
        if (cmd_an->parsed()) return run_analyze(an);
        if (cmd_srv->parsed()) return run_serve(srv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const dubois::Error& e) {
        std::cerr << "error [" << dubois::to_string(e.code()) << "]: " << e.what() << "\n";
        return e.code() == dubois::ErrorCode::Io ? kExitIo : kExitValidation;
    }
    return kExitValidation;
}
