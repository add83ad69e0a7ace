// SPDX-License-Identifier: Apache-2.0
#include "dubois/service.hpp"

#include <httplib.h>

#include <json.hpp>

#include "dubois/error.hpp"
#include "dubois/layout.hpp"
#include "dubois/serialize.hpp"
#include "dubois/simulator.hpp"

namespace dubois {
namespace {

using nlohmann::json;

struct RequestError {
    std::string code;
    std::string message;
};

HttpResult error_result(std::string_view code, std::string_view message) {
    return {400, json{{"code", code}, {"message", message}}.dump()};
}

json parse_body(std::string_view body) {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded()) throw RequestError{"invalid_json", "request body is not valid JSON"};
    if (!j.is_object()) throw RequestError{"invalid_request", "request body must be a JSON object"};
    return j;
}

double number_field(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw RequestError{"invalid_request", std::string("'") + key + "' must be a number"};
    return j[key].get<double>();
}

std::uint64_t unsigned_field(const json& j, const char* key, std::uint64_t fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_unsigned()) {
        throw RequestError{"invalid_request", std::string("'") + key + "' must be a non-negative integer"};
    }
    return j[key].get<std::uint64_t>();
}

Dataset dataset_field(const json& j) {
    if (!j.contains("dataset")) throw RequestError{"invalid_dataset", "missing 'dataset'"};
    return dataset_from_json(j["dataset"]);
}

ChartConfig layout_config(const json& j) {
    ChartConfig cfg;
    const std::string kind = j.value("chart_kind", std::string("standard"));
    if (kind == "wrapped") {
        cfg.chart_kind = ChartKind::Wrapped;
        if (!j.contains("t1")) throw Error(ErrorCode::InvalidThreshold, "wrapped charts require 't1'");
    } else if (kind != "standard") {
        throw RequestError{"invalid_request", "chart_kind must be 'standard' or 'wrapped'"};
    }
    cfg.t1 = number_field(j, "t1", cfg.t1);
    cfg.t2 = number_field(j, "t2", cfg.t2);
    cfg.plot_width_px = number_field(j, "plot_width_px", cfg.plot_width_px);
    cfg.plot_height_px = number_field(j, "plot_height_px", cfg.plot_height_px);
    if (j.contains("margins")) {
        const json& m = j["margins"];
        if (!m.is_object()) throw RequestError{"invalid_request", "'margins' must be an object"};
        cfg.margins.top = number_field(m, "top", cfg.margins.top);
        cfg.margins.right = number_field(m, "right", cfg.margins.right);
        cfg.margins.bottom = number_field(m, "bottom", cfg.margins.bottom);
        cfg.margins.left = number_field(m, "left", cfg.margins.left);
    }
    if (j.contains("tick_count")) {
        if (!j["tick_count"].is_number_integer()) throw RequestError{"invalid_request", "'tick_count' must be an integer"};
        cfg.tick_count = j["tick_count"].get<int>();
    }
    const std::string order = j.value("bar_order", std::string("as_given"));
    if (order == "sorted") {
        cfg.bar_order = Sorted{};
    } else if (order == "shuffled") {
        cfg.bar_order = Shuffled{unsigned_field(j, "shuffle_seed", 0)};
    } else if (order != "as_given") {
        throw RequestError{"invalid_request", "bar_order must be as_given, sorted or shuffled"};
    }
    return cfg;
}

template <typename F>
HttpResult guarded(std::string_view body, F&& handler) {
    try {
        return {200, handler(parse_body(body)).dump()};
    } catch (const RequestError& e) {
        return error_result(e.code, e.message);
    } catch (const Error& e) {
        return error_result(to_string(e.code()), e.what());
    } catch (const json::exception& e) {
        return error_result("invalid_request", e.what());
    }
}

}  // namespace

HttpResult handle_layout(std::string_view body) {
    return guarded(body, [](const json& j) {
        const Dataset d = dataset_field(j);
        return to_json(layout_chart(d, layout_config(j)));
    });
}

HttpResult handle_profile(std::string_view body) {
    return guarded(body, [](const json& j) {
        // Accept either {"dataset": {...}} or the bare dataset object.
        const Dataset d = j.contains("dataset") ? dataset_field(j) : dataset_from_json(j);
        return profile_report(d, number_field(j, "entropy_cutoff", 0.75), number_field(j, "hspread_cutoff", 4.5));
    });
}

HttpResult handle_simulate_sample(std::string_view body) {
    return guarded(body, [](const json& j) {
        SimConfig cfg;
        cfg.dataset_count = unsigned_field(j, "count", cfg.dataset_count);
        cfg.categories_per_dataset = unsigned_field(j, "categories", cfg.categories_per_dataset);
        cfg.seed = unsigned_field(j, "seed", cfg.seed);
        if (cfg.dataset_count > kMaxSimulationCount) {
            throw RequestError{"request_too_large",
                               "count must not exceed " + std::to_string(kMaxSimulationCount)};
        }
        if (cfg.categories_per_dataset > 1000) throw RequestError{"request_too_large", "categories must not exceed 1000"};
        LogNormalGenerator g;
        g.sigma_lo = number_field(j, "sigma_lo", g.sigma_lo);
        g.sigma_hi = number_field(j, "sigma_hi", g.sigma_hi);
        cfg.generator = g;
        const std::uint64_t sample_seed = unsigned_field(j, "sample_seed", cfg.seed);
        const SimulationGrid grid = simulate(cfg);
        const auto samples = sample_bins(grid, sample_seed);
        return to_json(grid, samples);
    });
}

void mount_routes(httplib::Server& server, const ServiceOptions& options) {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    auto route = [&server](const char* path, HttpResult (*handler)(std::string_view)) {
        server.Post(path, [handler](const httplib::Request& req, httplib::Response& res) {
            const HttpResult r = handler(req.body);
            res.status = r.status;
            res.set_content(r.body, "application/json");
        });
    };
    route("/api/layout", &handle_layout);
    route("/api/profile", &handle_profile);
    route("/api/simulate-sample", &handle_simulate_sample);
    server.Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(R"({"status":"ok"})", "application/json");
    });
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    if (options.static_dir && !server.set_mount_point("/", options.static_dir->string())) {
        throw Error(ErrorCode::Io, "cannot serve static files from '" + options.static_dir->string() + "'");
    }
}

void serve(const ServiceOptions& options) {
    httplib::Server server;
    mount_routes(server, options);
    if (!server.bind_to_port(options.host, options.port)) {
        throw Error(ErrorCode::Io, "cannot bind " + options.host + ":" + std::to_string(options.port));
    }
    server.listen_after_bind();
}

}  // namespace dubois
