// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <httplib.h>

#include <filesystem>
#include <future>
#include <thread>

#include <json.hpp>

#include "dubois/error.hpp"
#include "dubois/service.hpp"

using namespace dubois;
using nlohmann::json;

namespace {

json ad_dataset() {
    json cats = json::array();
    const double values[] = {8500, 2300, 1200, 700, 450, 300, 150, 78};
    for (int i = 0; i < 8; ++i) cats.push_back({{"label", std::string("C") + char('A' + i)}, {"value", values[i]}});
    return {{"id", "ad"}, {"categories", cats}};
}

json dataset_of(std::initializer_list<double> values) {
    json cats = json::array();
    int i = 0;
    for (double v : values) cats.push_back({{"label", "L" + std::to_string(i++)}, {"value", v}});
    return {{"id", "d"}, {"categories", cats}};
}

void check_error(const HttpResult& r, std::string_view code) {
    CHECK(r.status == 400);
    const json j = json::parse(r.body);
    CHECK(j.at("code") == code);
    CHECK(j.at("message").is_string());
    CHECK_FALSE(j.at("message").get<std::string>().empty());
}

}  // namespace

TEST_CASE("layout endpoint") {
    const json req{{"dataset", ad_dataset()}, {"chart_kind", "wrapped"}, {"t1", 1000}};
    const auto r = handle_layout(req.dump());
    REQUIRE(r.status == 200);
    const json j = json::parse(r.body);
    int segs = 0;
    for (const auto& s : j["segments"]) segs += s["category"] == 0;
    CHECK(segs == 9);
    CHECK(j["categories"][0]["full_segments"] == 8);
    CHECK(j["categories"][0]["tail_value"] == 500.0);
    CHECK(handle_layout(req.dump()).body == r.body);

    const auto standard = handle_layout(json{{"dataset", ad_dataset()}}.dump());
    CHECK(json::parse(standard.body)["chart_kind"] == "standard");

    auto bad = req;
    bad["t2"] = 0;
    check_error(handle_layout(bad.dump()), "invalid_threshold");
    bad = req;
    bad.erase("t1");
    check_error(handle_layout(bad.dump()), "invalid_threshold");
    bad = req;
    bad["plot_width_px"] = 20;
    check_error(handle_layout(bad.dump()), "layout_overflow");
    check_error(handle_layout(json{{"dataset", dataset_of({1})}}.dump()), "invalid_dataset");
    check_error(handle_layout(json{{"chart_kind", "wrapped"}}.dump()), "invalid_dataset");
    bad = req;
    bad["bar_order"] = "random";
    check_error(handle_layout(bad.dump()), "invalid_request");
    bad = req;
    bad["t1"] = "big";
    check_error(handle_layout(bad.dump()), "invalid_request");
    check_error(handle_layout("{not json"), "invalid_json");
    check_error(handle_layout("[1,2]"), "invalid_request");
}

TEST_CASE("layout endpoint bar orders") {
    json req{{"dataset", dataset_of({1, 5, 3})}, {"bar_order", "sorted"}};
    const json sorted = json::parse(handle_layout(req.dump()).body);
    CHECK(sorted["categories"][0]["label"] == "L1");
    req["bar_order"] = "shuffled";
    req["shuffle_seed"] = 4;
    CHECK(handle_layout(req.dump()).body == handle_layout(req.dump()).body);
}

TEST_CASE("profile endpoint") {
    const auto uniform = json::parse(handle_profile(json{{"dataset", dataset_of({5, 5, 5, 5})}}.dump()).body);
    CHECK(uniform["recommendation"]["use_wrapped"] == false);
    const auto skewed = handle_profile(dataset_of({97, 1, 1, 1}).dump());
    REQUIRE(skewed.status == 200);
    const json s = json::parse(skewed.body);
    CHECK(s["recommendation"]["use_wrapped"] == true);
    CHECK(s["profile"]["normalized_entropy"].get<double>() < 0.75);
    check_error(handle_profile("{\"dataset\": "), "invalid_json");
    check_error(handle_profile(json{{"dataset", dataset_of({0, 0})}}.dump()), "invalid_dataset");
}

TEST_CASE("simulate-sample endpoint") {
    const json req{{"count", 500}, {"seed", 3}};
    const auto a = handle_simulate_sample(req.dump());
    REQUIRE(a.status == 200);
    CHECK(handle_simulate_sample(req.dump()).body == a.body);

    const json one = json::parse(handle_simulate_sample(json{{"count", 1}}.dump()).body);
    CHECK(one["dataset_count"] == 1);
    CHECK(one["occupied_cells"].get<int>() + one["out_of_range"].get<int>() == 1);

    const json def = json::parse(handle_simulate_sample("{}").body);
    CHECK(def["dataset_count"] == 10000);
    CHECK(def["occupied_cells"].get<int>() >= 13);
    CHECK(def["samples"].size() == def["occupied_cells"].get<std::size_t>());

    check_error(handle_simulate_sample(json{{"count", kMaxSimulationCount + 1}}.dump()), "request_too_large");
    check_error(handle_simulate_sample(json{{"count", -5}}.dump()), "invalid_request");
    check_error(handle_simulate_sample(json{{"count", 0}}.dump()), "invalid_config");
    check_error(handle_simulate_sample(json{{"sigma_lo", 2}, {"sigma_hi", 1}}.dump()), "invalid_config");
}

TEST_CASE("http server") {
    httplib::Server server;
    const auto dir = std::filesystem::temp_directory_path() / "dubois_static_test";
    std::filesystem::create_directories(dir);
    {
        std::FILE* f = std::fopen((dir / "index.html").c_str(), "w");
        REQUIRE(f);
        std::fputs("<html>ui</html>", f);
        std::fclose(f);
    }
    ServiceOptions opts;
    opts.static_dir = dir;
    mount_routes(server, opts);
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread t([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    const json req{{"dataset", ad_dataset()}, {"chart_kind", "wrapped"}, {"t1", 1000}};
    auto res = client.Post("/api/layout", req.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
    CHECK(res->get_header_value("Content-Type") == "application/json");
    CHECK(res->body == handle_layout(req.dump()).body);

    // Concurrent identical requests.
    std::vector<std::future<std::string>> futures;
    for (int i = 0; i < 4; ++i) {
        futures.push_back(std::async(std::launch::async, [&] {
            httplib::Client c("127.0.0.1", port);
            auto r = c.Post("/api/layout", req.dump(), "application/json");
            return r ? r->body : std::string();
        }));
    }
    for (auto& f : futures) CHECK(f.get() == res->body);

    auto bad = client.Post("/api/profile", "{oops", "application/json");
    REQUIRE(bad);
    CHECK(bad->status == 400);
    CHECK(json::parse(bad->body).contains("code"));

    auto pre = client.Options("/api/layout");
    REQUIRE(pre);
    CHECK(pre->status == 204);
    CHECK(pre->get_header_value("Access-Control-Allow-Methods").find("POST") != std::string::npos);

    auto health = client.Get("/api/health");
    REQUIRE(health);
    CHECK(health->status == 200);

    auto page = client.Get("/index.html");
    REQUIRE(page);
    CHECK(page->body == "<html>ui</html>");

    server.stop();
    t.join();
    std::filesystem::remove_all(dir);
}

TEST_CASE("missing static directory is an io error") {
    httplib::Server server;
    ServiceOptions opts;
    opts.static_dir = "/nonexistent/dubois/static";
    CHECK_THROWS_AS(mount_routes(server, opts), Error);
}
