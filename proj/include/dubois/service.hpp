// SPDX-License-Identifier: Apache-2.0
//
// Stateless JSON API for the threshold-exploration UI:
//   POST /api/layout           chart layout for an inline dataset
//   POST /api/profile          metrics and recommendation
//   POST /api/simulate-sample  grid occupancy and one sample per cell
// Handlers are pure functions of the request body; errors are 400 with
// {"code": ..., "message": ...}.
#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace httplib {
class Server;
}

namespace dubois {

struct HttpResult {
    int status = 200;
    std::string body;
};

inline constexpr std::size_t kMaxSimulationCount = 100'000;

HttpResult handle_layout(std::string_view body);
HttpResult handle_profile(std::string_view body);
HttpResult handle_simulate_sample(std::string_view body);

struct ServiceOptions {
    std::string host = "127.0.0.1";
    int port = 8787;
    std::optional<std::filesystem::path> static_dir;
};

/// Registers routes, CORS headers and the optional static mount on `server`.
/// Throws Error(Io) if the static directory cannot be mounted.
void mount_routes(httplib::Server& server, const ServiceOptions& options);

/// Blocks until the server stops. Throws Error(Io) if binding fails.
void serve(const ServiceOptions& options);

}  // namespace dubois
