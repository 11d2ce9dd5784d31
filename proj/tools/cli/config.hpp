#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vortexball/field.hpp"
#include "vortexball/geometry.hpp"

namespace vortexball::cli {

/// Bad configuration or command line; maps to exit status 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unreadable or malformed files; maps to exit status 2.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Vec2 origin{-1.0, -1.0};
    double width = 2.0;
    double height = 2.0;
    std::size_t nx = 800;
    std::size_t ny = 800;
    double eps = 0.01;
    double alpha = 0.5;
    double eta = 0.0;  ///< 0 selects the default
    double radius = 0.5;
    std::vector<Vortex> vortices{{{0.0, 0.0}, 1}};
    GrowthKind growth = GrowthKind::uniform;
    double sigma = 0.25;
    std::vector<double> sweep;
    double cells_per_eps = 4.0;
    std::string out = "out";
    std::uint64_t seed = 1;
    std::optional<std::string> field_path;

    GridSpec grid() const;
    VortexSpec vortex_spec() const;
    double eta_value() const;
};

/// Parses a JSON document; unknown keys and type mismatches raise ConfigError naming the field.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// Range checks shared by all commands.
void validate_config(const RunConfig& cfg);

/// "0.02,0.01" -> {0.02, 0.01}.
std::vector<double> parse_eps_list(const std::string& text);

}  // namespace vortexball::cli
