#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "levi6/distribution.hpp"
#include "levi6/pde.hpp"

namespace levi6 {

struct ManifestError : Levi6Error {
    using Levi6Error::Levi6Error;
};

// Exit codes of the CLI surface.
enum ExitCode {
    kExitOk = 0,
    kExitUsage = 1,
    kExitDegenerate = 2,
    kExitNotFlat = 3,
    kExitNumerical = 4,
};

struct Manifest {
    std::optional<SolvedSystem> pde;
    std::optional<Structure6> frame;
    std::vector<Point> points;
    int random_points = 0;
    std::uint64_t seed = kDefaultSeed;
    double tol = 1e-9;
};

Manifest parse_manifest(const nlohmann::json& j);
Manifest load_manifest(const std::string& path);

Structure6 manifest_structure(const Manifest& m);

// Explicit points plus seeded random draws from [-1/2,1/2]^6, skipping
// points where the structure cannot be evaluated.
std::vector<Point> resolve_points(const Manifest& m, const FrameCalculus& fc,
                                  const QuadraticForm<Expr>& q);

struct RunOptions {
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<int> random_points;
};

struct CommandResult {
    int exit_code = kExitOk;
    nlohmann::json report;
    std::string summary;  // human-readable lines for non-report commands
};

// command: classify | invariants | check-flat | report
CommandResult run_manifest_command(const std::string& command,
                                   const Manifest& manifest,
                                   const RunOptions& opts);

}  // namespace levi6
