#pragma once

// Engine pipelines behind the command line: each id pairs a gradient
// developer with the tracer that reads a path out of it.

#include "gradmaze/diffusion.hpp"
#include "gradmaze/field.hpp"
#include "gradmaze/maze.hpp"
#include "gradmaze/netflow.hpp"
#include "gradmaze/wavefront.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gradmaze {

enum class EngineId {
    Lee,              // LEE: wave labeling + label descent
    LaplaceNeumann,   // resistor network / FLUIDIC: insulating walls, streamline descent
    LaplaceDirichlet, // resistor network with grounded walls
    CurrentHot,       // THERMO: brightest current cells
    Physarum,         // PHYSARUM I: tube reinforcement, thickest tube
    Diffusion,        // MARANGONI / PHYSARUM II / EPITHELIUM / TEMPERATURE: chemotactic ascent
    Wavefront,        // VLSI: delay-weighted wave, stored directions
    Ca,               // WAVE: excitable medium, arrival-time descent
    Isochrone,        // WAVE: intersection of source and destination isochrones
    Crystal,          // CRYSTALL: pointers set by the excitation front
};

inline constexpr std::array<EngineId, 10> kAllEngines{
    EngineId::Lee,       EngineId::LaplaceNeumann, EngineId::LaplaceDirichlet, EngineId::CurrentHot,
    EngineId::Physarum,  EngineId::Diffusion,      EngineId::Wavefront,        EngineId::Ca,
    EngineId::Isochrone, EngineId::Crystal};

std::string_view to_string(EngineId id);
std::optional<EngineId> parse_engine(std::string_view name);
/// Physical prototype family the pipeline stands in for.
std::string_view prototype_name(EngineId id);

struct EngineParams {
    // potential solves
    double tol = 1e-10;
    std::size_t max_iter = 0; // 0: 50 * cells
    SolveMethod method = SolveMethod::ConjugateGradient;
    double quantile = 0.5;
    // physarum
    std::size_t physarum_steps = 1000;
    double dt = 0.1;
    double physarum_tol = 1e-6;
    double thick_ratio = 0.5;
    // diffusion
    double decay = 0.05;
    std::size_t diffusion_steps = 100000;
    double temperature = 0.0; // > 0 selects the stochastic agent
    std::uint64_t seed = 0;
    // wavefront / CA
    int refractory = 3;
    int threshold = 1;
    std::int64_t delay_max = 1; // > 1: random delays in 1..delay_max
    std::uint64_t delay_seed = 0;
};

enum class Status { Ok, LocalExtremum, NotConverged, Unreachable };

std::string_view to_string(Status status);
int exit_code(Status status);

struct SolveReport {
    EngineId engine = EngineId::Lee;
    std::size_t path_len = 0;
    std::size_t oracle_len = 0;
    bool optimal = false;
    std::size_t iterations = 0;
    double residual = 0.0;
    double wall_ms = 0.0;
    Status status = Status::Ok;
    std::string detail;
};

/// `v1 engine=<id> len=<n> oracle=<n> optimal=<bool> iters=<n> resid=<real> ms=<real> status=<word>`.
/// With include_time false the ms field is written as 0.
std::string format_report(const SolveReport& report, bool include_time = true);

struct EngineOutput {
    SolveReport report;
    std::optional<Path> path;
    std::optional<ScalarField> field; ///< the developed gradient, for renders
};

/// Never throws for engine failures: they land in report.status.
EngineOutput run_engine(EngineId id, const Maze& maze, const EngineParams& params);

} // namespace gradmaze
