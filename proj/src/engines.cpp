#include "gradmaze/engines.hpp"

#include "gradmaze/error.hpp"
#include "gradmaze/io.hpp"
#include "gradmaze/oracle.hpp"
#include "gradmaze/trace.hpp"

#include <chrono>

namespace gradmaze {

std::string_view to_string(EngineId id) {
    switch (id) {
    case EngineId::Lee: return "lee";
    case EngineId::LaplaceNeumann: return "laplace-neumann";
    case EngineId::LaplaceDirichlet: return "laplace-dirichlet";
    case EngineId::CurrentHot: return "current-hot";
    case EngineId::Physarum: return "physarum";
    case EngineId::Diffusion: return "diffusion";
    case EngineId::Wavefront: return "wavefront";
    case EngineId::Ca: return "ca";
    case EngineId::Isochrone: return "isochrone";
    case EngineId::Crystal: return "crystal";
    }
    return "unknown";
}

std::optional<EngineId> parse_engine(std::string_view name) {
    for (EngineId id : kAllEngines)
        if (to_string(id) == name) return id;
    return std::nullopt;
}

std::string_view prototype_name(EngineId id) {
    switch (id) {
    case EngineId::Lee: return "LEE";
    case EngineId::LaplaceNeumann: return "FLUIDIC";
    case EngineId::LaplaceDirichlet: return "ELECTRIC";
    case EngineId::CurrentHot: return "THERMO";
    case EngineId::Physarum: return "PHYSARUM-I";
    case EngineId::Diffusion: return "MARANGONI";
    case EngineId::Wavefront: return "VLSI";
    case EngineId::Ca: return "WAVE";
    case EngineId::Isochrone: return "WAVE-ISO";
    case EngineId::Crystal: return "CRYSTALL";
    }
    return "unknown";
}

std::string_view to_string(Status status) {
    switch (status) {
    case Status::Ok: return "Ok";
    case Status::LocalExtremum: return "LocalExtremum";
    case Status::NotConverged: return "NotConverged";
    case Status::Unreachable: return "Unreachable";
    }
    return "Unknown";
}

int exit_code(Status status) {
    switch (status) {
    case Status::Ok: return 0;
    case Status::Unreachable: return 2;
    case Status::NotConverged: return 3;
    case Status::LocalExtremum: return 4;
    }
    return 1;
}

std::string format_report(const SolveReport& r, bool include_time) {
    return "v1 engine=" + std::string(to_string(r.engine)) + " len=" + std::to_string(r.path_len) +
           " oracle=" + std::to_string(r.oracle_len) + " optimal=" + (r.optimal ? "true" : "false") +
           " iters=" + std::to_string(r.iterations) + " resid=" + format_real(r.residual) +
           " ms=" + format_real(include_time ? r.wall_ms : 0.0) + " status=" +
           std::string(to_string(r.status));
}

namespace {

Status status_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Unreachable: return Status::Unreachable;
    case ErrorKind::NotConverged:
    case ErrorKind::NotQuiescent: return Status::NotConverged;
    default: return Status::LocalExtremum;
    }
}

struct Developed {
    Path path;
    std::optional<ScalarField> field;
    std::size_t iterations = 0;
    double residual = 0.0;
    bool converged = true;
    std::optional<Error> failure;
};

Developed develop(EngineId id, const Maze& maze, const EngineParams& p) {
    const Coord src = maze.source();
    const Coord dst = maze.destination();
    switch (id) {
    case EngineId::Lee: {
        const auto labels = lee_label(maze, dst);
        return {lee_trace(maze, labels, src), as_scalar_field(labels, FieldKind::Potential),
                static_cast<std::size_t>(labels.max_label()), 0.0, true, std::nullopt};
    }
    case EngineId::LaplaceNeumann:
    case EngineId::LaplaceDirichlet:
    case EngineId::CurrentHot: {
        const auto bc = id == EngineId::LaplaceDirichlet ? BoundaryCondition::DirichletWalls
                                                         : BoundaryCondition::NeumannWalls;
        auto opts = default_potential_options(bc);
        opts.tol = p.tol;
        opts.max_iter = p.max_iter;
        opts.method = p.method;
        auto sol = solve_potential(maze, bc, opts);
        const auto& d = sol.diagnostics;
        if (!d.converged) return {{}, std::move(sol.field), d.iterations, d.final_residual, false, std::nullopt};
        Developed dev{{}, std::nullopt, d.iterations, d.final_residual, true, std::nullopt};
        try {
            if (id == EngineId::CurrentHot) {
                auto currents = current_field(sol.field, maze, bc);
                const auto hot = extract_hot_path(currents, maze, p.quantile);
                dev.field = std::move(currents);
                dev.path = route_within(hot.cells, maze);
            } else {
                dev.field = std::move(sol.field);
                dev.path = trace_streamline(*dev.field, maze, src);
            }
        } catch (const Error& e) {
            dev.failure = e;
        }
        return dev;
    }
    case EngineId::Physarum: {
        const auto res = physarum_solve(maze, p.physarum_steps, p.dt, p.physarum_tol);
        const auto& d = res.diagnostics;
        auto field = res.conductivity.per_cell_max(maze);
        if (!d.converged) return {{}, std::move(field), d.iterations, d.final_residual, false, std::nullopt};
        return {thickest_path(res.conductivity, maze, p.thick_ratio), std::move(field), d.iterations,
                d.final_residual, true, std::nullopt};
    }
    case EngineId::Diffusion: {
        DiffusionParams dp;
        dp.decay = p.decay;
        dp.steps = p.diffusion_steps;
        auto res = diffuse(maze, dst, dp);
        AgentPolicy policy = DeterministicGreedy{};
        if (p.temperature > 0.0) policy = SoftmaxStochastic{p.temperature, p.seed};
        const std::size_t budget = p.temperature > 0.0 ? 100 * maze.cell_count() : maze.cell_count();
        Path path = chemotactic_trace(res.field, maze, src, dst, policy, budget);
        return {std::move(path), std::move(res.field), res.diagnostics.iterations,
                res.diagnostics.final_residual, true, std::nullopt};
    }
    case EngineId::Wavefront: {
        const DelayMap delays = p.delay_max > 1 ? DelayMap::random(maze, 1, p.delay_max, p.delay_seed)
                                                : DelayMap(maze.width(), maze.height());
        const auto field = weighted_wavefront(maze, delays, dst);
        return {pointer_trace(field, src), as_scalar_field(field, FieldKind::Potential),
                static_cast<std::size_t>(field.max_arrival()), 0.0, true, std::nullopt};
    }
    case EngineId::Ca:
    case EngineId::Crystal: {
        const CaParams cp{p.refractory, p.threshold};
        const auto run = excitable_ca(maze, dst, cp, 4 * maze.cell_count() + 16);
        Path path = id == EngineId::Crystal
                        ? pointer_trace(run.field, src)
                        : greedy_trace(run.field, maze, src, dst, TraceMode::DescendToMin,
                                       maze.cell_count());
        return {std::move(path), as_scalar_field(run.field, FieldKind::Potential), run.steps, 0.0,
                true, std::nullopt};
    }
    case EngineId::Isochrone: {
        const CaParams cp{p.refractory, p.threshold};
        const std::size_t budget = 4 * maze.cell_count() + 16;
        const auto from_src = excitable_ca(maze, src, cp, budget);
        const auto from_dst = excitable_ca(maze, dst, cp, budget);
        auto geo = isochrone_intersection_path(maze, from_src.field, from_dst.field);
        ScalarField mask(maze.width(), maze.height(), FieldKind::Potential);
        for (std::size_t i = 0; i < maze.cell_count(); ++i)
            if (maze.cells()[i] == Cell::Channel)
                mask.set(maze.coord(i), geo.geodesic.count(maze.coord(i)) ? 1.0 : 0.0);
        return {std::move(geo.path), std::move(mask), from_src.steps + from_dst.steps, 0.0, true, std::nullopt};
    }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown engine");
}

} // namespace

EngineOutput run_engine(EngineId id, const Maze& maze, const EngineParams& params) {
    EngineOutput out;
    SolveReport& r = out.report;
    r.engine = id;
    if (!is_connected(maze)) {
        r.status = Status::Unreachable;
        r.detail = "destination not reachable from source";
        return out;
    }
    r.oracle_len = lee_trace(maze, lee_label(maze, maze.destination()), maze.source()).length();

    const auto start = std::chrono::steady_clock::now();
    try {
        Developed dev = develop(id, maze, params);
        r.iterations = dev.iterations;
        r.residual = dev.residual;
        out.field = std::move(dev.field);
        if (dev.failure) {
            r.status = status_for(dev.failure->kind());
            r.detail = dev.failure->what();
        } else if (!dev.converged) {
            r.status = Status::NotConverged;
            r.detail = "solver did not reach tolerance";
        } else {
            r.status = Status::Ok;
            r.path_len = dev.path.length();
            out.path = std::move(dev.path);
        }
    } catch (const Error& e) {
        r.status = status_for(e.kind());
        r.detail = e.what();
    }
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.optimal = r.status == Status::Ok && r.path_len == r.oracle_len;
    return out;
}

} // namespace gradmaze
