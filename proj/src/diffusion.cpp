#include "gradmaze/diffusion.hpp"

#include "gradmaze/error.hpp"
#include "gradmaze/rng.hpp"
#include "gradmaze/trace.hpp"
#include "grid_problem.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace gradmaze {

namespace {

// Unit weights between channel cells and diag = channel degree turn the
// stencil kernel into the reflecting-wall diffusion operator.
void fill_reflecting_stencil(detail::GridProblem& problem, const Maze& maze,
                             const std::vector<bool>& cells) {
    for (std::size_t i = 0; i < maze.cell_count(); ++i) {
        if (!cells[i]) continue;
        const Coord c = maze.coord(i);
        const std::size_t g = problem.grid.at(c);
        double degree = 0.0;
        for (const Neighbor& n : maze.channel_neighbors(c)) {
            if (!cells[maze.index(n.cell)]) continue;
            problem.weight(g, n.dir) = 1.0;
            degree += 1.0;
        }
        problem.diag[g] = degree;
        problem.active[g] = 1.0;
    }
}

} // namespace

DiffusionResult diffuse(const Maze& maze, Coord anchor, const DiffusionParams& params) {
    if (!maze.is_channel(anchor)) throw Error(ErrorKind::WallQuery, "anchor must be a channel cell");
    if (!(params.decay >= 0.0 && params.decay < 1.0))
        throw Error(ErrorKind::InvalidArgument, "decay must lie in [0, 1)");
    if (params.steps < 1) throw Error(ErrorKind::InvalidArgument, "steps must be at least 1");

    const auto component = reachable_from(maze, anchor);
    detail::GridProblem problem(maze);
    fill_reflecting_stencil(problem, maze, component);
    const std::size_t a = problem.grid.at(anchor);
    problem.active[a] = 0.0;

    std::vector<double> x(problem.grid.size, 0.0), next(problem.grid.size, 0.0);
    x[a] = params.clamp;
    const auto& k = simd::kernels();
    const auto view = problem.view();
    const double keep = 1.0 - params.decay;

    DiffusionResult out{ScalarField(maze.width(), maze.height(), FieldKind::Concentration), {}};
    for (std::size_t s = 0; s < params.steps; ++s) {
        const double change = k.diffusion_step(view, keep, x.data(), next.data());
        x.swap(next);
        x[a] = params.clamp;
        out.diagnostics.iterations = s + 1;
        out.diagnostics.final_residual = change;
        if (change <= params.fixed_point_tol) {
            out.diagnostics.converged = true;
            break;
        }
    }
    for (std::size_t i = 0; i < maze.cell_count(); ++i)
        if (component[i]) out.field.set(maze.coord(i), x[problem.grid.at(maze.coord(i))]);
    return out;
}

ScalarField diffusion_step(const Maze& maze, const ScalarField& field, double decay) {
    std::vector<bool> cells(maze.cell_count(), false);
    detail::GridProblem problem(maze);
    std::vector<double> x(problem.grid.size, 0.0), next(problem.grid.size, 0.0);
    for (std::size_t i = 0; i < maze.cell_count(); ++i) {
        const Coord c = maze.coord(i);
        if (const auto v = field.at(c); v && maze.is_channel(c)) {
            cells[i] = true;
            x[problem.grid.at(c)] = *v;
        }
    }
    fill_reflecting_stencil(problem, maze, cells);
    simd::kernels().diffusion_step(problem.view(), 1.0 - decay, x.data(), next.data());
    ScalarField out(maze.width(), maze.height(), field.kind());
    for (std::size_t i = 0; i < maze.cell_count(); ++i)
        if (cells[i]) out.set(maze.coord(i), next[problem.grid.at(maze.coord(i))]);
    return out;
}

namespace {

Path loop_erase(const std::vector<Coord>& walk) {
    Path path;
    std::map<Coord, std::size_t> position;
    for (const Coord& c : walk) {
        if (auto it = position.find(c); it != position.end()) {
            for (std::size_t k = it->second + 1; k < path.cells.size(); ++k)
                position.erase(path.cells[k]);
            path.cells.resize(it->second + 1);
            continue;
        }
        position.emplace(c, path.cells.size());
        path.cells.push_back(c);
    }
    return path;
}

Path stochastic_walk(const ScalarField& field, const Maze& maze, Coord start, Coord anchor,
                     const SoftmaxStochastic& policy, std::size_t max_steps) {
    if (!(policy.temperature > 0.0))
        throw Error(ErrorKind::InvalidArgument, "temperature must be positive");
    Rng rng(policy.seed);
    std::vector<Coord> walk{start};
    Coord previous{-1, -1};
    Coord current = start;
    for (std::size_t s = 0; current != anchor; ++s) {
        if (s == max_steps)
            throw Error(ErrorKind::StepBudgetExceeded,
                        "agent did not reach the anchor in " + std::to_string(max_steps) + " steps");
        NeighborList options;
        for (const Neighbor& n : maze.channel_neighbors(current))
            if (n.cell != previous && field.has_value(n.cell)) options.push(n.cell, n.dir);
        if (options.empty()) {
            if (!field.has_value(previous))
                throw Error(ErrorKind::LocalExtremum, "agent is boxed in");
            options.push(previous, Direction::North);
        }

        // Softmax on log-concentration, shifted by the maximum for range.
        std::array<double, 4> logit{};
        double top = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < options.size(); ++k) {
            logit[k] = std::log(*field.at(options[k].cell)) / policy.temperature;
            top = std::max(top, logit[k]);
        }
        std::array<double, 4> weight{};
        double total = 0.0;
        for (std::size_t k = 0; k < options.size(); ++k) {
            weight[k] = std::isinf(top) ? 1.0 : std::exp(logit[k] - top);
            total += weight[k];
        }
        double pick = rng.unit() * total;
        std::size_t chosen = options.size() - 1;
        for (std::size_t k = 0; k < options.size(); ++k) {
            if (pick < weight[k]) {
                chosen = k;
                break;
            }
            pick -= weight[k];
        }
        previous = current;
        current = options[chosen].cell;
        walk.push_back(current);
    }
    return loop_erase(walk);
}

} // namespace

Path chemotactic_trace(const ScalarField& field, const Maze& maze, Coord start, Coord anchor,
                       const AgentPolicy& policy, std::size_t max_steps) {
    if (!maze.is_channel(start) || !maze.is_channel(anchor))
        throw Error(ErrorKind::WallQuery, "trace endpoints must be channel cells");
    if (!field.has_value(start)) throw Error(ErrorKind::Unreachable, "start has no concentration");
    if (const auto* s = std::get_if<SoftmaxStochastic>(&policy))
        return stochastic_walk(field, maze, start, anchor, *s, max_steps);
    return greedy_trace(field, maze, start, anchor, TraceMode::AscendToMax, max_steps);
}

CellSet dye_advect(const ScalarField& field, const Maze& maze, Coord start, Coord anchor) {
    const Path streak = chemotactic_trace(field, maze, start, anchor, DeterministicGreedy{},
                                          maze.cell_count());
    return CellSet(streak.cells.begin(), streak.cells.end());
}

} // namespace gradmaze
