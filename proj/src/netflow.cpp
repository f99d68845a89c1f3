#include "gradmaze/netflow.hpp"

#include "gradmaze/error.hpp"
#include "gradmaze/oracle.hpp"
#include "gradmaze/trace.hpp"
#include "grid_problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gradmaze {

using detail::GridProblem;

std::string_view to_string(FieldKind kind) {
    switch (kind) {
    case FieldKind::Potential: return "potential";
    case FieldKind::Current: return "current";
    case FieldKind::Conductivity: return "conductivity";
    case FieldKind::Concentration: return "concentration";
    }
    return "unknown";
}

PotentialOptions default_potential_options(BoundaryCondition bc) {
    PotentialOptions o;
    o.v_source = 1.0;
    o.v_dest = bc == BoundaryCondition::DirichletWalls ? -1.0 : 0.0;
    return o;
}

PotentialSolution solve_potential(const Maze& maze, BoundaryCondition bc,
                                  const PotentialOptions& options) {
    if (!(options.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    if (options.v_source == options.v_dest)
        throw Error(ErrorKind::InvalidArgument, "source and destination potentials must differ");
    if (!is_connected(maze)) throw Error(ErrorKind::Unreachable, "destination not reachable");

    const std::size_t max_iter =
        options.max_iter != 0 ? options.max_iter : 50 * maze.cell_count();
    const auto component = reachable_from(maze, maze.source());

    GridProblem problem(maze);
    const auto& grid = problem.grid;
    std::vector<double> x(grid.size, 0.0);
    const double guess = 0.5 * (options.v_source + options.v_dest);

    for (std::size_t i = 0; i < maze.cell_count(); ++i) {
        if (!component[i]) continue;
        const Coord c = maze.coord(i);
        const std::size_t g = grid.at(c);
        if (c == maze.source()) {
            x[g] = options.v_source;
            continue;
        }
        if (c == maze.destination()) {
            x[g] = options.v_dest;
            continue;
        }
        x[g] = guess;
        problem.active[g] = 1.0;
        double degree = 0.0;
        for (const Neighbor& n : maze.channel_neighbors(c)) {
            problem.weight(g, n.dir) = 1.0;
            degree += 1.0;
        }
        problem.diag[g] = bc == BoundaryCondition::NeumannWalls ? degree : 4.0;
    }

    const auto stats = options.method == SolveMethod::Jacobi
                           ? detail::solve_jacobi(problem, x, options.tol, max_iter)
                           : detail::solve_conjugate_gradient(problem, x, options.tol, max_iter);

    PotentialSolution out{ScalarField(maze.width(), maze.height(), FieldKind::Potential),
                          SolveDiagnostics{stats.iterations, stats.residual, stats.converged}};
    for (std::size_t i = 0; i < maze.cell_count(); ++i)
        if (component[i]) out.field.set(maze.coord(i), x[grid.at(maze.coord(i))]);
    return out;
}

ScalarField current_field(const ScalarField& potential, const Maze& maze, BoundaryCondition bc) {
    if (potential.width() != maze.width() || potential.height() != maze.height())
        throw Error(ErrorKind::InvalidArgument, "field and maze dimensions differ");
    ScalarField out(maze.width(), maze.height(), FieldKind::Current);
    for (std::size_t i = 0; i < maze.cell_count(); ++i) {
        const Coord c = maze.coord(i);
        const auto v = potential.at(c);
        if (!v) continue;
        double sum = 0.0;
        for (Direction d : kDirections) {
            const Coord n = step(c, d);
            if (const auto w = potential.at(n); w && maze.is_channel(n)) {
                sum += std::fabs(*v - *w);
            } else if (bc == BoundaryCondition::DirichletWalls && !maze.is_channel(n)) {
                sum += std::fabs(*v);
            }
        }
        // Electrode cells pass all of their internal flow to the external
        // circuit, so their in/out average equals the internal sum.
        const bool electrode = c == maze.source() || c == maze.destination();
        out.set(c, electrode ? sum : 0.5 * sum);
    }
    return out;
}

Path route_within(const CellSet& cells, const Maze& maze) {
    std::vector<Cell> masked(maze.cell_count(), Cell::Wall);
    for (const Coord& c : cells)
        if (maze.is_channel(c)) masked[maze.index(c)] = Cell::Channel;
    if (masked[maze.index(maze.source())] != Cell::Channel ||
        masked[maze.index(maze.destination())] != Cell::Channel)
        throw Error(ErrorKind::DisconnectedHotSet, "cell set misses an endpoint");
    const Maze sub(maze.width(), maze.height(), std::move(masked), maze.source(), maze.destination());
    const auto field = lee_label(sub, sub.destination());
    if (!field.is_labeled(sub.source()))
        throw Error(ErrorKind::DisconnectedHotSet, "cell set does not connect source and destination");
    return lee_trace(sub, field, sub.source());
}

HotSet extract_hot_path(const ScalarField& currents, const Maze& maze, double quantile) {
    if (!(quantile > 0.0 && quantile <= 1.0))
        throw Error(ErrorKind::InvalidArgument, "quantile must lie in (0, 1]");
    std::vector<double> magnitudes;
    for (std::size_t i = 0; i < maze.cell_count(); ++i)
        if (const auto v = currents.at(maze.coord(i)); v && maze.cells()[i] == Cell::Channel)
            magnitudes.push_back(*v);
    if (magnitudes.empty()) throw Error(ErrorKind::DisconnectedHotSet, "no current values");
    std::sort(magnitudes.begin(), magnitudes.end());
    const auto rank = static_cast<std::size_t>(
        std::floor(quantile * static_cast<double>(magnitudes.size() - 1)));
    HotSet hot;
    hot.threshold = magnitudes[rank];
    // Currents carry solver error; values within 1e-9 of the peak, relative,
    // of the threshold count as reaching it. Cells at that noise level carry
    // no current and are never hot, even when they make up the quantile.
    const double slack = 1e-9 * magnitudes.back();
    for (std::size_t i = 0; i < maze.cell_count(); ++i) {
        const Coord c = maze.coord(i);
        const auto v = currents.at(c);
        if (v && maze.is_channel(c) && *v >= hot.threshold - slack && *v > slack) hot.cells.insert(c);
    }
    route_within(hot.cells, maze);
    return hot;
}

Path trace_streamline(const ScalarField& potential, const Maze& maze, Coord start) {
    const auto v_dest = potential.at(maze.destination());
    const auto v_start = potential.at(start);
    if (!v_dest || !v_start) throw Error(ErrorKind::Unreachable, "potential undefined at an endpoint");
    const TraceMode mode = *v_dest <= *v_start ? TraceMode::DescendToMin : TraceMode::AscendToMax;
    return greedy_trace(potential, maze, start, maze.destination(), mode, maze.cell_count());
}

EdgeConductivity::EdgeConductivity(int width, int height)
    : width_(width), height_(height), east_(static_cast<std::size_t>(width) * height),
      south_(static_cast<std::size_t>(width) * height) {}

std::optional<std::size_t> EdgeConductivity::slot(Coord c, Direction d) const {
    Coord owner = c;
    if (d == Direction::West) owner = step(c, Direction::West);
    if (d == Direction::North) owner = step(c, Direction::North);
    if (owner.row < 0 || owner.col < 0 || owner.row >= height_ || owner.col >= width_)
        return std::nullopt;
    return static_cast<std::size_t>(owner.row) * width_ + owner.col;
}

std::optional<double> EdgeConductivity::at(Coord c, Direction d) const {
    const auto s = slot(c, d);
    if (!s) return std::nullopt;
    return (d == Direction::East || d == Direction::West) ? east_[*s] : south_[*s];
}

void EdgeConductivity::set(Coord c, Direction d, double value) {
    const auto s = slot(c, d);
    if (!s) throw Error(ErrorKind::InvalidArgument, "edge outside the grid");
    ((d == Direction::East || d == Direction::West) ? east_[*s] : south_[*s]) = value;
}

double EdgeConductivity::max() const {
    double m = 0.0;
    for (const auto* edges : {&east_, &south_})
        for (const auto& e : *edges)
            if (e && *e > m) m = *e;
    return m;
}

std::size_t EdgeConductivity::edge_count() const {
    std::size_t n = 0;
    for (const auto* edges : {&east_, &south_})
        for (const auto& e : *edges) n += e.has_value();
    return n;
}

ScalarField EdgeConductivity::per_cell_max(const Maze& maze) const {
    ScalarField out(width_, height_, FieldKind::Conductivity);
    for (std::size_t i = 0; i < maze.cell_count(); ++i) {
        const Coord c = maze.coord(i);
        std::optional<double> best;
        for (Direction d : kDirections)
            if (const auto v = at(c, d); v && (!best || *v > *best)) best = v;
        if (best) out.set(c, *best);
    }
    return out;
}

PhysarumResult physarum_solve(const Maze& maze, std::size_t steps, double dt, double tol) {
    if (!(dt > 0.0 && dt <= 1.0)) throw Error(ErrorKind::InvalidArgument, "dt must lie in (0, 1]");
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    if (!is_connected(maze)) throw Error(ErrorKind::Unreachable, "destination not reachable");

    const auto component = reachable_from(maze, maze.source());
    PhysarumResult result{EdgeConductivity(maze.width(), maze.height()), {}, 0.0};
    auto& cond = result.conductivity;

    struct Edge {
        Coord a;
        Coord b;
        Direction dir; // from a to b
    };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < maze.cell_count(); ++i) {
        if (!component[i]) continue;
        const Coord c = maze.coord(i);
        for (Direction d : {Direction::East, Direction::South}) {
            if (maze.is_channel(step(c, d))) {
                edges.push_back({c, step(c, d), d});
                cond.set(c, d, 1.0);
            }
        }
    }

    GridProblem problem(maze);
    const auto& grid = problem.grid;
    std::vector<double> pressure(grid.size, 0.0);
    const std::size_t source = grid.at(maze.source());
    const std::size_t dest = grid.at(maze.destination());
    const std::size_t inner_max = 50 * maze.cell_count();
    constexpr double kInnerTol = 1e-10;

    SolveDiagnostics& diag = result.diagnostics;
    for (std::size_t it = 0; it < steps; ++it) {
        std::fill(problem.diag.begin(), problem.diag.end(), 0.0);
        for (auto* w : {&problem.w_north, &problem.w_east, &problem.w_south, &problem.w_west})
            std::fill(w->begin(), w->end(), 0.0);
        for (const Edge& e : edges) {
            const double d = *cond.at(e.a, e.dir);
            const std::size_t ga = grid.at(e.a), gb = grid.at(e.b);
            problem.weight(ga, e.dir) = d;
            problem.weight(gb, opposite(e.dir)) = d;
            problem.diag[ga] += d;
            problem.diag[gb] += d;
        }
        for (std::size_t i = 0; i < maze.cell_count(); ++i) {
            if (!component[i]) continue;
            const std::size_t g = grid.at(maze.coord(i));
            problem.active[g] = (g != dest && problem.diag[g] > 0.0) ? 1.0 : 0.0;
        }
        problem.rhs[source] = 1.0;
        pressure[dest] = 0.0;

        const auto inner = detail::solve_conjugate_gradient(problem, pressure, kInnerTol, inner_max);
        if (!inner.converged) {
            diag.converged = false;
            diag.iterations = it;
            return result;
        }

        double out_source = 0.0, in_dest = 0.0, max_change = 0.0;
        for (const Edge& e : edges) {
            const double d = *cond.at(e.a, e.dir);
            const double q = d * (pressure[grid.at(e.a)] - pressure[grid.at(e.b)]);
            if (e.a == maze.source()) out_source += q;
            if (e.b == maze.source()) out_source -= q;
            if (e.b == maze.destination()) in_dest += q;
            if (e.a == maze.destination()) in_dest -= q;
            const double next = d + dt * (std::fabs(q) - d);
            max_change = std::max(max_change, std::fabs(next - d));
            cond.set(e.a, e.dir, next);
        }
        result.max_flux_imbalance =
            std::max(result.max_flux_imbalance, std::fabs(out_source - in_dest));
        diag.iterations = it + 1;
        diag.final_residual = max_change;
        if (max_change <= tol) {
            diag.converged = true;
            return result;
        }
    }
    diag.converged = diag.final_residual <= tol && steps > 0;
    return result;
}

Path thickest_path(const EdgeConductivity& conductivity, const Maze& maze, double threshold_ratio) {
    if (!(threshold_ratio > 0.0 && threshold_ratio <= 1.0))
        throw Error(ErrorKind::InvalidArgument, "threshold ratio must lie in (0, 1]");
    const double cut = threshold_ratio * conductivity.max();
    auto kept = [&](Coord c, Direction d) {
        const auto v = conductivity.at(c, d);
        return v && *v >= cut && maze.is_channel(c) && maze.is_channel(step(c, d));
    };

    // Reachable part of the kept subgraph, then strip dead ends.
    std::vector<int> degree(maze.cell_count(), -1);
    std::vector<Coord> stack{maze.source()};
    degree[maze.index(maze.source())] = 0;
    while (!stack.empty()) {
        const Coord c = stack.back();
        stack.pop_back();
        for (Direction d : kDirections) {
            if (!kept(c, d)) continue;
            const Coord n = step(c, d);
            ++degree[maze.index(c)];
            if (degree[maze.index(n)] < 0) {
                degree[maze.index(n)] = 0;
                stack.push_back(n);
            }
        }
    }
    if (degree[maze.index(maze.destination())] < 0)
        throw Error(ErrorKind::DisconnectedHotSet, "thick edges do not connect source and destination");

    auto pinned = [&](Coord c) { return c == maze.source() || c == maze.destination(); };
    for (std::size_t i = 0; i < maze.cell_count(); ++i)
        if (degree[i] >= 0 && degree[i] <= 1 && !pinned(maze.coord(i))) stack.push_back(maze.coord(i));
    while (!stack.empty()) {
        const Coord c = stack.back();
        stack.pop_back();
        if (degree[maze.index(c)] < 0) continue;
        degree[maze.index(c)] = -1;
        for (Direction d : kDirections) {
            if (!kept(c, d)) continue;
            const Coord n = step(c, d);
            int& dn = degree[maze.index(n)];
            if (dn < 0) continue;
            if (--dn <= 1 && !pinned(n)) stack.push_back(n);
        }
    }
    for (std::size_t i = 0; i < maze.cell_count(); ++i) {
        if (degree[i] < 0) continue;
        const int expected = pinned(maze.coord(i)) ? 1 : 2;
        if (degree[i] != expected)
            throw Error(ErrorKind::AmbiguousPath, "thick edges leave more than one route");
    }

    Path path;
    path.cells.push_back(maze.source());
    Coord prev{-1, -1};
    Coord current = maze.source();
    while (current != maze.destination()) {
        bool moved = false;
        for (Direction d : kDirections) {
            const Coord n = step(current, d);
            if (n == prev || !kept(current, d) || degree[maze.index(n)] < 0) continue;
            prev = current;
            current = n;
            path.cells.push_back(current);
            moved = true;
            break;
        }
        if (!moved) throw Error(ErrorKind::DisconnectedHotSet, "thick chain is broken");
    }
    return path;
}

} // namespace gradmaze
