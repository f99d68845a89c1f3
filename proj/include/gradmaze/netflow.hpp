#pragma once

// Resistance-gradient engines: the maze as a resistor network (electrical
// potential, current magnitude), the same network read as a pressure-driven
// fluid (pressure plays voltage, conductance is 1/length), and flux-driven
// tube reinforcement.

#include "gradmaze/field.hpp"
#include "gradmaze/maze.hpp"

#include <cstddef>
#include <optional>
#include <set>

namespace gradmaze {

using CellSet = std::set<Coord>;

enum class BoundaryCondition {
    DirichletWalls, ///< walls held at potential 0, acting as current sinks
    NeumannWalls,   ///< insulating walls, no flux across them
};

enum class SolveMethod { Jacobi, ConjugateGradient };

struct PotentialOptions {
    double v_source = 1.0;
    double v_dest = 0.0;
    double tol = 1e-10;
    std::size_t max_iter = 0; ///< 0 selects 50 * width * height
    SolveMethod method = SolveMethod::ConjugateGradient;
};

/// Endpoint values: 1/0 for insulating walls, 1/-1 when walls sit at 0 so the
/// destination stays distinguishable from them.
PotentialOptions default_potential_options(BoundaryCondition bc);

struct PotentialSolution {
    ScalarField field;
    SolveDiagnostics diagnostics;
};

/// Discrete Laplace equation on the channel cells connected to the source,
/// source and destination pinned. Throws Unreachable / InvalidEndpoints /
/// InvalidArgument; an unconverged solve is reported through diagnostics.
PotentialSolution solve_potential(const Maze& maze, BoundaryCondition bc,
                                  const PotentialOptions& options);

/// Per-cell current magnitude: half the sum of |dV| over stencil neighbours.
/// Under DirichletWalls, wall neighbours count at potential 0.
ScalarField current_field(const ScalarField& potential, const Maze& maze, BoundaryCondition bc);

struct HotSet {
    CellSet cells;
    double threshold = 0.0;
};

/// Cells whose current is at or above the `quantile` order statistic of all
/// channel-cell currents. Throws DisconnectedHotSet if the set does not link
/// source to destination.
HotSet extract_hot_path(const ScalarField& currents, const Maze& maze, double quantile);

/// Shortest source-to-destination route inside a cell set.
Path route_within(const CellSet& cells, const Maze& maze);

/// Steepest descent on the potential (towards the destination value) from
/// `start`, N, E, S, W first on exact ties. Throws LocalExtremum on a plateau.
Path trace_streamline(const ScalarField& potential, const Maze& maze, Coord start);

/// Per-edge tube conductivity. Edges are stored on their north/west cell.
class EdgeConductivity {
public:
    EdgeConductivity(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    std::optional<double> at(Coord c, Direction d) const;
    void set(Coord c, Direction d, double value);
    double max() const;
    std::size_t edge_count() const;

    /// Largest conductivity among the edges touching each cell.
    ScalarField per_cell_max(const Maze& maze) const;

    friend bool operator==(const EdgeConductivity&, const EdgeConductivity&) = default;

private:
    std::optional<std::size_t> slot(Coord c, Direction d) const;

    int width_;
    int height_;
    std::vector<std::optional<double>> east_;
    std::vector<std::optional<double>> south_;
};

struct PhysarumResult {
    EdgeConductivity conductivity;
    SolveDiagnostics diagnostics;   ///< residual is max |dD| of the final step
    double max_flux_imbalance = 0.0; ///< worst |source out-flux - destination in-flux|
};

/// Flux reinforcement: unit flux injected at the source and withdrawn at the
/// destination; each step solves pressures on conductances D, sets
/// Q = D * dp per edge, then D += dt * (|Q| - D). Starts from D = 1.
PhysarumResult physarum_solve(const Maze& maze, std::size_t steps, double dt, double tol);

/// The source-to-destination chain formed by edges with D >= ratio * max(D).
/// Throws DisconnectedHotSet if the kept edges do not connect the endpoints
/// and AmbiguousPath if they leave more than one route.
Path thickest_path(const EdgeConductivity& conductivity, const Maze& maze, double threshold_ratio);

} // namespace gradmaze
