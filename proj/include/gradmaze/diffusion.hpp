#pragma once

// Chemical and thermal gradient engines: a concentration field diffusing
// from an anchor (the destination) through the channels, and agents or dye
// streaks that climb it.

#include "gradmaze/field.hpp"
#include "gradmaze/maze.hpp"
#include "gradmaze/netflow.hpp"

#include <cstddef>
#include <cstdint>
#include <variant>

namespace gradmaze {

struct DiffusionParams {
    double decay = 0.05;       ///< fraction lost per step, in [0, 1)
    std::size_t steps = 100000; ///< upper bound on explicit steps
    double clamp = 1.0;         ///< concentration held at the anchor
    /// Early exit once no cell changes by more than this fraction of its value.
    double fixed_point_tol = 1e-12;
};

struct DiffusionResult {
    ScalarField field;
    SolveDiagnostics diagnostics; ///< residual is the last max relative change
};

/// Explicit scheme on the channel cells connected to the anchor:
///   c' = (1 - decay) * (c + 1/4 * sum_nbr (n - c))
/// with reflecting walls and the anchor re-clamped after each step.
DiffusionResult diffuse(const Maze& maze, Coord anchor, const DiffusionParams& params);

/// One step of the same scheme with nothing clamped. Every channel cell with
/// a value is updated; cells without a value stay without one.
ScalarField diffusion_step(const Maze& maze, const ScalarField& field, double decay);

struct DeterministicGreedy {};
struct SoftmaxStochastic {
    double temperature = 0.1;
    std::uint64_t seed = 0;
};
using AgentPolicy = std::variant<DeterministicGreedy, SoftmaxStochastic>;

/// Agent climbing the concentration towards the anchor (the field maximum).
/// Greedy: strict ascent, N, E, S, W on ties; LocalExtremum if stuck.
/// Stochastic: picks a neighbour with probability proportional to
/// exp(ln(c) / temperature), never stepping straight back unless at a dead
/// end; the walked trajectory is loop-erased before it is returned.
Path chemotactic_trace(const ScalarField& field, const Maze& maze, Coord start, Coord anchor,
                       const AgentPolicy& policy, std::size_t max_steps);

/// Cells stained by a dye streak released at `start`; the streak follows the
/// same ascent as the greedy agent.
CellSet dye_advect(const ScalarField& field, const Maze& maze, Coord start, Coord anchor);

} // namespace gradmaze
