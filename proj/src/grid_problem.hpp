#pragma once

// Internal: padded-grid storage for the stencil kernels and the two linear
// solvers (Jacobi, preconditioned conjugate gradient) built on them.

#include "gradmaze/maze.hpp"
#include "gradmaze/simd/kernels.hpp"

#include <cstddef>
#include <vector>

namespace gradmaze::detail {

struct PaddedGrid {
    int width = 0;
    int height = 0;
    std::size_t stride = 0;
    std::size_t size = 0;

    explicit PaddedGrid(const Maze& maze)
        : width(maze.width()), height(maze.height()),
          stride(static_cast<std::size_t>(maze.width()) + 2),
          size((static_cast<std::size_t>(maze.height()) + 2) * stride) {}

    std::size_t at(Coord c) const {
        return (static_cast<std::size_t>(c.row) + 1) * stride + static_cast<std::size_t>(c.col) + 1;
    }
    std::size_t begin() const { return stride + 1; }
    std::size_t end() const { return static_cast<std::size_t>(height) * stride + width + 1; }
    std::size_t offset(Direction d) const;
};

/// Weighted graph Laplacian on the padded grid: for each active cell i,
/// diag[i]*x[i] - sum_nbr w*x[nbr] = rhs[i].
struct GridProblem {
    PaddedGrid grid;
    std::vector<double> w_north, w_east, w_south, w_west;
    std::vector<double> diag, rhs, active;

    explicit GridProblem(const Maze& maze)
        : grid(maze), w_north(grid.size, 0.0), w_east(grid.size, 0.0), w_south(grid.size, 0.0),
          w_west(grid.size, 0.0), diag(grid.size, 1.0), rhs(grid.size, 0.0),
          active(grid.size, 0.0) {}

    double& weight(std::size_t i, Direction d);

    simd::StencilView view() const {
        return {grid.stride,      grid.begin(),    grid.end(),  w_north.data(), w_east.data(),
                w_south.data(),   w_west.data(),   diag.data(), rhs.data(),     active.data()};
    }
};

struct LinearSolveStats {
    std::size_t iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

/// Residual is measured as max over active cells of |r_i / diag_i|, i.e. the
/// distance of each value from its weighted neighbour mean.
double scaled_residual(const GridProblem& problem, const std::vector<double>& x);

LinearSolveStats solve_jacobi(const GridProblem& problem, std::vector<double>& x, double tol,
                              std::size_t max_iter);

LinearSolveStats solve_conjugate_gradient(const GridProblem& problem, std::vector<double>& x,
                                          double tol, std::size_t max_iter);

} // namespace gradmaze::detail
