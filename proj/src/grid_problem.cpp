#include "grid_problem.hpp"

namespace gradmaze::detail {

std::size_t PaddedGrid::offset(Direction d) const {
    switch (d) {
    case Direction::North:
    case Direction::South: return stride;
    case Direction::East:
    case Direction::West: return 1;
    }
    return 0;
}

double& GridProblem::weight(std::size_t i, Direction d) {
    switch (d) {
    case Direction::North: return w_north[i];
    case Direction::East: return w_east[i];
    case Direction::South: return w_south[i];
    case Direction::West: break;
    }
    return w_west[i];
}

double scaled_residual(const GridProblem& problem, const std::vector<double>& x) {
    const auto& k = simd::kernels();
    std::vector<double> r(problem.grid.size, 0.0);
    k.residual(problem.view(), x.data(), r.data());
    return k.max_abs_ratio(r.data(), problem.diag.data(), problem.active.data(), r.size());
}

LinearSolveStats solve_jacobi(const GridProblem& problem, std::vector<double>& x, double tol,
                              std::size_t max_iter) {
    const auto& k = simd::kernels();
    const auto view = problem.view();
    std::vector<double> next = x;
    LinearSolveStats stats;
    double delta = tol + 1.0;
    while (stats.iterations < max_iter) {
        delta = k.jacobi_sweep(view, x.data(), next.data());
        x.swap(next);
        ++stats.iterations;
        if (delta <= tol) break;
    }
    stats.residual = scaled_residual(problem, x);
    stats.converged = stats.residual <= tol;
    return stats;
}

LinearSolveStats solve_conjugate_gradient(const GridProblem& problem, std::vector<double>& x,
                                          double tol, std::size_t max_iter) {
    const auto& k = simd::kernels();
    const auto view = problem.view();
    const std::size_t n = problem.grid.size;
    const double* diag = problem.diag.data();
    const double* active = problem.active.data();

    std::vector<double> r(n, 0.0), z(n, 0.0), p(n, 0.0), q(n, 0.0);
    LinearSolveStats stats;

    k.residual(view, x.data(), r.data());
    k.masked_divide(r.data(), diag, active, z.data(), n);
    p = z;
    double rz = k.dot(r.data(), z.data(), n);
    double res = k.max_abs_ratio(r.data(), diag, active, n);
    constexpr std::size_t kReplaceEvery = 256;

    while (res > tol && stats.iterations < max_iter) {
        k.apply(view, p.data(), q.data());
        const double pq = k.dot(p.data(), q.data(), n);
        if (!(pq > 0.0)) break;
        const double alpha = rz / pq;
        k.axpy(alpha, p.data(), x.data(), n);
        k.axpy(-alpha, q.data(), r.data(), n);
        ++stats.iterations;

        res = k.max_abs_ratio(r.data(), diag, active, n);
        if (res <= tol || stats.iterations % kReplaceEvery == 0) {
            // The recurrence drifts from the true residual; swap in the true
            // value and keep the search direction.
            k.residual(view, x.data(), r.data());
            res = k.max_abs_ratio(r.data(), diag, active, n);
            if (res <= tol) break;
        }
        k.masked_divide(r.data(), diag, active, z.data(), n);
        const double rz_next = k.dot(r.data(), z.data(), n);
        if (!(rz_next > 0.0)) break;
        const double beta = rz_next / rz;
        rz = rz_next;
        k.xpby(z.data(), beta, p.data(), n);
    }
    stats.residual = scaled_residual(problem, x);
    stats.converged = stats.residual <= tol;
    return stats;
}

} // namespace gradmaze::detail
