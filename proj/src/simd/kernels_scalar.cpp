#include "gradmaze/simd/kernels.hpp"

#include <cmath>
#include <limits>

namespace gradmaze::simd {
namespace {

inline double neighbor_sum(const StencilView& s, const double* x, std::size_t i) {
    return ((s.w_north[i] * x[i - s.stride] + s.w_east[i] * x[i + 1]) +
            s.w_south[i] * x[i + s.stride]) +
           s.w_west[i] * x[i - 1];
}

double jacobi_sweep(const StencilView& s, const double* x, double* out) {
    double max_delta = 0.0;
    for (std::size_t i = s.begin; i < s.end; ++i) {
        if (s.active[i] != 0.0) {
            const double y = (neighbor_sum(s, x, i) + s.rhs[i]) / s.diag[i];
            const double delta = std::fabs(y - x[i]);
            max_delta = delta > max_delta ? delta : max_delta;
            out[i] = y;
        } else {
            out[i] = x[i];
        }
    }
    return max_delta;
}

void residual(const StencilView& s, const double* x, double* r) {
    for (std::size_t i = s.begin; i < s.end; ++i)
        r[i] = s.active[i] != 0.0 ? (neighbor_sum(s, x, i) + s.rhs[i]) - s.diag[i] * x[i] : 0.0;
}

void apply(const StencilView& s, const double* p, double* q) {
    for (std::size_t i = s.begin; i < s.end; ++i)
        q[i] = s.active[i] != 0.0 ? s.diag[i] * p[i] - neighbor_sum(s, p, i) : 0.0;
}

double diffusion_step(const StencilView& s, double keep, const double* x, double* out) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    double max_rel = 0.0;
    for (std::size_t i = s.begin; i < s.end; ++i) {
        if (s.active[i] != 0.0) {
            const double y = keep * (x[i] + 0.25 * (neighbor_sum(s, x, i) - s.diag[i] * x[i]));
            const double rel = y == 0.0 ? inf : std::fabs(y - x[i]) / y;
            max_rel = rel > max_rel ? rel : max_rel;
            out[i] = y;
        } else {
            out[i] = x[i];
        }
    }
    return max_rel;
}

double dot(const double* a, const double* b, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc[0] += a[i] * b[i];
        acc[1] += a[i + 1] * b[i + 1];
        acc[2] += a[i + 2] * b[i + 2];
        acc[3] += a[i + 3] * b[i + 3];
    }
    for (std::size_t lane = 0; i < n; ++i, ++lane) acc[lane] += a[i] * b[i];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void xpby(const double* x, double beta, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + beta * y[i];
}

void masked_divide(const double* num, const double* den, const double* active, double* out,
                   std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = active[i] != 0.0 ? num[i] / den[i] : 0.0;
}

double max_abs_ratio(const double* num, const double* den, const double* active, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (active[i] == 0.0) continue;
        const double v = std::fabs(num[i] / den[i]);
        m = v > m ? v : m;
    }
    return m;
}

std::int64_t ca_step(const CaView& v, const std::int32_t* in, std::int32_t* out,
                     std::int32_t* arrival, std::int32_t* direction, std::int32_t time) {
    std::int64_t excited = 0;
    const std::int32_t last = v.refractory + 1;
    for (std::size_t i = v.begin; i < v.end; ++i) {
        const std::int32_t st = in[i];
        std::int32_t next;
        if (st < 0) {
            next = st;
        } else if (st == 0) {
            const std::int32_t n = in[i - v.stride] == 1;
            const std::int32_t e = in[i + 1] == 1;
            const std::int32_t s = in[i + v.stride] == 1;
            const std::int32_t w = in[i - 1] == 1;
            if (n + e + s + w >= v.threshold) {
                next = 1;
                if (arrival[i] < 0) {
                    arrival[i] = time;
                    direction[i] = n ? 0 : e ? 1 : s ? 2 : 3;
                }
            } else {
                next = 0;
            }
        } else {
            next = st + 1 > last ? 0 : st + 1;
        }
        out[i] = next;
        excited += next == 1;
    }
    return excited;
}

} // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{
        jacobi_sweep, residual, apply,         diffusion_step, dot,
        axpy,         xpby,     masked_divide, max_abs_ratio,  ca_step,
    };
    return table;
}

} // namespace gradmaze::simd
