#include "gradmaze/simd/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <limits>

// Compiled with -mavx2 only (no -mfma). Each kernel evaluates exactly the
// scalar expression tree; tails fall back to the same scalar formula.

namespace gradmaze::simd {
namespace {

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline __m256d active_mask(const double* active, std::size_t i) {
    return _mm256_cmp_pd(_mm256_loadu_pd(active + i), _mm256_setzero_pd(), _CMP_NEQ_OQ);
}

inline __m256d neighbor_sum(const StencilView& s, const double* x, std::size_t i) {
    const __m256d n = _mm256_mul_pd(_mm256_loadu_pd(s.w_north + i), _mm256_loadu_pd(x + i - s.stride));
    const __m256d e = _mm256_mul_pd(_mm256_loadu_pd(s.w_east + i), _mm256_loadu_pd(x + i + 1));
    const __m256d so = _mm256_mul_pd(_mm256_loadu_pd(s.w_south + i), _mm256_loadu_pd(x + i + s.stride));
    const __m256d w = _mm256_mul_pd(_mm256_loadu_pd(s.w_west + i), _mm256_loadu_pd(x + i - 1));
    return _mm256_add_pd(_mm256_add_pd(_mm256_add_pd(n, e), so), w);
}

inline double neighbor_sum1(const StencilView& s, const double* x, std::size_t i) {
    return ((s.w_north[i] * x[i - s.stride] + s.w_east[i] * x[i + 1]) +
            s.w_south[i] * x[i + s.stride]) +
           s.w_west[i] * x[i - 1];
}

inline double hmax(__m256d v) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    double m = lanes[0];
    for (int k = 1; k < 4; ++k) m = lanes[k] > m ? lanes[k] : m;
    return m;
}

double jacobi_sweep(const StencilView& s, const double* x, double* out) {
    __m256d vmax = _mm256_setzero_pd();
    std::size_t i = s.begin;
    for (; i + 4 <= s.end; i += 4) {
        const __m256d m = active_mask(s.active, i);
        const __m256d xi = _mm256_loadu_pd(x + i);
        const __m256d y = _mm256_div_pd(_mm256_add_pd(neighbor_sum(s, x, i), _mm256_loadu_pd(s.rhs + i)),
                                        _mm256_loadu_pd(s.diag + i));
        const __m256d delta = _mm256_and_pd(m, abs_pd(_mm256_sub_pd(y, xi)));
        vmax = _mm256_max_pd(vmax, delta);
        _mm256_storeu_pd(out + i, _mm256_blendv_pd(xi, y, m));
    }
    double max_delta = hmax(vmax);
    for (; i < s.end; ++i) {
        if (s.active[i] != 0.0) {
            const double y = (neighbor_sum1(s, x, i) + s.rhs[i]) / s.diag[i];
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
    std::size_t i = s.begin;
    for (; i + 4 <= s.end; i += 4) {
        const __m256d m = active_mask(s.active, i);
        const __m256d v = _mm256_sub_pd(_mm256_add_pd(neighbor_sum(s, x, i), _mm256_loadu_pd(s.rhs + i)),
                                        _mm256_mul_pd(_mm256_loadu_pd(s.diag + i), _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(r + i, _mm256_and_pd(m, v));
    }
    for (; i < s.end; ++i)
        r[i] = s.active[i] != 0.0 ? (neighbor_sum1(s, x, i) + s.rhs[i]) - s.diag[i] * x[i] : 0.0;
}

void apply(const StencilView& s, const double* p, double* q) {
    std::size_t i = s.begin;
    for (; i + 4 <= s.end; i += 4) {
        const __m256d m = active_mask(s.active, i);
        const __m256d v = _mm256_sub_pd(_mm256_mul_pd(_mm256_loadu_pd(s.diag + i), _mm256_loadu_pd(p + i)),
                                        neighbor_sum(s, p, i));
        _mm256_storeu_pd(q + i, _mm256_and_pd(m, v));
    }
    for (; i < s.end; ++i)
        q[i] = s.active[i] != 0.0 ? s.diag[i] * p[i] - neighbor_sum1(s, p, i) : 0.0;
}

double diffusion_step(const StencilView& s, double keep, const double* x, double* out) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const __m256d vkeep = _mm256_set1_pd(keep);
    const __m256d quarter = _mm256_set1_pd(0.25);
    const __m256d vinf = _mm256_set1_pd(inf);
    const __m256d zero = _mm256_setzero_pd();
    __m256d vmax = zero;
    std::size_t i = s.begin;
    for (; i + 4 <= s.end; i += 4) {
        const __m256d m = active_mask(s.active, i);
        const __m256d xi = _mm256_loadu_pd(x + i);
        const __m256d lap = _mm256_sub_pd(neighbor_sum(s, x, i), _mm256_mul_pd(_mm256_loadu_pd(s.diag + i), xi));
        const __m256d y = _mm256_mul_pd(vkeep, _mm256_add_pd(xi, _mm256_mul_pd(quarter, lap)));
        const __m256d is_zero = _mm256_cmp_pd(y, zero, _CMP_EQ_OQ);
        const __m256d rel = _mm256_blendv_pd(_mm256_div_pd(abs_pd(_mm256_sub_pd(y, xi)), y), vinf, is_zero);
        vmax = _mm256_max_pd(vmax, _mm256_and_pd(m, rel));
        _mm256_storeu_pd(out + i, _mm256_blendv_pd(xi, y, m));
    }
    double max_rel = hmax(vmax);
    for (; i < s.end; ++i) {
        if (s.active[i] != 0.0) {
            const double y = keep * (x[i] + 0.25 * (neighbor_sum1(s, x, i) - s.diag[i] * x[i]));
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
    __m256d vacc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        vacc = _mm256_add_pd(vacc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    alignas(32) double acc[4];
    _mm256_store_pd(acc, vacc);
    for (std::size_t lane = 0; i < n; ++i, ++lane) acc[lane] += a[i] * b[i];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(va, _mm256_loadu_pd(x + i))));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void xpby(const double* x, double beta, double* y, std::size_t n) {
    const __m256d vb = _mm256_set1_pd(beta);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(x + i), _mm256_mul_pd(vb, _mm256_loadu_pd(y + i))));
    for (; i < n; ++i) y[i] = x[i] + beta * y[i];
}

void masked_divide(const double* num, const double* den, const double* active, double* out,
                   std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d m = active_mask(active, i);
        // Inactive lanes may divide by zero; the mask discards them.
        const __m256d q = _mm256_div_pd(_mm256_loadu_pd(num + i), _mm256_loadu_pd(den + i));
        _mm256_storeu_pd(out + i, _mm256_and_pd(m, q));
    }
    for (; i < n; ++i) out[i] = active[i] != 0.0 ? num[i] / den[i] : 0.0;
}

double max_abs_ratio(const double* num, const double* den, const double* active, std::size_t n) {
    __m256d vmax = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d m = active_mask(active, i);
        const __m256d q = abs_pd(_mm256_div_pd(_mm256_loadu_pd(num + i), _mm256_loadu_pd(den + i)));
        vmax = _mm256_max_pd(vmax, _mm256_and_pd(m, q));
    }
    double m = hmax(vmax);
    for (; i < n; ++i) {
        if (active[i] == 0.0) continue;
        const double v = std::fabs(num[i] / den[i]);
        m = v > m ? v : m;
    }
    return m;
}

std::int64_t ca_step(const CaView& v, const std::int32_t* in, std::int32_t* out,
                     std::int32_t* arrival, std::int32_t* direction, std::int32_t time) {
    const __m256i zero = _mm256_setzero_si256();
    const __m256i one = _mm256_set1_epi32(1);
    const __m256i thr_minus_one = _mm256_set1_epi32(v.threshold - 1);
    const __m256i last = _mm256_set1_epi32(v.refractory + 1);
    const __m256i vtime = _mm256_set1_epi32(time);
    std::int64_t excited = 0;
    std::size_t i = v.begin;
    for (; i + 8 <= v.end; i += 8) {
        auto load = [](const std::int32_t* p) {
            return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
        };
        const __m256i st = load(in + i);
        const __m256i en = _mm256_cmpeq_epi32(load(in + i - v.stride), one);
        const __m256i ee = _mm256_cmpeq_epi32(load(in + i + 1), one);
        const __m256i es = _mm256_cmpeq_epi32(load(in + i + v.stride), one);
        const __m256i ew = _mm256_cmpeq_epi32(load(in + i - 1), one);
        // Comparison masks are -1, so the negated sum is the excited count.
        const __m256i count = _mm256_sub_epi32(
            zero, _mm256_add_epi32(_mm256_add_epi32(_mm256_add_epi32(en, ee), es), ew));
        const __m256i resting = _mm256_cmpeq_epi32(st, zero);
        const __m256i fires = _mm256_and_si256(resting, _mm256_cmpgt_epi32(count, thr_minus_one));

        const __m256i bumped = _mm256_add_epi32(st, one);
        const __m256i wrapped = _mm256_andnot_si256(_mm256_cmpgt_epi32(bumped, last), bumped);
        const __m256i positive = _mm256_cmpgt_epi32(st, zero);
        __m256i next = _mm256_blendv_epi8(st, wrapped, positive);
        next = _mm256_blendv_epi8(next, one, fires);

        const __m256i arr = load(arrival + i);
        const __m256i first = _mm256_and_si256(fires, _mm256_cmpgt_epi32(zero, arr));
        __m256i dir = _mm256_set1_epi32(3);
        dir = _mm256_blendv_epi8(dir, _mm256_set1_epi32(2), es);
        dir = _mm256_blendv_epi8(dir, _mm256_set1_epi32(1), ee);
        dir = _mm256_blendv_epi8(dir, zero, en);
        const __m256i old_dir = load(direction + i);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(arrival + i), _mm256_blendv_epi8(arr, vtime, first));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(direction + i), _mm256_blendv_epi8(old_dir, dir, first));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), next);

        const int bits = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(next, one)));
        excited += __builtin_popcount(static_cast<unsigned>(bits));
    }
    const std::int32_t last1 = v.refractory + 1;
    for (; i < v.end; ++i) {
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
            next = st + 1 > last1 ? 0 : st + 1;
        }
        out[i] = next;
        excited += next == 1;
    }
    return excited;
}

} // namespace

const KernelTable& avx2_kernels() {
    static const KernelTable table{
        jacobi_sweep, residual, apply,         diffusion_step, dot,
        axpy,         xpby,     masked_divide, max_abs_ratio,  ca_step,
    };
    return table;
}

} // namespace gradmaze::simd
