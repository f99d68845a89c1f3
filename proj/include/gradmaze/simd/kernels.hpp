#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// on x86-64, an AVX2 version picked at runtime. The two are bit-identical:
// both evaluate the same expression tree in the same order, reductions use
// the same four-lane accumulation layout, and nothing is compiled with FMA
// contraction. Tests compare them element for element.
//
// All grids are padded: a ring of inactive cells surrounds the maze so that
// the four neighbour offsets (+-1, +-stride) of every cell in [begin, end)
// stay inside the buffer.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace gradmaze::simd {

enum class Level { Scalar, Avx2 };

std::string_view to_string(Level level);

/// Weighted five-point stencil on a padded grid. `active` holds 1.0 for cells
/// that are updated and 0.0 for walls, padding and pinned cells.
struct StencilView {
    std::size_t stride = 0;
    std::size_t begin = 0;
    std::size_t end = 0;
    const double* w_north = nullptr;
    const double* w_east = nullptr;
    const double* w_south = nullptr;
    const double* w_west = nullptr;
    const double* diag = nullptr;
    const double* rhs = nullptr;
    const double* active = nullptr;
};

/// Three-state excitable medium on a padded int32 grid. State encoding:
/// -1 wall, 0 resting, 1 excited, 2..refractory+1 refractory.
struct CaView {
    std::size_t stride = 0;
    std::size_t begin = 0;
    std::size_t end = 0;
    std::int32_t threshold = 1;
    std::int32_t refractory = 1;
};

struct KernelTable {
    /// out = active ? (sum_nbr w*x + rhs) / diag : x. Returns max |out - x| over active cells.
    double (*jacobi_sweep)(const StencilView& s, const double* x, double* out);
    /// r = active ? (sum_nbr w*x + rhs) - diag*x : 0.
    void (*residual)(const StencilView& s, const double* x, double* r);
    /// q = active ? diag*p - sum_nbr w*p : 0.
    void (*apply)(const StencilView& s, const double* p, double* q);
    /// out = active ? x + 0.25*(sum_nbr w*x - diag*x) scaled by keep : x.
    /// Returns max |out - x| / out over active cells (infinity where out is 0).
    double (*diffusion_step)(const StencilView& s, double keep, const double* x, double* out);

    double (*dot)(const double* a, const double* b, std::size_t n);
    /// y += alpha * x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    /// y = x + beta * y
    void (*xpby)(const double* x, double beta, double* y, std::size_t n);
    /// out = active ? num / den : 0
    void (*masked_divide)(const double* num, const double* den, const double* active,
                          double* out, std::size_t n);
    /// max over active of |num / den|
    double (*max_abs_ratio)(const double* num, const double* den, const double* active,
                            std::size_t n);

    /// One synchronous excitable-medium step from `in` to `out`. Cells that
    /// become excited for the first time get arrival = time and the direction
    /// (0..3 = N, E, S, W) of their first excited neighbour. Returns the
    /// number of excited cells in `out`.
    std::int64_t (*ca_step)(const CaView& v, const std::int32_t* in, std::int32_t* out,
                            std::int32_t* arrival, std::int32_t* direction, std::int32_t time);
};

const KernelTable& scalar_kernels();
#if defined(GRADMAZE_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

bool level_supported(Level level);

/// Highest supported level, unless GRADMAZE_SIMD=scalar|avx2 says otherwise.
Level detected_level();

Level active_level();
/// Throws gradmaze::Error(InvalidArgument) if the level is not supported here.
void set_active_level(Level level);

const KernelTable& kernels();
const KernelTable& kernels(Level level);

/// Restores the previous level on destruction.
class ScopedLevel {
public:
    explicit ScopedLevel(Level level) : previous_(active_level()) { set_active_level(level); }
    ~ScopedLevel() { set_active_level(previous_); }
    ScopedLevel(const ScopedLevel&) = delete;
    ScopedLevel& operator=(const ScopedLevel&) = delete;

private:
    Level previous_;
};

} // namespace gradmaze::simd
