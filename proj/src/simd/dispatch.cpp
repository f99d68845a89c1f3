#include "gradmaze/error.hpp"
#include "gradmaze/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace gradmaze::simd {

std::string_view to_string(Level level) {
    switch (level) {
    case Level::Scalar: return "scalar";
    case Level::Avx2: return "avx2";
    }
    return "unknown";
}

bool level_supported(Level level) {
    switch (level) {
    case Level::Scalar: return true;
    case Level::Avx2:
#if defined(GRADMAZE_HAVE_AVX2)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    }
    return false;
}

Level detected_level() {
    if (const char* env = std::getenv("GRADMAZE_SIMD")) {
        const std::string want(env);
        if (want == "scalar") return Level::Scalar;
        if (want == "avx2" && level_supported(Level::Avx2)) return Level::Avx2;
    }
    return level_supported(Level::Avx2) ? Level::Avx2 : Level::Scalar;
}

namespace {
std::atomic<Level>& level_slot() {
    static std::atomic<Level> slot{detected_level()};
    return slot;
}
} // namespace

Level active_level() { return level_slot().load(std::memory_order_relaxed); }

void set_active_level(Level level) {
    if (!level_supported(level))
        throw Error(ErrorKind::InvalidArgument,
                    "SIMD level " + std::string(to_string(level)) + " is not supported on this CPU");
    level_slot().store(level, std::memory_order_relaxed);
}

const KernelTable& kernels(Level level) {
#if defined(GRADMAZE_HAVE_AVX2)
    if (level == Level::Avx2) return avx2_kernels();
#endif
    (void)level;
    return scalar_kernels();
}

const KernelTable& kernels() { return kernels(active_level()); }

} // namespace gradmaze::simd
