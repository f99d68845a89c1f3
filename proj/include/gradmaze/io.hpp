#pragma once

// Text dumps and deterministic renders. Nothing here reads the clock or the
// locale; reals are written as shortest round-trip decimals.

#include "gradmaze/field.hpp"
#include "gradmaze/maze.hpp"
#include "gradmaze/oracle.hpp"
#include "gradmaze/wavefront.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace gradmaze {

std::string format_real(double v);

/// Maze in its ASCII format, '*' on path cells other than S and D.
std::string render_ascii(const Maze& maze, const Path* path = nullptr);

enum class RenderTarget { AsciiOverlay, GrayscaleImage, Vector };

struct MinMax {};
struct FixedRange {
    double lo = 0.0;
    double hi = 1.0;
};

struct RenderSpec {
    RenderTarget target = RenderTarget::GrayscaleImage;
    int scale = 1;
    std::variant<MinMax, FixedRange> normalize = MinMax{};
};

/// Plain PGM ("P2", maxval 255). Walls and cells without a value are 0;
/// values map onto 1..255.
std::string render_field_image(const ScalarField& field, const Maze& maze, const RenderSpec& spec);

/// SVG: wall squares, optional grey heat squares, then the path polyline.
std::string render_vector(const Maze& maze, const Path& path, const ScalarField* field = nullptr,
                          int scale = 10);

template <class F>
ScalarField as_scalar_field(const F& field, FieldKind kind) {
    ScalarField out(field.width(), field.height(), kind);
    for (int r = 0; r < field.height(); ++r)
        for (int c = 0; c < field.width(); ++c)
            if (const auto v = field.at({r, c})) out.set({r, c}, static_cast<double>(*v));
    return out;
}

std::string dump_distance_field(const DistanceField& field);
std::string dump_scalar_field(const ScalarField& field);
std::string dump_arrival_field(const ArrivalField& field);
std::string dump_pointer_grid(const ArrivalField& field);

std::string serialize_path(const Path& path);
Path parse_path(std::string_view text);

/// Adjacency, no repeats, channel-only. Does not look at the endpoints.
bool is_valid_path(const Maze& maze, const Path& path);

} // namespace gradmaze
