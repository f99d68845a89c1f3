#pragma once

// Temporal-gradient engines: delay-weighted signal propagation that stores
// the incoming direction, an excitable-medium cellular automaton with
// isochrones, and pointer read-out of either.

#include "gradmaze/field.hpp"
#include "gradmaze/maze.hpp"
#include "gradmaze/netflow.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gradmaze {

/// Integer delay per cell, paid when a signal enters the cell.
class DelayMap {
public:
    DelayMap(int width, int height, std::int64_t uniform = 1);

    static DelayMap random(const Maze& maze, std::int64_t lo, std::int64_t hi, std::uint64_t seed);

    int width() const { return width_; }
    int height() const { return height_; }
    std::int64_t at(Coord c) const { return delays_[index(c)]; }
    void set(Coord c, std::int64_t delay);
    bool is_uniform() const;

private:
    std::size_t index(Coord c) const { return static_cast<std::size_t>(c.row) * width_ + c.col; }

    int width_;
    int height_;
    std::vector<std::int64_t> delays_;
};

/// First-arrival time per cell plus the direction the winning signal came from.
class ArrivalField {
public:
    ArrivalField(int width, int height, Coord origin);

    int width() const { return width_; }
    int height() const { return height_; }
    Coord origin() const { return origin_; }
    Coord root() const { return origin_; }

    std::optional<std::int64_t> at(Coord c) const;
    std::optional<Direction> pointer(Coord c) const;
    bool is_reached(Coord c) const { return at(c).has_value(); }
    std::int64_t max_arrival() const;

    void set(Coord c, std::int64_t time, std::optional<Direction> from);

    friend bool operator==(const ArrivalField&, const ArrivalField&) = default;

private:
    std::size_t index(Coord c) const { return static_cast<std::size_t>(c.row) * width_ + c.col; }
    bool inside(Coord c) const {
        return c.row >= 0 && c.col >= 0 && c.row < height_ && c.col < width_;
    }

    int width_;
    int height_;
    Coord origin_;
    std::vector<std::int64_t> arrival_; // negative = not reached
    std::vector<std::int8_t> pointer_;  // -1 = none
};

/// Discrete-event propagation: the origin emits at t = 0 and a cell first
/// reached at t forwards the signal; entering cell c costs delay(c).
/// Simultaneous arrivals keep the N, E, S, W-first direction.
ArrivalField weighted_wavefront(const Maze& maze, const DelayMap& delays, Coord origin);

struct CaParams {
    int refractory = 3;
    int threshold = 1;
};

struct CaRun {
    ArrivalField field;
    std::size_t steps = 0;
    std::vector<std::string> frames; ///< filled only when requested
};

/// Resting -> excited (one step) -> refractory (`refractory` steps) -> resting.
/// A resting channel cell fires when at least `threshold` neighbours are
/// excited. Runs until no cell is excited; NotQuiescent after max_steps.
CaRun excitable_ca(const Maze& maze, Coord origin, const CaParams& params, std::size_t max_steps,
                   bool record_frames = false);

/// k-th set holds the cells with arrival in [k*interval, (k+1)*interval).
std::vector<CellSet> isochrones(const ArrivalField& field, std::int64_t interval);

struct GeodesicResult {
    CellSet geodesic;
    Path path;
};

/// Cells where the source-wave and destination-wave arrival times add up to
/// the source-to-destination time, plus the tie-break path through them.
GeodesicResult isochrone_intersection_path(const Maze& maze, const ArrivalField& from_source,
                                           const ArrivalField& from_dest);

/// Follows the stored directions from `start` back to the wave origin.
Path pointer_trace(const ArrivalField& field, Coord start);

} // namespace gradmaze
