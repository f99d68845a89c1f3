#include "gradmaze/wavefront.hpp"

#include "gradmaze/error.hpp"
#include "gradmaze/rng.hpp"
#include "gradmaze/simd/kernels.hpp"
#include "gradmaze/trace.hpp"
#include "grid_problem.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <tuple>

namespace gradmaze {

DelayMap::DelayMap(int width, int height, std::int64_t uniform)
    : width_(width), height_(height), delays_(static_cast<std::size_t>(width) * height, uniform) {
    if (uniform < 1) throw Error(ErrorKind::InvalidArgument, "delays must be at least 1");
}

DelayMap DelayMap::random(const Maze& maze, std::int64_t lo, std::int64_t hi, std::uint64_t seed) {
    if (lo < 1 || hi < lo) throw Error(ErrorKind::InvalidArgument, "delay range must satisfy 1 <= lo <= hi");
    DelayMap map(maze.width(), maze.height());
    Rng rng(seed);
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    for (std::size_t i = 0; i < maze.cell_count(); ++i)
        if (maze.cells()[i] == Cell::Channel)
            map.delays_[i] = lo + static_cast<std::int64_t>(rng.below(span));
    return map;
}

void DelayMap::set(Coord c, std::int64_t delay) {
    if (delay < 1) throw Error(ErrorKind::InvalidArgument, "delays must be at least 1");
    delays_[index(c)] = delay;
}

bool DelayMap::is_uniform() const {
    return std::all_of(delays_.begin(), delays_.end(), [](std::int64_t d) { return d == 1; });
}

ArrivalField::ArrivalField(int width, int height, Coord origin)
    : width_(width), height_(height), origin_(origin),
      arrival_(static_cast<std::size_t>(width) * height, -1),
      pointer_(static_cast<std::size_t>(width) * height, -1) {}

std::optional<std::int64_t> ArrivalField::at(Coord c) const {
    if (!inside(c) || arrival_[index(c)] < 0) return std::nullopt;
    return arrival_[index(c)];
}

std::optional<Direction> ArrivalField::pointer(Coord c) const {
    if (!inside(c) || pointer_[index(c)] < 0) return std::nullopt;
    return static_cast<Direction>(pointer_[index(c)]);
}

std::int64_t ArrivalField::max_arrival() const {
    std::int64_t m = 0;
    for (std::int64_t a : arrival_) m = std::max(m, a);
    return m;
}

void ArrivalField::set(Coord c, std::int64_t time, std::optional<Direction> from) {
    arrival_[index(c)] = time;
    pointer_[index(c)] = from ? static_cast<std::int8_t>(*from) : std::int8_t{-1};
}

ArrivalField weighted_wavefront(const Maze& maze, const DelayMap& delays, Coord origin) {
    if (!maze.is_channel(origin)) throw Error(ErrorKind::WallQuery, "wave origin must be a channel cell");
    if (delays.width() != maze.width() || delays.height() != maze.height())
        throw Error(ErrorKind::InvalidArgument, "delay map and maze dimensions differ");

    constexpr std::int64_t kUnset = -1;
    std::vector<std::int64_t> arrival(maze.cell_count(), kUnset);
    using Event = std::pair<std::int64_t, std::size_t>;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
    arrival[maze.index(origin)] = 0;
    events.emplace(0, maze.index(origin));
    while (!events.empty()) {
        const auto [t, i] = events.top();
        events.pop();
        if (t != arrival[i]) continue;
        for (const Neighbor& n : maze.channel_neighbors(maze.coord(i))) {
            const std::size_t j = maze.index(n.cell);
            const std::int64_t when = t + delays.at(n.cell);
            if (arrival[j] == kUnset || when < arrival[j]) {
                arrival[j] = when;
                events.emplace(when, j);
            }
        }
    }

    // Among the neighbours whose signal lands at the winning time, the
    // N, E, S, W-first one owns the cell.
    ArrivalField field(maze.width(), maze.height(), origin);
    for (std::size_t i = 0; i < maze.cell_count(); ++i) {
        if (arrival[i] == kUnset) continue;
        const Coord c = maze.coord(i);
        std::optional<Direction> from;
        if (c != origin) {
            for (const Neighbor& n : maze.channel_neighbors(c)) {
                const std::int64_t a = arrival[maze.index(n.cell)];
                if (a != kUnset && a + delays.at(c) == arrival[i]) {
                    from = n.dir;
                    break;
                }
            }
        }
        field.set(c, arrival[i], from);
    }
    return field;
}

namespace {

std::string render_frame(const Maze& maze, const detail::PaddedGrid& grid,
                         const std::vector<std::int32_t>& state) {
    std::string out;
    out.reserve(static_cast<std::size_t>(maze.height()) * (maze.width() + 1));
    for (int r = 0; r < maze.height(); ++r) {
        for (int c = 0; c < maze.width(); ++c) {
            const std::int32_t s = state[grid.at({r, c})];
            out.push_back(s < 0 ? '#' : s == 0 ? '.' : s == 1 ? '*' : 'r');
        }
        out.push_back('\n');
    }
    return out;
}

} // namespace

CaRun excitable_ca(const Maze& maze, Coord origin, const CaParams& params, std::size_t max_steps,
                   bool record_frames) {
    if (!maze.is_channel(origin)) throw Error(ErrorKind::WallQuery, "wave origin must be a channel cell");
    if (params.refractory < 1 || params.threshold < 1)
        throw Error(ErrorKind::InvalidArgument, "refractory and threshold must be at least 1");

    const detail::PaddedGrid grid(maze);
    std::vector<std::int32_t> state(grid.size, -1), next(grid.size, -1);
    std::vector<std::int32_t> arrival(grid.size, -1), direction(grid.size, -1);
    for (std::size_t i = 0; i < maze.cell_count(); ++i)
        if (maze.cells()[i] == Cell::Channel) state[grid.at(maze.coord(i))] = 0;
    const std::size_t o = grid.at(origin);
    state[o] = 1;
    arrival[o] = 0;
    next = state;

    const simd::CaView view{grid.stride, grid.begin(), grid.end(), params.threshold,
                            params.refractory};
    const auto& k = simd::kernels();
    CaRun run{ArrivalField(maze.width(), maze.height(), origin), 0, {}};
    if (record_frames) run.frames.push_back(render_frame(maze, grid, state));

    std::int64_t excited = 1;
    while (excited > 0) {
        if (run.steps == max_steps)
            throw Error(ErrorKind::NotQuiescent,
                        "excitation still active after " + std::to_string(max_steps) + " steps");
        ++run.steps;
        excited = k.ca_step(view, state.data(), next.data(), arrival.data(), direction.data(),
                            static_cast<std::int32_t>(run.steps));
        state.swap(next);
        if (record_frames) run.frames.push_back(render_frame(maze, grid, state));
    }

    for (std::size_t i = 0; i < maze.cell_count(); ++i) {
        const Coord c = maze.coord(i);
        const std::size_t g = grid.at(c);
        if (arrival[g] < 0) continue;
        std::optional<Direction> from;
        if (direction[g] >= 0) from = static_cast<Direction>(direction[g]);
        run.field.set(c, arrival[g], from);
    }
    return run;
}

std::vector<CellSet> isochrones(const ArrivalField& field, std::int64_t interval) {
    if (interval < 1) throw Error(ErrorKind::InvalidArgument, "isochrone interval must be positive");
    std::vector<CellSet> bands(static_cast<std::size_t>(field.max_arrival() / interval) + 1);
    for (int r = 0; r < field.height(); ++r)
        for (int c = 0; c < field.width(); ++c)
            if (const auto a = field.at({r, c}))
                bands[static_cast<std::size_t>(*a / interval)].insert({r, c});
    return bands;
}

namespace {

// Destination-wave arrival, visible only on the geodesic set.
struct GeodesicLookup {
    const ArrivalField& from_dest;
    const std::vector<bool>& member;
    int width;

    std::optional<std::int64_t> at(Coord c) const {
        if (c.row < 0 || c.col < 0 || c.row >= from_dest.height() || c.col >= width) return std::nullopt;
        if (!member[static_cast<std::size_t>(c.row) * width + c.col]) return std::nullopt;
        return from_dest.at(c);
    }
};

} // namespace

GeodesicResult isochrone_intersection_path(const Maze& maze, const ArrivalField& from_source,
                                           const ArrivalField& from_dest) {
    if (from_source.origin() != maze.source() || from_dest.origin() != maze.destination())
        throw Error(ErrorKind::InvalidArgument, "wave origins must be the maze source and destination");
    const auto total = from_source.at(maze.destination());
    if (!total) throw Error(ErrorKind::Unreachable, "destination not reached by the source wave");

    GeodesicResult out;
    std::vector<bool> member(maze.cell_count(), false);
    for (std::size_t i = 0; i < maze.cell_count(); ++i) {
        const Coord c = maze.coord(i);
        const auto s = from_source.at(c);
        const auto d = from_dest.at(c);
        if (s && d && *s + *d == *total) {
            member[i] = true;
            out.geodesic.insert(c);
        }
    }
    const GeodesicLookup lookup{from_dest, member, maze.width()};
    out.path = greedy_trace(lookup, maze, maze.source(), maze.destination(), TraceMode::DescendToMin,
                            maze.cell_count());
    return out;
}

Path pointer_trace(const ArrivalField& field, Coord start) {
    if (!field.is_reached(start)) throw Error(ErrorKind::Unreachable, "start was never reached");
    return follow_pointers(field, start);
}

} // namespace gradmaze
