#pragma once

// Shared tracing kernels. Every engine that reads a path out of a field goes
// through greedy_trace or follow_pointers, so tie-breaking is identical
// across engines and paths can be compared cell for cell.

#include "gradmaze/error.hpp"
#include "gradmaze/field.hpp"
#include "gradmaze/maze.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace gradmaze {

enum class TraceMode { AscendToMax, DescendToMin };

template <class F>
concept FieldLookup = requires(const F& f, Coord c) {
    { f.at(c).has_value() } -> std::convertible_to<bool>;
    { *f.at(c) < *f.at(c) } -> std::convertible_to<bool>;
};

template <class P>
concept PointerSource = requires(const P& p, Coord c) {
    { p.pointer(c) } -> std::same_as<std::optional<Direction>>;
    { p.root() } -> std::same_as<Coord>;
    { p.width() } -> std::convertible_to<int>;
    { p.height() } -> std::convertible_to<int>;
};

/// Walks from start to goal, each step moving to the neighbour with the
/// extremal value under `mode`, provided it strictly improves on the current
/// cell. Ties keep the earliest neighbour in N, E, S, W order.
template <FieldLookup F>
Path greedy_trace(const F& field, const Maze& maze, Coord start, Coord goal, TraceMode mode,
                  std::size_t max_steps) {
    if (!maze.is_channel(start) || !maze.is_channel(goal))
        throw Error(ErrorKind::WallQuery, "trace endpoints must be channel cells");
    auto current_value = field.at(start);
    if (!current_value) throw Error(ErrorKind::Unreachable, "start cell carries no field value");

    auto improves = [mode](const auto& candidate, const auto& reference) {
        return mode == TraceMode::DescendToMin ? candidate < reference : reference < candidate;
    };

    Path path;
    path.cells.push_back(start);
    Coord current = start;
    std::size_t steps = 0;
    while (current != goal) {
        if (steps == max_steps)
            throw Error(ErrorKind::StepBudgetExceeded,
                        "goal not reached within " + std::to_string(max_steps) + " steps");
        std::optional<Coord> best;
        auto best_value = *current_value;
        for (const Neighbor& n : maze.channel_neighbors(current)) {
            const auto v = field.at(n.cell);
            if (!v) continue;
            if (improves(*v, best_value)) {
                best = n.cell;
                best_value = *v;
            }
        }
        if (!best)
            throw Error(ErrorKind::LocalExtremum,
                        "no strictly improving neighbour at (" + std::to_string(current.row) +
                            "," + std::to_string(current.col) + ")");
        current = *best;
        current_value = best_value;
        path.cells.push_back(current);
        ++steps;
    }
    return path;
}

/// Follows stored parent directions from start to the structure's root.
/// The step budget equals the cell count, so a cycle cannot loop forever.
template <PointerSource P>
Path follow_pointers(const P& pointers, Coord start) {
    const auto budget = static_cast<std::size_t>(pointers.width()) *
                        static_cast<std::size_t>(pointers.height());
    Path path;
    path.cells.push_back(start);
    Coord current = start;
    const Coord root = pointers.root();
    while (current != root) {
        if (path.cells.size() > budget)
            throw Error(ErrorKind::CycleDetected, "pointer chain longer than the cell count");
        const auto dir = pointers.pointer(current);
        if (!dir)
            throw Error(ErrorKind::Unreachable,
                        "no pointer at (" + std::to_string(current.row) + "," +
                            std::to_string(current.col) + ")");
        current = step(current, *dir);
        if (current.row < 0 || current.col < 0 || current.row >= pointers.height() ||
            current.col >= pointers.width())
            throw Error(ErrorKind::PathOutsideMaze, "pointer leaves the grid");
        path.cells.push_back(current);
    }
    return path;
}

} // namespace gradmaze
