#pragma once

#include "gradmaze/field.hpp"
#include "gradmaze/maze.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace gradmaze {

/// Breadth-first labels from an origin. Walls and unreachable cells are
/// unlabeled; there is no numeric value that stands for "unlabeled".
class DistanceField {
public:
    DistanceField(int width, int height, Coord origin);

    int width() const { return width_; }
    int height() const { return height_; }
    Coord origin() const { return origin_; }

    std::optional<int> at(Coord c) const {
        if (c.row < 0 || c.col < 0 || c.row >= height_ || c.col >= width_) return std::nullopt;
        const std::int32_t v = labels_[index(c)];
        if (v < 0) return std::nullopt;
        return v;
    }
    std::optional<int> label(Coord c) const { return at(c); }
    bool is_labeled(Coord c) const { return at(c).has_value(); }
    int max_label() const { return max_label_; }

    friend bool operator==(const DistanceField&, const DistanceField&) = default;

private:
    friend DistanceField lee_label(const Maze&, Coord);
    std::size_t index(Coord c) const { return static_cast<std::size_t>(c.row) * width_ + c.col; }

    int width_;
    int height_;
    Coord origin_;
    int max_label_ = 0;
    std::vector<std::int32_t> labels_;
};

/// Per-cell direction towards the parent; the root carries no pointer.
class ParentMap {
public:
    ParentMap(int width, int height, Coord root)
        : width_(width), height_(height), root_(root),
          pointers_(static_cast<std::size_t>(width) * height) {}

    int width() const { return width_; }
    int height() const { return height_; }
    Coord root() const { return root_; }
    std::optional<Direction> pointer(Coord c) const {
        if (c.row < 0 || c.col < 0 || c.row >= height_ || c.col >= width_) return std::nullopt;
        return pointers_[index(c)];
    }
    void set_pointer(Coord c, std::optional<Direction> d) { pointers_[index(c)] = d; }
    std::size_t pointer_count() const;

private:
    std::size_t index(Coord c) const { return static_cast<std::size_t>(c.row) * width_ + c.col; }

    int width_;
    int height_;
    Coord root_;
    std::vector<std::optional<Direction>> pointers_;
};

DistanceField lee_label(const Maze& maze, Coord origin);

/// Descends the labels from source to the field origin, N, E, S, W first.
Path lee_trace(const Maze& maze, const DistanceField& field, Coord source);

ParentMap spanning_tree(const Maze& maze, const DistanceField& field);

inline constexpr std::size_t kDefaultEnumerationCap = 81;
inline constexpr std::size_t kDefaultEnumerationPathLimit = 1'000'000;

/// Every simple source-to-destination path, by exhaustive depth-first search.
/// Test oracle; refuses mazes with more than `cap` cells or more than
/// `path_limit` paths (TooLarge).
std::vector<Path> enumerate_simple_paths(const Maze& maze,
                                         std::size_t cap = kDefaultEnumerationCap,
                                         std::size_t path_limit = kDefaultEnumerationPathLimit);

} // namespace gradmaze
