#pragma once

#include "gradmaze/maze.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace gradmaze {

/// Ordered sequence of adjacent channel cells. length() counts moves.
struct Path {
    std::vector<Coord> cells;

    std::size_t length() const { return cells.empty() ? 0 : cells.size() - 1; }
    bool empty() const { return cells.empty(); }
    Coord front() const { return cells.front(); }
    Coord back() const { return cells.back(); }

    friend bool operator==(const Path&, const Path&) = default;
};

enum class FieldKind { Potential, Current, Conductivity, Concentration };

std::string_view to_string(FieldKind kind);

/// Real value per cell; walls and cells outside the solved component carry no value.
class ScalarField {
public:
    ScalarField(int width, int height, FieldKind kind)
        : width_(width), height_(height), kind_(kind),
          values_(static_cast<std::size_t>(width) * height, 0.0),
          defined_(static_cast<std::size_t>(width) * height, false) {}

    int width() const { return width_; }
    int height() const { return height_; }
    FieldKind kind() const { return kind_; }

    std::optional<double> at(Coord c) const {
        if (c.row < 0 || c.col < 0 || c.row >= height_ || c.col >= width_) return std::nullopt;
        const std::size_t i = index(c);
        if (!defined_[i]) return std::nullopt;
        return values_[i];
    }
    bool has_value(Coord c) const { return at(c).has_value(); }
    void set(Coord c, double v) {
        values_[index(c)] = v;
        defined_[index(c)] = true;
    }
    void clear(Coord c) {
        values_[index(c)] = 0.0;
        defined_[index(c)] = false;
    }

    friend bool operator==(const ScalarField&, const ScalarField&) = default;

private:
    std::size_t index(Coord c) const { return static_cast<std::size_t>(c.row) * width_ + c.col; }

    int width_;
    int height_;
    FieldKind kind_;
    std::vector<double> values_;
    std::vector<bool> defined_;
};

struct SolveDiagnostics {
    std::size_t iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
};

} // namespace gradmaze
