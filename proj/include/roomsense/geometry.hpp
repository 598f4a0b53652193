#pragma once

#include <cmath>
#include <optional>
#include <span>

namespace roomsense {

using RoomId = int; // small positive labels: 1, 2, 3, ...

struct Point2D {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(Point2D a, Point2D b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Axis-aligned rectangle, closed on the min edges and open on the max edges,
// so adjacent rooms sharing a wall partition the boundary unambiguously.
struct Rect {
    Point2D min;
    Point2D max;

    bool valid() const { return min.x < max.x && min.y < max.y; }

    bool contains(Point2D p) const {
        return p.x >= min.x && p.x < max.x && p.y >= min.y && p.y < max.y;
    }

    bool overlaps(const Rect& other) const {
        return min.x < other.max.x && other.min.x < max.x &&
               min.y < other.max.y && other.min.y < max.y;
    }
};

struct Room {
    RoomId id = 0;
    Rect bounds;
};

inline std::optional<RoomId> room_of(std::span<const Room> rooms, Point2D p) {
    for (const Room& room : rooms) {
        if (room.bounds.contains(p)) return room.id;
    }
    return std::nullopt;
}

} // namespace roomsense
