#pragma once

#include <string>
#include <vector>

#include "minkoscope/convex_body.hpp"

namespace mink {

/// Collects closed body outlines and open polylines, then renders an SVG with
/// mathematical orientation (y up) and a viewBox padded by 5% of the larger
/// extent. Exactly one <path> element is emitted per item.
class SvgScene {
public:
    void add_body(const ConvexBody& body, const std::string& stroke = "#1f77b4",
                  int samples = 512);
    void add_polyline(std::vector<Vec2> points, const std::string& stroke = "#d62728");

    std::string render() const;

private:
    struct Item {
        std::vector<Vec2> points;
        bool closed = false;
        std::string stroke;
    };
    std::vector<Item> items_;
};

}  // namespace mink
