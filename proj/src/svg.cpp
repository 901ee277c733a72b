#include "minkoscope/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "minkoscope/errors.hpp"

namespace mink {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8g", v);
    return buf;
}

}  // namespace

void SvgScene::add_body(const ConvexBody& body, const std::string& stroke, int samples) {
    if (samples < 3) throw invalid_argument("body outline needs at least 3 samples");
    Item item;
    item.stroke = stroke;
    if (body.variant() == Variant::Polygon) {
        item.points = body.vertices();
        item.closed = item.points.size() >= 3;
    } else {
        item.points.reserve(samples);
        for (int k = 0; k < samples; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / samples;
            item.points.push_back(body.support_point(dir_of_angle(theta)));
        }
        item.closed = true;
    }
    items_.push_back(std::move(item));
}

void SvgScene::add_polyline(std::vector<Vec2> points, const std::string& stroke) {
    if (points.empty()) throw invalid_argument("polyline needs at least one point");
    items_.push_back({std::move(points), false, stroke});
}

std::string SvgScene::render() const {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const Item& item : items_) {
        for (const Vec2& p : item.points) {
            if (first) {
                xmin = xmax = p.x;
                ymin = ymax = p.y;
                first = false;
            } else {
                xmin = std::min(xmin, p.x);
                xmax = std::max(xmax, p.x);
                ymin = std::min(ymin, p.y);
                ymax = std::max(ymax, p.y);
            }
        }
    }
    const double pad = 0.05 * std::max({xmax - xmin, ymax - ymin, 1e-9});
    xmin -= pad;
    xmax += pad;
    ymin -= pad;
    ymax += pad;

    // y-up: mirror the y coordinate and shift the viewBox accordingly
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(xmin) << ' '
        << num(-ymax) << ' ' << num(xmax - xmin) << ' ' << num(ymax - ymin) << "\">\n";
    const double width = 0.004 * std::max(xmax - xmin, ymax - ymin);
    for (const Item& item : items_) {
        out << "  <path fill=\"none\" stroke=\"" << item.stroke << "\" stroke-width=\""
            << num(width) << "\" d=\"";
        for (size_t i = 0; i < item.points.size(); ++i) {
            out << (i == 0 ? 'M' : 'L') << num(item.points[i].x) << ' '
                << num(-item.points[i].y);
        }
        if (item.closed) out << 'Z';
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace mink
