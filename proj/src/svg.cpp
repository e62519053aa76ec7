#include "minusorder/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace minusorder {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

SvgScene scene_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("scene: expected a JSON object");
    SvgScene scene;
    if (j.contains("conics")) {
        if (!j["conics"].is_array()) throw ParseError("scene: \"conics\" must be an array");
        for (const auto& c : j["conics"]) scene.conics.push_back(conic_from_json(c));
    }
    if (j.contains("points")) {
        if (!j["points"].is_array()) throw ParseError("scene: \"points\" must be an array");
        for (const auto& p : j["points"]) {
            if (!p.is_object() || !p.contains("x") || !p.contains("y"))
                throw ParseError("scene: points need x and y");
            scene.points.push_back({p["x"].get<double>(), p["y"].get<double>()});
        }
    }
    return scene;
}

std::string render_svg(const SvgScene& scene) {
    double extent = 1.0;
    for (const Conic2& q : scene.conics)
        extent = std::max(extent, 1.0 / std::sqrt(q.eigenvalues()[0]));
    for (const Vec2& p : scene.points)
        extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
    extent *= 1.1;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(-extent) << ' '
        << num(-extent) << ' ' << num(2.0 * extent) << ' ' << num(2.0 * extent)
        << "\">\n";
    // Flip y so the scene reads in the usual mathematical orientation.
    out << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke=\"black\" stroke-width=\""
        << num(extent / 200.0) << "\">\n";

    for (const Conic2& q : scene.conics) {
        // Semi-axes and tilt from the spectral frame: the axis of length
        // 1/sqrt(lambda) lies along the eigenvector of lambda.
        const DenseMatrix m = q.matrix();
        const double half_tr = 0.5 * (m(0, 0) + m(1, 1));
        const double disc = std::hypot(0.5 * (m(0, 0) - m(1, 1)), m(0, 1));
        const double l_small = half_tr - disc;
        const double l_big = half_tr + disc;
        double vx = 1.0, vy = 0.0;
        if (std::abs(m(0, 1)) > 1e-15 * (std::abs(m(0, 0)) + std::abs(m(1, 1)))) {
            vx = m(0, 1);
            vy = l_small - m(0, 0);
            const double len = std::hypot(vx, vy);
            vx /= len;
            vy /= len;
        } else if (m(0, 0) > m(1, 1)) {
            vx = 0.0;
            vy = 1.0;
        }
        const double ra = 1.0 / std::sqrt(l_small);  // along (vx, vy)
        const double rb = 1.0 / std::sqrt(l_big);
        const double tilt_deg = std::atan2(vy, vx) * 180.0 / 3.141592653589793;
        const double px = vx * ra, py = vy * ra;
        out << "<path d=\"M " << num(px) << ' ' << num(py) << " A " << num(ra) << ' '
            << num(rb) << ' ' << num(tilt_deg) << " 1 0 " << num(-px) << ' ' << num(-py)
            << " A " << num(ra) << ' ' << num(rb) << ' ' << num(tilt_deg) << " 1 0 "
            << num(px) << ' ' << num(py) << " Z\"/>\n";
    }

    for (const Vec2& p : scene.points)
        out << "<circle cx=\"" << num(p.x) << "\" cy=\"" << num(p.y) << "\" r=\""
            << num(extent / 80.0) << "\" fill=\"black\"/>\n";

    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace minusorder
