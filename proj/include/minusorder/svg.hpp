#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "minusorder/conic.hpp"

namespace minusorder {

/// Debug scene: conics drawn as paths, points as circular markers.
struct SvgScene {
    std::vector<Conic2> conics;
    std::vector<Vec2> points;
};

/// Scene JSON: {"conics": [{q11, q12, q22}, ...], "points": [{"x", "y"}, ...]}
/// with both arrays optional.
SvgScene scene_from_json(const nlohmann::json& j);

std::string render_svg(const SvgScene& scene);

}  // namespace minusorder
