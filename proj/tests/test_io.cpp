#include <doctest.h>

#include <fstream>
#include <sstream>

#include "minusorder/matrix_io.hpp"
#include "minusorder/svg.hpp"

using namespace minusorder;

namespace {

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

}  // namespace

TEST_CASE("matrix text format round trip") {
    const DenseMatrix m = DenseMatrix::from_rows({{1.5, -2.0, 0.0}, {0.25, 1e-9, 3.0}});
    std::istringstream in(write_matrix_text(m));
    const DenseMatrix back = read_matrix_text(in, "roundtrip");
    CHECK(back.rows() == 2);
    CHECK(back.cols() == 3);
    CHECK(back.approx_equal(m, 0.0));
}

TEST_CASE("matrix text parser: header, ragged rows, and non-finite rejection") {
    std::istringstream missing("");
    CHECK_THROWS_AS(read_matrix_text(missing, "f"), ParseError);

    std::istringstream bad_header("2 x\n1 2\n3 4\n");
    CHECK_THROWS_AS(read_matrix_text(bad_header, "f"), ParseError);

    std::istringstream ragged("2 2\n1 2\n3\n");
    try {
        read_matrix_text(ragged, "file.mat");
        CHECK(false);
    } catch (const ParseError& e) {
        // Message names the file and the offending line.
        CHECK(std::string(e.what()).find("file.mat:3") != std::string::npos);
    }

    std::istringstream extra("1 2\n1 2 3\n");
    CHECK_THROWS_AS(read_matrix_text(extra, "f"), ParseError);

    std::istringstream inf_value("1 1\ninf\n");
    CHECK_THROWS_AS(read_matrix_text(inf_value, "f"), ParseError);
}

TEST_CASE("matrix JSON format round trip and validation") {
    const DenseMatrix m = DenseMatrix::from_rows({{1, 2}, {3, 4}, {5, 6}});
    const DenseMatrix back = matrix_from_json(matrix_to_json(m), "j");
    CHECK(back.approx_equal(m, 0.0));

    CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse("{\"rows\": [[1,2],[3]]}"), "j"),
                    ParseError);
    CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse("{\"cols\": []}"), "j"),
                    ParseError);
    CHECK_THROWS_AS(
        matrix_from_json(nlohmann::json::parse("{\"rows\": [[1, \"x\"]]}"), "j"),
        ParseError);
}

TEST_CASE("read_matrix_file sniffs text versus JSON") {
    {
        std::ofstream out("/tmp/minusorder_t.mat");
        out << "2 2\n1 0\n0 2\n";
    }
    {
        std::ofstream out("/tmp/minusorder_t.json");
        out << "{\"rows\": [[1, 0], [0, 2]]}";
    }
    const DenseMatrix a = read_matrix_file("/tmp/minusorder_t.mat");
    const DenseMatrix b = read_matrix_file("/tmp/minusorder_t.json");
    CHECK(a.approx_equal(b, 0.0));
    CHECK_THROWS_AS(read_matrix_file("/tmp/minusorder_missing_file"), ParseError);
}

TEST_CASE("svg: empty scene renders a valid document") {
    const std::string svg = render_svg(SvgScene{});
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count_occurrences(svg, "<path") == 0);
}

TEST_CASE("svg: one path per conic, one marker per point, deterministic") {
    SvgScene scene;
    scene.conics.push_back(Conic2::unit_circle());
    scene.conics.push_back(Conic2(3.1818181818, -2.1818181818, 3.1818181818));
    scene.points.push_back({0.5, 0.25});
    const std::string svg = render_svg(scene);
    CHECK(count_occurrences(svg, "<path") == 2);
    CHECK(count_occurrences(svg, "<circle") == 1);
    CHECK(svg == render_svg(scene));
}

TEST_CASE("svg: a four-ellipse configuration renders as six paths") {
    const auto cfg = four_ellipse_configuration(0.5, 9.0, 1.3, 3.0);
    SvgScene scene;
    for (const Conic2& image : cfg.images) scene.conics.push_back(image);
    scene.conics.push_back(cfg.touching.conic());
    scene.conics.push_back(Conic2::unit_circle());
    CHECK(count_occurrences(render_svg(scene), "<path") == 6);
}

TEST_CASE("svg scene JSON parsing and rejection") {
    const auto scene = scene_from_json(nlohmann::json::parse(
        R"({"conics": [{"q11": 1.0, "q12": 0.0, "q22": 1.0}], "points": [{"x": 1, "y": 2}]})"));
    CHECK(scene.conics.size() == 1);
    CHECK(scene.points.size() == 1);

    CHECK_THROWS_AS(scene_from_json(nlohmann::json::parse("[1, 2]")), ParseError);
    CHECK_THROWS_AS(scene_from_json(nlohmann::json::parse("{\"conics\": [{}]}")), ParseError);
    CHECK_THROWS_AS(scene_from_json(nlohmann::json::parse("{\"points\": [{\"x\": 1}]}")),
                    ParseError);
}
