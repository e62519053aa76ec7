#include "minusorder/matrix_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace minusorder {

namespace {

std::string location(const std::string& source, std::size_t line) {
    return source + ":" + std::to_string(line);
}

}  // namespace

DenseMatrix read_matrix_text(std::istream& in, const std::string& source_name) {
    std::string header;
    if (!std::getline(in, header))
        throw ParseError(location(source_name, 1) + ": missing \"rows cols\" header");
    std::istringstream hs(header);
    long long rows = -1, cols = -1;
    std::string extra;
    if (!(hs >> rows >> cols) || rows < 0 || cols < 0 || (hs >> extra))
        throw ParseError(location(source_name, 1) + ": header must be \"rows cols\"");

    DenseMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (long long i = 0; i < rows; ++i) {
        std::string line;
        if (!std::getline(in, line))
            throw ParseError(location(source_name, static_cast<std::size_t>(i + 2)) +
                             ": expected " + std::to_string(rows) + " data rows");
        std::istringstream ls(line);
        for (long long j = 0; j < cols; ++j) {
            double v;
            if (!(ls >> v))
                throw ParseError(location(source_name, static_cast<std::size_t>(i + 2)) +
                                 ": ragged row, expected " + std::to_string(cols) + " values");
            if (!std::isfinite(v))
                throw ParseError(location(source_name, static_cast<std::size_t>(i + 2)) +
                                 ": non-finite value");
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
        }
        std::string tail;
        if (ls >> tail)
            throw ParseError(location(source_name, static_cast<std::size_t>(i + 2)) +
                             ": ragged row, extra values");
    }
    return m;
}

DenseMatrix matrix_from_json(const nlohmann::json& j, const std::string& source_name) {
    if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array())
        throw ParseError(source_name + ": expected object with \"rows\" array");
    const auto& rows = j["rows"];
    const std::size_t r = rows.size();
    std::size_t c = 0;
    if (r > 0) {
        if (!rows[0].is_array()) throw ParseError(source_name + ": rows must be arrays");
        c = rows[0].size();
    }
    DenseMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (!rows[i].is_array() || rows[i].size() != c)
            throw ParseError(source_name + ": ragged row " + std::to_string(i));
        for (std::size_t jcol = 0; jcol < c; ++jcol) {
            const auto& cell = rows[i][jcol];
            if (!cell.is_number())
                throw ParseError(source_name + ": non-numeric entry in row " + std::to_string(i));
            const double v = cell.get<double>();
            if (!std::isfinite(v))
                throw ParseError(source_name + ": non-finite value in row " + std::to_string(i));
            m(i, jcol) = v;
        }
    }
    return m;
}

DenseMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    // Sniff: JSON matrices start with '{'.
    int ch = in.peek();
    while (ch != EOF && std::isspace(ch)) {
        in.get();
        ch = in.peek();
    }
    if (ch == '{') {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path + ": invalid JSON (" + e.what() + ")");
        }
        return matrix_from_json(j, path);
    }
    return read_matrix_text(in, path);
}

std::string write_matrix_text(const DenseMatrix& m) {
    std::ostringstream out;
    out << m.rows() << ' ' << m.cols() << '\n';
    char buf[48];
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            out << (j ? " " : "") << buf;
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::ordered_json matrix_to_json(const DenseMatrix& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return nlohmann::ordered_json{{"rows", std::move(rows)}};
}

}  // namespace minusorder
