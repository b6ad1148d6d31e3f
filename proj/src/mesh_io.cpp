#include "meshcurv/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <string_view>
#include <vector>

#include "meshcurv/errors.hpp"
#include "meshcurv/num_format.hpp"

namespace meshcurv {

namespace {

struct Line {
    int number;  // 1-based
    std::vector<std::string_view> tokens;
};

/// Splits the input into content lines: '#' starts a comment, blank lines
/// vanish, CRLF is tolerated. The backing string must outlive the views.
std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) {
            if (pos == text.size()) break;
            end = text.size();
        }
        ++number;
        std::string_view raw(text.data() + pos, end - pos);
        pos = end + 1;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
            if (j > i) line.tokens.push_back(raw.substr(i, j - i));
            i = j;
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

double parse_double(std::string_view token, int line) {
    double value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw SyntaxError(line, "expected a number, got '" + std::string(token) + "'");
    return value;
}

long parse_int(std::string_view token, int line) {
    long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw SyntaxError(line, "expected an integer, got '" + std::string(token) + "'");
    return value;
}

std::string slurp(std::istream& in) {
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TriMesh parse_off(const std::string& text) {
    const std::vector<Line> lines = tokenize(text);
    const int eof_line = lines.empty() ? 1 : lines.back().number + 1;
    std::size_t cursor = 0;
    auto next = [&](const char* what) -> const Line& {
        if (cursor >= lines.size()) throw CountMismatch(eof_line, std::string("file ended, expected ") + what);
        return lines[cursor++];
    };

    const Line& header = next("OFF header");
    if (header.tokens.size() != 1 || header.tokens[0] != "OFF")
        throw SyntaxError(header.number, "expected OFF header");

    const Line& counts = next("counts line");
    if (counts.tokens.size() != 3) throw SyntaxError(counts.number, "expected 'n_v n_F n_e'");
    const long n_v = parse_int(counts.tokens[0], counts.number);
    const long n_f = parse_int(counts.tokens[1], counts.number);
    parse_int(counts.tokens[2], counts.number);  // edge count, ignored
    if (n_v < 0 || n_f < 0) throw SyntaxError(counts.number, "negative count");

    MatrixX3<double> vertices(n_v, 3);
    for (long v = 0; v < n_v; ++v) {
        const Line& line = next("vertex line");
        if (line.tokens.size() != 3) throw SyntaxError(line.number, "expected 3 coordinates");
        for (int c = 0; c < 3; ++c) vertices(v, c) = parse_double(line.tokens[static_cast<std::size_t>(c)], line.number);
    }

    MatrixX3i faces(n_f, 3);
    for (long f = 0; f < n_f; ++f) {
        const Line& line = next("face line");
        const long arity = parse_int(line.tokens[0], line.number);
        if (arity != 3)
            throw NonTriangleFace(line.number, "face with " + std::to_string(arity) + " corners");
        if (line.tokens.size() != 4) throw SyntaxError(line.number, "expected '3 i j k'");
        for (int c = 0; c < 3; ++c)
            faces(f, c) = static_cast<int>(parse_int(line.tokens[static_cast<std::size_t>(c + 1)], line.number));
    }

    if (cursor != lines.size())
        throw CountMismatch(lines[cursor].number, "content after the declared " + std::to_string(n_f) + " faces");
    return TriMesh(std::move(vertices), std::move(faces));
}

TriMesh parse_off(std::istream& in) {
    const std::string text = slurp(in);
    return parse_off(text);
}

TriMesh parse_obj(const std::string& text) {
    std::vector<Eigen::RowVector3d> positions;
    std::vector<Eigen::RowVector3i> faces;

    for (const Line& line : tokenize(text)) {
        const std::string_view head = line.tokens[0];
        if (head == "v") {
            if (line.tokens.size() != 4) throw SyntaxError(line.number, "expected 'v x y z'");
            positions.emplace_back(parse_double(line.tokens[1], line.number),
                                   parse_double(line.tokens[2], line.number),
                                   parse_double(line.tokens[3], line.number));
        } else if (head == "f") {
            if (line.tokens.size() != 4)
                throw NonTriangleFace(line.number,
                                      "face with " + std::to_string(line.tokens.size() - 1) + " corners");
            Eigen::RowVector3i face;
            for (int c = 0; c < 3; ++c) {
                std::string_view token = line.tokens[static_cast<std::size_t>(c + 1)];
                if (const auto slash = token.find('/'); slash != std::string_view::npos)
                    token = token.substr(0, slash);  // drop /vt/vn
                const long raw = parse_int(token, line.number);
                long resolved;  // 0-based
                if (raw > 0) {
                    resolved = raw - 1;
                } else if (raw < 0) {
                    resolved = static_cast<long>(positions.size()) + raw;
                } else {
                    throw IndexOutOfRange("line " + std::to_string(line.number) +
                                          ": OBJ vertex indices are 1-based, got 0");
                }
                if (resolved < 0 || resolved >= static_cast<long>(positions.size()))
                    throw IndexOutOfRange("line " + std::to_string(line.number) + ": vertex index " +
                                          std::to_string(raw) + " out of range (" +
                                          std::to_string(positions.size()) + " vertices so far)");
                face[c] = static_cast<int>(resolved);
            }
            faces.push_back(face);
        }
        // Any other directive (vn, vt, o, g, s, usemtl, ...) is skipped.
    }

    MatrixX3<double> vertices(static_cast<Eigen::Index>(positions.size()), 3);
    for (std::size_t i = 0; i < positions.size(); ++i) vertices.row(static_cast<Eigen::Index>(i)) = positions[i];
    MatrixX3i face_matrix(static_cast<Eigen::Index>(faces.size()), 3);
    for (std::size_t i = 0; i < faces.size(); ++i) face_matrix.row(static_cast<Eigen::Index>(i)) = faces[i];
    return TriMesh(std::move(vertices), std::move(face_matrix));
}

TriMesh parse_obj(std::istream& in) {
    const std::string text = slurp(in);
    return parse_obj(text);
}

std::string write_off(const TriMesh& mesh) {
    std::string out = "OFF\n";
    out += std::to_string(mesh.num_vertices()) + " " + std::to_string(mesh.num_faces()) + " 0\n";
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        out += format_double17(mesh.vertices()(v, 0)) + " " + format_double17(mesh.vertices()(v, 1)) +
               " " + format_double17(mesh.vertices()(v, 2)) + "\n";
    }
    for (int f = 0; f < mesh.num_faces(); ++f) {
        out += "3 " + std::to_string(mesh.faces()(f, 0)) + " " + std::to_string(mesh.faces()(f, 1)) +
               " " + std::to_string(mesh.faces()(f, 2)) + "\n";
    }
    return out;
}

TriMesh load_mesh(const std::string& path) {
    std::string ext;
    if (const auto dot = path.rfind('.'); dot != std::string::npos) ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    if (ext == "off") return parse_off(in);
    if (ext == "obj") return parse_obj(in);
    throw Error("unknown mesh format '." + ext + "' (expected .off or .obj)");
}

}  // namespace meshcurv
