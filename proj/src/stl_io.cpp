#include "amcomp/stl_io.hpp"

#include "amcomp/errors.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace amcomp {

namespace {

constexpr double kWeldTol = 1e-6; // mm
constexpr char kBinaryHeader[80] = "amcomp binary STL";

std::vector<char> read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::vector<char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return data;
}

float read_f32(const char* p) {
    // little-endian IEEE-754 single
    std::uint32_t u = static_cast<std::uint8_t>(p[0]) | static_cast<std::uint8_t>(p[1]) << 8 |
                      static_cast<std::uint8_t>(p[2]) << 16 |
                      static_cast<std::uint8_t>(p[3]) << 24;
    float f;
    std::memcpy(&f, &u, 4);
    return f;
}

void write_f32(std::string& out, float f) {
    std::uint32_t u;
    std::memcpy(&u, &f, 4);
    out.push_back(static_cast<char>(u & 0xff));
    out.push_back(static_cast<char>((u >> 8) & 0xff));
    out.push_back(static_cast<char>((u >> 16) & 0xff));
    out.push_back(static_cast<char>((u >> 24) & 0xff));
}

bool looks_ascii(const std::vector<char>& data) {
    std::size_t i = 0;
    while (i < data.size() && std::isspace(static_cast<unsigned char>(data[i]))) ++i;
    if (data.size() - i < 5 || std::strncmp(data.data() + i, "solid", 5) != 0) return false;
    // Binary files may also start with "solid"; require an ascii keyword early on.
    std::size_t probe = std::min<std::size_t>(data.size(), 512);
    std::string head(data.data(), data.data() + probe);
    return head.find("facet") != std::string::npos || head.find("endsolid") != std::string::npos;
}

std::vector<Vec3> parse_binary(const std::vector<char>& data, std::size_t* facets_read) {
    if (data.size() < 84)
        throw ParseError("binary STL shorter than 84-byte preamble", data.size());
    std::uint32_t count = static_cast<std::uint8_t>(data[80]) |
                          static_cast<std::uint8_t>(data[81]) << 8 |
                          static_cast<std::uint8_t>(data[82]) << 16 |
                          static_cast<std::uint8_t>(data[83]) << 24;
    std::size_t expected = 84 + static_cast<std::size_t>(count) * 50;
    if (data.size() != expected)
        throw ParseError("binary STL facet count mismatch: header declares " +
                             std::to_string(count) + " facets (" + std::to_string(expected) +
                             " bytes) but file has " + std::to_string(data.size()) + " bytes",
                         80);

    std::vector<Vec3> corners;
    corners.reserve(static_cast<std::size_t>(count) * 3);
    for (std::uint32_t f = 0; f < count; ++f) {
        const char* rec = data.data() + 84 + static_cast<std::size_t>(f) * 50;
        for (int v = 0; v < 3; ++v) {
            const char* p = rec + 12 + v * 12; // skip facet normal
            corners.emplace_back(read_f32(p), read_f32(p + 4), read_f32(p + 8));
        }
    }
    *facets_read = count;
    return corners;
}

struct AsciiCursor {
    const std::vector<char>& data;
    std::size_t pos = 0;
    std::size_t line = 1;

    void skip_ws() {
        while (pos < data.size() && std::isspace(static_cast<unsigned char>(data[pos]))) {
            if (data[pos] == '\n') ++line;
            ++pos;
        }
    }
    std::string next_token() {
        skip_ws();
        std::size_t start = pos;
        while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
        return std::string(data.data() + start, data.data() + pos);
    }
    void expect(const char* word) {
        std::size_t at = pos;
        std::string tok = next_token();
        if (tok != word)
            throw ParseError("expected '" + std::string(word) + "', got '" + tok + "'", at, line);
    }
    double number() {
        std::size_t at = pos;
        std::string tok = next_token();
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (tok.empty() || end != tok.c_str() + tok.size())
            throw ParseError("expected a number, got '" + tok + "'", at, line);
        return v;
    }
};

std::vector<Vec3> parse_ascii(const std::vector<char>& data, std::size_t* facets_read) {
    AsciiCursor cur{data};
    cur.expect("solid");
    // optional name up to end of line
    while (cur.pos < data.size() && data[cur.pos] != '\n') ++cur.pos;

    std::vector<Vec3> corners;
    std::size_t facets = 0;
    for (;;) {
        cur.skip_ws();
        std::size_t at = cur.pos;
        std::string tok = cur.next_token();
        if (tok == "endsolid") break;
        if (tok.empty()) throw ParseError("unexpected end of file before 'endsolid'", at, cur.line);
        if (tok != "facet")
            throw ParseError("expected 'facet' or 'endsolid', got '" + tok + "'", at, cur.line);
        cur.expect("normal");
        cur.number();
        cur.number();
        cur.number();
        cur.expect("outer");
        cur.expect("loop");
        for (int v = 0; v < 3; ++v) {
            cur.expect("vertex");
            double x = cur.number(), y = cur.number(), z = cur.number();
            corners.emplace_back(x, y, z);
        }
        cur.expect("endloop");
        cur.expect("endfacet");
        ++facets;
    }
    *facets_read = facets;
    return corners;
}

} // namespace

StlLoadResult load_stl(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw IoError("file not found: '" + path.string() + "'");
    std::vector<char> data = read_all(path);

    StlLoadResult result;
    std::vector<Vec3> corners;
    if (looks_ascii(data)) {
        result.format = StlFormat::ascii;
        corners = parse_ascii(data, &result.facets_read);
    } else {
        result.format = StlFormat::binary;
        corners = parse_binary(data, &result.facets_read);
    }

    result.mesh = mesh_from_soup(corners, kWeldTol, &result.dropped_degenerate);
    if (result.mesh.empty())
        throw EmptyGeometry("'" + path.string() + "' contains no valid facets");
    return result;
}

void save_stl(const TriangleMesh& mesh, const std::filesystem::path& path, StlFormat format) {
    if (mesh.empty()) throw EmptyGeometry("refusing to write an empty mesh");

    std::string out;
    if (format == StlFormat::binary) {
        out.reserve(84 + mesh.triangle_count() * 50);
        out.append(kBinaryHeader, kBinaryHeader + 80);
        std::uint32_t count = static_cast<std::uint32_t>(mesh.triangle_count());
        for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((count >> (8 * k)) & 0xff));
        for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
            Vec3 n = mesh.triangle_normal(t);
            for (int k = 0; k < 3; ++k) write_f32(out, static_cast<float>(n[k]));
            for (int v = 0; v < 3; ++v)
                for (int k = 0; k < 3; ++k)
                    write_f32(out, static_cast<float>(mesh.corner(t, v)[k]));
            out.push_back(0); // attribute byte count
            out.push_back(0);
        }
    } else {
        std::ostringstream os;
        os << "solid amcomp\n";
        char buf[256];
        for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
            Vec3 n = mesh.triangle_normal(t);
            std::snprintf(buf, sizeof buf, "  facet normal %.9g %.9g %.9g\n",
                          static_cast<float>(n.x()), static_cast<float>(n.y()),
                          static_cast<float>(n.z()));
            os << buf << "    outer loop\n";
            for (int v = 0; v < 3; ++v) {
                const Vec3& p = mesh.corner(t, v);
                std::snprintf(buf, sizeof buf, "      vertex %.9g %.9g %.9g\n",
                              static_cast<float>(p.x()), static_cast<float>(p.y()),
                              static_cast<float>(p.z()));
                os << buf;
            }
            os << "    endloop\n  endfacet\n";
        }
        os << "endsolid amcomp\n";
        out = os.str();
    }

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw IoError("write failed for '" + path.string() + "'");
}

} // namespace amcomp
