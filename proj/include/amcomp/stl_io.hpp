#pragma once

#include "amcomp/mesh.hpp"

#include <filesystem>
#include <string>

namespace amcomp {

enum class StlFormat { binary, ascii };

struct StlLoadResult {
    TriangleMesh mesh;
    StlFormat format = StlFormat::binary;
    std::size_t facets_read = 0;
    std::size_t dropped_degenerate = 0;
};

/// Loads a binary or ASCII STL file (auto-detected). Vertices are welded at
/// 1e-6 mm and degenerate facets dropped. Throws ParseError on malformed input
/// and EmptyGeometry when no valid facet remains.
StlLoadResult load_stl(const std::filesystem::path& path);

/// Writes a mesh as STL. Binary output uses a fixed 80-byte header and a zero
/// attribute byte count, so save -> load -> save is byte-identical.
void save_stl(const TriangleMesh& mesh, const std::filesystem::path& path,
              StlFormat format = StlFormat::binary);

} // namespace amcomp
