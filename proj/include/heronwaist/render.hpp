#pragma once

#include <filesystem>
#include <string>

#include "heronwaist/problem.hpp"

namespace heronwaist {

/// SVG drawing of a planar instance: set outlines, the closed chain, the hub
/// rays and labelled points. Output bytes depend only on the inputs.
/// Throws UnsupportedDimension unless n == 2 and InvalidInput if `u` does
/// not fit `p`.
std::string render_svg(const Problem& p, const Configuration& u);

/// Point and edge table (CSV) usable in any dimension. Rows are
/// `point,<label>,,<space-separated coords>` followed by
/// `edge,<from>,<to>,<weight>` for every chain edge and hub ray.
std::string configuration_table(const Problem& p, const Configuration& u);

/// Writes render_svg(p, u) to `path`. For n != 2 writes
/// configuration_table(p, u) next to it (extension replaced by .csv) and
/// then throws UnsupportedDimension naming the fallback file.
void write_svg(const Problem& p, const Configuration& u, const std::filesystem::path& path);

}  // namespace heronwaist
