#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "narrowpass/geometry.hpp"

namespace narrowpass {

// Names accepted by builtin(): bar2d, joint2d, joint3d, teeth3d, tunnel3d,
// maze3d.
const std::vector<std::string>& builtin_names();

// Default passage width when none is given on the command line.
double default_passage_width(std::string_view name);

// Open interval of passage widths a builtin can be built with.
Interval passage_width_range(std::string_view name);

// Deterministic benchmark scene. Throws ParameterError for an unknown name or
// a width outside passage_width_range(name).
Scene builtin(std::string_view name, double passage_width);

// Start/goal positions (workspace coordinates) on opposite sides of the
// builtin's passage.
struct WorkspaceQuery {
  std::vector<double> start;
  std::vector<double> goal;
};
WorkspaceQuery default_query(std::string_view name);

// Scene text format, one entry per line:
//   name <word>
//   dims <2|3>
//   bounds <lo hi> per axis
//   polygon <x y> per vertex, counter-clockwise, convex   (2D)
//   box <lo hi> per axis                                  (3D)
//   passage <lo hi> per axis
// '#' starts a comment. `dims` must precede the geometry entries.
std::string serialize_scene(const Scene& scene);

// Throws ParseError carrying line/column for syntax errors and invariant
// violations.
Scene load_scene(std::string_view text);

}  // namespace narrowpass
