#include "narrowpass/scenes.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "narrowpass/error.hpp"
#include "narrowpass/format.hpp"

namespace narrowpass {

namespace {

Polygon rect(double x0, double x1, double y0, double y1) {
  return Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

AlignedBox box(double x0, double x1, double y0, double y1, double z0, double z1) {
  return AlignedBox{{{x0, x1}, {y0, y1}, {z0, z1}}};
}

AlignedBox region2(double x0, double x1, double y0, double y1) {
  return AlignedBox{{{x0, x1}, {y0, y1}}};
}

// Arena for the unit scenes: 100 units per side.
constexpr double kArena = 100.0;

// bar2d: a wall of thickness 40 across the middle of the arena, split into
// two bars by a vertical slot of width w centred at x = 50.
constexpr double kBarLo = 30.0;
constexpr double kBarHi = 70.0;

Scene make_bar2d(double w) {
  const double c = 0.5 * w;
  Scene s;
  s.name = "bar2d";
  s.dims = 2;
  s.bounds = {{0, kArena}, {0, kArena}};
  s.polygons = {rect(0, 50 - c, kBarLo, kBarHi), rect(50 + c, kArena, kBarLo, kBarHi)};
  s.passage = region2(50 - c, 50 + c, kBarLo, kBarHi);
  return s;
}

// joint2d: a wall y in [40, 60] pierced by a dog-leg corridor of width w:
// up at x = 40, across at y = 50, up again at x = 60. The wall splits into
// two L-shaped assemblies of two rectangles each.
Scene make_joint2d(double w) {
  const double c = 0.5 * w;
  Scene s;
  s.name = "joint2d";
  s.dims = 2;
  s.bounds = {{0, kArena}, {0, kArena}};
  s.polygons = {
      rect(0, 40 - c, 40, 60),        // upper-left assembly: column
      rect(40 - c, 60 - c, 50 + c, 60),  // upper-left assembly: arm
      rect(60 + c, kArena, 40, 60),   // lower-right assembly: column
      rect(40 + c, 60 + c, 40, 50 - c),  // lower-right assembly: arm
  };
  s.passage = region2(40 - c, 60 + c, 40, 60);
  return s;
}

// joint3d: a slab y in [40, 60] filling the cube, pierced by a square tube of
// side w that follows the joint2d dog-leg in the plane z = 50.
Scene make_joint3d(double w) {
  const double c = 0.5 * w;
  const double z0 = 50 - c;
  const double z1 = 50 + c;
  Scene s;
  s.name = "joint3d";
  s.dims = 3;
  s.bounds = {{0, kArena}, {0, kArena}, {0, kArena}};
  s.boxes = {
      box(0, kArena, 40, 60, 0, z0),
      box(0, kArena, 40, 60, z1, kArena),
      box(0, 40 - c, 40, 60, z0, z1),
      box(40 - c, 60 - c, 50 + c, 60, z0, z1),
      box(60 + c, kArena, 40, 60, z0, z1),
      box(40 + c, 60 + c, 40, 50 - c, z0, z1),
  };
  s.passage = AlignedBox{{{40 - c, 60 + c}, {40, 60}, {z0, z1}}};
  return s;
}

// teeth3d: two interleaved combs, extruded through the full height. The lower
// comb (base y in [30, 40], teeth up to y = 50) leaves an opening of width w
// at the left wall; the upper comb (teeth down to y = 40 + w, base above)
// leaves one at the right wall. Every gap between the combs is w wide.
constexpr double kToothWidth = 10.0;
constexpr double kToothHeight = 10.0;
constexpr double kCombBase = 10.0;

Scene make_teeth3d(double w) {
  const double lower_base_lo = 30.0;
  const double teeth_lo = lower_base_lo + kCombBase;      // 40
  const double lower_tip = teeth_lo + kToothHeight;       // 50
  const double upper_tip = teeth_lo + w;
  const double upper_base_lo = lower_tip + w;
  const double upper_base_hi = upper_base_lo + kCombBase;
  const double period = 2.0 * (kToothWidth + w);

  Scene s;
  s.name = "teeth3d";
  s.dims = 3;
  s.bounds = {{0, kArena}, {0, kArena}, {0, kArena}};
  s.boxes.push_back(box(w, kArena, lower_base_lo, teeth_lo, 0, kArena));
  s.boxes.push_back(box(0, kArena - w, upper_base_lo, upper_base_hi, 0, kArena));

  double channel_end = w;
  for (int k = 0;; ++k) {
    const double upper_x = w + k * period;
    const double lower_x = 2 * w + kToothWidth + k * period;
    if (upper_x + kToothWidth > kArena - 2 * w) break;
    s.boxes.push_back(box(upper_x, upper_x + kToothWidth, upper_tip, upper_base_lo, 0, kArena));
    channel_end = upper_x + kToothWidth + w;
    if (lower_x + kToothWidth > kArena - 2 * w) break;
    s.boxes.push_back(box(lower_x, lower_x + kToothWidth, teeth_lo, lower_tip, 0, kArena));
    channel_end = lower_x + kToothWidth + w;
  }
  s.passage = AlignedBox{{{0, channel_end}, {teeth_lo, upper_base_lo}, {0, kArena}}};
  return s;
}

// tunnel3d: a 20 x 5 x 5 tunnel closed by a bulkhead x in [8, 12] with a
// square through-corridor of side w on the tunnel axis.
Scene make_tunnel3d(double w) {
  const double c = 0.5 * w;
  const double m = 2.5;
  Scene s;
  s.name = "tunnel3d";
  s.dims = 3;
  s.bounds = {{0, 20}, {0, 5}, {0, 5}};
  s.boxes = {
      box(8, 12, 0, 5, 0, m - c),
      box(8, 12, 0, 5, m + c, 5),
      box(8, 12, 0, m - c, m - c, m + c),
      box(8, 12, m + c, 5, m - c, m + c),
  };
  s.passage = AlignedBox{{{8, 12}, {m - c, m + c}, {m - c, m + c}}};
  return s;
}

// maze3d: a 20 x 20 x 3 floor split by a wall y in [9.5, 10.5] that has one
// square window of side w centred at (x, z) = (10, 1.5), plus three internal
// walls that force detours on both sides.
Scene make_maze3d(double w) {
  const double c = 0.5 * w;
  const double zc = 1.5;
  Scene s;
  s.name = "maze3d";
  s.dims = 3;
  s.bounds = {{0, 20}, {0, 20}, {0, 3}};
  s.boxes = {
      box(0, 10 - c, 9.5, 10.5, 0, 3),
      box(10 + c, 20, 9.5, 10.5, 0, 3),
      box(10 - c, 10 + c, 9.5, 10.5, 0, zc - c),
      box(10 - c, 10 + c, 9.5, 10.5, zc + c, 3),
      box(5, 6, 0, 7, 0, 3),
      box(13, 14, 3, 9.5, 0, 3),
      box(6, 20, 14, 15, 0, 3),
  };
  s.passage = AlignedBox{{{10 - c, 10 + c}, {9.5, 10.5}, {zc - c, zc + c}}};
  return s;
}

struct BuiltinEntry {
  const char* name;
  Interval widths;
  double default_width;
  Scene (*make)(double);
  WorkspaceQuery query;
};

const std::vector<BuiltinEntry>& catalog() {
  static const std::vector<BuiltinEntry> entries = {
      {"bar2d", {0, kArena}, 5.0, make_bar2d, {{50, 10}, {50, 90}}},
      {"joint2d", {0, 20}, 5.0, make_joint2d, {{50, 10}, {50, 90}}},
      {"joint3d", {0, 20}, 5.0, make_joint3d, {{50, 10, 50}, {50, 90, 50}}},
      {"teeth3d", {0, 20}, 5.0, make_teeth3d, {{50, 10, 50}, {50, 90, 50}}},
      {"tunnel3d", {0, 5}, 1.0, make_tunnel3d, {{2, 2.5, 2.5}, {18, 2.5, 2.5}}},
      {"maze3d", {0, 3}, 1.0, make_maze3d, {{2, 2, 1.5}, {18, 18, 1.5}}},
  };
  return entries;
}

const BuiltinEntry& lookup(std::string_view name) {
  for (const auto& e : catalog()) {
    if (name == e.name) return e;
  }
  throw ParameterError("unknown builtin scene '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Text format

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (double v : values) {
    out += ' ';
    out += format_double(v);
  }
  return out;
}

std::vector<double> flatten(const std::vector<Interval>& axes) {
  std::vector<double> out;
  for (const auto& a : axes) {
    out.push_back(a.lo);
    out.push_back(a.hi);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& e : catalog()) n.emplace_back(e.name);
    return n;
  }();
  return names;
}

double default_passage_width(std::string_view name) {
  return lookup(name).default_width;
}

Interval passage_width_range(std::string_view name) { return lookup(name).widths; }

Scene builtin(std::string_view name, double passage_width) {
  const auto& e = lookup(name);
  if (!(passage_width > e.widths.lo && passage_width < e.widths.hi)) {
    throw ParameterError("passage width " + format_double(passage_width) +
                         " outside (" + format_double(e.widths.lo) + ", " +
                         format_double(e.widths.hi) + ") for " + e.name);
  }
  Scene s = e.make(passage_width);
  s.validate();
  return s;
}

WorkspaceQuery default_query(std::string_view name) { return lookup(name).query; }

std::string serialize_scene(const Scene& scene) {
  std::ostringstream out;
  out << "# narrow-pass scene\n";
  out << "name " << (scene.name.empty() ? "custom" : scene.name) << '\n';
  out << "dims " << scene.dims << '\n';
  out << "bounds" << join_numbers(flatten(scene.bounds)) << '\n';
  for (const auto& poly : scene.polygons) {
    std::vector<double> xy;
    for (const auto& v : poly.vertices) {
      xy.push_back(v.x);
      xy.push_back(v.y);
    }
    out << "polygon" << join_numbers(xy) << '\n';
  }
  for (const auto& b : scene.boxes) out << "box" << join_numbers(flatten(b.axes)) << '\n';
  if (scene.passage) {
    out << "passage" << join_numbers(flatten(scene.passage->axes)) << '\n';
  }
  return out.str();
}

Scene load_scene(std::string_view text) {
  Scene scene;
  scene.name = "custom";
  bool have_dims = false;
  bool have_bounds = false;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = eol + 1;
    ++line_no;

    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const Token& key = tokens.front();
    const std::size_t n_args = tokens.size() - 1;

    auto numbers = [&]() {
      std::vector<double> v;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        auto d = parse_double(tokens[i].text);
        if (!d) {
          throw ParseError(line_no, tokens[i].column,
                           "expected a number, got '" + std::string(tokens[i].text) + "'");
        }
        v.push_back(*d);
      }
      return v;
    };
    auto require_dims = [&]() {
      if (!have_dims) {
        throw ParseError(line_no, key.column,
                         "key 'dims' must appear before '" + std::string(key.text) + "'");
      }
    };
    auto intervals = [&](const std::vector<double>& v) {
      std::vector<Interval> axes;
      for (std::size_t i = 0; i + 1 < v.size(); i += 2) axes.push_back({v[i], v[i + 1]});
      return axes;
    };
    auto expect_count = [&](std::size_t want) {
      if (n_args != want) {
        throw ParseError(line_no, key.column,
                         "'" + std::string(key.text) + "' takes " + std::to_string(want) +
                             " values, got " + std::to_string(n_args));
      }
    };

    if (key.text == "name") {
      expect_count(1);
      scene.name = std::string(tokens[1].text);
    } else if (key.text == "dims") {
      if (have_dims) throw ParseError(line_no, key.column, "duplicate key 'dims'");
      expect_count(1);
      if (tokens[1].text != "2" && tokens[1].text != "3") {
        throw ParseError(line_no, tokens[1].column, "dims must be 2 or 3");
      }
      scene.dims = tokens[1].text == "2" ? 2 : 3;
      have_dims = true;
    } else if (key.text == "bounds") {
      require_dims();
      if (have_bounds) throw ParseError(line_no, key.column, "duplicate key 'bounds'");
      expect_count(2 * scene.dims);
      scene.bounds = intervals(numbers());
      for (const auto& b : scene.bounds) {
        if (!(b.lo < b.hi)) throw ParseError(line_no, key.column, "bounds require lo < hi");
      }
      have_bounds = true;
    } else if (key.text == "polygon") {
      require_dims();
      if (scene.dims != 2) {
        throw ParseError(line_no, key.column, "polygon obstacles need dims 2");
      }
      if (n_args % 2 != 0) {
        throw ParseError(line_no, key.column, "polygon needs x y pairs");
      }
      const auto v = numbers();
      Polygon poly;
      for (std::size_t i = 0; i + 1 < v.size(); i += 2) poly.vertices.push_back({v[i], v[i + 1]});
      try {
        validate_polygon(poly);
      } catch (const ParameterError& e) {
        throw ParseError(line_no, key.column, e.what());
      }
      scene.polygons.push_back(std::move(poly));
    } else if (key.text == "box") {
      require_dims();
      if (scene.dims != 3) throw ParseError(line_no, key.column, "box obstacles need dims 3");
      expect_count(6);
      AlignedBox b{intervals(numbers())};
      try {
        validate_obstacle_box(b);
      } catch (const ParameterError& e) {
        throw ParseError(line_no, key.column, e.what());
      }
      scene.boxes.push_back(std::move(b));
    } else if (key.text == "passage") {
      require_dims();
      if (scene.passage) throw ParseError(line_no, key.column, "duplicate key 'passage'");
      expect_count(2 * scene.dims);
      scene.passage = AlignedBox{intervals(numbers())};
    } else {
      throw ParseError(line_no, key.column, "unknown key '" + std::string(key.text) + "'");
    }
  }

  if (!have_dims) throw ParseError(line_no, 1, "missing required key 'dims'");
  if (!have_bounds) throw ParseError(line_no, 1, "missing required key 'bounds'");
  try {
    scene.validate();
  } catch (const ParameterError& e) {
    throw ParseError(line_no, 1, e.what());
  }
  return scene;
}

}  // namespace narrowpass
