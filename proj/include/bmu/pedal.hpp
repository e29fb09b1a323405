#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bmu/plane.hpp"
#include "bmu/unital.hpp"

namespace bmu::pedal {

using gf::Elem;
using gf::Tower;
using plane::Line;
using plane::Point;
using unital::Unital;

// intersection-size histogram of the feet against all q^4+q^2+1 lines
struct SecantProfile {
  std::map<int, long long> count;

  long long lines_of_size(int s) const {
    auto it = count.find(s);
    return it == count.end() ? 0 : it->second;
  }
  int max_size() const { return count.empty() ? 0 : count.rbegin()->first; }
  bool is_arc() const { return max_size() <= 2; }
  bool sizes_within_0124() const {
    for (auto& [s, n] : count)
      if (s != 0 && s != 1 && s != 2 && s != 4) return false;
    return true;
  }
  bool is_class_0124() const {
    return sizes_within_0124() && lines_of_size(0) && lines_of_size(1) && lines_of_size(2) &&
           lines_of_size(4);
  }
  bool is_collinear(int q) const { return lines_of_size(q + 1) > 0; }
};

struct PedalSet {
  Point base;
  std::vector<Point> feet;     // q+1 points of U
  std::vector<Line> tangents;  // the q+1 tangent lines through base
};

// feet of P by scanning the q^2+1 lines through P for tangency; P not on U
PedalSet pedal_brute(const Unital& U, const Point& P);

// the paper's canonical off-unital base points
enum class CanonicalBase { R1, R2, R };  // R1, R2 odd q; R even q
Point canonical_point(const Tower& tw, CanonicalBase b);

// feet of R1/R2/R from the closed-form condition equations, by scanning
// x over GF(q^2); must agree with pedal_brute as a set
PedalSet feet_closed_form(const Unital& U, CanonicalBase b);

// every line carrying >= 2 feet, with its feet count
std::vector<std::pair<Line, int>> multi_secants(const Tower& tw, const std::vector<Point>& feet);
using MultiSecants = std::vector<std::pair<Line, int>>;

SecantProfile classify(const Unital& U, const PedalSet& P);               // pair-span kernel
SecantProfile classify_by_line_scan(const Unital& U, const PedalSet& P);  // reference
SecantProfile classify_with(const Unital& U, const PedalSet& P, const MultiSecants& ms);

struct FourSecantReport {
  std::vector<Line> four_secants;
  bool all_through_vertex = true;
  int count = 0;
  // |line cap feet| histogram over the lines through the vertex meeting the feet
  std::map<int, int> vertex_census;
};

// odd q; vertex is the detected pencil vertex (U_inf for canonical bases)
FourSecantReport four_secant_report(const Unital& U, const PedalSet& P, const Point& vertex);
FourSecantReport four_secant_report_with(const Unital& U, const PedalSet& P, const Point& vertex,
                                         const MultiSecants& ms);

struct PencilResult {
  enum class Status { found, collinear, none };
  Status status = Status::none;
  plane::BaerPencil pencil;  // when found
  Line line;                 // when collinear
};

// Searches for a Baer pencil with vertex on l_inf containing the feet, with
// base a Baer subline through T_inf on the line x = 0. Vertices are tried
// U_inf first, then remaining l_inf points in point order. Collinear feet are
// reported as the degenerate single-line case.
PencilResult detect_baer_pencil(const Unital& U, const PedalSet& P);
PencilResult detect_baer_pencil_with(const Unital& U, const PedalSet& P, const MultiSecants& ms);

// exhaustive 2-coloring search for a partition of the feet into two arcs
std::optional<std::vector<int>> two_arc_partition(const Tower& tw, const PedalSet& P);

}  // namespace bmu::pedal
