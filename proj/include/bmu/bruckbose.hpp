#pragma once

#include <array>
#include <map>
#include <vector>

#include "bmu/pedal.hpp"
#include "bmu/plane.hpp"
#include "bmu/unital.hpp"

namespace bmu::bb {

using gf::Elem;
using gf::Tower;
using plane::Point;
using unital::Unital;

// homogeneous 5-tuple over GF(q), last nonzero coordinate scaled to 1
struct BBPoint {
  std::array<Elem, 5> c{0, 0, 0, 0, 0};
  friend bool operator==(const BBPoint&, const BBPoint&) = default;
  friend auto operator<=>(const BBPoint&, const BBPoint&) = default;
};

BBPoint normalize5(const Tower& tw, std::array<Elem, 5> v);

// affine (x, y, 1) -> (x0, x1, y0, y1, 1) in the tower basis {1, tau}
BBPoint to_bb(const Tower& tw, const Point& P);
Point from_bb(const Tower& tw, const BBPoint& B);

// Sigma_inf is the hyperplane with last coordinate 0
inline bool on_sigma_inf(const BBPoint& B) { return B.c[4] == 0; }

struct SpreadLine {
  std::array<BBPoint, 2> span;
  std::vector<BBPoint> points;  // q+1, sorted
};

// the spread line corresponding to a point of l_inf
SpreadLine spread_of_point(const Tower& tw, const Point& L);
// all q^2+1 spread lines, in l_inf point order
std::vector<SpreadLine> full_spread(const Tower& tw);

// rank of a set of 5-tuples over GF(q)
int rank5(const Tower& tw, const std::vector<std::array<Elem, 5>>& rows);

// true iff the spread is closed under reguli (checked over all line triples)
bool spread_is_regular(const Tower& tw);

struct ThreeSpaceReport {
  bool contained = false;              // K_Q spans projective dimension <= 3
  int rank = 0;                        // matrix rank of the K_Q images
  std::vector<BBPoint> space_basis;    // up to 4 independent image points
  std::vector<BBPoint> sigma_trace;    // basis of span cap Sigma_inf
};

// K_Q = images of the feet; the Baer-pencil claim puts them in a 3-space
ThreeSpaceReport pedal_pencil_3space(const Tower& tw, const pedal::PedalSet& P);

struct PlaneProfile {
  int max_intersection = 0;
  bool all_collinear = false;
  std::map<int, long long> histogram;  // over spanned planes (rank-3 triples)
};

// plane-intersection profile of K_Q via the triple-span scan
PlaneProfile plane_profile_KQ(const Tower& tw, const pedal::PedalSet& P);

struct ConeFit {
  bool unique_quadric = false;
  bool locus_matches = false;      // zero locus = image(U \ T_inf) u spread(T_inf)
  bool vertex_on_spread = false;   // unique singular point, on spread(T_inf)
  bool base_is_cap = false;        // hyperplane section off the vertex is an ovoid
  std::array<Elem, 15> quadric{};  // coefficients, monomial order x_i x_j (i <= j)
};

// fits a quadric through the Bruck-Bose image of U and checks it is an
// elliptic cone with vertex on spread(T_inf); intended for q in {3, 4}
ConeFit fit_unital_cone(const Unital& U);

}  // namespace bmu::bb
