#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bmu/fields.hpp"

namespace bmu::plane {

using gf::Elem;
using gf::Tower;

// Homogeneous triple, normalized so the last nonzero coordinate is 1.
// The same representation serves PG(2,q^2) and the subfield plane PG(2,q)
// (whose points simply have all coordinates in GF(q)).
struct Point {
  std::array<Elem, 3> c{0, 0, 0};
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

struct Line {
  std::array<Elem, 3> c{0, 0, 0};
  friend bool operator==(const Line&, const Line&) = default;
  friend auto operator<=>(const Line&, const Line&) = default;
};

inline std::uint64_t key(const Point& P) {
  return std::uint64_t(P.c[0]) | (std::uint64_t(P.c[1]) << 16) | (std::uint64_t(P.c[2]) << 32);
}
inline std::uint64_t key(const Line& L) {
  return std::uint64_t(L.c[0]) | (std::uint64_t(L.c[1]) << 16) | (std::uint64_t(L.c[2]) << 32);
}

std::array<Elem, 3> normalize(const Tower& tw, std::array<Elem, 3> v);

inline Point make_point(const Tower& tw, Elem x, Elem y, Elem z) {
  return Point{normalize(tw, {x, y, z})};
}
inline Line make_line(const Tower& tw, Elem a, Elem b, Elem c) {
  return Line{normalize(tw, {a, b, c})};
}

inline Point t_infinity() { return Point{{0, 1, 0}}; }
inline Point u_infinity() { return Point{{1, 0, 0}}; }
inline Line line_at_infinity() { return Line{{0, 0, 1}}; }

inline bool incident(const Tower& tw, const Point& P, const Line& L) {
  Elem s = tw.mul(P.c[0], L.c[0]);
  s = tw.add(s, tw.mul(P.c[1], L.c[1]));
  s = tw.add(s, tw.mul(P.c[2], L.c[2]));
  return s == 0;
}

Line line_through(const Tower& tw, const Point& P, const Point& Q);
Point meet(const Tower& tw, const Line& L, const Line& M);

// the q^2+1 lines through P, in a fixed deterministic order
std::vector<Line> lines_through(const Tower& tw, const Point& P);

// two spanning points of L, used by the parametrization helpers
std::array<Point, 2> span_of_line(const Tower& tw, const Line& L);

// visits the q^2+1 points of L as raw (unnormalized) triples
template <class F>
void for_points_on(const Tower& tw, const Line& L, F&& fn) {
  auto [S1, S2] = span_of_line(tw, L);
  for (int t = 0; t < tw.qq; ++t) {
    Elem x = tw.add(tw.mul(S1.c[0], Elem(t)), S2.c[0]);
    Elem y = tw.add(tw.mul(S1.c[1], Elem(t)), S2.c[1]);
    Elem z = tw.add(tw.mul(S1.c[2], Elem(t)), S2.c[2]);
    fn(x, y, z);
  }
  fn(S1.c[0], S1.c[1], S1.c[2]);
}

bool collinear(const Tower& tw, std::span<const Point> pts);

// Dense indexing of PG(2,q^2): affine (x,y,1) -> x*q^2 + y, (x,1,0) -> q^4 + x,
// (1,0,0) -> q^4 + q^2. Lines are indexed by the same rule on dual triples.
struct PlaneIndex {
  explicit PlaneIndex(const Tower& tw) : qq(tw.qq) {}
  int qq;
  int n_points() const { return qq * qq + qq + 1; }
  int index(const Point& P) const {
    if (P.c[2] == 1) return P.c[0] * qq + P.c[1];
    if (P.c[1] == 1) return qq * qq + P.c[0];
    return qq * qq + qq;
  }
  Point point(int i) const {
    if (i < qq * qq) return Point{{Elem(i / qq), Elem(i % qq), 1}};
    if (i < qq * qq + qq) return Point{{Elem(i - qq * qq), 1, 0}};
    return Point{{1, 0, 0}};
  }
  int index(const Line& L) const {
    if (L.c[2] == 1) return L.c[0] * qq + L.c[1];
    if (L.c[1] == 1) return qq * qq + L.c[0];
    return qq * qq + qq;
  }
  Line line(int i) const {
    if (i < qq * qq) return Line{{Elem(i / qq), Elem(i % qq), 1}};
    if (i < qq * qq + qq) return Line{{Elem(i - qq * qq), 1, 0}};
    return Line{{1, 0, 0}};
  }
};

// --- Baer sublines -------------------------------------------------------

// true iff the q+1 collinear points form a GF(q)-subline (three points are
// sent to the standard frame of PG(1,q^2); the rest must land in GF(q) u {oo})
bool is_baer_subline(const Tower& tw, std::span<const Point> pts);

// the unique Baer subline through three distinct collinear points,
// returned as its full q+1 point set
std::vector<Point> baer_subline_through(const Tower& tw, const Point& A, const Point& B,
                                        const Point& C);

// q+1 lines joining the vertex to the points of a Baer subline off the vertex
struct BaerPencil {
  Point vertex;
  std::vector<Point> base;
};

// --- Conics over GF(q) ---------------------------------------------------

// k = (kxx, kyy, kzz, kxy, kxz, kyz), coefficients in GF(q)
struct Conic {
  std::array<Elem, 6> k{0, 0, 0, 0, 0, 0};
};

Elem conic_eval(const Tower& tw, const Conic& C, Elem x, Elem y, Elem z);

// zero locus inside the subfield plane PG(2,q), by scan
std::vector<Point> conic_points(const Tower& tw, const Conic& C);

// symmetric matrix (odd q only), row-major 3x3
std::array<Elem, 9> conic_matrix(const Tower& tw, const Conic& C);
Elem conic_det(const Tower& tw, const Conic& C);  // odd q only

// odd q: det = 0; even q: nucleus/factorization test
bool conic_degenerate(const Tower& tw, const Conic& C);

struct PencilMember {
  bool at_infinity = false;  // the member D itself
  Elem lambda = 0;
};

// all lambda in GF(q) u {oo} with C + lambda*D degenerate; odd q, C nondegenerate
std::vector<PencilMember> pencil_degenerate_members(const Tower& tw, const Conic& C,
                                                    const Conic& D);

// --- Baer subplanes ------------------------------------------------------

// points (as Point) of the standard Baer subplane = PG(2,q) inside PG(2,q^2)
std::vector<Point> standard_subplane(const Tower& tw);

// the unique Baer subplane through a quadrangle, as the image of the standard
// subplane under the projectivity taking the standard frame to (A,B,C,D)
std::vector<Point> subplane_through_frame(const Tower& tw, const Point& A, const Point& B,
                                          const Point& C, const Point& D);

// all Baer subplanes of PG(2,q^2), each as a sorted vector of PlaneIndex
// indices; enumerated as the orbit of the standard subplane under PGL(3,q^2)
struct SubplaneEnumeration {
  int points_per_subplane = 0;
  std::vector<std::uint32_t> flat;  // count * points_per_subplane entries
  std::size_t count() const { return points_per_subplane ? flat.size() / points_per_subplane : 0; }
  std::span<const std::uint32_t> operator[](std::size_t i) const {
    return {flat.data() + i * points_per_subplane, std::size_t(points_per_subplane)};
  }
};

SubplaneEnumeration enumerate_baer_subplanes(const Tower& tw);

}  // namespace bmu::plane
