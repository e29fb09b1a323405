#pragma once

#include <map>
#include <string>
#include <vector>

#include "bmu/fields.hpp"
#include "bmu/plane.hpp"

namespace bmu::unital {

using gf::Elem;
using gf::Tower;
using plane::Line;
using plane::Point;

// Result 1 parameters. For odd q the discriminant d = (b^q-b)^2 + 4a^{q+1}
// must be a nonsquare of GF(q); for even q, b must lie outside GF(q) and
// d = a^{q+1}/(b^q+b)^2 must have absolute trace 0.
struct Params {
  Elem alpha = 0;
  Elem beta = 0;
  Elem d = 0;
  bool even = false;
  bool classical = false;  // alpha = 0
  bool conic_bm = false;   // beta in GF(q)
};

enum class Reject { none, d_square, beta_in_subfield, trace_one };

struct Validation {
  bool ok = false;
  Reject reason = Reject::none;
  Params params;
};

Validation validate_params(const Tower& tw, Elem alpha, Elem beta);

// all accepted (alpha, beta) pairs, alpha then beta in enumeration order
std::vector<Params> all_valid_params(const Tower& tw);

struct Unital {
  const Tower* tw = nullptr;
  Params par;
  std::vector<Point> points;  // P_{x,r} with x outer / r inner, then T_inf

  int q() const { return tw->q; }

  // algebraic membership: affine (x,y) iff y - a x^2 - b x^{q+1} in GF(q)
  bool contains_affine(Elem x, Elem y) const {
    return tw->in_base(tw->sub(y, ybase_[x]));
  }
  bool contains(const Point& P) const {
    if (P.c[2] == 0) return P.c[0] == 0;  // only T_inf on l_inf
    return contains_affine(P.c[0], P.c[1]);
  }
  // unnormalized triple
  bool contains_raw(Elem x, Elem y, Elem z) const {
    if (z == 0) return x == 0 && y != 0;
    if (z != 1) {
      Elem iz = tw->inv(z);
      return contains_affine(tw->mul(x, iz), tw->mul(y, iz));
    }
    return contains_affine(x, y);
  }

  std::vector<Elem> ybase_;  // x -> alpha x^2 + beta x^{q+1}
};

Unital build_unital(const Tower& tw, const Params& par);

// |line cap U| for one line
int line_intersection(const Unital& U, const Line& L);

// tangent line at a unital point, from the paper's closed forms
// (l_inf at T_inf); the returned line is verified to meet U only at P
Line tangent_at(const Unital& U, const Point& P);

// intersection-size histogram over all q^4+q^2+1 lines
std::map<int, long long> secant_profile(const Unital& U);         // OpenMP kernel
std::map<int, long long> secant_profile_serial(const Unital& U);  // reference

}  // namespace bmu::unital
