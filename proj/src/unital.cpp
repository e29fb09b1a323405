#include "bmu/unital.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <stdexcept>

namespace bmu::unital {

Validation validate_params(const Tower& tw, Elem alpha, Elem beta) {
  Validation r;
  Params p;
  p.alpha = alpha;
  p.beta = beta;
  p.even = !tw.odd();
  p.classical = alpha == 0;
  p.conic_bm = tw.in_base(beta);
  if (tw.odd()) {
    // d = (beta^q - beta)^2 + 4 alpha^{q+1}
    Elem t = tw.sub(tw.frob(beta), beta);
    Elem four = tw.add(tw.add(1, 1), tw.add(1, 1));
    p.d = tw.add(tw.sqr(t), tw.mul(four, tw.norm(alpha)));
    if (tw.is_square_base(p.d)) {
      r.reason = Reject::d_square;
      return r;
    }
  } else {
    if (tw.in_base(beta)) {
      r.reason = Reject::beta_in_subfield;
      return r;
    }
    Elem t = tw.add(tw.frob(beta), beta);  // nonzero since beta not in GF(q)
    p.d = tw.div(tw.norm(alpha), tw.sqr(t));
    if (tw.abs_trace(p.d) != 0) {
      r.reason = Reject::trace_one;
      return r;
    }
  }
  r.ok = true;
  r.params = p;
  return r;
}

std::vector<Params> all_valid_params(const Tower& tw) {
  std::vector<Params> out;
  for (int a = 0; a < tw.qq; ++a)
    for (int b = 0; b < tw.qq; ++b) {
      Validation v = validate_params(tw, Elem(a), Elem(b));
      if (v.ok) out.push_back(v.params);
    }
  return out;
}

Unital build_unital(const Tower& tw, const Params& par) {
  Unital U;
  U.tw = &tw;
  U.par = par;
  U.ybase_.assign(tw.qq, 0);
  for (int x = 0; x < tw.qq; ++x)
    U.ybase_[x] = tw.add(tw.mul(par.alpha, tw.sqr(Elem(x))), tw.mul(par.beta, tw.norm(Elem(x))));
  U.points.reserve(std::size_t(tw.q) * tw.qq + 1);
  for (int x = 0; x < tw.qq; ++x)
    for (Elem r : tw.base_elems())
      U.points.push_back(Point{{Elem(x), tw.add(U.ybase_[x], r), 1}});
  U.points.push_back(plane::t_infinity());
  return U;
}

int line_intersection(const Unital& U, const Line& L) {
  const Tower& tw = *U.tw;
  int n = 0;
  plane::for_points_on(tw, L, [&](Elem x, Elem y, Elem z) {
    if (U.contains_raw(x, y, z)) ++n;
  });
  return n;
}

Line tangent_at(const Unital& U, const Point& P) {
  const Tower& tw = *U.tw;
  if (!U.contains(P)) throw std::invalid_argument("tangent_at: point not on the unital");
  Line t;
  if (P.c[2] == 0) {
    t = plane::line_at_infinity();
  } else {
    Elem x = P.c[0], y = P.c[1];
    Elem a = U.par.alpha, b = U.par.beta;
    Elem r = tw.sub(y, U.ybase_[x]);
    Elem xq = tw.frob(x);
    if (tw.odd()) {
      // [-2ax + (b^q - b)x^q, 1, a x^2 - b^q x^{q+1} - r]
      Elem c0 = tw.add(tw.neg(tw.mul(tw.add(a, a), x)), tw.mul(tw.sub(tw.frob(b), b), xq));
      Elem c2 = tw.sub(tw.sub(tw.mul(a, tw.sqr(x)), tw.mul(tw.frob(b), tw.norm(x))), r);
      t = plane::make_line(tw, c0, 1, c2);
    } else {
      // [(b^q + b)x^q, 1, a x^2 + b^q x^{q+1} + r]
      Elem c0 = tw.mul(tw.add(tw.frob(b), b), xq);
      Elem c2 = tw.add(tw.add(tw.mul(a, tw.sqr(x)), tw.mul(tw.frob(b), tw.norm(x))), r);
      t = plane::make_line(tw, c0, 1, c2);
    }
  }
  if (line_intersection(U, t) != 1)
    throw std::logic_error("tangent formula failed its tangency check");
  return t;
}

namespace {

template <class NextLine>
void profile_accumulate(const Unital& U, long long* hist, NextLine&& line_of) {
  const int qq = U.tw->qq;
  const int n_lines = qq * qq + qq + 1;
  for (int i = 0; i < n_lines; ++i) hist[line_intersection(U, line_of(i))]++;
}

}  // namespace

std::map<int, long long> secant_profile_serial(const Unital& U) {
  const Tower& tw = *U.tw;
  plane::PlaneIndex idx(tw);
  std::vector<long long> hist(tw.qq + 2, 0);
  profile_accumulate(U, hist.data(), [&](int i) { return idx.line(i); });
  std::map<int, long long> out;
  for (int s = 0; s < int(hist.size()); ++s)
    if (hist[s]) out[s] = hist[s];
  return out;
}

std::map<int, long long> secant_profile(const Unital& U) {
  const Tower& tw = *U.tw;
  plane::PlaneIndex idx(tw);
  const int n_lines = idx.n_points();
  std::vector<long long> hist(tw.qq + 2, 0);
#ifdef _OPENMP
#pragma omp parallel
  {
    std::vector<long long> local(tw.qq + 2, 0);
#pragma omp for schedule(static)
    for (int i = 0; i < n_lines; ++i) local[line_intersection(U, idx.line(i))]++;
#pragma omp critical
    for (std::size_t s = 0; s < local.size(); ++s) hist[s] += local[s];
  }
#else
  for (int i = 0; i < n_lines; ++i) hist[line_intersection(U, idx.line(i))]++;
#endif
  std::map<int, long long> out;
  for (int s = 0; s < int(hist.size()); ++s)
    if (hist[s]) out[s] = hist[s];
  return out;
}

}  // namespace bmu::unital
