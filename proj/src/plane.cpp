#include "bmu/plane.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace bmu::plane {

std::array<Elem, 3> normalize(const Tower& tw, std::array<Elem, 3> v) {
  int last = -1;
  for (int i = 2; i >= 0; --i)
    if (v[i]) { last = i; break; }
  if (last < 0) throw std::invalid_argument("zero triple is not projective");
  if (v[last] != 1) {
    Elem s = tw.inv(v[last]);
    for (auto& c : v) c = tw.mul(c, s);
  }
  return v;
}

namespace {
std::array<Elem, 3> cross(const Tower& tw, const std::array<Elem, 3>& a,
                          const std::array<Elem, 3>& b) {
  return {tw.sub(tw.mul(a[1], b[2]), tw.mul(a[2], b[1])),
          tw.sub(tw.mul(a[2], b[0]), tw.mul(a[0], b[2])),
          tw.sub(tw.mul(a[0], b[1]), tw.mul(a[1], b[0]))};
}
}  // namespace

Line line_through(const Tower& tw, const Point& P, const Point& Q) {
  if (P == Q) throw std::invalid_argument("line_through: points coincide");
  return Line{normalize(tw, cross(tw, P.c, Q.c))};
}

Point meet(const Tower& tw, const Line& L, const Line& M) {
  if (L == M) throw std::invalid_argument("meet: lines coincide");
  return Point{normalize(tw, cross(tw, L.c, M.c))};
}

std::array<Point, 2> span_of_line(const Tower& tw, const Line& L) {
  int piv = -1;
  for (int i = 2; i >= 0; --i)
    if (L.c[i]) { piv = i; break; }
  int f1 = piv == 0 ? 1 : 0;
  int f2 = piv == 2 ? 1 : 2;
  Elem ip = tw.inv(L.c[piv]);
  Point S1, S2;
  S1.c[f1] = 1;
  S1.c[piv] = tw.neg(tw.mul(L.c[f1], ip));
  S2.c[f2] = 1;
  S2.c[piv] = tw.neg(tw.mul(L.c[f2], ip));
  return {S1, S2};
}

std::vector<Line> lines_through(const Tower& tw, const Point& P) {
  // dualize: lines through P = points on the line with P's coordinates
  std::vector<Line> out;
  out.reserve(tw.qq + 1);
  Line dual{P.c};
  for_points_on(tw, dual, [&](Elem a, Elem b, Elem c) {
    out.push_back(Line{normalize(tw, {a, b, c})});
  });
  return out;
}

bool collinear(const Tower& tw, std::span<const Point> pts) {
  if (pts.size() < 2) throw std::invalid_argument("collinear: need at least 2 points");
  if (pts.size() == 2) return true;
  Line L = line_through(tw, pts[0], pts[1]);
  for (std::size_t i = 2; i < pts.size(); ++i)
    if (!incident(tw, pts[i], L)) return false;
  return true;
}

// --- Baer sublines -------------------------------------------------------

namespace {

// chart of a line: positions (r0, r1) where the 2x2 minor of (S1,S2) is
// invertible, so any point of the line has unique parameters (u:v)
struct LineChart {
  Point S1, S2;
  int r0 = 0, r1 = 1;
  Elem det = 0;
};

LineChart chart_of(const Tower& tw, const Line& L) {
  LineChart ch;
  auto [S1, S2] = span_of_line(tw, L);
  ch.S1 = S1;
  ch.S2 = S2;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      Elem d = tw.sub(tw.mul(S1.c[a], S2.c[b]), tw.mul(S1.c[b], S2.c[a]));
      if (d != 0) {
        ch.r0 = a;
        ch.r1 = b;
        ch.det = d;
        return ch;
      }
    }
  throw std::logic_error("degenerate line span");
}

// homogeneous parameters (u:v) with P ~ u*S1 + v*S2
std::pair<Elem, Elem> param_of(const Tower& tw, const LineChart& ch, const Point& P) {
  Elem a = P.c[ch.r0], b = P.c[ch.r1];
  Elem u = tw.sub(tw.mul(a, ch.S2.c[ch.r1]), tw.mul(b, ch.S2.c[ch.r0]));
  Elem v = tw.sub(tw.mul(ch.S1.c[ch.r0], b), tw.mul(ch.S1.c[ch.r1], a));
  return {tw.div(u, ch.det), tw.div(v, ch.det)};
}

Point point_at(const Tower& tw, const LineChart& ch, Elem u, Elem v) {
  std::array<Elem, 3> w;
  for (int i = 0; i < 3; ++i)
    w[i] = tw.add(tw.mul(ch.S1.c[i], u), tw.mul(ch.S2.c[i], v));
  return Point{normalize(tw, w)};
}

// 2x2 matrix M with M*(1,0) ~ A, M*(0,1) ~ B, M*(1,1) ~ C (params as columns)
struct Mobius {
  Elem a, b, c, d;  // [[a b],[c d]]
};

Mobius frame_map(const Tower& tw, std::pair<Elem, Elem> A, std::pair<Elem, Elem> B,
                 std::pair<Elem, Elem> C) {
  // solve lam*A + mu*B = C
  Elem det = tw.sub(tw.mul(A.first, B.second), tw.mul(A.second, B.first));
  if (det == 0) throw std::invalid_argument("subline: coincident points");
  Elem lam = tw.div(tw.sub(tw.mul(C.first, B.second), tw.mul(C.second, B.first)), det);
  Elem mu = tw.div(tw.sub(tw.mul(A.first, C.second), tw.mul(A.second, C.first)), det);
  if (lam == 0 || mu == 0) throw std::invalid_argument("subline: coincident points");
  return {tw.mul(lam, A.first), tw.mul(mu, B.first), tw.mul(lam, A.second),
          tw.mul(mu, B.second)};
}

}  // namespace

bool is_baer_subline(const Tower& tw, std::span<const Point> pts) {
  if (int(pts.size()) != tw.q + 1) return false;
  if (!collinear(tw, pts)) throw std::invalid_argument("is_baer_subline: points not collinear");
  Line L = line_through(tw, pts[0], pts[1]);
  LineChart ch = chart_of(tw, L);
  Mobius M = frame_map(tw, param_of(tw, ch, pts[0]), param_of(tw, ch, pts[1]),
                       param_of(tw, ch, pts[2]));
  // inverse of M up to scale: adjugate
  Elem ia = M.d, ib = tw.neg(M.b), ic = tw.neg(M.c), id = M.a;
  for (std::size_t i = 3; i < pts.size(); ++i) {
    auto [u, v] = param_of(tw, ch, pts[i]);
    Elem s = tw.add(tw.mul(ia, u), tw.mul(ib, v));
    Elem r = tw.add(tw.mul(ic, u), tw.mul(id, v));
    if (r == 0) continue;  // the point at infinity of the subline
    if (!tw.in_base(tw.div(s, r))) return false;
  }
  return true;
}

std::vector<Point> baer_subline_through(const Tower& tw, const Point& A, const Point& B,
                                        const Point& C) {
  std::array<Point, 3> tri{A, B, C};
  if (A == B || B == C || A == C) throw std::invalid_argument("subline: points coincide");
  if (!collinear(tw, tri)) throw std::invalid_argument("subline: points not collinear");
  Line L = line_through(tw, A, B);
  LineChart ch = chart_of(tw, L);
  Mobius M = frame_map(tw, param_of(tw, ch, A), param_of(tw, ch, B), param_of(tw, ch, C));
  std::vector<Point> out;
  out.reserve(tw.q + 1);
  out.push_back(point_at(tw, ch, M.a, M.c));  // image of (1:0), i.e. A
  for (Elem s : tw.base_elems()) {
    Elem u = tw.add(tw.mul(M.a, s), M.b);
    Elem v = tw.add(tw.mul(M.c, s), M.d);
    out.push_back(point_at(tw, ch, u, v));
  }
  return out;
}

// --- Conics ---------------------------------------------------------------

Elem conic_eval(const Tower& tw, const Conic& C, Elem x, Elem y, Elem z) {
  Elem s = tw.mul(C.k[0], tw.mul(x, x));
  s = tw.add(s, tw.mul(C.k[1], tw.mul(y, y)));
  s = tw.add(s, tw.mul(C.k[2], tw.mul(z, z)));
  s = tw.add(s, tw.mul(C.k[3], tw.mul(x, y)));
  s = tw.add(s, tw.mul(C.k[4], tw.mul(x, z)));
  s = tw.add(s, tw.mul(C.k[5], tw.mul(y, z)));
  return s;
}

std::vector<Point> conic_points(const Tower& tw, const Conic& C) {
  std::vector<Point> out;
  const auto& B = tw.base_elems();
  for (Elem x : B)
    for (Elem y : B)
      if (conic_eval(tw, C, x, y, 1) == 0) out.push_back(Point{{x, y, 1}});
  for (Elem x : B)
    if (conic_eval(tw, C, x, 1, 0) == 0) out.push_back(Point{{x, 1, 0}});
  if (conic_eval(tw, C, 1, 0, 0) == 0) out.push_back(Point{{1, 0, 0}});
  return out;
}

std::array<Elem, 9> conic_matrix(const Tower& tw, const Conic& C) {
  if (!tw.odd()) throw std::invalid_argument("conic_matrix needs odd characteristic");
  Elem half = tw.inv(tw.add(1, 1));
  Elem xy = tw.mul(C.k[3], half), xz = tw.mul(C.k[4], half), yz = tw.mul(C.k[5], half);
  return {C.k[0], xy, xz, xy, C.k[1], yz, xz, yz, C.k[2]};
}

Elem conic_det(const Tower& tw, const Conic& C) {
  auto m = conic_matrix(tw, C);
  Elem t0 = tw.mul(m[0], tw.sub(tw.mul(m[4], m[8]), tw.mul(m[5], m[7])));
  Elem t1 = tw.mul(m[1], tw.sub(tw.mul(m[3], m[8]), tw.mul(m[5], m[6])));
  Elem t2 = tw.mul(m[2], tw.sub(tw.mul(m[3], m[7]), tw.mul(m[4], m[6])));
  return tw.add(tw.sub(t0, t1), t2);
}

bool conic_degenerate(const Tower& tw, const Conic& C) {
  if (tw.odd()) return conic_det(tw, C) == 0;
  // char 2: nucleus (kyz, kxz, kxy); all-zero cross terms mean a repeated line
  Elem nx = C.k[5], ny = C.k[4], nz = C.k[3];
  if (nx == 0 && ny == 0 && nz == 0) return true;
  return conic_eval(tw, C, nx, ny, nz) == 0;
}

std::vector<PencilMember> pencil_degenerate_members(const Tower& tw, const Conic& C,
                                                    const Conic& D) {
  if (!tw.odd()) throw std::invalid_argument("pencil machinery is for odd q");
  if (conic_degenerate(tw, C)) throw std::invalid_argument("pencil: C must be non-degenerate");
  std::vector<PencilMember> out;
  for (Elem lam : tw.base_elems()) {
    Conic M;
    for (int i = 0; i < 6; ++i) M.k[i] = tw.add(C.k[i], tw.mul(lam, D.k[i]));
    if (conic_det(tw, M) == 0) out.push_back({false, lam});
  }
  if (conic_degenerate(tw, D)) out.push_back({true, 0});
  return out;
}

// --- Baer subplanes -------------------------------------------------------

std::vector<Point> standard_subplane(const Tower& tw) {
  std::vector<Point> out;
  const auto& B = tw.base_elems();
  for (Elem x : B)
    for (Elem y : B) out.push_back(Point{{x, y, 1}});
  for (Elem x : B) out.push_back(Point{{x, 1, 0}});
  out.push_back(Point{{1, 0, 0}});
  return out;
}

namespace {

using Mat3 = std::array<Elem, 9>;  // row-major

Point apply(const Tower& tw, const Mat3& M, const Point& P) {
  std::array<Elem, 3> v;
  for (int r = 0; r < 3; ++r) {
    Elem s = 0;
    for (int c = 0; c < 3; ++c) s = tw.add(s, tw.mul(M[r * 3 + c], P.c[c]));
    v[r] = s;
  }
  return Point{normalize(tw, v)};
}

Elem det3(const Tower& tw, const Mat3& m) {
  Elem t0 = tw.mul(m[0], tw.sub(tw.mul(m[4], m[8]), tw.mul(m[5], m[7])));
  Elem t1 = tw.mul(m[1], tw.sub(tw.mul(m[3], m[8]), tw.mul(m[5], m[6])));
  Elem t2 = tw.mul(m[2], tw.sub(tw.mul(m[3], m[7]), tw.mul(m[4], m[6])));
  return tw.add(tw.sub(t0, t1), t2);
}

}  // namespace

std::vector<Point> subplane_through_frame(const Tower& tw, const Point& A, const Point& B,
                                          const Point& C, const Point& D) {
  // columns lam*A, mu*B, nu*C with lam*A + mu*B + nu*C = D
  Mat3 M{A.c[0], B.c[0], C.c[0], A.c[1], B.c[1], C.c[1], A.c[2], B.c[2], C.c[2]};
  Elem det = det3(tw, M);
  if (det == 0) throw std::invalid_argument("frame points are not in general position");
  // Cramer for (lam, mu, nu)
  auto col_replaced = [&](int col) {
    Mat3 R = M;
    for (int r = 0; r < 3; ++r) R[r * 3 + col] = D.c[r];
    return det3(tw, R);
  };
  Elem lam = tw.div(col_replaced(0), det);
  Elem mu = tw.div(col_replaced(1), det);
  Elem nu = tw.div(col_replaced(2), det);
  if (lam == 0 || mu == 0 || nu == 0)
    throw std::invalid_argument("frame points are not in general position");
  Mat3 G;
  for (int r = 0; r < 3; ++r) {
    G[r * 3 + 0] = tw.mul(lam, A.c[r]);
    G[r * 3 + 1] = tw.mul(mu, B.c[r]);
    G[r * 3 + 2] = tw.mul(nu, C.c[r]);
  }
  std::vector<Point> out;
  out.reserve(tw.q * tw.q + tw.q + 1);
  for (const Point& P : standard_subplane(tw)) out.push_back(apply(tw, G, P));
  return out;
}

SubplaneEnumeration enumerate_baer_subplanes(const Tower& tw) {
  PlaneIndex idx(tw);
  const int m = tw.q * tw.q + tw.q + 1;

  // generators of PGL(3,q^2): a transvection, the coordinate cycle, diag(zeta,1,1)
  std::vector<Mat3> gens = {
      Mat3{1, 1, 0, 0, 1, 0, 0, 0, 1},
      Mat3{0, 0, 1, 1, 0, 0, 0, 1, 0},
      Mat3{tw.zeta, 0, 0, 0, 1, 0, 0, 0, 1},
  };

  SubplaneEnumeration en;
  en.points_per_subplane = m;

  auto canon = [&](const std::vector<Point>& pts) {
    std::vector<std::uint32_t> v(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) v[i] = std::uint32_t(idx.index(pts[i]));
    std::sort(v.begin(), v.end());
    return v;
  };
  auto hash_of = [](const std::vector<std::uint32_t>& v) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint32_t x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  };

  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> seen;  // hash -> subplane ids
  auto equal_at = [&](std::size_t id, const std::vector<std::uint32_t>& v) {
    return std::equal(v.begin(), v.end(), en.flat.begin() + id * m);
  };
  auto insert = [&](const std::vector<std::uint32_t>& v) -> bool {
    auto& bucket = seen[hash_of(v)];
    for (std::uint32_t id : bucket)
      if (equal_at(id, v)) return false;
    bucket.push_back(std::uint32_t(en.count()));
    en.flat.insert(en.flat.end(), v.begin(), v.end());
    return true;
  };

  insert(canon(standard_subplane(tw)));
  std::deque<std::size_t> frontier{0};
  std::vector<Point> scratch(m);
  while (!frontier.empty()) {
    std::size_t cur = frontier.front();
    frontier.pop_front();
    for (const Mat3& G : gens) {
      auto sp = en[cur];
      for (int i = 0; i < m; ++i) scratch[i] = apply(tw, G, idx.point(int(sp[i])));
      auto v = canon(scratch);
      std::size_t before = en.count();
      if (insert(v)) frontier.push_back(before);
    }
  }
  return en;
}

}  // namespace bmu::plane
