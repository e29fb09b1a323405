#include "bmu/bruckbose.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace bmu::bb {

namespace {

using Vec5 = std::array<Elem, 5>;

// Gaussian elimination over GF(q) (entries live in the subfield of the tower);
// reduces rows in place to row echelon form, returns the rank
int echelon(const Tower& tw, std::vector<Vec5>& rows) {
  int rank = 0;
  for (int col = 0; col < 5 && rank < int(rows.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < int(rows.size()); ++r)
      if (rows[r][col]) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    Elem s = tw.inv(rows[rank][col]);
    for (auto& c : rows[rank]) c = tw.mul(c, s);
    for (int r = 0; r < int(rows.size()); ++r) {
      if (r == rank || !rows[r][col]) continue;
      Elem f = rows[r][col];
      for (int c = 0; c < 5; ++c) rows[r][c] = tw.sub(rows[r][c], tw.mul(f, rows[rank][c]));
    }
    ++rank;
  }
  rows.resize(rank);
  return rank;
}

std::uint64_t key5(const Vec5& v) {
  std::uint64_t h = 1469598103934665603ull;
  for (Elem x : v) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

BBPoint normalize5(const Tower& tw, std::array<Elem, 5> v) {
  int last = -1;
  for (int i = 4; i >= 0; --i)
    if (v[i]) { last = i; break; }
  if (last < 0) throw std::invalid_argument("zero 5-tuple is not projective");
  if (v[last] != 1) {
    Elem s = tw.inv(v[last]);
    for (auto& c : v) c = tw.mul(c, s);
  }
  return BBPoint{v};
}

BBPoint to_bb(const Tower& tw, const Point& P) {
  if (P.c[2] == 0) throw std::invalid_argument("to_bb: point lies on l_inf");
  auto [x0, x1] = tw.decompose(P.c[0]);
  auto [y0, y1] = tw.decompose(P.c[1]);
  return BBPoint{{x0, x1, y0, y1, 1}};
}

Point from_bb(const Tower& tw, const BBPoint& B) {
  if (B.c[4] != 1) throw std::invalid_argument("from_bb: point lies in Sigma_inf");
  return Point{{tw.compose(B.c[0], B.c[1]), tw.compose(B.c[2], B.c[3]), 1}};
}

SpreadLine spread_of_point(const Tower& tw, const Point& L) {
  if (L.c[2] != 0) throw std::invalid_argument("spread_of_point: point not on l_inf");
  SpreadLine s;
  // direction space { t*(a,b) : t in GF(q^2) } decomposed over GF(q)
  std::vector<BBPoint> pts;
  for (int t = 1; t < tw.qq; ++t) {
    Elem xa = tw.mul(Elem(t), L.c[0]), xb = tw.mul(Elem(t), L.c[1]);
    auto [a0, a1] = tw.decompose(xa);
    auto [b0, b1] = tw.decompose(xb);
    pts.push_back(normalize5(tw, {a0, a1, b0, b1, 0}));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (int(pts.size()) != tw.q + 1) throw std::logic_error("spread line is not a line");
  s.points = std::move(pts);
  s.span = {s.points[0], s.points[1]};
  return s;
}

std::vector<SpreadLine> full_spread(const Tower& tw) {
  std::vector<SpreadLine> out;
  out.reserve(tw.qq + 1);
  for (int x = 0; x < tw.qq; ++x)
    out.push_back(spread_of_point(tw, Point{{Elem(x), 1, 0}}));
  out.push_back(spread_of_point(tw, Point{{1, 0, 0}}));
  return out;
}

int rank5(const Tower& tw, const std::vector<Vec5>& rows) {
  std::vector<Vec5> copy = rows;
  return echelon(tw, copy);
}

namespace {

// the q+1 points of the PG(3,q)-line through two Sigma_inf points
std::vector<BBPoint> line_points5(const Tower& tw, const BBPoint& A, const BBPoint& B) {
  std::vector<BBPoint> out;
  out.push_back(A);
  for (Elem t : tw.base_elems()) {
    Vec5 v;
    for (int i = 0; i < 5; ++i) v[i] = tw.add(tw.mul(A.c[i], t), B.c[i]);
    out.push_back(normalize5(tw, v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool rank_at_most_2(const Tower& tw, const BBPoint& A, const BBPoint& B, const BBPoint& C) {
  std::vector<Vec5> rows{A.c, B.c, C.c};
  return echelon(tw, rows) <= 2;
}

// unique transversal of (l2, l3) through P (a point off both); empty if none
std::vector<BBPoint> transversal(const Tower& tw, const BBPoint& P, const SpreadLine& l2,
                                 const SpreadLine& l3) {
  for (const BBPoint& Q : l2.points) {
    for (const BBPoint& R : l3.points)
      if (rank_at_most_2(tw, P, Q, R)) return line_points5(tw, P, Q);
  }
  return {};
}

}  // namespace

bool spread_is_regular(const Tower& tw) {
  auto spread = full_spread(tw);
  std::unordered_map<std::uint64_t, int> spread_pts;  // point -> line index
  for (int i = 0; i < int(spread.size()); ++i)
    for (const BBPoint& P : spread[i].points) spread_pts[key5(P.c)] = i;

  auto as_line = [&](const std::vector<BBPoint>& pts) {
    SpreadLine l;
    l.points = pts;
    l.span = {pts[0], pts[1]};
    return l;
  };

  const int n = int(spread.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        // opposite regulus: transversals of (li, lj, lk) through each point of li
        std::vector<SpreadLine> opposite;
        for (const BBPoint& P : spread[i].points) {
          auto t = transversal(tw, P, spread[j], spread[k]);
          if (t.empty()) return false;
          opposite.push_back(as_line(t));
        }
        // the regulus through (li, lj, lk): transversals of the opposite lines
        for (const BBPoint& P : opposite[0].points) {
          auto r = transversal(tw, P, opposite[1], opposite[2]);
          if (r.empty()) return false;
          // every regulus line must be a spread line
          auto it = spread_pts.find(key5(r[0].c));
          if (it == spread_pts.end()) return false;
          const auto& cand = spread[it->second].points;
          if (!std::equal(cand.begin(), cand.end(), r.begin(), r.end())) return false;
        }
      }
  return true;
}

ThreeSpaceReport pedal_pencil_3space(const Tower& tw, const pedal::PedalSet& P) {
  ThreeSpaceReport rep;
  std::vector<Vec5> rows;
  for (const Point& F : P.feet) rows.push_back(to_bb(tw, F).c);
  std::vector<Vec5> ech = rows;
  rep.rank = echelon(tw, ech);
  rep.contained = rep.rank <= 4;
  // representative independent image points
  std::vector<Vec5> acc;
  for (const auto& r : rows) {
    auto trial = acc;
    trial.push_back(r);
    if (echelon(tw, trial) > int(acc.size())) {
      acc.push_back(r);
      rep.space_basis.push_back(normalize5(tw, r));
      if (int(acc.size()) == rep.rank) break;
    }
  }
  // span cap Sigma_inf: eliminate the last coordinate against one pivot row
  std::vector<Vec5> trace;
  int pivr = -1;
  for (int i = 0; i < int(acc.size()); ++i) {
    if (acc[i][4] == 0) {
      trace.push_back(acc[i]);
    } else if (pivr < 0) {
      pivr = i;
    } else {
      Vec5 d;
      Elem f = tw.div(acc[i][4], acc[pivr][4]);
      for (int c = 0; c < 5; ++c) d[c] = tw.sub(acc[i][c], tw.mul(f, acc[pivr][c]));
      trace.push_back(d);
    }
  }
  echelon(tw, trace);
  for (const auto& r : trace) rep.sigma_trace.push_back(normalize5(tw, r));
  return rep;
}

PlaneProfile plane_profile_KQ(const Tower& tw, const pedal::PedalSet& P) {
  PlaneProfile prof;
  std::vector<Vec5> K;
  for (const Point& F : P.feet) K.push_back(to_bb(tw, F).c);
  const int n = int(K.size());

  {
    std::vector<Vec5> all = K;
    if (echelon(tw, all) <= 2) {
      prof.all_collinear = true;
      prof.max_intersection = n;
      return prof;
    }
  }

  // Every plane with >= 3 image points and any point off its lines is spanned
  // by some rank-3 triple, so scanning spanned planes is exact for the max
  // once the all-collinear case is peeled off above.
  std::unordered_map<std::uint64_t, std::vector<std::array<Vec5, 3>>> seen;
  auto count_in_span = [&](const std::array<Vec5, 3>& basis) {
    int c = 0;
    for (const auto& pt : K) {
      std::vector<Vec5> rows{basis[0], basis[1], basis[2], pt};
      if (echelon(tw, rows) == 3) ++c;
    }
    return c;
  };

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        std::vector<Vec5> canon{K[i], K[j], K[k]};
        if (echelon(tw, canon) != 3) continue;
        std::uint64_t h = 1469598103934665603ull;
        for (const auto& row : canon)
          for (Elem x : row) {
            h ^= x;
            h *= 1099511628211ull;
          }
        std::array<Vec5, 3> basis{canon[0], canon[1], canon[2]};
        auto& bucket = seen[h];
        bool fresh = true;
        for (auto& b : bucket)
          if (b == basis) { fresh = false; break; }
        if (!fresh) continue;
        bucket.push_back(basis);
        int c = count_in_span(basis);
        prof.histogram[c]++;
        prof.max_intersection = std::max(prof.max_intersection, c);
      }
  return prof;
}

ConeFit fit_unital_cone(const Unital& U) {
  const Tower& tw = *U.tw;
  ConeFit fit;

  std::vector<Vec5> pts;
  for (const Point& P : U.points)
    if (P.c[2] != 0) pts.push_back(to_bb(tw, P).c);
  SpreadLine st = spread_of_point(tw, plane::t_infinity());
  for (const BBPoint& P : st.points) pts.push_back(P.c);

  // monomials x_i x_j, i <= j, in lexicographic (i, j) order
  std::vector<std::pair<int, int>> mono;
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) mono.push_back({i, j});

  // kernel of the evaluation matrix: rows = points, 15 columns
  std::vector<std::array<Elem, 15>> rows;
  for (const auto& v : pts) {
    std::array<Elem, 15> row{};
    for (int m = 0; m < 15; ++m) row[m] = tw.mul(v[mono[m].first], v[mono[m].second]);
    rows.push_back(row);
  }
  // column-echelon over 15 unknowns
  int rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < 15 && rank < int(rows.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < int(rows.size()); ++r)
      if (rows[r][col]) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    Elem s = tw.inv(rows[rank][col]);
    for (auto& c : rows[rank]) c = tw.mul(c, s);
    for (int r = 0; r < int(rows.size()); ++r) {
      if (r == rank || !rows[r][col]) continue;
      Elem f = rows[r][col];
      for (int c = 0; c < 15; ++c) rows[r][c] = tw.sub(rows[r][c], tw.mul(f, rows[rank][c]));
    }
    pivot_col.push_back(col);
    ++rank;
  }
  if (rank != 14) return fit;  // kernel not 1-dimensional
  fit.unique_quadric = true;

  std::array<Elem, 15> Q{};
  std::vector<bool> is_pivot(15, false);
  for (int c : pivot_col) is_pivot[c] = true;
  int free_col = -1;
  for (int c = 0; c < 15; ++c)
    if (!is_pivot[c]) { free_col = c; break; }
  Q[free_col] = 1;
  for (int r = 0; r < rank; ++r) Q[pivot_col[r]] = tw.neg(rows[r][free_col]);
  fit.quadric = Q;

  auto eval_q = [&](const Vec5& v) {
    Elem s = 0;
    for (int m = 0; m < 15; ++m)
      s = tw.add(s, tw.mul(Q[m], tw.mul(v[mono[m].first], v[mono[m].second])));
    return s;
  };

  // enumerate PG(4,q) points: last nonzero coordinate = 1
  std::vector<Vec5> pg4;
  const auto& B = tw.base_elems();
  for (int lead = 0; lead < 5; ++lead) {
    std::vector<Vec5> acc{{Vec5{}}};
    acc[0][lead] = 1;
    for (int pos = lead - 1; pos >= 0; --pos) {
      std::vector<Vec5> next;
      for (const auto& v : acc)
        for (Elem e : B) {
          Vec5 w = v;
          w[pos] = e;
          next.push_back(w);
        }
      acc = std::move(next);
    }
    // reversed lead order gives "last nonzero = 1" for lead = position of the 1
    for (auto& v : acc) pg4.push_back(v);
  }

  std::vector<Vec5> locus;
  for (const auto& v : pg4)
    if (eval_q(v) == 0) locus.push_back(v);
  std::vector<Vec5> expect = pts;
  auto cmp = [](const Vec5& a, const Vec5& b) { return a < b; };
  std::sort(locus.begin(), locus.end(), cmp);
  std::sort(expect.begin(), expect.end(), cmp);
  expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
  fit.locus_matches = locus == expect;

  // singular points: radical of the polar form, intersected with the quadric
  auto coeff = [&](int i, int j) {
    for (int m = 0; m < 15; ++m)
      if ((mono[m].first == std::min(i, j)) && (mono[m].second == std::max(i, j))) return Q[m];
    return Elem(0);
  };
  std::vector<Vec5> vertices;
  for (const auto& v : pg4) {
    // B(v, e_k) = sum_i Q_{ik} v_i (+ 2 Q_kk v_k, which the odd case needs)
    bool radical = true;
    for (int kidx = 0; kidx < 5 && radical; ++kidx) {
      Elem s = 0;
      for (int i = 0; i < 5; ++i) {
        if (i == kidx) continue;
        s = tw.add(s, tw.mul(coeff(i, kidx), v[i]));
      }
      Elem diag = tw.mul(coeff(kidx, kidx), v[kidx]);
      s = tw.add(s, tw.add(diag, diag));
      if (s != 0) radical = false;
    }
    if (radical && eval_q(v) == 0) vertices.push_back(v);
  }
  if (vertices.size() == 1) {
    BBPoint vx = normalize5(tw, vertices[0]);
    for (const BBPoint& P : st.points)
      if (P == vx) fit.vertex_on_spread = true;
  }
  if (!fit.vertex_on_spread) return fit;

  // base: section by a hyperplane off the vertex must be a (q^2+1)-cap
  BBPoint vx = normalize5(tw, vertices[0]);
  int coordpos = -1;
  for (int i = 0; i < 5; ++i)
    if (vx.c[i] != 0) { coordpos = i; break; }
  std::vector<Vec5> base;
  for (const auto& v : locus)
    if (v[coordpos] == 0) base.push_back(v);
  if (int(base.size()) != tw.q * tw.q + 1) return fit;
  bool cap = true;
  for (std::size_t i = 0; i < base.size() && cap; ++i)
    for (std::size_t j = i + 1; j < base.size() && cap; ++j)
      for (std::size_t k = j + 1; k < base.size() && cap; ++k) {
        std::vector<Vec5> rows3{base[i], base[j], base[k]};
        if (echelon(tw, rows3) <= 2) cap = false;
      }
  fit.base_is_cap = cap;
  return fit;
}

}  // namespace bmu::bb
