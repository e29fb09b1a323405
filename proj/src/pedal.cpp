#include "bmu/pedal.hpp"

#include <algorithm>
#include <unordered_map>

namespace bmu::pedal {

PedalSet pedal_brute(const Unital& U, const Point& P) {
  const Tower& tw = *U.tw;
  if (U.contains(P)) throw std::invalid_argument("pedal_brute: base point lies on the unital");
  PedalSet out;
  out.base = P;
  for (const Line& L : plane::lines_through(tw, P)) {
    int n = 0;
    Point foot;
    plane::for_points_on(tw, L, [&](Elem x, Elem y, Elem z) {
      if (U.contains_raw(x, y, z)) {
        ++n;
        if (n == 1) foot = Point{plane::normalize(tw, {x, y, z})};
      }
    });
    if (n == 1) {
      out.feet.push_back(foot);
      out.tangents.push_back(L);
    }
  }
  if (int(out.feet.size()) != tw.q + 1)
    throw std::logic_error("pedal_brute: tangent count is not q+1");
  return out;
}

Point canonical_point(const Tower& tw, CanonicalBase b) {
  switch (b) {
    case CanonicalBase::R1:
      if (!tw.odd()) throw std::invalid_argument("R1 requires odd q");
      return plane::make_point(tw, 0, tw.tau, 1);
    case CanonicalBase::R2:
      if (!tw.odd()) throw std::invalid_argument("R2 requires odd q");
      return plane::make_point(tw, 0, tw.mul(tw.aux, tw.tau), 1);
    case CanonicalBase::R:
      if (tw.odd()) throw std::invalid_argument("R requires even q");
      return plane::make_point(tw, 0, tw.tau, 1);
  }
  throw std::logic_error("unreachable");
}

PedalSet feet_closed_form(const Unital& U, CanonicalBase b) {
  const Tower& tw = *U.tw;
  if ((b == CanonicalBase::R) == tw.odd())
    throw std::invalid_argument("closed-form base point has the wrong parity");
  const Elem a = U.par.alpha, be = U.par.beta;
  PedalSet out;
  out.base = canonical_point(tw, b);
  if (tw.odd()) {
    const Elem eps = tw.tau;
    const Elem k = b == CanonicalBase::R1 ? eps : tw.mul(tw.aux, eps);  // eps or w*eps
    const Elem bup = tw.sub(be, tw.frob(be));                           // beta - beta^q
    for (int xi = 0; xi < tw.qq; ++xi) {
      Elem x = Elem(xi);
      Elem x2 = tw.sqr(x);
      Elem x2q = tw.frob(x2);
      Elem nx = tw.norm(x);
      // a x^2 - a^q x^{2q} + (b - b^q) x^{q+1} + 2k = 0
      Elem cond = tw.sub(tw.mul(a, x2), tw.mul(tw.frob(a), x2q));
      cond = tw.add(cond, tw.mul(bup, nx));
      cond = tw.add(cond, tw.add(k, k));
      if (cond != 0) continue;
      // Q_x = (x, 2a x^2 + (b - b^q) x^{q+1} + k, 1)
      Elem y = tw.add(tw.add(tw.mul(tw.add(a, a), x2), tw.mul(bup, nx)), k);
      out.feet.push_back(Point{{x, y, 1}});
    }
  } else {
    const Elem bsum = tw.add(be, tw.frob(be));
    const Elem dq = tw.frob(tw.tau);  // delta^q
    for (int xi = 0; xi < tw.qq; ++xi) {
      Elem x = Elem(xi);
      Elem s = tw.add(tw.mul(a, tw.sqr(x)), tw.mul(tw.frob(a), tw.frob(tw.sqr(x))));
      // 1 + a x^2 + a^q x^{2q} + (b + b^q) x^{q+1} = 0
      Elem cond = tw.add(tw.add(Elem(1), s), tw.mul(bsum, tw.norm(x)));
      if (cond != 0) continue;
      // Q_x = (x, a x^2 + a^q x^{2q} + delta^q, 1)
      out.feet.push_back(Point{{x, tw.add(s, dq), 1}});
    }
  }
  if (int(out.feet.size()) != tw.q + 1)
    throw std::logic_error("closed form did not produce q+1 feet");
  for (const Point& F : out.feet) out.tangents.push_back(unital::tangent_at(U, F));
  return out;
}

std::vector<std::pair<Line, int>> multi_secants(const Tower& tw, const std::vector<Point>& feet) {
  std::unordered_map<std::uint64_t, std::pair<Line, int>> lines;
  const std::size_t n = feet.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Line L = plane::line_through(tw, feet[i], feet[j]);
      auto [it, fresh] = lines.try_emplace(plane::key(L), L, 0);
      if (fresh) {
        int c = 0;
        for (const Point& F : feet)
          if (plane::incident(tw, F, L)) ++c;
        it->second.second = c;
      }
    }
  std::vector<std::pair<Line, int>> out;
  out.reserve(lines.size());
  for (auto& [k, v] : lines) out.push_back(v);
  std::sort(out.begin(), out.end(),
            [](auto& a, auto& b) { return plane::key(a.first) < plane::key(b.first); });
  return out;
}

SecantProfile classify_with(const Unital& U, const PedalSet& P, const MultiSecants& ms) {
  const Tower& tw = *U.tw;
  const long long total = (long long)tw.qq * tw.qq + tw.qq + 1;
  const long long nfeet = (long long)P.feet.size();
  SecantProfile pr;
  long long covered = 0, incidences = 0;
  for (auto& [L, c] : ms) {
    pr.count[c]++;
    covered++;
    incidences += c;
  }
  long long ones = nfeet * (tw.qq + 1) - incidences;
  if (ones) pr.count[1] = ones;
  long long zeros = total - covered - ones;
  if (zeros) pr.count[0] = zeros;
  return pr;
}

SecantProfile classify(const Unital& U, const PedalSet& P) {
  return classify_with(U, P, multi_secants(*U.tw, P.feet));
}

SecantProfile classify_by_line_scan(const Unital& U, const PedalSet& P) {
  const Tower& tw = *U.tw;
  plane::PlaneIndex idx(tw);
  SecantProfile pr;
  for (int i = 0; i < idx.n_points(); ++i) {
    Line L = idx.line(i);
    int c = 0;
    for (const Point& F : P.feet)
      if (plane::incident(tw, F, L)) ++c;
    pr.count[c]++;
  }
  return pr;
}

FourSecantReport four_secant_report_with(const Unital& U, const PedalSet& P, const Point& vertex,
                                         const MultiSecants& ms) {
  const Tower& tw = *U.tw;
  if (!tw.odd()) throw std::invalid_argument("four_secant_report is for odd q");
  FourSecantReport rep;
  for (auto& [L, c] : ms) {
    if (c == 4) {
      rep.four_secants.push_back(L);
      if (!plane::incident(tw, vertex, L)) rep.all_through_vertex = false;
    }
  }
  rep.count = int(rep.four_secants.size());
  std::unordered_map<std::uint64_t, int> through;
  for (const Point& F : P.feet) through[plane::key(plane::line_through(tw, vertex, F))]++;
  for (auto& [k, c] : through) rep.vertex_census[c]++;
  return rep;
}

FourSecantReport four_secant_report(const Unital& U, const PedalSet& P, const Point& vertex) {
  return four_secant_report_with(U, P, vertex, multi_secants(*U.tw, P.feet));
}

PencilResult detect_baer_pencil_with(const Unital& U, const PedalSet& P, const MultiSecants& ms) {
  const Tower& tw = *U.tw;
  PencilResult res;
  if (plane::collinear(tw, P.feet)) {
    res.status = PencilResult::Status::collinear;
    res.line = plane::line_through(tw, P.feet[0], P.feet[1]);
    return res;
  }
  const Point Tinf = plane::t_infinity();
  const Line m{{1, 0, 0}};  // the line x = 0, carries T_inf and the E_k points
  const Line linf = plane::line_at_infinity();

  // A pencil line through a valid vertex carries >= 2 feet (the l_inf line of
  // the pencil carries none), so every admissible vertex lies on a
  // multi-secant of the feet. U_inf goes first, then l_inf point order.
  std::vector<Point> cands{plane::u_infinity()};
  {
    std::vector<Point> rest;
    for (auto& [L, c] : ms) {
      Point V = L == linf ? Tinf : plane::meet(tw, L, linf);
      if (V == Tinf || V == cands[0]) continue;
      rest.push_back(V);
    }
    std::sort(rest.begin(), rest.end(),
              [](const Point& a, const Point& b) { return plane::key(a) < plane::key(b); });
    rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
    cands.insert(cands.end(), rest.begin(), rest.end());
  }

  for (const Point& V : cands) {
    std::vector<Point> traces{Tinf};
    bool ok = true;
    for (const Point& F : P.feet) {
      if (F == V) { ok = false; break; }
      Point t = plane::meet(tw, plane::line_through(tw, V, F), m);
      if (std::find(traces.begin(), traces.end(), t) == traces.end()) traces.push_back(t);
    }
    if (!ok || traces.size() < 3) continue;
    std::vector<Point> base = plane::baer_subline_through(tw, traces[0], traces[1], traces[2]);
    bool contained = true;
    for (const Point& t : traces)
      if (std::find(base.begin(), base.end(), t) == base.end()) { contained = false; break; }
    if (!contained) continue;
    res.status = PencilResult::Status::found;
    res.pencil.vertex = V;
    res.pencil.base = std::move(base);
    return res;
  }
  return res;
}

PencilResult detect_baer_pencil(const Unital& U, const PedalSet& P) {
  return detect_baer_pencil_with(U, P, multi_secants(*U.tw, P.feet));
}

namespace {

bool extend_coloring(const std::vector<std::array<int, 3>>& triples, std::vector<int>& color,
                     std::size_t i) {
  if (i == color.size()) return true;
  for (int c = 0; c < 2; ++c) {
    color[i] = c;
    bool ok = true;
    for (const auto& t : triples) {
      if (t[2] != int(i)) continue;  // triples sorted with max index last
      if (color[t[0]] == c && color[t[1]] == c) { ok = false; break; }
    }
    if (ok && extend_coloring(triples, color, i + 1)) return true;
  }
  color[i] = -1;
  return false;
}

}  // namespace

std::optional<std::vector<int>> two_arc_partition(const Tower& tw, const PedalSet& P) {
  const auto& F = P.feet;
  std::vector<std::array<int, 3>> triples;
  for (std::size_t i = 0; i < F.size(); ++i)
    for (std::size_t j = i + 1; j < F.size(); ++j)
      for (std::size_t k = j + 1; k < F.size(); ++k) {
        std::array<Point, 3> t{F[i], F[j], F[k]};
        if (plane::collinear(tw, t)) triples.push_back({int(i), int(j), int(k)});
      }
  std::vector<int> color(F.size(), -1);
  if (extend_coloring(triples, color, 0)) return color;
  return std::nullopt;
}

}  // namespace bmu::pedal
