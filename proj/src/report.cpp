#include "bmu/report.hpp"

#include <fstream>

namespace bmu::report {

json tower_json(const gf::Tower& tw) {
  json j;
  j["p"] = tw.p;
  j["h"] = tw.h;
  j["q"] = tw.q;
  json mod = json::array();
  for (auto c : tw.modulus) mod.push_back(int(c));
  j["modulus"] = mod;
  j["zeta"] = tw.to_string(tw.zeta);
  if (tw.odd()) {
    j["epsilon"] = tw.to_string(tw.tau);
    j["w"] = tw.to_string(tw.aux);
  } else {
    j["delta"] = tw.to_string(tw.tau);
    j["v"] = tw.to_string(tw.aux);
  }
  return j;
}

json point_json(const gf::Tower& tw, const plane::Point& P) {
  return json::array({tw.to_string(P.c[0]), tw.to_string(P.c[1]), tw.to_string(P.c[2])});
}

json line_json(const gf::Tower& tw, const plane::Line& L) {
  return json::array({tw.to_string(L.c[0]), tw.to_string(L.c[1]), tw.to_string(L.c[2])});
}

json bbpoint_json(const gf::Tower& tw, const bb::BBPoint& P) {
  json j = json::array();
  for (auto c : P.c) j.push_back(tw.to_string(c));
  return j;
}

json params_json(const gf::Tower& tw, const unital::Params& par) {
  json j;
  j["alpha"] = tw.to_string(par.alpha);
  j["beta"] = tw.to_string(par.beta);
  j["d"] = tw.to_string(par.d);
  j["is_classical"] = par.classical;
  j["is_conic_bm"] = par.conic_bm;
  return j;
}

json unital_summary_json(const unital::Unital& U, const std::map<int, long long>& profile) {
  const gf::Tower& tw = *U.tw;
  json j;
  j["q"] = tw.q;
  j["alpha"] = tw.to_string(U.par.alpha);
  j["beta"] = tw.to_string(U.par.beta);
  j["d"] = tw.to_string(U.par.d);
  j["is_classical"] = U.par.classical;
  j["is_conic_bm"] = U.par.conic_bm;
  j["points"] = U.points.size();
  j["secant_profile"] = profile_json(profile);
  return j;
}

json pedal_report_json(const unital::Unital& U, const pedal::PedalSet& P) {
  const gf::Tower& tw = *U.tw;
  json j;
  j["base"] = point_json(tw, P.base);
  json feet = json::array();
  for (const auto& F : P.feet) feet.push_back(point_json(tw, F));
  j["feet"] = feet;
  auto profile = pedal::classify(U, P);
  j["profile"] = profile_json(profile.count);
  j["is_arc"] = profile.is_arc();
  auto pen = pedal::detect_baer_pencil(U, P);
  json four = json::array();
  if (tw.odd() && pen.status == pedal::PencilResult::Status::found) {
    auto fr = pedal::four_secant_report(U, P, pen.pencil.vertex);
    for (const auto& L : fr.four_secants) four.push_back(line_json(tw, L));
  }
  j["four_secants"] = four;
  if (pen.status == pedal::PencilResult::Status::found) {
    json pj;
    pj["vertex"] = point_json(tw, pen.pencil.vertex);
    json base = json::array();
    for (const auto& B : pen.pencil.base) base.push_back(point_json(tw, B));
    pj["base"] = base;
    j["pencil"] = pj;
  } else if (pen.status == pedal::PencilResult::Status::collinear) {
    j["pencil"] = nullptr;
    j["collinear_on"] = line_json(tw, pen.line);
  } else {
    j["pencil"] = nullptr;
  }
  return j;
}

json bb_report_json(const unital::Unital& U, const pedal::PedalSet& P) {
  const gf::Tower& tw = *U.tw;
  json j;
  j["q"] = tw.q;
  j["base_point"] = point_json(tw, P.base);
  auto ts = bb::pedal_pencil_3space(tw, P);
  j["threespace_contained"] = ts.contained;
  auto prof = bb::plane_profile_KQ(tw, P);
  j["plane_histogram"] = profile_json(prof.histogram);
  j["max_plane_intersection"] = prof.max_intersection;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace bmu::report
