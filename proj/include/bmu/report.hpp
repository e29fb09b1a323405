#pragma once

#include <string>

#include "bmu/bruckbose.hpp"
#include "bmu/fields.hpp"
#include "bmu/pedal.hpp"
#include "bmu/plane.hpp"
#include "bmu/unital.hpp"
#include "json.hpp"

namespace bmu::report {

using json = nlohmann::ordered_json;

// field elements serialize as GF(p)-digit vectors in the tower basis
// ("1,2" means 1 + 2*eps when h = 1)
json tower_json(const gf::Tower& tw);
json point_json(const gf::Tower& tw, const plane::Point& P);
json line_json(const gf::Tower& tw, const plane::Line& L);
json bbpoint_json(const gf::Tower& tw, const bb::BBPoint& P);
json params_json(const gf::Tower& tw, const unital::Params& par);

template <class Map>
json profile_json(const Map& m) {
  json j = json::object();
  for (const auto& [size, count] : m) j[std::to_string(size)] = count;
  return j;
}

// {q, alpha, beta, d, is_classical, is_conic_bm, secant_profile}
json unital_summary_json(const unital::Unital& U, const std::map<int, long long>& profile);

// {base, feet[], profile{}, is_arc, four_secants[], pencil{vertex, base[]}}
json pedal_report_json(const unital::Unital& U, const pedal::PedalSet& P);

// {q, base_point, threespace_contained, plane_histogram, max_plane_intersection}
json bb_report_json(const unital::Unital& U, const pedal::PedalSet& P);

// throws std::runtime_error when the path cannot be written
void write_text(const std::string& path, const std::string& text);

}  // namespace bmu::report
