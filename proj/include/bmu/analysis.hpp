#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bmu/pedal.hpp"
#include "bmu/plane.hpp"
#include "bmu/report.hpp"
#include "bmu/unital.hpp"

namespace bmu::analysis {

using gf::Tower;
using report::json;

// deterministic, implementation-independent sampling
struct Rng {
  std::uint64_t s[4];
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  std::uint64_t bounded(std::uint64_t n);  // unbiased, [0, n)
};

// k distinct indices from [0, n), sorted ascending
std::vector<int> sample_indices(Rng& rng, int n, int k);

// base-point scope for a suite: exhaustive or a seeded sample per unital
struct Scope {
  bool exhaustive = true;
  int sample_bases = 0;
  std::uint64_t seed = 0;
};

struct Report {
  bool pass = false;
  json doc;
  std::string csv;  // filled when with_csv was requested
};

// Theorem: pedal sets of a non-classical odd-q unital lie on a Baer pencil
// with vertex on l_inf; alpha nonsquare => arc, alpha nonzero square =>
// sizes in {0,1,2,4} with every 4-secant through the vertex and at least
// (q-3)/4 of them.
Report verify_theorem_19(const Tower& tw, Scope sc, bool with_csv = false);

// Even q >= 4: every pedal set is an arc and lies on a Baer pencil with
// vertex on l_inf.
Report verify_theorem_24(const Tower& tw, Scope sc, bool with_csv = false);

// beta in GF(q) (odd q): validity forces alpha nonsquare, and every pedal
// set is an arc; also checks that valid pairs with alpha nonsquare and
// beta outside GF(q) exist.
Report verify_conic_bm(const Tower& tw, Scope sc, bool with_csv = false);

// Per-s census for the feet of R1: |C cap D_s| by direct intersection, by
// the degenerate-pencil-member route, and by counting feet on U_inf E_{s-eps};
// runs over every valid non-classical pair of the tower.
Report verify_lemma18_census(const Tower& tw, bool with_csv = false);
// single-pair version (the per-operation surface)
json lemma18_census_pair(const Tower& tw, const unital::Params& par,
                         bool* agree_out = nullptr);

// feet of P collinear iff P lies on l_inf (non-classical unitals)
Report verify_result3(const Tower& tw, bool with_csv = false);

// |pedal(Q) cap Baer subplane| <= 4 probe; exhaustive subplane enumeration
// when sample_subplanes == 0, otherwise seeded random subplanes
struct SubplaneScope {
  int sample_subplanes = 0;  // 0 = exhaustive
  int sample_bases = 0;      // 0 = exhaustive
  int sample_unitals = 0;    // 0 = all
  std::uint64_t seed = 0;
};
Report probe_baer_subplane(const Tower& tw, SubplaneScope sc, bool with_csv = false);

// Bruck-Bose checks: pedal images lie in a 3-space, plane profile within
// {0..4}, spread partition/regularity, quadric-cone fit (q <= 4)
Report verify_bruckbose(const Tower& tw, Scope sc, bool with_csv = false);

}  // namespace bmu::analysis
