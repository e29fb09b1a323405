#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bmu::gf {

// A field element of GF(q^2), encoded as the base-p integer of its
// coefficient vector modulo the tower's fixed irreducible polynomial.
// Elements of GF(q) are exactly the Frobenius-fixed values.
using Elem = std::uint16_t;

constexpr int kMaxQ = 64;

// The pair GF(q) < GF(q^2) together with the distinguished elements the
// coordinates of orthogonal BM unitals are written in:
//   q odd : zeta primitive in GF(q^2), eps = zeta^{(q+1)/2}, w = eps^2,
//           basis {1, eps}, eps^q = -eps, w primitive in GF(q).
//   q even: delta with delta^q = 1 + delta, v = delta^2 + delta in GF(q),
//           v != 1, absolute trace T(v) = 1, basis {1, delta}.
// Immutable after construction; all operations are pure table lookups.
struct Tower {
  int p = 0;
  int h = 0;
  int q = 0;   // p^h
  int qq = 0;  // q^2

  std::vector<std::uint8_t> modulus;  // degree 2h, constant term first, monic

  Elem zeta = 0;  // primitive element of GF(q^2)
  Elem tau = 0;   // eps (q odd) or delta (q even)
  Elem aux = 0;   // w = eps^2 (q odd) or v = delta^2 + delta (q even)

  bool odd() const { return p != 2; }

  Elem add(Elem a, Elem b) const {
    return p == 2 ? Elem(a ^ b) : add_tab_[std::size_t(a) * qq + b];
  }
  Elem neg(Elem a) const { return p == 2 ? a : neg_tab_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return alog_tab_[std::size_t(log_tab_[a]) + log_tab_[b]];
  }
  Elem sqr(Elem a) const { return mul(a, a); }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return inv_tab_[a];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, long e) const;

  // x -> x^q
  Elem frob(Elem a) const { return frob_tab_[a]; }
  // x -> x^{q+1}, always lands in GF(q)
  Elem norm(Elem a) const { return mul(a, frob_tab_[a]); }

  bool in_base(Elem a) const { return in_base_tab_[a] != 0; }
  const std::vector<Elem>& base_elems() const { return base_elems_; }
  // position of a subfield element in base_elems(), -1 otherwise
  int base_index(Elem a) const { return base_index_[a]; }

  // quadratic character; 0 counts as a square, every element of a
  // characteristic-2 field is a square
  bool is_square_ext(Elem a) const;
  bool is_square_base(Elem a) const;

  // absolute trace GF(q) -> GF(2), q = 2^h only
  int abs_trace(Elem a) const;

  // x = x0 + x1*tau with x0, x1 in GF(q); unique
  std::pair<Elem, Elem> decompose(Elem x) const {
    return {dec0_tab_[x], dec1_tab_[x]};
  }
  Elem compose(Elem x0, Elem x1) const { return add(x0, mul(x1, tau)); }

  // GF(p) digit vector of length 2h in the reporting basis
  // {eta^i} u {eta^i * tau}, eta = zeta^{q+1}; "1,2" = 1 + 2*tau when h = 1
  std::vector<int> digits(Elem x) const;
  Elem from_digits(const std::vector<int>& d) const;
  std::string to_string(Elem x) const;
  Elem parse(const std::string& s) const;

  // --- construction internals ---
  std::vector<Elem> add_tab_;
  std::vector<Elem> neg_tab_;
  std::vector<std::uint16_t> log_tab_;
  std::vector<Elem> alog_tab_;
  std::vector<Elem> inv_tab_;
  std::vector<Elem> frob_tab_;
  std::vector<Elem> dec0_tab_, dec1_tab_;
  std::vector<std::uint8_t> in_base_tab_;
  std::vector<int> base_index_;
  std::vector<Elem> base_elems_;
  std::vector<std::uint8_t> basis_mat_inv_;  // (2h)^2, GF(p), digit extraction
  std::vector<Elem> basis_vecs_;             // the 2h basis elements
};

// Deterministic for fixed (p, h): modulus is the monic irreducible of
// degree 2h with the smallest integer encoding, zeta the first primitive
// element in enumeration order, delta the first valid candidate.
// Rejects p non-prime, q < 3, q > kMaxQ.
Tower make_tower(int p, int h);

// splits q into (p, h); throws if q is not a prime power
std::pair<int, int> factor_prime_power(int q);

}  // namespace bmu::gf
