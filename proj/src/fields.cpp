#include "bmu/fields.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bmu::gf {

namespace {

using Poly = std::vector<std::uint8_t>;  // coefficients mod p, constant first

int deg(const Poly& f) {
  for (int i = int(f.size()) - 1; i >= 0; --i)
    if (f[i]) return i;
  return -1;
}

Poly poly_mod(Poly a, const Poly& m, int p) {
  int dm = deg(m);
  for (int i = deg(a); i >= dm; --i) {
    if (!a[i]) continue;
    int c = a[i];
    for (int j = 0; j <= dm; ++j) {
      int t = a[i - dm + j] - c * m[j] % p;
      a[i - dm + j] = std::uint8_t(((t % p) + p) % p);
    }
  }
  a.resize(dm);
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = std::uint8_t((r[i + j] + a[i] * b[j]) % p);
  }
  return poly_mod(std::move(r), m, p);
}

Poly decode(long v, int p, int len) {
  Poly f(len, 0);
  for (int i = 0; i < len; ++i) {
    f[i] = std::uint8_t(v % p);
    v /= p;
  }
  return f;
}

long encode(const Poly& f, int p) {
  long v = 0;
  for (int i = int(f.size()) - 1; i >= 0; --i) v = v * p + f[i];
  return v;
}

// remainder of a by b, schoolbook
Poly poly_rem(Poly a, const Poly& b, int p) { return poly_mod(std::move(a), b, p); }

bool divides(const Poly& d, const Poly& f, int p) {
  Poly r = poly_rem(f, d, p);
  return deg(r) < 0;
}

// trial division by all monic polynomials of degree 1..deg(f)/2
bool irreducible(const Poly& f, int p) {
  int n = deg(f);
  for (int d = 1; d <= n / 2; ++d) {
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long v = 0; v < count; ++v) {
      Poly cand = decode(v, p, d + 1);
      cand[d] = 1;
      if (divides(cand, f, p)) return false;
    }
  }
  return true;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> fs;
  for (long f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      fs.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

// GF(p) Gaussian inverse of an n x n matrix, column-major; throws if singular
std::vector<std::uint8_t> invert_matrix(std::vector<std::uint8_t> a, int n, int p) {
  auto at = [n](std::vector<std::uint8_t>& m, int r, int c) -> std::uint8_t& {
    return m[std::size_t(c) * n + r];
  };
  std::vector<std::uint8_t> inv(std::size_t(n) * n, 0);
  for (int i = 0; i < n; ++i) at(inv, i, i) = 1;
  auto inv_mod = [p](int x) {
    for (int y = 1; y < p; ++y)
      if (x * y % p == 1) return y;
    throw std::logic_error("not invertible mod p");
  };
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (at(a, r, col)) { piv = r; break; }
    if (piv < 0) throw std::logic_error("singular basis matrix");
    if (piv != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(at(a, piv, c), at(a, col, c));
        std::swap(at(inv, piv, c), at(inv, col, c));
      }
    }
    int s = inv_mod(at(a, col, col));
    for (int c = 0; c < n; ++c) {
      at(a, col, c) = std::uint8_t(at(a, col, c) * s % p);
      at(inv, col, c) = std::uint8_t(at(inv, col, c) * s % p);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || !at(a, r, col)) continue;
      int f = at(a, r, col);
      for (int c = 0; c < n; ++c) {
        at(a, r, c) = std::uint8_t(((at(a, r, c) - f * at(a, col, c)) % p + p) % p);
        at(inv, r, c) = std::uint8_t(((at(inv, r, c) - f * at(inv, col, c)) % p + p) % p);
      }
    }
  }
  return inv;
}

}  // namespace

Elem Tower::pow(Elem a, long e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  long l = (long(log_tab_[a]) * (e % (qq - 1))) % (qq - 1);
  if (l < 0) l += qq - 1;
  return alog_tab_[l];
}

bool Tower::is_square_ext(Elem a) const {
  if (p == 2 || a == 0) return true;
  return log_tab_[a] % 2 == 0;
}

bool Tower::is_square_base(Elem a) const {
  if (p == 2 || a == 0) return true;
  if (!in_base(a)) throw std::invalid_argument("is_square_base: element not in GF(q)");
  return (log_tab_[a] / (q + 1)) % 2 == 0;
}

int Tower::abs_trace(Elem a) const {
  if (p != 2) throw std::invalid_argument("abs_trace: characteristic is not 2");
  if (!in_base(a)) throw std::invalid_argument("abs_trace: element not in GF(q)");
  Elem acc = 0, t = a;
  for (int i = 0; i < h; ++i) {
    acc = add(acc, t);
    t = sqr(t);
  }
  if (acc > 1) throw std::logic_error("abs_trace: result not in GF(2)");
  return acc;
}

std::vector<int> Tower::digits(Elem x) const {
  int n = 2 * h;
  Poly coeff = decode(x, p, n);
  std::vector<int> d(n, 0);
  for (int r = 0; r < n; ++r) {
    int s = 0;
    for (int c = 0; c < n; ++c) s += basis_mat_inv_[std::size_t(c) * n + r] * coeff[c];
    d[r] = s % p;
  }
  return d;
}

Elem Tower::from_digits(const std::vector<int>& d) const {
  if (int(d.size()) != 2 * h) throw std::invalid_argument("digit vector has wrong length");
  Elem x = 0;
  for (int i = 0; i < 2 * h; ++i) {
    if (d[i] < 0 || d[i] >= p) throw std::invalid_argument("digit out of range");
    for (int k = 0; k < d[i]; ++k) x = add(x, basis_vecs_[i]);
  }
  return x;
}

std::string Tower::to_string(Elem x) const {
  auto d = digits(x);
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(d[i]);
  }
  return s;
}

Elem Tower::parse(const std::string& s) const {
  std::vector<int> d;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad field element: " + s);
    d.push_back(v);
  }
  return from_digits(d);
}

std::pair<int, int> factor_prime_power(int q) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  int p = 0;
  for (int f = 2; f * f <= q; ++f)
    if (q % f == 0) { p = f; break; }
  if (p == 0) return {q, 1};
  int h = 0, v = q;
  while (v % p == 0) v /= p, ++h;
  if (v != 1) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
  return {p, h};
}

Tower make_tower(int p, int h) {
  if (p < 2) throw std::invalid_argument("p must be a prime");
  for (int f = 2; f * f <= p; ++f)
    if (p % f == 0) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (h < 1) throw std::invalid_argument("h must be positive");
  long q = 1;
  for (int i = 0; i < h; ++i) {
    q *= p;
    if (q > kMaxQ) throw std::invalid_argument("q exceeds the supported cap of 64");
  }
  if (q < 3) throw std::invalid_argument("q = 2 is not supported (even case needs q >= 4)");

  Tower tw;
  tw.p = p;
  tw.h = h;
  tw.q = int(q);
  tw.qq = int(q * q);
  const int n = 2 * h;
  const int qq = tw.qq;

  // smallest monic irreducible of degree 2h
  long span = 1;
  for (int i = 0; i < n; ++i) span *= p;
  for (long v = 0; v < span; ++v) {
    Poly f = decode(v, p, n + 1);
    f[n] = 1;
    if (irreducible(f, p)) {
      tw.modulus = f;
      break;
    }
  }
  if (tw.modulus.empty()) throw std::logic_error("no irreducible modulus found");

  // multiplication table bootstrap via polynomial arithmetic
  auto pmul = [&](Elem a, Elem b) {
    return Elem(encode(poly_mulmod(decode(a, p, n), decode(b, p, n), tw.modulus, p), p));
  };

  // first primitive element in enumeration order
  auto fs = prime_factors(qq - 1);
  for (Elem c = 2; c < qq; ++c) {
    bool prim = true;
    for (long f : fs) {
      // c^{(qq-1)/f} by square-and-multiply over polynomials
      long e = (qq - 1) / f;
      Elem acc = 1, base = c;
      while (e) {
        if (e & 1) acc = pmul(acc, base);
        base = pmul(base, base);
        e >>= 1;
      }
      if (acc == 1) { prim = false; break; }
    }
    if (prim) { tw.zeta = c; break; }
  }
  if (tw.zeta == 0) throw std::logic_error("no primitive element found");

  tw.alog_tab_.assign(std::size_t(2) * (qq - 1), 0);
  tw.log_tab_.assign(qq, 0xFFFF);
  Elem cur = 1;
  for (int k = 0; k < qq - 1; ++k) {
    tw.alog_tab_[k] = cur;
    tw.alog_tab_[k + qq - 1] = cur;
    tw.log_tab_[cur] = std::uint16_t(k);
    cur = pmul(cur, tw.zeta);
  }
  if (cur != 1) throw std::logic_error("zeta order check failed");

  tw.neg_tab_.assign(qq, 0);
  for (int x = 0; x < qq; ++x) {
    Poly f = decode(x, p, n);
    for (auto& c : f) c = std::uint8_t((p - c) % p);
    tw.neg_tab_[x] = Elem(encode(f, p));
  }
  if (p != 2) {
    tw.add_tab_.assign(std::size_t(qq) * qq, 0);
    for (int x = 0; x < qq; ++x) {
      Poly fx = decode(x, p, n);
      for (int y = 0; y < qq; ++y) {
        Poly fy = decode(y, p, n);
        Poly s(n);
        for (int i = 0; i < n; ++i) s[i] = std::uint8_t((fx[i] + fy[i]) % p);
        tw.add_tab_[std::size_t(x) * qq + y] = Elem(encode(s, p));
      }
    }
  }

  tw.inv_tab_.assign(qq, 0);
  for (int x = 1; x < qq; ++x) tw.inv_tab_[x] = tw.alog_tab_[(qq - 1) - tw.log_tab_[x]];

  tw.frob_tab_.assign(qq, 0);
  for (int x = 1; x < qq; ++x)
    tw.frob_tab_[x] = tw.alog_tab_[(std::size_t(tw.log_tab_[x]) * tw.q) % (qq - 1)];

  tw.in_base_tab_.assign(qq, 0);
  tw.base_index_.assign(qq, -1);
  for (int x = 0; x < qq; ++x)
    if (tw.frob_tab_[x] == Elem(x)) tw.in_base_tab_[x] = 1;
  for (int x = 0; x < qq; ++x)
    if (tw.in_base_tab_[x]) {
      tw.base_index_[x] = int(tw.base_elems_.size());
      tw.base_elems_.push_back(Elem(x));
    }
  if (int(tw.base_elems_.size()) != tw.q) throw std::logic_error("subfield size mismatch");

  // distinguished basis element
  if (p != 2) {
    tw.tau = tw.pow(tw.zeta, (tw.q + 1) / 2);  // eps
    tw.aux = tw.sqr(tw.tau);                   // w
    if (tw.frob(tw.tau) != tw.neg(tw.tau)) throw std::logic_error("eps^q != -eps");
    if (!tw.in_base(tw.aux)) throw std::logic_error("w not in GF(q)");
  } else {
    for (int x = 0; x < qq; ++x) {
      Elem d = Elem(x);
      if (tw.frob(d) != tw.add(d, 1)) continue;
      Elem v = tw.add(tw.sqr(d), d);
      if (v == 1) continue;
      tw.tau = d;
      tw.aux = v;
      break;
    }
    if (tw.tau == 0) throw std::logic_error("no delta with delta^q = delta + 1 found");
    if (!tw.in_base(tw.aux)) throw std::logic_error("v not in GF(q)");
    if (tw.abs_trace(tw.aux) != 1) throw std::logic_error("T(v) != 1");
  }

  // decomposition tables: x = x0 + x1*tau
  tw.dec0_tab_.assign(qq, 0);
  tw.dec1_tab_.assign(qq, 0);
  for (int x = 0; x < qq; ++x) {
    Elem xf = tw.frob_tab_[x];
    Elem x1;
    if (p != 2) {
      x1 = tw.div(tw.sub(Elem(x), xf), tw.add(tw.tau, tw.tau));  // (x - x^q)/(2 eps)
    } else {
      x1 = tw.add(Elem(x), xf);  // delta + delta^q = 1
    }
    Elem x0 = tw.sub(Elem(x), tw.mul(x1, tw.tau));
    if (!tw.in_base(x0) || !tw.in_base(x1)) throw std::logic_error("decomposition left the subfield");
    tw.dec0_tab_[x] = x0;
    tw.dec1_tab_[x] = x1;
  }

  // reporting basis {eta^i, eta^i*tau}, eta = zeta^{q+1}
  Elem eta = tw.pow(tw.zeta, tw.q + 1);
  tw.basis_vecs_.clear();
  Elem pw = 1;
  for (int i = 0; i < h; ++i) {
    tw.basis_vecs_.push_back(pw);
    pw = tw.mul(pw, eta);
  }
  pw = 1;
  for (int i = 0; i < h; ++i) {
    tw.basis_vecs_.push_back(tw.mul(pw, tw.tau));
    pw = tw.mul(pw, eta);
  }
  std::vector<std::uint8_t> mat(std::size_t(n) * n, 0);
  for (int c = 0; c < n; ++c) {
    Poly col = decode(tw.basis_vecs_[c], p, n);
    for (int r = 0; r < n; ++r) mat[std::size_t(c) * n + r] = col[r];
  }
  tw.basis_mat_inv_ = invert_matrix(std::move(mat), n, p);

  return tw;
}

}  // namespace bmu::gf
