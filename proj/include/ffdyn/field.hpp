#pragma once

// Two-level finite-field tower  F_p <= K = F_p[x]/(g) <= F = K[y]/(h),
// with #K = q = p^m and #F = q^r.
//
// Every element carries a dense index in [0, #F): the base-p expansion of
// its m*r coordinates over F_p, inner digits being the K-coordinates and
// outer digits the powers of the tower generator y.  K therefore embeds as
// the index range [0, q), and K-coordinates of an element are plain base-q
// digits of its index.
//
// g and h are the lexicographically least monic irreducibles (coefficient
// vectors compared low-degree-first as base-p integers), found by trial
// division; construction is deterministic.  Discrete-log tables are
// precomputed when #F <= 2^16, otherwise multiplication reduces on the fly.

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ffdyn/elem_set.hpp"
#include "ffdyn/errors.hpp"

namespace ffdyn {

using Elem = std::uint32_t;

/// Symbolic iterates stay under this degree by default; past it the
/// evaluation-based criteria take over.
inline constexpr std::uint64_t kDefaultDegreeCap = std::uint64_t{1} << 12;
/// Default budget for set-calculus and enumeration loops.
inline constexpr std::uint64_t kDefaultWorkCap = std::uint64_t{1} << 28;

struct FieldOptions {
  std::uint64_t max_order = std::uint64_t{1} << 24;
  /// Permit r = 1 (F = K); used by cross-check harnesses on prime fields.
  bool allow_r1 = false;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::vector<std::uint32_t> divisors_of(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

}  // namespace detail

class Field {
 public:
  Field(std::uint32_t p, std::uint32_t m, std::uint32_t r,
        FieldOptions opts = {})
      : p_(p), m_(m), r_(r) {
    if (!detail::is_prime(p)) throw DomainError("p is not prime");
    require(m >= 1, "extension degree m must be >= 1");
    if (r < 1 || (r == 1 && !opts.allow_r1))
      throw DomainError("r must be >= 2 (r = 1 only behind allow_r1)");
    static constexpr std::uint64_t kHardMax = std::uint64_t{1} << 26;
    std::uint64_t cap = std::min<std::uint64_t>(opts.max_order, kHardMax);
    q_ = checked_pow(p_, m_, cap);
    order_ = checked_pow(q_, r_, cap);
    n_digits_ = m_ * r_;

    find_inner_modulus();
    if (m_ >= 2 && q_ <= (std::uint64_t{1} << 16)) build_k_tables();
    find_outer_modulus();
    hneg_.resize(r_);
    for (std::uint32_t j = 0; j < r_; ++j) hneg_[j] = kneg(h_[j]);
    if (order_ <= (std::uint64_t{1} << 16)) build_f_tables();
    if (fgen_ == 0 && order_ > 2) fgen_ = find_generator();
    if (order_ == 2) fgen_ = 1;
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t m() const { return m_; }
  std::uint32_t r() const { return r_; }
  std::uint64_t q() const { return q_; }
  std::uint64_t order() const { return order_; }
  std::string spec() const {
    return std::to_string(p_) + "^" + std::to_string(m_) + "^" +
           std::to_string(r_);
  }

  /// Inner modulus g: monic over F_p, coefficients low degree first.
  const std::vector<std::uint32_t>& inner_modulus() const { return g_; }
  /// Outer modulus h: monic over K, coefficients are K-indices.
  const std::vector<Elem>& outer_modulus() const { return h_; }

  // ---- element arithmetic -------------------------------------------------

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    Elem out = 0;
    std::uint32_t scale = 1;
    for (std::uint32_t i = 0; i < n_digits_; ++i) {
      std::uint32_t d = a % p_ + b % p_;
      if (d >= p_) d -= p_;
      out += d * scale;
      scale *= p_;
      a /= p_;
      b /= p_;
    }
    return out;
  }

  Elem neg(Elem a) const {
    if (p_ == 2) return a;
    Elem out = 0;
    std::uint32_t scale = 1;
    for (std::uint32_t i = 0; i < n_digits_; ++i) {
      std::uint32_t d = a % p_;
      out += (d ? p_ - d : 0) * scale;
      scale *= p_;
      a /= p_;
    }
    return out;
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (!fexp_.empty()) {
      std::uint64_t s =
          static_cast<std::uint64_t>(flog_[a]) + flog_[b];
      if (s >= order_ - 1) s -= order_ - 1;
      return fexp_[s];
    }
    return mul_raw(a, b);
  }

  Elem inv(Elem a) const {
    require(a != 0, "division by zero");
    if (!fexp_.empty()) {
      std::uint64_t l = flog_[a];
      return fexp_[l == 0 ? 0 : order_ - 1 - l];
    }
    return pow_raw(a, order_ - 2);
  }

  Elem div(Elem a, Elem b) const {
    require(b != 0, "division by zero");
    if (a == 0) return 0;
    if (!fexp_.empty()) {
      std::uint64_t s = flog_[a] + (order_ - 1) - flog_[b];
      if (s >= order_ - 1) s -= order_ - 1;
      return fexp_[s];
    }
    return mul_raw(a, inv(b));
  }

  /// a^e with the convention pow(a, 0) = 1 (including a = 0).
  Elem pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (!fexp_.empty()) {
      std::uint64_t s = (flog_[a] * (e % (order_ - 1))) % (order_ - 1);
      return fexp_[s];
    }
    return pow_raw(a, e);
  }

  /// a^(p^e), by exponent reduction mod the Frobenius order m*r.
  Elem frobenius(Elem a, std::uint32_t e) const {
    std::uint32_t er = e % n_digits_;
    std::uint64_t exp = 1;
    for (std::uint32_t i = 0; i < er; ++i) exp *= p_;
    return pow(a, exp);
  }

  // ---- subfield lattice ---------------------------------------------------

  std::vector<std::uint32_t> subfield_degrees() const {
    return detail::divisors_of(n_digits_);
  }

  /// a in F_{p^d}, decided by the fixed-point test a^(p^d) = a.
  bool in_subfield(Elem a, std::uint32_t d) const {
    require(d >= 1 && n_digits_ % d == 0, "d does not divide m*r");
    return frobenius(a, d) == a;
  }

  /// {a : a^(p^d) = a}, cardinality exactly p^d.
  ElemSet subfield(std::uint32_t d) const {
    require(d >= 1 && n_digits_ % d == 0, "d does not divide m*r");
    ElemSet s(order_);
    if (d == n_digits_) {
      for (std::uint64_t a = 0; a < order_; ++a)
        s.add(static_cast<Elem>(a));
      return s;
    }
    std::uint64_t sub_sz = 1;
    for (std::uint32_t i = 0; i < d; ++i) sub_sz *= p_;
    // F_{p^d}^* is the unique multiplicative subgroup of order p^d - 1.
    std::uint64_t step = (order_ - 1) / (sub_sz - 1);
    s.add(0);
    Elem g = pow(fgen_, step);
    Elem cur = 1;
    for (std::uint64_t i = 0; i + 1 < sub_sz; ++i) {
      s.add(cur);
      cur = mul(cur, g);
    }
    check_invariant(s.card() == sub_sz, "subfield cardinality != p^d");
    return s;
  }

  // ---- tower structure ----------------------------------------------------

  /// K-coordinates of a in the basis 1, y, ..., y^(r-1); entries are
  /// K-indices, which are themselves elements of F below q.
  std::vector<Elem> coords(Elem a) const {
    std::vector<Elem> c(r_);
    for (std::uint32_t j = 0; j < r_; ++j) {
      c[j] = static_cast<Elem>(a % q_);
      a = static_cast<Elem>(a / q_);
    }
    return c;
  }

  Elem from_coords(const std::vector<Elem>& c) const {
    require(c.size() == r_, "coordinate vector has wrong length");
    std::uint64_t out = 0;
    for (std::uint32_t j = r_; j-- > 0;) {
      require(c[j] < q_, "coordinate is not a K-index");
      out = out * q_ + c[j];
    }
    return static_cast<Elem>(out);
  }

  /// The class of y, requires r >= 2.
  Elem tower_gen() const {
    require(r_ >= 2, "tower generator needs r >= 2");
    return static_cast<Elem>(q_);
  }

  Elem multiplicative_generator() const { return fgen_; }

  // ---- literals -----------------------------------------------------------

  /// Base-p digit string of length m*r, most significant digit first.
  /// For p > 10 the digits are decimal numbers joined by '-'.
  std::string to_literal(Elem a) const {
    require(a < order_, "element index outside the field");
    std::vector<std::uint32_t> digits(n_digits_);
    for (std::uint32_t i = 0; i < n_digits_; ++i) {
      digits[i] = a % p_;
      a /= p_;
    }
    std::string out;
    if (p_ <= 10) {
      for (std::uint32_t i = n_digits_; i-- > 0;)
        out.push_back(static_cast<char>('0' + digits[i]));
    } else {
      for (std::uint32_t i = n_digits_; i-- > 0;) {
        if (!out.empty()) out.push_back('-');
        out += std::to_string(digits[i]);
      }
    }
    return out;
  }

  /// Accepts the digit-string form above or a decimal dense index.  An
  /// all-digit string of length exactly m*r with every digit < p is read as
  /// a digit string; anything else numeric is read as a decimal index.
  Elem from_literal(const std::string& s) const {
    if (s.empty()) throw ParseError("empty element literal");
    bool all_digits = true;
    for (char c : s)
      if (c < '0' || c > '9') all_digits = false;
    if (p_ <= 10 && all_digits && s.size() == n_digits_) {
      std::uint64_t v = 0;
      for (char c : s) {
        std::uint32_t d = static_cast<std::uint32_t>(c - '0');
        if (d >= p_) throw ParseError("literal digit >= p");
        v = v * p_ + d;
      }
      return static_cast<Elem>(v);
    }
    if (s.find('-') != std::string::npos) {
      std::uint64_t v = 0;
      std::uint32_t groups = 0;
      std::size_t pos = 0;
      while (pos <= s.size()) {
        std::size_t dash = s.find('-', pos);
        std::string part = s.substr(
            pos, dash == std::string::npos ? std::string::npos : dash - pos);
        if (part.empty()) throw ParseError("malformed element literal");
        std::uint64_t d = parse_u64(part);
        if (d >= p_) throw ParseError("literal digit >= p");
        v = v * p_ + d;
        ++groups;
        if (dash == std::string::npos) break;
        pos = dash + 1;
      }
      if (groups != n_digits_)
        throw ParseError("literal has wrong number of digits");
      return static_cast<Elem>(v);
    }
    if (!all_digits) throw ParseError("malformed element literal");
    std::uint64_t v = parse_u64(s);
    if (v >= order_) throw ParseError("element index out of range");
    return static_cast<Elem>(v);
  }

  // K arithmetic on K-indices; public because the raw (table-free) routines
  // are occasionally useful for cross-checks.
  Elem kadd(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (m_ == 1) {
      std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    Elem out = 0;
    std::uint32_t scale = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
      std::uint32_t d = a % p_ + b % p_;
      if (d >= p_) d -= p_;
      out += d * scale;
      scale *= p_;
      a /= p_;
      b /= p_;
    }
    return out;
  }

  Elem kneg(Elem a) const {
    if (p_ == 2) return a;
    if (m_ == 1) return a ? p_ - a : 0;
    Elem out = 0;
    std::uint32_t scale = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
      std::uint32_t d = a % p_;
      out += (d ? p_ - d : 0) * scale;
      scale *= p_;
      a /= p_;
    }
    return out;
  }

  Elem kmul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (m_ == 1)
      return static_cast<Elem>(std::uint64_t(a) * b % p_);
    if (!kexp_.empty()) {
      std::uint64_t s = static_cast<std::uint64_t>(klog_[a]) + klog_[b];
      if (s >= q_ - 1) s -= q_ - 1;
      return kexp_[s];
    }
    return kmul_raw(a, b);
  }

 private:
  static std::uint64_t parse_u64(const std::string& s) {
    std::uint64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw ParseError("malformed number");
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
      if (v > (std::uint64_t{1} << 40)) throw ParseError("number too large");
    }
    return v;
  }

  static std::uint64_t checked_pow(std::uint64_t b, std::uint32_t e,
                                   std::uint64_t cap) {
    std::uint64_t out = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      if (out > cap / b) throw DomainError("field size exceeds the cap");
      out *= b;
    }
    if (out > cap) throw DomainError("field size exceeds the cap");
    return out;
  }

  // ---- K internals --------------------------------------------------------

  Elem kmul_raw(Elem a, Elem b) const {
    std::array<std::uint64_t, 64> buf{};
    std::array<std::uint32_t, 32> da{}, db{};
    for (std::uint32_t i = 0; i < m_; ++i) {
      da[i] = a % p_;
      a /= p_;
      db[i] = b % p_;
      b /= p_;
    }
    for (std::uint32_t i = 0; i < m_; ++i) {
      if (!da[i]) continue;
      for (std::uint32_t j = 0; j < m_; ++j)
        buf[i + j] += std::uint64_t(da[i]) * db[j];
    }
    for (std::uint32_t i = 2 * m_ - 2; i >= m_; --i) {
      std::uint64_t c = buf[i] % p_;
      if (c) {
        // subtract c * g * x^(i-m), working with nonnegative residues
        for (std::uint32_t j = 0; j < m_; ++j)
          buf[i - m_ + j] += c * ((p_ - g_[j]) % p_);
      }
      if (i == m_) break;
    }
    Elem out = 0;
    std::uint32_t scale = 1;
    for (std::uint32_t j = 0; j < m_; ++j) {
      out += static_cast<Elem>(buf[j] % p_) * scale;
      scale *= p_;
    }
    return out;
  }

  Elem kpow_raw(Elem a, std::uint64_t e) const {
    Elem out = 1, base = a;
    while (e) {
      if (e & 1) out = kmul_raw(out, base);
      base = kmul_raw(base, base);
      e >>= 1;
    }
    return out;
  }

  void build_k_tables() {
    auto factors = detail::prime_factors(q_ - 1);
    for (Elem cand = 2; cand < q_; ++cand) {
      bool ok = true;
      for (auto f : factors)
        if (kpow_raw(cand, (q_ - 1) / f) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        kgen_ = cand;
        break;
      }
    }
    check_invariant(kgen_ != 0, "no generator of K^* found");
    kexp_.resize(q_ - 1);
    klog_.assign(q_, 0);
    Elem cur = 1;
    for (std::uint64_t i = 0; i + 1 < q_; ++i) {
      kexp_[i] = cur;
      klog_[cur] = static_cast<std::uint32_t>(i);
      cur = kmul_raw(cur, kgen_);
    }
    check_invariant(cur == 1, "K generator order mismatch");
  }

  // Remainder of a monic division over F_p; a is consumed.
  static void fp_rem(std::vector<std::uint32_t>& a,
                     const std::vector<std::uint32_t>& div, std::uint32_t p) {
    std::size_t db = div.size() - 1;
    while (a.size() > db) {
      std::uint32_t c = a.back();
      std::size_t shift = a.size() - 1 - db;
      if (c) {
        for (std::size_t j = 0; j < db; ++j)
          a[shift + j] =
              (a[shift + j] + (p - c % p) * div[j]) % p;
      }
      a.pop_back();
      while (a.size() > db && a.back() == 0) a.pop_back();
      if (a.size() <= db) break;
    }
  }

  bool fp_is_irreducible(const std::vector<std::uint32_t>& f) const {
    std::uint32_t deg = static_cast<std::uint32_t>(f.size()) - 1;
    if (deg == 1) return true;
    std::vector<std::uint32_t> div, rem;
    for (std::uint32_t t = 1; 2 * t <= deg; ++t) {
      std::uint64_t count = 1;
      for (std::uint32_t i = 0; i < t; ++i) count *= p_;
      for (std::uint64_t code = 0; code < count; ++code) {
        div.assign(t + 1, 0);
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < t; ++i) {
          div[i] = static_cast<std::uint32_t>(c % p_);
          c /= p_;
        }
        div[t] = 1;
        rem = f;
        fp_rem(rem, div, p_);
        bool zero = true;
        for (auto x : rem)
          if (x) zero = false;
        if (zero) return false;
      }
    }
    return true;
  }

  void find_inner_modulus() {
    if (m_ == 1) {
      g_ = {0, 1};  // x
      return;
    }
    std::uint64_t count = q_;  // p^m coefficient vectors
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<std::uint32_t> cand(m_ + 1, 0);
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < m_; ++i) {
        cand[i] = static_cast<std::uint32_t>(c % p_);
        c /= p_;
      }
      cand[m_] = 1;
      if (fp_is_irreducible(cand)) {
        g_ = cand;
        return;
      }
    }
    check_invariant(false, "no irreducible inner modulus found");
  }

  // Remainder of a monic division over K; a is consumed.
  void kx_rem(std::vector<Elem>& a, const std::vector<Elem>& div) const {
    std::size_t db = div.size() - 1;
    while (a.size() > db) {
      Elem c = a.back();
      std::size_t shift = a.size() - 1 - db;
      if (c) {
        for (std::size_t j = 0; j < db; ++j)
          a[shift + j] = kadd(a[shift + j], kneg(kmul(c, div[j])));
      }
      a.pop_back();
      while (a.size() > db && a.back() == 0) a.pop_back();
      if (a.size() <= db) break;
    }
  }

  bool kx_is_irreducible(const std::vector<Elem>& f) const {
    std::uint32_t deg = static_cast<std::uint32_t>(f.size()) - 1;
    if (deg == 1) return true;
    std::vector<Elem> div, rem;
    for (std::uint32_t t = 1; 2 * t <= deg; ++t) {
      std::uint64_t count = 1;
      for (std::uint32_t i = 0; i < t; ++i) count *= q_;
      for (std::uint64_t code = 0; code < count; ++code) {
        div.assign(t + 1, 0);
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < t; ++i) {
          div[i] = static_cast<Elem>(c % q_);
          c /= q_;
        }
        div[t] = 1;
        rem = f;
        kx_rem(rem, div);
        bool zero = true;
        for (auto x : rem)
          if (x) zero = false;
        if (zero) return false;
      }
    }
    return true;
  }

  void find_outer_modulus() {
    if (r_ == 1) {
      h_ = {0, 1};  // y
      return;
    }
    for (std::uint64_t code = 0; code < order_; ++code) {
      std::vector<Elem> cand(r_ + 1, 0);
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < r_; ++i) {
        cand[i] = static_cast<Elem>(c % q_);
        c /= q_;
      }
      cand[r_] = 1;
      if (kx_is_irreducible(cand)) {
        h_ = cand;
        return;
      }
    }
    check_invariant(false, "no irreducible outer modulus found");
  }

  // ---- F internals --------------------------------------------------------

  Elem mul_raw(Elem a, Elem b) const {
    std::array<Elem, 64> buf{};
    std::array<Elem, 32> ka{}, kb{};
    for (std::uint32_t j = 0; j < r_; ++j) {
      ka[j] = static_cast<Elem>(a % q_);
      a = static_cast<Elem>(a / q_);
      kb[j] = static_cast<Elem>(b % q_);
      b = static_cast<Elem>(b / q_);
    }
    for (std::uint32_t i = 0; i < r_; ++i) {
      if (!ka[i]) continue;
      for (std::uint32_t j = 0; j < r_; ++j) {
        if (!kb[j]) continue;
        buf[i + j] = kadd(buf[i + j], kmul(ka[i], kb[j]));
      }
    }
    if (r_ >= 2) {
      for (std::uint32_t i = 2 * r_ - 2; i >= r_; --i) {
        Elem c = buf[i];
        if (c) {
          for (std::uint32_t j = 0; j < r_; ++j)
            buf[i - r_ + j] = kadd(buf[i - r_ + j], kmul(c, hneg_[j]));
        }
        if (i == r_) break;
      }
    }
    std::uint64_t out = 0;
    for (std::uint32_t j = r_; j-- > 0;) out = out * q_ + buf[j];
    return static_cast<Elem>(out);
  }

  Elem pow_raw(Elem a, std::uint64_t e) const {
    Elem out = 1, base = a;
    while (e) {
      if (e & 1) out = mul_raw(out, base);
      base = mul_raw(base, base);
      e >>= 1;
    }
    return out;
  }

  Elem find_generator() const {
    auto factors = detail::prime_factors(order_ - 1);
    for (Elem cand = 2; cand < order_; ++cand) {
      bool ok = true;
      for (auto f : factors) {
        Elem v = fexp_.empty() ? pow_raw(cand, (order_ - 1) / f)
                               : pow(cand, (order_ - 1) / f);
        if (v == 1) {
          ok = false;
          break;
        }
      }
      if (ok) return cand;
    }
    check_invariant(false, "no generator of F^* found");
    return 0;
  }

  void build_f_tables() {
    auto factors = detail::prime_factors(order_ - 1);
    for (Elem cand = 2; cand < order_; ++cand) {
      bool ok = true;
      for (auto f : factors)
        if (pow_raw(cand, (order_ - 1) / f) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        fgen_ = cand;
        break;
      }
    }
    if (order_ == 2) fgen_ = 1;
    check_invariant(fgen_ != 0, "no generator of F^* found");
    fexp_.resize(order_ - 1);
    flog_.assign(order_, 0);
    Elem cur = 1;
    for (std::uint64_t i = 0; i + 1 < order_; ++i) {
      fexp_[i] = cur;
      flog_[cur] = static_cast<std::uint32_t>(i);
      cur = mul_raw(cur, fgen_);
    }
    check_invariant(cur == 1, "F generator order mismatch");
  }

  std::uint32_t p_, m_, r_;
  std::uint64_t q_ = 0, order_ = 0;
  std::uint32_t n_digits_ = 0;
  std::vector<std::uint32_t> g_;
  std::vector<Elem> h_, hneg_;
  std::vector<Elem> kexp_;
  std::vector<std::uint32_t> klog_;
  Elem kgen_ = 0;
  std::vector<Elem> fexp_;
  std::vector<std::uint32_t> flog_;
  Elem fgen_ = 0;
};

}  // namespace ffdyn
