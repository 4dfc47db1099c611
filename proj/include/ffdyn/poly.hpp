#pragma once

// Univariate polynomials over F: evaluation, composition, iteration,
// orbit/cycle structure, difference polynomials, subfield-of-definition
// tests and value sets.  Coefficients are stored low degree first with no
// trailing zeros; the zero polynomial has an empty coefficient vector and
// degree -1.

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "ffdyn/elem_set.hpp"
#include "ffdyn/errors.hpp"
#include "ffdyn/field.hpp"

namespace ffdyn {

struct Poly {
  std::vector<Elem> c;  // low degree first, normalized

  Poly() = default;
  explicit Poly(std::vector<Elem> coeffs) : c(std::move(coeffs)) {
    normalize();
  }

  static Poly x() { return Poly({0, 1}); }
  static Poly constant(Elem v) { return Poly({v}); }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  Elem coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
  Elem lead() const { return c.empty() ? 0 : c.back(); }

  void normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  bool operator==(const Poly& o) const { return c == o.c; }
};

inline Elem poly_eval(const Field& F, const Poly& f, Elem x) {
  Elem acc = 0;
  for (std::size_t i = f.c.size(); i-- > 0;)
    acc = F.add(F.mul(acc, x), f.c[i]);
  return acc;
}

inline Poly poly_add(const Field& F, const Poly& a, const Poly& b) {
  std::vector<Elem> out(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = F.add(a.coeff(i), b.coeff(i));
  return Poly(std::move(out));
}

inline Poly poly_sub(const Field& F, const Poly& a, const Poly& b) {
  std::vector<Elem> out(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = F.sub(a.coeff(i), b.coeff(i));
  return Poly(std::move(out));
}

inline Poly poly_scale(const Field& F, Elem s, const Poly& a) {
  std::vector<Elem> out(a.c.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.mul(s, a.c[i]);
  return Poly(std::move(out));
}

inline Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (F.p() == 2 && a.c == b.c) {
    // char-2 squaring is coefficient-wise: (sum a_i X^i)^2 = sum a_i^2 X^2i
    std::vector<Elem> out(2 * a.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
      out[2 * i] = F.mul(a.c[i], a.c[i]);
    return Poly(std::move(out));
  }
  std::vector<Elem> out(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (!a.c[i]) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      out[i + j] = F.add(out[i + j], F.mul(a.c[i], b.c[j]));
  }
  return Poly(std::move(out));
}

/// f(g(X)).  Degree product above the cap signals the caller to fall back
/// to evaluation-based tests.  Powers of g are built by repeated squaring,
/// so in characteristic 2 the even powers cost linear time.
inline Poly poly_compose(const Field& F, const Poly& f, const Poly& g,
                         std::uint64_t degree_cap = kDefaultDegreeCap) {
  if (f.degree() <= 0) return f;
  std::uint64_t df = static_cast<std::uint64_t>(f.degree());
  std::uint64_t dg = static_cast<std::uint64_t>(std::max(g.degree(), 0));
  if (dg > 0 && df > degree_cap / dg)
    throw CapError("composition degree exceeds the cap");
  std::vector<Poly> power(df + 1);
  power[0] = Poly::constant(1);
  if (df >= 1) power[1] = g;
  for (std::uint64_t i = 2; i <= df; ++i)
    power[i] = (i % 2 == 0) ? poly_mul(F, power[i / 2], power[i / 2])
                            : poly_mul(F, power[i - 1], g);
  Poly acc = Poly::constant(f.c[0]);
  for (std::uint64_t i = 1; i <= df; ++i)
    if (f.c[i]) acc = poly_add(F, acc, poly_scale(F, f.c[i], power[i]));
  return acc;
}

/// The k-th iterate f^(k) as a polynomial; f^(0) = X.
inline Poly poly_iterate(const Field& F, const Poly& f, std::uint64_t k,
                         std::uint64_t degree_cap = kDefaultDegreeCap) {
  Poly acc = Poly::x();
  for (std::uint64_t i = 0; i < k; ++i)
    acc = poly_compose(F, f, acc, degree_cap);
  return acc;
}

/// f^(n)(u) by n-fold evaluation; iterate(f, u, 0) = u.
inline Elem iterate(const Field& F, const Poly& f, Elem u, std::uint64_t n) {
  Elem x = u;
  for (std::uint64_t i = 0; i < n; ++i) x = poly_eval(F, f, x);
  return x;
}

struct OrbitSummary {
  std::uint32_t tail_len = 0;
  std::uint32_t cycle_len = 0;
  std::vector<Elem> elements;  // f^(0)(u), ..., f^(T_u - 1)(u)

  std::uint64_t size() const { return elements.size(); }  // T_u
};

/// Tail/cycle structure of the forward orbit of u, found by storing
/// first-visit times (the fields are small enough to enumerate).
inline OrbitSummary orbit(const Field& F, const Poly& f, Elem u) {
  OrbitSummary out;
  std::unordered_map<Elem, std::uint32_t> first_visit;
  Elem x = u;
  for (;;) {
    auto it = first_visit.find(x);
    if (it != first_visit.end()) {
      out.tail_len = it->second;
      out.cycle_len = static_cast<std::uint32_t>(out.elements.size()) -
                      it->second;
      break;
    }
    first_visit.emplace(x, static_cast<std::uint32_t>(out.elements.size()));
    out.elements.push_back(x);
    x = poly_eval(F, f, x);
  }
  check_invariant(out.elements.size() <= F.order(), "orbit longer than #F");
  check_invariant(
      poly_eval(F, f, out.elements.back()) == out.elements[out.tail_len],
      "orbit successor does not re-enter at the tail");
  return out;
}

/// g(X) = f(X+t) - f(X); requires 2 <= deg f < p and t != 0, under which
/// deg g = deg f - 1.
inline Poly difference_poly(const Field& F, const Poly& f, Elem t) {
  require(t != 0, "difference polynomial needs t != 0");
  int d = f.degree();
  require(d >= 2, "difference polynomial needs deg f >= 2");
  require(static_cast<std::uint64_t>(d) < F.p(),
          "difference polynomial needs deg f < p");
  Poly shifted = poly_compose(F, f, Poly({t, 1}),
                              static_cast<std::uint64_t>(d) + 1);
  Poly g = poly_sub(F, shifted, f);
  check_invariant(g.degree() == d - 1, "deg(f(X+t) - f(X)) != deg f - 1");
  return g;
}

/// True iff every coefficient lies in F_{p^d}.
inline bool poly_over_subfield(const Field& F, const Poly& f,
                               std::uint32_t d) {
  for (Elem c : f.c)
    if (!F.in_subfield(c, d)) return false;
  return true;
}

/// The value set f(A).  The fiber bound #f(A) * deg f >= #A is checked.
inline ElemSet image_set(const Field& F, const Poly& f, const ElemSet& A) {
  ElemSet out(F.order());
  A.for_each([&](Elem a) { out.add(poly_eval(F, f, a)); });
  if (f.degree() >= 1)
    check_invariant(out.card() * static_cast<std::uint64_t>(f.degree()) >=
                        A.card(),
                    "value set smaller than the fiber bound allows");
  return out;
}

/// Sparse multivariate polynomial in up to three variables.
struct MultiPoly {
  std::uint32_t arity = 0;
  std::map<std::array<std::uint32_t, 3>, Elem> terms;  // exponents -> coeff

  void set(std::array<std::uint32_t, 3> e, Elem coeff) {
    if (coeff)
      terms[e] = coeff;
    else
      terms.erase(e);
  }
};

inline Elem multi_eval(const Field& F, const MultiPoly& f,
                       const std::array<Elem, 3>& x) {
  Elem acc = 0;
  for (const auto& [e, coeff] : f.terms) {
    Elem t = coeff;
    for (std::uint32_t v = 0; v < f.arity; ++v) t = F.mul(t, F.pow(x[v], e[v]));
    acc = F.add(acc, t);
  }
  return acc;
}

/// Image of F over the Cartesian product of the given sets (arity <= 3).
inline ElemSet image_multi(const Field& F, const MultiPoly& f,
                           const std::vector<ElemSet>& sets,
                           std::uint64_t work_cap = kDefaultWorkCap) {
  require(f.arity >= 1 && f.arity <= 3, "arity must be 1..3");
  require(sets.size() == f.arity, "need one set per variable");
  std::uint64_t work = 1;
  for (const auto& s : sets) {
    if (s.card() != 0 && work > work_cap / s.card())
      throw CapError("multivariate image work cap exceeded");
    work *= s.card();
  }
  ElemSet out(F.order());
  if (work == 0) return out;
  std::vector<std::vector<Elem>> pts;
  pts.reserve(sets.size());
  for (const auto& s : sets) pts.push_back(s.to_vector());
  std::array<Elem, 3> x{0, 0, 0};
  for (Elem a : pts[0]) {
    x[0] = a;
    if (f.arity == 1) {
      out.add(multi_eval(F, f, x));
      continue;
    }
    for (Elem b : pts[1]) {
      x[1] = b;
      if (f.arity == 2) {
        out.add(multi_eval(F, f, x));
        continue;
      }
      for (Elem c : pts[2]) {
        x[2] = c;
        out.add(multi_eval(F, f, x));
      }
    }
  }
  return out;
}

}  // namespace ffdyn
