#include "k3ls/univariate.hpp"

#include <algorithm>

namespace k3ls {

namespace {

int degree(const UnivariatePoly& f) { return static_cast<int>(f.size()) - 1; }

UnivariatePoly make_monic(UnivariatePoly f, const PrimeField& field) {
  const Residue lead_inv = field.inv(f.back());
  for (Residue& c : f) c = field.mul(c, lead_inv);
  return f;
}

// Remainder of a modulo a monic-or-not nonzero b.
UnivariatePoly remainder(UnivariatePoly a, const UnivariatePoly& b, const PrimeField& field) {
  a = trimmed(std::move(a));
  const Residue lead_inv = field.inv(b.back());
  while (!a.empty() && degree(a) >= degree(b)) {
    const Residue factor = field.mul(a.back(), lead_inv);
    const int shift = degree(a) - degree(b);
    for (int i = 0; i <= degree(b); ++i) {
      a[shift + i] = field.sub(a[shift + i], field.mul(factor, b[i]));
    }
    a = trimmed(std::move(a));
  }
  return a;
}

UnivariatePoly quotient(UnivariatePoly a, const UnivariatePoly& b, const PrimeField& field) {
  a = trimmed(std::move(a));
  if (degree(a) < degree(b)) return {};
  UnivariatePoly q(degree(a) - degree(b) + 1, 0);
  const Residue lead_inv = field.inv(b.back());
  while (!a.empty() && degree(a) >= degree(b)) {
    const Residue factor = field.mul(a.back(), lead_inv);
    const int shift = degree(a) - degree(b);
    q[shift] = factor;
    for (int i = 0; i <= degree(b); ++i) a[shift + i] = field.sub(a[shift + i], field.mul(factor, b[i]));
    a = trimmed(std::move(a));
  }
  return q;
}

UnivariatePoly multiply_mod(const UnivariatePoly& a, const UnivariatePoly& b, const UnivariatePoly& mod,
                            const PrimeField& field) {
  if (a.empty() || b.empty()) return {};
  UnivariatePoly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = field.add(prod[i + j], field.mul(a[i], b[j]));
  return remainder(std::move(prod), mod, field);
}

UnivariatePoly power_mod(UnivariatePoly base, std::uint64_t exp, const UnivariatePoly& mod,
                         const PrimeField& field) {
  UnivariatePoly result = remainder({1}, mod, field);
  base = remainder(std::move(base), mod, field);
  while (exp != 0) {
    if (exp & 1U) result = multiply_mod(result, base, mod, field);
    base = multiply_mod(base, base, mod, field);
    exp >>= 1U;
  }
  return result;
}

UnivariatePoly gcd(UnivariatePoly a, UnivariatePoly b, const PrimeField& field) {
  a = trimmed(std::move(a));
  b = trimmed(std::move(b));
  while (!b.empty()) {
    UnivariatePoly r = remainder(a, b, field);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : make_monic(std::move(a), field);
}

// f is monic, squarefree and splits into distinct linear factors.
void split(const UnivariatePoly& f, const PrimeField& field, HashStream& stream, std::vector<Residue>& out) {
  if (degree(f) <= 0) return;
  if (degree(f) == 1) {
    out.push_back(field.neg(f[0]));
    return;
  }
  const Residue p = field.modulus();
  for (;;) {
    const Residue shift = static_cast<Residue>(stream.uniform(static_cast<std::uint64_t>(p)));
    UnivariatePoly h = power_mod({shift, 1}, static_cast<std::uint64_t>((p - 1) / 2), f, field);
    if (h.empty()) h = {0};
    h[0] = field.sub(h[0], 1);
    UnivariatePoly g = gcd(f, h, field);
    if (degree(g) > 0 && degree(g) < degree(f)) {
      split(g, field, stream, out);
      split(quotient(f, g, field), field, stream, out);
      return;
    }
  }
}

}  // namespace

UnivariatePoly trimmed(UnivariatePoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

Residue evaluate(const UnivariatePoly& f, Residue t, const PrimeField& field) {
  Residue acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = field.add(field.mul(acc, t), *it);
  return acc;
}

std::vector<Residue> roots(const UnivariatePoly& f_in, const PrimeField& field, HashStream& stream) {
  UnivariatePoly f = trimmed(f_in);
  std::vector<Residue> out;
  if (degree(f) <= 0) return out;
  f = make_monic(std::move(f), field);
  // gcd(t^p - t, f) collects the distinct linear factors.
  UnivariatePoly tp = power_mod({0, 1}, static_cast<std::uint64_t>(field.modulus()), f, field);
  tp.resize(std::max<std::size_t>(tp.size(), 2), 0);
  tp[1] = field.sub(tp[1], 1);
  UnivariatePoly linear_part = gcd(f, tp, field);
  split(linear_part, field, stream, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace k3ls
