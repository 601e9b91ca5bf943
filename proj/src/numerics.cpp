#include "k3ls/numerics.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>

namespace k3ls {

namespace {

void require_same_n(const SystemClass& a, const SystemClass& b) {
  if (a.n != b.n) {
    throw InputError("numerics: mismatched n (" + std::to_string(a.n) + " vs " +
                     std::to_string(b.n) + ")");
  }
}

Integer mult_at(const SystemClass& cls, std::size_t i) {
  return i < cls.mults.size() ? cls.mults[i] : 0;
}

Integer parse_integer(std::string_view token) {
  Integer value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
    throw InputError("numerics: cannot parse integer '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

void validate(const SystemClass& cls) {
  if (cls.n < 2 || cls.n % 2 != 0) {
    throw InputError("numerics: n must be even and >= 2, got " + std::to_string(cls.n));
  }
  if (cls.d < 0) throw InputError("numerics: degree must be >= 0, got " + std::to_string(cls.d));
  for (Integer m : cls.mults) {
    if (m < 0) throw InputError("numerics: multiplicities must be >= 0, got " + std::to_string(m));
  }
}

SystemClass normalized(const SystemClass& cls) {
  SystemClass out{cls.n, cls.d, {}};
  std::copy_if(cls.mults.begin(), cls.mults.end(), std::back_inserter(out.mults),
               [](Integer m) { return m != 0; });
  return out;
}

bool is_normalized(const SystemClass& cls) {
  return std::all_of(cls.mults.begin(), cls.mults.end(), [](Integer m) { return m >= 1; });
}

Integer virtual_dim(const SystemClass& cls) {
  validate(cls);
  // n is even, so d^2 n/2 = d^2 (n/2) exactly.
  Integer v = checked_add(checked_mul(checked_mul(cls.d, cls.d), cls.n / 2), 1);
  for (Integer m : cls.mults) v = checked_sub(v, conditions(m));
  return v;
}

DimensionPair expected_dim(const SystemClass& cls) {
  Integer v = virtual_dim(cls);
  return {v, std::max<Integer>(v, -1)};
}

Integer intersect(const SystemClass& a, const SystemClass& b) {
  validate(a);
  validate(b);
  require_same_n(a, b);
  Integer out = checked_mul(checked_mul(a.n, a.d), b.d);
  const std::size_t r = std::max(a.points(), b.points());
  for (std::size_t i = 0; i < r; ++i) out = checked_sub(out, checked_mul(mult_at(a, i), mult_at(b, i)));
  return out;
}

SystemClass add(const SystemClass& a, const SystemClass& b) {
  validate(a);
  validate(b);
  require_same_n(a, b);
  SystemClass out{a.n, checked_add(a.d, b.d), {}};
  const std::size_t r = std::max(a.points(), b.points());
  out.mults.reserve(r);
  for (std::size_t i = 0; i < r; ++i) out.mults.push_back(checked_add(mult_at(a, i), mult_at(b, i)));
  return out;
}

SystemClass scale(const SystemClass& cls, Integer k) {
  validate(cls);
  if (k < 0) throw InputError("numerics: scale factor must be >= 0");
  SystemClass out{cls.n, checked_mul(cls.d, k), cls.mults};
  for (Integer& m : out.mults) m = checked_mul(m, k);
  return out;
}

Integer additivity_defect(const SystemClass& a, const SystemClass& b) {
  const Integer ab = intersect(a, b);
  Integer defect = virtual_dim(add(a, b));
  defect = checked_sub(defect, virtual_dim(a));
  defect = checked_sub(defect, virtual_dim(b));
  defect = checked_sub(defect, ab);
  return checked_add(defect, 1);
}

Integer canonical_pairing(const SystemClass& cls) {
  validate(cls);
  Integer sum = 0;
  for (Integer m : cls.mults) sum = checked_add(sum, m);
  return sum;
}

SystemClass zero_class(Integer n, std::size_t points) {
  return SystemClass{n, 0, std::vector<Integer>(points, 0)};
}

std::vector<Integer> parse_multiplicities(std::string_view text) {
  std::vector<Integer> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view token = text.substr(start, comma - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (token.empty()) throw InputError("numerics: empty multiplicity entry in '" + std::string(text) + "'");
    const std::size_t caret = token.find('^');
    Integer value = parse_integer(token.substr(0, caret));
    Integer count = 1;
    if (caret != std::string_view::npos) count = parse_integer(token.substr(caret + 1));
    if (value < 0 || count < 0) throw InputError("numerics: negative entry in '" + std::string(text) + "'");
    if (count > 1'000'000) throw InputError("numerics: repetition count too large");
    out.insert(out.end(), static_cast<std::size_t>(count), value);
    start = comma + 1;
  }
  return out;
}

std::string format_multiplicities(const std::vector<Integer>& mults) {
  std::ostringstream os;
  for (std::size_t i = 0; i < mults.size();) {
    std::size_t j = i;
    while (j < mults.size() && mults[j] == mults[i]) ++j;
    if (i != 0) os << ',';
    os << mults[i];
    if (j - i > 1) os << '^' << (j - i);
    i = j;
  }
  return os.str();
}

std::string to_string(const SystemClass& cls) {
  std::ostringstream os;
  os << "L^" << cls.n << "(" << cls.d;
  if (!cls.mults.empty()) os << ", " << format_multiplicities(cls.mults);
  os << ")";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const SystemClass& cls) { return os << to_string(cls); }

}  // namespace k3ls
