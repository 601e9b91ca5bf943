#include "k3ls/model.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "k3ls/errors.hpp"
#include "k3ls/univariate.hpp"

namespace k3ls {

namespace {

int form_degree(ModelVariant variant) { return variant == ModelVariant::quartic_in_p3 ? 4 : 6; }
std::size_t form_arity(ModelVariant variant) { return variant == ModelVariant::quartic_in_p3 ? 4 : 3; }

std::vector<std::vector<int>> form_monomials(ModelVariant variant) {
  const int deg = form_degree(variant);
  const std::size_t arity = form_arity(variant);
  std::vector<std::vector<int>> out;
  std::vector<int> e(arity, 0);
  // Enumerate compositions of deg into `arity` parts in lexicographic order.
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == arity) {
      e[pos] = left;
      out.push_back(e);
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[pos] = a;
      self(self, pos + 1, left - a);
    }
  };
  rec(rec, 0, deg);
  return out;
}

AffinePolynomial affine_equation(ModelVariant variant, const std::vector<FormTerm>& form, const PrimeField& field) {
  std::map<Exponent3, Residue> acc;
  if (variant == ModelVariant::quartic_in_p3) {
    for (const auto& t : form) {
      Exponent3 e{t.exponent[0], t.exponent[1], t.exponent[2]};
      acc[e] = field.add(acc[e], t.coeff);
    }
  } else {
    for (const auto& t : form) {
      Exponent3 e{t.exponent[0], t.exponent[1], 0};
      acc[e] = field.sub(acc[e], t.coeff);
    }
    acc[Exponent3{0, 0, 2}] = field.add(acc[Exponent3{0, 0, 2}], 1);
  }
  std::vector<AffineTerm> terms;
  for (const auto& [e, c] : acc)
    if (c != 0) terms.push_back({e, c});
  return AffinePolynomial(std::move(terms));
}

Residue draw(HashStream& stream, const PrimeField& field) {
  return static_cast<Residue>(stream.uniform(static_cast<std::uint64_t>(field.modulus())));
}

}  // namespace

std::string_view to_string(ModelVariant variant) {
  return variant == ModelVariant::quartic_in_p3 ? "quartic" : "double-plane";
}

ModelVariant model_variant_from_string(std::string_view text) {
  if (text == "quartic" || text == "quartic_in_p3" || text == "QuarticInP3") return ModelVariant::quartic_in_p3;
  if (text == "double-plane" || text == "double_sextic_plane" || text == "DoubleSexticPlane")
    return ModelVariant::double_sextic_plane;
  throw InputError("oracle: unknown model variant '" + std::string(text) + "'");
}

int polarization_degree(ModelVariant variant) { return variant == ModelVariant::quartic_in_p3 ? 4 : 2; }

int AffinePolynomial::max_exponent(int variable) const {
  int out = 0;
  for (const auto& t : terms_) out = std::max(out, t.exponent[static_cast<std::size_t>(variable)]);
  return out;
}

Residue AffinePolynomial::evaluate(const std::array<Residue, 3>& point, const PrimeField& field) const {
  Residue acc = 0;
  for (const auto& t : terms_) {
    Residue term = t.coeff;
    for (std::size_t k = 0; k < 3; ++k) term = field.mul(term, field.pow(point[k], static_cast<std::uint64_t>(t.exponent[k])));
    acc = field.add(acc, term);
  }
  return acc;
}

AffinePolynomial AffinePolynomial::derivative(int variable, const PrimeField& field) const {
  std::vector<AffineTerm> out;
  const auto v = static_cast<std::size_t>(variable);
  for (const auto& t : terms_) {
    if (t.exponent[v] == 0) continue;
    AffineTerm d = t;
    d.coeff = field.mul(t.coeff, field.reduce(t.exponent[v]));
    d.exponent[v] -= 1;
    if (d.coeff != 0) out.push_back(d);
  }
  return AffinePolynomial(std::move(out));
}

TruncatedSeries AffinePolynomial::substitute(const std::vector<TruncatedSeries>& coords) const {
  const TruncatedSeries& any = coords.at(0);
  std::vector<std::vector<TruncatedSeries>> pw;
  for (int k = 0; k < 3; ++k) pw.push_back(powers(coords.at(static_cast<std::size_t>(k)), max_exponent(k)));
  TruncatedSeries out(any.order(), any.field());
  for (const auto& t : terms_) {
    TruncatedSeries term = pw[0][static_cast<std::size_t>(t.exponent[0])] *
                           pw[1][static_cast<std::size_t>(t.exponent[1])];
    term = term * pw[2][static_cast<std::size_t>(t.exponent[2])];
    out += term.scale(t.coeff);
  }
  return out;
}

K3Model::K3Model(ModelVariant variant, Residue prime, std::vector<FormTerm> form, std::uint64_t seed)
    : variant_(variant), field_(prime), form_(std::move(form)), seed_(seed) {
  const int deg = form_degree(variant_);
  for (auto& t : form_) {
    if (t.exponent.size() != form_arity(variant_))
      throw InputError("oracle: model term has " + std::to_string(t.exponent.size()) + " exponents");
    int sum = 0;
    for (int e : t.exponent) {
      if (e < 0) throw InputError("oracle: negative exponent in model term");
      sum += e;
    }
    if (sum != deg) throw InputError("oracle: model term of degree " + std::to_string(sum) + ", expected " + std::to_string(deg));
    t.coeff = field_.reduce(t.coeff);
  }
  equation_ = affine_equation(variant_, form_, field_);
}

K3Model K3Model::random(ModelVariant variant, Residue prime, std::uint64_t seed, std::uint64_t index) {
  const PrimeField field(prime);
  HashStream stream(derive_seed(seed, index, "model"));
  std::vector<FormTerm> form;
  for (auto& e : form_monomials(variant)) form.push_back({std::move(e), draw(stream, field)});
  return K3Model(variant, prime, std::move(form), seed);
}

std::vector<Exponent3> K3Model::section_monomials(int d) const {
  if (d < 0) throw InputError("oracle: negative degree");
  std::vector<Exponent3> out;
  if (variant_ == ModelVariant::quartic_in_p3) {
    for (int total = 0; total <= d; ++total)
      for (int a = total; a >= 0; --a)
        for (int b = total - a; b >= 0; --b) out.push_back({a, b, total - a - b});
    return out;
  }
  // w^2 = f_6 on the surface, so x^a y^b and w x^a y^b already span every degree.
  for (int w = 0; w <= 1 && 3 * w <= d; ++w)
    for (int total = 0; total <= d - 3 * w; ++total)
      for (int a = total; a >= 0; --a) out.push_back({a, total - a, w});
  return out;
}

K3Model read_model(std::istream& in) {
  std::string line;
  std::optional<ModelVariant> variant;
  Residue prime = kDefaultPrime;
  std::uint64_t seed = 0;
  std::vector<FormTerm> form;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "variant") {
      std::string name;
      ls >> name;
      variant = model_variant_from_string(name);
    } else if (head == "prime") {
      if (!(ls >> prime)) throw InputError("oracle: bad prime on model line " + std::to_string(line_no));
    } else if (head == "seed") {
      if (!(ls >> seed)) throw InputError("oracle: bad seed on model line " + std::to_string(line_no));
    } else {
      const auto colon = line.find(':');
      if (colon == std::string::npos) throw InputError("oracle: model line " + std::to_string(line_no) + " lacks ':'");
      std::istringstream es(line.substr(0, colon));
      std::istringstream cs(line.substr(colon + 1));
      FormTerm term;
      int e = 0;
      while (es >> e) term.exponent.push_back(e);
      if (!es.eof()) throw InputError("oracle: bad exponent on model line " + std::to_string(line_no));
      if (!(cs >> term.coeff)) throw InputError("oracle: bad coefficient on model line " + std::to_string(line_no));
      form.push_back(std::move(term));
    }
  }
  if (!variant) throw InputError("oracle: model file lacks a variant line");
  return K3Model(*variant, prime, std::move(form), seed);
}

void write_model(std::ostream& out, const K3Model& model) {
  out << "variant " << to_string(model.variant()) << "\n";
  out << "prime " << model.field().modulus() << "\n";
  out << "seed " << model.seed() << "\n";
  for (const auto& t : model.form()) {
    for (std::size_t k = 0; k < t.exponent.size(); ++k) out << (k ? " " : "") << t.exponent[k];
    out << " : " << t.coeff << "\n";
  }
}

int smooth_direction(const K3Model& model, const SurfacePoint& point) {
  for (int k : {2, 1, 0}) {
    if (model.equation().derivative(k, model.field()).evaluate(point.affine, model.field()) != 0) return k;
  }
  return -1;
}

SurfacePoint sample_point(const K3Model& model, HashStream& stream, const SamplingOptions& options) {
  const PrimeField& field = model.field();
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    const Residue x = draw(stream, field);
    const Residue y = draw(stream, field);
    SurfacePoint point;
    if (model.variant() == ModelVariant::quartic_in_p3) {
      UnivariatePoly g(5, 0);
      for (const auto& t : model.equation().terms()) {
        Residue c = field.mul(t.coeff, field.mul(field.pow(x, static_cast<std::uint64_t>(t.exponent[0])),
                                                 field.pow(y, static_cast<std::uint64_t>(t.exponent[1]))));
        g[static_cast<std::size_t>(t.exponent[2])] = field.add(g[static_cast<std::size_t>(t.exponent[2])], c);
      }
      if (trimmed(g).empty()) continue;
      const std::vector<Residue> zs = roots(g, field, stream);
      if (zs.empty()) continue;
      const Residue z = zs[stream.uniform(zs.size())];
      point.affine = {x, y, z};
      point.ambient = {x, y, z, 1};
    } else {
      // w^2 = f_6(x, y, 1) = w^2 - equation(x, y, 0).
      const Residue f6 = field.neg(model.equation().evaluate({x, y, 0}, field));
      if (f6 == 0) continue;
      const auto root = field.sqrt(f6);
      if (!root) continue;
      const Residue w = (stream.next() & 1U) ? field.neg(*root) : *root;
      point.affine = {x, y, w};
      point.ambient = {x, y, 1, w};
    }
    if (model.equation().evaluate(point.affine, field) != 0) {
      throw ComputationError("oracle: sampled point does not lie on the model");
    }
    if (smooth_direction(model, point) >= 0) return point;
  }
  throw ComputationError("oracle: no smooth point found on the " + std::string(to_string(model.variant())) +
                         " model over F_" + std::to_string(field.modulus()) + " after " +
                         std::to_string(options.max_attempts) + " attempts");
}

TruncatedSeries chart_residual(const K3Model& model, const LocalChart& chart) {
  return model.equation().substitute(chart.coords);
}

LocalChart local_chart(const K3Model& model, const SurfacePoint& point, int order) {
  const PrimeField& field = model.field();
  if (order < 0) throw InputError("oracle: negative chart order");
  const int dependent = smooth_direction(model, point);
  if (dependent < 0) throw ComputationError("oracle: singular point, no chart");

  LocalChart chart{point, dependent, {}, order, {}};
  int next_param = 0;
  for (int k = 0; k < 3; ++k) {
    if (k == dependent) {
      chart.coords.push_back(TruncatedSeries::constant(point.affine[static_cast<std::size_t>(k)], order, field));
    } else {
      chart.params[static_cast<std::size_t>(next_param)] = k;
      chart.coords.push_back(
          TruncatedSeries::shifted_variable(next_param, point.affine[static_cast<std::size_t>(k)], order, field));
      ++next_param;
    }
  }

  // Newton: Z <- Z - F(Z) / F_Z(Z); the number of correct orders doubles each pass.
  const AffinePolynomial dz = model.equation().derivative(dependent, field);
  auto& z = chart.coords[static_cast<std::size_t>(dependent)];
  for (int correct = 0; correct < order; correct = 2 * correct + 1) {
    const TruncatedSeries residual = model.equation().substitute(chart.coords);
    if (residual.is_zero()) break;
    z -= residual * dz.substitute(chart.coords).inverse();
  }
  if (!chart_residual(model, chart).is_zero()) {
    throw ComputationError("oracle: chart residual does not vanish to order " + std::to_string(order));
  }
  return chart;
}

}  // namespace k3ls
