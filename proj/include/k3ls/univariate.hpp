#pragma once

#include <vector>

#include "k3ls/hash_stream.hpp"
#include "k3ls/prime_field.hpp"

namespace k3ls {

/// Dense univariate polynomial over F_p, coefficient i multiplies t^i.
using UnivariatePoly = std::vector<Residue>;

UnivariatePoly trimmed(UnivariatePoly f);
Residue evaluate(const UnivariatePoly& f, Residue t, const PrimeField& field);

/// All distinct roots in F_p, ascending. Uses gcd(t^p - t, f) followed by random
/// equal-degree splitting driven by `stream`. The zero polynomial has no roots by convention.
std::vector<Residue> roots(const UnivariatePoly& f, const PrimeField& field, HashStream& stream);

}  // namespace k3ls
