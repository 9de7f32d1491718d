#include "cdga/presentation.hpp"

namespace cdga {

void Presentation::validate() const {
  if (!context) throw Error("presentation without context");
  const auto& c = *context;
  if (differential.size() != c.generator_count())
    throw Error("differential must list one image per generator");
  for (std::size_t i = 0; i < relations.size(); ++i) {
    if (relations[i].is_zero()) continue;
    for (const auto& [m, coeff] : relations[i]) c.check(m);
    if (!c.homogeneous(relations[i]))
      throw Error("relation " + std::to_string(i) + " is not homogeneous in degree and weight");
  }
  for (std::size_t g = 0; g < c.generator_count(); ++g) {
    const Element& img = differential[g];
    if (img.is_zero()) continue;
    for (const auto& [m, coeff] : img) c.check(m);
    const auto& gen = c.generator(g);
    if (!c.homogeneous(img) || c.degree(img) != gen.degree + 1)
      throw Error("d(" + gen.label + ") must be homogeneous of degree " + std::to_string(gen.degree + 1));
    if (*c.weight_if_homogeneous(img) != gen.weight)
      throw Error("d(" + gen.label + ") does not preserve weight");
  }
}

Element Presentation::d(const Monomial& m) const {
  const auto& c = *context;
  Element out;
  const bool base_odd = c.base().degree(m.base) % 2 != 0;
  int odd_before = 0;
  for (std::size_t g = 0; g < m.exps.size(); ++g) {
    const unsigned e = m.exps[g];
    if (e == 0) continue;
    const auto& gen = c.generator(g);
    if (!differential[g].is_zero()) {
      Monomial prefix{m.base, std::vector<std::uint16_t>(m.exps.size(), 0)};
      Monomial suffix = c.unit_monomial();
      for (std::size_t h = 0; h < m.exps.size(); ++h) {
        if (h < g) prefix.exps[h] = m.exps[h];
        if (h > g) suffix.exps[h] = m.exps[h];
      }
      prefix.exps[g] = static_cast<std::uint16_t>(e - 1);  // g even commutes; g odd has e = 1
      Element term = c.multiply(c.multiply(Element(prefix), differential[g]), Element(suffix));
      Rational factor(static_cast<long>(e));
      if (((base_odd ? 1 : 0) + odd_before) % 2 == 1) factor = -factor;
      term *= factor;
      out += term;
    }
    if (gen.odd()) ++odd_before;
  }
  return out;
}

Element Presentation::d(const Element& e) const {
  Element out;
  for (const auto& [m, coeff] : e) {
    Element dm = d(m);
    for (const auto& [mm, cc] : dm) out.add(mm, coeff * cc);
  }
  return out;
}

}  // namespace cdga
