#include "gbt/algebra/horner.hpp"

namespace gbt {

namespace {

HornerForm::Node build(std::vector<const Term*> terms, std::size_t var, std::size_t dim) {
  HornerForm::Node node;
  // Skip variables this group does not depend on.
  while (var < dim) {
    bool uses = false;
    for (const Term* t : terms)
      if (t->exponents[var] != 0) {
        uses = true;
        break;
      }
    if (uses) break;
    ++var;
  }
  if (var == dim) {
    for (const Term* t : terms) node.exact += t->coefficient;
    node.value = node.exact.get_d();
    node.value_exact = BigRational(node.value) == node.exact;
    return node;
  }
  std::uint32_t deg = 0;
  for (const Term* t : terms) deg = std::max(deg, t->exponents[var]);
  std::vector<std::vector<const Term*>> groups(deg + 1);
  for (const Term* t : terms) groups[t->exponents[var]].push_back(t);
  node.leaf = false;
  node.var = var;
  node.coeffs.reserve(deg + 1);
  for (auto& g : groups) node.coeffs.push_back(build(std::move(g), var + 1, dim));
  return node;
}

}  // namespace

HornerForm::HornerForm(const Polynomial& p) : dim_(p.variables().size()) {
  std::vector<const Term*> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back(&t);
  root_ = build(std::move(terms), 0, dim_);
}

}  // namespace gbt
