#include <algorithm>
#include <stdexcept>

#include "gbt/sysdsl.hpp"

namespace gbt {

std::vector<std::string> VectorField::symbols() const {
  std::vector<std::string> out = states;
  out.insert(out.end(), params.begin(), params.end());
  return out;
}

unsigned VectorField::degree() const {
  unsigned d = 0;
  for (const auto& c : components) d = std::max(d, c.total_degree());
  return d;
}

bool operator==(const VectorField& a, const VectorField& b) {
  if (a.states != b.states || a.params != b.params || a.components.size() != b.components.size())
    return false;
  for (std::size_t i = 0; i < a.components.size(); ++i)
    if (!(a.components[i] == b.components[i])) return false;
  return true;
}

JacobianMatrix jacobian(const VectorField& vf) {
  const std::size_t n = vf.states.size();
  JacobianMatrix j(n, std::vector<Polynomial>(n));
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t col = 0; col < n; ++col) j[row][col] = vf.components[row].derivative(col);
  return j;
}

VectorField specialize(const VectorField& vf, const std::map<std::string, BigRational>& bindings) {
  VectorField out = vf;
  for (const auto& [name, value] : bindings) {
    if (std::find(vf.states.begin(), vf.states.end(), name) != vf.states.end())
      throw std::invalid_argument("cannot bind state symbol '" + name + "'");
    auto it = std::find(out.params.begin(), out.params.end(), name);
    if (it == out.params.end()) throw std::invalid_argument("unknown parameter '" + name + "'");
    out.params.erase(it);
    for (auto& c : out.components) c = c.substitute(name, value);
  }
  return out;
}

std::string render(const VectorField& vf) {
  std::string out;
  if (!vf.name.empty()) out += "name: " + vf.name + "\n";
  if (!vf.params.empty()) {
    out += "params: ";
    for (std::size_t i = 0; i < vf.params.size(); ++i) out += (i ? ", " : "") + vf.params[i];
    out += "\n";
  }
  for (std::size_t i = 0; i < vf.states.size(); ++i)
    out += "d" + vf.states[i] + "/dt = " + vf.components[i].to_string() + "\n";
  return out;
}

}  // namespace gbt
