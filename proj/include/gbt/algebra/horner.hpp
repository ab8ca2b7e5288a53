#ifndef GBT_ALGEBRA_HORNER_HPP
#define GBT_ALGEBRA_HORNER_HPP

#include <span>
#include <vector>

#include "gbt/algebra/polynomial.hpp"

namespace gbt {

/// Nested Horner scheme of a polynomial, one nesting level per variable in
/// table order. Compiled once, evaluated many times over any scalar type that
/// supports `+` and `*` (double, Interval).
class HornerForm {
public:
  struct Node {
    bool leaf = true;
    BigRational exact = 0;
    double value = 0.0;
    bool value_exact = true;  // value == exact
    std::size_t var = 0;
    std::vector<Node> coeffs;  // dense in the power of `var`
  };

  HornerForm() = default;
  explicit HornerForm(const Polynomial& p);

  std::size_t dimension() const { return dim_; }

  double evaluate(std::span<const double> point) const {
    return evaluate_with<double>(point, [](const Node& n) { return n.value; });
  }

  /// `lift` maps a leaf (exact + rounded coefficient) to T.
  template <class T, class Lift>
  T evaluate_with(std::span<const T> point, Lift&& lift) const {
    return eval_node<T>(root_, point, lift);
  }

private:
  template <class T, class Lift>
  static T eval_node(const Node& n, std::span<const T> x, Lift& lift) {
    if (n.leaf) return lift(n);
    T acc = eval_node<T>(n.coeffs.back(), x, lift);
    for (std::size_t i = n.coeffs.size() - 1; i-- > 0;)
      acc = acc * x[n.var] + eval_node<T>(n.coeffs[i], x, lift);
    return acc;
  }

  Node root_;
  std::size_t dim_ = 0;
};

}  // namespace gbt

#endif
