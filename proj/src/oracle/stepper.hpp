#ifndef GBT_SRC_ORACLE_STEPPER_HPP
#define GBT_SRC_ORACLE_STEPPER_HPP

#include <vector>

#include "gbt/oracle.hpp"

namespace gbt::detail {

enum class StepStatus { ok, underflow };

/// Single-trajectory Dormand-Prince state. Keeps the previous accepted state
/// so that events can be located by re-stepping from it.
class Stepper {
public:
  Stepper(const FlowField& f, std::vector<double> x0, double t0, double tol);

  /// One accepted step, never past `t_limit`.
  StepStatus step(double t_limit);

  double t() const { return t_; }
  double prev_t() const { return prev_t_; }
  const std::vector<double>& x() const { return x_; }
  std::size_t steps() const { return steps_; }
  std::size_t rejected() const { return rejected_; }
  double max_error() const { return max_err_; }

  /// State at prev_t() + tau by a single fifth-order step.
  std::vector<double> from_previous(double tau) const;

private:
  std::vector<double> trial(const std::vector<double>& x, const std::vector<double>& k1, double h,
                            std::vector<double>* k7_out, double* err_out) const;

  const FlowField& f_;
  std::size_t n_;
  double t_;
  double prev_t_ = 0;
  double h_ = 0;
  double tol_;
  std::vector<double> x_, k1_, prev_x_, prev_k1_;
  std::size_t steps_ = 0;
  std::size_t rejected_ = 0;
  double max_err_ = 0;
};

}  // namespace gbt::detail

#endif
