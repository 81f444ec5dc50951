#pragma once

#include <stdexcept>
#include <string>

namespace rootbound {

/// Root iteration failed to reach the backward-error target.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double worst_residual)
      : std::runtime_error(what), worst_residual_(worst_residual) {}
  double worst_residual() const noexcept { return worst_residual_; }

 private:
  double worst_residual_;
};

/// Deflation point is not close enough to a root of the polynomial.
class deflation_error : public std::domain_error {
 public:
  deflation_error(const std::string& what, double residual)
      : std::domain_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace rootbound
