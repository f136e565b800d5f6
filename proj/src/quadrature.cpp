#include <gxray/quadrature.hpp>

#include <gsl/gsl_integration.h>

#include <memory>
#include <stdexcept>

namespace gxray {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)), &gsl_integration_glfixed_table_free);
  if (!table) throw std::runtime_error("gauss_legendre: table allocation failed");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &rule.nodes[i], &rule.weights[i], table.get());
  }
  return rule;
}

}  // namespace gxray
