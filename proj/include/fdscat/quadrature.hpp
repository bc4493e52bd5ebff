#pragma once

#include "fdscat/ext_real.hpp"

#include <span>
#include <vector>

namespace fdscat
{

/// Gauss-Legendre rule on [-1, 1]. Nodes are strictly increasing; an n-point
/// rule integrates polynomials of degree <= 2n - 1 exactly. Built once in
/// extended precision; the double view is the rounded copy.
class QuadratureRule
{
  public:
    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::span<const ext_real> nodes_ext() const noexcept { return nodes_ext_; }
    std::span<const ext_real> weights_ext() const noexcept { return weights_ext_; }

    int size() const noexcept { return static_cast<int>(nodes_.size()); }
    /// Highest polynomial degree integrated exactly.
    int degree() const noexcept { return 2 * size() - 1; }

    template <class F>
    auto integrate(F&& f) const
    {
        decltype(f(0.0)) sum{};
        for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(nodes_[i]);
        return sum;
    }

  private:
    friend QuadratureRule gauss_legendre_rule(int n);

    std::vector<double> nodes_, weights_;
    std::vector<ext_real> nodes_ext_, weights_ext_;
};

/// n-point Gauss-Legendre rule, 1 <= n <= 4096. Throws DomainError for n out
/// of range and ConvergenceError if a root does not settle to 1e-15 within
/// 100 Newton steps.
QuadratureRule gauss_legendre_rule(int n);

} // namespace fdscat
