#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace admesh {

/// Top-order divided difference g[z_0, ..., z_k], computed by the standard
/// recurrence in the given node order. Nodes must be strictly increasing.
double divided_difference(std::span<const double> values, std::span<const double> nodes);

/// Interpolating polynomial stored in Newton form, with a shifted monomial
/// copy (in powers of y - nodes[0]) used for exact integration.
class InterpPolynomial {
public:
    InterpPolynomial() = default;

    /// Interpolant of `values` at strictly increasing `nodes`.
    static InterpPolynomial from_samples(std::vector<double> nodes, std::span<const double> values);

    double operator()(double y) const;

    /// Integral of the polynomial from y0 to y.
    double integral(double y0, double y) const;

    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(nodes_.size()) - 1; }

private:
    double primitive(double y) const;

    std::vector<double> nodes_;
    std::vector<double> coeffs_;    // Newton coefficients g[z_0..z_j]
    std::vector<double> monomial_;  // p(y) = sum_k monomial_[k] (y - z_0)^k
};

/// Previously computed (abscissa, g-value) pairs available for reuse.
class EvalCache {
public:
    static constexpr double kRelTol = 1e-15;

    void insert(double y, double gy) { entries_.emplace_back(y, gy); }
    const double* find(double y) const;
    void clear() noexcept { entries_.clear(); }
    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::vector<std::pair<double, double>> entries_;
};

using ScalarFn = std::function<double(double)>;

struct BuiltInterpolant {
    InterpPolynomial poly;
    std::vector<double> fresh;  // abscissae evaluated by this call
};

/// Interpolant of g on `n_nodes` equidistant points of [lo, hi] including
/// both endpoints (the single node is `lo` when n_nodes == 1). Values found
/// in `cache` are reused; fresh evaluations are added to it.
BuiltInterpolant build_interpolant(const ScalarFn& g, double lo, double hi, int n_nodes,
                                   EvalCache* cache = nullptr);

/// Exact integral of `p` from y0 to y; performs no evaluations of g.
double antiderivative_between(const InterpPolynomial& p, double y0, double y);

/// n equidistant points of [lo, hi], endpoints included.
std::vector<double> equidistant_nodes(double lo, double hi, int n);

}  // namespace admesh
