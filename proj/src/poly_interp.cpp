#include "admesh/poly_interp.hpp"

#include "admesh/error.hpp"

#include <cmath>
#include <string>

namespace admesh {

namespace {

void check_nodes(std::span<const double> nodes) {
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (std::abs(nodes[i] - nodes[i - 1]) <= 1e-300) {
            throw Error(ErrorCode::DegenerateNodes, "nodes " + std::to_string(i - 1) + " and " +
                                                        std::to_string(i) + " coincide");
        }
        if (!(nodes[i] > nodes[i - 1])) {
            throw Error(ErrorCode::DegenerateNodes, "nodes are not strictly increasing");
        }
    }
}

// Newton coefficients in place: c[j] = g[z_0..z_j].
std::vector<double> newton_coefficients(std::span<const double> values, std::span<const double> nodes) {
    std::vector<double> c(values.begin(), values.end());
    const std::size_t n = c.size();
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t j = n - 1; j >= k; --j) {
            c[j] = (c[j] - c[j - 1]) / (nodes[j] - nodes[j - k]);
        }
    }
    return c;
}

}  // namespace

double divided_difference(std::span<const double> values, std::span<const double> nodes) {
    if (values.empty() || values.size() != nodes.size()) {
        throw Error(ErrorCode::DegenerateNodes, "values and nodes must be non-empty and of equal length");
    }
    check_nodes(nodes);
    return newton_coefficients(values, nodes).back();
}

InterpPolynomial InterpPolynomial::from_samples(std::vector<double> nodes, std::span<const double> values) {
    if (nodes.empty() || values.size() != nodes.size()) {
        throw Error(ErrorCode::DegenerateNodes, "values and nodes must be non-empty and of equal length");
    }
    check_nodes(nodes);
    InterpPolynomial p;
    p.coeffs_ = newton_coefficients(values, nodes);
    p.nodes_ = std::move(nodes);

    // Expand sum_j c_j prod_{k<j} (s - d_k) with s = y - z_0, d_k = z_k - z_0.
    const std::size_t n = p.nodes_.size();
    p.monomial_.assign(n, 0.0);
    std::vector<double> basis{1.0};
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < basis.size(); ++k) p.monomial_[k] += p.coeffs_[j] * basis[k];
        if (j + 1 == n) break;
        const double shift = p.nodes_[j] - p.nodes_[0];
        std::vector<double> next(basis.size() + 1, 0.0);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            next[k + 1] += basis[k];
            next[k] -= shift * basis[k];
        }
        basis = std::move(next);
    }
    return p;
}

double InterpPolynomial::operator()(double y) const {
    double acc = coeffs_.back();
    for (std::size_t j = coeffs_.size() - 1; j-- > 0;) {
        acc = acc * (y - nodes_[j]) + coeffs_[j];
    }
    return acc;
}

double InterpPolynomial::primitive(double y) const {
    const double s = y - nodes_.front();
    double acc = 0.0;
    for (std::size_t k = monomial_.size(); k-- > 0;) {
        acc = acc * s + monomial_[k] / static_cast<double>(k + 1);
    }
    return acc * s;
}

double InterpPolynomial::integral(double y0, double y) const {
    if (y == y0) return 0.0;
    return primitive(y) - primitive(y0);
}

const double* EvalCache::find(double y) const {
    for (const auto& [x, gx] : entries_) {
        if (x == y || std::abs(x - y) <= kRelTol * std::max(std::abs(x), std::abs(y))) return &gx;
    }
    return nullptr;
}

std::vector<double> equidistant_nodes(double lo, double hi, int n) {
    std::vector<double> nodes(static_cast<std::size_t>(n));
    if (n == 1) {
        nodes[0] = lo;
        return nodes;
    }
    const double width = hi - lo;
    for (int j = 0; j < n; ++j) nodes[static_cast<std::size_t>(j)] = lo + width * j / (n - 1);
    nodes.back() = hi;
    return nodes;
}

BuiltInterpolant build_interpolant(const ScalarFn& g, double lo, double hi, int n_nodes, EvalCache* cache) {
    if (!(lo < hi) || n_nodes < 1) {
        throw Error(ErrorCode::DegenerateNodes, "build_interpolant needs lo < hi and n_nodes >= 1");
    }
    BuiltInterpolant out;
    auto nodes = equidistant_nodes(lo, hi, n_nodes);
    std::vector<double> values;
    values.reserve(nodes.size());
    for (double y : nodes) {
        if (cache != nullptr) {
            if (const double* hit = cache->find(y)) {
                values.push_back(*hit);
                continue;
            }
        }
        const double gy = g(y);
        out.fresh.push_back(y);
        if (cache != nullptr) cache->insert(y, gy);
        values.push_back(gy);
    }
    out.poly = InterpPolynomial::from_samples(std::move(nodes), values);
    return out;
}

double antiderivative_between(const InterpPolynomial& p, double y0, double y) {
    return p.integral(y0, y);
}

}  // namespace admesh
