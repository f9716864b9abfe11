#pragma once
//
// Rectangle of Gaussian kernel parameters I = (a,b) x (c,d) in the open first
// quadrant, with its tensor Gauss-Legendre rule.  A radial variant (a,b)
// carries one-parameter kernels exp(-alpha |x|^2) with a 1-D rule.
//

#include <stdexcept>
#include <vector>

#include "stsamp/geometry.hpp"
#include "stsamp/quadrature.hpp"

namespace stsamp {

struct AlphaNode {
    double a1 = 1.0;
    double a2 = 1.0;
    double weight = 0.0;
};

struct IndexRect {
    double a = 0.5, b = 1.0; // first axis (or the only one when radial)
    double c = 0.5, d = 1.0;
    int quad_order = 16;     // per axis
    bool radial = false;

    static IndexRect product(double a, double b, double c, double d, int quad_order = 16) {
        IndexRect r{a, b, c, d, quad_order, false};
        r.validate();
        return r;
    }

    static IndexRect radial_interval(double a, double b, int quad_order = 16) {
        IndexRect r{a, b, 0.0, 0.0, quad_order, true};
        r.validate();
        return r;
    }

    void validate() const {
        if (quad_order < 1) throw std::invalid_argument("IndexRect: quadrature order must be >= 1");
        if (!(0.0 < a && a < b)) throw std::invalid_argument("IndexRect: need 0 < a < b");
        if (!radial && !(0.0 < c && c < d)) throw std::invalid_argument("IndexRect: need 0 < c < d");
    }

    /// Quadrature nodes (alpha_1, alpha_2, weight); Gauss-Legendre nodes lie
    /// strictly inside the rectangle.  Radial rects emit a1 == a2 == alpha.
    std::vector<AlphaNode> quadrature() const {
        validate();
        std::vector<AlphaNode> nodes;
        if (radial) {
            const QuadRule q = gauss_legendre(quad_order, a, b);
            nodes.reserve(static_cast<std::size_t>(quad_order));
            for (int i = 0; i < quad_order; ++i) nodes.push_back({q.nodes[i], q.nodes[i], q.weights[i]});
        } else {
            const QuadRule q1 = gauss_legendre(quad_order, a, b);
            const QuadRule q2 = gauss_legendre(quad_order, c, d);
            nodes.reserve(static_cast<std::size_t>(quad_order) * quad_order);
            for (int i = 0; i < quad_order; ++i)
                for (int j = 0; j < quad_order; ++j)
                    nodes.push_back({q1.nodes[i], q2.nodes[j], q1.weights[i] * q2.weights[j]});
        }
        return nodes;
    }
};

} // namespace stsamp
