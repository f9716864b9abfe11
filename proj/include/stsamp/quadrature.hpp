#pragma once
//
// Gauss-Legendre and Gauss-Hermite rules via Golub-Welsch (eigenvalues of the
// Jacobi matrix of the orthogonal-polynomial recurrence).
//

#include <vector>

namespace stsamp {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadRule gauss_legendre(int n);

/// n-point Gauss-Legendre rule mapped to (a, b).
QuadRule gauss_legendre(int n, double a, double b);

/// n-point Gauss-Hermite rule for integrals of f(t) e^{-t^2} over the line.
QuadRule gauss_hermite(int n);

} // namespace stsamp
