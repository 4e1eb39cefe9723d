#pragma once

#include <array>
#include <span>
#include <vector>

namespace kinrd {

// Gauss-Legendre rule mapped to [0,1].
struct QuadRule1D {
    std::vector<double> x;
    std::vector<double> w; // sums to 1
};

// Returns the n-point Gauss-Legendre rule (exact for degree 2n-1).
QuadRule1D gauss_legendre_unit(int npts);

// Symmetric rule on the reference triangle (0,0),(1,0),(0,1).
struct QuadRuleTri {
    std::vector<std::array<double, 2>> x;
    std::vector<double> w; // sums to 1/2 (reference area)
};

// Returns a symmetric triangle rule exact at least to the given degree (<= 6).
QuadRuleTri triangle_rule(int exactness);

// Bernstein basis on [0,1]. Basis index k = 0..d, lattice point k/d.
struct BernsteinBasis1D {
    int degree;
    QuadRule1D quad; // exact for degree >= 2d

    explicit BernsteinBasis1D(int d);
    int ndof() const { return degree + 1; }
    void eval(double t, std::span<double> out) const;
    // order-th reference derivative of every basis function at t
    void deriv(double t, int order, std::span<double> out) const;
};

// Bernstein basis on the reference triangle. Local dof order follows the
// barycentric lattice (i,j,k), i+j+k=d, with i the exponent of the barycentric
// coordinate of vertex 0.
struct BernsteinBasisTri {
    int degree;
    std::vector<std::array<int, 3>> lattice;
    QuadRuleTri quad; // exact for degree >= 2d

    explicit BernsteinBasisTri(int d);
    int ndof() const { return static_cast<int>(lattice.size()); }
    void eval(double x, double y, std::span<double> out) const;
    void grad(double x, double y, std::span<std::array<double, 2>> out) const;
    // order-th directional derivative along reference direction s
    void dir_deriv(double x, double y, std::array<double, 2> s, int order,
                   std::span<double> out) const;
};

// Spec-facing helpers used by tests and by the assembly code.
std::vector<double> eval_basis_1d(int degree, double t);
std::vector<double> eval_grad_1d(int degree, double t);
std::vector<double> eval_basis_tri(int degree, double x, double y);

} // namespace kinrd
