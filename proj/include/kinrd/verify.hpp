#pragma once

#include "kinrd/residual.hpp"

#include <functional>
#include <vector>

namespace kinrd {

// Discrete |C_sigma|-weighted norms of the error at the DoF lattice points,
// per component.
struct ErrorReport {
    std::vector<double> L1, L2, Linf;
    double h = 0.0;
    int ndof = 0;
};

// reference(x, y) returns the exact state (ncomp values) at a point; errors
// are taken between the field values and the reference at every dof point.
ErrorReport error_norms(const SpaceOperator& op, const std::vector<double>& u, int ncomp,
                        const std::function<std::vector<double>(double, double)>& reference);

// Same, against a second dof vector on the same layout.
ErrorReport error_norms(const SpaceOperator& op, const std::vector<double>& u,
                        const std::vector<double>& ref, int ncomp);

// rate_i = log(e_i / e_{i+1}) / log(h_i / h_{i+1})
std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& hs);

// Exact Riemann solver for the 1D Euler equations.
struct RiemannSolution {
    double p_star = 0.0, u_star = 0.0;
    // sample the self-similar solution at xi = x/t -> (rho, rho v, E)
    std::function<std::array<double, 3>(double)> sample;
};
RiemannSolution exact_riemann(const std::array<double, 3>& left,
                              const std::array<double, 3>& right, double gamma);

// max_t |Q(t) - Q(0)| / |Q(0)| per component, Q = sum |C_sigma| u_sigma.
// Only meaningful on periodic runs; callers on open boundaries must not call it.
std::vector<double> conservation_audit(const std::vector<std::vector<double>>& history);

// Q(u) for one snapshot, per component.
std::vector<double> weighted_totals(const SpaceOperator& op, const std::vector<double>& u,
                                    int ncomp);

} // namespace kinrd
