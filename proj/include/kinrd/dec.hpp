#pragma once

#include "kinrd/kinetic.hpp"
#include "kinrd/residual.hpp"

#include <functional>
#include <vector>

namespace kinrd {

// Equispaced subtimestep grid on the unit interval with the Lagrange
// quadrature weights w[m][r] = int_0^{m/M} ell_r(t) dt. Row 0 is zero;
// each row sums to m/M.
struct SubtimeGrid {
    int M = 1;
    std::vector<std::vector<double>> w;
};

SubtimeGrid make_subtime_grid(int M);

struct DecConfig {
    int subnodes = 1;   // M
    int iterations = 2; // one prediction plus iterations-1 corrections
};

// Deferred-correction IMEX stepper: advection explicit through the residual
// quadrature, relaxation source implicit with a lumped mass. Every epsilon
// dependence enters as eps/(eps+dt_m) or dt_m/(eps+dt_m), so eps = 0 runs.
class DecStepper {
public:
    using BoundaryFix = std::function<void(std::vector<double>&, KineticField&)>;

    DecStepper(const SpaceOperator& op, const DrmModel& drm, const DecConfig& cfg);

    void set_boundary_fix(BoundaryFix fix) { fix_ = std::move(fix); }

    // Advances (u, f) in place by dt. u is comp-major (ncomp columns of ndof).
    void step(std::vector<double>& u, KineticField& f, double dt);

    // max |du| recorded in each correction sweep of the last step
    const std::vector<double>& correction_deltas() const { return deltas_; }

    // Maxwellian of a whole field, evaluated through the lattice values
    // (coefficients -> values -> M -> coefficients). Applying M directly to
    // Bernstein coefficients would cap nonlinear models at second order.
    void maxwellian_field(const std::vector<double>& u, KineticField& out) const;

private:
    const SpaceOperator& op_;
    const DrmModel& drm_;
    DecConfig cfg_;
    SubtimeGrid grid_;
    BoundaryFix fix_;
    std::vector<double> deltas_;
};

} // namespace kinrd
