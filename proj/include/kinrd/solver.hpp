#pragma once

#include "kinrd/dec.hpp"
#include "kinrd/kinetic.hpp"
#include "kinrd/mesh.hpp"
#include "kinrd/residual.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace kinrd {

// dt = cfl * h_min / (lambda * degree); epsilon never enters the restriction
double compute_dt(double cfl, double min_h, double lambda, int degree = 1);

// Strong boundary fix applied after every subtimestep update.
// Precedence at shared dofs: inflow > wall > outflow (outflow is a no-op).
class BoundaryHandler {
public:
    BoundaryHandler() = default;
    // 1D: optional held states at the left/right endpoint (inflow);
    // absent means outflow. Periodic meshes take no handler.
    BoundaryHandler(const Mesh1D& mesh, const DofMap& dofmap, const DrmModel& drm,
                    std::optional<std::vector<double>> left,
                    std::optional<std::vector<double>> right);
    BoundaryHandler(const Mesh2D& mesh, const DofMap& dofmap, const DrmModel& drm,
                    std::function<std::vector<double>(double, double)> inflow_state);

    void apply(std::vector<double>& u, KineticField& f) const;
    DecStepper::BoundaryFix callback() const;

private:
    struct InflowDof {
        int dof;
        std::vector<double> state;
    };
    struct WallDof {
        int dof;
        std::array<double, 2> normal;
    };
    const DrmModel* drm_ = nullptr;
    int ndof_ = 0;
    std::vector<InflowDof> inflow_;
    std::vector<WallDof> wall_;
};

struct RunConfig {
    double t_end = 1.0;
    double cfl = 0.1;
    int threads = 1;
    std::vector<double> output_times; // extra snapshot times inside (0, t_end)
};

struct RunStats {
    int steps = 0;
    double t = 0.0;
};

using SnapshotFn =
    std::function<void(double, const std::vector<double>&, const KineticField&)>;

// Fixed-CFL loop with dt clipped so every output time and t_end are hit
// exactly. Calls snap at t = 0, at each requested time, and at t_end.
RunStats time_loop(const SpaceOperator& op, const DrmModel& drm, DecStepper& stepper,
                   std::vector<double>& u, KineticField& f, const RunConfig& cfg,
                   const SnapshotFn& snap = nullptr);

} // namespace kinrd
