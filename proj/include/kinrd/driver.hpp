#pragma once

#include "kinrd/cases.hpp"
#include "kinrd/dec.hpp"
#include "kinrd/solver.hpp"

#include <memory>
#include <optional>
#include <string>

namespace kinrd {

// Everything needed to instantiate one benchmark run; unset optionals fall
// back to the catalogue defaults.
struct CaseSetup {
    std::string case_name;
    int degree = 1;
    int cells = 0;          // 1D resolution; 0 = case default
    std::string mesh_path;  // 2D mesh file; empty = case default
    std::optional<double> eps;
    std::optional<double> cfl;
    std::optional<double> t_end;
    std::optional<int> iterations;
    std::optional<SchemeConfig::Variant> variant;
    int threads = 1;
};

struct CaseInstance {
    BenchmarkCase bench;
    int degree = 1;
    Mesh1D mesh1;
    Mesh2D mesh2;
    DofMap dofmap;
    std::unique_ptr<SpaceOperator> op;
    DrmModel drm;
    std::unique_ptr<DecStepper> stepper;
    std::optional<BoundaryHandler> bc;
    RunConfig runcfg;
    std::vector<double> u; // Bernstein coefficients, comp-major
    KineticField f;
};

// Builds the mesh, operators and the projected initial data (u and f = M(u)
// interpolated at the lattice points).
CaseInstance make_instance(const CaseSetup& setup);

RunStats run_instance(CaseInstance& inst, const SnapshotFn& snap = nullptr);

} // namespace kinrd
