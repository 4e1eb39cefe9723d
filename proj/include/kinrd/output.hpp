#pragma once

#include "kinrd/mesh.hpp"
#include "kinrd/residual.hpp"

#include <map>
#include <string>
#include <vector>

namespace kinrd {

// 1D snapshot: "x,u_1..u_K" at the DoF lattice points, in x order.
void write_csv_1d(const std::string& path, const SpaceOperator& op,
                  const std::vector<double>& u, int ncomp);

// 2D snapshot as a legacy ASCII VTK unstructured grid with one point-data
// array per component, sampled at the mesh vertices.
void write_vtk_2d(const std::string& path, const Mesh2D& mesh, const SpaceOperator& op,
                  const std::vector<double>& u, int ncomp,
                  const std::vector<std::string>& names);

// Line slice from (x0,y0) to (x1,y1): "s,x,y,u_1..u_K".
void write_slice_csv(const std::string& path, const SpaceOperator& op,
                     const std::vector<double>& u, int ncomp, double x0, double y0,
                     double x1, double y1, int nsamples);

struct ConvergenceRow {
    int degree = 0;
    double h = 0.0;
    int dofs = 0;
    double L1 = 0.0, L2 = 0.0, Linf = 0.0;
    double eoc_L1 = 0.0, eoc_L2 = 0.0, eoc_Linf = 0.0; // 0 on the coarsest row
};

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows);

// Flat key=value config file; '#' starts a comment. Later CLI flags override.
std::map<std::string, std::string> read_config(const std::string& path);

// JSON run manifest next to the outputs.
void write_manifest(const std::string& path,
                    const std::map<std::string, std::string>& entries);

} // namespace kinrd
