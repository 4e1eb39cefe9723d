#pragma once

#include <array>
#include <string>
#include <vector>

namespace kinrd {

struct Mesh1D {
    double a = 0.0, b = 1.0;
    int ncells = 0;
    bool periodic = false;
    std::vector<double> nodes; // ncells+1 cell boundaries

    double cell_width(int i) const { return nodes[i + 1] - nodes[i]; }
    double min_width() const;
};

Mesh1D build_uniform_1d(double a, double b, int ncells, bool periodic);

enum class BoundaryTag { interior = 0, outflow, inflow, wall };

BoundaryTag parse_boundary_tag(const std::string& s);

struct Edge2D {
    int v0, v1;      // v0 < v1
    int left = -1;   // triangle where (v0,v1) runs counterclockwise
    int right = -1;  // -1 on the boundary
    BoundaryTag tag = BoundaryTag::interior;
    double length = 0.0;
    std::array<double, 2> normal{}; // unit normal from left to right (outward on boundary)
};

struct Mesh2D {
    std::vector<std::array<double, 2>> vertices;
    std::vector<std::array<int, 3>> triangles; // counterclockwise
    std::vector<Edge2D> edges;
    std::vector<std::array<int, 3>> tri_edges; // edge ids for sides (0,1),(1,2),(2,0)
    std::vector<double> areas;

    int ntriangles() const { return static_cast<int>(triangles.size()); }
    double min_incircle_diameter() const;
    double max_diameter() const; // max cell diameter over the mesh
};

// ASCII format: header "nv nt nb"; nv lines "x y"; nt lines "i j k" (0-based,
// counterclockwise); nb lines "i j tag" with tag in {outflow, inflow, wall}.
Mesh2D load_mesh_2d(const std::string& path);

// Builds connectivity/validation for an in-memory mesh (used by the loader and tests).
void finalize_mesh_2d(Mesh2D& mesh,
                      const std::vector<std::array<int, 2>>& boundary_edges,
                      const std::vector<BoundaryTag>& boundary_tags);

struct DofMap {
    int degree = 1;
    int dim = 1;
    int ndof = 0;
    std::vector<std::vector<int>> element_dofs; // local order matches basis lattice order
    std::vector<std::vector<int>> dof_elements; // inverse map
    std::vector<std::array<double, 2>> dof_points; // lattice point coordinates (y=0 in 1D)
};

DofMap build_dof_map(const Mesh1D& mesh, int degree);
DofMap build_dof_map(const Mesh2D& mesh, int degree);

} // namespace kinrd
