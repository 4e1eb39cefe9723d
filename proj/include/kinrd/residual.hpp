#pragma once

#include "kinrd/basis.hpp"
#include "kinrd/kinetic.hpp"
#include "kinrd/mesh.hpp"

#include <Eigen/Sparse>

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace kinrd {

struct SchemeConfig {
    enum class Variant { galerkin_jump, lxf_blend };
    Variant variant = Variant::galerkin_jump;
    int degree = 1;
    std::array<double, 3> theta{0.0, 0.0, 0.0}; // jump coefficients theta_1..theta_d
};

// Distribute one element's Lax-Friedrichs nodal residuals into a monotone
// high-order share of the total, blended by Theta. Componentwise scalar form.
void limit_blend(std::span<const double> lxf, double total, std::span<double> out);

// Lumped source residual at one DoF: |C_sigma| (M(u) - f)/eps.
// f_blocks/out are nblocks x ncomp.
void source_residual(const DrmModel& drm, const double* f_blocks, const double* u,
                     double lumped, double* out);

// Space discretization for one (mesh, dof map, scheme): element residuals,
// jump stabilization, mass operators, evaluation. Immutable after
// construction; the assembly loop uses per-element scratch plus a fixed-order
// gather so results do not depend on the thread count.
class SpaceOperator {
public:
    SpaceOperator(const Mesh1D& mesh, const DofMap& dofmap, const SchemeConfig& scheme);
    SpaceOperator(const Mesh2D& mesh, const DofMap& dofmap, const SchemeConfig& scheme);

    int ndof() const { return dofmap_.ndof; }
    int dim() const { return dofmap_.dim; }
    int degree() const { return dofmap_.degree; }
    int nelems() const { return static_cast<int>(dofmap_.element_dofs.size()); }
    int nloc() const { return nloc_; }
    const SchemeConfig& scheme() const { return scheme_; }
    const DofMap& dofmap() const { return dofmap_; }
    const std::vector<double>& lumped() const { return lumped_; }
    double domain_measure() const { return measure_total_; }
    double min_h() const { return min_h_; }
    double max_h() const { return max_h_; }

    void set_threads(int n) { threads_ = n > 0 ? n : 1; }

    // Advective nodal residual summed over elements (all kinetic blocks),
    // including jump stabilization / LxF-blend limiting per the scheme.
    void advective_residual(const DrmModel& drm, const KineticField& f,
                            KineticField& out) const;

    // out_sigma = sum_K int_K phi_sigma * in, applied to ncols dof vectors.
    void apply_mass(const double* in, double* out, int ncols) const;

    // Element-level pieces (assembly internals, exposed for verification).
    // Residual of one element for one kinetic block; fcol points at the ncomp
    // dof columns of that block; out is nloc x ncomp (local-dof major).
    void element_galerkin(int elem, const DrmModel& drm, int block,
                          const KineticField& f, std::vector<double>& out) const;
    double lxf_alpha(int elem, const DrmModel& drm, int block) const;
    // Jump stabilization alone, assembled over all interior edges.
    void jump_stabilization(const double* fcol, double* out) const;

    // Coefficients <-> lattice-point values, one dof column at a time.
    void values_from_coeffs(const double* coeffs, double* values) const;
    void coeffs_from_values(const double* values, double* coeffs) const;
    double eval_at(const double* coeffs, double x, double y = 0.0) const;

private:
    void build_common();
    void build_1d(const Mesh1D& mesh);
    void build_2d(const Mesh2D& mesh);
    void element_loop(const DrmModel& drm, const KineticField& f,
                      std::vector<double>& buffer) const;

    DofMap dofmap_;
    SchemeConfig scheme_;
    int nloc_ = 0;
    int threads_ = 1;
    std::optional<Mesh1D> mesh1d_;
    std::optional<Mesh2D> mesh2d_;
    std::optional<BernsteinBasis1D> basis1d_;
    std::optional<BernsteinBasisTri> basis2d_;

    // per element: D directional Galerkin matrices (nloc x nloc, row major),
    // measure, and max |grad phi| factors for the LxF alpha
    std::vector<std::array<std::vector<double>, 2>> galerkin_;
    std::vector<double> measure_;
    std::vector<std::array<double, 2>> maxgrad_axis_;
    std::vector<double> maxgrad_sum_;
    double measure_total_ = 0.0, min_h_ = 0.0, max_h_ = 0.0;

    std::vector<double> lumped_;
    Eigen::SparseMatrix<double, Eigen::RowMajor> mass_;
    Eigen::SparseMatrix<double, Eigen::RowMajor> jump_;
    bool has_jump_ = false;

    std::vector<double> vandermonde_inv_; // reference lattice, nloc x nloc
    std::vector<double> vandermonde_;
};

} // namespace kinrd
