#pragma once

#include "kinrd/model.hpp"

#include <span>
#include <vector>

namespace kinrd {

// Diagonal relaxation wrapper around a macroscopic model: N = D+1 kinetic
// blocks with velocities in {-lambda, 0, +lambda} per direction and explicit
// Maxwellians. Block j < D carries velocity -lambda in direction j; the last
// block carries +lambda in every direction.
struct DrmModel {
    HyperbolicModel base;
    double lambda = 1.0;
    double eps = 1e-9;

    int nblocks() const { return base.dim + 1; }
    int ncomp() const { return base.ncomp; }

    double velocity(int block, int dir) const {
        if (block == base.dim) return lambda;
        return (block == dir) ? -lambda : 0.0;
    }

    // f_out laid out as nblocks x ncomp
    void maxwellian(const double* u, double* f_out) const;
};

DrmModel make_drm(const HyperbolicModel& base, double lambda, double eps);

// DoF-indexed kinetic state. Storage is block-major: one contiguous length-ndof
// vector per (block, comp) column, so sparse operators apply per column.
struct KineticField {
    int ndof = 0, nblocks = 0, ncomp = 0;
    std::vector<double> data;

    KineticField() = default;
    KineticField(int nd, int nb, int nc)
        : ndof(nd), nblocks(nb), ncomp(nc), data(static_cast<size_t>(nd) * nb * nc, 0.0) {}

    int ncols() const { return nblocks * ncomp; }
    double* col(int block, int comp) {
        return data.data() + (static_cast<size_t>(block) * ncomp + comp) * ndof;
    }
    const double* col(int block, int comp) const {
        return data.data() + (static_cast<size_t>(block) * ncomp + comp) * ndof;
    }
    double& at(int dof, int block, int comp) { return col(block, comp)[dof]; }
    double at(int dof, int block, int comp) const { return col(block, comp)[dof]; }
    void set_zero() { std::fill(data.begin(), data.end(), 0.0); }
};

// u = P f = sum of blocks; u laid out comp-major (ncomp vectors of length ndof).
void project(const KineticField& f, std::vector<double>& u);

// per-direction defect || sum_n lambda_n^(d) M_n(u) - A_d(u) ||_inf at one state
std::vector<double> flux_consistency_defect(const DrmModel& drm, const double* u);

struct SubcharReport {
    bool pass = false;
    double margin = 0.0; // lambda - max sampled wavespeed
};

// Heuristic Whitham check: lambda must dominate the sampled macroscopic
// wavespeeds (exact for 1D scalar). Advisory: callers warn, never abort.
SubcharReport check_subcharacteristic(const DrmModel& drm,
                                      std::span<const double> states, int ncomp);

// 1D Jin-Xin variables u = f1+f2, v = lambda(f2-f1) for one DoF.
struct JinXinState {
    std::vector<double> u, v;
};
JinXinState jin_xin_map(const DrmModel& drm, const double* f_blocks);
void jin_xin_inverse(const DrmModel& drm, const JinXinState& s, double* f_blocks);

} // namespace kinrd
