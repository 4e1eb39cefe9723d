#include "kinrd/residual.hpp"

#include "kinrd/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <thread>

namespace kinrd {

void limit_blend(std::span<const double> lxf, double total, std::span<double> out) {
    const size_t n = lxf.size();
    double sumabs = 0.0;
    for (double v : lxf) sumabs += std::abs(v);
    if (total == 0.0 || sumabs == 0.0) {
        // no signal to redistribute: keep the LxF residual as-is
        std::copy(lxf.begin(), lxf.end(), out.begin());
        return;
    }
    double s = 0.0;
    for (size_t j = 0; j < n; ++j) s += std::max(lxf[j] / total, 0.0);
    if (s == 0.0) {
        std::copy(lxf.begin(), lxf.end(), out.begin());
        return;
    }
    double theta = std::abs(total) / sumabs;
    for (size_t j = 0; j < n; ++j) {
        double beta = std::max(lxf[j] / total, 0.0) / s;
        out[j] = (1.0 - theta) * beta * total + theta * lxf[j];
    }
}

void source_residual(const DrmModel& drm, const double* f_blocks, const double* u,
                     double lumped, double* out) {
    if (drm.eps <= 0.0) throw ConfigError("source_residual: requires eps > 0");
    const int n = drm.nblocks() * drm.ncomp();
    std::vector<double> M(n);
    drm.maxwellian(u, M.data());
    for (int i = 0; i < n; ++i) out[i] = lumped * (M[i] - f_blocks[i]) / drm.eps;
}

SpaceOperator::SpaceOperator(const Mesh1D& mesh, const DofMap& dofmap,
                             const SchemeConfig& scheme)
    : dofmap_(dofmap), scheme_(scheme) {
    basis1d_.emplace(dofmap.degree);
    mesh1d_ = mesh;
    nloc_ = dofmap.degree + 1;
    build_1d(mesh);
    build_common();
}

SpaceOperator::SpaceOperator(const Mesh2D& mesh, const DofMap& dofmap,
                             const SchemeConfig& scheme)
    : dofmap_(dofmap), scheme_(scheme) {
    basis2d_.emplace(dofmap.degree);
    mesh2d_ = mesh;
    nloc_ = basis2d_->ndof();
    build_2d(mesh);
    build_common();
}

void SpaceOperator::build_1d(const Mesh1D& mesh) {
    const int d = dofmap_.degree;
    const auto& quad = basis1d_->quad;
    const int nq = static_cast<int>(quad.x.size());
    const int ne = mesh.ncells;

    std::vector<std::vector<double>> phi(nq, std::vector<double>(nloc_));
    std::vector<std::vector<double>> dphi(nq, std::vector<double>(nloc_));
    for (int q = 0; q < nq; ++q) {
        basis1d_->eval(quad.x[q], phi[q]);
        basis1d_->deriv(quad.x[q], 1, dphi[q]);
    }
    // reference-derivative max also at the endpoints (where it peaks)
    double ref_grad_max = 0.0;
    {
        std::vector<double> g(nloc_);
        for (double t : {0.0, 0.5, 1.0}) {
            basis1d_->deriv(t, 1, g);
            for (double v : g) ref_grad_max = std::max(ref_grad_max, std::abs(v));
        }
        for (int q = 0; q < nq; ++q)
            for (double v : dphi[q]) ref_grad_max = std::max(ref_grad_max, std::abs(v));
    }

    galerkin_.resize(ne);
    measure_.resize(ne);
    maxgrad_axis_.resize(ne);
    maxgrad_sum_.resize(ne);
    lumped_.assign(dofmap_.ndof, 0.0);
    std::vector<Eigen::Triplet<double>> mass_trip;

    for (int e = 0; e < ne; ++e) {
        double h = mesh.cell_width(e);
        measure_[e] = h;
        // int_K phi_s dphi_t dx: the h from dx and 1/h from d/dx cancel
        auto& S = galerkin_[e][0];
        S.assign(static_cast<size_t>(nloc_) * nloc_, 0.0);
        for (int q = 0; q < nq; ++q)
            for (int s = 0; s < nloc_; ++s)
                for (int t = 0; t < nloc_; ++t)
                    S[s * nloc_ + t] += quad.w[q] * phi[q][s] * dphi[q][t];
        maxgrad_axis_[e] = {ref_grad_max / h, 0.0};
        maxgrad_sum_[e] = ref_grad_max / h;
        const auto& dofs = dofmap_.element_dofs[e];
        for (int s = 0; s < nloc_; ++s) {
            double lump = 0.0;
            for (int q = 0; q < nq; ++q) lump += quad.w[q] * phi[q][s];
            lumped_[dofs[s]] += h * lump;
            for (int t = 0; t < nloc_; ++t) {
                double m = 0.0;
                for (int q = 0; q < nq; ++q) m += quad.w[q] * phi[q][s] * phi[q][t];
                mass_trip.emplace_back(dofs[s], dofs[t], h * m);
            }
        }
    }
    mass_.resize(dofmap_.ndof, dofmap_.ndof);
    mass_.setFromTriplets(mass_trip.begin(), mass_trip.end());

    // jump stabilization operator over interior cell interfaces
    std::vector<Eigen::Triplet<double>> jump_trip;
    bool any_theta = false;
    for (int k = 0; k < d; ++k) any_theta = any_theta || scheme_.theta[k] != 0.0;
    if (any_theta) {
        std::vector<double> dl(nloc_), dr(nloc_);
        int first = mesh.periodic ? 0 : 1;
        for (int i = first; i < ne; ++i) {
            int eL = (i == 0) ? ne - 1 : i - 1;
            int eR = i;
            double hL = mesh.cell_width(eL), hR = mesh.cell_width(eR);
            double he = 0.5 * (hL + hR);
            const auto& dofsL = dofmap_.element_dofs[eL];
            const auto& dofsR = dofmap_.element_dofs[eR];
            for (int k = 1; k <= d; ++k) {
                double th = scheme_.theta[k - 1];
                if (th == 0.0) continue;
                basis1d_->deriv(1.0, k, dl);
                basis1d_->deriv(0.0, k, dr);
                // jump vector over the union of both cells' dofs
                std::vector<std::pair<int, double>> jv;
                for (int s = 0; s < nloc_; ++s)
                    jv.emplace_back(dofsL[s], dl[s] / std::pow(hL, k));
                for (int s = 0; s < nloc_; ++s)
                    jv.emplace_back(dofsR[s], -dr[s] / std::pow(hR, k));
                double scale = th * std::pow(he, 2.0 * k);
                for (auto& [gi, vi] : jv)
                    for (auto& [gj, vj] : jv) jump_trip.emplace_back(gi, gj, scale * vi * vj);
            }
        }
        has_jump_ = !jump_trip.empty();
    }
    jump_.resize(dofmap_.ndof, dofmap_.ndof);
    jump_.setFromTriplets(jump_trip.begin(), jump_trip.end());

    measure_total_ = mesh.b - mesh.a;
    min_h_ = mesh.min_width();
    max_h_ = 0.0;
    for (int e = 0; e < ne; ++e) max_h_ = std::max(max_h_, mesh.cell_width(e));
}

void SpaceOperator::build_2d(const Mesh2D& mesh) {
    const int d = dofmap_.degree;
    const auto& quad = basis2d_->quad;
    const int nq = static_cast<int>(quad.x.size());
    const int ne = mesh.ntriangles();

    std::vector<std::vector<double>> phi(nq, std::vector<double>(nloc_));
    std::vector<std::vector<std::array<double, 2>>> gphi(
        nq, std::vector<std::array<double, 2>>(nloc_));
    for (int q = 0; q < nq; ++q) {
        basis2d_->eval(quad.x[q][0], quad.x[q][1], phi[q]);
        basis2d_->grad(quad.x[q][0], quad.x[q][1], gphi[q]);
    }

    galerkin_.resize(ne);
    measure_.resize(ne);
    maxgrad_axis_.resize(ne);
    maxgrad_sum_.resize(ne);
    lumped_.assign(dofmap_.ndof, 0.0);
    std::vector<Eigen::Triplet<double>> mass_trip;

    std::vector<std::array<double, 4>> jinv(ne); // row-major inverse Jacobian
    for (int e = 0; e < ne; ++e) {
        const auto& tri = mesh.triangles[e];
        auto& A = mesh.vertices[tri[0]];
        auto& B = mesh.vertices[tri[1]];
        auto& C = mesh.vertices[tri[2]];
        double j00 = B[0] - A[0], j01 = C[0] - A[0];
        double j10 = B[1] - A[1], j11 = C[1] - A[1];
        double det = j00 * j11 - j01 * j10; // 2*area
        jinv[e] = {j11 / det, -j01 / det, -j10 / det, j00 / det};
        double area = mesh.areas[e];
        measure_[e] = area;

        auto& Sx = galerkin_[e][0];
        auto& Sy = galerkin_[e][1];
        Sx.assign(static_cast<size_t>(nloc_) * nloc_, 0.0);
        Sy.assign(static_cast<size_t>(nloc_) * nloc_, 0.0);
        double mgx = 0.0, mgy = 0.0, mgs = 0.0;
        for (int q = 0; q < nq; ++q) {
            for (int t = 0; t < nloc_; ++t) {
                // physical gradient: J^{-T} * reference gradient
                double gx = jinv[e][0] * gphi[q][t][0] + jinv[e][2] * gphi[q][t][1];
                double gy = jinv[e][1] * gphi[q][t][0] + jinv[e][3] * gphi[q][t][1];
                mgx = std::max(mgx, std::abs(gx));
                mgy = std::max(mgy, std::abs(gy));
                mgs = std::max(mgs, std::abs(gx + gy));
                for (int s = 0; s < nloc_; ++s) {
                    double wphi = 2.0 * area * quad.w[q] * phi[q][s];
                    Sx[s * nloc_ + t] += wphi * gx;
                    Sy[s * nloc_ + t] += wphi * gy;
                }
            }
        }
        maxgrad_axis_[e] = {mgx, mgy};
        maxgrad_sum_[e] = mgs;

        const auto& dofs = dofmap_.element_dofs[e];
        for (int s = 0; s < nloc_; ++s) {
            double lump = 0.0;
            for (int q = 0; q < nq; ++q) lump += quad.w[q] * phi[q][s];
            lumped_[dofs[s]] += 2.0 * area * lump;
            for (int t = 0; t < nloc_; ++t) {
                double m = 0.0;
                for (int q = 0; q < nq; ++q) m += quad.w[q] * phi[q][s] * phi[q][t];
                mass_trip.emplace_back(dofs[s], dofs[t], 2.0 * area * m);
            }
        }
    }
    mass_.resize(dofmap_.ndof, dofmap_.ndof);
    mass_.setFromTriplets(mass_trip.begin(), mass_trip.end());

    // jump stabilization over interior edges, normal derivatives
    std::vector<Eigen::Triplet<double>> jump_trip;
    bool any_theta = false;
    for (int k = 0; k < d; ++k) any_theta = any_theta || scheme_.theta[k] != 0.0;
    if (any_theta) {
        QuadRule1D erule = gauss_legendre_unit(d + 1);
        std::vector<double> dn(nloc_);
        for (const auto& edge : mesh.edges) {
            if (edge.left < 0 || edge.right < 0) continue;
            auto& p0 = mesh.vertices[edge.v0];
            auto& p1 = mesh.vertices[edge.v1];
            for (size_t q = 0; q < erule.x.size(); ++q) {
                double px = p0[0] + erule.x[q] * (p1[0] - p0[0]);
                double py = p0[1] + erule.x[q] * (p1[1] - p0[1]);
                // per side: reference point and reference direction of the normal
                struct Side {
                    int elem;
                    double rx, ry;
                    std::array<double, 2> sref;
                };
                std::array<Side, 2> sides;
                int els[2] = {edge.left, edge.right};
                for (int si = 0; si < 2; ++si) {
                    int e = els[si];
                    const auto& tri = mesh.triangles[e];
                    auto& A = mesh.vertices[tri[0]];
                    double dx = px - A[0], dy = py - A[1];
                    sides[si].elem = e;
                    sides[si].rx = jinv[e][0] * dx + jinv[e][1] * dy;
                    sides[si].ry = jinv[e][2] * dx + jinv[e][3] * dy;
                    sides[si].sref = {jinv[e][0] * edge.normal[0] + jinv[e][1] * edge.normal[1],
                                      jinv[e][2] * edge.normal[0] + jinv[e][3] * edge.normal[1]};
                }
                for (int k = 1; k <= d; ++k) {
                    double th = scheme_.theta[k - 1];
                    if (th == 0.0) continue;
                    std::vector<std::pair<int, double>> jv;
                    for (int si = 0; si < 2; ++si) {
                        basis2d_->dir_deriv(sides[si].rx, sides[si].ry, sides[si].sref, k, dn);
                        double sign = (si == 0) ? 1.0 : -1.0;
                        const auto& dofs = dofmap_.element_dofs[sides[si].elem];
                        for (int s = 0; s < nloc_; ++s) jv.emplace_back(dofs[s], sign * dn[s]);
                    }
                    double scale =
                        th * std::pow(edge.length, 2.0 * k) * edge.length * erule.w[q];
                    for (auto& [gi, vi] : jv)
                        for (auto& [gj, vj] : jv)
                            jump_trip.emplace_back(gi, gj, scale * vi * vj);
                }
            }
        }
        has_jump_ = !jump_trip.empty();
    }
    jump_.resize(dofmap_.ndof, dofmap_.ndof);
    jump_.setFromTriplets(jump_trip.begin(), jump_trip.end());

    measure_total_ = 0.0;
    for (double a : mesh.areas) measure_total_ += a;
    min_h_ = mesh.min_incircle_diameter();
    max_h_ = mesh.max_diameter();
}

void SpaceOperator::build_common() {
    // reference Vandermonde at the lattice points (coefficients <-> values)
    Eigen::MatrixXd V(nloc_, nloc_);
    std::vector<double> vals(nloc_);
    if (dim() == 1) {
        for (int p = 0; p < nloc_; ++p) {
            basis1d_->eval(static_cast<double>(p) / dofmap_.degree, vals);
            for (int t = 0; t < nloc_; ++t) V(p, t) = vals[t];
        }
    } else {
        const auto& lat = basis2d_->lattice;
        for (int p = 0; p < nloc_; ++p) {
            double x = static_cast<double>(lat[p][1]) / dofmap_.degree;
            double y = static_cast<double>(lat[p][2]) / dofmap_.degree;
            basis2d_->eval(x, y, vals);
            for (int t = 0; t < nloc_; ++t) V(p, t) = vals[t];
        }
    }
    Eigen::MatrixXd Vi = V.inverse();
    vandermonde_.resize(static_cast<size_t>(nloc_) * nloc_);
    vandermonde_inv_.resize(static_cast<size_t>(nloc_) * nloc_);
    for (int i = 0; i < nloc_; ++i)
        for (int j = 0; j < nloc_; ++j) {
            vandermonde_[i * nloc_ + j] = V(i, j);
            vandermonde_inv_[i * nloc_ + j] = Vi(i, j);
        }
}

void SpaceOperator::element_galerkin(int elem, const DrmModel& drm, int block,
                                     const KineticField& f, std::vector<double>& out) const {
    const int K = drm.ncomp();
    out.assign(static_cast<size_t>(nloc_) * K, 0.0);
    const auto& dofs = dofmap_.element_dofs[elem];
    for (int dir = 0; dir < dim(); ++dir) {
        double c = drm.velocity(block, dir);
        if (c == 0.0) continue;
        const auto& S = galerkin_[elem][dir];
        for (int comp = 0; comp < K; ++comp) {
            const double* fc = f.col(block, comp);
            for (int s = 0; s < nloc_; ++s) {
                double acc = 0.0;
                for (int t = 0; t < nloc_; ++t) acc += S[s * nloc_ + t] * fc[dofs[t]];
                out[s * K + comp] += c * acc;
            }
        }
    }
}

double SpaceOperator::lxf_alpha(int elem, const DrmModel& drm, int block) const {
    double g = (block == dim()) ? maxgrad_sum_[elem]
                                : maxgrad_axis_[elem][block];
    // scale by the dof spacing |K|/d, not the full cell, so the induced
    // dissipation does not grow with the polynomial degree
    return measure_[elem] * drm.lambda * g / dofmap_.degree;
}

void SpaceOperator::element_loop(const DrmModel& drm, const KineticField& f,
                                 std::vector<double>& buffer) const {
    const int K = drm.ncomp();
    const int ncols = drm.nblocks() * K;
    const size_t stride = static_cast<size_t>(nloc_) * ncols;
    const bool blend = scheme_.variant == SchemeConfig::Variant::lxf_blend;

    auto work = [&](int e0, int e1) {
        std::vector<double> rloc, tmp(nloc_), bl(nloc_);
        for (int e = e0; e < e1; ++e) {
            double* out = buffer.data() + e * stride;
            const auto& dofs = dofmap_.element_dofs[e];
            for (int n = 0; n < drm.nblocks(); ++n) {
                element_galerkin(e, drm, n, f, rloc);
                if (!blend) {
                    for (int s = 0; s < nloc_; ++s)
                        for (int c = 0; c < K; ++c)
                            out[(n * K + c) * nloc_ + s] = rloc[s * K + c];
                    continue;
                }
                double alpha = lxf_alpha(e, drm, n);
                for (int c = 0; c < K; ++c) {
                    const double* fc = f.col(n, c);
                    double total = 0.0, mean = 0.0;
                    for (int s = 0; s < nloc_; ++s) {
                        total += rloc[s * K + c];
                        mean += fc[dofs[s]];
                    }
                    mean /= nloc_;
                    for (int s = 0; s < nloc_; ++s)
                        tmp[s] = rloc[s * K + c] + alpha * (fc[dofs[s]] - mean);
                    limit_blend(tmp, total, bl);
                    for (int s = 0; s < nloc_; ++s) out[(n * K + c) * nloc_ + s] = bl[s];
                }
            }
        }
    };

    const int ne = nelems();
    if (threads_ <= 1 || ne < 4 * threads_) {
        work(0, ne);
        return;
    }
    std::vector<std::thread> pool;
    int chunk = (ne + threads_ - 1) / threads_;
    for (int t = 0; t < threads_; ++t) {
        int e0 = t * chunk, e1 = std::min(ne, e0 + chunk);
        if (e0 >= e1) break;
        pool.emplace_back(work, e0, e1);
    }
    for (auto& th : pool) th.join();
}

void SpaceOperator::advective_residual(const DrmModel& drm, const KineticField& f,
                                       KineticField& out) const {
    const int K = drm.ncomp();
    const int ncols = drm.nblocks() * K;
    const size_t stride = static_cast<size_t>(nloc_) * ncols;
    std::vector<double> buffer(static_cast<size_t>(nelems()) * stride);
    element_loop(drm, f, buffer);

    out.set_zero();
    // fixed-order gather: results are independent of the thread count
    for (int e = 0; e < nelems(); ++e) {
        const auto& dofs = dofmap_.element_dofs[e];
        const double* loc = buffer.data() + e * stride;
        for (int n = 0; n < drm.nblocks(); ++n)
            for (int c = 0; c < K; ++c) {
                double* oc = out.col(n, c);
                const double* lc = loc + (n * K + c) * nloc_;
                for (int s = 0; s < nloc_; ++s) oc[dofs[s]] += lc[s];
            }
    }
    if (has_jump_) {
        for (int n = 0; n < drm.nblocks(); ++n)
            for (int c = 0; c < K; ++c) {
                Eigen::Map<const Eigen::VectorXd> fc(f.col(n, c), ndof());
                Eigen::Map<Eigen::VectorXd> oc(out.col(n, c), ndof());
                oc += jump_ * fc;
            }
    }
}

void SpaceOperator::jump_stabilization(const double* fcol, double* out) const {
    Eigen::Map<const Eigen::VectorXd> x(fcol, ndof());
    Eigen::Map<Eigen::VectorXd> y(out, ndof());
    if (has_jump_) y += jump_ * x;
}

void SpaceOperator::apply_mass(const double* in, double* out, int ncols) const {
    for (int c = 0; c < ncols; ++c) {
        Eigen::Map<const Eigen::VectorXd> x(in + static_cast<size_t>(c) * ndof(), ndof());
        Eigen::Map<Eigen::VectorXd> y(out + static_cast<size_t>(c) * ndof(), ndof());
        y = mass_ * x;
    }
}

void SpaceOperator::values_from_coeffs(const double* coeffs, double* values) const {
    for (int e = 0; e < nelems(); ++e) {
        const auto& dofs = dofmap_.element_dofs[e];
        for (int p = 0; p < nloc_; ++p) {
            double v = 0.0;
            for (int t = 0; t < nloc_; ++t) v += vandermonde_[p * nloc_ + t] * coeffs[dofs[t]];
            values[dofs[p]] = v;
        }
    }
}

void SpaceOperator::coeffs_from_values(const double* values, double* coeffs) const {
    for (int e = 0; e < nelems(); ++e) {
        const auto& dofs = dofmap_.element_dofs[e];
        for (int p = 0; p < nloc_; ++p) {
            double v = 0.0;
            for (int t = 0; t < nloc_; ++t)
                v += vandermonde_inv_[p * nloc_ + t] * values[dofs[t]];
            coeffs[dofs[p]] = v;
        }
    }
}

double SpaceOperator::eval_at(const double* coeffs, double x, double y) const {
    std::vector<double> vals(nloc_);
    if (dim() == 1) {
        const auto& m = *mesh1d_;
        double xx = std::clamp(x, m.a, m.b);
        int lo = 0, hi = m.ncells;
        while (hi - lo > 1) {
            int mid = (lo + hi) / 2;
            if (m.nodes[mid] <= xx) lo = mid;
            else hi = mid;
        }
        double t = (xx - m.nodes[lo]) / m.cell_width(lo);
        basis1d_->eval(std::clamp(t, 0.0, 1.0), vals);
        const auto& dofs = dofmap_.element_dofs[lo];
        double v = 0.0;
        for (int s = 0; s < nloc_; ++s) v += vals[s] * coeffs[dofs[s]];
        return v;
    }
    const auto& m = *mesh2d_;
    int best = -1;
    double best_def = 1e30, brx = 0.0, bry = 0.0;
    for (int e = 0; e < m.ntriangles(); ++e) {
        const auto& tri = m.triangles[e];
        auto& A = m.vertices[tri[0]];
        auto& B = m.vertices[tri[1]];
        auto& C = m.vertices[tri[2]];
        double det = (B[0] - A[0]) * (C[1] - A[1]) - (C[0] - A[0]) * (B[1] - A[1]);
        double rx = ((C[1] - A[1]) * (x - A[0]) - (C[0] - A[0]) * (y - A[1])) / det;
        double ry = (-(B[1] - A[1]) * (x - A[0]) + (B[0] - A[0]) * (y - A[1])) / det;
        double defect = std::max({-rx, -ry, rx + ry - 1.0, 0.0});
        if (defect < best_def) {
            best_def = defect;
            best = e;
            brx = rx;
            bry = ry;
        }
        if (defect <= 0.0) break;
    }
    if (best < 0 || best_def > 1e-8)
        throw ConfigError("eval_at: point outside the mesh");
    brx = std::clamp(brx, 0.0, 1.0);
    bry = std::clamp(bry, 0.0, 1.0);
    if (brx + bry > 1.0) {
        double t = brx + bry;
        brx /= t;
        bry /= t;
    }
    basis2d_->eval(brx, bry, vals);
    const auto& dofs = dofmap_.element_dofs[best];
    double v = 0.0;
    for (int s = 0; s < nloc_; ++s) v += vals[s] * coeffs[dofs[s]];
    return v;
}

} // namespace kinrd
