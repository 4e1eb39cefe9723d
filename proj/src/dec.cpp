#include "kinrd/dec.hpp"

#include "kinrd/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace kinrd {

SubtimeGrid make_subtime_grid(int M) {
    if (M < 1 || M > 6) throw ConfigError("subtime grid: M must be in [1,6]");
    SubtimeGrid g;
    g.M = M;
    g.w.assign(M + 1, std::vector<double>(M + 1, 0.0));
    // moment conditions: sum_r t_r^p w[m][r] = tau_m^{p+1}/(p+1), p = 0..M
    Eigen::MatrixXd A(M + 1, M + 1);
    for (int p = 0; p <= M; ++p)
        for (int r = 0; r <= M; ++r)
            A(p, r) = std::pow(static_cast<double>(r) / M, p);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    for (int m = 1; m <= M; ++m) {
        double tau = static_cast<double>(m) / M;
        Eigen::VectorXd rhs(M + 1);
        for (int p = 0; p <= M; ++p) rhs(p) = std::pow(tau, p + 1) / (p + 1);
        Eigen::VectorXd w = lu.solve(rhs);
        for (int r = 0; r <= M; ++r) g.w[m][r] = w(r);
    }
    return g;
}

DecStepper::DecStepper(const SpaceOperator& op, const DrmModel& drm, const DecConfig& cfg)
    : op_(op), drm_(drm), cfg_(cfg), grid_(make_subtime_grid(cfg.subnodes)) {
    if (cfg.iterations < 1) throw ConfigError("DeC: iterations must be >= 1");
}

void DecStepper::maxwellian_field(const std::vector<double>& u, KineticField& out) const {
    const int K = drm_.ncomp(), N = drm_.nblocks(), n = op_.ndof();
    std::vector<double> uvals(u.size());
    for (int c = 0; c < K; ++c)
        op_.values_from_coeffs(u.data() + static_cast<size_t>(c) * n,
                               uvals.data() + static_cast<size_t>(c) * n);
    KineticField mvals(n, N, K);
    std::vector<double> us(K), Mloc(static_cast<size_t>(N) * K);
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < K; ++c) us[c] = uvals[static_cast<size_t>(c) * n + i];
        drm_.maxwellian(us.data(), Mloc.data());
        for (int bk = 0; bk < N; ++bk)
            for (int c = 0; c < K; ++c) mvals.at(i, bk, c) = Mloc[bk * K + c];
    }
    for (int bk = 0; bk < N; ++bk)
        for (int c = 0; c < K; ++c) op_.coeffs_from_values(mvals.col(bk, c), out.col(bk, c));
}

void DecStepper::step(std::vector<double>& u, KineticField& f, double dt) {
    const int K = drm_.ncomp(), N = drm_.nblocks(), n = op_.ndof();
    const int M = cfg_.subnodes;
    const double eps = drm_.eps;
    const auto& lumped = op_.lumped();
    deltas_.clear();

    std::vector<std::vector<double>> usub(M + 1, std::vector<double>(u.size()));
    std::vector<KineticField> fsub(M + 1, KineticField(n, N, K));
    std::vector<KineticField> R(M + 1, KineticField(n, N, K));
    std::vector<std::vector<double>> pr(M + 1, std::vector<double>(u.size()));
    usub[0] = u;
    fsub[0] = f;

    op_.advective_residual(drm_, fsub[0], R[0]);
    project(R[0], pr[0]);

    KineticField mfield(n, N, K);

    // prediction
    for (int m = 1; m <= M; ++m) {
        double dtm = dt * m / M;
        double a = eps / (eps + dtm);
        double b = dtm / (eps + dtm);
        for (int c = 0; c < K; ++c)
            for (int i = 0; i < n; ++i) {
                size_t idx = static_cast<size_t>(c) * n + i;
                usub[m][idx] = usub[0][idx] - dtm / lumped[i] * pr[0][idx];
            }
        maxwellian_field(usub[m], mfield);
        for (int i = 0; i < n; ++i)
            for (int bk = 0; bk < N; ++bk)
                for (int c = 0; c < K; ++c)
                    fsub[m].at(i, bk, c) = a * fsub[0].at(i, bk, c) -
                                           a * dtm / lumped[i] * R[0].at(i, bk, c) +
                                           b * mfield.at(i, bk, c);
        if (fix_) fix_(usub[m], fsub[m]);
    }

    // corrections
    std::vector<KineticField> Mx(M + 1, KineticField(n, N, K));
    std::vector<std::vector<double>> unew(M + 1);
    std::vector<double> diff(u.size()), massd(u.size());
    std::vector<double> fdiff(fsub[0].data.size()), fmass(fsub[0].data.size());

    for (int k = 1; k < cfg_.iterations; ++k) {
        for (int r = 1; r <= M; ++r) {
            op_.advective_residual(drm_, fsub[r], R[r]);
            project(R[r], pr[r]);
        }
        for (int r = 0; r <= M; ++r) maxwellian_field(usub[r], Mx[r]);

        // u sweep first, for every subnode
        double delta = 0.0;
        for (int m = 1; m <= M; ++m) {
            for (size_t idx = 0; idx < u.size(); ++idx)
                diff[idx] = usub[m][idx] - usub[0][idx];
            op_.apply_mass(diff.data(), massd.data(), K);
            unew[m] = usub[m];
            for (int c = 0; c < K; ++c)
                for (int i = 0; i < n; ++i) {
                    size_t idx = static_cast<size_t>(c) * n + i;
                    double quad = 0.0;
                    for (int r = 0; r <= M; ++r) quad += grid_.w[m][r] * pr[r][idx];
                    double du = -(massd[idx] + dt * quad) / lumped[i];
                    unew[m][idx] += du;
                    delta = std::max(delta, std::abs(du));
                }
        }
        deltas_.push_back(delta);

        // f sweep, using the updated u in the implicit Maxwellian shift;
        // all subnodes read the (k) iterate, so stage results are staged
        std::vector<KineticField> fnext(M + 1);
        for (int m = 1; m <= M; ++m) {
            double dtm = dt * m / M;
            double am = eps / (eps + dtm);
            double bm = dtm / (eps + dtm);
            double cm = dt / (eps + dtm);
            for (size_t idx = 0; idx < fdiff.size(); ++idx)
                fdiff[idx] = fsub[m].data[idx] - fsub[0].data[idx];
            op_.apply_mass(fdiff.data(), fmass.data(), N * K);
            KineticField fnew = fsub[m];
            maxwellian_field(unew[m], mfield);
            for (int i = 0; i < n; ++i)
                for (int bk = 0; bk < N; ++bk)
                    for (int c = 0; c < K; ++c) {
                        size_t col = (static_cast<size_t>(bk) * K + c) * n + i;
                        double quad_adv = 0.0, quad_src = 0.0;
                        for (int r = 0; r <= M; ++r) {
                            quad_adv += grid_.w[m][r] * R[r].at(i, bk, c);
                            quad_src += grid_.w[m][r] *
                                        (Mx[r].at(i, bk, c) - fsub[r].at(i, bk, c));
                        }
                        fnew.at(i, bk, c) +=
                            bm * (mfield.at(i, bk, c) - Mx[m].at(i, bk, c)) -
                            am / lumped[i] * (fmass[col] + dt * quad_adv) +
                            cm * quad_src;
                    }
            fnext[m] = std::move(fnew);
        }
        for (int m = 1; m <= M; ++m) {
            usub[m] = std::move(unew[m]);
            fsub[m] = std::move(fnext[m]);
            if (fix_) fix_(usub[m], fsub[m]);
        }
    }

    u = usub[M];
    f = std::move(fsub[M]);
}

} // namespace kinrd
