#include "kinrd/kinetic.hpp"

#include "kinrd/errors.hpp"

#include <cmath>

namespace kinrd {

DrmModel make_drm(const HyperbolicModel& base, double lambda, double eps) {
    if (lambda <= 0.0) throw ConfigError("DRM: lambda must be positive");
    if (eps < 0.0) throw ConfigError("DRM: eps must be nonnegative");
    return {base, lambda, eps};
}

void DrmModel::maxwellian(const double* u, double* f_out) const {
    const int D = base.dim, K = base.ncomp;
    // M_{D+1} = (u + sum_d A_d(u)/lambda) / (D+1); M_j = -A_j(u)/lambda + M_{D+1}
    std::array<double, 4> flux;
    double* last = f_out + static_cast<size_t>(D) * K;
    for (int c = 0; c < K; ++c) last[c] = u[c];
    for (int d = 0; d < D; ++d) {
        base.flux(u, d, flux.data());
        double* fj = f_out + static_cast<size_t>(d) * K;
        for (int c = 0; c < K; ++c) {
            last[c] += flux[c] / lambda;
            fj[c] = -flux[c] / lambda;
        }
    }
    for (int c = 0; c < K; ++c) last[c] /= (D + 1);
    for (int d = 0; d < D; ++d) {
        double* fj = f_out + static_cast<size_t>(d) * K;
        for (int c = 0; c < K; ++c) fj[c] += last[c];
    }
}

void project(const KineticField& f, std::vector<double>& u) {
    u.assign(static_cast<size_t>(f.ndof) * f.ncomp, 0.0);
    for (int c = 0; c < f.ncomp; ++c) {
        double* uc = u.data() + static_cast<size_t>(c) * f.ndof;
        for (int n = 0; n < f.nblocks; ++n) {
            const double* fc = f.col(n, c);
            for (int i = 0; i < f.ndof; ++i) uc[i] += fc[i];
        }
    }
}

std::vector<double> flux_consistency_defect(const DrmModel& drm, const double* u) {
    const int D = drm.base.dim, K = drm.base.ncomp, N = drm.nblocks();
    std::vector<double> M(static_cast<size_t>(N) * K);
    drm.maxwellian(u, M.data());
    std::vector<double> defect(D, 0.0);
    std::array<double, 4> flux;
    for (int d = 0; d < D; ++d) {
        drm.base.flux(u, d, flux.data());
        for (int c = 0; c < K; ++c) {
            double s = 0.0;
            for (int n = 0; n < N; ++n) s += drm.velocity(n, d) * M[n * K + c];
            defect[d] = std::max(defect[d], std::abs(s - flux[c]));
        }
    }
    return defect;
}

SubcharReport check_subcharacteristic(const DrmModel& drm,
                                      std::span<const double> states, int ncomp) {
    SubcharReport rep;
    double vmax = 0.0;
    const size_t n = states.size() / ncomp;
    for (size_t i = 0; i < n; ++i)
        vmax = std::max(vmax, drm.base.max_wavespeed(states.data() + i * ncomp));
    rep.margin = drm.lambda - vmax;
    rep.pass = rep.margin >= 0.0;
    return rep;
}

JinXinState jin_xin_map(const DrmModel& drm, const double* f_blocks) {
    if (drm.base.dim != 1) throw ConfigError("jin_xin_map: 1D models only");
    const int K = drm.base.ncomp;
    JinXinState s;
    s.u.resize(K);
    s.v.resize(K);
    for (int c = 0; c < K; ++c) {
        s.u[c] = f_blocks[c] + f_blocks[K + c];
        s.v[c] = drm.lambda * (f_blocks[K + c] - f_blocks[c]);
    }
    return s;
}

void jin_xin_inverse(const DrmModel& drm, const JinXinState& s, double* f_blocks) {
    if (drm.base.dim != 1) throw ConfigError("jin_xin_inverse: 1D models only");
    const int K = drm.base.ncomp;
    for (int c = 0; c < K; ++c) {
        f_blocks[c] = 0.5 * (s.u[c] - s.v[c] / drm.lambda);
        f_blocks[K + c] = 0.5 * (s.u[c] + s.v[c] / drm.lambda);
    }
}

} // namespace kinrd
