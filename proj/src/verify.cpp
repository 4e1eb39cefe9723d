#include "kinrd/verify.hpp"

#include "kinrd/errors.hpp"

#include <algorithm>
#include <cmath>

namespace kinrd {

namespace {

ErrorReport norms_from_diff(const SpaceOperator& op, const std::vector<double>& diff,
                            int ncomp) {
    const int n = op.ndof();
    const auto& w = op.lumped();
    ErrorReport rep;
    rep.h = op.max_h();
    rep.ndof = n;
    rep.L1.assign(ncomp, 0.0);
    rep.L2.assign(ncomp, 0.0);
    rep.Linf.assign(ncomp, 0.0);
    for (int c = 0; c < ncomp; ++c) {
        const double* d = diff.data() + static_cast<size_t>(c) * n;
        for (int i = 0; i < n; ++i) {
            double a = std::abs(d[i]);
            rep.L1[c] += w[i] * a;
            rep.L2[c] += w[i] * a * a;
            rep.Linf[c] = std::max(rep.Linf[c], a);
        }
        rep.L2[c] = std::sqrt(rep.L2[c]);
    }
    return rep;
}

} // namespace

ErrorReport error_norms(const SpaceOperator& op, const std::vector<double>& u, int ncomp,
                        const std::function<std::vector<double>(double, double)>& reference) {
    const int n = op.ndof();
    if (static_cast<int>(u.size()) != n * ncomp)
        throw ConfigError("error_norms: field size mismatch");
    // compare values at the lattice points, not raw Bernstein coefficients
    std::vector<double> vals(u.size()), diff(u.size());
    for (int c = 0; c < ncomp; ++c)
        op.values_from_coeffs(u.data() + static_cast<size_t>(c) * n,
                              vals.data() + static_cast<size_t>(c) * n);
    const auto& pts = op.dofmap().dof_points;
    for (int i = 0; i < n; ++i) {
        auto ref = reference(pts[i][0], pts[i][1]);
        for (int c = 0; c < ncomp; ++c) {
            size_t idx = static_cast<size_t>(c) * n + i;
            diff[idx] = vals[idx] - ref[c];
        }
    }
    return norms_from_diff(op, diff, ncomp);
}

ErrorReport error_norms(const SpaceOperator& op, const std::vector<double>& u,
                        const std::vector<double>& ref, int ncomp) {
    if (u.size() != ref.size()) throw ConfigError("error_norms: shape mismatch");
    const int n = op.ndof();
    std::vector<double> vu(u.size()), vr(u.size());
    for (int c = 0; c < ncomp; ++c) {
        op.values_from_coeffs(u.data() + static_cast<size_t>(c) * n,
                              vu.data() + static_cast<size_t>(c) * n);
        op.values_from_coeffs(ref.data() + static_cast<size_t>(c) * n,
                              vr.data() + static_cast<size_t>(c) * n);
    }
    for (size_t i = 0; i < vu.size(); ++i) vu[i] -= vr[i];
    return norms_from_diff(op, vu, ncomp);
}

std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& hs) {
    if (errors.size() != hs.size() || errors.size() < 2)
        throw ConfigError("eoc: need matching lists with at least two entries");
    for (size_t i = 1; i < hs.size(); ++i)
        if (hs[i] >= hs[i - 1]) throw ConfigError("eoc: hs must be strictly decreasing");
    for (double e : errors)
        if (e <= 0.0) throw ConfigError("eoc: errors must be positive");
    std::vector<double> rates;
    for (size_t i = 0; i + 1 < errors.size(); ++i)
        rates.push_back(std::log(errors[i] / errors[i + 1]) / std::log(hs[i] / hs[i + 1]));
    return rates;
}

RiemannSolution exact_riemann(const std::array<double, 3>& left,
                              const std::array<double, 3>& right, double gamma) {
    const double g = gamma;
    auto prim = [g](const std::array<double, 3>& u) {
        double rho = u[0];
        if (rho <= 0.0) throw StateError("exact_riemann: rho <= 0");
        double v = u[1] / rho;
        double p = (g - 1.0) * (u[2] - 0.5 * rho * v * v);
        if (p <= 0.0) throw StateError("exact_riemann: p <= 0");
        return std::array<double, 3>{rho, v, p};
    };
    auto [rl, vl, pl] = prim(left);
    auto [rr, vr, pr] = prim(right);
    double cl = std::sqrt(g * pl / rl), cr = std::sqrt(g * pr / rr);

    if (2.0 * (cl + cr) / (g - 1.0) <= vr - vl)
        throw StateError("exact_riemann: vacuum formation");

    auto fK = [g](double p, double pK, double rK, double cK, double& df) {
        if (p > pK) {
            double A = 2.0 / ((g + 1.0) * rK);
            double B = (g - 1.0) / (g + 1.0) * pK;
            double s = std::sqrt(A / (p + B));
            df = s * (1.0 - 0.5 * (p - pK) / (p + B));
            return (p - pK) * s;
        }
        double pr_ = std::pow(p / pK, (g - 1.0) / (2.0 * g));
        df = 1.0 / (rK * cK) * std::pow(p / pK, -(g + 1.0) / (2.0 * g));
        return 2.0 * cK / (g - 1.0) * (pr_ - 1.0);
    };

    // Newton on f(p) = fL + fR + (vR - vL), two-rarefaction initial guess
    double p = std::pow((cl + cr - 0.5 * (g - 1.0) * (vr - vl)) /
                            (cl / std::pow(pl, (g - 1.0) / (2.0 * g)) +
                             cr / std::pow(pr, (g - 1.0) / (2.0 * g))),
                        2.0 * g / (g - 1.0));
    p = std::max(p, 1e-12 * std::min(pl, pr));
    for (int it = 0; it < 100; ++it) {
        double dfl, dfr;
        double fv = fK(p, pl, rl, cl, dfl) + fK(p, pr, rr, cr, dfr) + (vr - vl);
        double dp = fv / (dfl + dfr);
        double pn = p - dp;
        if (pn <= 0.0) pn = 0.5 * p;
        if (std::abs(pn - p) < 1e-14 * std::max(1.0, p)) {
            p = pn;
            break;
        }
        p = pn;
    }
    double dfl, dfr;
    double fl = fK(p, pl, rl, cl, dfl), fr = fK(p, pr, rr, cr, dfr);
    double ustar = 0.5 * (vl + vr) + 0.5 * (fr - fl);

    RiemannSolution sol;
    sol.p_star = p;
    sol.u_star = ustar;
    double ps = p;
    sol.sample = [=](double xi) -> std::array<double, 3> {
        double rho, v, pp;
        if (xi <= ustar) {
            // left side
            if (ps > pl) { // shock
                double S = vl - cl * std::sqrt((g + 1.0) / (2.0 * g) * ps / pl +
                                               (g - 1.0) / (2.0 * g));
                if (xi <= S) {
                    rho = rl, v = vl, pp = pl;
                } else {
                    double r = ps / pl;
                    rho = rl * (r + (g - 1.0) / (g + 1.0)) /
                          ((g - 1.0) / (g + 1.0) * r + 1.0);
                    v = ustar;
                    pp = ps;
                }
            } else { // rarefaction
                double cstar = cl * std::pow(ps / pl, (g - 1.0) / (2.0 * g));
                double head = vl - cl, tail = ustar - cstar;
                if (xi <= head) {
                    rho = rl, v = vl, pp = pl;
                } else if (xi >= tail) {
                    rho = rl * std::pow(ps / pl, 1.0 / g);
                    v = ustar;
                    pp = ps;
                } else {
                    double c = (2.0 * cl + (g - 1.0) * (vl - xi)) / (g + 1.0);
                    v = xi + c;
                    rho = rl * std::pow(c / cl, 2.0 / (g - 1.0));
                    pp = pl * std::pow(c / cl, 2.0 * g / (g - 1.0));
                }
            }
        } else {
            if (ps > pr) { // shock
                double S = vr + cr * std::sqrt((g + 1.0) / (2.0 * g) * ps / pr +
                                               (g - 1.0) / (2.0 * g));
                if (xi >= S) {
                    rho = rr, v = vr, pp = pr;
                } else {
                    double r = ps / pr;
                    rho = rr * (r + (g - 1.0) / (g + 1.0)) /
                          ((g - 1.0) / (g + 1.0) * r + 1.0);
                    v = ustar;
                    pp = ps;
                }
            } else { // rarefaction
                double cstar = cr * std::pow(ps / pr, (g - 1.0) / (2.0 * g));
                double head = vr + cr, tail = ustar + cstar;
                if (xi >= head) {
                    rho = rr, v = vr, pp = pr;
                } else if (xi <= tail) {
                    rho = rr * std::pow(ps / pr, 1.0 / g);
                    v = ustar;
                    pp = ps;
                } else {
                    double c = (2.0 * cr - (g - 1.0) * (vr - xi)) / (g + 1.0);
                    v = xi - c;
                    rho = rr * std::pow(c / cr, 2.0 / (g - 1.0));
                    pp = pr * std::pow(c / cr, 2.0 * g / (g - 1.0));
                }
            }
        }
        return {rho, rho * v, pp / (g - 1.0) + 0.5 * rho * v * v};
    };
    return sol;
}

std::vector<double> conservation_audit(const std::vector<std::vector<double>>& history) {
    if (history.empty()) throw ConfigError("conservation_audit: empty history");
    const size_t K = history.front().size();
    std::vector<double> drift(K, 0.0);
    for (const auto& q : history) {
        if (q.size() != K) throw ConfigError("conservation_audit: ragged history");
        for (size_t c = 0; c < K; ++c) {
            double q0 = history.front()[c];
            double denom = std::abs(q0) > 1e-300 ? std::abs(q0) : 1.0;
            drift[c] = std::max(drift[c], std::abs(q[c] - q0) / denom);
        }
    }
    return drift;
}

std::vector<double> weighted_totals(const SpaceOperator& op, const std::vector<double>& u,
                                    int ncomp) {
    const int n = op.ndof();
    const auto& w = op.lumped();
    std::vector<double> q(ncomp, 0.0);
    for (int c = 0; c < ncomp; ++c)
        for (int i = 0; i < n; ++i) q[c] += w[i] * u[static_cast<size_t>(c) * n + i];
    return q;
}

} // namespace kinrd
