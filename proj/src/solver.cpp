#include "kinrd/solver.hpp"

#include "kinrd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace kinrd {

double compute_dt(double cfl, double min_h, double lambda, int degree) {
    if (cfl <= 0.0 || min_h <= 0.0 || lambda <= 0.0)
        throw ConfigError("compute_dt: cfl, h and lambda must be positive");
    if (degree < 1) throw ConfigError("compute_dt: degree must be positive");
    // the effective CFL scales with 1/d: the dof spacing inside a cell is
    // h/d, and positivity of the Lax-Friedrichs prediction needs dt ~ h/d
    return cfl * min_h / (lambda * degree);
}

BoundaryHandler::BoundaryHandler(const Mesh1D& mesh, const DofMap& dofmap,
                                 const DrmModel& drm,
                                 std::optional<std::vector<double>> left,
                                 std::optional<std::vector<double>> right)
    : drm_(&drm), ndof_(dofmap.ndof) {
    if (mesh.periodic) return;
    if (left) inflow_.push_back({0, *left});
    if (right) inflow_.push_back({dofmap.ndof - 1, *right});
}

BoundaryHandler::BoundaryHandler(const Mesh2D& mesh, const DofMap& dofmap,
                                 const DrmModel& drm,
                                 std::function<std::vector<double>(double, double)> inflow_state)
    : drm_(&drm), ndof_(dofmap.ndof) {
    const int d = dofmap.degree;
    const int nv = static_cast<int>(mesh.vertices.size());
    std::map<int, std::array<double, 2>> wall_normals;
    std::map<int, std::vector<double>> inflow_states;
    for (size_t eid = 0; eid < mesh.edges.size(); ++eid) {
        const auto& e = mesh.edges[eid];
        if (e.tag != BoundaryTag::inflow && e.tag != BoundaryTag::wall) continue;
        std::vector<int> dofs = {e.v0, e.v1};
        for (int s = 0; s < d - 1; ++s)
            dofs.push_back(nv + static_cast<int>(eid) * (d - 1) + s);
        for (int g : dofs) {
            if (e.tag == BoundaryTag::inflow) {
                if (!inflow_state)
                    throw ConfigError("mesh has inflow edges but no inflow state given");
                auto& p = dofmap.dof_points[g];
                inflow_states[g] = inflow_state(p[0], p[1]);
            } else {
                auto& nrm = wall_normals[g];
                nrm[0] += e.normal[0];
                nrm[1] += e.normal[1];
            }
        }
    }
    for (auto& [g, s] : inflow_states) inflow_.push_back({g, s});
    for (auto& [g, nrm] : wall_normals) {
        if (inflow_states.count(g)) continue; // inflow wins at corners
        double len = std::hypot(nrm[0], nrm[1]);
        if (len == 0.0) continue;
        wall_.push_back({g, {nrm[0] / len, nrm[1] / len}});
    }
}

void BoundaryHandler::apply(std::vector<double>& u, KineticField& f) const {
    if (!drm_) return;
    const int K = drm_->ncomp(), N = drm_->nblocks();
    const int n = ndof_;
    std::vector<double> M(static_cast<size_t>(N) * K);
    for (const auto& in : inflow_) {
        for (int c = 0; c < K; ++c) u[static_cast<size_t>(c) * n + in.dof] = in.state[c];
        drm_->maxwellian(in.state.data(), M.data());
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < K; ++c) f.at(in.dof, b, c) = M[b * K + c];
    }
    if (wall_.empty()) return;
    std::vector<double> uold(K), unew(K), Mold(M.size()), Mnew(M.size());
    for (const auto& w : wall_) {
        for (int c = 0; c < K; ++c) uold[c] = u[static_cast<size_t>(c) * n + w.dof];
        unew = uold;
        // slip wall: remove the normal momentum component
        double mn = uold[1] * w.normal[0] + uold[2] * w.normal[1];
        unew[1] -= mn * w.normal[0];
        unew[2] -= mn * w.normal[1];
        drm_->maxwellian(uold.data(), Mold.data());
        drm_->maxwellian(unew.data(), Mnew.data());
        for (int c = 0; c < K; ++c) u[static_cast<size_t>(c) * n + w.dof] = unew[c];
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < K; ++c)
                f.at(w.dof, b, c) += Mnew[b * K + c] - Mold[b * K + c];
    }
}

DecStepper::BoundaryFix BoundaryHandler::callback() const {
    return [this](std::vector<double>& u, KineticField& f) { apply(u, f); };
}

RunStats time_loop(const SpaceOperator& op, const DrmModel& drm, DecStepper& stepper,
                   std::vector<double>& u, KineticField& f, const RunConfig& cfg,
                   const SnapshotFn& snap) {
    if (cfg.t_end < 0.0) throw ConfigError("time_loop: t_end must be nonnegative");
    if (cfg.t_end == 0.0) {
        if (snap) snap(0.0, u, f);
        return {};
    }
    // the 1/d factor keeps the blended Lax-Friedrichs prediction positive
    // (dof spacing h/d); the central galerkin+jump scheme does not need it
    int deg_factor = op.scheme().variant == SchemeConfig::Variant::lxf_blend
                         ? op.dofmap().degree
                         : 1;
    double dt0 = compute_dt(cfg.cfl, op.min_h(), drm.lambda, deg_factor);

    std::vector<double> events = cfg.output_times;
    events.push_back(cfg.t_end);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    for (double e : events)
        if (e <= 0.0 || e > cfg.t_end) throw ConfigError("time_loop: output time out of range");

    RunStats stats;
    double t = 0.0;
    if (snap) snap(0.0, u, f);
    size_t next_event = 0;
    const double tiny = 1e-12 * cfg.t_end;
    while (t < cfg.t_end - tiny) {
        double dt = std::min(dt0, events[next_event] - t);
        try {
            stepper.step(u, f, dt);
        } catch (const StateError& err) {
            throw StateError(std::string(err.what()) + " at t = " + std::to_string(t + dt),
                             err.dof, t + dt);
        }
        for (size_t i = 0; i < u.size(); ++i)
            if (!std::isfinite(u[i]))
                throw StateError("solution diverged (non-finite value) at t = " +
                                     std::to_string(t + dt),
                                 static_cast<int>(i), t + dt);
        t += dt;
        ++stats.steps;
        if (t >= events[next_event] - tiny) {
            t = events[next_event];
            if (snap) snap(t, u, f);
            ++next_event;
        }
    }
    stats.t = t;
    return stats;
}

} // namespace kinrd
