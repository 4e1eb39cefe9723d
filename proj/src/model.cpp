#include "kinrd/model.hpp"

#include "kinrd/errors.hpp"

#include <cmath>

namespace kinrd {

// No positivity checks here: near strong shocks the Bernstein coefficients
// can transiently undershoot while the evaluated solution stays physical.
// Divergence is caught by the finiteness check after each timestep.
double HyperbolicModel::pressure(const double* u) const {
    if (kind == ModelKind::euler1d) {
        double v = u[1] / u[0];
        return (gamma - 1.0) * (u[2] - 0.5 * u[0] * v * v);
    }
    if (kind == ModelKind::euler2d) {
        double vx = u[1] / u[0], vy = u[2] / u[0];
        return (gamma - 1.0) * (u[3] - 0.5 * u[0] * (vx * vx + vy * vy));
    }
    throw ConfigError("pressure: not an Euler model");
}

bool HyperbolicModel::admissible(const double* u) const {
    switch (kind) {
        case ModelKind::transport:
        case ModelKind::burgers:
            return std::isfinite(u[0]);
        case ModelKind::euler1d: {
            if (u[0] <= 0.0) return false;
            double v = u[1] / u[0];
            return (gamma - 1.0) * (u[2] - 0.5 * u[0] * v * v) > 0.0;
        }
        case ModelKind::euler2d: {
            if (u[0] <= 0.0) return false;
            double vx = u[1] / u[0], vy = u[2] / u[0];
            return (gamma - 1.0) * (u[3] - 0.5 * u[0] * (vx * vx + vy * vy)) > 0.0;
        }
    }
    return false;
}

void HyperbolicModel::flux(const double* u, int dir, double* out) const {
    switch (kind) {
        case ModelKind::transport:
            out[0] = advection_speed * u[0];
            return;
        case ModelKind::burgers:
            out[0] = 0.5 * u[0] * u[0];
            return;
        case ModelKind::euler1d: {
            double p = pressure(u);
            double v = u[1] / u[0];
            out[0] = u[1];
            out[1] = u[1] * v + p;
            out[2] = (u[2] + p) * v;
            return;
        }
        case ModelKind::euler2d: {
            double p = pressure(u);
            double vx = u[1] / u[0], vy = u[2] / u[0];
            if (dir == 0) {
                out[0] = u[1];
                out[1] = u[1] * vx + p;
                out[2] = u[2] * vx;
                out[3] = (u[3] + p) * vx;
            } else {
                out[0] = u[2];
                out[1] = u[1] * vy;
                out[2] = u[2] * vy + p;
                out[3] = (u[3] + p) * vy;
            }
            return;
        }
    }
}

double HyperbolicModel::max_wavespeed(const double* u) const {
    switch (kind) {
        case ModelKind::transport:
            return std::abs(advection_speed);
        case ModelKind::burgers:
            return std::abs(u[0]);
        case ModelKind::euler1d: {
            double p = pressure(u);
            double c = std::sqrt(gamma * p / u[0]);
            return std::abs(u[1] / u[0]) + c;
        }
        case ModelKind::euler2d: {
            double p = pressure(u);
            double c = std::sqrt(gamma * p / u[0]);
            double vx = u[1] / u[0], vy = u[2] / u[0];
            return std::hypot(vx, vy) + c;
        }
    }
    return 0.0;
}

HyperbolicModel make_transport(double speed) {
    return {ModelKind::transport, 1, 1, 1.4, speed};
}

HyperbolicModel make_burgers() {
    return {ModelKind::burgers, 1, 1, 1.4, 0.0};
}

HyperbolicModel make_euler1d(double gamma) {
    return {ModelKind::euler1d, 3, 1, gamma, 0.0};
}

HyperbolicModel make_euler2d(double gamma) {
    return {ModelKind::euler2d, 4, 2, gamma, 0.0};
}

double flux_burgers(double u) { return 0.5 * u * u; }

std::array<double, 3> flux_euler1d(const std::array<double, 3>& u, double gamma) {
    auto m = make_euler1d(gamma);
    std::array<double, 3> out;
    m.flux(u.data(), 0, out.data());
    return out;
}

std::array<double, 4> flux_euler2d(const std::array<double, 4>& u, double gamma, int dir) {
    auto m = make_euler2d(gamma);
    std::array<double, 4> out;
    m.flux(u.data(), dir, out.data());
    return out;
}

double max_wavespeed(const HyperbolicModel& model, const double* u) {
    return model.max_wavespeed(u);
}

} // namespace kinrd
