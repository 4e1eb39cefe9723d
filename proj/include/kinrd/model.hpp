#pragma once

#include <array>
#include <string>

namespace kinrd {

enum class ModelKind { transport, burgers, euler1d, euler2d };

// Macroscopic system u_t + sum_d d/dx_d A_d(u) = 0.
struct HyperbolicModel {
    ModelKind kind = ModelKind::transport;
    int ncomp = 1;
    int dim = 1;
    double gamma = 1.4;          // Euler only
    double advection_speed = 1.0; // transport only

    void flux(const double* u, int dir, double* out) const;
    double max_wavespeed(const double* u) const;
    bool admissible(const double* u) const;
    // pressure from conserved state (Euler); throws StateError when nonphysical
    double pressure(const double* u) const;
};

HyperbolicModel make_transport(double speed);
HyperbolicModel make_burgers();
HyperbolicModel make_euler1d(double gamma);
HyperbolicModel make_euler2d(double gamma);

// Spec-facing scalar helpers.
double flux_burgers(double u);
std::array<double, 3> flux_euler1d(const std::array<double, 3>& u, double gamma);
std::array<double, 4> flux_euler2d(const std::array<double, 4>& u, double gamma, int dir);
double max_wavespeed(const HyperbolicModel& model, const double* u);

} // namespace kinrd
