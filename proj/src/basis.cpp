#include "kinrd/basis.hpp"

#include "kinrd/errors.hpp"

#include <cmath>
#include <numbers>

namespace kinrd {

QuadRule1D gauss_legendre_unit(int npts) {
    if (npts < 1 || npts > 16) throw ConfigError("gauss_legendre_unit: npts out of range");
    QuadRule1D rule;
    rule.x.resize(npts);
    rule.w.resize(npts);
    // Newton on Legendre polynomials, nodes on [-1,1] then mapped to [0,1].
    for (int i = 0; i < npts; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (npts + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < npts; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = npts * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        rule.x[i] = 0.5 * (1.0 - z);
        rule.w[i] = 1.0 / ((1.0 - z * z) * pp * pp);
    }
    return rule;
}

QuadRuleTri triangle_rule(int exactness) {
    QuadRuleTri r;
    auto push3 = [&r](double a, double w) {
        // permutations of (1-2a, a, a) in barycentric coords -> (x,y) = (l2,l3)
        r.x.push_back({a, a});
        r.x.push_back({1.0 - 2.0 * a, a});
        r.x.push_back({a, 1.0 - 2.0 * a});
        for (int i = 0; i < 3; ++i) r.w.push_back(w * 0.5);
    };
    auto push6 = [&r](double a, double b, double w) {
        double c = 1.0 - a - b;
        const double xs[6][2] = {{b, c}, {c, b}, {a, c}, {c, a}, {a, b}, {b, a}};
        for (auto& p : xs) {
            r.x.push_back({p[0], p[1]});
            r.w.push_back(w * 0.5);
        }
    };
    if (exactness <= 2) {
        push3(1.0 / 6.0, 1.0 / 3.0);
    } else if (exactness <= 4) {
        push3(0.445948490915965, 0.223381589678011);
        push3(0.091576213509771, 0.109951743655322);
    } else if (exactness <= 6) {
        push3(0.249286745170910, 0.116786275726379);
        push3(0.063089014491502, 0.050844906370207);
        push6(0.310352451033785, 0.053145049844816, 0.082851075618374);
    } else {
        throw ConfigError("triangle_rule: exactness > 6 not available");
    }
    return r;
}

namespace {

// p = sum_k c_k B_k^q  ->  p' = q * sum_k (c_{k+1}-c_k) B_k^{q-1}
void diff_coeffs_1d(std::vector<double>& c, int& q) {
    for (int k = 0; k < q; ++k) c[k] = q * (c[k + 1] - c[k]);
    c.resize(q);
    --q;
}

void bernstein_values_1d(int d, double t, std::span<double> out) {
    out[0] = 1.0;
    for (int j = 1; j <= d; ++j) {
        double saved = 0.0;
        for (int k = 0; k < j; ++k) {
            double tmp = out[k];
            out[k] = saved + (1.0 - t) * tmp;
            saved = t * tmp;
        }
        out[j] = saved;
    }
}

} // namespace

BernsteinBasis1D::BernsteinBasis1D(int d) : degree(d), quad(gauss_legendre_unit(d + 1)) {
    if (d < 1 || d > 3) throw ConfigError("BernsteinBasis1D: degree must be in {1,2,3}");
}

void BernsteinBasis1D::eval(double t, std::span<double> out) const {
    if (t < -1e-12 || t > 1.0 + 1e-12) throw ConfigError("eval_basis: point outside reference cell");
    bernstein_values_1d(degree, t, out);
}

void BernsteinBasis1D::deriv(double t, int order, std::span<double> out) const {
    if (order == 0) {
        eval(t, out);
        return;
    }
    std::vector<double> c(degree + 1, 0.0), vals(degree + 1);
    for (int i = 0; i <= degree; ++i) {
        std::fill(c.begin(), c.end(), 0.0);
        c.resize(degree + 1);
        c[i] = 1.0;
        int q = degree;
        for (int k = 0; k < order && q > 0; ++k) diff_coeffs_1d(c, q);
        if (static_cast<int>(c.size()) != q + 1) c.resize(q + 1);
        if (order > degree) {
            out[i] = 0.0;
            continue;
        }
        bernstein_values_1d(q, t, vals);
        double s = 0.0;
        for (int k = 0; k <= q; ++k) s += c[k] * vals[k];
        out[i] = s;
    }
}

BernsteinBasisTri::BernsteinBasisTri(int d) : degree(d), quad(triangle_rule(2 * d)) {
    if (d < 1 || d > 3) throw ConfigError("BernsteinBasisTri: degree must be in {1,2,3}");
    for (int k3 = 0; k3 <= d; ++k3)
        for (int k2 = 0; k2 + k3 <= d; ++k2) lattice.push_back({d - k2 - k3, k2, k3});
}

namespace {

int tri_index(const std::vector<std::array<int, 3>>& lat, int i, int j, int k) {
    for (size_t n = 0; n < lat.size(); ++n)
        if (lat[n][0] == i && lat[n][1] == j && lat[n][2] == k) return static_cast<int>(n);
    return -1;
}

std::vector<std::array<int, 3>> tri_lattice(int d) {
    std::vector<std::array<int, 3>> lat;
    for (int k3 = 0; k3 <= d; ++k3)
        for (int k2 = 0; k2 + k3 <= d; ++k2) lat.push_back({d - k2 - k3, k2, k3});
    return lat;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// evaluate sum_a c_a B_a^q at barycentric (l1,l2,l3)
double eval_tri_poly(const std::vector<std::array<int, 3>>& lat, const std::vector<double>& c,
                     int q, double l1, double l2, double l3) {
    double s = 0.0;
    for (size_t n = 0; n < lat.size(); ++n) {
        auto [i, j, k] = lat[n];
        double coef = factorial(q) / (factorial(i) * factorial(j) * factorial(k));
        s += c[n] * coef * std::pow(l1, i) * std::pow(l2, j) * std::pow(l3, k);
    }
    return s;
}

// one directional-derivative sweep: degree q coefficients -> degree q-1,
// direction given in barycentric components (s1,s2,s3), s1+s2+s3 = 0.
std::vector<double> diff_coeffs_tri(const std::vector<double>& c, int q,
                                    const std::array<double, 3>& s) {
    auto lat_hi = tri_lattice(q);
    auto lat_lo = tri_lattice(q - 1);
    std::vector<double> out(lat_lo.size(), 0.0);
    for (size_t n = 0; n < lat_lo.size(); ++n) {
        auto [i, j, k] = lat_lo[n];
        double v = 0.0;
        int idx;
        if ((idx = tri_index(lat_hi, i + 1, j, k)) >= 0) v += s[0] * c[idx];
        if ((idx = tri_index(lat_hi, i, j + 1, k)) >= 0) v += s[1] * c[idx];
        if ((idx = tri_index(lat_hi, i, j, k + 1)) >= 0) v += s[2] * c[idx];
        out[n] = q * v;
    }
    return out;
}

} // namespace

void BernsteinBasisTri::eval(double x, double y, std::span<double> out) const {
    double l1 = 1.0 - x - y, l2 = x, l3 = y;
    if (l1 < -1e-12 || l2 < -1e-12 || l3 < -1e-12)
        throw ConfigError("eval_basis: point outside reference triangle");
    for (int n = 0; n < ndof(); ++n) {
        auto [i, j, k] = lattice[n];
        double coef = factorial(degree) / (factorial(i) * factorial(j) * factorial(k));
        out[n] = coef * std::pow(l1, i) * std::pow(l2, j) * std::pow(l3, k);
    }
}

void BernsteinBasisTri::dir_deriv(double x, double y, std::array<double, 2> s, int order,
                                  std::span<double> out) const {
    if (order == 0) {
        eval(x, y, out);
        return;
    }
    // barycentric gradients: grad l1 = (-1,-1), grad l2 = (1,0), grad l3 = (0,1)
    std::array<double, 3> sb = {-s[0] - s[1], s[0], s[1]};
    double l1 = 1.0 - x - y;
    for (int n = 0; n < ndof(); ++n) {
        if (order > degree) {
            out[n] = 0.0;
            continue;
        }
        std::vector<double> c(ndof(), 0.0);
        c[n] = 1.0;
        int q = degree;
        for (int k = 0; k < order; ++k) {
            c = diff_coeffs_tri(c, q, sb);
            --q;
        }
        out[n] = eval_tri_poly(tri_lattice(q), c, q, l1, x, y);
    }
}

void BernsteinBasisTri::grad(double x, double y, std::span<std::array<double, 2>> out) const {
    std::vector<double> gx(ndof()), gy(ndof());
    dir_deriv(x, y, {1.0, 0.0}, 1, gx);
    dir_deriv(x, y, {0.0, 1.0}, 1, gy);
    for (int n = 0; n < ndof(); ++n) out[n] = {gx[n], gy[n]};
}

std::vector<double> eval_basis_1d(int degree, double t) {
    BernsteinBasis1D b(degree);
    std::vector<double> out(b.ndof());
    b.eval(t, out);
    return out;
}

std::vector<double> eval_grad_1d(int degree, double t) {
    BernsteinBasis1D b(degree);
    std::vector<double> out(b.ndof());
    b.deriv(t, 1, out);
    return out;
}

std::vector<double> eval_basis_tri(int degree, double x, double y) {
    BernsteinBasisTri b(degree);
    std::vector<double> out(b.ndof());
    b.eval(x, y, out);
    return out;
}

} // namespace kinrd
