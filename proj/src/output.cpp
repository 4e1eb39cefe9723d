#include "kinrd/output.hpp"

#include "kinrd/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace kinrd {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << std::setprecision(16);
    return out;
}

} // namespace

void write_csv_1d(const std::string& path, const SpaceOperator& op,
                  const std::vector<double>& u, int ncomp) {
    const int n = op.ndof();
    std::vector<double> vals(u.size());
    for (int c = 0; c < ncomp; ++c)
        op.values_from_coeffs(u.data() + static_cast<size_t>(c) * n,
                              vals.data() + static_cast<size_t>(c) * n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto& pts = op.dofmap().dof_points;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return pts[a][0] < pts[b][0]; });
    auto out = open_out(path);
    out << "x";
    for (int c = 1; c <= ncomp; ++c) out << ",u_" << c;
    out << "\n";
    for (int i : order) {
        out << pts[i][0];
        for (int c = 0; c < ncomp; ++c) out << "," << vals[static_cast<size_t>(c) * n + i];
        out << "\n";
    }
}

void write_vtk_2d(const std::string& path, const Mesh2D& mesh, const SpaceOperator& op,
                  const std::vector<double>& u, int ncomp,
                  const std::vector<std::string>& names) {
    const int n = op.ndof();
    const int nv = static_cast<int>(mesh.vertices.size());
    std::vector<double> vals(u.size());
    for (int c = 0; c < ncomp; ++c)
        op.values_from_coeffs(u.data() + static_cast<size_t>(c) * n,
                              vals.data() + static_cast<size_t>(c) * n);
    auto out = open_out(path);
    out << "# vtk DataFile Version 3.0\nsnapshot\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << nv << " double\n";
    for (const auto& v : mesh.vertices) out << v[0] << " " << v[1] << " 0\n";
    out << "CELLS " << mesh.ntriangles() << " " << 4 * mesh.ntriangles() << "\n";
    for (const auto& t : mesh.triangles) out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
    out << "CELL_TYPES " << mesh.ntriangles() << "\n";
    for (int t = 0; t < mesh.ntriangles(); ++t) out << "5\n";
    out << "POINT_DATA " << nv << "\n";
    for (int c = 0; c < ncomp; ++c) {
        std::string nm = c < static_cast<int>(names.size()) ? names[c]
                                                            : "u_" + std::to_string(c + 1);
        out << "SCALARS " << nm << " double 1\nLOOKUP_TABLE default\n";
        // vertex dofs come first in the global numbering
        for (int v = 0; v < nv; ++v) out << vals[static_cast<size_t>(c) * n + v] << "\n";
    }
}

void write_slice_csv(const std::string& path, const SpaceOperator& op,
                     const std::vector<double>& u, int ncomp, double x0, double y0,
                     double x1, double y1, int nsamples) {
    if (nsamples < 2) throw ConfigError("slice: need at least 2 samples");
    const int n = op.ndof();
    auto out = open_out(path);
    out << "s,x,y";
    for (int c = 1; c <= ncomp; ++c) out << ",u_" << c;
    out << "\n";
    for (int i = 0; i < nsamples; ++i) {
        double s = static_cast<double>(i) / (nsamples - 1);
        double x = x0 + s * (x1 - x0), y = y0 + s * (y1 - y0);
        out << s << "," << x << "," << y;
        for (int c = 0; c < ncomp; ++c)
            out << "," << op.eval_at(u.data() + static_cast<size_t>(c) * n, x, y);
        out << "\n";
    }
}

void write_convergence_csv(const std::string& path,
                           const std::vector<ConvergenceRow>& rows) {
    auto out = open_out(path);
    out << "degree,h,dofs,L1,L2,Linf,eoc_L1,eoc_L2,eoc_Linf\n";
    for (const auto& r : rows)
        out << r.degree << "," << r.h << "," << r.dofs << "," << r.L1 << "," << r.L2 << ","
            << r.Linf << "," << r.eoc_L1 << "," << r.eoc_L2 << "," << r.eoc_Linf << "\n";
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto notspace = [](unsigned char ch) { return !std::isspace(ch); };
        line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
        line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(), line.end());
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        key.erase(std::find_if(key.rbegin(), key.rend(), notspace).base(), key.end());
        val.erase(val.begin(), std::find_if(val.begin(), val.end(), notspace));
        if (key.empty()) throw ParseError("config line " + std::to_string(lineno) + ": empty key");
        kv[key] = val;
    }
    return kv;
}

void write_manifest(const std::string& path,
                    const std::map<std::string, std::string>& entries) {
    nlohmann::json j;
    for (const auto& [k, v] : entries) j[k] = v;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

} // namespace kinrd
