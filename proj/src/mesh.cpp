#include "kinrd/mesh.hpp"

#include "kinrd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace kinrd {

double Mesh1D::min_width() const {
    double w = std::numeric_limits<double>::max();
    for (int i = 0; i < ncells; ++i) w = std::min(w, cell_width(i));
    return w;
}

Mesh1D build_uniform_1d(double a, double b, int ncells, bool periodic) {
    if (ncells < 1) throw ConfigError("build_uniform_1d: cell count must be positive");
    if (!(b > a)) throw ConfigError("build_uniform_1d: need b > a");
    Mesh1D m;
    m.a = a;
    m.b = b;
    m.ncells = ncells;
    m.periodic = periodic;
    m.nodes.resize(ncells + 1);
    for (int i = 0; i <= ncells; ++i) m.nodes[i] = a + (b - a) * i / ncells;
    m.nodes.back() = b;
    return m;
}

BoundaryTag parse_boundary_tag(const std::string& s) {
    if (s == "outflow") return BoundaryTag::outflow;
    if (s == "inflow") return BoundaryTag::inflow;
    if (s == "wall") return BoundaryTag::wall;
    throw ParseError("unknown boundary tag: " + s);
}

double Mesh2D::min_incircle_diameter() const {
    double d = std::numeric_limits<double>::max();
    for (int t = 0; t < ntriangles(); ++t) {
        const auto& tri = triangles[t];
        double per = 0.0;
        for (int s = 0; s < 3; ++s) {
            auto& p = vertices[tri[s]];
            auto& q = vertices[tri[(s + 1) % 3]];
            per += std::hypot(q[0] - p[0], q[1] - p[1]);
        }
        d = std::min(d, 4.0 * areas[t] / per); // 2 * inradius
    }
    return d;
}

double Mesh2D::max_diameter() const {
    double d = 0.0;
    for (const auto& tri : triangles)
        for (int s = 0; s < 3; ++s) {
            auto& p = vertices[tri[s]];
            auto& q = vertices[tri[(s + 1) % 3]];
            d = std::max(d, std::hypot(q[0] - p[0], q[1] - p[1]));
        }
    return d;
}

void finalize_mesh_2d(Mesh2D& mesh, const std::vector<std::array<int, 2>>& boundary_edges,
                      const std::vector<BoundaryTag>& boundary_tags) {
    const int nt = mesh.ntriangles();
    mesh.areas.resize(nt);
    std::set<std::array<int, 3>> seen;
    for (int t = 0; t < nt; ++t) {
        auto tri = mesh.triangles[t];
        auto key = tri;
        std::sort(key.begin(), key.end());
        if (key[0] == key[1] || key[1] == key[2])
            throw ParseError("degenerate triangle " + std::to_string(t));
        if (!seen.insert(key).second) throw ParseError("duplicate triangle " + std::to_string(t));
        auto& a = mesh.vertices[tri[0]];
        auto& b = mesh.vertices[tri[1]];
        auto& c = mesh.vertices[tri[2]];
        double area2 = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
        if (area2 <= 0.0)
            throw ParseError("inverted or zero-area triangle " + std::to_string(t));
        mesh.areas[t] = 0.5 * area2;
    }

    std::map<std::array<int, 2>, int> edge_id;
    mesh.edges.clear();
    mesh.tri_edges.assign(nt, {-1, -1, -1});
    for (int t = 0; t < nt; ++t) {
        const auto& tri = mesh.triangles[t];
        for (int s = 0; s < 3; ++s) {
            int p = tri[s], q = tri[(s + 1) % 3];
            std::array<int, 2> key = {std::min(p, q), std::max(p, q)};
            auto it = edge_id.find(key);
            int id;
            if (it == edge_id.end()) {
                id = static_cast<int>(mesh.edges.size());
                edge_id[key] = id;
                Edge2D e;
                e.v0 = key[0];
                e.v1 = key[1];
                mesh.edges.push_back(e);
            } else {
                id = it->second;
            }
            Edge2D& e = mesh.edges[id];
            // (p,q) counterclockwise in t: t sits on the left of (v0,v1) iff p==v0
            if (p == e.v0) {
                if (e.left != -1) throw ParseError("non-manifold edge");
                e.left = t;
            } else {
                if (e.right != -1) throw ParseError("non-manifold edge");
                e.right = t;
            }
            mesh.tri_edges[t][s] = id;
        }
    }

    for (auto& e : mesh.edges) {
        auto& p = mesh.vertices[e.v0];
        auto& q = mesh.vertices[e.v1];
        double dx = q[0] - p[0], dy = q[1] - p[1];
        e.length = std::hypot(dx, dy);
        // normal pointing from the left triangle to the right one
        double nx = dy / e.length, ny = -dx / e.length;
        if (e.left == -1) { nx = -nx; ny = -ny; } // keep outward when only right exists
        e.normal = {nx, ny};
    }

    // boundary tags
    std::map<std::array<int, 2>, BoundaryTag> tag_of;
    for (size_t i = 0; i < boundary_edges.size(); ++i) {
        auto be = boundary_edges[i];
        std::array<int, 2> key = {std::min(be[0], be[1]), std::max(be[0], be[1])};
        tag_of[key] = boundary_tags[i];
    }
    for (auto& e : mesh.edges) {
        bool on_boundary = (e.left == -1 || e.right == -1);
        auto it = tag_of.find({e.v0, e.v1});
        if (on_boundary) {
            if (it == tag_of.end())
                throw ParseError("boundary edge (" + std::to_string(e.v0) + "," +
                                 std::to_string(e.v1) + ") has no tag");
            e.tag = it->second;
        } else if (it != tag_of.end()) {
            throw ParseError("interior edge tagged as boundary");
        }
    }
}

Mesh2D load_mesh_2d(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open mesh file: " + path);
    int nv, nt, nb;
    if (!(in >> nv >> nt >> nb)) throw ParseError("bad mesh header in " + path);
    if (nv < 3 || nt < 1 || nb < 0) throw ParseError("bad mesh counts in " + path);
    Mesh2D mesh;
    mesh.vertices.resize(nv);
    for (auto& v : mesh.vertices)
        if (!(in >> v[0] >> v[1])) throw ParseError("truncated vertex list in " + path);
    mesh.triangles.resize(nt);
    for (auto& t : mesh.triangles) {
        if (!(in >> t[0] >> t[1] >> t[2])) throw ParseError("truncated triangle list in " + path);
        for (int i : t)
            if (i < 0 || i >= nv) throw ParseError("triangle vertex index out of range");
    }
    std::vector<std::array<int, 2>> bedges(nb);
    std::vector<BoundaryTag> btags(nb);
    for (int i = 0; i < nb; ++i) {
        std::string tag;
        if (!(in >> bedges[i][0] >> bedges[i][1] >> tag))
            throw ParseError("truncated boundary list in " + path);
        btags[i] = parse_boundary_tag(tag);
    }
    finalize_mesh_2d(mesh, bedges, btags);
    return mesh;
}

DofMap build_dof_map(const Mesh1D& mesh, int degree) {
    if (degree < 1 || degree > 3) throw ConfigError("build_dof_map: degree must be in {1,2,3}");
    const int d = degree, N = mesh.ncells;
    DofMap map;
    map.degree = d;
    map.dim = 1;
    map.ndof = mesh.periodic ? d * N : d * N + 1;
    map.element_dofs.resize(N);
    map.dof_points.resize(map.ndof);
    for (int i = 0; i < N; ++i) {
        auto& dofs = map.element_dofs[i];
        dofs.resize(d + 1);
        for (int k = 0; k <= d; ++k) {
            int g = i * d + k;
            if (mesh.periodic && g == d * N) g = 0;
            dofs[k] = g;
            double x = mesh.nodes[i] + mesh.cell_width(i) * k / d;
            map.dof_points[g] = {x, 0.0};
        }
    }
    map.dof_elements.resize(map.ndof);
    for (int i = 0; i < N; ++i)
        for (int g : map.element_dofs[i]) map.dof_elements[g].push_back(i);
    return map;
}

DofMap build_dof_map(const Mesh2D& mesh, int degree) {
    if (degree < 1 || degree > 3) throw ConfigError("build_dof_map: degree must be in {1,2,3}");
    const int d = degree;
    const int nv = static_cast<int>(mesh.vertices.size());
    const int ne = static_cast<int>(mesh.edges.size());
    const int per_edge = d - 1;
    const int per_cell = (d - 1) * (d - 2) / 2;
    DofMap map;
    map.degree = d;
    map.dim = 2;
    map.ndof = nv + ne * per_edge + mesh.ntriangles() * per_cell;
    map.element_dofs.resize(mesh.ntriangles());
    map.dof_points.resize(map.ndof);

    // local lattice order must match BernsteinBasisTri
    std::vector<std::array<int, 3>> lattice;
    for (int k3 = 0; k3 <= d; ++k3)
        for (int k2 = 0; k2 + k3 <= d; ++k2) lattice.push_back({d - k2 - k3, k2, k3});

    // edge id lookup between local vertex pairs
    auto edge_between = [&](int t, int a, int b) {
        const auto& tri = mesh.triangles[t];
        for (int s = 0; s < 3; ++s) {
            int p = tri[s], q = tri[(s + 1) % 3];
            if ((p == a && q == b) || (p == b && q == a)) return mesh.tri_edges[t][s];
        }
        throw ParseError("edge lookup failed");
    };

    int interior_base = nv + ne * per_edge;
    for (int t = 0; t < mesh.ntriangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        auto& dofs = map.element_dofs[t];
        dofs.resize(lattice.size());
        int interior_count = 0;
        for (size_t n = 0; n < lattice.size(); ++n) {
            auto [i, j, k] = lattice[n];
            int g;
            if (i == d) g = tri[0];
            else if (j == d) g = tri[1];
            else if (k == d) g = tri[2];
            else if (i == 0 || j == 0 || k == 0) {
                // edge dof; the two vertices with nonzero exponent
                int la, lb, ea, eb;
                if (k == 0) { la = 0; lb = 1; ea = i; eb = j; }
                else if (i == 0) { la = 1; lb = 2; ea = j; eb = k; }
                else { la = 0; lb = 2; ea = i; eb = k; }
                int ga = tri[la], gb = tri[lb];
                int eid = edge_between(t, ga, gb);
                // slots ordered away from the smaller global vertex id
                int slot = (ga < gb) ? (eb - 1) : (ea - 1);
                g = nv + eid * per_edge + slot;
            } else {
                g = interior_base + t * per_cell + interior_count++;
            }
            dofs[n] = g;
            auto& A = mesh.vertices[tri[0]];
            auto& B = mesh.vertices[tri[1]];
            auto& C = mesh.vertices[tri[2]];
            map.dof_points[g] = {(i * A[0] + j * B[0] + k * C[0]) / d,
                                 (i * A[1] + j * B[1] + k * C[1]) / d};
        }
    }
    map.dof_elements.resize(map.ndof);
    for (int t = 0; t < mesh.ntriangles(); ++t)
        for (int g : map.element_dofs[t]) map.dof_elements[g].push_back(t);
    for (const auto& els : map.dof_elements)
        if (els.empty()) throw ParseError("orphan dof in dof map");
    return map;
}

} // namespace kinrd
