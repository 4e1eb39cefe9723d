#include "kinrd/driver.hpp"
#include "kinrd/errors.hpp"
#include "kinrd/output.hpp"
#include "kinrd/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace kinrd;

namespace {

std::string default_out_dir() {
    if (const char* env = std::getenv("KINRD_OUT")) return env;
    return "out";
}

SchemeConfig::Variant parse_variant(const std::string& s) {
    if (s == "galerkin_jump") return SchemeConfig::Variant::galerkin_jump;
    if (s == "lxf_blend") return SchemeConfig::Variant::lxf_blend;
    throw ConfigError("unknown scheme: " + s + " (use galerkin_jump or lxf_blend)");
}

std::string catalogue_list() {
    std::ostringstream os;
    for (const auto& n : case_names()) os << "  " << n << "\n";
    return os.str();
}

struct CommonFlags {
    std::string case_name;
    int degree = 1;
    int cells = 0;
    std::string mesh;
    double eps = -1.0;
    double cfl = -1.0;
    int corrections = 0;
    std::string scheme;
    std::string out = default_out_dir();
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonFlags& fl) {
    cmd->add_option("--case", fl.case_name, "benchmark case name")->required();
    cmd->add_option("--degree", fl.degree, "polynomial degree")->check(CLI::Range(1, 3));
    cmd->add_option("--cells", fl.cells, "1D cell count");
    cmd->add_option("--mesh", fl.mesh, "2D mesh file");
    cmd->add_option("--eps", fl.eps, "relaxation parameter override (>= 0)");
    cmd->add_option("--cfl", fl.cfl, "CFL number override");
    cmd->add_option("--corrections", fl.corrections, "DeC iteration count override");
    cmd->add_option("--scheme", fl.scheme, "galerkin_jump | lxf_blend");
    cmd->add_option("--out", fl.out, "output directory");
    cmd->add_option("--threads", fl.threads, "element-loop threads");
}

CaseSetup to_setup(const CommonFlags& fl) {
    CaseSetup s;
    s.case_name = fl.case_name;
    s.degree = fl.degree;
    s.cells = fl.cells;
    s.mesh_path = fl.mesh;
    if (fl.eps >= 0.0) s.eps = fl.eps;
    if (fl.cfl > 0.0) s.cfl = fl.cfl;
    if (fl.corrections > 0) s.iterations = fl.corrections;
    if (!fl.scheme.empty()) s.variant = parse_variant(fl.scheme);
    s.threads = fl.threads;
    return s;
}

std::map<std::string, std::string> base_manifest(const CommonFlags& fl,
                                                 const CaseInstance& inst,
                                                 const RunStats& stats, double wall_s) {
    std::map<std::string, std::string> m;
    m["tool"] = "kinrd 1.0";
    m["case"] = fl.case_name;
    m["degree"] = std::to_string(inst.degree);
    m["scheme"] = inst.op->scheme().variant == SchemeConfig::Variant::lxf_blend
                      ? "lxf_blend"
                      : "galerkin_jump";
    m["lambda"] = std::to_string(inst.drm.lambda);
    m["eps"] = std::to_string(inst.drm.eps);
    m["cfl"] = std::to_string(inst.runcfg.cfl);
    m["t_end"] = std::to_string(inst.runcfg.t_end);
    m["dofs"] = std::to_string(inst.op->ndof());
    m["elements"] = std::to_string(inst.op->nelems());
    m["steps"] = std::to_string(stats.steps);
    m["threads"] = std::to_string(fl.threads);
    m["wall_seconds"] = std::to_string(wall_s);
    if (inst.bench.dim == 1)
        m["cells"] = std::to_string(inst.mesh1.ncells);
    else
        m["mesh"] = fl.mesh.empty() ? inst.bench.mesh_file : fl.mesh;
    return m;
}

// warn (never abort) if lambda does not dominate the sampled wavespeeds
void advisory_subchar(const CaseInstance& inst) {
    const int K = inst.bench.model.ncomp;
    const int n = inst.op->ndof();
    std::vector<double> states;
    for (int i = 0; i < n; ++i) {
        auto& p = inst.dofmap.dof_points[i];
        auto u0 = inst.bench.initial(p[0], p[1]);
        states.insert(states.end(), u0.begin(), u0.end());
    }
    auto rep = check_subcharacteristic(inst.drm, states, K);
    if (!rep.pass)
        std::cerr << "warning: lambda = " << inst.drm.lambda
                  << " is below the sampled max wavespeed (margin " << rep.margin
                  << "); relaxation may be under-resolved\n";
}

int cmd_run(const CommonFlags& fl) {
    auto setup = to_setup(fl);
    auto inst = make_instance(setup);
    advisory_subchar(inst);
    fs::create_directories(fl.out);
    const int K = inst.bench.model.ncomp;

    auto t0 = std::chrono::steady_clock::now();
    auto stats = run_instance(inst);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::string stem = fl.out + "/" + fl.case_name + "_d" + std::to_string(fl.degree);
    auto manifest = base_manifest(fl, inst, stats, wall);
    if (inst.bench.dim == 1) {
        write_csv_1d(stem + ".csv", *inst.op, inst.u, K);
        manifest["snapshot"] = stem + ".csv";
    } else {
        std::vector<std::string> names = {"rho", "rho_vx", "rho_vy", "E"};
        write_vtk_2d(stem + ".vtk", inst.mesh2, *inst.op, inst.u, K, names);
        manifest["snapshot"] = stem + ".vtk";
        // slice through the domain for profile plots
        double x0, y0, x1, y1;
        if (fl.case_name == "dmr_2d") {
            x0 = 0.0; y0 = 1.5; x1 = 2.2; y1 = 1.5;
        } else if (fl.case_name == "vortex_2d") {
            // endpoints pulled inside the polygonal approximation of the disk
            x0 = -9.9; y0 = 0.0; x1 = 9.9; y1 = 0.0;
        } else {
            x0 = -0.99; y0 = 0.0; x1 = 0.99; y1 = 0.0;
        }
        write_slice_csv(stem + "_slice.csv", *inst.op, inst.u, K, x0, y0, x1, y1, 400);
        manifest["slice"] = stem + "_slice.csv";
    }
    write_manifest(stem + "_manifest.json", manifest);
    std::cout << "run complete: " << stats.steps << " steps to t = " << stats.t << ", "
              << inst.op->ndof() << " dofs\n";
    return 0;
}

// reference at the final time: the case's exact solution if it has one,
// otherwise a run on a 4x finer 1D grid with the same degree
std::function<std::vector<double>(double, double)> make_reference(
    const CaseSetup& setup, const CaseInstance& inst, std::shared_ptr<CaseInstance>& keep) {
    if (inst.bench.exact) {
        double T = inst.runcfg.t_end;
        auto ex = inst.bench.exact;
        return [ex, T](double x, double y) { return ex(x, y, T); };
    }
    if (inst.bench.dim != 1)
        throw ConfigError("case " + inst.bench.name +
                          " has no exact solution; 2D fine-grid references are not supported");
    CaseSetup fine = setup;
    fine.cells = (setup.cells > 0 ? setup.cells : inst.bench.default_cells) * 4;
    keep = std::make_shared<CaseInstance>(make_instance(fine));
    run_instance(*keep);
    auto ref = keep;
    const int K = inst.bench.model.ncomp;
    const int n = ref->op->ndof();
    return [ref, K, n](double x, double y) {
        std::vector<double> out(K);
        for (int c = 0; c < K; ++c)
            out[c] = ref->op->eval_at(ref->u.data() + static_cast<size_t>(c) * n, x, y);
        return out;
    };
}

int cmd_converge(const CommonFlags& fl, const std::vector<int>& cell_list,
                 const std::vector<std::string>& mesh_list, const std::vector<int>& degrees) {
    fs::create_directories(fl.out);
    std::vector<int> degs = degrees.empty() ? std::vector<int>{fl.degree} : degrees;
    std::vector<ConvergenceRow> rows;
    for (int deg : degs) {
        std::vector<double> e1, e2, einf, hs;
        size_t nres = std::max(cell_list.size(), mesh_list.size());
        if (nres == 0) throw ConfigError("converge: give --cells or --mesh (repeatable)");
        std::vector<ConvergenceRow> local;
        for (size_t i = 0; i < nres; ++i) {
            CommonFlags f2 = fl;
            f2.degree = deg;
            if (!cell_list.empty()) f2.cells = cell_list[i];
            if (!mesh_list.empty()) f2.mesh = mesh_list[i];
            auto setup = to_setup(f2);
            auto inst = make_instance(setup);
            std::shared_ptr<CaseInstance> keep;
            auto ref = make_reference(setup, inst, keep);
            run_instance(inst);
            auto rep = error_norms(*inst.op, inst.u, inst.bench.model.ncomp, ref);
            ConvergenceRow row;
            row.degree = deg;
            row.h = inst.bench.dim == 1 ? (inst.bench.b - inst.bench.a) / inst.mesh1.ncells
                                        : inst.op->max_h();
            row.dofs = inst.op->ndof();
            row.L1 = rep.L1[0];
            row.L2 = rep.L2[0];
            row.Linf = rep.Linf[0];
            hs.push_back(row.h);
            e1.push_back(row.L1);
            e2.push_back(row.L2);
            einf.push_back(row.Linf);
            local.push_back(row);
        }
        if (local.size() >= 2) {
            auto r1 = eoc(e1, hs), r2 = eoc(e2, hs), ri = eoc(einf, hs);
            for (size_t i = 1; i < local.size(); ++i) {
                local[i].eoc_L1 = r1[i - 1];
                local[i].eoc_L2 = r2[i - 1];
                local[i].eoc_Linf = ri[i - 1];
            }
        }
        rows.insert(rows.end(), local.begin(), local.end());
    }
    std::string path = fl.out + "/" + fl.case_name + "_convergence.csv";
    write_convergence_csv(path, rows);
    std::cout << "degree,h,dofs,L1,L2,Linf,eoc_L1,eoc_L2,eoc_Linf\n";
    for (const auto& r : rows)
        std::cout << r.degree << "," << r.h << "," << r.dofs << "," << r.L1 << "," << r.L2
                  << "," << r.Linf << "," << r.eoc_L1 << "," << r.eoc_L2 << "," << r.eoc_Linf
                  << "\n";
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_apstudy(const CommonFlags& fl, const std::vector<double>& eps_list) {
    if (eps_list.empty()) throw ConfigError("apstudy: give --eps-list (repeatable)");
    fs::create_directories(fl.out);
    std::string path = fl.out + "/" + fl.case_name + "_apstudy.csv";
    std::ofstream out(path);
    out << "eps,h,dofs,L1,L2,Linf\n";
    std::cout << "eps,L1,L2,Linf\n";
    for (double eps : eps_list) {
        CommonFlags f2 = fl;
        f2.eps = eps;
        auto setup = to_setup(f2);
        auto inst = make_instance(setup);
        std::shared_ptr<CaseInstance> keep;
        auto ref = make_reference(setup, inst, keep);
        run_instance(inst);
        auto rep = error_norms(*inst.op, inst.u, inst.bench.model.ncomp, ref);
        double h = inst.bench.dim == 1 ? (inst.bench.b - inst.bench.a) / inst.mesh1.ncells
                                       : inst.op->max_h();
        out << eps << "," << h << "," << inst.op->ndof() << "," << rep.L1[0] << ","
            << rep.L2[0] << "," << rep.Linf[0] << "\n";
        std::cout << eps << "," << rep.L1[0] << "," << rep.L2[0] << "," << rep.Linf[0]
                  << "\n";
    }
    std::cout << "wrote " << path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"batch solver for hyperbolic systems with stiff relaxation"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file; flags override");

    CommonFlags run_fl, conv_fl, ap_fl;
    auto* run = app.add_subcommand("run", "run one case and write snapshots");
    add_common(run, run_fl);

    auto* conv = app.add_subcommand("converge", "convergence sweep with EOC table");
    add_common(conv, conv_fl);
    std::vector<int> cell_list, degree_list;
    std::vector<std::string> mesh_list;
    conv->add_option("--cells-list", cell_list, "1D resolutions");
    conv->add_option("--mesh-list", mesh_list, "2D mesh files");
    conv->add_option("--degrees", degree_list, "degrees to sweep");

    auto* ap = app.add_subcommand("apstudy", "error vs relaxation parameter");
    add_common(ap, ap_fl);
    std::vector<double> eps_list;
    ap->add_option("--eps-list", eps_list, "relaxation parameters to sweep");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(run_fl);
        if (conv->parsed()) return cmd_converge(conv_fl, cell_list, mesh_list, degree_list);
        return cmd_apstudy(ap_fl, eps_list);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        std::string msg = e.what();
        if (msg.rfind("unknown case", 0) == 0)
            std::cerr << "available cases:\n" << catalogue_list();
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const StateError& e) {
        std::cerr << "state error: " << e.what();
        if (e.dof >= 0) std::cerr << " (dof " << e.dof << ")";
        std::cerr << "\n";
        return 1;
    }
}
