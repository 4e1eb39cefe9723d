#include "kinrd/driver.hpp"

#include "kinrd/errors.hpp"

namespace kinrd {

CaseInstance make_instance(const CaseSetup& setup) {
    CaseInstance inst;
    inst.bench = get_case(setup.case_name);
    inst.degree = setup.degree;
    if (setup.degree < 1 || setup.degree > 3)
        throw ConfigError("degree must be in {1,2,3}");
    const auto& bench = inst.bench;

    SchemeConfig scheme;
    scheme.degree = setup.degree;
    scheme.variant = setup.variant.value_or(bench.variant);
    scheme.theta = bench.theta[setup.degree - 1];
    for (int k = 0; k < 3; ++k) scheme.theta[k] *= jump_theta_scale[k];

    if (bench.dim == 1) {
        int cells = setup.cells > 0 ? setup.cells : bench.default_cells;
        inst.mesh1 = build_uniform_1d(bench.a, bench.b, cells, bench.periodic);
        inst.dofmap = build_dof_map(inst.mesh1, setup.degree);
        inst.op = std::make_unique<SpaceOperator>(inst.mesh1, inst.dofmap, scheme);
    } else {
        std::string path = setup.mesh_path.empty() ? bench.mesh_file : setup.mesh_path;
        inst.mesh2 = load_mesh_2d(path);
        inst.dofmap = build_dof_map(inst.mesh2, setup.degree);
        inst.op = std::make_unique<SpaceOperator>(inst.mesh2, inst.dofmap, scheme);
    }
    inst.op->set_threads(setup.threads);

    inst.drm = make_drm(bench.model, bench.lambda, setup.eps.value_or(bench.eps));

    DecConfig dec;
    dec.subnodes = setup.degree;
    dec.iterations = setup.iterations.value_or(bench.iterations[setup.degree - 1]);
    inst.stepper = std::make_unique<DecStepper>(*inst.op, inst.drm, dec);

    if (bench.dim == 1) {
        if (!bench.periodic)
            inst.bc.emplace(inst.mesh1, inst.dofmap, inst.drm, std::nullopt, std::nullopt);
    } else {
        StateFn inflow = bench.inflow;
        inst.bc.emplace(inst.mesh2, inst.dofmap, inst.drm,
                        inflow ? std::function<std::vector<double>(double, double)>(inflow)
                               : nullptr);
    }
    if (inst.bc) inst.stepper->set_boundary_fix(inst.bc->callback());

    // initial data: interpolate u_0 at the lattice points, take f = M(u_0)
    // pointwise, and convert both to Bernstein coefficients
    const int K = bench.model.ncomp, N = inst.drm.nblocks();
    const int n = inst.dofmap.ndof;
    std::vector<double> uvals(static_cast<size_t>(K) * n);
    KineticField fvals(n, N, K);
    std::vector<double> M(static_cast<size_t>(N) * K), us(K);
    for (int i = 0; i < n; ++i) {
        auto& p = inst.dofmap.dof_points[i];
        auto u0 = bench.initial(p[0], p[1]);
        for (int c = 0; c < K; ++c) uvals[static_cast<size_t>(c) * n + i] = u0[c];
        inst.drm.maxwellian(u0.data(), M.data());
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < K; ++c) fvals.at(i, b, c) = M[b * K + c];
    }
    inst.u.resize(uvals.size());
    inst.f = KineticField(n, N, K);
    if (scheme.variant == SchemeConfig::Variant::lxf_blend) {
        // shock cases: inject lattice values as coefficients; Bernstein then
        // evaluates to a convex combination, so the data stays physical
        inst.u = uvals;
        inst.f = fvals;
    } else {
        for (int c = 0; c < K; ++c)
            inst.op->coeffs_from_values(uvals.data() + static_cast<size_t>(c) * n,
                                        inst.u.data() + static_cast<size_t>(c) * n);
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < K; ++c)
                inst.op->coeffs_from_values(fvals.col(b, c), inst.f.col(b, c));
    }

    inst.runcfg.t_end = setup.t_end.value_or(bench.t_end);
    inst.runcfg.cfl = setup.cfl.value_or(bench.cfl);
    inst.runcfg.threads = setup.threads;
    return inst;
}

RunStats run_instance(CaseInstance& inst, const SnapshotFn& snap) {
    return time_loop(*inst.op, inst.drm, *inst.stepper, inst.u, inst.f, inst.runcfg, snap);
}

} // namespace kinrd
