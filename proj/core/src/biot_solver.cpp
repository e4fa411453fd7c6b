#include "biot3f/biot_solver.hpp"

#include "biot3f/error.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

namespace biot3f {

std::string_view to_string(ElementPair pair)
{
    switch (pair) {
    case ElementPair::P2P0P1: return "p2-p0-p1";
    case ElementPair::P2P1P1: return "p2-p1-p1";
    }
    return "unknown";
}

ElementPair parse_element_pair(std::string_view text)
{
    if (text == "p2-p0-p1") return ElementPair::P2P0P1;
    if (text == "p2-p1-p1") return ElementPair::P2P1P1;
    throw InvalidArgument("unknown element pair '" + std::string(text) + "' (expected p2-p0-p1 or p2-p1-p1)");
}

Spaces make_spaces(std::shared_ptr<const Mesh> mesh, ElementPair pair)
{
    const SpaceKind stress = (pair == ElementPair::P2P0P1) ? SpaceKind::P0Scalar : SpaceKind::P1Unconstrained;
    return Spaces{mesh, make_space(mesh, SpaceKind::P2Vector), make_space(mesh, stress),
                  make_space(mesh, SpaceKind::P1Scalar)};
}

TimeGrid make_time_grid(double final_time, double tau)
{
    BIOT3F_THROW_IF(!(tau > 0.0), InvalidArgument, "make_time_grid: tau must be positive");
    BIOT3F_THROW_IF(!(final_time > 0.0), InvalidArgument, "make_time_grid: final time must be positive");
    const double ratio = final_time / tau;
    const double steps = std::round(ratio);
    BIOT3F_THROW_IF(steps < 1.0 || std::abs(ratio - steps) > 1e-9 * std::max(1.0, ratio), InvalidArgument,
                    "make_time_grid: final time is not an integral number of steps");
    return TimeGrid{tau, static_cast<int>(steps), final_time};
}

double TauRule::tau_for(int n) const
{
    switch (kind) {
    case Kind::HSquared: return 1.0 / (static_cast<double>(n) * n);
    case Kind::H: return 1.0 / n;
    case Kind::Fixed: return value;
    }
    return value;
}

std::string TauRule::to_string() const
{
    switch (kind) {
    case Kind::HSquared: return "h2";
    case Kind::H: return "h";
    case Kind::Fixed: {
        // Shortest representation that parses back to the same value.
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof buf, value);
        return "fixed:" + std::string(buf, res.ptr);
    }
    }
    return "?";
}

TauRule parse_tau_rule(std::string_view text)
{
    if (text == "h2") return {TauRule::Kind::HSquared, 0.0};
    if (text == "h") return {TauRule::Kind::H, 0.0};
    if (text.starts_with("fixed:")) {
        const std::string value(text.substr(6));
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        BIOT3F_THROW_IF(used != value.size() || !(v > 0.0), InvalidArgument,
                        "invalid tau rule '" + std::string(text) + "': fixed value must be a positive number");
        return {TauRule::Kind::Fixed, v};
    }
    throw InvalidArgument("unknown tau rule '" + std::string(text) + "' (expected h2, h or fixed:<value>)");
}

FieldState zero_state(const Spaces& spaces, double t)
{
    return FieldState{Eigen::VectorXd::Zero(spaces.u.dof_count()), Eigen::VectorXd::Zero(spaces.q.dof_count()),
                      Eigen::VectorXd::Zero(spaces.p.dof_count()), t};
}

BlockSystem assemble_block_system(const Spaces& spaces, const PhysicalParams& params, double tau)
{
    params.validate();
    BIOT3F_THROW_IF(!(tau > 0.0), InvalidArgument, "assemble_block_system: tau must be positive");

    BlockSystem bs;
    bs.A = assemble_elasticity(spaces.u, params);
    bs.B = assemble_divergence(spaces.u, spaces.q);
    bs.Mqq = assemble_mass(spaces.q, spaces.q);
    bs.Mqp = assemble_mass(spaces.q, spaces.p);
    bs.Mpp = assemble_mass(spaces.p, spaces.p);
    bs.K = assemble_pressure_stiffness(spaces.p, params);

    const Index nu = spaces.u.dof_count();
    const Index nq = spaces.q.dof_count();
    const Index np = spaces.p.dof_count();
    bs.offset_q = nu;
    bs.offset_p = nu + nq;
    bs.size = nu + nq + np;

    const double inv_lambda = 1.0 / params.lambda;
    const double c = inv_lambda / tau;
    const CsrMatrix Mpq = bs.Mqp.transpose();

    std::vector<Triplet> t;
    // Row u: A u - B^T q.
    bs.A.append_to(t, 0, 0);
    bs.B.transpose().append_to(t, 0, bs.offset_q, -1.0);
    // Row q: B u + lambda^-1 Mqq q - lambda^-1 Mqp p.
    bs.B.append_to(t, bs.offset_q, 0);
    bs.Mqq.append_to(t, bs.offset_q, bs.offset_q, inv_lambda);
    bs.Mqp.append_to(t, bs.offset_q, bs.offset_p, -inv_lambda);
    // Row p: -(lambda^-1/tau) Mpq q + (lambda^-1/tau) Mpp p + K p.
    Mpq.append_to(t, bs.offset_p, bs.offset_q, -c);
    bs.Mpp.append_to(t, bs.offset_p, bs.offset_p, c);
    bs.K.append_to(t, bs.offset_p, bs.offset_p);
    bs.monolithic = CsrMatrix::from_triplets(bs.size, bs.size, std::move(t));

    for (Index d : spaces.u.dirichlet_dofs()) bs.constrained.push_back(d);
    for (Index d : spaces.p.dirichlet_dofs()) bs.constrained.push_back(bs.offset_p + d);
    return bs;
}

StepOperator::StepOperator(const Spaces& spaces, const PhysicalParams& params, double tau)
    : params_(params),
      tau_(tau),
      blocks_(assemble_block_system(spaces, params, tau)),
      elimination_(blocks_.monolithic, blocks_.constrained),
      factorization_(elimination_.matrix())
{
}

Eigen::VectorXd StepOperator::right_hand_side(const FieldState& previous, const Loads& loads) const
{
    const BlockSystem& bs = blocks_;
    BIOT3F_THROW_IF(loads.force.size() != bs.offset_q || loads.source.size() != bs.size - bs.offset_p,
                    InvalidArgument, "StepOperator: load vector sizes do not match the spaces");
    BIOT3F_THROW_IF(previous.q.size() != bs.offset_p - bs.offset_q || previous.p.size() != bs.size - bs.offset_p,
                    InvalidArgument, "StepOperator: state sizes do not match the spaces");
    const double c = 1.0 / (params_.lambda * tau_);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(bs.size);
    rhs.head(bs.offset_q) = loads.force;
    rhs.tail(bs.size - bs.offset_p) =
        loads.source + c * (bs.Mpp.multiply(previous.p) - bs.Mqp.multiply_transpose(previous.q));
    return rhs;
}

FieldState StepOperator::step(const FieldState& previous, const StepInput& input) const
{
    const BlockSystem& bs = blocks_;
    std::vector<double> values;
    values.reserve(bs.constrained.size());
    BIOT3F_THROW_IF(static_cast<std::size_t>(input.u_boundary.size() + input.p_boundary.size()) != bs.constrained.size(),
                    InvalidArgument, "StepOperator::step: boundary value count mismatch");
    for (Eigen::Index k = 0; k < input.u_boundary.size(); ++k) values.push_back(input.u_boundary[k]);
    for (Eigen::Index k = 0; k < input.p_boundary.size(); ++k) values.push_back(input.p_boundary[k]);

    const Eigen::VectorXd rhs = elimination_.lift(right_hand_side(previous, input.loads), values);
    const Eigen::VectorXd x = factorization_.solve(rhs);

    FieldState next;
    next.u = x.head(bs.offset_q);
    next.q = x.segment(bs.offset_q, bs.offset_p - bs.offset_q);
    next.p = x.tail(bs.size - bs.offset_p);
    next.t = input.t;
    return next;
}

Eigen::VectorXd boundary_values(const FESpace& space, const VectorField& u)
{
    BIOT3F_THROW_IF(space.components() != 2, InvalidArgument, "boundary_values: vector space required");
    const auto& dofs = space.dirichlet_dofs();
    Eigen::VectorXd out(static_cast<Eigen::Index>(dofs.size()));
    for (std::size_t k = 0; k < dofs.size(); ++k) {
        out[static_cast<Eigen::Index>(k)] = u(space.node_points()[dofs[k] / 2])[dofs[k] % 2];
    }
    return out;
}

Eigen::VectorXd boundary_values(const FESpace& space, const ScalarField& p)
{
    BIOT3F_THROW_IF(space.components() != 1, InvalidArgument, "boundary_values: scalar space required");
    const auto& dofs = space.dirichlet_dofs();
    Eigen::VectorXd out(static_cast<Eigen::Index>(dofs.size()));
    for (std::size_t k = 0; k < dofs.size(); ++k) out[static_cast<Eigen::Index>(k)] = p(space.node_points()[dofs[k]]);
    return out;
}

StepInput make_step_input(const ManufacturedCase& mc, const Spaces& spaces, double t)
{
    StepInput in;
    in.t = t;
    in.loads = assemble_loads(t, mc, spaces.u, spaces.p);
    in.u_boundary = boundary_values(spaces.u, VectorField([&](const Point2& x) { return mc.u(x, t); }));
    in.p_boundary = boundary_values(spaces.p, ScalarField([&](const Point2& x) { return mc.p(x, t); }));
    return in;
}

StokesProjection stokes_projection(const VectorField& u, const TensorField& grad_u, const ScalarField& q,
                                   const Spaces& spaces, const PhysicalParams& params)
{
    params.validate();
    const FESpace& su = spaces.u;
    const FESpace& sq = spaces.q;
    const Mesh& mesh = su.mesh();
    const bool pin_mean = !mesh.has_neumann();

    const CsrMatrix A = assemble_elasticity(su, params);
    const CsrMatrix B = assemble_divergence(su, sq);
    const Eigen::VectorXd stress_moments = assemble_mass(sq, sq).multiply(Eigen::VectorXd::Ones(sq.dof_count()));

    const Index nu = su.dof_count();
    const Index nq = sq.dof_count();
    const Index n = nu + nq;

    std::vector<Triplet> t;
    A.append_to(t, 0, 0);
    B.transpose().append_to(t, 0, nu, -1.0);
    B.append_to(t, nu, 0);
    const CsrMatrix system = CsrMatrix::from_triplets(n, n, std::move(t));

    // Right-hand sides from the continuous pair.
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    const ReferenceTable tu(su.element(), triangle_rule(analytic_quadrature_degree));
    const ReferenceTable tq(sq.element(), tu.rule);
    const int nnu = su.local_node_count();
    double q_integral = 0.0;
    for (Index cell = 0; cell < mesh.num_triangles(); ++cell) {
        const CellGeometry geo(mesh, cell);
        const auto udofs = su.cell_dofs(cell);
        const auto qdofs = sq.cell_dofs(cell);
        for (std::size_t k = 0; k < tu.rule.size(); ++k) {
            const auto kk = static_cast<Eigen::Index>(k);
            const Point2 x = geo.map(tu.rule.points[k]);
            const double w = tu.rule.weights[k] * std::abs(geo.det);
            const Eigen::Matrix2d gu = grad_u(x);
            const Eigen::Matrix2d sigma = params.mu * (gu + gu.transpose());  // 2 mu eps(u)
            const double qx = q(x);
            const double div = gu.trace();
            q_integral += w * qx;
            const Eigen::Matrix<double, 2, Eigen::Dynamic> g = geo.inverse_transpose * tu.ref_grads[k];
            for (int a = 0; a < nnu; ++a) {
                // v = phi_a e_c: eps(v) : sigma = (sigma g_a)_c, div v = g_a[c].
                const Eigen::Vector2d sg = sigma * g.col(a);
                rhs[udofs[2 * a]] += w * (sg[0] - qx * g(0, a));
                rhs[udofs[2 * a + 1]] += w * (sg[1] - qx * g(1, a));
            }
            for (int i = 0; i < sq.local_node_count(); ++i) rhs[nu + qdofs[i]] += w * tq.values(i, kk) * div;
        }
    }

    const Eigen::VectorXd ubc = boundary_values(su, u);
    std::vector<Index> fixed = su.dirichlet_dofs();
    std::vector<double> values(ubc.data(), ubc.data() + ubc.size());
    double multiplier = 0.0;
    if (pin_mean) {
        // The bordered system [A -B^T 0; B 0 m; 0 m^T 0] with m = M_qq 1 is solved without its dense
        // border. Summing the stress rows fixes the multiplier, since 1^T B vanishes on free columns;
        // the remaining system is consistent with kernel (0, 1), so one stress dof is pinned and the
        // constant is restored from the mean condition m^T q = (q, 1).
        const Eigen::VectorXd m = assemble_mass(sq, sq).multiply(Eigen::VectorXd::Ones(nq));
        const Eigen::VectorXd div_moments = B.multiply_transpose(Eigen::VectorXd::Ones(nq));
        double boundary_flux = 0.0;
        for (std::size_t i = 0; i < fixed.size(); ++i) boundary_flux += div_moments[fixed[i]] * values[i];
        multiplier = (rhs.segment(nu, nq).sum() - boundary_flux) / m.sum();
        rhs.segment(nu, nq) -= multiplier * m;
        fixed.push_back(nu);
        values.push_back(0.0);
        const ConstrainedSystem cs = apply_dirichlet(system, rhs, fixed, values);
        Eigen::VectorXd x = factorize(cs.matrix).solve(cs.rhs);
        x.segment(nu, nq).array() += (q_integral - m.dot(x.segment(nu, nq))) / m.sum();
        return StokesProjection{x.head(nu), x.segment(nu, nq), multiplier};
    }
    const ConstrainedSystem cs = apply_dirichlet(system, rhs, fixed, values);
    const Eigen::VectorXd x = factorize(cs.matrix).solve(cs.rhs);

    StokesProjection out;
    out.u = x.head(nu);
    out.q = x.segment(nu, nq);
    out.multiplier = multiplier;
    return out;
}

Eigen::VectorXd elliptic_projection(const ScalarField& p, const std::function<Eigen::Vector2d(const Point2&)>& grad_p,
                                    const FESpace& space_p)
{
    BIOT3F_THROW_IF(space_p.components() != 1, InvalidArgument, "elliptic_projection: scalar space required");
    const Mesh& mesh = space_p.mesh();
    const CsrMatrix K = assemble_pressure_stiffness(space_p, PhysicalParams{1.0, 1.0, 1.0});

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(space_p.dof_count());
    const ReferenceTable table(space_p.element(), triangle_rule(analytic_quadrature_degree));
    for (Index cell = 0; cell < mesh.num_triangles(); ++cell) {
        const CellGeometry geo(mesh, cell);
        const auto dofs = space_p.cell_dofs(cell);
        for (std::size_t k = 0; k < table.rule.size(); ++k) {
            const Point2 x = geo.map(table.rule.points[k]);
            const double w = table.rule.weights[k] * std::abs(geo.det);
            const Eigen::Vector2d gp = grad_p(x);
            const Eigen::Matrix<double, 2, Eigen::Dynamic> g = geo.inverse_transpose * table.ref_grads[k];
            for (int a = 0; a < space_p.local_node_count(); ++a) rhs[dofs[a]] += w * gp.dot(g.col(a));
        }
    }
    const Eigen::VectorXd pbc = boundary_values(space_p, p);
    const std::vector<double> values(pbc.data(), pbc.data() + pbc.size());
    const ConstrainedSystem cs = apply_dirichlet(K, rhs, space_p.dirichlet_dofs(), values);
    return factorize(cs.matrix).solve(cs.rhs);
}

FieldState initial_state(const ManufacturedCase& mc, const Spaces& spaces)
{
    const StokesProjection sp = stokes_projection([&](const Point2& x) { return mc.u(x, 0.0); },
                                                  [&](const Point2& x) { return mc.grad_u(x, 0.0); },
                                                  [&](const Point2& x) { return mc.q(x, 0.0); }, spaces, mc.params);
    FieldState s;
    s.u = sp.u;
    s.q = sp.q;
    s.p = elliptic_projection([&](const Point2& x) { return mc.p(x, 0.0); },
                              [&](const Point2& x) { return mc.grad_p(x, 0.0); }, spaces.p);
    s.t = 0.0;
    return s;
}

RunResult run(const ManufacturedCase& mc, ElementPair pair, int n, double tau, const RunOptions& options)
{
    BIOT3F_THROW_IF(n < 1, InvalidArgument, "run: n must be >= 1");
    auto mesh = std::make_shared<const Mesh>(build_unit_square(n, mc.neumann));
    RunResult result{make_spaces(mesh, pair), make_time_grid(mc.final_time, tau), {}, {}};
    const Spaces& spaces = result.spaces;

    const StepOperator op(spaces, mc.params, result.grid.tau);
    FieldState state = initial_state(mc, spaces);
    if (options.keep_trajectory) result.trajectory.push_back(state);
    if (options.observer) options.observer(0, state);

    for (int k = 1; k <= result.grid.steps; ++k) {
        const double t = result.grid.time(k);
        state = op.step(state, make_step_input(mc, spaces, t));
        if (options.keep_trajectory) result.trajectory.push_back(state);
        if (options.observer) options.observer(k, state);
    }
    result.final_state = std::move(state);
    return result;
}

RunResult run(const ManufacturedCase& mc, ElementPair pair, int n, const TauRule& tau_rule, const RunOptions& options)
{
    BIOT3F_THROW_IF(n < 1, InvalidArgument, "run: n must be >= 1");
    const double tau = tau_rule.tau_for(n);
    try {
        (void)make_time_grid(mc.final_time, tau);
    } catch (const InvalidArgument&) {
        throw InvalidArgument("run: tau rule '" + tau_rule.to_string() + "' at n=" + std::to_string(n)
                              + " does not divide the final time into an integral number of steps");
    }
    return run(mc, pair, n, tau, options);
}

double discrete_energy(const Spaces& spaces, const PhysicalParams& params, const FieldState& s)
{
    const CsrMatrix A = assemble_elasticity(spaces.u, params);
    const CsrMatrix Mqq = assemble_mass(spaces.q, spaces.q);
    const CsrMatrix Mqp = assemble_mass(spaces.q, spaces.p);
    const CsrMatrix Mpp = assemble_mass(spaces.p, spaces.p);
    const double strain = 0.5 * s.u.dot(A.multiply(s.u));
    const double diff = s.q.dot(Mqq.multiply(s.q)) - 2.0 * s.q.dot(Mqp.multiply(s.p)) + s.p.dot(Mpp.multiply(s.p));
    return strain + 0.5 / params.lambda * diff;
}

void write_state_vtk(std::ostream& os, const Spaces& spaces, const FieldState& s)
{
    const Mesh& mesh = *spaces.mesh;
    write_vtk(os, mesh);
    const Index nv = mesh.num_vertices();
    os << "POINT_DATA " << nv << '\n';
    os << "VECTORS u double\n";
    for (Index v = 0; v < nv; ++v) os << s.u[2 * v] << ' ' << s.u[2 * v + 1] << " 0\n";
    os << "SCALARS p double 1\nLOOKUP_TABLE default\n";
    for (Index v = 0; v < nv; ++v) os << s.p[v] << '\n';
    if (spaces.q.degree() == 1) {
        os << "SCALARS q double 1\nLOOKUP_TABLE default\n";
        for (Index v = 0; v < nv; ++v) os << s.q[v] << '\n';
    } else {
        os << "CELL_DATA " << mesh.num_triangles() << '\n';
        os << "SCALARS q double 1\nLOOKUP_TABLE default\n";
        for (Index t = 0; t < mesh.num_triangles(); ++t) os << s.q[t] << '\n';
    }
}

} // namespace biot3f
