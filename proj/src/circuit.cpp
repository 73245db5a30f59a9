#include "mcadet/circuit.hpp"

#include <cmath>
#include <numbers>

namespace mcadet {

namespace {

// Splits the products c_k = delta0 * delta_k across a shared delta0 and the
// per-column feedback devices, all inside the conductance range. Picks the
// log-midpoint of the feasible delta0 interval.
std::pair<double, Vec> realize_delta_products(const Vec& products, const ConductanceRange& r) {
    double cmax = products.maxCoeff();
    double cmin = products.minCoeff();
    double lo = std::max(r.w_min, cmax / r.w_max);
    double hi = std::min(r.w_max, cmin / r.w_min);
    if (lo > hi) {
        throw RealizabilityError(
            "regularizer feedback delta_k outside conductance range (needed product spread " +
            std::to_string(cmax / cmin) + ")");
    }
    double delta0 = std::sqrt(lo * hi);
    return {delta0, products / delta0};
}

Vec perturbed_const(double nominal, Eigen::Index n, double sigma, bool enable, Rng& rng) {
    Vec v = Vec::Constant(n, nominal);
    if (enable && sigma > 0.0) {
        for (Eigen::Index i = 0; i < n; ++i) v(i) += rng.next_gaussian(0.0, sigma);
    }
    return v;
}

Vec perturbed_vec(const Vec& nominal, double sigma, bool enable, Rng& rng) {
    Vec v = nominal;
    if (enable && sigma > 0.0) {
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) += rng.next_gaussian(0.0, sigma);
    }
    return v;
}

}  // namespace

CircuitInstance build_proposed(const Mat& g, const Vec& lambda_sqrt, double sigma_g,
                               const LinearDetectorSpec& det, const MappingScheme& scheme,
                               const ConductanceRange& range, const ErrorModel& err, Rng& rng) {
    if (g.cols() != lambda_sqrt.size()) throw DimensionError("build_proposed: lambda size");
    range.validate();

    double alpha = scheme.kind == MappingSchemeKind::scb
                       ? scb_alpha(sigma_u_for_g(sigma_g), scheme.beta, range)
                       : icb_alpha(g, range);
    MappedMatrix me = perturb(map_matrix(g, alpha, range), err, rng, range);
    MappedMatrix mf = perturb(map_matrix(g, alpha, range), err, rng, range);

    CircuitInstance c;
    c.kind = Topology::proposed;
    c.detector = det.kind;
    c.range = range;
    c.alpha = alpha;
    c.a = me.x;
    c.b = me.z;
    c.c = mf.x;
    c.d = mf.z;
    c.clip_count = me.clip_count + mf.clip_count;
    c.mapped_elements = 2 * g.size();

    const Eigen::Index n2k = g.cols();
    double delta0_nom = range.w_max;
    Vec delta_nom;
    if (det.kind == DetectorKind::mmse && det.rho > 0.0) {
        Vec products = alpha * alpha * regularizer_diagonal(lambda_sqrt, det.rho);
        auto [d0, dk] = realize_delta_products(products, range);
        delta0_nom = d0;
        delta_nom = dk;
    }
    c.delta0 = perturbed_const(delta0_nom, g.rows(), err.sigma_m, err.perturb_feedback, rng);
    if (delta_nom.size() > 0) {
        c.delta_fb = perturbed_vec(delta_nom, err.sigma_m, err.perturb_feedback, rng);
    }

    // Amplifier ratios theta_k/theta0 = kappa * sqrt(lambda_k), with kappa
    // chosen so the largest theta_k sits at w_max.
    double kappa = 1.0 / lambda_sqrt.maxCoeff();
    Vec theta_nom = range.w_max * kappa * lambda_sqrt;
    if (theta_nom.minCoeff() < range.w_min) {
        throw RealizabilityError("amplifier feedback theta_k below w_min (LSFC spread " +
                                 std::to_string(lambda_sqrt.maxCoeff() / lambda_sqrt.minCoeff()) +
                                 " too large)");
    }
    c.theta0 = perturbed_const(range.w_max, n2k, err.sigma_m, err.perturb_amplifier, rng);
    c.theta = perturbed_vec(theta_nom, err.sigma_m, err.perturb_amplifier, rng);

    c.input_gain = 1e-6;
    c.output_scale = alpha * kappa / c.input_gain;
    return c;
}

CircuitInstance build_conventional(const Mat& h, const Vec& lambda_sqrt, double sigma_g,
                                   const LinearDetectorSpec& det, const MappingScheme& scheme,
                                   const ConductanceRange& range, const ErrorModel& err,
                                   Rng& rng) {
    range.validate();
    Vec lambda_k = lambda_sqrt.head(lambda_sqrt.size() / 2).array().square();
    double alpha = scheme.kind == MappingSchemeKind::scb
                       ? scb_alpha(sigma_u_for_h(lambda_k, sigma_g), scheme.beta, range)
                       : icb_alpha(h, range);
    MappedMatrix me = perturb(map_matrix(h, alpha, range), err, rng, range);
    MappedMatrix mf = perturb(map_matrix(h, alpha, range), err, rng, range);

    CircuitInstance c;
    c.kind = Topology::conventional;
    c.detector = det.kind;
    c.range = range;
    c.alpha = alpha;
    c.a = me.x;
    c.b = me.z;
    c.c = mf.x;
    c.d = mf.z;
    c.clip_count = me.clip_count + mf.clip_count;
    c.mapped_elements = 2 * h.size();

    double delta0_nom = range.w_max;
    Vec delta_nom;
    if (det.kind == DetectorKind::mmse && det.rho > 0.0) {
        Vec products = Vec::Constant(h.cols(), alpha * alpha * det.rho);
        auto [d0, dk] = realize_delta_products(products, range);
        delta0_nom = d0;
        delta_nom = dk;
    }
    c.delta0 = perturbed_const(delta0_nom, h.rows(), err.sigma_m, err.perturb_feedback, rng);
    if (delta_nom.size() > 0) {
        c.delta_fb = perturbed_vec(delta_nom, err.sigma_m, err.perturb_feedback, rng);
    }

    c.input_gain = 1e-6;
    c.output_scale = alpha / c.input_gain;
    return c;
}

Vec rescale_output(const CircuitInstance& c, const Vec& v) {
    return c.kind == Topology::proposed ? Vec(c.output_scale * v) : Vec(-c.output_scale * v);
}

CircuitSolver::CircuitSolver(const CircuitInstance& c) : c_(c) {
    Mat e = c.e();
    w_ = c.delta0.cwiseInverse().asDiagonal() * e;
    Mat m = linalg::gram_ab(c.f(), w_);
    if (c.delta_fb.size() > 0) m.diagonal() += c.delta_fb;
    lu_.compute(m);
    if (lu_.rcond() < 1e-14) {
        throw SingularMatrixError("circuit loop matrix numerically singular (rcond " +
                                  std::to_string(lu_.rcond()) + ")");
    }
}

CircuitSolution CircuitSolver::solve(const Vec& y) const {
    if (y.size() != c_.rows2()) throw DimensionError("circuit solve: y length");
    Vec i_in = c_.input_gain * y;
    Vec rhs = -linalg::matvec_t(c_.f(), Vec(i_in.cwiseQuotient(c_.delta0)));
    CircuitSolution sol;
    sol.v2 = lu_.solve(rhs);
    if (!sol.v2.allFinite()) throw SingularMatrixError("circuit solve: non-finite solution");
    sol.v1 = -(linalg::matvec(c_.e(), sol.v2) + i_in).cwiseQuotient(c_.delta0);
    if (c_.kind == Topology::proposed) {
        sol.vout = -(c_.theta0.cwiseQuotient(c_.theta)).cwiseProduct(sol.v2);
        sol.s_hat = rescale_output(c_, sol.vout);
    } else {
        sol.s_hat = rescale_output(c_, sol.v2);
    }
    return sol;
}

CircuitSolution solve_algebraic(const CircuitInstance& c, const Vec& y) {
    return CircuitSolver(c).solve(y);
}

double TransientSpec::dt() const {
    return dt_s > 0.0 ? dt_s : 1.0 / (2.0 * std::numbers::pi * gbp_hz) / 20.0;
}

void TransientSpec::validate() const {
    if (!(gbp_hz > 0.0)) throw ParameterError("TransientSpec: gbp must be positive");
    if (!(dc_gain > 1.0)) throw ParameterError("TransientSpec: dc_gain must exceed 1");
    if (!(t_end_s > 0.0)) throw ParameterError("TransientSpec: t_end must be positive");
    if (dt() >= 1.0 / (2.0 * std::numbers::pi * gbp_hz) / 10.0) {
        throw ParameterError("TransientSpec: dt too coarse for the OA pole");
    }
    if (!(settle_tol > 0.0)) throw ParameterError("TransientSpec: settle_tol must be positive");
}

TransientResult transient_solve(const CircuitInstance& c, const Vec& y,
                                const TransientSpec& spec) {
    spec.validate();
    const double wu = 2.0 * std::numbers::pi * spec.gbp_hz;
    const double dt = spec.dt();
    const double leak = wu / spec.dc_gain;

    const Mat e = c.e();
    const Mat f = c.f();
    const bool proposed = c.kind == Topology::proposed;
    const Eigen::Index n2r = c.rows2();
    const Eigen::Index n2k = c.cols2();

    // Per-node total conductances (crossbar column/row sums plus feedback).
    Vec g1 = (c.a + c.b).rowwise().sum() + c.delta0;
    Vec g2 = (c.c + c.d).colwise().sum().transpose();
    if (c.delta_fb.size() > 0) g2 += c.delta_fb;
    Vec g3;
    if (proposed) g3 = c.theta0 + c.theta;

    Vec i_in = c.input_gain * y;
    Vec v1 = Vec::Zero(n2r), v2 = Vec::Zero(n2k), vout = Vec::Zero(n2k);

    const auto steps = static_cast<std::size_t>(spec.t_end_s / dt);
    TransientResult res;
    const std::size_t stride = std::max(1, spec.trace_stride);
    const std::size_t kept = steps / stride + 1;
    res.outputs.resize(n2k, static_cast<Eigen::Index>(kept));
    res.time_s.reserve(kept);

    std::size_t col = 0;
    for (std::size_t step = 0; step <= steps; ++step) {
        if (step % stride == 0 && col < kept) {
            res.outputs.col(static_cast<Eigen::Index>(col)) = proposed ? vout : v2;
            res.time_s.push_back(static_cast<double>(step) * dt);
            ++col;
        }
        if (step == steps) break;
        Vec u1 = (linalg::matvec(e, v2) + i_in + c.delta0.cwiseProduct(v1)).cwiseQuotient(g1);
        Vec u2 = linalg::matvec_t(f, v1);
        if (c.delta_fb.size() > 0) u2 -= c.delta_fb.cwiseProduct(v2);
        u2 = u2.cwiseQuotient(g2);
        Vec nv1 = v1 + dt * (-wu * u1 - leak * v1);
        Vec nv2 = v2 + dt * (wu * u2 - leak * v2);
        if (proposed) {
            Vec u3 = (c.theta0.cwiseProduct(v2) + c.theta.cwiseProduct(vout)).cwiseQuotient(g3);
            vout += dt * (-wu * u3 - leak * vout);
        }
        v1 = nv1;
        v2 = nv2;
        if (!v1.allFinite() || !v2.allFinite()) {
            throw ConvergenceError("transient_solve: state diverged at t=" +
                                   std::to_string(static_cast<double>(step) * dt));
        }
    }
    res.outputs.conservativeResize(n2k, static_cast<Eigen::Index>(col));

    const Vec final_out = res.outputs.col(res.outputs.cols() - 1);
    const double scale = std::max(final_out.cwiseAbs().maxCoeff(), 1e-30);

    // Require the tail of the run to be flat before trusting the endpoint.
    Eigen::Index tail_from = res.outputs.cols() * 19 / 20;
    double tail_dev = 0.0;
    for (Eigen::Index j = tail_from; j < res.outputs.cols(); ++j) {
        tail_dev = std::max(tail_dev, (res.outputs.col(j) - final_out).cwiseAbs().maxCoeff());
    }
    if (tail_dev > spec.settle_tol * scale) {
        throw ConvergenceError("transient_solve: not settled at t_end, residual " +
                               std::to_string(tail_dev / scale));
    }

    Eigen::Index first_ok = res.outputs.cols() - 1;
    for (Eigen::Index j = res.outputs.cols() - 1; j >= 0; --j) {
        if ((res.outputs.col(j) - final_out).cwiseAbs().maxCoeff() > spec.settle_tol * scale) {
            break;
        }
        first_ok = j;
    }
    res.settle_time_s = res.time_s[static_cast<std::size_t>(first_ok)];

    res.final.v1 = v1;
    res.final.v2 = v2;
    if (proposed) {
        res.final.vout = vout;
        res.final.s_hat = rescale_output(c, vout);
    } else {
        res.final.s_hat = rescale_output(c, v2);
    }
    return res;
}

}  // namespace mcadet
