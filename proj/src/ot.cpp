#include "graphon/ot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "graphon/errors.hpp"
#include "graphon/rng.hpp"
#include "overlap_resize.hpp"

namespace graphon {

namespace {

constexpr double kKernelFloor = 1e-300;

// Relative size of the multiplicative jitter applied to the product-coupling
// initialization. A plain product coupling is a stationary point of the
// proximal iteration whenever the linearized cost is constant (identical
// regular graphs, constant graphons), so it must be perturbed to let the
// solver leave the saddle. The jitter is seeded, hence deterministic.
constexpr double kInitJitter = 0.02;

void check_gw_params(const GwParams& params) {
  if (!(params.epsilon > 0.0)) throw ValidationError("epsilon must be > 0");
  if (!(params.tolerance > 0.0)) throw ValidationError("tolerance must be > 0");
  if (params.outer_iterations < 1)
    throw ValidationError("outer_iterations must be >= 1");
  if (params.sinkhorn_iterations < 1)
    throw ValidationError("sinkhorn_iterations must be >= 1");
}

// Order-one cost needs the full O(I^2 J^2) sum; affordable only at small
// sizes. Above this cutoff the plan is optimized with order-two costs and the
// order-one objective is evaluated once at the final plan.
constexpr int kOrderOneSizeCutoff = 64;

Eigen::MatrixXd cost_matrix_impl(const Eigen::MatrixXd& w1,
                                 const Eigen::MatrixXd& w2,
                                 const Eigen::MatrixXd& t, GwOrder order) {
  const int I = static_cast<int>(w1.rows());
  const int J = static_cast<int>(w2.rows());
  if (order == GwOrder::two) {
    // C = (W1 o W1) mu 1' + 1 nu' (W2 o W2)' - 2 W1 T W2, with mu and nu the
    // actual plan marginals so the identity with the quadruple sum is exact.
    const Eigen::VectorXd mu = t.rowwise().sum();
    const Eigen::VectorXd nu = t.colwise().sum().transpose();
    const Eigen::VectorXd left = w1.cwiseProduct(w1) * mu;
    const Eigen::VectorXd right = w2.cwiseProduct(w2) * nu;
    Eigen::MatrixXd c = (-2.0 * (w1 * (t * w2))).eval();
    c.colwise() += left;
    c.rowwise() += right.transpose();
    return c;
  }
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(I, J);
  for (int i = 0; i < I; ++i)
    for (int ip = 0; ip < J; ++ip) {
      double acc = 0.0;
      for (int j = 0; j < I; ++j)
        for (int jp = 0; jp < J; ++jp)
          acc += std::abs(w1(i, j) - w2(ip, jp)) * t(j, jp);
      c(i, ip) = acc;
    }
  return c;
}

double objective_impl(const Eigen::MatrixXd& w1, const Eigen::MatrixXd& w2,
                      const Eigen::MatrixXd& t, GwOrder order) {
  return cost_matrix_impl(w1, w2, t, order).cwiseProduct(t).sum();
}

Eigen::MatrixXd sinkhorn_impl(Eigen::MatrixXd kernel, const Eigen::VectorXd& mu,
                              const Eigen::VectorXd& nu, int iterations,
                              double tolerance) {
  if (!kernel.allFinite())
    throw ValidationError("sinkhorn kernel has non-finite entries");
  kernel = kernel.cwiseMax(kKernelFloor);
  const int I = static_cast<int>(kernel.rows());
  Eigen::VectorXd a = Eigen::VectorXd::Ones(I);
  Eigen::VectorXd b = Eigen::VectorXd::Ones(kernel.cols());
  Eigen::VectorXd kb = kernel * b;
  for (int it = 0; it < iterations; ++it) {
    a = mu.cwiseQuotient(kb);
    b = nu.cwiseQuotient(kernel.transpose() * a);
    kb = kernel * b;
    // Columns are exact after the b update; track the row residual.
    const double violation = (a.cwiseProduct(kb) - mu).cwiseAbs().maxCoeff();
    if (violation < tolerance) break;
  }
  return a.asDiagonal() * kernel * b.asDiagonal();
}

// Product coupling with a seeded multiplicative perturbation, projected back
// onto the coupling polytope.
Eigen::MatrixXd jittered_product_plan(const Eigen::VectorXd& mu,
                                      const Eigen::VectorXd& nu,
                                      std::uint64_t seed, int sinkhorn_iters) {
  Eigen::MatrixXd init = mu * nu.transpose();
  Rng rng(derive_seed(seed, {0x6a177e5ull}));
  for (int i = 0; i < init.rows(); ++i)
    for (int j = 0; j < init.cols(); ++j)
      init(i, j) *= 1.0 + kInitJitter * (rng.uniform() - 0.5);
  return sinkhorn_impl(std::move(init), mu, nu, sinkhorn_iters, 1e-12);
}

// One proximal step: T <- Sinkhorn(T o exp(-C(T)/eps)), projecting onto the
// prescribed marginals. The candidate direction is a descent direction for
// the quadratic objective but the multiplicative step can overshoot an
// interior optimum, so a worse candidate is backtracked toward the current
// plan (the coupling polytope is convex). `t` and `objective` are updated
// only when a blend improves, which keeps every iteration sequence monotone.
bool prox_step(const Eigen::MatrixXd& w1, const Eigen::MatrixXd& w2,
               const Eigen::VectorXd& mu, const Eigen::VectorXd& nu,
               Eigen::MatrixXd& t, double& objective, GwOrder opt_order,
               double epsilon, const GwParams& params) {
  const Eigen::MatrixXd cost = cost_matrix_impl(w1, w2, t, opt_order);
  const Eigen::MatrixXd kernel =
      t.cwiseProduct((-cost / epsilon).array().exp().matrix());
  const Eigen::MatrixXd candidate =
      sinkhorn_impl(kernel, mu, nu, params.sinkhorn_iterations, 1e-9);
  double alpha = 1.0;
  for (int back = 0; back < 8; ++back, alpha /= 2.0) {
    Eigen::MatrixXd blend = (1.0 - alpha) * t + alpha * candidate;
    const double blend_obj = objective_impl(w1, w2, blend, opt_order);
    if (blend_obj < objective) {
      t = std::move(blend);
      objective = blend_obj;
      return true;
    }
  }
  return false;
}

// Escaping the product-coupling saddle produces a stretch of tiny objective
// decreases before the descent accelerates, so a few sub-tolerance steps are
// tolerated before stopping.
constexpr int kStallPatience = 5;

// Proximal loop at a fixed epsilon. Monotone by construction (failed steps
// leave the plan untouched).
void run_prox_loop(const Eigen::MatrixXd& w1, const Eigen::MatrixXd& w2,
                   const Eigen::VectorXd& mu, const Eigen::VectorXd& nu,
                   Eigen::MatrixXd& t, double& objective, GwOrder opt_order,
                   double epsilon, const GwParams& params) {
  int stalled = 0;
  for (int k = 0; k < params.outer_iterations; ++k) {
    const double previous = objective;
    if (!prox_step(w1, w2, mu, nu, t, objective, opt_order, epsilon, params))
      break;
    stalled = (previous - objective < params.tolerance) ? stalled + 1 : 0;
    if (stalled >= kStallPatience) break;
  }
}

// Continuation schedule: converge at params.epsilon first, then sharpen the
// plan at smaller epsilons so the value approaches the unregularized optimum
// instead of inheriting the entropic stopping bias.
constexpr double kPolishFactors[] = {1.0, 5.0, 25.0};

void solve_plan(const Eigen::MatrixXd& w1, const Eigen::MatrixXd& w2,
                const Eigen::VectorXd& mu, const Eigen::VectorXd& nu,
                Eigen::MatrixXd& t, double& objective, GwOrder opt_order,
                const GwParams& params) {
  for (double factor : kPolishFactors)
    run_prox_loop(w1, w2, mu, nu, t, objective, opt_order,
                  params.epsilon / factor, params);
}

}  // namespace

double TransportPlan::marginal_violation() const {
  const double row =
      (matrix.rowwise().sum() - row_marginal.weights).cwiseAbs().maxCoeff();
  const double col = (matrix.colwise().sum().transpose() - col_marginal.weights)
                         .cwiseAbs()
                         .maxCoeff();
  return std::max(row, col);
}

bool TransportPlan::is_feasible(double tolerance) const {
  return matrix.minCoeff() >= 0.0 && marginal_violation() <= tolerance;
}

SymmetricKernelMatrix::SymmetricKernelMatrix(Eigen::MatrixXd values_)
    : values(std::move(values_)) {
  if (values.rows() < 1 || values.rows() != values.cols())
    throw ValidationError("kernel matrix must be square and nonempty");
  for (int i = 0; i < values.rows(); ++i)
    for (int j = 0; j <= i; ++j) {
      if (values(i, j) != values(j, i))
        throw ValidationError("kernel matrix must be symmetric");
      if (!(values(i, j) >= 0.0 && values(i, j) <= 1.0))
        throw ValidationError("kernel matrix entries must lie in [0, 1]");
    }
}

TransportPlan sinkhorn_plan(const Eigen::MatrixXd& kernel,
                            const ProbabilityVector& mu,
                            const ProbabilityVector& nu, int iterations,
                            double tolerance) {
  if (kernel.rows() != mu.size() || kernel.cols() != nu.size())
    throw ValidationError("sinkhorn kernel size does not match marginals");
  if (iterations < 1) throw ValidationError("sinkhorn needs iterations >= 1");
  Eigen::MatrixXd plan =
      sinkhorn_impl(kernel, mu.weights, nu.weights, iterations, tolerance);
  return TransportPlan{std::move(plan), mu, nu};
}

Eigen::MatrixXd gw_cost_matrix(const SymmetricKernelMatrix& w1,
                               const SymmetricKernelMatrix& w2,
                               const TransportPlan& plan, GwOrder order) {
  if (plan.matrix.rows() != w1.size() || plan.matrix.cols() != w2.size())
    throw ValidationError("plan dimensions do not match kernel matrices");
  return cost_matrix_impl(w1.values, w2.values, plan.matrix, order);
}

double gw_objective(const SymmetricKernelMatrix& w1,
                    const SymmetricKernelMatrix& w2, const TransportPlan& plan,
                    GwOrder order) {
  if (plan.matrix.rows() != w1.size() || plan.matrix.cols() != w2.size())
    throw ValidationError("plan dimensions do not match kernel matrices");
  return objective_impl(w1.values, w2.values, plan.matrix, order);
}

GwResult gw_distance(const SymmetricKernelMatrix& w1,
                     const ProbabilityVector& mu1,
                     const SymmetricKernelMatrix& w2,
                     const ProbabilityVector& mu2, const GwParams& params) {
  check_gw_params(params);
  if (w1.size() != mu1.size() || w2.size() != mu2.size())
    throw ValidationError("measure length does not match matrix size");

  const bool small = w1.size() <= kOrderOneSizeCutoff &&
                     w2.size() <= kOrderOneSizeCutoff;
  const GwOrder opt_order =
      (params.order == GwOrder::one && small) ? GwOrder::one : GwOrder::two;

  // A handful of deterministic jitter restarts; the best final plan wins.
  constexpr int kRestarts = 4;
  Eigen::MatrixXd best_plan;
  double best_objective = std::numeric_limits<double>::infinity();
  for (int r = 0; r < kRestarts; ++r) {
    Eigen::MatrixXd t = jittered_product_plan(mu1.weights, mu2.weights,
                                              derive_seed(params.seed, {static_cast<std::uint64_t>(r)}),
                                              params.sinkhorn_iterations);
    double objective = objective_impl(w1.values, w2.values, t, opt_order);
    solve_plan(w1.values, w2.values, mu1.weights, mu2.weights, t, objective,
               opt_order, params);
    if (objective < best_objective) {
      best_objective = objective;
      best_plan = std::move(t);
    }
  }

  const double value = std::max(
      0.0, objective_impl(w1.values, w2.values, best_plan, params.order));
  return GwResult{value, TransportPlan{std::move(best_plan), mu1, mu2}};
}

BarycenterResult gw_barycenter(const std::vector<SymmetricKernelMatrix>& matrices,
                               const std::vector<ProbabilityVector>& measures,
                               int K, const std::vector<double>& weights,
                               const GwParams& params) {
  check_gw_params(params);
  const int M = static_cast<int>(matrices.size());
  if (M < 1) throw ValidationError("barycenter needs at least one input");
  if (K < 1) throw ValidationError("barycenter needs K >= 1");
  if (measures.size() != matrices.size())
    throw ValidationError("one measure per input matrix is required");
  std::vector<double> w = weights;
  if (w.empty()) w.assign(M, 1.0 / M);
  if (static_cast<int>(w.size()) != M)
    throw ValidationError("weight length does not match input count");
  for (int m = 0; m < M; ++m)
    if (matrices[m].size() != measures[m].size())
      throw ValidationError("measure length does not match matrix size");

  const Eigen::VectorXd nu = Eigen::VectorXd::Constant(K, 1.0 / K);

  struct Run {
    Eigen::MatrixXd bary;
    std::vector<double> trace;
  };

  // Full alternating solve from a given initialization. Plans persist across
  // outer steps (warm starts); each pass refines every plan (monotone) and
  // then applies the closed-form update, which is the exact argmin for fixed
  // plans (actual plan column sums in the denominator keep it exact under
  // Sinkhorn residuals). The recorded trace is therefore non-increasing.
  auto solve_from = [&](Eigen::MatrixXd bary) {
    constexpr int kInnerProxSteps = 10;
    std::vector<Eigen::MatrixXd> plans(M);
    std::vector<double> plan_obj(M);
    for (int m = 0; m < M; ++m)
      plans[m] = jittered_product_plan(measures[m].weights, nu, params.seed,
                                       params.sinkhorn_iterations);
    std::vector<double> trace;

    auto alternate_once = [&](double epsilon) {
      for (int m = 0; m < M; ++m) {
        plan_obj[m] =
            objective_impl(matrices[m].values, bary, plans[m], GwOrder::two);
        for (int s = 0; s < kInnerProxSteps; ++s) {
          const double previous = plan_obj[m];
          if (!prox_step(matrices[m].values, bary, measures[m].weights, nu,
                         plans[m], plan_obj[m], GwOrder::two, epsilon, params))
            break;
          if (previous - plan_obj[m] < params.tolerance) break;
        }
      }

      Eigen::MatrixXd numerator = Eigen::MatrixXd::Zero(K, K);
      Eigen::MatrixXd denominator = Eigen::MatrixXd::Zero(K, K);
      for (int m = 0; m < M; ++m) {
        numerator +=
            w[m] * (plans[m].transpose() * matrices[m].values * plans[m]);
        const Eigen::VectorXd col_sums = plans[m].colwise().sum().transpose();
        denominator += w[m] * (col_sums * col_sums.transpose());
      }
      bary = numerator.cwiseQuotient(denominator);
      bary = ((bary + bary.transpose()) / 2.0).eval();
      bary = bary.cwiseMax(0.0).cwiseMin(1.0);

      double objective = 0.0;
      for (int m = 0; m < M; ++m)
        objective += w[m] * objective_impl(matrices[m].values, bary, plans[m],
                                           GwOrder::two);
      trace.push_back(objective);
    };

    constexpr int kBarycenterPatience = 10;
    int stalled = 0;
    for (int outer = 0; outer < params.outer_iterations; ++outer) {
      alternate_once(params.epsilon);
      if (trace.size() >= 2) {
        const double decrease = trace[trace.size() - 2] - trace.back();
        stalled = (decrease < params.tolerance) ? stalled + 1 : 0;
        if (stalled >= kBarycenterPatience) break;
      }
    }
    // Sharpening passes at smaller epsilon, mirroring gw_distance's
    // continuation schedule.
    for (double factor : {5.0, 25.0})
      for (int s = 0; s < 2; ++s) alternate_once(params.epsilon / factor);
    return Run{std::move(bary), std::move(trace)};
  };

  // Two deterministic initializations. The constant-density start is a
  // near-fixed point when the inputs are vertex-transitive (the jitter
  // cascade is too slow to escape within the budget), so the first input
  // resized to K is solved as well and the better run wins.
  double density = 0.0;
  for (int m = 0; m < M; ++m) density += w[m] * matrices[m].values.mean();
  density = std::clamp(density, 0.0, 1.0);

  Run best = solve_from(Eigen::MatrixXd::Constant(K, K, density));
  Run alt = solve_from(detail::overlap_resize(matrices[0].values,
                                              measures[0].weights, K));
  if (alt.trace.back() < best.trace.back()) best = std::move(alt);

  return BarycenterResult{SymmetricKernelMatrix(std::move(best.bary)),
                          std::move(best.trace)};
}

}  // namespace graphon
