// 2x2 oracle gap diagnosis.
#include <cstdio>
#include <random>

#include "graphon/ot.hpp"

using namespace graphon;

namespace {
double quad_sum(const Eigen::MatrixXd& w1, const Eigen::MatrixXd& w2,
                const Eigen::MatrixXd& t) {
  double acc = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int ip = 0; ip < 2; ++ip)
      for (int j = 0; j < 2; ++j)
        for (int jp = 0; jp < 2; ++jp) {
          double d = w1(i, j) - w2(ip, jp);
          acc += d * d * t(i, ip) * t(j, jp);
        }
  return acc;
}
}  // namespace

int main() {
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  GwParams params;
  double worst = -1;
  Eigen::MatrixXd bw1, bw2;
  double boracle = 0, bsolver = 0, bt = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd w1(2, 2), w2(2, 2);
    w1 << unif(eng), 0, 0, unif(eng);
    w1(0, 1) = w1(1, 0) = unif(eng);
    w2 << unif(eng), 0, 0, unif(eng);
    w2(0, 1) = w2(1, 0) = unif(eng);
    ProbabilityVector u = ProbabilityVector::uniform(2);
    auto res = gw_distance(SymmetricKernelMatrix(w1), u,
                           SymmetricKernelMatrix(w2), u, params);
    double best = 1e100, tstar = 0;
    for (int k = 0; k <= 50000; ++k) {
      double t = 0.5 * k / 50000.0;
      Eigen::MatrixXd tp(2, 2);
      tp << t, 0.5 - t, 0.5 - t, t;
      double v = quad_sum(w1, w2, tp);
      if (v < best) { best = v; tstar = t; }
    }
    if (res.value - best > worst) {
      worst = res.value - best;
      bw1 = w1; bw2 = w2; boracle = best; bsolver = res.value; bt = tstar;
    }
  }
  printf("worst gap %.3e\n", worst);
  printf("W1 = [[%.4f,%.4f],[%.4f,%.4f]]\n", bw1(0,0), bw1(0,1), bw1(1,0), bw1(1,1));
  printf("W2 = [[%.4f,%.4f],[%.4f,%.4f]]\n", bw2(0,0), bw2(0,1), bw2(1,0), bw2(1,1));
  printf("oracle %.6f at t*=%.5f   solver %.6f\n", boracle, bt, bsolver);
  // landscape
  for (int k = 0; k <= 10; ++k) {
    double t = 0.5 * k / 10.0;
    Eigen::MatrixXd tp(2, 2);
    tp << t, 0.5 - t, 0.5 - t, t;
    printf("  f(%.2f)=%.6f\n", t, quad_sum(bw1, bw2, tp));
  }
  return 0;
}
