#include "optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace rigid::detail {

LocalMinimum nelder_mead(const Objective& f, const Vector& x0, double step, int max_evaluations,
                         double value_floor) {
  const Eigen::Index dim = x0.size();
  std::vector<Vector> simplex;
  std::vector<double> values;
  int evaluations = 0;
  auto eval = [&](const Vector& x) {
    ++evaluations;
    return f(x);
  };

  simplex.push_back(x0);
  values.push_back(eval(x0));
  for (Eigen::Index i = 0; i < dim; ++i) {
    Vector x = x0;
    x[i] += step;
    simplex.push_back(x);
    values.push_back(eval(x));
  }

  std::vector<std::size_t> order(simplex.size());
  while (evaluations < max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];
    if (values[best] <= value_floor) break;

    double spread = 0.0;
    for (const auto& x : simplex) spread = std::max(spread, (x - simplex[best]).cwiseAbs().maxCoeff());
    if (spread < 1e-14 * std::max(1.0, simplex[best].cwiseAbs().maxCoeff())) break;

    Vector centroid = Vector::Zero(dim);
    for (std::size_t i = 0; i < simplex.size(); ++i)
      if (i != worst) centroid += simplex[i];
    centroid /= static_cast<double>(dim);

    const Vector reflected = centroid + (centroid - simplex[worst]);
    const double fr = eval(reflected);
    if (fr < values[best]) {
      const Vector expanded = centroid + 2.0 * (centroid - simplex[worst]);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const Vector contracted = outside ? Vector(centroid + 0.5 * (reflected - centroid))
                                      : Vector(centroid + 0.5 * (simplex[worst] - centroid));
    const double fc = eval(contracted);
    if (fc < std::min(fr, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    // Shrink toward the best vertex.
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
      values[i] = eval(simplex[i]);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  return {simplex[best], values[best], evaluations};
}

LocalMinimum levenberg_marquardt(const ResidualFn& r, const Vector& x0, int max_iterations, double value_floor) {
  Vector x = x0;
  Vector res = r(x);
  double cost = res.squaredNorm();
  int evaluations = 1;
  double lambda = 1e-3;
  const Eigen::Index p = x.size();

  for (int iter = 0; iter < max_iterations && cost > value_floor; ++iter) {
    Matrix J(res.size(), p);
    for (Eigen::Index i = 0; i < p; ++i) {
      const double h = 1e-7 * std::max(1.0, std::abs(x[i]));
      Vector xh = x;
      xh[i] += h;
      J.col(i) = (r(xh) - res) / h;
      ++evaluations;
    }
    const Matrix JtJ = J.transpose() * J;
    const Vector g = J.transpose() * res;

    bool improved = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      Matrix H = JtJ;
      H.diagonal().array() += lambda * (JtJ.diagonal().array() + 1e-12);
      const Vector delta = H.ldlt().solve(-g);
      if (!delta.allFinite()) {
        lambda *= 10.0;
        continue;
      }
      const Vector candidate = x + delta;
      const Vector cres = r(candidate);
      ++evaluations;
      const double ccost = cres.squaredNorm();
      if (std::isfinite(ccost) && ccost < cost) {
        x = candidate;
        res = cres;
        cost = ccost;
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) break;
  }
  return {x, cost, evaluations};
}

}  // namespace rigid::detail
