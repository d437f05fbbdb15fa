#include "qevo/nelder_mead.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qevo {

namespace {

Eigen::VectorXd clamped(Eigen::VectorXd x, double lo, double hi) {
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = std::clamp(x(i), lo, hi);
  return x;
}

}  // namespace

NelderMeadResult nelder_mead_minimize(
    const std::function<double(const Eigen::VectorXd&)>& objective,
    const Eigen::VectorXd& start, double lower, double upper,
    const NelderMeadOptions& options) {
  const Eigen::Index n = start.size();
  if (n == 0) throw std::invalid_argument("empty parameter vector");
  if (!(lower < upper)) throw std::invalid_argument("invalid bounds");

  constexpr double alpha = 1.0;  // reflection
  constexpr double gamma = 2.0;  // expansion
  constexpr double rho = 0.5;    // contraction
  constexpr double sigma = 0.5;  // shrink

  std::vector<Eigen::VectorXd> simplex;
  simplex.reserve(n + 1);
  simplex.push_back(clamped(start, lower, upper));
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd vertex = simplex[0];
    vertex(i) += (vertex(i) + options.initial_step <= upper) ? options.initial_step
                                                             : -options.initial_step;
    simplex.push_back(clamped(std::move(vertex), lower, upper));
  }

  std::vector<double> values(simplex.size());
  for (std::size_t i = 0; i < simplex.size(); ++i) values[i] = objective(simplex[i]);

  std::vector<std::size_t> order(simplex.size());
  int iterations = 0;
  for (; iterations < options.max_iters; ++iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];
    if (values[worst] - values[best] <= options.value_tol) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i + 1 < order.size(); ++i) centroid += simplex[order[i]];
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd reflected =
        clamped(centroid + alpha * (centroid - simplex[worst]), lower, upper);
    const double f_reflected = objective(reflected);

    if (f_reflected < values[best]) {
      const Eigen::VectorXd expanded =
          clamped(centroid + gamma * (reflected - centroid), lower, upper);
      const double f_expanded = objective(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
      continue;
    }

    const Eigen::VectorXd& toward =
        (f_reflected < values[worst]) ? reflected : simplex[worst];
    const Eigen::VectorXd contracted =
        clamped(centroid + rho * (toward - centroid), lower, upper);
    const double f_contracted = objective(contracted);
    if (f_contracted < std::min(f_reflected, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = f_contracted;
      continue;
    }

    for (std::size_t i = 1; i < order.size(); ++i) {
      const std::size_t idx = order[i];
      simplex[idx] =
          clamped(simplex[best] + sigma * (simplex[idx] - simplex[best]), lower, upper);
      values[idx] = objective(simplex[idx]);
    }
  }

  const std::size_t best =
      std::min_element(values.begin(), values.end()) - values.begin();
  return {simplex[best], values[best], iterations};
}

}  // namespace qevo
