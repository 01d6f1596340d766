#include "matint/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace matint {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double error;
};

// One Gauss-Kronrod pass over [a, b] with the QUADPACK error heuristic.
Panel gk15(const std::function<double(double)>& f, double a, double b,
           std::size_t& evaluations) {
  const double half = 0.5 * (b - a);
  const double center = 0.5 * (a + b);

  double fv_pos[8], fv_neg[8];
  const double fc = f(center);
  fv_pos[7] = fv_neg[7] = fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    fv_pos[j] = f(center + dx);
    fv_neg[j] = f(center - dx);
  }
  evaluations += 15;

  double resg = fc * kGaussWeights[3];
  double resk = fc * kKronrodWeights[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    const double sum = fv_pos[j] + fv_neg[j];
    resk += kKronrodWeights[j] * sum;
    resabs += kKronrodWeights[j] * (std::abs(fv_pos[j]) + std::abs(fv_neg[j]));
    if (j % 2 == 1) resg += kGaussWeights[j / 2] * sum;
  }

  const double reskh = resk * 0.5;
  double resasc = kKronrodWeights[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kKronrodWeights[j] *
              (std::abs(fv_pos[j] - reskh) + std::abs(fv_neg[j] - reskh));
  }

  const double abs_half = std::abs(half);
  double err = std::abs((resk - resg) * half);
  resabs *= abs_half;
  resasc *= abs_half;
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  const double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * eps)) err = std::max(eps * 50.0 * resabs, err);

  return Panel{a, b, resk * half, err};
}

QuadratureResult integrate_finite(const std::function<double(double)>& f,
                                  double a, double b,
                                  const QuadratureOptions& options) {
  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }
  if (!(a < b)) throw std::invalid_argument("integration bounds out of order");
  if (!(options.rel_tol > 0.0) || !(options.abs_tol > 0.0))
    throw std::invalid_argument("tolerances must be > 0");

  std::vector<double> edges;
  edges.push_back(a);
  for (double x : options.breakpoints)
    if (x > a && x < b) edges.push_back(x);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<Panel> panels;
  panels.reserve(64);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    panels.push_back(gk15(f, edges[i], edges[i + 1], result.evaluations));

  auto totals = [&panels]() {
    double v = 0.0, e = 0.0;
    for (const Panel& p : panels) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };

  auto [total, total_err] = totals();
  while (panels.size() < options.max_intervals) {
    const double tol = std::max(options.abs_tol, options.rel_tol * std::abs(total));
    if (total_err <= tol) break;
    // Bisect the panel with the largest error; ties resolve to the leftmost
    // panel so the subdivision order is reproducible.
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i) {
      if (panels[i].error > panels[worst].error ||
          (panels[i].error == panels[worst].error &&
           panels[i].a < panels[worst].a))
        worst = i;
    }
    const Panel old = panels[worst];
    const double mid = 0.5 * (old.a + old.b);
    if (!(old.a < mid && mid < old.b)) break;  // interval at rounding limit
    panels[worst] = gk15(f, old.a, mid, result.evaluations);
    panels.push_back(gk15(f, mid, old.b, result.evaluations));
    std::tie(total, total_err) = totals();
  }

  // Left-to-right final summation: the result does not depend on the order
  // in which panels were refined.
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  result.value = 0.0;
  result.abs_error = 0.0;
  for (const Panel& p : panels) {
    result.value += p.value;
    result.abs_error += p.error;
  }
  result.converged =
      result.abs_error <=
      std::max(options.abs_tol, options.rel_tol * std::abs(result.value));
  return result;
}

}  // namespace

QuadratureResult& QuadratureResult::operator+=(const QuadratureResult& other) {
  value += other.value;
  abs_error += other.abs_error;
  evaluations += other.evaluations;
  converged = converged && other.converged;
  return *this;
}

double tail_truncation_point(const std::function<double(double)>& f, double a,
                             TailDecay tail, double budget,
                             std::size_t* evaluations) {
  if (!(budget > 0.0)) throw std::invalid_argument("tail budget must be > 0");
  std::size_t evals = 0;
  double L;
  if (tail.kind == TailDecay::Kind::exponential) {
    if (!(tail.rate > 0.0))
      throw std::invalid_argument("exponential tail rate must be > 0");
    const double step = std::max(1.0, 5.0 / tail.rate);
    L = a + step;
    for (int iter = 0; iter < 64; ++iter) {
      const double bound = 3.0 * std::abs(f(L)) / tail.rate;
      ++evals;
      if (bound <= budget) break;
      L += step;
    }
  } else {
    if (!(tail.rate > 1.0))
      throw std::invalid_argument("algebraic tail must decay faster than 1/x");
    L = std::max(a, 1.0) * 2.0;
    for (int iter = 0; iter < 64; ++iter) {
      const double bound = 3.0 * std::abs(f(L)) * L / (tail.rate - 1.0);
      ++evals;
      if (bound <= budget) break;
      L *= 2.0;
    }
  }
  if (evaluations) *evaluations += evals;
  return L;
}

QuadratureResult integrate_1d(const Integrand1D& integrand,
                              const QuadratureOptions& options) {
  if (!std::isinf(integrand.upper))
    return integrate_finite(integrand.f, integrand.lower, integrand.upper,
                            options);

  // Scale estimate from a crude leading pass, so the tail budget is relative
  // when the integral is large and absolute when it is small.
  const double lead_span =
      integrand.tail.kind == TailDecay::Kind::exponential
          ? std::max(1.0, 5.0 / integrand.tail.rate)
          : std::max(integrand.lower, 1.0);
  QuadratureResult crude;
  Panel lead =
      gk15(integrand.f, integrand.lower, integrand.lower + lead_span, crude.evaluations);
  const double scale = std::abs(lead.value);
  const double budget =
      std::max(options.abs_tol, options.rel_tol * scale) / 10.0;

  std::size_t tail_evals = 0;
  const double L = tail_truncation_point(integrand.f, integrand.lower,
                                         integrand.tail, budget, &tail_evals);

  QuadratureOptions finite_options = options;
  finite_options.breakpoints.clear();
  for (double x : options.breakpoints)
    if (x < L) finite_options.breakpoints.push_back(x);

  QuadratureResult result =
      integrate_finite(integrand.f, integrand.lower, L, finite_options);
  result.evaluations += crude.evaluations + tail_evals;
  result.abs_error += budget;  // bounded tail beyond L
  return result;
}

QuadratureResult integrate_1d(const std::function<double(double)>& f, double a,
                              double b, const QuadratureOptions& options) {
  if (std::isinf(b)) throw std::invalid_argument(
      "semi-infinite integration needs a declared tail (use Integrand1D)");
  return integrate_finite(f, a, b, options);
}

QuadratureResult integrate_2d_unit_square(
    const std::function<double(double, double)>& f,
    const QuadratureOptions& options) {
  QuadratureOptions inner_options;
  inner_options.rel_tol = options.rel_tol / 10.0;
  inner_options.abs_tol = options.abs_tol / 10.0;
  inner_options.max_intervals = options.max_intervals;

  std::size_t inner_evaluations = 0;
  double worst_inner_error = 0.0;
  bool inner_converged = true;

  auto outer = [&](double u) {
    QuadratureResult row = integrate_finite(
        [&](double v) { return f(u, v); }, 0.0, 1.0, inner_options);
    inner_evaluations += row.evaluations;
    worst_inner_error = std::max(worst_inner_error, row.abs_error);
    inner_converged = inner_converged && row.converged;
    return row.value;
  };

  QuadratureResult result = integrate_finite(outer, 0.0, 1.0, options);
  result.evaluations = inner_evaluations;
  result.abs_error += worst_inner_error;  // inner errors over unit measure
  result.converged = result.converged && inner_converged;
  return result;
}

}  // namespace matint
