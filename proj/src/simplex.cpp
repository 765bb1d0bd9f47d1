#include "qdesign/simplex.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <string>

#include "qdesign/errors.hpp"

namespace qdesign {

namespace {

using Monomial = std::vector<int>;

double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

// Integral of p^b over the simplex, normalized by its volume: (N-1)! prod b_i! / (|b|+N-1)!
double dirichlet_flat(std::span<const int> b) {
  const int n = static_cast<int>(b.size());
  int total = 0;
  double log_num = log_factorial(n - 1);
  for (int e : b) {
    total += e;
    log_num += log_factorial(e);
  }
  return std::exp(log_num - log_factorial(total + n - 1));
}

// prod_{i<j} (p_i - p_j)^2 expanded into monomials.
const std::map<Monomial, double>& vandermonde_squared(int n) {
  static std::map<int, std::map<Monomial, double>> cache;
  static std::mutex guard;
  std::lock_guard lock(guard);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::map<Monomial, double> poly{{Monomial(static_cast<std::size_t>(n), 0), 1.0}};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int rep = 0; rep < 2; ++rep) {
        std::map<Monomial, double> next;
        for (const auto& [m, c] : poly) {
          Monomial a = m, b = m;
          ++a[static_cast<std::size_t>(i)];
          ++b[static_cast<std::size_t>(j)];
          next[a] += c;
          next[b] -= c;
        }
        poly.clear();
        for (auto& [m, c] : next)
          if (c != 0.0) poly.emplace(m, c);
      }
  return cache.emplace(n, std::move(poly)).first->second;
}

void for_each_monomial(int n, int degree, const std::function<void(const Monomial&)>& f) {
  Monomial a(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n - 1) {
      a[static_cast<std::size_t>(pos)] = left;
      f(a);
      return;
    }
    for (int k = left; k >= 0; --k) {
      a[static_cast<std::size_t>(pos)] = k;
      rec(pos + 1, left - k);
    }
  };
  rec(0, degree);
}

double weight_sum(const std::vector<SimplexPoint>& pts) {
  double s = 0.0;
  for (const auto& pt : pts) s += pt.weight;
  return s;
}

}  // namespace

Measure parse_measure(std::string_view s) {
  if (s == "L" || s == "lebesgue" || s == "Lebesgue") return Measure::lebesgue;
  if (s == "HS" || s == "hs" || s == "hilbert-schmidt") return Measure::hilbert_schmidt;
  throw UnsupportedError("unknown measure '" + std::string(s) + "'");
}

std::string_view measure_name(Measure m) {
  return m == Measure::lebesgue ? "lebesgue" : "hilbert-schmidt";
}

void SimplexDesign::validate(double tol) const {
  if (n < 1) throw InvariantError("simplex design: dimension must be positive");
  if (points.empty()) throw InvariantError("simplex design: no points");
  for (const auto& pt : points) {
    if (static_cast<int>(pt.p.size()) != n)
      throw DimensionError("simplex design: point of length " + std::to_string(pt.p.size()) +
                           ", expected " + std::to_string(n));
    if (pt.weight < 0.0) throw InvariantError("simplex design: negative weight");
    double s = 0.0;
    for (double x : pt.p) {
      if (x < -tol) throw InvariantError("simplex design: negative coordinate");
      s += x;
    }
    if (std::abs(s - 1.0) > tol) throw InvariantError("simplex design: point does not sum to 1");
  }
  if (std::abs(weight_sum(points) - 1.0) > tol)
    throw InvariantError("simplex design: weights do not sum to 1");
}

SimplexDesign interval_design(int t, int m, Measure measure) {
  std::vector<double> half;  // nonnegative abscissae; mirrored below
  const double r5 = std::sqrt(5.0);
  if (measure == Measure::lebesgue) {
    if (t == 1 && m == 1) half = {0.0};
    else if (t == 3 && m == 2) half = {1.0 / (2.0 * std::sqrt(3.0))};
    else if (t == 3 && m == 3) half = {0.0, 1.0 / (2.0 * std::sqrt(2.0))};
    else if (t == 5 && m == 4)
      half = {std::sqrt(75.0 - 30.0 * r5) / 30.0, std::sqrt(75.0 + 30.0 * r5) / 30.0};
    else if (t == 5 && m == 5)
      half = {0.0, std::sqrt(15.0 - 3.0 * std::sqrt(11.0)) / 12.0,
              std::sqrt(15.0 + 3.0 * std::sqrt(11.0)) / 12.0};
  } else {
    const double r21 = std::sqrt(21.0);
    if (t == 3 && m == 2) half = {std::sqrt(3.0 / 20.0)};
    else if (t == 3 && m == 3) half = {0.0, 3.0 / (2.0 * std::sqrt(10.0))};
    else if (t == 5 && m == 4)
      half = {std::sqrt(735.0 - 70.0 * r21) / 70.0, std::sqrt(735.0 + 70.0 * r21) / 70.0};
  }
  if (half.empty())
    throw UnsupportedError("no cataloged interval design for t=" + std::to_string(t) +
                           ", M=" + std::to_string(m) + ", measure " +
                           std::string(measure_name(measure)));

  std::vector<double> xs;
  for (auto it = half.rbegin(); it != half.rend(); ++it)
    if (*it != 0.0) xs.push_back(-*it);
  for (double x : half) xs.push_back(x);

  SimplexDesign d{2, measure, t, {}};
  for (double x : xs) d.points.push_back({{0.5 + x, 0.5 - x}, 1.0 / static_cast<double>(m)});
  return d;
}

double simplex_moment(int n, Measure measure, std::span<const int> exponents) {
  if (static_cast<int>(exponents.size()) != n)
    throw DimensionError("simplex moment: exponent vector has the wrong length");
  if (measure == Measure::lebesgue) return dirichlet_flat(exponents);
  if (n > 6) throw CapacityError("simplex moment: HS moments supported for N <= 6");

  const auto& v2 = vandermonde_squared(n);
  double num = 0.0, den = 0.0;
  Monomial b(static_cast<std::size_t>(n));
  for (const auto& [m, c] : v2) {
    den += c * dirichlet_flat(m);
    for (std::size_t k = 0; k < m.size(); ++k) b[k] = m[k] + exponents[k];
    num += c * dirichlet_flat(b);
  }
  return num / den;
}

double interval_moment(Measure measure, int k) {
  if (k < 0) throw InvariantError("interval moment: negative degree");
  if (k % 2) return 0.0;
  const double h = std::pow(0.5, k);
  return measure == Measure::lebesgue ? h / (k + 1) : 3.0 * h / (k + 3);
}

SimplicialReport verify_simplicial(const SimplexDesign& design, int t, double tolerance) {
  design.validate();
  SimplicialReport r;
  r.order = t < 0 ? design.order : t;
  r.tolerance = tolerance;
  if (r.order < 0) throw InvariantError("simplicial check: negative order");
  if (r.order > 12) throw CapacityError("simplicial check: order above 12");
  r.max_deviation_by_degree.assign(static_cast<std::size_t>(r.order) + 1, 0.0);

  for (int deg = 0; deg <= r.order; ++deg) {
    double worst = 0.0;
    for_each_monomial(design.n, deg, [&](const Monomial& a) {
      double avg = 0.0;
      for (const auto& pt : design.points) {
        double v = pt.weight;
        for (std::size_t k = 0; k < a.size(); ++k) v *= std::pow(pt.p[k], a[k]);
        avg += v;
      }
      worst = std::max(worst, std::abs(avg - simplex_moment(design.n, design.measure, a)));
    });
    r.max_deviation_by_degree[static_cast<std::size_t>(deg)] = worst;
    r.max_deviation = std::max(r.max_deviation, worst);
  }
  r.is_design = r.max_deviation <= tolerance;
  return r;
}

SimplexDesign decohere(const Ensemble& ensemble, int order) {
  const auto& states = ensemble.pure_states();
  SimplexDesign d{ensemble.dim(), Measure::lebesgue, order, {}};
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Vector& a = states[i].amplitudes();
    std::vector<double> p(static_cast<std::size_t>(a.size()));
    for (Eigen::Index k = 0; k < a.size(); ++k) p[static_cast<std::size_t>(k)] = std::norm(a(k));
    d.points.push_back({std::move(p), ensemble.weight(i)});
  }
  return d;
}

SimplexDesign restrict_to_chamber(const SimplexDesign& design, double tol) {
  SimplexDesign out{design.n, design.measure, design.order, {}};
  for (const auto& pt : design.points) {
    bool sorted = true;
    for (std::size_t k = 1; k < pt.p.size(); ++k) sorted = sorted && pt.p[k] <= pt.p[k - 1] + tol;
    if (sorted) out.points.push_back(pt);
  }
  const double s = weight_sum(out.points);
  if (out.points.empty() || s <= 0.0) throw InvariantError("chamber restriction left no weight");
  for (auto& pt : out.points) pt.weight /= s;
  return out;
}

SimplexDesign merge_duplicates(const SimplexDesign& design, double tol) {
  SimplexDesign out{design.n, design.measure, design.order, {}};
  for (const auto& pt : design.points) {
    bool merged = false;
    for (auto& q : out.points) {
      double diff = 0.0;
      for (std::size_t k = 0; k < pt.p.size(); ++k) diff = std::max(diff, std::abs(pt.p[k] - q.p[k]));
      if (diff <= tol) {
        q.weight += pt.weight;
        merged = true;
        break;
      }
    }
    if (!merged) out.points.push_back(pt);
  }
  return out;
}

Ensemble product_design(const SimplexDesign& chamber, const UnitarySet& unitaries,
                        ProductOptions opts) {
  chamber.validate();
  unitaries.validate();
  if (unitaries.dim() != chamber.n)
    throw DimensionError("product design: unitary dimension differs from the simplex dimension");

  const auto fp = frame_potential_unitary(unitaries, opts.t,
                                          {opts.unitary_tolerance, Execution::parallel});
  if (!fp.is_design)
    throw UnverifiedDesignError("product design: unitaries are not a " + std::to_string(opts.t) +
                                    "-design (frame potential excess " + std::to_string(fp.delta) + ")",
                                fp.delta);

  std::vector<double> point_w;
  for (const auto& pt : chamber.points) {
    double factor = 1.0;
    std::size_t run = 1;
    for (std::size_t k = 1; k <= pt.p.size(); ++k) {
      if (k < pt.p.size() && pt.p[k] > pt.p[k - 1] + opts.tie_tolerance)
        throw InvariantError("product design: point outside the descending chamber");
      if (k < pt.p.size() && pt.p[k - 1] - pt.p[k] <= opts.tie_tolerance) {
        ++run;
      } else {
        factor *= std::exp(-log_factorial(static_cast<int>(run)));
        run = 1;
      }
    }
    point_w.push_back(pt.weight * factor);
  }
  const double total = std::accumulate(point_w.begin(), point_w.end(), 0.0);

  std::vector<Matrix> rhos;
  std::vector<double> weights;
  for (std::size_t i = 0; i < chamber.points.size(); ++i) {
    Eigen::VectorXd lam(chamber.n);
    for (int k = 0; k < chamber.n; ++k) lam(k) = chamber.points[i].p[static_cast<std::size_t>(k)];
    const Matrix diag = lam.cast<Complex>().asDiagonal();
    for (std::size_t j = 0; j < unitaries.size(); ++j) {
      const Matrix& u = unitaries.unitaries[j];
      Matrix rho = u * diag * u.adjoint();
      rho = 0.5 * (rho + rho.adjoint()).eval();
      const double w = point_w[i] / total * unitaries.weights[j];
      bool merged = false;
      for (std::size_t k = 0; k < rhos.size() && !merged; ++k) {
        if ((rhos[k] - rho).cwiseAbs().maxCoeff() <= opts.merge_tolerance) {
          weights[k] += w;
          merged = true;
        }
      }
      if (!merged) {
        rhos.push_back(std::move(rho));
        weights.push_back(w);
      }
    }
  }

  std::vector<DensityMatrix> states;
  states.reserve(rhos.size());
  for (auto& r : rhos) states.push_back(DensityMatrix::trusted(std::move(r)));
  return Ensemble::from_mixed(std::move(states), std::move(weights));
}

}  // namespace qdesign
