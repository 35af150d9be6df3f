#include "sgtest/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "sgtest/errors.hpp"
#include "sgtest/simd.hpp"

namespace sgt {

double StepFunction::eval(double x) const {
  const auto cells = values.size();
  auto idx = static_cast<std::size_t>(x * static_cast<double>(cells));
  if (idx >= cells) idx = cells - 1;  // x == 1 lands in the last cell
  return values[idx];
}

namespace {

// Mean anchored at the first element: exact for constant inputs, since
// every summand is then exactly zero.
double anchored_mean(std::span<const double> xs) {
  const double base = xs[0];
  double acc = 0.0;
  for (double x : xs) acc += x - base;
  return base + acc / static_cast<double>(xs.size());
}

double centered_second_moment(std::span<const double> xs, double mu) {
  double acc = 0.0;
  for (double x : xs) {
    const double d = x - mu;
    acc += d * d;
  }
  return acc / static_cast<double>(xs.size());
}

}  // namespace

double StepFunction::mean() const { return anchored_mean(values); }

double StepFunction::mean_sq() const {
  const double mu = mean();
  return mu * mu + centered_second_moment(values, mu);
}

double StepFunction::sup() const {
  return *std::max_element(values.begin(), values.end());
}

std::string model_name(const ModelSpec& spec) {
  struct Visitor {
    std::string operator()(const ErSpec&) const { return "er"; }
    std::string operator()(const Sbm2Spec&) const { return "sbm2"; }
    std::string operator()(const SbmKSpec&) const { return "sbmk"; }
    std::string operator()(const SbmLabelsSpec&) const { return "sbm_labels"; }
    std::string operator()(const ConfigSpec&) const { return "config"; }
    std::string operator()(const ConfigBetaSpec&) const { return "config"; }
    std::string operator()(const LatentSpec&) const { return "latent"; }
  };
  return std::visit(Visitor{}, spec);
}

std::uint32_t model_node_count(const ModelSpec& spec) {
  struct Visitor {
    std::uint32_t operator()(const ErSpec& s) const { return s.n; }
    std::uint32_t operator()(const Sbm2Spec& s) const { return s.n; }
    std::uint32_t operator()(const SbmKSpec& s) const { return s.n; }
    std::uint32_t operator()(const SbmLabelsSpec& s) const {
      return static_cast<std::uint32_t>(s.labels.size());
    }
    std::uint32_t operator()(const ConfigSpec& s) const {
      return static_cast<std::uint32_t>(s.theta.size());
    }
    std::uint32_t operator()(const ConfigBetaSpec& s) const { return s.n; }
    std::uint32_t operator()(const LatentSpec& s) const { return s.n; }
  };
  return std::visit(Visitor{}, spec);
}

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw BadProbability(std::string(name) + " = " + std::to_string(p) +
                         " outside [0,1]");
  }
}

// Visit the members of a uniform random subset of {0,...,count-1} in
// increasing order, drawing one geometric skip per member (plus one for
// the terminating miss). Each index is included independently with
// probability p, in O(#hits) draws.
template <typename Emit>
void sample_subset(std::uint64_t count, double p, Rng& rng, Emit&& emit) {
  if (count == 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (std::uint64_t t = 0; t < count; ++t) emit(t);
    return;
  }
  std::uint64_t skip = rng.geometric_skip(p);
  if (skip >= count) return;
  std::uint64_t idx = skip;
  for (;;) {
    emit(idx);
    skip = rng.geometric_skip(p);
    const std::uint64_t remaining = count - idx - 1;
    if (skip >= remaining) return;
    idx += 1 + skip;
  }
}

// Maps increasing linear indices to pairs (x, y), x < y < s, in
// lexicographic order; amortized O(s) over a full sweep.
class TriangularCursor {
 public:
  explicit TriangularCursor(std::uint64_t s) : s_(s) {}

  std::pair<std::uint32_t, std::uint32_t> decode(std::uint64_t t) {
    while (t >= row_start_ + (s_ - 1 - row_)) {
      row_start_ += s_ - 1 - row_;
      ++row_;
    }
    const std::uint64_t offset = t - row_start_;
    return {static_cast<std::uint32_t>(row_),
            static_cast<std::uint32_t>(row_ + 1 + offset)};
  }

 private:
  std::uint64_t s_;
  std::uint64_t row_ = 0;
  std::uint64_t row_start_ = 0;
};

std::uint64_t pair_count(std::uint64_t s) { return s * (s - 1) / 2; }

}  // namespace

Graph gen_er(std::uint32_t n, double p, Rng& rng) {
  check_probability(p, "p");
  EdgeList edges;
  if (n >= 2) {
    TriangularCursor cursor(n);
    sample_subset(pair_count(n), p, rng, [&](std::uint64_t t) {
      edges.push_back(cursor.decode(t));
    });
  }
  return Graph::from_edges(n, edges);
}

namespace {

SbmSample gen_sbm_from_labels(std::vector<std::uint32_t> labels, double a,
                              double b, Rng& rng) {
  check_probability(a, "a");
  check_probability(b, "b");
  const auto n = static_cast<std::uint32_t>(labels.size());

  // Node lists per community, keyed by label value so the RNG consumption
  // order is a pure function of the spec.
  std::map<std::uint32_t, std::vector<std::uint32_t>> communities;
  for (std::uint32_t i = 0; i < n; ++i) communities[labels[i]].push_back(i);

  EdgeList edges;
  for (auto it = communities.begin(); it != communities.end(); ++it) {
    const auto& ids = it->second;
    TriangularCursor cursor(ids.size());
    sample_subset(pair_count(ids.size()), a, rng, [&](std::uint64_t t) {
      const auto [x, y] = cursor.decode(t);
      edges.emplace_back(ids[x], ids[y]);
    });
    for (auto jt = std::next(it); jt != communities.end(); ++jt) {
      const auto& other = jt->second;
      const auto cols = static_cast<std::uint64_t>(other.size());
      sample_subset(static_cast<std::uint64_t>(ids.size()) * cols, b, rng,
                    [&](std::uint64_t t) {
                      edges.emplace_back(ids[t / cols],
                                         other[t % cols]);
                    });
    }
  }
  SbmSample sample;
  sample.graph = Graph::from_edges(n, edges);
  sample.labels = std::move(labels);
  return sample;
}

std::vector<std::uint32_t> labels_from_sizes(
    const std::vector<std::uint32_t>& sizes) {
  std::vector<std::uint32_t> labels;
  for (std::uint32_t c = 0; c < sizes.size(); ++c) {
    labels.insert(labels.end(), sizes[c], c);
  }
  return labels;
}

}  // namespace

std::vector<std::uint32_t> sbm2_sizes(std::uint32_t n, double gamma) {
  if (!(gamma > 0.0 && gamma <= 0.5)) {
    throw BadPartition("gamma = " + std::to_string(gamma) +
                       " outside (0, 1/2]");
  }
  const double x = static_cast<double>(n) * gamma;
  auto n1 = static_cast<std::uint32_t>(std::floor(x + 0.5));
  // Round halves down so the first community stays the smaller one.
  if (static_cast<double>(n1) - x == 0.5) --n1;
  return {n1, n - n1};
}

std::vector<std::uint32_t> balanced_sizes(std::uint32_t n, std::uint32_t k) {
  if (k < 1 || k > n) {
    throw BadPartition("balanced partition needs 1 <= k <= n, got k = " +
                       std::to_string(k) + ", n = " + std::to_string(n));
  }
  const std::uint32_t q = n / k;
  const std::uint32_t r = n % k;
  std::vector<std::uint32_t> sizes(k, q);
  for (std::uint32_t c = 0; c < r; ++c) ++sizes[c];
  return sizes;
}

SbmSample gen_sbm(const Sbm2Spec& spec, Rng& rng) {
  return gen_sbm_from_labels(labels_from_sizes(sbm2_sizes(spec.n, spec.gamma)),
                             spec.a, spec.b, rng);
}

SbmSample gen_sbm(const SbmKSpec& spec, Rng& rng) {
  if (!spec.balanced) {
    throw BadPartition(
        "sbmk supports balanced partitions only; use sbm_labels for "
        "explicit community sizes");
  }
  return gen_sbm_from_labels(
      labels_from_sizes(balanced_sizes(spec.n, spec.k)), spec.a, spec.b, rng);
}

SbmSample gen_sbm(const SbmLabelsSpec& spec, Rng& rng) {
  return gen_sbm_from_labels(spec.labels, spec.a, spec.b, rng);
}

namespace {

void check_theta(std::span<const double> theta) {
  for (double t : theta) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw BadTheta("theta entry " + std::to_string(t) + " outside [0,1]");
    }
  }
}

// Bernoulli sampling of one row of an inhomogeneous model: one uniform is
// drawn per pair no matter the outcome, so the stream is identical across
// SIMD levels.
void sample_rows(std::uint32_t n, EdgeList& edges,
                 const std::vector<double>& p_by_node_pair_row,
                 std::uint32_t i, std::vector<double>& u_buf,
                 std::vector<std::uint32_t>& idx_buf, Rng& rng) {
  const std::size_t len = n - i - 1;
  for (std::size_t t = 0; t < len; ++t) u_buf[t] = rng.next_unit();
  const std::size_t hits = simd::bernoulli_select(
      u_buf.data(), p_by_node_pair_row.data(), len, idx_buf.data());
  for (std::size_t t = 0; t < hits; ++t) {
    edges.emplace_back(i, i + 1 + idx_buf[t]);
  }
}

}  // namespace

Graph gen_config(std::span<const double> theta, Rng& rng) {
  check_theta(theta);
  const auto n = static_cast<std::uint32_t>(theta.size());
  EdgeList edges;
  if (n >= 2) {
    std::vector<double> p_row(n), u_buf(n);
    std::vector<std::uint32_t> idx_buf(n);
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
      for (std::uint32_t j = i + 1; j < n; ++j) {
        p_row[j - i - 1] = theta[i] * theta[j];
      }
      sample_rows(n, edges, p_row, i, u_buf, idx_buf, rng);
    }
  }
  return Graph::from_edges(n, edges);
}

std::vector<double> sample_beta_theta(std::uint32_t n, double h, double alpha,
                                      Rng& rng) {
  if (!(h > 0.0 && h < 1.0)) {
    throw BadParameter("beta theta: h = " + std::to_string(h) +
                       " outside (0,1)");
  }
  if (!(alpha > 0.0)) {
    throw BadParameter("beta theta: alpha must be positive");
  }
  const double beta = (1.0 - h) / h * alpha;
  std::vector<double> theta(n);
  for (auto& t : theta) t = rng.beta(alpha, beta);
  return theta;
}

namespace {

void check_latent(const LatentSpec& spec) {
  if (spec.funcs.empty()) {
    throw BadFeatureFunction("latent model needs at least one feature function");
  }
  double norm = 0.0;
  for (const auto& g : spec.funcs) {
    if (g.values.empty()) {
      throw BadFeatureFunction("feature function with empty grid");
    }
    for (double v : g.values) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw BadFeatureFunction("feature function value " +
                                 std::to_string(v) + " must be finite and >= 0");
      }
    }
    const double s = g.sup();
    norm += s * s;
  }
  if (norm > 1.0) {
    throw BadFeatureFunction(
        "sum of squared sup-norms = " + std::to_string(norm) +
        " exceeds 1; edge probabilities would leave [0,1]");
  }
}

}  // namespace

LatentSample gen_latent(const LatentSpec& spec, Rng& rng) {
  check_latent(spec);
  const std::uint32_t n = spec.n;
  const std::size_t r = spec.funcs.size();

  LatentSample sample;
  sample.xi.resize(n, std::vector<double>(r));
  std::vector<std::vector<double>> features(n, std::vector<double>(r));
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < r; ++l) {
      const double x = rng.next_unit();
      sample.xi[i][l] = x;
      features[i][l] = spec.funcs[l].eval(x);
    }
  }

  EdgeList edges;
  if (n >= 2) {
    std::vector<double> p_row(n), u_buf(n);
    std::vector<std::uint32_t> idx_buf(n);
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
      for (std::uint32_t j = i + 1; j < n; ++j) {
        double p = 0.0;
        for (std::size_t l = 0; l < r; ++l) p += features[i][l] * features[j][l];
        p_row[j - i - 1] = p;
      }
      sample_rows(n, edges, p_row, i, u_buf, idx_buf, rng);
    }
  }
  sample.graph = Graph::from_edges(n, edges);
  return sample;
}

namespace {

// Shared core of both deviation functionals. With s = |mu|^2 and a
// nonnegative per-component variance d_l, the functional expands to
//   3 s (sum d_l mu_l^2) + 3 (sum d_l^2 mu_l^2) + sum d_l^3,
// a sum of nonnegative terms that vanishes exactly when every d_l does.
double deviation_from_moments(std::span<const double> mu,
                              std::span<const double> var) {
  double s = 0.0;
  for (double m : mu) s += m * m;
  double lin = 0.0, quad = 0.0, cubic = 0.0;
  for (std::size_t l = 0; l < mu.size(); ++l) {
    const double m2 = mu[l] * mu[l];
    lin += var[l] * m2;
    quad += var[l] * var[l] * m2;
    cubic += var[l] * var[l] * var[l];
  }
  return 3.0 * s * lin + 3.0 * quad + cubic;
}

}  // namespace

double v_theta(std::span<const double> theta) {
  if (theta.empty()) throw EmptyVector("v_theta: empty vector");
  const double mu = anchored_mean(theta);
  const double var = centered_second_moment(theta, mu);
  const double mu_arr[1] = {mu};
  const double var_arr[1] = {var};
  return deviation_from_moments(mu_arr, var_arr);
}

double v_g(std::span<const StepFunction> funcs) {
  LatentSpec probe;
  probe.funcs.assign(funcs.begin(), funcs.end());
  check_latent(probe);
  std::vector<double> mu(funcs.size()), var(funcs.size());
  for (std::size_t l = 0; l < funcs.size(); ++l) {
    mu[l] = funcs[l].mean();
    var[l] = centered_second_moment(funcs[l].values, mu[l]);
  }
  return deviation_from_moments(mu, var);
}

namespace {

// n, (m n^2)^{1/3} or b^{1/3}, depending on the plan.
double snr_scale(const SamplingPlan& plan, double n) {
  if (const auto* node = std::get_if<NodeSamplePlan>(&plan.variant)) {
    return std::cbrt(static_cast<double>(node->m) * n * n);
  }
  if (const auto* trip = std::get_if<TripleSamplePlan>(&plan.variant)) {
    return std::cbrt(static_cast<double>(trip->b));
  }
  return n;
}

double sbm_snr_base(double a, double b) {
  check_probability(a, "a");
  check_probability(b, "b");
  if (a + b == 0.0) return 0.0;
  return (a - b) * (a - b) / (a + b);
}

}  // namespace

SnrDiagnostics snr_diagnostics(const ModelSpec& spec,
                               const SamplingPlan& plan) {
  const double n = static_cast<double>(model_node_count(spec));
  SnrDiagnostics out;

  if (std::holds_alternative<ErSpec>(spec)) {
    return out;  // the null: zero by definition
  }
  if (const auto* s = std::get_if<Sbm2Spec>(&spec)) {
    const double base = sbm_snr_base(s->a, s->b);
    out.raw = n * base;
    out.adjusted = snr_scale(plan, n) * base;
    return out;
  }
  if (const auto* s = std::get_if<SbmLabelsSpec>(&spec)) {
    const double base = sbm_snr_base(s->a, s->b);
    out.raw = n * base;
    out.adjusted = snr_scale(plan, n) * base;
    return out;
  }
  if (const auto* s = std::get_if<SbmKSpec>(&spec)) {
    const double k43 = std::pow(static_cast<double>(s->k), 4.0 / 3.0);
    const double base = sbm_snr_base(s->a, s->b) / k43;
    out.raw = n * base;
    out.adjusted = snr_scale(plan, n) * base;
    return out;
  }
  if (const auto* s = std::get_if<ConfigSpec>(&spec)) {
    check_theta(s->theta);
    double rho = 0.0;
    for (double t : s->theta) rho = std::max(rho, t * t);
    const double delta = v_theta(s->theta);
    const double noise = rho * rho * rho / (n * n * n) +
                         std::pow(rho, 5) / (n * n);
    out.raw = noise > 0.0 ? delta * delta / noise : 0.0;
    out.adjusted = out.raw;
    return out;
  }
  if (const auto* s = std::get_if<ConfigBetaSpec>(&spec)) {
    // Population moments of Beta(alpha, (1-h)/h alpha): E theta = h and
    // E theta^2 = h^2 (alpha+1)/(alpha+h). rho uses the typical squared
    // scale E theta^2 rather than the support bound, matching how the
    // sparsity parameter is read for this family.
    if (!(s->h > 0.0 && s->h < 1.0) || !(s->alpha > 0.0)) {
      throw BadParameter("config beta: invalid (h, alpha)");
    }
    const double m2 = s->h * s->h * (s->alpha + 1.0) / (s->alpha + s->h);
    const double delta = m2 * m2 * m2 - std::pow(s->h, 6);
    const double rho = m2;
    const double noise = rho * rho * rho / (n * n * n) +
                         std::pow(rho, 5) / (n * n);
    out.raw = noise > 0.0 ? delta * delta / noise : 0.0;
    out.adjusted = out.raw;
    return out;
  }
  const auto& s = std::get<LatentSpec>(spec);
  check_latent(s);
  double rho = 0.0;
  for (const auto& g : s.funcs) rho += g.sup() * g.sup();
  const double delta = v_g(s.funcs);
  const double noise =
      rho * rho * rho / (n * n * n) + std::pow(rho, 6) / n;
  out.raw = noise > 0.0 ? delta * delta / noise : 0.0;
  out.adjusted = out.raw;
  return out;
}

GeneratedGraph generate(const ModelSpec& spec, Rng& rng) {
  GeneratedGraph out;
  if (const auto* s = std::get_if<ErSpec>(&spec)) {
    out.graph = gen_er(s->n, s->p, rng);
  } else if (const auto* s = std::get_if<Sbm2Spec>(&spec)) {
    auto sample = gen_sbm(*s, rng);
    out.graph = std::move(sample.graph);
    out.labels = std::move(sample.labels);
  } else if (const auto* s = std::get_if<SbmKSpec>(&spec)) {
    auto sample = gen_sbm(*s, rng);
    out.graph = std::move(sample.graph);
    out.labels = std::move(sample.labels);
  } else if (const auto* s = std::get_if<SbmLabelsSpec>(&spec)) {
    auto sample = gen_sbm(*s, rng);
    out.graph = std::move(sample.graph);
    out.labels = std::move(sample.labels);
  } else if (const auto* s = std::get_if<ConfigSpec>(&spec)) {
    out.graph = gen_config(s->theta, rng);
    out.theta = s->theta;
  } else if (const auto* s = std::get_if<ConfigBetaSpec>(&spec)) {
    auto theta = sample_beta_theta(s->n, s->h, s->alpha, rng);
    out.graph = gen_config(theta, rng);
    out.theta = std::move(theta);
  } else {
    auto sample = gen_latent(std::get<LatentSpec>(spec), rng);
    out.graph = std::move(sample.graph);
    out.xi = std::move(sample.xi);
  }
  return out;
}

}  // namespace sgt
