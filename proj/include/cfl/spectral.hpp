#ifndef CFL_SPECTRAL_HPP
#define CFL_SPECTRAL_HPP

// Second adjacency eigenvalue, expander-mixing audits, and the degree /
// eigenvalue thresholds under which the clique-factor results apply.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <cstdint>
#include <string>
#include <vector>

#include "cfl/error.hpp"
#include "cfl/graph.hpp"
#include "cfl/parallel.hpp"
#include "cfl/rng.hpp"

namespace cfl {

enum class EigenMethod { automatic, dense_eig, power_iter };

inline std::string to_string(EigenMethod m) {
  switch (m) {
    case EigenMethod::automatic: return "auto";
    case EigenMethod::dense_eig: return "dense_eig";
    case EigenMethod::power_iter: return "power_iter";
  }
  return "?";
}

/// Largest n for which the automatic method uses the dense solver.
inline constexpr int kDenseEigenLimit = 2000;

struct SpectralCert {
  int n = 0;
  int d = 0;
  double lambda = 0.0;
  EigenMethod method = EigenMethod::dense_eig;
  double residual = 0.0;
  // Both candidates for lambda. Only the larger absolute value enters any
  // bound, but ties between them are reported rather than hidden.
  double mu_second = 0.0;
  double mu_last = 0.0;
  // lambda == d: disconnected, or bipartite with mu_n = -d.
  bool trivial_gap = false;
};

namespace spectral_detail {

inline Eigen::MatrixXd adjacency(const Graph& g) {
  const int n = g.num_vertices();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  return a;
}

/// y = (A - (d/n) J) x for a d-regular graph.
inline void apply_deflated(const Graph& g, double d, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  const int n = g.num_vertices();
  const double shift = d / n * x.sum();
  y.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    double s = 0.0;
    for (const Vertex u : g.neighbors(v)) s += x[u];
    y[v] = s - shift;
  }
}

}  // namespace spectral_detail

/// lambda = max_{i >= 2} |mu_i| for a regular graph.
///
/// The dense path runs a full symmetric eigendecomposition. The power path
/// iterates (A - (d/n)J)^2, whose top eigenvalue is lambda^2 because the
/// all-ones vector carries the eigenvalue d of a regular graph.
inline SpectralCert second_eigenvalue(const Graph& g, double tol = 1e-9,
                                      EigenMethod method = EigenMethod::automatic,
                                      std::uint64_t seed = 1) {
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  const auto reg = regularity(g);
  if (!reg.is_regular) throw InputError("second_eigenvalue needs a regular graph");
  const int n = g.num_vertices();
  if (n < 2) throw InputError("second_eigenvalue needs at least 2 vertices");
  if (method == EigenMethod::automatic)
    method = n <= kDenseEigenLimit ? EigenMethod::dense_eig : EigenMethod::power_iter;

  SpectralCert cert;
  cert.n = n;
  cert.d = reg.d;
  cert.method = method;

  if (method == EigenMethod::dense_eig) {
    const Eigen::MatrixXd a = spectral_detail::adjacency(g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
    const auto& mu = solver.eigenvalues();  // ascending
    cert.mu_second = mu[n - 2];
    cert.mu_last = mu[0];
    cert.lambda = std::max(std::abs(cert.mu_second), std::abs(cert.mu_last));
    const auto& vecs = solver.eigenvectors();
    const double r2 = (a * vecs.col(n - 2) - mu[n - 2] * vecs.col(n - 2)).norm();
    const double r0 = (a * vecs.col(0) - mu[0] * vecs.col(0)).norm();
    cert.residual = std::max(r2, r0);
  } else {
    Rng rng(seed);
    Eigen::VectorXd x(n), y(n), z(n);
    for (int i = 0; i < n; ++i) x[i] = rng.uniform() - 0.5;
    x.array() -= x.mean();
    x.normalize();
    double estimate = 0.0;
    constexpr int kMaxIterations = 200000;
    bool converged = false;
    for (int it = 0; it < kMaxIterations; ++it) {
      spectral_detail::apply_deflated(g, reg.d, x, y);
      spectral_detail::apply_deflated(g, reg.d, y, z);
      const double rayleigh = x.dot(z);  // -> lambda^2
      const double resid = (z - rayleigh * x).norm();
      estimate = rayleigh;
      const double zn = z.norm();
      if (zn == 0.0) {
        estimate = 0.0;
        converged = true;
        cert.residual = 0.0;
        break;
      }
      // Eigenpair residual of B^2 translates to an error of roughly
      // resid / (2 lambda) in lambda.
      const double lam = std::sqrt(std::max(rayleigh, 0.0));
      cert.residual = lam > 0 ? resid / (2.0 * lam) : resid;
      if (cert.residual <= tol) {
        converged = true;
        break;
      }
      x = z / zn;
      x.array() -= x.mean();
      x.normalize();
    }
    if (!converged) throw NumericalError("power iteration did not reach the tolerance");
    cert.lambda = std::sqrt(std::max(estimate, 0.0));
    cert.mu_second = cert.lambda;  // sign not resolved by the squared iteration
    cert.mu_last = -cert.lambda;
  }
  if (cert.residual > tol)
    throw NumericalError("eigenpair residual " + std::to_string(cert.residual) +
                         " exceeds tolerance");
  cert.lambda = std::min(cert.lambda, static_cast<double>(cert.d));
  cert.trivial_gap = std::abs(cert.lambda - cert.d) <= std::max(tol, 1e-9);
  return cert;
}

/// e(A,B): ordered pairs (a,b) in A x B with ab an edge; edges inside
/// A ∩ B count twice.
inline long count_cross_edges(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b) {
  std::vector<char> in_b(static_cast<std::size_t>(g.num_vertices()), 0);
  for (const Vertex v : b) in_b[static_cast<std::size_t>(v)] = 1;
  long count = 0;
  for (const Vertex u : a)
    for (const Vertex v : g.neighbors(u)) count += in_b[static_cast<std::size_t>(v)];
  return count;
}

/// Slack allowed on the strict mixing inequality.
inline constexpr double kMixingSlack = 1e-9;

struct MixingTerm {
  long cross_edges = 0;
  double deviation = 0.0;  // |e(A,B) - (d/n)|A||B||
  double bound = 0.0;      // lambda sqrt(|A||B|)
  /// deviation - bound - slack; positive exactly when the inequality fails.
  double violation() const { return deviation - bound - kMixingSlack; }
};

inline MixingTerm mixing_term(const Graph& g, double d, double lambda, std::span<const Vertex> a,
                              std::span<const Vertex> b) {
  MixingTerm term;
  term.cross_edges = count_cross_edges(g, a, b);
  const double sa = static_cast<double>(a.size()), sb = static_cast<double>(b.size());
  term.deviation = std::abs(static_cast<double>(term.cross_edges) - d / g.num_vertices() * sa * sb);
  term.bound = lambda * std::sqrt(sa * sb);
  return term;
}

struct MixingAuditReport {
  long samples = 0;
  double max_violation = 0.0;
  bool violated = false;
  int worst_a_size = 0;
  int worst_b_size = 0;
};

/// Samples pairs of uniformly random subsets (sizes uniform in [1, n]) and
/// checks the expander mixing inequality with the certified lambda.
inline MixingAuditReport mixing_audit(const Graph& g, const SpectralCert& cert, long num_samples,
                                      std::uint64_t seed) {
  if (cert.n != g.num_vertices()) throw InputError("certificate does not match graph");
  const int n = g.num_vertices();
  MixingAuditReport report;
  report.samples = num_samples;
  report.max_violation = -std::numeric_limits<double>::infinity();
  if (num_samples <= 0) {
    report.max_violation = 0.0 - kMixingSlack;
    return report;
  }
  const std::size_t chunks = std::min<std::size_t>(64, static_cast<std::size_t>(num_samples));
  struct Partial {
    double worst = -std::numeric_limits<double>::infinity();
    int a = 0, b = 0;
  };
  std::vector<Partial> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const long begin = static_cast<long>(c) * num_samples / static_cast<long>(chunks);
    const long end = static_cast<long>(c + 1) * num_samples / static_cast<long>(chunks);
    for (long s = begin; s < end; ++s) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
      const int ka = static_cast<int>(rng.between(1, n));
      const int kb = static_cast<int>(rng.between(1, n));
      const auto a = rng.subset(n, ka);
      const auto b = rng.subset(n, kb);
      const double v = mixing_term(g, cert.d, cert.lambda, a, b).violation();
      if (v > partial[c].worst) partial[c] = {v, ka, kb};
    }
  });
  for (const auto& p : partial) {
    if (p.worst > report.max_violation) {
      report.max_violation = p.worst;
      report.worst_a_size = p.a;
      report.worst_b_size = p.b;
    }
  }
  report.violated = report.max_violation > 0.0;
  return report;
}

enum class FloorCheck { pass, fail, not_applicable };

inline std::string to_string(FloorCheck f) {
  switch (f) {
    case FloorCheck::pass: return "pass";
    case FloorCheck::fail: return "fail";
    case FloorCheck::not_applicable: return "not_applicable";
  }
  return "?";
}

/// lambda >= sqrt(d/2) whenever d <= n/2.
inline FloorCheck lambda_floor_check(const SpectralCert& cert, double tol = 1e-9) {
  if (2 * cert.d > cert.n) return FloorCheck::not_applicable;
  return cert.lambda >= std::sqrt(cert.d / 2.0) - tol ? FloorCheck::pass : FloorCheck::fail;
}

enum class Branch { dense_branch, sparse_branch, fails, both };

inline std::string to_string(Branch b) {
  switch (b) {
    case Branch::dense_branch: return "dense_branch";
    case Branch::sparse_branch: return "sparse_branch";
    case Branch::fails: return "fails";
    case Branch::both: return "both";
  }
  return "?";
}

/// Exponent of the number of fractional factors extracted: l = n^beta.
inline double factor_exponent_beta(int t) {
  return 1.0 / ((4.0 * t * t + 1.0) * (2.0 * t - 3.0));
}
inline double sparse_exponent_delta(int t) {
  return 4.0 * t * t / ((4.0 * t * t + 1.0) * (2.0 * t - 3.0));
}
/// c(t) in lambda <= c d^{t-1} / n^{t-2}.
inline double lambda_constant(int t) { return 1.0 / (50.0 * t * std::pow(4.0, t - 2)); }

struct HypothesisReport {
  int t = 0;
  int n = 0;
  int d = 0;
  double lambda = 0.0;
  double c = 0.0;
  double lambda_bound = 0.0;      // c d^{t-1} / n^{t-2}
  double beta = 0.0;
  double delta = 0.0;
  double dense_threshold = 0.0;   // d >= n^{1 - 1/(2t-3) + beta}
  double sparse_threshold = 0.0;  // d <= n^{1 - delta}
  double degree_floor = 0.0;        // n^{1-1/(2t-3)} / 2, as stated
  double degree_floor_sharp = 0.0;  // n^{1-1/(2t-3)} / 2^{1/(2t-3)}
  bool lambda_ok = false;
  bool dense_ok = false;
  bool sparse_ok = false;
  Branch branch = Branch::fails;
};

inline HypothesisReport hypothesis_check(const SpectralCert& cert, int t) {
  if (t < 3) throw InputError("hypothesis_check needs t >= 3");
  HypothesisReport r;
  r.t = t;
  r.n = cert.n;
  r.d = cert.d;
  r.lambda = cert.lambda;
  const double n = cert.n, d = cert.d;
  r.c = lambda_constant(t);
  r.lambda_bound = r.c * std::pow(d, t - 1) / std::pow(n, t - 2);
  r.beta = factor_exponent_beta(t);
  r.delta = sparse_exponent_delta(t);
  const double e = 1.0 / (2.0 * t - 3.0);
  r.dense_threshold = std::pow(n, 1.0 - e + r.beta);
  r.sparse_threshold = std::pow(n, 1.0 - r.delta);
  r.degree_floor = std::pow(n, 1.0 - e) / 2.0;
  r.degree_floor_sharp = std::pow(n, 1.0 - e) / std::pow(2.0, e);
  r.lambda_ok = cert.lambda <= r.lambda_bound;
  // The two thresholds coincide algebraically; the relative slack keeps
  // floating rounding from excluding the boundary from both branches.
  const double eps = 1e-12 * std::max(1.0, r.dense_threshold);
  r.dense_ok = d >= r.dense_threshold - eps;
  r.sparse_ok = d <= r.sparse_threshold + eps;
  if (!r.lambda_ok) r.branch = Branch::fails;
  else if (r.dense_ok && r.sparse_ok) r.branch = Branch::both;
  else if (r.dense_ok) r.branch = Branch::dense_branch;
  else if (r.sparse_ok) r.branch = Branch::sparse_branch;
  else r.branch = Branch::fails;
  return r;
}

}  // namespace cfl

#endif  // CFL_SPECTRAL_HPP
