#include "curvetrends/simulate.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "curvetrends/fpca.hpp"
#include "curvetrends/panic.hpp"

namespace curvetrends {

const char* to_string(Design d) { return d == Design::ex61 ? "ex61" : "ex62"; }

Matrix SimTruth::centered_trends_tail() const {
  const Eigen::Index T = trends.rows();
  Matrix out = trends.bottomRows(T - 1);
  out.rowwise() -= trends.row(0);
  return out;
}

namespace dgp {

namespace {
constexpr int kBurnIn = 100;
constexpr double kBandWidth = 10.0;
constexpr int kLowerBand = 9;  // bandwidth of the correlation's Cholesky factor
}  // namespace

Vector draw_companion(CounterRng& rng, int q) {
  Vector companion(q);
  Eigen::Index imax = 0;
  double amax = 0.0;
  do {  // the all-zero draw has probability zero but is redrawn
    for (int j = 0; j < q; ++j) companion[j] = rng.next_uniform(-1.0, 1.0);
    amax = companion.cwiseAbs().maxCoeff(&imax);
  } while (amax == 0.0);
  companion *= 0.8 / amax;
  // Pin the extreme entry so the operator norm is 0.8 exactly, untouched by
  // the rescale rounding.
  companion = companion.cwiseMax(-0.8).cwiseMin(0.8);
  companion[imax] = companion[imax] < 0 ? -0.8 : 0.8;
  return companion;
}

Matrix var_increments(CounterRng& rng, const Vector& companion, int T) {
  const int q = static_cast<int>(companion.size());
  Matrix xi(T, q);
  Vector state = Vector::Zero(q);
  for (int t = -kBurnIn; t < T; ++t) {
    state = companion.cwiseProduct(state) + rng.normal_vector(q);
    if (t >= 0) xi.row(t) = state.transpose();
  }
  return xi;
}

Matrix brownian_bridge(CounterRng& rng, int T, int J) {
  Matrix partial = rng.normal_matrix(T, J);
  for (int t = 1; t < T; ++t) partial.row(t) += partial.row(t - 1);
  const double root_t = std::sqrt(static_cast<double>(T));
  Matrix bridge(T, J);
  for (int t = 0; t < T; ++t) {
    const double frac = static_cast<double>(t + 1) / T;
    bridge.row(t) = (partial.row(t) - frac * partial.row(T - 1)) / root_t;
  }
  return bridge;
}

Matrix varma_noise(CounterRng& rng, int T) {
  const Vector sd = Vector{{1.25, 0.75, 1.4, 0.6}}.cwiseSqrt();
  Matrix v(T, 4);
  Vector prev_v = Vector::Zero(4);
  Vector prev_e = Vector::Zero(4);
  for (int t = -kBurnIn; t < T; ++t) {
    const Vector e = sd.cwiseProduct(rng.normal_vector(4));
    prev_v = 0.4 * prev_v + e + 0.4 * prev_e;
    prev_e = e;
    if (t >= 0) v.row(t) = prev_v.transpose();
  }
  return v;
}

Matrix error_correction_matrix(int scenario) {
  require(scenario >= 0 && scenario <= 3, errc::invalid_argument,
          "error_correction_matrix: scenario must be in {0, 1, 2, 3}");
  Matrix pi = Matrix::Zero(4, 4);
  Matrix r1(2, 2), r2(2, 2), r3(2, 2);
  r1 << -0.5, 0.1, 0.2, -0.4;
  r2 << -2.0, 2.0, -0.5, 0.5;  // (2, 0.5)^T (-1, 1), rank one
  r3 << -0.7, 0.1, 0.2, -0.6;
  switch (scenario) {
    case 0: break;
    case 1: pi.topLeftCorner(2, 2) = r2; break;
    case 2: pi.topLeftCorner(2, 2) = r3; break;
    case 3:
      pi.topLeftCorner(2, 2) = r1;
      pi.bottomRightCorner(2, 2) = r2;
      break;
  }
  return pi;
}

Matrix separation_weights(int J) {
  Matrix w(J, J);
  for (int a = 0; a < J; ++a)
    for (int b = 0; b < J; ++b) {
      const double d = std::abs(a - b) + 1.0;
      w(a, b) = 1.0 / (d * d);
    }
  return w;
}

Matrix cross_series_cholesky(int N) {
  Matrix c(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) c(i, j) = std::max(0.0, 1.0 - std::abs(i - j) / kBandWidth);
  Eigen::LLT<Matrix> llt(c);
  require(llt.info() == Eigen::Success, errc::numerical_failure,
          "cross_series_cholesky: correlation is not positive definite");
  return llt.matrixL();
}

Matrix idiosyncratic_draw(CounterRng& rng, const Matrix& chol, int J) {
  const int N = static_cast<int>(chol.rows());
  const Matrix e = rng.normal_matrix(N, J);
  Matrix out(N, J);
  for (int i = 0; i < N; ++i) {
    const int k0 = std::max(0, i - kLowerBand);
    out.row(i) = chol.row(i).segment(k0, i - k0 + 1) * e.middleRows(k0, i - k0 + 1);
  }
  for (int j = 0; j < J; ++j) out.col(j) /= (j + 1.0);
  return out;
}

}  // namespace dgp

namespace {

struct KernelDraws {
  std::vector<Matrix> kernels;        // K_i, J x J
  std::vector<VectorCurve> loadings;  // K_i's first q columns, transposed
};

// U[0,3] kernel coefficients under the separation-decay weights; the induced
// loading component l of series i has coefficient vector K_i column l.
KernelDraws draw_kernels(CounterRng& rng, int N, int J, int q, const BasisSpec& basis) {
  const Matrix w = dgp::separation_weights(J);
  KernelDraws out;
  out.kernels.reserve(static_cast<std::size_t>(N));
  out.loadings.reserve(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    Matrix k(J, J);
    for (int b = 0; b < J; ++b)
      for (int a = 0; a < J; ++a) k(a, b) = rng.next_uniform(0.0, 3.0) * w(a, b);
    out.loadings.push_back(VectorCurve{basis, k.leftCols(q).transpose()});
    out.kernels.push_back(std::move(k));
  }
  return out;
}

void check_config(const SimConfig& cfg) {
  require(cfg.N >= 1, errc::invalid_argument, "simulate: N must be >= 1");
  require(cfg.T >= 3, errc::invalid_argument, "simulate: T must be >= 3");
  require(cfg.J >= 1, errc::invalid_argument, "simulate: J must be >= 1");
  if (cfg.design == Design::ex61)
    require(cfg.q >= 1 && cfg.q <= cfg.J, errc::invalid_argument, "simulate: need 1 <= q <= J");
  else
    require(cfg.scenario >= 0 && cfg.scenario <= 3, errc::invalid_argument,
            "simulate: scenario must be in {0, 1, 2, 3}");
}

}  // namespace

// Draw order (part of the reproducibility contract): companion, VAR
// innovations, bridge shocks, kernels by series, idiosyncratics by period.
std::pair<CurvePanel, SimTruth> gen_example_61(const SimConfig& cfg) {
  check_config(cfg);
  require(cfg.design == Design::ex61, errc::invalid_argument, "gen_example_61: wrong design");
  const int N = cfg.N, T = cfg.T, q = cfg.q, J = cfg.J;
  CounterRng rng(cfg.seed);
  const BasisSpec basis = fourier_basis(J, 0.0, 1.0);

  const Vector companion = dgp::draw_companion(rng, q);
  Matrix xi = dgp::var_increments(rng, companion, T);
  Matrix trends = xi;
  for (int t = 1; t < T; ++t) trends.row(t) += trends.row(t - 1);

  // Series-approximation error curves: bridge coefficients damped by j^2,
  // stored column-per-period.
  Matrix eta(J, T);
  {
    const Matrix bridge = dgp::brownian_bridge(rng, T, J);
    for (int j = 0; j < J; ++j) eta.row(j) = bridge.col(j).transpose() / ((j + 1.0) * (j + 1.0));
  }

  KernelDraws kd = draw_kernels(rng, N, J, q, basis);

  std::vector<Series> series(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    Series& s = series[static_cast<std::size_t>(i)];
    s.id = "s" + std::to_string(i + 1);
    s.basis = basis;
    s.avail.assign(static_cast<std::size_t>(T), 1);
    s.coef = kd.kernels[static_cast<std::size_t>(i)].leftCols(q) * trends.transpose() +
             (1.0 / q) * (kd.kernels[static_cast<std::size_t>(i)] * eta);
  }
  const Matrix chol = dgp::cross_series_cholesky(N);
  for (int t = 0; t < T; ++t) {
    const Matrix eps = dgp::idiosyncratic_draw(rng, chol, J);
    for (int i = 0; i < N; ++i)
      series[static_cast<std::size_t>(i)].coef.col(t) += eps.row(i).transpose();
  }

  SimTruth truth;
  truth.design = Design::ex61;
  truth.q = q;
  truth.scenario = 0;
  truth.seed = cfg.seed;
  truth.trends = std::move(trends);
  truth.increments = std::move(xi);
  truth.loadings = std::move(kd.loadings);
  return {CurvePanel(std::move(series)), std::move(truth)};
}

// Draw order: VARMA noise, kernels by series, idiosyncratics by period.
std::pair<CurvePanel, SimTruth> gen_example_62(const SimConfig& cfg) {
  check_config(cfg);
  require(cfg.design == Design::ex62, errc::invalid_argument, "gen_example_62: wrong design");
  const int N = cfg.N, T = cfg.T, J = cfg.J;
  const int q = 4;
  require(J >= q, errc::invalid_argument, "gen_example_62: J must be >= 4");
  CounterRng rng(cfg.seed);
  const BasisSpec basis = fourier_basis(J, 0.0, 1.0);

  const Matrix pi = dgp::error_correction_matrix(cfg.scenario);
  const Matrix v = dgp::varma_noise(rng, T);

  // Error-correction recursion from G_0 = 0.
  Matrix trends(T, q), xi(T, q);
  Vector g = Vector::Zero(q);
  for (int t = 0; t < T; ++t) {
    const Vector step = pi * g + v.row(t).transpose();
    g += step;
    trends.row(t) = g.transpose();
    xi.row(t) = step.transpose();
  }

  KernelDraws kd = draw_kernels(rng, N, J, q, basis);

  std::vector<Series> series(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    Series& s = series[static_cast<std::size_t>(i)];
    s.id = "s" + std::to_string(i + 1);
    s.basis = basis;
    s.avail.assign(static_cast<std::size_t>(T), 1);
    s.coef = kd.kernels[static_cast<std::size_t>(i)].leftCols(q) * trends.transpose();
  }
  // Integrated idiosyncratics: running sums of the full-rank design's draws.
  const Matrix chol = dgp::cross_series_cholesky(N);
  Matrix cum = Matrix::Zero(N, J);
  for (int t = 0; t < T; ++t) {
    cum += dgp::idiosyncratic_draw(rng, chol, J);
    for (int i = 0; i < N; ++i)
      series[static_cast<std::size_t>(i)].coef.col(t) += cum.row(i).transpose();
  }

  SimTruth truth;
  truth.design = Design::ex62;
  truth.q = q;
  truth.scenario = cfg.scenario;
  truth.seed = cfg.seed;
  truth.trends = std::move(trends);
  truth.increments = std::move(xi);
  truth.loadings = std::move(kd.loadings);
  return {CurvePanel(std::move(series)), std::move(truth)};
}

std::pair<CurvePanel, SimTruth> generate(const SimConfig& cfg) {
  return cfg.design == Design::ex61 ? gen_example_61(cfg) : gen_example_62(cfg);
}

ReplicationResult evaluate_replication(const CurvePanel& panel, const SimTruth& truth,
                                       const PipelineSpec& pipeline) {
  const int N = panel.n_series();
  const int T = panel.n_periods();
  const int q_fit = pipeline.fixed_q.value_or(truth.q);

  ReplicationResult r;
  r.seed = truth.seed;

  if (pipeline.run_fpca) {
    const FactorFit fit = fit_fpca(panel, q_fit);
    if (q_fit >= 1) {
      r.ae_g_fpca = ae_factors(fit.factors, truth.trends);
      const Matrix est_xi = fit.factors.bottomRows(T - 1) - fit.factors.topRows(T - 1);
      r.ae_xi_fpca = ae_factors(est_xi, truth.increments.bottomRows(T - 1));
      r.ae_lambda_fpca = ae_loadings(fit.loadings, truth.loadings);
    }
    if (pipeline.select_q)
      r.q_levels =
          select_q_levels(selection_eigenvalues(fit), N, T, default_q_max(N, T)).chosen;
  }

  if (pipeline.run_panic) {
    const FactorFit fit = fit_panic(panel, q_fit);
    if (q_fit >= 1) {
      r.ae_g_panic = ae_factors(fit.trends, truth.centered_trends_tail());
      r.ae_xi_panic = ae_factors(fit.factors, truth.increments.bottomRows(T - 1));
      r.ae_lambda_panic = ae_loadings(fit.loadings, truth.loadings);
    }
    int q_diff = -1;
    if (pipeline.select_q || pipeline.coint_rank)
      q_diff = select_q_diff(selection_eigenvalues(fit), N, T, default_q_max(N, T - 1)).chosen;
    if (pipeline.select_q) r.q_diff = q_diff;
    if (pipeline.coint_rank && q_diff >= 1) {
      const FactorFit& rank_fit = q_diff == q_fit ? fit : fit_panic(panel, q_diff);
      const Matrix lagged = lagged_trends(rank_fit.trends);
      r.rank_bic = select_coint_rank(rank_fit.factors, lagged, T, SelectionMethod::bic).chosen;
      r.rank_hq = select_coint_rank(rank_fit.factors, lagged, T, SelectionMethod::hq).chosen;
    }
  }

  r.ok = true;
  return r;
}

namespace {

MeanSd mean_sd_of_logs(const std::vector<ReplicationResult>& rows,
                       double ReplicationResult::*field) {
  MeanSd out;
  double sum = 0.0;
  for (const ReplicationResult& r : rows) {
    if (!r.ok || std::isnan(r.*field)) continue;
    sum += std::log(r.*field);
    ++out.n;
  }
  if (out.n == 0) return out;
  out.mean = sum / out.n;
  double ss = 0.0;
  for (const ReplicationResult& r : rows) {
    if (!r.ok || std::isnan(r.*field)) continue;
    const double d = std::log(r.*field) - out.mean;
    ss += d * d;
  }
  out.sd = out.n > 1 ? std::sqrt(ss / (out.n - 1)) : 0.0;
  return out;
}

ConfusionCounts confusion_of(const std::vector<ReplicationResult>& rows,
                             int ReplicationResult::*field, int truth) {
  std::vector<int> chosen;
  for (const ReplicationResult& r : rows)
    if (r.ok && r.*field >= 0) chosen.push_back(r.*field);
  return chosen.empty() ? ConfusionCounts{} : confusion_counts(chosen, truth);
}

}  // namespace

ReplicationSummary ReplicationReport::summarize() const {
  ReplicationSummary s;
  s.n_total = static_cast<int>(rows.size());
  for (const ReplicationResult& r : rows) s.n_ok += r.ok ? 1 : 0;
  s.log_ae_g_fpca = mean_sd_of_logs(rows, &ReplicationResult::ae_g_fpca);
  s.log_ae_xi_fpca = mean_sd_of_logs(rows, &ReplicationResult::ae_xi_fpca);
  s.log_ae_lambda_fpca = mean_sd_of_logs(rows, &ReplicationResult::ae_lambda_fpca);
  s.log_ae_g_panic = mean_sd_of_logs(rows, &ReplicationResult::ae_g_panic);
  s.log_ae_xi_panic = mean_sd_of_logs(rows, &ReplicationResult::ae_xi_panic);
  s.log_ae_lambda_panic = mean_sd_of_logs(rows, &ReplicationResult::ae_lambda_panic);
  const int true_q = config.design == Design::ex62 ? 4 : config.q;
  s.conf_levels = confusion_of(rows, &ReplicationResult::q_levels, true_q);
  s.conf_diff = confusion_of(rows, &ReplicationResult::q_diff, true_q);
  s.conf_bic = confusion_of(rows, &ReplicationResult::rank_bic, config.scenario);
  s.conf_hq = confusion_of(rows, &ReplicationResult::rank_hq, config.scenario);
  return s;
}

ReplicationReport run_replications(const SimConfig& cfg, const PipelineSpec& pipeline) {
  require(cfg.replications >= 1, errc::invalid_argument,
          "run_replications: need at least one replication");
  ReplicationReport report;
  report.config = cfg;
  report.pipeline = pipeline;
  report.rows.resize(static_cast<std::size_t>(cfg.replications));

  auto run_one = [&](int rep) {
    ReplicationResult& slot = report.rows[static_cast<std::size_t>(rep)];
    SimConfig one = cfg;
    one.seed = CounterRng::substream(cfg.seed, static_cast<std::uint64_t>(rep)).key();
    one.replications = 1;
    slot.rep = rep;
    slot.seed = one.seed;
    try {
      const auto [panel, truth] = generate(one);
      const ReplicationResult eval = evaluate_replication(panel, truth, pipeline);
      const int keep_rep = slot.rep;
      slot = eval;
      slot.rep = keep_rep;
    } catch (const std::exception& e) {
      slot.ok = false;
      slot.error = e.what();
    }
  };

  const int threads = std::max(1, pipeline.threads);
  if (threads == 1) {
    for (int rep = 0; rep < cfg.replications; ++rep) run_one(rep);
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int rep = next.fetch_add(1); rep < cfg.replications; rep = next.fetch_add(1))
        run_one(rep);
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  return report;
}

}  // namespace curvetrends
