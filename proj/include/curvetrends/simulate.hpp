#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvetrends/basis.hpp"
#include "curvetrends/common.hpp"
#include "curvetrends/metrics.hpp"
#include "curvetrends/panel.hpp"
#include "curvetrends/rng.hpp"
#include "curvetrends/selection.hpp"

namespace curvetrends {

// Building blocks of the two designs, exposed so their distributional
// contracts can be checked in isolation. All draws advance the passed
// generator in a fixed, documented order.
namespace dgp {

// Diagonal VAR(1) companion: i.i.d. U[-1,1] entries rescaled so the operator
// norm (max |entry| for a diagonal matrix) is exactly 0.8.
Vector draw_companion(CounterRng& rng, int q);

// VAR(1) increments with unit normal innovations, started at zero with 100
// burn-in periods discarded; rows t = 1..T.
Matrix var_increments(CounterRng& rng, const Vector& companion, int T);

// Brownian-bridge coefficients: row t, column j holds
// (S_tj - (t/T) S_Tj) / sqrt(T) for standard normal partial sums S; the
// bridge is exactly zero at t = T.
Matrix brownian_bridge(CounterRng& rng, int T, int J);

// VARMA(1,1) noise v_t = 0.4 v_{t-1} + e_t + 0.4 e_{t-1} with
// e ~ N(0, diag(1.25, 0.75, 1.4, 0.6)), 100 burn-in periods discarded.
Matrix varma_noise(CounterRng& rng, int T);

// alpha0 beta0^T of the cointegrated design, rank 4 - scenario' by scenario.
Matrix error_correction_matrix(int scenario);

// Separation-decay kernel weights 1 / (|j1 - j2| + 1)^2.
Matrix separation_weights(int J);

// Cholesky factor of the banded cross-series correlation max{0, 1-|i-j|/10};
// lower triangular with bandwidth 9.
Matrix cross_series_cholesky(int N);

// One period of idiosyncratic coefficients: N x J with covariance
// C (x) diag(1, 1/4, ..., 1/J^2), C the banded correlation above.
Matrix idiosyncratic_draw(CounterRng& rng, const Matrix& chol, int J);

}  // namespace dgp

enum class Design { ex61, ex62 };

const char* to_string(Design d);

struct SimConfig {
  Design design = Design::ex61;
  int N = 100;
  int T = 200;
  int q = 5;         // ex61 trend count; ex62 fixes q = 4
  int scenario = 0;  // ex62 cointegrating rank, 0..3
  int J = 51;
  std::uint64_t seed = 0;
  int replications = 1;
};

// Latent state of a simulated panel, kept for metric computation.
struct SimTruth {
  Design design = Design::ex61;
  int q = 0;
  int scenario = 0;
  std::uint64_t seed = 0;
  Matrix trends;      // T x q, G_t with G_0 = 0
  Matrix increments;  // T x q, row t = G_t - G_{t-1}
  std::vector<VectorCurve> loadings;  // true Lambda_i

  // G_t - G_1 for t = 2..T, the quantity the differenced estimator tracks.
  Matrix centered_trends_tail() const;
};

// Full-rank integrated factors: diagonal VAR(1) increments rescaled to
// operator norm 0.8, Brownian-bridge series-approximation error, U[0,3]
// kernel loadings with separation-decay weights, and banded cross-series
// idiosyncratic coefficients.
std::pair<CurvePanel, SimTruth> gen_example_61(const SimConfig& cfg);

// Cointegrated factors (q = 4): error-correction trends driven by VARMA(1,1)
// noise, rank q - scenario', and integrated idiosyncratic components.
std::pair<CurvePanel, SimTruth> gen_example_62(const SimConfig& cfg);

std::pair<CurvePanel, SimTruth> generate(const SimConfig& cfg);

// What to run on each replication. The eigenvalue criteria are evaluated for
// whichever estimators run; cointegrating-rank selection uses the PANIC fit
// at the diff-criterion's selected q.
struct PipelineSpec {
  bool run_fpca = true;
  bool run_panic = true;
  bool select_q = true;
  bool coint_rank = false;
  std::optional<int> fixed_q;  // fit size; defaults to the design's true q
  int threads = 1;
};

struct ReplicationResult {
  int rep = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double ae_g_fpca = nan(), ae_xi_fpca = nan(), ae_lambda_fpca = nan();
  double ae_g_panic = nan(), ae_xi_panic = nan(), ae_lambda_panic = nan();
  int q_levels = -1, q_diff = -1;
  int rank_bic = -1, rank_hq = -1;

  static double nan() { return std::numeric_limits<double>::quiet_NaN(); }
};

struct MeanSd {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double sd = std::numeric_limits<double>::quiet_NaN();
  int n = 0;
};

struct ReplicationSummary {
  int n_total = 0;
  int n_ok = 0;
  MeanSd log_ae_g_fpca, log_ae_xi_fpca, log_ae_lambda_fpca;
  MeanSd log_ae_g_panic, log_ae_xi_panic, log_ae_lambda_panic;
  ConfusionCounts conf_levels, conf_diff, conf_bic, conf_hq;
};

struct ReplicationReport {
  SimConfig config;
  PipelineSpec pipeline;
  std::vector<ReplicationResult> rows;

  ReplicationSummary summarize() const;
};

// Runs cfg.replications independent replications (replication r uses the
// substream key derived from cfg.seed and r), in any thread layout, and
// aggregates by replication index so the report is identical regardless of
// scheduling.
ReplicationReport run_replications(const SimConfig& cfg, const PipelineSpec& pipeline);

// Single replication on an already generated panel; exposed for reuse by the
// acceptance suite.
ReplicationResult evaluate_replication(const CurvePanel& panel, const SimTruth& truth,
                                       const PipelineSpec& pipeline);

}  // namespace curvetrends
