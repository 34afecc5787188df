#include "curvetrends/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "curvetrends/fpca.hpp"
#include "curvetrends/io.hpp"
#include "curvetrends/panic.hpp"
#include "curvetrends/rng.hpp"
#include "curvetrends/selection.hpp"
#include "curvetrends/simulate.hpp"
#include "curvetrends/regress.hpp"

namespace curvetrends {

namespace {

namespace fs = std::filesystem;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw ConfigError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> keys;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    keys[key] = value;
  }
  return keys;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(s);
  while (std::getline(is, cell, ',')) {
    cell = trim(cell);
    if (!cell.empty()) out.push_back(cell);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& s) {
  std::vector<int> out;
  for (const std::string& cell : split_list(s)) {
    const auto v = parse_int(cell);
    if (!v) throw ConfigError("config key '" + key + "': '" + cell + "' is not an integer");
    out.push_back(static_cast<int>(*v));
  }
  if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
  return out;
}

// Paper-layout grids; explicit config keys override any preset value.
void apply_preset(std::map<std::string, std::string>& keys, const std::string& preset) {
  std::map<std::string, std::string> base;
  if (preset == "table1" || preset == "table2" || preset == "table3") {
    base = {{"design", "ex61"}, {"N", "100,200,300"}, {"T", "200,300,400"}, {"q", "5,10,15"}};
  } else if (preset == "table4" || preset == "table5" || preset == "table6" ||
             preset == "table7") {
    base = {{"design", "ex62"},
            {"N", "100,200,300"},
            {"T", "200,300,400"},
            {"scenario", "0,1,2,3"},
            {"rank", "on"}};
  } else {
    throw ConfigError("unknown preset '" + preset + "'");
  }
  for (const auto& [k, v] : base) keys.emplace(k, v);  // does not overwrite explicit keys
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(errc::io_error, "cannot create output directory '" + dir + "'");
}

std::string cell_file_name(const SimConfig& cfg) {
  std::ostringstream os;
  os << "replications_" << to_string(cfg.design) << "_N" << cfg.N << "_T" << cfg.T;
  if (cfg.design == Design::ex61)
    os << "_q" << cfg.q;
  else
    os << "_s" << cfg.scenario;
  os << ".csv";
  return os.str();
}

}  // namespace

int run_simulate_command(const SimulateOptions& options, std::ostream& log) {
  std::map<std::string, std::string> keys;
  try {
    keys = parse_config_file(options.config_path);
    if (auto it = keys.find("preset"); it != keys.end()) apply_preset(keys, it->second);

    const std::string design_str = keys.count("design") ? keys.at("design") : "";
    if (design_str != "ex61" && design_str != "ex62")
      throw ConfigError("config key 'design' must be ex61 or ex62");
    const Design design = design_str == "ex61" ? Design::ex61 : Design::ex62;

    if (!keys.count("N") || !keys.count("T")) throw ConfigError("config needs keys N and T");
    const std::vector<int> n_grid = parse_int_list("N", keys.at("N"));
    const std::vector<int> t_grid = parse_int_list("T", keys.at("T"));
    std::vector<int> block_grid;
    if (design == Design::ex61)
      block_grid = keys.count("q") ? parse_int_list("q", keys.at("q")) : std::vector<int>{5};
    else
      block_grid = keys.count("scenario") ? parse_int_list("scenario", keys.at("scenario"))
                                          : std::vector<int>{0, 1, 2, 3};

    int replications = 100;
    if (keys.count("replications")) {
      const auto v = parse_int(keys.at("replications"));
      if (!v || *v < 1) throw ConfigError("config key 'replications' must be a positive integer");
      replications = static_cast<int>(*v);
    }

    std::uint64_t seed = 0;
    if (options.seed) {
      seed = *options.seed;
    } else if (keys.count("seed")) {
      const auto v = parse_int(keys.at("seed"));
      if (!v || *v < 0) throw ConfigError("config key 'seed' must be a nonnegative integer");
      seed = static_cast<std::uint64_t>(*v);
    }

    int threads = 1;
    if (options.threads) {
      threads = *options.threads;
    } else if (keys.count("threads")) {
      const auto v = parse_int(keys.at("threads"));
      if (!v || *v < 1) throw ConfigError("config key 'threads' must be a positive integer");
      threads = static_cast<int>(*v);
    }

    PipelineSpec pipeline;
    pipeline.threads = threads;
    if (keys.count("estimators")) {
      pipeline.run_fpca = pipeline.run_panic = false;
      for (const std::string& e : split_list(keys.at("estimators"))) {
        if (e == "fpca")
          pipeline.run_fpca = true;
        else if (e == "panic")
          pipeline.run_panic = true;
        else
          throw ConfigError("config key 'estimators': unknown estimator '" + e + "'");
      }
      if (!pipeline.run_fpca && !pipeline.run_panic)
        throw ConfigError("config key 'estimators': need at least one estimator");
    }
    pipeline.coint_rank = design == Design::ex62;
    if (keys.count("rank")) {
      const std::string& r = keys.at("rank");
      if (r == "on")
        pipeline.coint_rank = true;
      else if (r == "off")
        pipeline.coint_rank = false;
      else
        throw ConfigError("config key 'rank' must be on or off");
    }
    if (pipeline.coint_rank && !pipeline.run_panic)
      throw ConfigError("rank selection needs the panic estimator");
    if (keys.count("fit_q") && keys.at("fit_q") != "true") {
      const auto v = parse_int(keys.at("fit_q"));
      if (!v || *v < 0) throw ConfigError("config key 'fit_q' must be 'true' or an integer");
      pipeline.fixed_q = static_cast<int>(*v);
    }

    std::string out_dir = options.out_dir.value_or(
        keys.count("out_dir") ? keys.at("out_dir") : std::string("."));
    ensure_out_dir(out_dir);

    // Each grid cell owns an RNG substream of the master seed.
    std::vector<ReplicationReport> reports;
    std::uint64_t cell_index = 0;
    for (int block : block_grid) {
      for (int n : n_grid) {
        for (int t : t_grid) {
          SimConfig cfg;
          cfg.design = design;
          cfg.N = n;
          cfg.T = t;
          if (design == Design::ex61)
            cfg.q = block;
          else
            cfg.scenario = block;
          cfg.replications = replications;
          cfg.seed = CounterRng::substream(seed, cell_index++).key();
          log << "cell " << cell_file_name(cfg) << " ..." << std::endl;
          ReplicationReport report = run_replications(cfg, pipeline);
          write_replications_csv((fs::path(out_dir) / cell_file_name(cfg)).string(), report);
          reports.push_back(std::move(report));
        }
      }
    }
    write_summary_csv((fs::path(out_dir) / "summary.csv").string(), reports);
    write_summary_markdown((fs::path(out_dir) / "summary.md").string(), reports);

    long long ok = 0, total = 0;
    for (const ReplicationReport& r : reports) {
      const ReplicationSummary s = r.summarize();
      ok += s.n_ok;
      total += s.n_total;
      for (const ReplicationResult& row : r.rows)
        if (!row.ok) log << "replication " << row.rep << " failed: " << row.error << "\n";
    }
    log << "completed " << ok << "/" << total << " replications across " << reports.size()
        << " cells\n";
    return ok * 10 >= total * 9 ? 0 : 1;
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
}

namespace {

void write_fit_outputs(const std::string& out_dir, const FactorFit& fit,
                       const std::vector<long long>& labels, const CurvePanel& panel,
                       const RankDecision* q_decision, const RankDecision* rank_decision) {
  // Trend periods: levels fits cover every period, difference fits start at
  // the second one.
  const Matrix& trend_values = fit.mode == FitMode::levels ? fit.factors : fit.trends;
  const std::vector<long long> trend_labels(
      labels.end() - trend_values.rows(), labels.end());

  CsvTable eig;
  eig.header = {"rank", "eigenvalue"};
  for (Eigen::Index i = 0; i < fit.eigenvalues.size(); ++i)
    eig.rows.push_back({std::to_string(i + 1), format_double(fit.eigenvalues[i])});
  write_csv((fs::path(out_dir) / "eigenvalues.csv").string(), eig);
  write_scree_svg((fs::path(out_dir) / "scree.svg").string(), fit.eigenvalues);

  CsvTable trends;
  trends.header = {"period_index"};
  for (int k = 1; k <= fit.q; ++k) trends.header.push_back("trend_" + std::to_string(k));
  for (Eigen::Index t = 0; t < trend_values.rows(); ++t) {
    std::vector<std::string> row = {std::to_string(trend_labels[static_cast<std::size_t>(t)])};
    for (int k = 0; k < fit.q; ++k) row.push_back(format_double(trend_values(t, k)));
    trends.rows.push_back(std::move(row));
  }
  write_csv((fs::path(out_dir) / "trends.csv").string(), trends);
  if (fit.q >= 1)
    write_trends_svg((fs::path(out_dir) / "trends.svg").string(), trend_values, trend_labels);

  CsvTable loadings;
  loadings.header = {"series_id", "component"};
  int max_dim = 0;
  for (const VectorCurve& l : fit.loadings)
    max_dim = std::max(max_dim, static_cast<int>(l.coefs.cols()));
  for (int j = 1; j <= max_dim; ++j) loadings.header.push_back("c" + std::to_string(j));
  for (int i = 0; i < static_cast<int>(fit.loadings.size()); ++i) {
    const VectorCurve& l = fit.loadings[static_cast<std::size_t>(i)];
    for (int k = 0; k < fit.q; ++k) {
      std::vector<std::string> row = {panel.series(i).id, std::to_string(k + 1)};
      for (Eigen::Index j = 0; j < l.coefs.cols(); ++j)
        row.push_back(format_double(l.coefs(k, j)));
      loadings.rows.push_back(std::move(row));
    }
  }
  write_csv((fs::path(out_dir) / "loadings.csv").string(), loadings);

  auto decision_table = [](const RankDecision& d) {
    CsvTable t;
    t.header = {"method", "penalty", "candidate", "criterion", "chosen"};
    for (const auto& [j, value] : d.criterion_path) {
      const int selected = d.method == SelectionMethod::bic || d.method == SelectionMethod::hq
                               ? d.chosen
                               : d.chosen + 1;
      t.rows.push_back({to_string(d.method), format_double(d.penalty_value), std::to_string(j),
                        format_double(value), j == selected ? "1" : "0"});
    }
    return t;
  };
  if (q_decision)
    write_csv((fs::path(out_dir) / "selection.csv").string(), decision_table(*q_decision));
  if (rank_decision)
    write_csv((fs::path(out_dir) / "rank.csv").string(), decision_table(*rank_decision));
}

}  // namespace

int run_fit_command(const FitOptions& options, std::ostream& log) {
  try {
    if (options.mode != "fpca" && options.mode != "panic") {
      log << "error: mode must be fpca or panic\n";
      return 2;
    }
    if (options.rank_criterion != "bic" && options.rank_criterion != "hq") {
      log << "error: rank-criterion must be bic or hq\n";
      return 2;
    }
    std::optional<int> fixed_q;
    if (options.q != "auto") {
      const auto v = parse_int(options.q);
      if (!v || *v < 0) {
        log << "error: q must be 'auto' or a nonnegative integer\n";
        return 2;
      }
      fixed_q = static_cast<int>(*v);
    }

    IngestOptions ingest;
    ingest.basis_dimension = options.basis_dimension;
    ingest.min_observations = options.min_observations;
    IngestReport ingest_report;
    const CurvePanel panel = read_panel_csv(options.input_path, ingest, &ingest_report);
    for (const IngestNote& note : ingest_report.notes)
      log << "warning: series " << note.series
          << (note.period != 0 ? " period " + std::to_string(note.period) : "") << ": "
          << note.message << "\n";

    const int N = panel.n_series();
    const int T = panel.n_periods();
    const bool levels = options.mode == "fpca";
    const int S = levels ? T : T - 1;

    // One eigenanalysis pass (q = 0) drives selection; the final fit reuses
    // the panel at the chosen q.
    const FactorFit probe = levels ? fit_fpca(panel, 0) : fit_panic(panel, 0);
    const int q_max = default_q_max(N, S);
    const RankDecision q_decision =
        levels ? select_q_levels(selection_eigenvalues(probe), N, T, q_max)
               : select_q_diff(selection_eigenvalues(probe), N, T, q_max);
    const int q = fixed_q.value_or(q_decision.chosen);
    if (q > std::min(N, S)) {
      log << "error: q = " << q << " exceeds min(N, S) = " << std::min(N, S) << "\n";
      return 2;
    }
    const FactorFit fit = levels ? fit_fpca(panel, q) : fit_panic(panel, q);
    log << "fitted " << options.mode << " with q = " << q << " (criterion suggests "
        << q_decision.chosen << ") on N = " << N << ", T = " << T << "\n";

    std::optional<RankDecision> rank_decision;
    if (!levels && q >= 1) {
      rank_decision = select_coint_rank(
          fit.factors, lagged_trends(fit.trends), T,
          options.rank_criterion == "bic" ? SelectionMethod::bic : SelectionMethod::hq);
      log << "cointegrating rank (" << options.rank_criterion << "): " << rank_decision->chosen
          << "\n";
    }

    ensure_out_dir(options.out_dir);
    std::vector<long long> labels = ingest_report.period_labels;
    if (labels.empty())
      for (int t = 1; t <= T; ++t) labels.push_back(t);
    write_fit_outputs(options.out_dir, fit, labels, panel, &q_decision,
                      rank_decision ? &*rank_decision : nullptr);
    return 0;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
}

namespace {

struct NamedColumns {
  std::vector<long long> periods;
  std::vector<std::string> names;
  Matrix values;
};

NamedColumns read_period_table(const std::string& path) {
  const CsvTable table = read_csv(path);
  require(table.header.size() >= 2, errc::io_error,
          "'" + path + "' needs a period column and at least one value column");
  NamedColumns out;
  out.names.assign(table.header.begin() + 1, table.header.end());
  out.values.resize(static_cast<Eigen::Index>(table.rows.size()),
                    static_cast<Eigen::Index>(out.names.size()));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    require(row.size() == table.header.size(), errc::io_error,
            "'" + path + "': row " + std::to_string(r + 2) + " has the wrong width");
    const auto p = parse_int(row[0]);
    require(p.has_value(), errc::io_error,
            "'" + path + "': row " + std::to_string(r + 2) + " has a bad period");
    out.periods.push_back(*p);
    for (std::size_t c = 1; c < row.size(); ++c) {
      const auto v = parse_double(row[c]);
      require(v.has_value() && !std::isnan(*v), errc::io_error,
              "'" + path + "': row " + std::to_string(r + 2) + " has a bad value");
      out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c - 1)) = *v;
    }
  }
  require(out.periods.size() >= 3, errc::io_error, "'" + path + "' has too few rows");
  for (std::size_t r = 1; r < out.periods.size(); ++r)
    require(out.periods[r] > out.periods[r - 1], errc::io_error,
            "'" + path + "': period column must be strictly increasing");
  return out;
}

}  // namespace

int run_regress_command(const RegressOptions& options, std::ostream& log) {
  try {
    const NamedColumns trends = read_period_table(options.trends_path);
    const NamedColumns factors = read_period_table(options.factors_path);
    if (trends.periods != factors.periods) {
      log << "error: period columns of the trend and factor files do not match\n";
      return 2;
    }

    Matrix y_block, x_block;
    if (options.difference_trends) {
      const Eigen::Index rows = trends.values.rows() - 1;
      y_block = trends.values.bottomRows(rows) - trends.values.topRows(rows);
      x_block = factors.values.bottomRows(rows);
    } else {
      y_block = trends.values;
      x_block = factors.values;
    }

    CsvTable coef_table;
    coef_table.header = {"trend", "term", "estimate", "std_error"};
    CsvTable stat_table;
    stat_table.header = {"trend", "r_squared", "f_statistic", "f_pvalue", "n_obs"};
    std::vector<OlsSummary> fits;
    for (Eigen::Index k = 0; k < y_block.cols(); ++k) {
      const OlsSummary s = ols(y_block.col(k), x_block, true);
      fits.push_back(s);
      const std::string trend_name = trends.names[static_cast<std::size_t>(k)];
      coef_table.rows.push_back({trend_name, "intercept", format_double(s.coef[0]),
                                 format_double(s.se[0])});
      for (std::size_t j = 0; j < factors.names.size(); ++j)
        coef_table.rows.push_back({trend_name, factors.names[j],
                                   format_double(s.coef[static_cast<Eigen::Index>(j) + 1]),
                                   format_double(s.se[static_cast<Eigen::Index>(j) + 1])});
      stat_table.rows.push_back({trend_name, format_double(s.r2),
                                 s.f_stat ? format_double(*s.f_stat) : "",
                                 s.f_pvalue ? format_double(*s.f_pvalue) : "",
                                 std::to_string(s.n_obs)});
    }

    ensure_out_dir(options.out_dir);
    write_csv((fs::path(options.out_dir) / "regression.csv").string(), coef_table);
    write_csv((fs::path(options.out_dir) / "regression_stats.csv").string(), stat_table);

    std::ostringstream md;
    md << "# Trend-increment regression\n\n|  |";
    for (const std::string& n : trends.names) md << " " << n << " |";
    md << "\n|---|";
    for (std::size_t i = 0; i < trends.names.size(); ++i) md << "---|";
    md << "\n";
    auto emit = [&](const std::string& label, auto getter) {
      md << "| " << label << " |";
      for (const OlsSummary& s : fits) md << " " << getter(s) << " |";
      md << "\n";
    };
    for (std::size_t j = 0; j <= factors.names.size(); ++j) {
      const std::string label = j == 0 ? "intercept" : factors.names[j - 1];
      emit(label, [&](const OlsSummary& s) {
        const auto idx = static_cast<Eigen::Index>(j);
        std::ostringstream c;
        c << format_double(s.coef[idx]) << " (" << format_double(s.se[idx]) << ")";
        return c.str();
      });
    }
    emit("R^2", [](const OlsSummary& s) { return format_double(s.r2); });
    emit("F", [](const OlsSummary& s) { return s.f_stat ? format_double(*s.f_stat) : ""; });
    emit("p-value",
         [](const OlsSummary& s) { return s.f_pvalue ? format_double(*s.f_pvalue) : ""; });
    write_text((fs::path(options.out_dir) / "regression.md").string(), md.str());

    log << "regressed " << y_block.cols() << " trend increment series on "
        << factors.names.size() << " factors\n";
    return 0;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace curvetrends
