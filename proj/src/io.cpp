#include "curvetrends/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "curvetrends/rng.hpp"

namespace curvetrends {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_u64(std::uint64_t v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_double(const std::string& token) {
  if (token.empty()) return std::nullopt;
  if (token == "nan" || token == "NaN" || token == "NA") return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
  return value;
}

std::optional<long long> parse_int(const std::string& token) {
  if (token.empty()) return std::nullopt;
  long long value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
  return value;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell.push_back(c);
    }
  }
  out.push_back(cell);
  return out;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::io_error, "cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  require(!first, errc::io_error, "'" + path + "' is empty");
  return table;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), errc::io_error, "cannot write '" + path + "'");
  out << content;
  require(out.good(), errc::io_error, "write failed for '" + path + "'");
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::string buf;
  auto append_row = [&buf](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) buf.push_back(',');
      buf += row[i];
    }
    buf.push_back('\n');
  };
  append_row(table.header);
  for (const auto& row : table.rows) append_row(row);
  write_text(path, buf);
}

namespace {

struct RawObservation {
  double grid = 0.0;
  double value = 0.0;  // NaN marks a gap
};

CurvePanel ingest_raw(const CsvTable& table, const IngestOptions& options,
                      IngestReport* report) {
  // series -> period -> observations; std::map keeps deterministic order by id.
  std::map<std::string, std::map<long long, std::vector<RawObservation>>> groups;
  std::vector<long long> bad_lines;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const long long line_no = static_cast<long long>(r) + 2;  // 1-based, after header
    if (row.size() != 4) {
      bad_lines.push_back(line_no);
      continue;
    }
    const auto period = parse_int(row[1]);
    const auto grid = parse_double(row[2]);
    auto value = parse_double(row[3]);
    if (row[3].empty()) value = std::numeric_limits<double>::quiet_NaN();
    if (row[0].empty() || !period || !grid || !value || std::isnan(*grid)) {
      bad_lines.push_back(line_no);
      continue;
    }
    groups[row[0]][*period].push_back({*grid, *value});
  }
  if (!bad_lines.empty()) {
    std::string msg = "malformed rows at lines";
    for (long long l : bad_lines) msg += " " + std::to_string(l);
    fail(errc::io_error, msg);
  }
  require(!groups.empty(), errc::io_error, "no data rows");

  // Shared time axis: sorted union of period indices.
  std::set<long long> period_set;
  for (const auto& [id, periods] : groups)
    for (const auto& [p, obs] : periods) period_set.insert(p);
  const std::vector<long long> period_labels(period_set.begin(), period_set.end());
  const int T = static_cast<int>(period_labels.size());
  require(T >= 2, errc::io_error, "need at least two periods");

  std::vector<Series> series;
  for (auto& [id, periods] : groups) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& [p, obs] : periods)
      for (const RawObservation& o : obs) {
        lo = std::min(lo, o.grid);
        hi = std::max(hi, o.grid);
      }
    if (!(lo < hi)) {
      if (report)
        report->notes.push_back({id, 0, "series dropped: degenerate grid"});
      continue;
    }
    const BasisSpec basis = fourier_basis(options.basis_dimension, lo, hi);

    Series s;
    s.id = id;
    s.basis = basis;
    s.coef = Matrix::Zero(basis.dimension, T);
    s.avail.assign(static_cast<std::size_t>(T), 0);
    for (int t = 0; t < T; ++t) {
      auto it = periods.find(period_labels[static_cast<std::size_t>(t)]);
      if (it == periods.end()) continue;
      auto& obs = it->second;
      std::sort(obs.begin(), obs.end(),
                [](const RawObservation& a, const RawObservation& b) { return a.grid < b.grid; });
      Vector grid(obs.size()), values(obs.size());
      int observed = 0;
      for (std::size_t m = 0; m < obs.size(); ++m) {
        grid[static_cast<Eigen::Index>(m)] = obs[m].grid;
        values[static_cast<Eigen::Index>(m)] = obs[m].value;
        if (!std::isnan(obs[m].value)) ++observed;
      }
      const long long label = period_labels[static_cast<std::size_t>(t)];
      if (observed < options.min_observations) {
        if (report)
          report->notes.push_back({id, label, "period dropped: only " +
                                                  std::to_string(observed) + " observations"});
        continue;
      }
      if (static_cast<int>(obs.size()) < basis.dimension) {
        if (report)
          report->notes.push_back(
              {id, label, "period dropped: fewer grid points than basis dimension"});
        continue;
      }
      try {
        const Vector filled = observed == static_cast<int>(obs.size())
                                  ? values
                                  : interpolate_gaps(grid, values);
        s.coef.col(t) = smooth_to_basis(grid, filled, basis).coef;
        s.avail[static_cast<std::size_t>(t)] = 1;
      } catch (const Error& e) {
        if (report) report->notes.push_back({id, label, std::string("period dropped: ") + e.what()});
      }
    }
    if (std::count(s.avail.begin(), s.avail.end(), char(1)) == 0) {
      if (report) report->notes.push_back({id, 0, "series dropped: no usable periods"});
      continue;
    }
    series.push_back(std::move(s));
  }
  require(!series.empty(), errc::io_error, "no usable series after ingestion");
  if (report) {
    report->period_labels = period_labels;
    report->raw_layout = true;
  }
  return CurvePanel(std::move(series));
}

CurvePanel ingest_coef(const CsvTable& table, IngestReport* report) {
  const int J = static_cast<int>(table.header.size()) - 2;
  require(J >= 1, errc::io_error, "coefficient layout needs at least one c column");
  const BasisSpec basis = fourier_basis(J, 0.0, 1.0);

  std::map<std::string, std::map<long long, Vector>> groups;
  std::vector<long long> bad_lines;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const long long line_no = static_cast<long long>(r) + 2;
    if (static_cast<int>(row.size()) != J + 2 || row[0].empty()) {
      bad_lines.push_back(line_no);
      continue;
    }
    const auto period = parse_int(row[1]);
    if (!period) {
      bad_lines.push_back(line_no);
      continue;
    }
    Vector coef(J);
    bool ok = true;
    for (int j = 0; j < J; ++j) {
      const auto v = parse_double(row[static_cast<std::size_t>(j) + 2]);
      if (!v || std::isnan(*v)) {
        ok = false;
        break;
      }
      coef[j] = *v;
    }
    if (!ok) {
      bad_lines.push_back(line_no);
      continue;
    }
    groups[row[0]][*period] = std::move(coef);
  }
  if (!bad_lines.empty()) {
    std::string msg = "malformed rows at lines";
    for (long long l : bad_lines) msg += " " + std::to_string(l);
    fail(errc::io_error, msg);
  }
  require(!groups.empty(), errc::io_error, "no data rows");

  std::set<long long> period_set;
  for (const auto& [id, periods] : groups)
    for (const auto& [p, c] : periods) period_set.insert(p);
  const std::vector<long long> period_labels(period_set.begin(), period_set.end());
  const int T = static_cast<int>(period_labels.size());
  require(T >= 2, errc::io_error, "need at least two periods");

  std::vector<Series> series;
  for (auto& [id, periods] : groups) {
    Series s;
    s.id = id;
    s.basis = basis;
    s.coef = Matrix::Zero(J, T);
    s.avail.assign(static_cast<std::size_t>(T), 0);
    for (int t = 0; t < T; ++t) {
      auto it = periods.find(period_labels[static_cast<std::size_t>(t)]);
      if (it == periods.end()) continue;
      s.coef.col(t) = it->second;
      s.avail[static_cast<std::size_t>(t)] = 1;
    }
    series.push_back(std::move(s));
  }
  if (report) {
    report->period_labels = period_labels;
    report->raw_layout = false;
  }
  return CurvePanel(std::move(series));
}

}  // namespace

CurvePanel read_panel_csv(const std::string& path, const IngestOptions& options,
                          IngestReport* report) {
  const CsvTable table = read_csv(path);
  require(table.header.size() >= 3, errc::io_error, "unrecognized panel header in '" + path + "'");
  require(table.header[0] == "series_id" && table.header[1] == "period_index", errc::io_error,
          "unrecognized panel header in '" + path + "'");
  if (table.header.size() == 4 && table.header[2] == "grid_point" && table.header[3] == "value")
    return ingest_raw(table, options, report);
  for (std::size_t j = 2; j < table.header.size(); ++j)
    require(table.header[j] == "c" + std::to_string(j - 1), errc::io_error,
            "unrecognized panel header in '" + path + "'");
  return ingest_coef(table, report);
}

void write_panel_coef_csv(const std::string& path, const CurvePanel& panel) {
  const int J = panel.series(0).basis.dimension;
  for (const Series& s : panel.all_series())
    require(s.basis.dimension == J, errc::invalid_argument,
            "write_panel_coef_csv: series have different basis dimensions");
  CsvTable table;
  table.header = {"series_id", "period_index"};
  for (int j = 1; j <= J; ++j) table.header.push_back("c" + std::to_string(j));
  for (const Series& s : panel.all_series()) {
    for (int t = 0; t < panel.n_periods(); ++t) {
      if (!s.avail[static_cast<std::size_t>(t)]) continue;
      std::vector<std::string> row = {s.id, std::to_string(t + 1)};
      for (int j = 0; j < J; ++j) row.push_back(format_double(s.coef(j, t)));
      table.rows.push_back(std::move(row));
    }
  }
  write_csv(path, table);
}

void write_panel_raw_csv(const std::string& path, const CurvePanel& panel, int grid_points) {
  require(grid_points >= 2, errc::invalid_argument, "write_panel_raw_csv: need >= 2 grid points");
  CsvTable table;
  table.header = {"series_id", "period_index", "grid_point", "value"};
  for (const Series& s : panel.all_series()) {
    // Endpoints included so ingestion recovers the same basis domain.
    Vector grid(grid_points);
    for (int m = 0; m < grid_points; ++m)
      grid[m] = s.basis.lo +
                static_cast<double>(m) / (grid_points - 1) * (s.basis.hi - s.basis.lo);
    const Matrix design = s.basis.design(grid);
    for (int t = 0; t < panel.n_periods(); ++t) {
      if (!s.avail[static_cast<std::size_t>(t)]) continue;
      const Vector values = design * s.coef.col(t);
      for (int m = 0; m < grid_points; ++m)
        table.rows.push_back({s.id, std::to_string(t + 1), format_double(grid[m]),
                              format_double(values[m])});
    }
  }
  write_csv(path, table);
}

namespace {

std::string cell_or_empty(double v) { return std::isnan(v) ? std::string() : format_double(v); }
std::string cell_or_empty(int v) { return v < 0 ? std::string() : std::to_string(v); }

void append_mean_sd(CsvTable& table, const MeanSd& m, std::vector<std::string>& row) {
  (void)table;
  row.push_back(m.n > 0 ? format_double(m.mean) : std::string());
  row.push_back(m.n > 0 ? format_double(m.sd) : std::string());
}

void append_confusion(std::vector<std::string>& row, const ConfusionCounts& c) {
  const int total = c.under + c.correct + c.over;
  if (total == 0) {
    row.insert(row.end(), {"", "", ""});
  } else {
    row.push_back(std::to_string(c.under));
    row.push_back(std::to_string(c.correct));
    row.push_back(std::to_string(c.over));
  }
}

}  // namespace

void write_replications_csv(const std::string& path, const ReplicationReport& report) {
  CsvTable table;
  table.header = {"rep",        "seed",        "ok",          "error",
                  "ae_g_fpca",  "ae_xi_fpca",  "ae_lambda_fpca",
                  "ae_g_panic", "ae_xi_panic", "ae_lambda_panic",
                  "q_levels",   "q_diff",      "rank_bic",    "rank_hq"};
  for (const ReplicationResult& r : report.rows) {
    std::vector<std::string> row;
    row.push_back(std::to_string(r.rep));
    row.push_back(format_u64(r.seed));
    row.push_back(r.ok ? "1" : "0");
    row.push_back(r.error);
    row.push_back(cell_or_empty(r.ae_g_fpca));
    row.push_back(cell_or_empty(r.ae_xi_fpca));
    row.push_back(cell_or_empty(r.ae_lambda_fpca));
    row.push_back(cell_or_empty(r.ae_g_panic));
    row.push_back(cell_or_empty(r.ae_xi_panic));
    row.push_back(cell_or_empty(r.ae_lambda_panic));
    row.push_back(cell_or_empty(r.q_levels));
    row.push_back(cell_or_empty(r.q_diff));
    row.push_back(cell_or_empty(r.rank_bic));
    row.push_back(cell_or_empty(r.rank_hq));
    table.rows.push_back(std::move(row));
  }
  write_csv(path, table);
}

void write_summary_csv(const std::string& path, const std::vector<ReplicationReport>& reports) {
  CsvTable table;
  table.header = {"design", "N", "T", "q", "scenario", "replications", "ok", "seed", "rng"};
  const char* metrics[] = {"log_ae_g_fpca",  "log_ae_xi_fpca",  "log_ae_lambda_fpca",
                           "log_ae_g_panic", "log_ae_xi_panic", "log_ae_lambda_panic"};
  for (const char* m : metrics) {
    table.header.push_back(std::string("mean_") + m);
    table.header.push_back(std::string("sd_") + m);
  }
  const char* selectors[] = {"q_levels", "q_diff", "rank_bic", "rank_hq"};
  for (const char* s : selectors) {
    table.header.push_back(std::string(s) + "_under");
    table.header.push_back(std::string(s) + "_correct");
    table.header.push_back(std::string(s) + "_over");
  }

  for (const ReplicationReport& rep : reports) {
    const ReplicationSummary s = rep.summarize();
    std::vector<std::string> row = {
        to_string(rep.config.design),
        std::to_string(rep.config.N),
        std::to_string(rep.config.T),
        rep.config.design == Design::ex61 ? std::to_string(rep.config.q) : "4",
        rep.config.design == Design::ex62 ? std::to_string(rep.config.scenario) : "",
        std::to_string(rep.config.replications),
        std::to_string(s.n_ok),
        format_u64(rep.config.seed),
        CounterRng::algorithm()};
    append_mean_sd(table, s.log_ae_g_fpca, row);
    append_mean_sd(table, s.log_ae_xi_fpca, row);
    append_mean_sd(table, s.log_ae_lambda_fpca, row);
    append_mean_sd(table, s.log_ae_g_panic, row);
    append_mean_sd(table, s.log_ae_xi_panic, row);
    append_mean_sd(table, s.log_ae_lambda_panic, row);
    append_confusion(row, s.conf_levels);
    append_confusion(row, s.conf_diff);
    append_confusion(row, s.conf_bic);
    append_confusion(row, s.conf_hq);
    table.rows.push_back(std::move(row));
  }
  write_csv(path, table);
}

namespace {

std::string fmt3(double v) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s.setf(std::ios::fixed);
  s.precision(3);
  s << v;
  return s.str();
}

struct CellKey {
  int N, T, block;  // block = q (ex61) or scenario (ex62)
  bool operator<(const CellKey& o) const {
    if (block != o.block) return block < o.block;
    if (N != o.N) return N < o.N;
    return T < o.T;
  }
};

void markdown_metric_table(std::ostream& os, const std::vector<ReplicationReport>& reports,
                           Design design, const char* block_label,
                           MeanSd ReplicationSummary::*field, const char* title) {
  std::map<CellKey, MeanSd> cells;
  std::set<int> ts;
  for (const ReplicationReport& r : reports) {
    if (r.config.design != design) continue;
    const ReplicationSummary s = r.summarize();
    const MeanSd m = s.*field;
    if (m.n == 0) continue;
    const int block = design == Design::ex61 ? r.config.q : r.config.scenario;
    cells[{r.config.N, r.config.T, block}] = m;
    ts.insert(r.config.T);
  }
  if (cells.empty()) return;
  os << "\n### " << title << "\n\n";
  os << "| N | " << block_label << " |";
  for (int t : ts) os << " T=" << t << " |";
  os << "\n|---|---|";
  for (std::size_t i = 0; i < ts.size(); ++i) os << "---|";
  os << "\n";
  std::set<std::pair<int, int>> row_keys;  // (block, N)
  for (const auto& [key, m] : cells) row_keys.insert({key.block, key.N});
  for (const auto& [block, n] : row_keys) {
    os << "| " << n << " | " << block << " |";
    for (int t : ts) {
      auto it = cells.find({n, t, block});
      if (it == cells.end())
        os << " |";
      else
        os << " " << fmt3(it->second.mean) << " (" << fmt3(it->second.sd) << ") |";
    }
    os << "\n";
  }
}

void markdown_confusion_table(std::ostream& os, const std::vector<ReplicationReport>& reports,
                              Design design, const char* block_label,
                              ConfusionCounts ReplicationSummary::*field, const char* title) {
  std::map<CellKey, ConfusionCounts> cells;
  std::set<int> ns;
  for (const ReplicationReport& r : reports) {
    if (r.config.design != design) continue;
    const ReplicationSummary s = r.summarize();
    const ConfusionCounts c = s.*field;
    if (c.under + c.correct + c.over == 0) continue;
    const int block = design == Design::ex61 ? r.config.q : r.config.scenario;
    cells[{r.config.N, r.config.T, block}] = c;
    ns.insert(r.config.N);
  }
  if (cells.empty()) return;
  os << "\n### " << title << "\n\nEntries are [under] correct (over).\n\n";
  os << "| T | " << block_label << " |";
  for (int n : ns) os << " N=" << n << " |";
  os << "\n|---|---|";
  for (std::size_t i = 0; i < ns.size(); ++i) os << "---|";
  os << "\n";
  std::set<std::pair<int, int>> row_keys;  // (block, T)
  for (const auto& [key, c] : cells) row_keys.insert({key.block, key.T});
  for (const auto& [block, t] : row_keys) {
    os << "| " << t << " | " << block << " |";
    for (int n : ns) {
      auto it = cells.find({n, t, block});
      if (it == cells.end())
        os << " |";
      else
        os << " [" << it->second.under << "] " << it->second.correct << " ("
           << it->second.over << ") |";
    }
    os << "\n";
  }
}

}  // namespace

void write_summary_markdown(const std::string& path,
                            const std::vector<ReplicationReport>& reports) {
  std::ostringstream os;
  os << "# Simulation summary\n\n";
  if (!reports.empty())
    os << "rng: " << CounterRng::algorithm() << ", master seed "
       << format_u64(reports.front().config.seed) << ", replications per cell "
       << reports.front().config.replications << "\n";

  markdown_metric_table(os, reports, Design::ex61, "q", &ReplicationSummary::log_ae_g_fpca,
                        "log AE of trends, levels PCA (full-rank design)");
  markdown_metric_table(os, reports, Design::ex61, "q", &ReplicationSummary::log_ae_g_panic,
                        "log AE of trends, PANIC (full-rank design)");
  markdown_metric_table(os, reports, Design::ex61, "q", &ReplicationSummary::log_ae_lambda_fpca,
                        "log AE of loadings, levels PCA (full-rank design)");
  markdown_metric_table(os, reports, Design::ex61, "q", &ReplicationSummary::log_ae_lambda_panic,
                        "log AE of loadings, PANIC (full-rank design)");
  markdown_confusion_table(os, reports, Design::ex61, "q", &ReplicationSummary::conf_levels,
                           "Trend-count selection, levels criterion (full-rank design)");
  markdown_confusion_table(os, reports, Design::ex61, "q", &ReplicationSummary::conf_diff,
                           "Trend-count selection, difference criterion (full-rank design)");

  markdown_metric_table(os, reports, Design::ex62, "rank", &ReplicationSummary::log_ae_g_fpca,
                        "log AE of trends, levels PCA (cointegrated design)");
  markdown_metric_table(os, reports, Design::ex62, "rank", &ReplicationSummary::log_ae_g_panic,
                        "log AE of trends, PANIC (cointegrated design)");
  markdown_metric_table(os, reports, Design::ex62, "rank", &ReplicationSummary::log_ae_xi_fpca,
                        "log AE of increments, levels PCA (cointegrated design)");
  markdown_metric_table(os, reports, Design::ex62, "rank", &ReplicationSummary::log_ae_xi_panic,
                        "log AE of increments, PANIC (cointegrated design)");
  markdown_metric_table(os, reports, Design::ex62, "rank",
                        &ReplicationSummary::log_ae_lambda_fpca,
                        "log AE of loadings, levels PCA (cointegrated design)");
  markdown_metric_table(os, reports, Design::ex62, "rank",
                        &ReplicationSummary::log_ae_lambda_panic,
                        "log AE of loadings, PANIC (cointegrated design)");
  markdown_confusion_table(os, reports, Design::ex62, "rank", &ReplicationSummary::conf_bic,
                           "Cointegrating-rank selection, BIC (cointegrated design)");
  markdown_confusion_table(os, reports, Design::ex62, "rank", &ReplicationSummary::conf_hq,
                           "Cointegrating-rank selection, HQ (cointegrated design)");
  write_text(path, os.str());
}

void write_scree_svg(const std::string& path, const Vector& eigenvalues, int max_bars) {
  const int n = static_cast<int>(std::min<Eigen::Index>(eigenvalues.size(), max_bars));
  require(n >= 1, errc::invalid_argument, "write_scree_svg: no eigenvalues");
  const double width = 640.0, height = 360.0, margin = 40.0;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int i = 0; i < n; ++i) {
    const double v = std::max(eigenvalues[i], 1e-300);
    lo = std::min(lo, std::log10(v));
    hi = std::max(hi, std::log10(v));
  }
  if (hi - lo < 1e-9) hi = lo + 1.0;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << margin << "\" y=\"20\" font-size=\"13\">eigenvalues (log10 scale)</text>\n";
  const double plot_w = width - 2 * margin, plot_h = height - 2 * margin;
  const double bar_w = plot_w / n;
  for (int i = 0; i < n; ++i) {
    const double v = std::log10(std::max(eigenvalues[i], 1e-300));
    const double frac = (v - lo) / (hi - lo);
    const double h = std::max(1.0, frac * plot_h);
    os << "<rect x=\"" << format_double(margin + i * bar_w + 1) << "\" y=\""
       << format_double(height - margin - h) << "\" width=\"" << format_double(bar_w - 2)
       << "\" height=\"" << format_double(h) << "\" fill=\"#4878a8\"/>\n";
  }
  os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
     << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  os << "</svg>\n";
  write_text(path, os.str());
}

void write_trends_svg(const std::string& path, const Matrix& trends,
                      const std::vector<long long>& period_labels) {
  require(trends.rows() >= 2 && trends.cols() >= 1, errc::invalid_argument,
          "write_trends_svg: need at least two periods and one trend");
  const double width = 720.0, height = 400.0, margin = 42.0;
  const double lo = trends.minCoeff(), hi = trends.maxCoeff();
  const double span = hi - lo < 1e-12 ? 1.0 : hi - lo;
  static const char* palette[] = {"#a83232", "#32508c", "#2e7d46", "#9a7d0a",
                                  "#6b3fa0", "#20818c", "#aa5517", "#555555"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << margin << "\" y=\"20\" font-size=\"13\">estimated stochastic trends</text>\n";
  const double plot_w = width - 2 * margin, plot_h = height - 2 * margin;
  for (Eigen::Index k = 0; k < trends.cols(); ++k) {
    os << "<path fill=\"none\" stroke=\"" << palette[k % 8] << "\" stroke-width=\"1.5\" d=\"";
    for (Eigen::Index t = 0; t < trends.rows(); ++t) {
      const double x = margin + plot_w * static_cast<double>(t) / (trends.rows() - 1);
      const double y = height - margin - plot_h * (trends(t, k) - lo) / span;
      os << (t == 0 ? 'M' : 'L') << format_double(x) << ' ' << format_double(y);
    }
    os << "\"/>\n";
  }
  if (!period_labels.empty()) {
    os << "<text x=\"" << margin << "\" y=\"" << height - 8 << "\" font-size=\"11\">"
       << period_labels.front() << "</text>\n";
    os << "<text x=\"" << width - margin - 30 << "\" y=\"" << height - 8
       << "\" font-size=\"11\">" << period_labels.back() << "</text>\n";
  }
  os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
     << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  os << "</svg>\n";
  write_text(path, os.str());
}

}  // namespace curvetrends
