#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvetrends/common.hpp"
#include "curvetrends/panel.hpp"
#include "curvetrends/simulate.hpp"

namespace curvetrends {

// Locale-independent shortest round-trip representation (dot decimal).
std::string format_double(double v);
std::string format_u64(std::uint64_t v);

// Strict numeric parsing; the full token must be consumed.
std::optional<double> parse_double(const std::string& token);
std::optional<long long> parse_int(const std::string& token);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path);
void write_csv(const std::string& path, const CsvTable& table);
void write_text(const std::string& path, const std::string& content);

// Panel ingestion. Two layouts, detected from the header row:
//   A (raw):  series_id,period_index,grid_point,value
//             empty or nan values mark gaps to interpolate
//   B (coef): series_id,period_index,c1,...,cJ
struct IngestOptions {
  int basis_dimension = 51;
  int min_observations = 200;  // raw periods with fewer observed points are dropped
};

struct IngestNote {
  std::string series;
  long long period = 0;
  std::string message;
};

struct IngestReport {
  std::vector<IngestNote> notes;           // dropped periods / series
  std::vector<long long> period_labels;    // panel column -> original period index
  bool raw_layout = false;
};

CurvePanel read_panel_csv(const std::string& path, const IngestOptions& options,
                          IngestReport* report = nullptr);

// Writers used for interchange and round-trip checks. The raw writer samples
// each available curve on `grid_points` midpoints of its series' domain.
void write_panel_coef_csv(const std::string& path, const CurvePanel& panel);
void write_panel_raw_csv(const std::string& path, const CurvePanel& panel, int grid_points);

// Monte Carlo report serialization.
void write_replications_csv(const std::string& path, const ReplicationReport& report);
void write_summary_csv(const std::string& path, const std::vector<ReplicationReport>& reports);
void write_summary_markdown(const std::string& path,
                            const std::vector<ReplicationReport>& reports);

// Plot emission by direct path markup, no plotting dependency.
void write_scree_svg(const std::string& path, const Vector& eigenvalues, int max_bars = 50);
void write_trends_svg(const std::string& path, const Matrix& trends,
                      const std::vector<long long>& period_labels);

}  // namespace curvetrends
