#ifndef FOEVAL_REPORT_HPP
#define FOEVAL_REPORT_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "foeval/evaluate.hpp"

namespace foeval {

/// Outcome counts for one estimator. correct + subharmonic + other always
/// equals the number of evaluated frames.
struct RateRow {
  std::string estimator;
  std::uint64_t correct = 0;
  std::uint64_t subharmonic = 0;
  std::uint64_t other = 0;

  std::uint64_t total() const { return correct + subharmonic + other; }
};

/// 3x3 outcome counts, baseline label (row) x comparison label (column),
/// ordered correct / subharmonic / other. Row sums equal the baseline's
/// category counts.
struct ContingencyTable {
  std::string comparison;
  std::array<std::array<std::uint64_t, 3>, 3> counts{};
};

struct HistogramOptions {
  double shr_lo_db = -40.0;
  double shr_hi_db = 0.0;
  double shr_bin_db = 2.5;
  double mhat_lo = 0.5;
  double mhat_hi = 12.0;
  int mhat_bins_per_octave = 6;
};

/// Conditional SHR histogram over the frames where the baseline registered a
/// subharmonic error, partitioned by each other estimator's label. Bins are
/// left-closed [lo, lo+width); out-of-range values clamp to the end bins.
struct ShrHistogram {
  double lo_db = -40.0;
  double bin_db = 2.5;
  std::size_t n_bins = 16;
  struct Part {
    std::string estimator;
    std::vector<std::array<std::uint64_t, 3>> counts;  // [bin][label]
  };
  std::vector<Part> parts;
  std::vector<std::uint64_t> total;  // per bin, irrespective of estimator

  double bin_lo(std::size_t i) const { return lo_db + bin_db * i; }
};

/// Histogram of the period elongation factor per estimator, log-spaced bins
/// (left-closed) over [lo, hi] plus a separate unvoiced count.
struct MhatHistogram {
  std::vector<double> edges;  // n_bins + 1 ascending edges
  struct Part {
    std::string estimator;
    std::vector<std::uint64_t> counts;
    std::uint64_t unvoiced = 0;
  };
  std::vector<Part> parts;
};

struct Report {
  std::string baseline;
  std::uint64_t total_frames = 0;
  std::vector<RateRow> rates;                 // sorted by estimator name
  std::vector<ContingencyTable> contingency;  // non-baseline, sorted
  ShrHistogram shr;
  MhatHistogram mhat;
};

std::vector<RateRow> rates_report(const std::vector<FrameRecord>& records);

/// Throws InvalidInput when `baseline` never appears in the records.
std::vector<ContingencyTable> contingency_table(
    const std::vector<FrameRecord>& records, const std::string& baseline);

ShrHistogram shr_histogram(const std::vector<FrameRecord>& records,
                           const std::string& baseline,
                           const HistogramOptions& opts = {});

MhatHistogram mhat_histogram(const std::vector<FrameRecord>& records,
                             const HistogramOptions& opts = {});

Report build_report(const std::vector<FrameRecord>& records,
                    const std::string& baseline,
                    const HistogramOptions& opts = {});

/// Human-readable tables.
void write_report_text(std::ostream& out, const Report& report);

/// Machine-readable forms. CSV schemas are fixed; see README.
void write_rates_csv(std::ostream& out, const Report& report);
void write_contingency_csv(std::ostream& out, const Report& report);
void write_shr_histogram_csv(std::ostream& out, const Report& report);
void write_mhat_histogram_csv(std::ostream& out, const Report& report);
void write_report_json(std::ostream& out, const Report& report);

/// Writes report.txt, rates.csv, contingency.csv, shr_histogram.csv,
/// mhat_histogram.csv and report.json into `dir`.
void write_report_files(const std::string& dir, const Report& report);

}  // namespace foeval

#endif  // FOEVAL_REPORT_HPP
