#include "foeval/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>

#include <nlohmann/json.hpp>

#include "foeval/error.hpp"
#include "foeval/shr.hpp"

namespace foeval {

namespace {

int label_index(const QoeLabel& label) {
  switch (label.kind) {
    case LabelKind::correct:
      return 0;
    case LabelKind::subharmonic_error:
      return 1;
    case LabelKind::other_error:
      return 2;
  }
  return 2;
}

constexpr const char* kLabelNames[3] = {"correct", "subharmonic", "other"};

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::vector<std::string> sorted_estimators(
    const std::vector<FrameRecord>& records) {
  std::map<std::string, bool> names;
  for (const FrameRecord& record : records) {
    for (const auto& [name, outcome] : record.outcomes) names[name] = true;
  }
  std::vector<std::string> out;
  out.reserve(names.size());
  for (const auto& [name, seen] : names) out.push_back(name);
  return out;
}

}  // namespace

std::vector<RateRow> rates_report(const std::vector<FrameRecord>& records) {
  std::map<std::string, RateRow> rows;
  for (const std::string& name : sorted_estimators(records)) {
    rows[name].estimator = name;
  }
  for (const FrameRecord& record : records) {
    for (const auto& [name, outcome] : record.outcomes) {
      RateRow& row = rows[name];
      switch (label_index(outcome.label)) {
        case 0: ++row.correct; break;
        case 1: ++row.subharmonic; break;
        default: ++row.other; break;
      }
    }
  }
  std::vector<RateRow> out;
  out.reserve(rows.size());
  for (auto& [name, row] : rows) out.push_back(std::move(row));
  return out;
}

std::vector<ContingencyTable> contingency_table(
    const std::vector<FrameRecord>& records, const std::string& baseline) {
  const std::vector<std::string> names = sorted_estimators(records);
  if (std::find(names.begin(), names.end(), baseline) == names.end()) {
    throw InvalidInput("contingency: baseline '" + baseline +
                       "' not present in the records");
  }

  std::vector<ContingencyTable> tables;
  for (const std::string& name : names) {
    if (name == baseline) continue;
    tables.push_back({name, {}});
  }
  for (const FrameRecord& record : records) {
    const auto base = record.outcomes.find(baseline);
    if (base == record.outcomes.end()) continue;
    const int row = label_index(base->second.label);
    for (ContingencyTable& table : tables) {
      const auto other = record.outcomes.find(table.comparison);
      if (other == record.outcomes.end()) continue;
      ++table.counts[static_cast<std::size_t>(row)][static_cast<std::size_t>(
          label_index(other->second.label))];
    }
  }
  return tables;
}

ShrHistogram shr_histogram(const std::vector<FrameRecord>& records,
                           const std::string& baseline,
                           const HistogramOptions& opts) {
  if (!(opts.shr_bin_db > 0.0 && opts.shr_hi_db > opts.shr_lo_db)) {
    throw InvalidInput("shr histogram: bad bin configuration");
  }
  ShrHistogram hist;
  hist.lo_db = opts.shr_lo_db;
  hist.bin_db = opts.shr_bin_db;
  hist.n_bins = static_cast<std::size_t>(
      std::lround((opts.shr_hi_db - opts.shr_lo_db) / opts.shr_bin_db));
  hist.total.assign(hist.n_bins, 0);

  for (const std::string& name : sorted_estimators(records)) {
    if (name == baseline) continue;
    hist.parts.push_back({name, {}});
    hist.parts.back().counts.assign(hist.n_bins, {0, 0, 0});
  }

  for (const FrameRecord& record : records) {
    const auto base = record.outcomes.find(baseline);
    if (base == record.outcomes.end() || !record.shr_db) continue;
    if (base->second.label.kind != LabelKind::subharmonic_error) continue;

    // Left-closed bins; out-of-range values clamp to the end bins.
    const double db = std::max(*record.shr_db, kShrReportFloorDb);
    long bin = static_cast<long>(std::floor((db - hist.lo_db) / hist.bin_db));
    bin = std::clamp(bin, 0L, static_cast<long>(hist.n_bins) - 1);
    ++hist.total[static_cast<std::size_t>(bin)];
    for (auto& part : hist.parts) {
      const auto other = record.outcomes.find(part.estimator);
      if (other == record.outcomes.end()) continue;
      ++part.counts[static_cast<std::size_t>(bin)][static_cast<std::size_t>(
          label_index(other->second.label))];
    }
  }
  return hist;
}

MhatHistogram mhat_histogram(const std::vector<FrameRecord>& records,
                             const HistogramOptions& opts) {
  if (!(opts.mhat_lo > 0.0 && opts.mhat_hi > opts.mhat_lo &&
        opts.mhat_bins_per_octave >= 1)) {
    throw InvalidInput("mhat histogram: bad bin configuration");
  }
  const double octaves = std::log2(opts.mhat_hi / opts.mhat_lo);
  const std::size_t n_bins = static_cast<std::size_t>(
      std::ceil(octaves * opts.mhat_bins_per_octave - 1e-9));

  MhatHistogram hist;
  hist.edges.resize(n_bins + 1);
  for (std::size_t i = 0; i <= n_bins; ++i) {
    hist.edges[i] =
        opts.mhat_lo *
        std::pow(2.0, static_cast<double>(i) / opts.mhat_bins_per_octave);
  }

  for (const std::string& name : sorted_estimators(records)) {
    hist.parts.push_back({name, std::vector<std::uint64_t>(n_bins, 0), 0});
  }
  for (const FrameRecord& record : records) {
    for (auto& part : hist.parts) {
      const auto it = record.outcomes.find(part.estimator);
      if (it == record.outcomes.end()) continue;
      const EstimatorOutcome& outcome = it->second;
      if (!(outcome.fo_hat_hz > 0.0)) {
        ++part.unvoiced;
        continue;
      }
      // Left-closed log-spaced bins, clamped at both ends.
      const double pos = std::log2(outcome.m_hat / opts.mhat_lo) *
                         opts.mhat_bins_per_octave;
      long bin = static_cast<long>(std::floor(pos));
      bin = std::clamp(bin, 0L, static_cast<long>(n_bins) - 1);
      ++part.counts[static_cast<std::size_t>(bin)];
    }
  }
  return hist;
}

Report build_report(const std::vector<FrameRecord>& records,
                    const std::string& baseline,
                    const HistogramOptions& opts) {
  Report report;
  report.baseline = baseline;
  report.total_frames = records.size();
  report.rates = rates_report(records);
  if (!records.empty()) {
    report.contingency = contingency_table(records, baseline);
    report.shr = shr_histogram(records, baseline, opts);
  } else {
    report.shr.n_bins = 0;
  }
  report.mhat = mhat_histogram(records, opts);
  return report;
}

void write_report_text(std::ostream& out, const Report& report) {
  out << "Evaluated frames: " << report.total_frames << "\n\n";

  out << "Quality-of-estimate rates (baseline: " << report.baseline << ")\n";
  out << "  estimator        correct  subharm    other  correct%  subharm%  "
         "other%\n";
  for (const RateRow& row : report.rates) {
    const double total = row.total() > 0 ? static_cast<double>(row.total()) : 1.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "  %-15s %8llu %8llu %8llu   %6.2f%%   %6.2f%%  %6.2f%%\n",
                  row.estimator.c_str(),
                  static_cast<unsigned long long>(row.correct),
                  static_cast<unsigned long long>(row.subharmonic),
                  static_cast<unsigned long long>(row.other),
                  100.0 * row.correct / total, 100.0 * row.subharmonic / total,
                  100.0 * row.other / total);
    out << buf;
  }
  out << '\n';

  for (const ContingencyTable& table : report.contingency) {
    out << "Contingency (" << report.baseline << " rows vs " << table.comparison
        << " columns)\n";
    out << "                   correct  subharm    other\n";
    for (int row = 0; row < 3; ++row) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "  %-15s %8llu %8llu %8llu\n",
                    kLabelNames[row],
                    static_cast<unsigned long long>(table.counts[row][0]),
                    static_cast<unsigned long long>(table.counts[row][1]),
                    static_cast<unsigned long long>(table.counts[row][2]));
      out << buf;
    }
    out << '\n';
  }

  out << "SHR histogram over " << report.baseline
      << " subharmonic errors (dB bins, left-closed)\n";
  for (const auto& part : report.shr.parts) {
    out << "  vs " << part.estimator << ": bin_lo correct subharm other\n";
    for (std::size_t b = 0; b < report.shr.n_bins; ++b) {
      const auto& c = part.counts[b];
      if (c[0] + c[1] + c[2] == 0) continue;
      char buf[160];
      std::snprintf(buf, sizeof buf, "    %6.1f %7llu %7llu %7llu\n",
                    report.shr.bin_lo(b),
                    static_cast<unsigned long long>(c[0]),
                    static_cast<unsigned long long>(c[1]),
                    static_cast<unsigned long long>(c[2]));
      out << buf;
    }
  }
  out << '\n';

  out << "Period elongation factor histogram (log-spaced bins)\n";
  for (const auto& part : report.mhat.parts) {
    out << "  " << part.estimator << ": bin_lo count (unvoiced "
        << part.unvoiced << ")\n";
    for (std::size_t b = 0; b + 1 < report.mhat.edges.size(); ++b) {
      if (part.counts[b] == 0) continue;
      char buf[96];
      std::snprintf(buf, sizeof buf, "    %8.4f %7llu\n",
                    report.mhat.edges[b],
                    static_cast<unsigned long long>(part.counts[b]));
      out << buf;
    }
  }
}

void write_rates_csv(std::ostream& out, const Report& report) {
  out << "estimator,total,correct,subharmonic,other,correct_rate,"
         "subharmonic_rate,other_rate\n";
  for (const RateRow& row : report.rates) {
    const double total = row.total() > 0 ? static_cast<double>(row.total()) : 1.0;
    out << row.estimator << ',' << row.total() << ',' << row.correct << ','
        << row.subharmonic << ',' << row.other << ','
        << fixed(row.correct / total) << ',' << fixed(row.subharmonic / total)
        << ',' << fixed(row.other / total) << '\n';
  }
}

void write_contingency_csv(std::ostream& out, const Report& report) {
  out << "baseline,comparison,baseline_label,correct,subharmonic,other\n";
  for (const ContingencyTable& table : report.contingency) {
    for (int row = 0; row < 3; ++row) {
      out << report.baseline << ',' << table.comparison << ','
          << kLabelNames[row] << ',' << table.counts[row][0] << ','
          << table.counts[row][1] << ',' << table.counts[row][2] << '\n';
    }
  }
}

void write_shr_histogram_csv(std::ostream& out, const Report& report) {
  out << "estimator,bin_lo_db,bin_hi_db,correct,subharmonic,other\n";
  for (const auto& part : report.shr.parts) {
    for (std::size_t b = 0; b < report.shr.n_bins; ++b) {
      out << part.estimator << ',' << fixed(report.shr.bin_lo(b), 2) << ','
          << fixed(report.shr.bin_lo(b) + report.shr.bin_db, 2) << ','
          << part.counts[b][0] << ',' << part.counts[b][1] << ','
          << part.counts[b][2] << '\n';
    }
  }
}

void write_mhat_histogram_csv(std::ostream& out, const Report& report) {
  out << "estimator,bin_lo,bin_hi,count\n";
  for (const auto& part : report.mhat.parts) {
    for (std::size_t b = 0; b + 1 < report.mhat.edges.size(); ++b) {
      out << part.estimator << ',' << fixed(report.mhat.edges[b], 6) << ','
          << fixed(report.mhat.edges[b + 1], 6) << ',' << part.counts[b]
          << '\n';
    }
    out << part.estimator << ",,," << part.unvoiced << '\n';
  }
}

void write_report_json(std::ostream& out, const Report& report) {
  nlohmann::ordered_json j;
  j["baseline"] = report.baseline;
  j["total_frames"] = report.total_frames;

  auto& rates = j["rates"];
  rates = nlohmann::ordered_json::array();
  for (const RateRow& row : report.rates) {
    const double total = row.total() > 0 ? static_cast<double>(row.total()) : 1.0;
    rates.push_back({{"estimator", row.estimator},
                     {"correct", row.correct},
                     {"subharmonic", row.subharmonic},
                     {"other", row.other},
                     {"correct_rate", row.correct / total},
                     {"subharmonic_rate", row.subharmonic / total},
                     {"other_rate", row.other / total}});
  }

  auto& tables = j["contingency"];
  tables = nlohmann::ordered_json::array();
  for (const ContingencyTable& table : report.contingency) {
    tables.push_back({{"comparison", table.comparison},
                      {"counts", table.counts}});
  }

  auto& shr = j["shr_histogram"];
  shr["lo_db"] = report.shr.lo_db;
  shr["bin_db"] = report.shr.bin_db;
  shr["n_bins"] = report.shr.n_bins;
  shr["total"] = report.shr.total;
  shr["parts"] = nlohmann::ordered_json::array();
  for (const auto& part : report.shr.parts) {
    shr["parts"].push_back(
        {{"estimator", part.estimator}, {"counts", part.counts}});
  }

  auto& mhat = j["mhat_histogram"];
  mhat["edges"] = report.mhat.edges;
  mhat["parts"] = nlohmann::ordered_json::array();
  for (const auto& part : report.mhat.parts) {
    mhat["parts"].push_back({{"estimator", part.estimator},
                             {"counts", part.counts},
                             {"unvoiced", part.unvoiced}});
  }

  out << j.dump(2) << '\n';
}

void write_report_files(const std::string& dir, const Report& report) {
  std::filesystem::create_directories(dir);
  const auto open = [&](const char* name) {
    std::ofstream file(std::filesystem::path(dir) / name, std::ios::trunc);
    if (!file) throw Error(std::string("report: cannot write ") + name);
    return file;
  };
  {
    auto f = open("report.txt");
    write_report_text(f, report);
  }
  {
    auto f = open("rates.csv");
    write_rates_csv(f, report);
  }
  {
    auto f = open("contingency.csv");
    write_contingency_csv(f, report);
  }
  {
    auto f = open("shr_histogram.csv");
    write_shr_histogram_csv(f, report);
  }
  {
    auto f = open("mhat_histogram.csv");
    write_mhat_histogram_csv(f, report);
  }
  {
    auto f = open("report.json");
    write_report_json(f, report);
  }
}

}  // namespace foeval
