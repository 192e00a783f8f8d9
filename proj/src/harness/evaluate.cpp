#include "foeval/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <thread>

#include "csv_util.hpp"
#include "foeval/error.hpp"
#include "foeval/shr.hpp"

namespace foeval {

namespace {

struct RecordingResult {
  std::vector<FrameRecord> records;
  std::string error;  // non-empty = recording skipped
};

std::string label_to_string(const QoeLabel& label) {
  switch (label.kind) {
    case LabelKind::correct:
      return "correct";
    case LabelKind::subharmonic_error:
      return "subharmonic";
    case LabelKind::other_error:
      return label.other == OtherKind::unvoiced ? "other_unvoiced"
                                                : "other_off_interval";
  }
  return "other_off_interval";
}

QoeLabel label_from_string(std::string_view text, int m,
                           const std::string& context) {
  if (text == "correct") return QoeLabel::correct();
  if (text == "subharmonic") return QoeLabel::subharmonic(m);
  if (text == "other_unvoiced") return QoeLabel::unvoiced();
  if (text == "other_off_interval") return QoeLabel::off_interval();
  throw ParseError(context + ": unknown label '" + std::string(text) + "'");
}

RecordingResult evaluate_recording(const RecordingInput& input,
                                   const EvalConfig& cfg) {
  RecordingResult result;
  try {
    validate(input.wave);
    const std::size_t n_frames =
        cfg.frames.frame_count(input.wave.samples.size(), input.wave.rate);

    // Coverage: every track must reach the first and last voiced frame
    // center to within one hop.
    double first_center = 0.0;
    double last_center = 0.0;
    bool any_voiced = false;
    for (const TruthFrame& frame : input.truth.frames) {
      if (!frame.voiced) continue;
      const double center = cfg.frames.center_time(frame.index);
      if (!any_voiced) first_center = center;
      last_center = center;
      any_voiced = true;
    }
    if (!any_voiced) return result;  // nothing to evaluate

    for (const EstimateTrack& track : input.tracks) {
      if (track.size() == 0) {
        result.error = input.id + ": empty track for " + track.estimator;
        return result;
      }
      if (track.times_s.front() > first_center + cfg.frames.hop_s ||
          track.times_s.back() < last_center - cfg.frames.hop_s) {
        result.error =
            input.id + ": track " + track.estimator + " does not cover frames";
        return result;
      }
    }

    const EstimateTrack* baseline = nullptr;
    for (const EstimateTrack& track : input.tracks) {
      if (track.estimator == cfg.baseline) baseline = &track;
    }

    for (const TruthFrame& frame : input.truth.frames) {
      if (!frame.voiced) continue;  // truth-unvoiced frames are excluded
      if (frame.index >= n_frames) {
        result.records.clear();
        result.error = input.id + ": truth frame " +
                       std::to_string(frame.index) + " beyond the waveform";
        return result;
      }

      const auto slice = frame_slice(input.wave, cfg.frames, frame.index);
      const SpectralDensity sd =
          periodogram(slice, input.wave.rate, cfg.resolution_hz);
      const HarmonicProfile profile = harmonic_power_profile(sd, cfg.profile);
      const int m_max = std::min(
          default_m_max(frame.fo_hz, cfg.profile), cfg.m_max_cap);
      const std::vector<FoInterval> intervals =
          fo_intervals(profile, frame.fo_hz, m_max);

      FrameRecord record;
      record.recording = input.id;
      record.frame_index = frame.index;
      record.time_s = cfg.frames.center_time(frame.index);
      record.fo_star_hz = frame.fo_hz;

      for (const EstimateTrack& track : input.tracks) {
        EstimatorOutcome outcome;
        outcome.fo_hat_hz = pick_at(track, record.time_s);
        outcome.label = classify(outcome.fo_hat_hz, intervals);
        if (outcome.fo_hat_hz > 0.0) {
          const Elongation e =
              elongation_factor(frame.fo_hz, outcome.fo_hat_hz);
          outcome.m_hat = e.m_hat;
          outcome.m_rounded = e.m;
        }
        record.outcomes.emplace(track.estimator, outcome);
      }

      if (baseline != nullptr) {
        const auto& acf = record.outcomes.at(cfg.baseline);
        if (acf.label.kind == LabelKind::subharmonic_error && acf.m_rounded &&
            *acf.m_rounded >= 2) {
          record.shr_db =
              measure_shr(sd, acf.fo_hat_hz, *acf.m_rounded).db;
        }
      }
      result.records.push_back(std::move(record));
    }
  } catch (const Error& err) {
    result.records.clear();
    result.error = input.id + ": " + err.what();
  }
  return result;
}

}  // namespace

EvalResult evaluate(const std::vector<RecordingInput>& recordings,
                    const EvalConfig& cfg) {
  validate(cfg.frames);
  if (cfg.baseline.empty()) throw InvalidInput("evaluate: baseline name empty");

  // Estimator sets must agree across recordings for the contingency tables.
  std::set<std::string> names;
  for (const RecordingInput& input : recordings) {
    for (const EstimateTrack& track : input.tracks) {
      names.insert(track.estimator);
    }
  }

  std::vector<RecordingResult> results(recordings.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min<unsigned>(
      cfg.workers == 0 ? hw : cfg.workers,
      static_cast<unsigned>(std::max<std::size_t>(1, recordings.size())));

  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= recordings.size()) return;
      RecordingResult r;
      std::set<std::string> mine;
      for (const EstimateTrack& track : recordings[i].tracks) {
        mine.insert(track.estimator);
      }
      if (mine != names) {
        r.error = recordings[i].id + ": estimator set differs from the corpus";
      } else {
        r = evaluate_recording(recordings[i], cfg);
      }
      results[i] = std::move(r);
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  // Order-independent reduction: concatenate in input order.
  EvalResult out;
  for (RecordingResult& r : results) {
    if (!r.error.empty()) {
      out.errors.push_back(std::move(r.error));
    } else {
      out.records.insert(out.records.end(),
                         std::make_move_iterator(r.records.begin()),
                         std::make_move_iterator(r.records.end()));
    }
  }
  return out;
}

void write_records(const std::string& path,
                   const std::vector<FrameRecord>& records) {
  std::ofstream file(path, std::ios::trunc);
  if (!file) throw Error("records: cannot write " + path);
  file << "recording,frame_index,time_s,fo_star_hz,estimator,fo_hat_hz,label,"
          "m,m_hat,shr_db\n";
  char buf[256];
  for (const FrameRecord& record : records) {
    for (const auto& [estimator, outcome] : record.outcomes) {
      std::string m_field;
      if (outcome.label.kind == LabelKind::subharmonic_error) {
        m_field = std::to_string(outcome.label.m);
      }
      std::string m_hat_field;
      if (outcome.fo_hat_hz > 0.0) {
        std::snprintf(buf, sizeof buf, "%.6f", outcome.m_hat);
        m_hat_field = buf;
      }
      std::string shr_field;
      if (record.shr_db) {
        std::snprintf(buf, sizeof buf, "%.6f",
                      std::max(*record.shr_db, kShrReportFloorDb));
        shr_field = buf;
      }
      std::snprintf(buf, sizeof buf, "%s,%zu,%.6f,%.6f,%s,%.6f,%s",
                    record.recording.c_str(), record.frame_index,
                    record.time_s, record.fo_star_hz, estimator.c_str(),
                    outcome.fo_hat_hz,
                    label_to_string(outcome.label).c_str());
      file << buf << ',' << m_field << ',' << m_hat_field << ',' << shr_field
           << '\n';
    }
  }
}

std::vector<FrameRecord> read_records(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ParseError("records: cannot open " + path);

  std::vector<FrameRecord> records;
  std::string line;
  bool saw_header = false;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    const std::string_view row = csv::strip_cr(line);
    if (row.empty()) continue;
    if (!saw_header) {
      if (row !=
          "recording,frame_index,time_s,fo_star_hz,estimator,fo_hat_hz,label,"
          "m,m_hat,shr_db") {
        throw ParseError("records: unexpected header in " + path);
      }
      saw_header = true;
      continue;
    }
    const auto fields = csv::split(row);
    if (fields.size() != 10) {
      throw ParseError("records: expected 10 columns at line " +
                       std::to_string(line_no) + " of " + path);
    }
    const std::string recording(fields[0]);
    const std::size_t frame_index = csv::to_u64(fields[1], path);

    if (records.empty() || records.back().recording != recording ||
        records.back().frame_index != frame_index) {
      FrameRecord record;
      record.recording = recording;
      record.frame_index = frame_index;
      record.time_s = csv::to_double(fields[2], path);
      record.fo_star_hz = csv::to_double(fields[3], path);
      records.push_back(std::move(record));
    }
    FrameRecord& record = records.back();

    EstimatorOutcome outcome;
    outcome.fo_hat_hz = csv::to_double(fields[5], path);
    const int m = fields[7].empty()
                      ? 0
                      : static_cast<int>(csv::to_u64(fields[7], path));
    outcome.label = label_from_string(fields[6], m, path);
    if (!fields[8].empty()) {
      outcome.m_hat = csv::to_double(fields[8], path);
      const long rounded = std::lround(outcome.m_hat);
      if (rounded >= 1 && std::abs(outcome.m_hat - rounded) <= 0.15) {
        outcome.m_rounded = static_cast<int>(rounded);
      }
    }
    record.outcomes.emplace(std::string(fields[4]), outcome);
    if (!fields[9].empty()) {
      record.shr_db = csv::to_double(fields[9], path);
    }
  }
  if (!saw_header) throw ParseError("records: empty file " + path);
  return records;
}

}  // namespace foeval
