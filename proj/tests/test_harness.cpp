#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "foeval/acf.hpp"
#include "foeval/annotations.hpp"
#include "foeval/error.hpp"
#include "foeval/evaluate.hpp"
#include "foeval/report.hpp"
#include "foeval/settings.hpp"
#include "foeval/synth.hpp"
#include "foeval/wav.hpp"

using namespace foeval;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "foeval_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  REQUIRE(file);
  std::ostringstream out;
  out << file.rdbuf();
  return out.str();
}

EstimateTrack constant_track(const std::string& name, std::size_t frames,
                             double fo, const FrameSpec& spec = {}) {
  EstimateTrack track;
  track.estimator = name;
  for (std::size_t f = 0; f < frames; ++f) {
    track.times_s.push_back(spec.center_time(f));
    track.fo_hz.push_back(fo);
  }
  return track;
}

FrameRecord make_record(const std::string& recording, std::size_t index,
                        double fo_star,
                        std::initializer_list<std::pair<std::string, QoeLabel>>
                            labels,
                        std::optional<double> shr = std::nullopt) {
  FrameRecord record;
  record.recording = recording;
  record.frame_index = index;
  record.time_s = 0.025 + 0.05 * static_cast<double>(index);
  record.fo_star_hz = fo_star;
  for (const auto& [name, label] : labels) {
    EstimatorOutcome outcome;
    outcome.label = label;
    outcome.fo_hat_hz = label.kind == LabelKind::other_error &&
                                label.other == OtherKind::unvoiced
                            ? 0.0
                            : fo_star / std::max(label.m, 1);
    if (outcome.fo_hat_hz > 0.0) {
      outcome.m_hat = fo_star / outcome.fo_hat_hz;
    }
    record.outcomes.emplace(name, outcome);
  }
  record.shr_db = shr;
  return record;
}

}  // namespace

TEST_CASE("wav round trip for both encodings") {
  SynthSpec spec;
  spec.fo_hz = 200.0;
  spec.duration_s = 0.1;
  const Waveform wave = synthesize(spec).wave;

  const fs::path f32 = scratch_dir() / "roundtrip_f32.wav";
  write_wav(f32.string(), wave, WavFormat::float32);
  const Waveform read_f32 = read_wav(f32.string());
  CHECK(read_f32.rate == wave.rate);
  REQUIRE(read_f32.samples.size() == wave.samples.size());
  for (std::size_t i = 0; i < wave.samples.size(); ++i) {
    CHECK(read_f32.samples[i] ==
          static_cast<double>(static_cast<float>(wave.samples[i])));
  }

  const fs::path p16 = scratch_dir() / "roundtrip_p16.wav";
  write_wav(p16.string(), wave, WavFormat::pcm16);
  const Waveform read_p16 = read_wav(p16.string());
  REQUIRE(read_p16.samples.size() == wave.samples.size());
  for (std::size_t i = 0; i < wave.samples.size(); ++i) {
    CHECK(std::abs(read_p16.samples[i] - wave.samples[i]) <= 1.0 / 32768.0);
  }
}

TEST_CASE("pcm16 normalization maps -32768 to exactly -1") {
  Waveform wave;
  wave.rate = 8000;
  wave.samples = {-1.0, 1.0, 0.0};
  const fs::path path = scratch_dir() / "norm.wav";
  write_wav(path.string(), wave, WavFormat::pcm16);
  const Waveform read = read_wav(path.string());
  REQUIRE(read.samples.size() == 3);
  CHECK(read.samples[0] == -1.0);
  CHECK(read.samples[1] == doctest::Approx(32767.0 / 32768.0));
  CHECK(read.samples[2] == 0.0);
}

TEST_CASE("wav reader names the offending chunk") {
  const fs::path dir = scratch_dir();

  const fs::path not_riff = dir / "notriff.wav";
  std::ofstream(not_riff, std::ios::binary) << "JUNKJUNKJUNKJUNK";
  CHECK_THROWS_WITH_AS(read_wav(not_riff.string()),
                       doctest::Contains("RIFF"), ParseError);

  // A valid file truncated inside the data chunk.
  Waveform wave;
  wave.rate = 8000;
  wave.samples.assign(400, 0.0);
  const fs::path whole = dir / "whole.wav";
  write_wav(whole.string(), wave, WavFormat::pcm16);
  std::string bytes = slurp(whole);
  bytes.resize(bytes.size() - 100);
  const fs::path cut = dir / "truncated.wav";
  std::ofstream(cut, std::ios::binary) << bytes;
  CHECK_THROWS_WITH_AS(read_wav(cut.string()),
                       doctest::Contains("truncated 'data'"), ParseError);

  // Stereo rejected.
  std::string stereo = slurp(whole);
  stereo[22] = 2;  // channel count, fmt chunk
  const fs::path multi = dir / "stereo.wav";
  std::ofstream(multi, std::ios::binary) << stereo;
  CHECK_THROWS_WITH_AS(read_wav(multi.string()), doctest::Contains("mono"),
                       ParseError);
}

TEST_CASE("annotation csv round trips and validates") {
  const fs::path dir = scratch_dir();
  const fs::path path = dir / "truth.csv";

  SynthSpec spec;
  spec.fo_hz = 200.0;
  const TruthTrack truth = synthesize(spec).truth;
  REQUIRE(truth.frames.size() == 20);

  TruthSet set;
  set["rec0"] = truth;
  write_annotations(path.string(), set);
  const TruthSet read = read_annotations(path.string());
  REQUIRE(read.count("rec0") == 1);
  CHECK(read.at("rec0").frames.size() == 20);
  CHECK(read.at("rec0").frames[3].fo_hz == doctest::Approx(200.0));

  const auto write_text = [&](const char* name, const std::string& body) {
    const fs::path p = dir / name;
    std::ofstream(p) << body;
    return p;
  };

  const auto bad_voiced = write_text(
      "bad_voiced.csv",
      "recording,frame_index,time_s,fo_star_hz,voiced\nrec0,0,0.025,,1\n");
  CHECK_THROWS_WITH_AS(read_annotations(bad_voiced.string()),
                       doctest::Contains("voiced row"), ParseError);

  const auto dup = write_text(
      "dup.csv",
      "recording,frame_index,time_s,fo_star_hz,voiced\n"
      "rec0,0,0.025,200,1\nrec0,0,0.075,200,1\n");
  CHECK_THROWS_WITH_AS(read_annotations(dup.string()),
                       doctest::Contains("duplicate"), ParseError);

  const auto backwards = write_text(
      "backwards.csv",
      "recording,frame_index,time_s,fo_star_hz,voiced\n"
      "rec0,0,0.075,200,1\nrec0,1,0.025,200,1\n");
  CHECK_THROWS_WITH_AS(read_annotations(backwards.string()),
                       doctest::Contains("non-monotonic"), ParseError);
}

TEST_CASE("track selection picks the nearest sample, earlier on ties") {
  // Exactly representable 10-ms-style grid (scaled by 1024 so the midpoint
  // tie is exact in floating point).
  EstimateTrack track;
  track.estimator = "ext";
  for (int i = 0; i < 11; ++i) {
    track.times_s.push_back(0.25 * i);
    track.fo_hz.push_back(100.0 + i);
  }
  // A center sitting exactly between samples 2 and 3 takes the earlier one.
  CHECK(pick_at(track, 0.625) == doctest::Approx(102.0));
  CHECK(pick_at(track, 0.8) == doctest::Approx(103.0));
  CHECK(pick_at(track, -1.0) == doctest::Approx(100.0));
  CHECK(pick_at(track, 9.0) == doctest::Approx(110.0));

  // Samples exactly on frame centers select themselves.
  const FrameSpec spec;
  EstimateTrack centered = constant_track("c", 5, 0.0);
  for (std::size_t f = 0; f < 5; ++f) centered.fo_hz[f] = 200.0 + f;
  for (std::size_t f = 0; f < 5; ++f) {
    CHECK(pick_at(centered, spec.center_time(f)) ==
          doctest::Approx(200.0 + f));
  }
}

TEST_CASE("track csv io") {
  const fs::path dir = scratch_dir();
  EstimateTrack track = constant_track("acf", 4, 123.456);
  const fs::path path = dir / "track.csv";
  write_track(path.string(), track);
  const EstimateTrack read = read_track(path.string(), "acf");
  REQUIRE(read.size() == 4);
  CHECK(read.fo_hz[0] == doctest::Approx(123.456));

  const fs::path empty = dir / "empty.csv";
  std::ofstream(empty) << "";
  CHECK_THROWS_AS(read_track(empty.string(), "x"), ParseError);

  const fs::path header_only = dir / "header_only.csv";
  std::ofstream(header_only) << "time_s,fo_hz\n";
  CHECK_THROWS_AS(read_track(header_only.string(), "x"), ParseError);
}

TEST_CASE("evaluate labels a clean recording correct with no SHR") {
  SynthSpec spec;
  spec.fo_hz = 200.0;
  const SynthResult synth = synthesize(spec);

  RecordingInput input;
  input.id = "clean";
  input.wave = synth.wave;
  input.truth = synth.truth;
  input.tracks.push_back(estimate(synth.wave, {}, {}, false));

  const EvalResult result = evaluate({input}, {});
  CHECK(result.errors.empty());
  REQUIRE(result.records.size() == 20);
  for (const FrameRecord& record : result.records) {
    CHECK(record.outcomes.at("acf").label == QoeLabel::correct());
    CHECK_FALSE(record.shr_db.has_value());
  }
}

TEST_CASE("evaluate flags injected half-frequency tracks as subharmonic") {
  SynthSpec spec;
  spec.fo_hz = 200.0;
  spec.subh_period = 2;
  spec.am_extent = 0.4;
  const SynthResult synth = synthesize(spec);

  RecordingInput input;
  input.id = "halved";
  input.wave = synth.wave;
  input.truth = synth.truth;
  input.tracks.push_back(constant_track("half", 20, 100.0));
  input.tracks.push_back(constant_track("zero", 20, 0.0));

  EvalConfig cfg;
  cfg.baseline = "half";
  const EvalResult result = evaluate({input}, cfg);
  CHECK(result.errors.empty());
  REQUIRE(result.records.size() == 20);
  for (const FrameRecord& record : result.records) {
    CHECK(record.outcomes.at("half").label == QoeLabel::subharmonic(2));
    CHECK(record.outcomes.at("zero").label == QoeLabel::unvoiced());
    REQUIRE(record.shr_db.has_value());
    CHECK(*record.shr_db > -20.0);  // strong subharmonics on these frames
    CHECK(record.outcomes.at("half").m_hat == doctest::Approx(2.0));
  }
}

TEST_CASE("evaluate skips a recording with missing coverage and continues") {
  SynthSpec spec;
  spec.fo_hz = 200.0;
  const SynthResult synth = synthesize(spec);

  RecordingInput good;
  good.id = "good";
  good.wave = synth.wave;
  good.truth = synth.truth;
  good.tracks.push_back(constant_track("acf", 20, 200.0));

  RecordingInput bad = good;
  bad.id = "bad";
  bad.tracks[0].times_s.resize(3);  // covers only the first 3 frames
  bad.tracks[0].fo_hz.resize(3);

  const EvalResult result = evaluate({bad, good}, {});
  REQUIRE(result.errors.size() == 1);
  CHECK(result.errors[0].find("bad") != std::string::npos);
  CHECK(result.records.size() == 20);
  for (const FrameRecord& record : result.records) {
    CHECK(record.recording == "good");
  }
}

TEST_CASE("evaluate drops truth-unvoiced frames") {
  SynthSpec spec;
  spec.fo_hz = 200.0;
  SynthResult synth = synthesize(spec);
  synth.truth.frames[5].voiced = false;
  synth.truth.frames[5].fo_hz = 0.0;

  RecordingInput input;
  input.id = "gap";
  input.wave = synth.wave;
  input.truth = synth.truth;
  input.tracks.push_back(constant_track("acf", 20, 200.0));

  const EvalResult result = evaluate({input}, {});
  CHECK(result.records.size() == 19);
  for (const FrameRecord& record : result.records) {
    CHECK(record.frame_index != 5);
  }
}

TEST_CASE("evaluation output is identical across worker counts") {
  MixedCorpusSpec corpus_spec;
  corpus_spec.n_recordings = 6;
  corpus_spec.frames_per_recording = 8;
  corpus_spec.seed = 11;
  const auto corpus = make_mixed_corpus(corpus_spec);

  std::vector<RecordingInput> inputs;
  for (const CorpusEntry& entry : corpus) {
    RecordingInput input;
    input.id = entry.id;
    input.wave = entry.wave;
    input.truth = entry.truth;
    input.tracks.push_back(estimate(entry.wave, {}, {}, false));
    input.tracks.push_back(estimate(entry.wave, {}, {}, true));
    inputs.push_back(std::move(input));
  }

  EvalConfig cfg;
  cfg.workers = 1;
  const EvalResult serial = evaluate(inputs, cfg);
  cfg.workers = 4;
  const EvalResult parallel = evaluate(inputs, cfg);

  const fs::path dir = scratch_dir();
  write_records((dir / "serial.csv").string(), serial.records);
  write_records((dir / "parallel.csv").string(), parallel.records);
  CHECK(slurp(dir / "serial.csv") == slurp(dir / "parallel.csv"));

  // CSV round trip rebuilds the same report.
  const auto reread = read_records((dir / "serial.csv").string());
  REQUIRE(reread.size() == serial.records.size());
  const Report a = build_report(serial.records, "acf", {});
  const Report b = build_report(reread, "acf", {});
  std::ostringstream sa, sb;
  write_report_text(sa, a);
  write_report_text(sb, b);
  CHECK(sa.str() == sb.str());
}

TEST_CASE("rates report counts and fractions") {
  std::vector<FrameRecord> records;
  for (int i = 0; i < 7; ++i) {
    records.push_back(
        make_record("r", i, 200.0, {{"acf", QoeLabel::correct()}}));
  }
  records.push_back(
      make_record("r", 7, 200.0, {{"acf", QoeLabel::subharmonic(2)}}));
  records.push_back(
      make_record("r", 8, 200.0, {{"acf", QoeLabel::subharmonic(3)}}));
  records.push_back(
      make_record("r", 9, 200.0, {{"acf", QoeLabel::off_interval()}}));

  const auto rates = rates_report(records);
  REQUIRE(rates.size() == 1);
  CHECK(rates[0].estimator == "acf");
  CHECK(rates[0].correct == 7);
  CHECK(rates[0].subharmonic == 2);
  CHECK(rates[0].other == 1);
  CHECK(rates[0].total() == 10);

  const auto empty_rates = rates_report({});
  CHECK(empty_rates.empty());
  const Report empty_report = build_report({}, "acf", {});
  std::ostringstream text;
  write_report_text(text, empty_report);  // no division by zero
  CHECK(text.str().find("Evaluated frames: 0") != std::string::npos);
}

TEST_CASE("contingency tables stay diagonal for identical estimators") {
  std::vector<FrameRecord> records;
  const QoeLabel labels[3] = {QoeLabel::correct(), QoeLabel::subharmonic(2),
                              QoeLabel::off_interval()};
  int counts[3] = {5, 3, 2};
  std::size_t index = 0;
  for (int kind = 0; kind < 3; ++kind) {
    for (int i = 0; i < counts[kind]; ++i) {
      records.push_back(make_record(
          "r", index++, 200.0,
          {{"acf", labels[kind]}, {"mirror", labels[kind]}}));
    }
  }
  const auto tables = contingency_table(records, "acf");
  REQUIRE(tables.size() == 1);
  CHECK(tables[0].comparison == "mirror");
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      CHECK(tables[0].counts[row][col] ==
            (row == col ? static_cast<std::uint64_t>(counts[row]) : 0));
    }
  }

  // One off-diagonal swap moves exactly one count.
  records.push_back(make_record(
      "r", index++, 200.0,
      {{"acf", QoeLabel::subharmonic(2)}, {"mirror", QoeLabel::correct()}}));
  const auto swapped = contingency_table(records, "acf");
  CHECK(swapped[0].counts[1][0] == 1);

  // Row sums equal the baseline marginals.
  const auto rates = rates_report(records);
  const auto acf_row =
      std::find_if(rates.begin(), rates.end(),
                   [](const RateRow& r) { return r.estimator == "acf"; });
  REQUIRE(acf_row != rates.end());
  const std::uint64_t row_sums[3] = {
      swapped[0].counts[0][0] + swapped[0].counts[0][1] + swapped[0].counts[0][2],
      swapped[0].counts[1][0] + swapped[0].counts[1][1] + swapped[0].counts[1][2],
      swapped[0].counts[2][0] + swapped[0].counts[2][1] + swapped[0].counts[2][2]};
  CHECK(row_sums[0] == acf_row->correct);
  CHECK(row_sums[1] == acf_row->subharmonic);
  CHECK(row_sums[2] == acf_row->other);

  CHECK_THROWS_AS(contingency_table(records, "nope"), InvalidInput);
}

TEST_CASE("shr histogram bins are left-closed with clamping") {
  std::vector<FrameRecord> records;
  records.push_back(make_record("r", 0, 200.0,
                                {{"acf", QoeLabel::subharmonic(2)},
                                 {"other", QoeLabel::correct()}},
                                -10.0));
  records.push_back(make_record("r", 1, 200.0,
                                {{"acf", QoeLabel::subharmonic(2)},
                                 {"other", QoeLabel::subharmonic(2)}},
                                -60.0));
  records.push_back(make_record("r", 2, 200.0,
                                {{"acf", QoeLabel::correct()},
                                 {"other", QoeLabel::correct()}}));

  const ShrHistogram hist = shr_histogram(records, "acf", {});
  REQUIRE(hist.parts.size() == 1);
  REQUIRE(hist.n_bins == 16);

  // -10.0 dB belongs to [-10, -7.5), which starts at bin index 12.
  CHECK(hist.parts[0].counts[12][0] == 1);
  // -60 dB clamps into the lowest bin.
  CHECK(hist.parts[0].counts[0][1] == 1);
  std::uint64_t total = 0;
  for (std::size_t b = 0; b < hist.n_bins; ++b) total += hist.total[b];
  CHECK(total == 2);

  const ShrHistogram none = shr_histogram({}, "acf", {});
  for (std::uint64_t c : none.total) CHECK(c == 0);
}

TEST_CASE("mhat histogram maps elongation factors to log bins") {
  std::vector<FrameRecord> records;
  for (int i = 0; i < 4; ++i) {
    records.push_back(
        make_record("r", i, 200.0, {{"e", QoeLabel::correct()}}));
  }
  for (int i = 4; i < 7; ++i) {
    records.push_back(
        make_record("r", i, 200.0, {{"e", QoeLabel::subharmonic(3)}}));
  }
  records.push_back(make_record("r", 7, 200.0, {{"e", QoeLabel::unvoiced()}}));

  const MhatHistogram hist = mhat_histogram(records, {});
  REQUIRE(hist.parts.size() == 1);
  CHECK(hist.parts[0].unvoiced == 1);

  const auto bin_of = [&](double value) {
    for (std::size_t b = 0; b + 1 < hist.edges.size(); ++b) {
      if (value >= hist.edges[b] && value < hist.edges[b + 1]) return b;
    }
    return hist.edges.size() - 2;
  };
  CHECK(hist.parts[0].counts[bin_of(1.0)] == 4);
  CHECK(hist.parts[0].counts[bin_of(3.0)] == 3);

  std::uint64_t binned = 0;
  for (std::uint64_t c : hist.parts[0].counts) binned += c;
  CHECK(binned + hist.parts[0].unvoiced == 8);
}

TEST_CASE("settings file parsing applies and validates keys") {
  const fs::path path = scratch_dir() / "settings.cfg";
  std::ofstream(path) << "# comment\n"
                         "tracker.fo_min = 75\n"
                         "frame.length_s = 0.04\n"
                         "report.baseline = ext\n"
                         "workers = 3\n";
  Settings settings;
  apply_config_file(path.string(), settings);
  CHECK(settings.tracker.fo_min == 75.0);
  CHECK(settings.frames.length_s == 0.04);
  CHECK(settings.baseline == "ext");
  CHECK(settings.workers == 3);

  const fs::path bad = scratch_dir() / "bad.cfg";
  std::ofstream(bad) << "unknown.key = 1\n";
  CHECK_THROWS_AS(apply_config_file(bad.string(), settings), ParseError);
}
