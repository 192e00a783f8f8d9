// Command-line front end: synth | estimate | classify | report | run.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "foeval/acf.hpp"
#include "foeval/annotations.hpp"
#include "foeval/error.hpp"
#include "foeval/evaluate.hpp"
#include "foeval/kernels.hpp"
#include "foeval/report.hpp"
#include "foeval/resample.hpp"
#include "foeval/settings.hpp"
#include "foeval/synth.hpp"
#include "foeval/wav.hpp"

namespace fs = std::filesystem;
using namespace foeval;

namespace {

struct CommonOpts {
  std::string config;
  Settings settings;

  void add_config_flag(CLI::App* cmd) {
    cmd->add_option("--config", config, "key = value settings file");
  }
  void load() {
    if (!config.empty()) apply_config_file(config, settings);
  }
};

Waveform load_audio(const std::string& path, int rate) {
  Waveform wave = read_wav(path);
  if (rate > 0 && wave.rate != rate) wave = resample(wave, rate);
  return wave;
}

int run_synth(const SynthSpec& spec, const FrameSpec& frames,
              const std::string& out_wav, const std::string& out_truth,
              const std::string& recording, bool pcm16) {
  const SynthResult result = synthesize(spec, frames);
  write_wav(out_wav, result.wave,
            pcm16 ? WavFormat::pcm16 : WavFormat::float32);
  if (!out_truth.empty()) {
    std::ofstream file(out_truth, std::ios::trunc);
    if (!file) throw Error("synth: cannot write " + out_truth);
    write_annotations(file, recording, result.truth);
  }
  std::cout << "wrote " << out_wav << " (" << result.wave.samples.size()
            << " samples @ " << result.wave.rate << " S/s)\n";
  return 0;
}

// Track file layout used by classify: <tracks_dir>/<estimator>/<recording>.csv
std::vector<EstimateTrack> discover_tracks(const fs::path& tracks_dir,
                                           const std::string& recording) {
  std::vector<EstimateTrack> tracks;
  std::vector<fs::path> estimator_dirs;
  for (const auto& entry : fs::directory_iterator(tracks_dir)) {
    if (entry.is_directory()) estimator_dirs.push_back(entry.path());
  }
  std::sort(estimator_dirs.begin(), estimator_dirs.end());
  for (const fs::path& dir : estimator_dirs) {
    const fs::path file = dir / (recording + ".csv");
    if (fs::exists(file)) {
      tracks.push_back(read_track(file.string(), dir.filename().string()));
    }
  }
  return tracks;
}

EvalConfig eval_config(const Settings& settings) {
  EvalConfig cfg;
  cfg.frames = settings.frames;
  cfg.profile = settings.profile;
  cfg.resolution_hz = settings.resolution_hz;
  cfg.baseline = settings.baseline;
  cfg.m_max_cap = settings.m_max_cap;
  cfg.workers = settings.workers;
  return cfg;
}

void print_errors(const std::vector<std::string>& errors) {
  for (const std::string& error : errors) {
    std::cerr << "warning: " << error << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fo estimator evaluation toolkit: synthetic subharmonic corpora, an "
      "autocorrelation baseline tracker, quality-of-estimate classification, "
      "SHR measurement and report generation"};
  app.require_subcommand(1);

  // --- synth ---------------------------------------------------------------
  auto* synth_cmd = app.add_subcommand(
      "synth", "generate a synthetic recording (WAV + truth CSV)");
  SynthSpec synth_spec;
  CommonOpts synth_common;
  std::string synth_wav = "synth.wav";
  std::string synth_truth = "truth.csv";
  std::string synth_id = "synth";
  bool synth_pcm16 = false;
  synth_cmd->add_option("--fo", synth_spec.fo_hz, "fundamental frequency, Hz");
  synth_cmd->add_option("--duration", synth_spec.duration_s, "seconds");
  synth_cmd->add_option("--rate", synth_spec.rate, "sample rate, S/s");
  synth_cmd->add_option("--harmonics", synth_spec.n_harmonics,
                        "-1 = fill to Nyquist, 0 = noise only");
  synth_cmd->add_option("--tilt", synth_spec.tilt_db_per_octave,
                        "spectral tilt, dB/octave");
  synth_cmd->add_option("--subh-period", synth_spec.subh_period,
                        "subharmonic period M (1 = none)");
  synth_cmd->add_option("--am", synth_spec.am_extent, "AM extent at fo/M");
  synth_cmd->add_option("--fm", synth_spec.fm_extent, "FM extent at fo/M");
  synth_cmd->add_option("--jitter", synth_spec.jitter,
                        "cycle-scale random frequency deviation");
  synth_cmd->add_option("--noise-snr", synth_spec.noise_snr_db,
                        "harmonics-to-noise ratio, dB (inf = none)");
  synth_cmd->add_option("--seed", synth_spec.seed, "RNG seed");
  synth_cmd->add_option("--out", synth_wav, "output WAV path");
  synth_cmd->add_option("--truth", synth_truth,
                        "output truth CSV path (empty = skip)");
  synth_cmd->add_option("--recording-id", synth_id, "id in the truth CSV");
  synth_cmd->add_flag("--pcm16", synth_pcm16, "write 16-bit PCM");
  synth_common.add_config_flag(synth_cmd);

  // --- estimate ------------------------------------------------------------
  auto* estimate_cmd = app.add_subcommand(
      "estimate", "run the built-in tracker on WAVs, write track CSVs");
  CommonOpts estimate_common;
  std::vector<std::string> estimate_inputs;
  std::string estimate_outdir = ".";
  std::string estimate_name;
  bool no_viterbi = false;
  int estimate_rate = 8000;
  estimate_cmd->add_option("wav", estimate_inputs, "input WAV file(s)")
      ->required();
  estimate_cmd->add_option("--out-dir", estimate_outdir, "output directory");
  estimate_cmd->add_option("--name", estimate_name,
                           "estimator name (default acf/viterbi by mode)");
  estimate_cmd->add_flag("--no-viterbi", no_viterbi,
                         "disable postprocessing (zero transition costs)");
  estimate_cmd->add_option("--rate", estimate_rate,
                           "resample input to this rate first (0 = keep)");
  estimate_cmd->add_option("--fo-min", estimate_common.settings.tracker.fo_min,
                           "lowest candidate fo, Hz");
  estimate_cmd->add_option("--fo-max", estimate_common.settings.tracker.fo_max,
                           "highest candidate fo, Hz");
  estimate_common.add_config_flag(estimate_cmd);

  // --- classify ------------------------------------------------------------
  auto* classify_cmd = app.add_subcommand(
      "classify", "label estimates against truth, write FrameRecord CSV");
  CommonOpts classify_common;
  std::string classify_truth;
  std::string classify_audio;
  std::string classify_tracks;
  std::string classify_out = "records.csv";
  int classify_rate = 8000;
  classify_cmd->add_option("--truth", classify_truth, "truth CSV")->required();
  classify_cmd
      ->add_option("--audio-dir", classify_audio,
                   "directory with <recording>.wav files")
      ->required();
  classify_cmd
      ->add_option("--tracks-dir", classify_tracks,
                   "directory with <estimator>/<recording>.csv tracks")
      ->required();
  classify_cmd->add_option("--out", classify_out, "output records CSV");
  classify_cmd->add_option("--rate", classify_rate,
                           "resample audio to this rate (0 = keep)");
  classify_cmd->add_option("--baseline", classify_common.settings.baseline,
                           "baseline estimator name");
  classify_cmd->add_option("--workers", classify_common.settings.workers,
                           "worker threads (0 = auto)");
  classify_common.add_config_flag(classify_cmd);

  // --- report --------------------------------------------------------------
  auto* report_cmd = app.add_subcommand(
      "report", "build rate/contingency/histogram reports from records");
  CommonOpts report_common;
  std::string report_records;
  std::string report_outdir = "report";
  report_cmd->add_option("--records", report_records, "FrameRecord CSV")
      ->required();
  report_cmd->add_option("--out-dir", report_outdir, "output directory");
  report_cmd->add_option("--baseline", report_common.settings.baseline,
                         "baseline estimator name");
  report_common.add_config_flag(report_cmd);

  // --- run -----------------------------------------------------------------
  auto* run_cmd = app.add_subcommand(
      "run", "end-to-end pipeline on the seeded mixed corpus");
  CommonOpts run_common;
  MixedCorpusSpec corpus_spec;
  std::string run_outdir = "run";
  bool run_write_audio = false;
  run_cmd->add_option("--recordings", corpus_spec.n_recordings,
                      "number of recordings");
  run_cmd->add_option("--frames", corpus_spec.frames_per_recording,
                      "frames per recording");
  run_cmd->add_option("--subh-fraction", corpus_spec.subharmonic_fraction,
                      "fraction of period-M frames");
  run_cmd->add_option("--am", corpus_spec.am_extent, "modulation extent");
  run_cmd->add_option("--subh-period", corpus_spec.subh_period,
                      "subharmonic period M");
  run_cmd->add_option("--fo-lo", corpus_spec.fo_lo_hz, "lowest recording fo");
  run_cmd->add_option("--fo-hi", corpus_spec.fo_hi_hz, "highest recording fo");
  run_cmd->add_option("--jitter", corpus_spec.jitter, "synthesis jitter");
  run_cmd->add_option("--noise-snr", corpus_spec.noise_snr_db,
                      "synthesis noise SNR, dB");
  run_cmd->add_option("--seed", corpus_spec.seed, "corpus seed");
  run_cmd->add_option("--out-dir", run_outdir, "output directory");
  run_cmd->add_option("--workers", run_common.settings.workers,
                      "worker threads (0 = auto)");
  run_cmd->add_flag("--write-audio", run_write_audio,
                    "also dump the corpus WAVs");
  run_common.add_config_flag(run_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth_cmd) {
      synth_common.load();
      return run_synth(synth_spec, synth_common.settings.frames, synth_wav,
                       synth_truth, synth_id, synth_pcm16);
    }

    if (*estimate_cmd) {
      estimate_common.load();
      const Settings& settings = estimate_common.settings;
      fs::create_directories(estimate_outdir);
      for (const std::string& input : estimate_inputs) {
        const Waveform wave = load_audio(input, estimate_rate);
        EstimateTrack track =
            estimate(wave, settings.frames, settings.tracker, !no_viterbi);
        if (!estimate_name.empty()) track.estimator = estimate_name;
        // Layout matches what classify discovers:
        // <out-dir>/<estimator>/<recording>.csv
        const fs::path dir = fs::path(estimate_outdir) / track.estimator;
        fs::create_directories(dir);
        const fs::path out = dir / (fs::path(input).stem().string() + ".csv");
        write_track(out.string(), track);
        std::cout << "wrote " << out.string() << '\n';
      }
      return 0;
    }

    if (*classify_cmd) {
      classify_common.load();
      const Settings& settings = classify_common.settings;
      const TruthSet truths = read_annotations(classify_truth);

      std::vector<RecordingInput> inputs;
      for (const auto& [recording, truth] : truths) {
        RecordingInput input;
        input.id = recording;
        const fs::path wav = fs::path(classify_audio) / (recording + ".wav");
        input.wave = load_audio(wav.string(), classify_rate);
        input.truth = truth;
        input.tracks = discover_tracks(classify_tracks, recording);
        inputs.push_back(std::move(input));
      }

      const EvalResult result = evaluate(inputs, eval_config(settings));
      print_errors(result.errors);
      write_records(classify_out, result.records);
      std::cout << "wrote " << classify_out << " (" << result.records.size()
                << " frames)\n";
      return result.errors.empty() ? 0 : 2;
    }

    if (*report_cmd) {
      report_common.load();
      const Settings& settings = report_common.settings;
      const std::vector<FrameRecord> records = read_records(report_records);
      const Report report =
          build_report(records, settings.baseline, settings.histograms);
      write_report_files(report_outdir, report);
      std::cout << "wrote report files to " << report_outdir << '\n';
      return 0;
    }

    if (*run_cmd) {
      run_common.load();
      const Settings& settings = run_common.settings;
      const std::vector<CorpusEntry> corpus =
          make_mixed_corpus(corpus_spec, settings.frames);
      fs::create_directories(run_outdir);

      TruthSet truths;
      std::vector<RecordingInput> inputs;
      for (const CorpusEntry& entry : corpus) {
        truths[entry.id] = entry.truth;
        RecordingInput input;
        input.id = entry.id;
        input.wave = entry.wave;
        input.truth = entry.truth;
        input.tracks.push_back(
            estimate(entry.wave, settings.frames, settings.tracker, false));
        input.tracks.push_back(
            estimate(entry.wave, settings.frames, settings.tracker, true));
        inputs.push_back(std::move(input));
        if (run_write_audio) {
          const fs::path audio_dir = fs::path(run_outdir) / "audio";
          fs::create_directories(audio_dir);
          write_wav((audio_dir / (entry.id + ".wav")).string(), entry.wave);
        }
      }
      write_annotations((fs::path(run_outdir) / "truth.csv").string(), truths);

      const fs::path tracks_dir = fs::path(run_outdir) / "tracks";
      for (const RecordingInput& input : inputs) {
        for (const EstimateTrack& track : input.tracks) {
          const fs::path dir = tracks_dir / track.estimator;
          fs::create_directories(dir);
          write_track((dir / (input.id + ".csv")).string(), track);
        }
      }

      const EvalResult result = evaluate(inputs, eval_config(settings));
      print_errors(result.errors);
      write_records((fs::path(run_outdir) / "records.csv").string(),
                    result.records);
      const Report report = build_report(result.records, settings.baseline,
                                         settings.histograms);
      write_report_files((fs::path(run_outdir) / "report").string(), report);
      std::cout << "evaluated " << result.records.size() << " frames over "
                << corpus.size() << " recordings into " << run_outdir << '\n';
      return result.errors.empty() ? 0 : 2;
    }
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
