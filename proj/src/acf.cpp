#include "foeval/acf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "foeval/error.hpp"
#include "foeval/kernels.hpp"

namespace foeval {

void validate(const TrackerConfig& cfg) {
  if (!(cfg.fo_min > 0.0 && cfg.fo_min < cfg.fo_max)) {
    throw InvalidInput("tracker: need 0 < fo_min < fo_max");
  }
  if (cfg.max_candidates < 2) {
    throw InvalidInput("tracker: need room for at least two candidates");
  }
  if (cfg.voicing_threshold < 0.0 || cfg.silence_threshold < 0.0 ||
      cfg.octave_cost < 0.0 || cfg.octave_jump_cost < 0.0 ||
      cfg.voiced_unvoiced_cost < 0.0) {
    throw InvalidInput("tracker: thresholds and costs must be >= 0");
  }
}

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Candidate ordering: stronger first, ties toward higher frequency.
bool stronger(const Candidate& a, const Candidate& b) {
  if (a.strength != b.strength) return a.strength > b.strength;
  return a.fo_hz > b.fo_hz;
}

double transition_cost(double f1, double f2, const TrackerConfig& cfg) {
  const bool v1 = f1 > 0.0;
  const bool v2 = f2 > 0.0;
  if (v1 && v2) return cfg.octave_jump_cost * std::abs(std::log2(f1 / f2));
  if (v1 != v2) return cfg.voiced_unvoiced_cost;
  return 0.0;
}

}  // namespace

std::vector<Candidate> autocorr_candidates(std::span<const double> frame,
                                           int rate, const TrackerConfig& cfg,
                                           double global_peak) {
  validate(cfg);
  const std::size_t n = frame.size();
  if (n < 2) throw InvalidInput("autocorr: frame must have at least 2 samples");
  if (rate <= 0) throw InvalidInput("autocorr: rate must be positive");

  double local_peak = 0.0;
  double mean = 0.0;
  for (double s : frame) {
    local_peak = std::max(local_peak, std::abs(s));
    mean += s;
  }
  mean /= static_cast<double>(n);
  if (global_peak <= 0.0) global_peak = local_peak;

  // Unvoiced hypothesis strength from the frame's level relative to the
  // waveform peak: quiet frames get pushed toward unvoiced.
  const double intensity = global_peak > 0.0 ? local_peak / global_peak : 0.0;
  const double unvoiced_strength = clamp01(
      cfg.voicing_threshold +
      std::max(0.0, 2.0 - intensity * (1.0 + cfg.voicing_threshold) /
                              cfg.silence_threshold));
  const Candidate unvoiced{0.0, unvoiced_strength};

  const std::vector<double> window = hanning_window(n);
  std::vector<double> tapered(n);
  for (std::size_t i = 0; i < n; ++i) tapered[i] = frame[i] - mean;
  kernels::multiply(tapered.data(), tapered.data(), window.data(), n);

  const double energy = kernels::sum_squares(tapered.data(), n);
  const double window_energy = kernels::sum_squares(window.data(), n);

  std::vector<Candidate> voiced;
  if (energy > 0.0) {
    const long lag_min =
        std::max(2L, static_cast<long>(std::ceil(rate / cfg.fo_max)));
    const long lag_max =
        std::min(static_cast<long>(n) - 2,
                 static_cast<long>(std::floor(rate / cfg.fo_min)));

    if (lag_min <= lag_max) {
      // Normalized ACF of the tapered frame divided by the window's own
      // normalized ACF, evaluated one lag beyond each end for peak picking.
      const long lo = lag_min - 1;
      const long hi = lag_max + 1;
      std::vector<double> r(static_cast<std::size_t>(hi - lo + 1));
      for (long lag = lo; lag <= hi; ++lag) {
        const std::size_t len = n - static_cast<std::size_t>(lag);
        const double rx =
            kernels::dot(tapered.data(), tapered.data() + lag, len) / energy;
        const double rw =
            kernels::dot(window.data(), window.data() + lag, len) /
            window_energy;
        r[static_cast<std::size_t>(lag - lo)] = rw > 0.0 ? rx / rw : 0.0;
      }

      for (long lag = lag_min; lag <= lag_max; ++lag) {
        const std::size_t i = static_cast<std::size_t>(lag - lo);
        if (!(r[i] > r[i - 1] && r[i] >= r[i + 1])) continue;
        if (r[i] <= 0.0) continue;

        // Parabolic refinement of the peak lag and height.
        const double denom = r[i - 1] - 2.0 * r[i] + r[i + 1];
        double delta = 0.0;
        if (denom < 0.0) {
          delta = std::clamp(0.5 * (r[i - 1] - r[i + 1]) / denom, -0.5, 0.5);
        }
        const double peak = r[i] - 0.25 * (r[i - 1] - r[i + 1]) * delta;
        const double fo = rate / (static_cast<double>(lag) + delta);
        if (fo < cfg.fo_min || fo > cfg.fo_max) continue;

        const double strength =
            clamp01(peak + cfg.octave_cost * std::log2(fo / cfg.fo_min));
        voiced.push_back({fo, strength});
      }
    }
  }

  std::sort(voiced.begin(), voiced.end(), stronger);
  if (voiced.size() > cfg.max_candidates - 1) {
    voiced.resize(cfg.max_candidates - 1);
  }
  voiced.push_back(unvoiced);
  std::sort(voiced.begin(), voiced.end(), stronger);
  return voiced;
}

std::vector<double> viterbi_track(
    const std::vector<std::vector<Candidate>>& per_frame,
    const TrackerConfig& cfg) {
  validate(cfg);
  if (per_frame.empty()) throw InvalidInput("viterbi: no frames");
  for (const auto& frame : per_frame) {
    if (frame.empty()) throw InvalidInput("viterbi: frame without candidates");
  }

  const std::size_t n_frames = per_frame.size();
  std::vector<double> cost(per_frame[0].size());
  for (std::size_t j = 0; j < cost.size(); ++j) {
    cost[j] = -per_frame[0][j].strength;
  }

  std::vector<std::vector<std::size_t>> back(n_frames);
  for (std::size_t t = 1; t < n_frames; ++t) {
    const auto& prev = per_frame[t - 1];
    const auto& cur = per_frame[t];
    std::vector<double> next_cost(cur.size());
    back[t].resize(cur.size());
    for (std::size_t j = 0; j < cur.size(); ++j) {
      std::size_t best_i = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < prev.size(); ++i) {
        const double c =
            cost[i] + transition_cost(prev[i].fo_hz, cur[j].fo_hz, cfg);
        if (c < best || (c == best && prev[i].fo_hz > prev[best_i].fo_hz)) {
          best = c;
          best_i = i;
        }
      }
      next_cost[j] = best - cur[j].strength;
      back[t][j] = best_i;
    }
    cost = std::move(next_cost);
  }

  std::size_t best_j = 0;
  for (std::size_t j = 1; j < cost.size(); ++j) {
    const auto& last = per_frame[n_frames - 1];
    if (cost[j] < cost[best_j] ||
        (cost[j] == cost[best_j] && last[j].fo_hz > last[best_j].fo_hz)) {
      best_j = j;
    }
  }

  std::vector<double> track(n_frames);
  std::size_t j = best_j;
  for (std::size_t t = n_frames; t-- > 0;) {
    track[t] = per_frame[t][j].fo_hz;
    if (t > 0) j = back[t][j];
  }
  return track;
}

EstimateTrack estimate(const Waveform& wave, const FrameSpec& frames,
                       const TrackerConfig& cfg, bool postprocess) {
  validate(wave);
  validate(frames);
  TrackerConfig effective = cfg;
  if (!postprocess) {
    // No-postprocessing mode: zero transition costs reduce the decode to the
    // per-frame strongest candidate.
    effective.octave_jump_cost = 0.0;
    effective.voiced_unvoiced_cost = 0.0;
  }

  double global_peak = 0.0;
  for (double s : wave.samples) global_peak = std::max(global_peak, std::abs(s));

  const std::size_t n_frames =
      frames.frame_count(wave.samples.size(), wave.rate);
  std::vector<std::vector<Candidate>> candidates;
  candidates.reserve(n_frames);
  for (std::size_t f = 0; f < n_frames; ++f) {
    candidates.push_back(autocorr_candidates(frame_slice(wave, frames, f),
                                             wave.rate, effective,
                                             global_peak));
  }

  EstimateTrack track;
  track.estimator = postprocess ? "viterbi" : "acf";
  if (candidates.empty()) return track;

  const std::vector<double> decoded = viterbi_track(candidates, effective);
  track.times_s.resize(n_frames);
  track.fo_hz = decoded;
  for (std::size_t f = 0; f < n_frames; ++f) {
    track.times_s[f] = frames.center_time(f);
  }
  return track;
}

}  // namespace foeval
