#include "qkdng/mc_oracle.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "qkdng/error.hpp"

namespace qkdng {

namespace {

class Sampler {
 public:
  Sampler(std::uint64_t seed, std::uint64_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    rng_.seed(seq);
  }

  /// Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }

  std::int64_t thermal(double mean) {
    if (mean == 0.0) return 0;
    const double q = mean / (1.0 + mean);
    return static_cast<std::int64_t>(std::floor(std::log(1.0 - uniform()) / std::log(q)));
  }

  std::int64_t poisson(double mean) {
    if (mean == 0.0) return 0;
    if (mean > 30.0) return std::poisson_distribution<std::int64_t>(mean)(rng_);
    const double u = uniform();
    double term = std::exp(-mean);
    double cdf = term;
    std::int64_t n = 0;
    while (u >= cdf && n < 1000) {
      ++n;
      term *= mean / static_cast<double>(n);
      cdf += term;
    }
    return n;
  }

  /// Poisson conditioned on at least one event.
  std::int64_t zero_truncated_poisson(double mean) {
    const double target = uniform() * -std::expm1(-mean);
    double term = mean * std::exp(-mean);
    double cdf = term;
    std::int64_t n = 1;
    while (target >= cdf && n < 1000) {
      ++n;
      term *= mean / static_cast<double>(n);
      cdf += term;
    }
    return n;
  }

  std::int64_t photons(PhotonLaw law, double mean) {
    return law == PhotonLaw::Thermal ? thermal(mean) : poisson(mean);
  }

  /// Number of n photons kept, each independently with probability keep.
  std::int64_t thin(std::int64_t n, double keep) {
    std::int64_t kept = 0;
    for (std::int64_t i = 0; i < n; ++i) kept += bernoulli(keep);
    return kept;
  }

 private:
  std::mt19937_64 rng_;
};

struct Tally {
  std::uint64_t pulses = 0;
  // key geometry
  std::uint64_t accepted = 0;
  std::uint64_t errors = 0;
  std::uint64_t multi = 0;
  std::array<std::uint64_t, 4> same_trials{};
  std::array<std::uint64_t, 4> same_hits{};
  // autocorrelation geometry
  std::uint64_t single = 0;
  std::uint64_t coincidence = 0;
  std::uint64_t none = 0;
  std::array<std::uint64_t, 3> arrivals{};  // 0, 1, 2+

  Tally& operator+=(const Tally& o) {
    pulses += o.pulses;
    accepted += o.accepted;
    errors += o.errors;
    multi += o.multi;
    for (int j = 0; j < 4; ++j) {
      same_trials[j] += o.same_trials[j];
      same_hits[j] += o.same_hits[j];
    }
    single += o.single;
    coincidence += o.coincidence;
    none += o.none;
    for (int j = 0; j < 3; ++j) arrivals[j] += o.arrivals[j];
    return *this;
  }
};

// Photons reaching Bob in one pulse.  Index 0 is the detector matching
// Alice's state, index 1 the orthogonal one; the autocorrelation geometry
// only looks at the total.
struct Arrival {
  std::array<std::int64_t, 2> at{};
  std::int64_t signal_photons = 0;
  std::int64_t emitted = 0;
  std::int64_t noise_photons = 0;
  bool noise_same_side = false;
};

Arrival sample_pulse(const ModelParams& m, Sampler& rng) {
  Arrival a;
  if (m.model == Model::Spdc) {
    a.emitted = rng.zero_truncated_poisson(m.nu);
    a.signal_photons = rng.thin(a.emitted, m.T);
  } else {
    a.emitted = rng.bernoulli(m.p) ? 1 : 0;
    a.signal_photons = a.emitted ? (rng.bernoulli(m.T) ? 1 : 0) : 0;
  }
  // Depolarization: with probability e the polarization is replaced by a
  // random basis state, so the whole signal lands on a random detector.
  int signal_side = 0;
  if (rng.bernoulli(m.e)) signal_side = rng.bernoulli(0.5) ? 1 : 0;
  a.at[signal_side] += a.signal_photons;

  if (m.model == Model::NoiseBefore) {
    const std::int64_t n = rng.photons(m.noise, m.mu);
    const double x = rng.uniform();
    [[maybe_unused]] const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const std::int64_t kept = rng.thin(n, m.T);
    std::int64_t matching = 0;
    for (std::int64_t i = 0; i < kept; ++i) matching += rng.bernoulli(x);
    a.at[0] += matching;
    a.at[1] += kept - matching;
    a.noise_photons = kept;
    a.noise_same_side = kept > 0 && (matching == 0 || matching == kept);
  } else {
    // One thermal bath per polarization mode, coupled in through the
    // reflected port of the channel.
    for (int side = 0; side < 2; ++side) {
      const std::int64_t bath = rng.thin(rng.thermal(m.mu), 1.0 - m.T);
      a.at[side] += bath;
      a.noise_photons += bath;
    }
  }
  return a;
}

void key_pulse(const ModelParams& m, Sampler& rng, Tally& t) {
  const Arrival a = sample_pulse(m, rng);
  bool click[2] = {a.at[0] > 0, a.at[1] > 0};
  if (a.at[0] + a.at[1] == 0) {
    // Dark counts matter only in empty gates, at most one per gate.
    const double u = rng.uniform();
    if (u < m.d) {
      click[0] = true;
    } else if (u < 2.0 * m.d) {
      click[1] = true;
    }
  }
  ++t.pulses;
  if (click[0] != click[1]) {
    ++t.accepted;
    if (click[1]) ++t.errors;
  }
  if (a.emitted >= 2) ++t.multi;
  if (m.model == Model::NoiseBefore && a.noise_photons >= 1 && a.noise_photons <= 3) {
    ++t.same_trials[a.noise_photons];
    if (a.noise_same_side) ++t.same_hits[a.noise_photons];
  }
}

void autocorrelation_pulse(const ModelParams& m, Sampler& rng, Tally& t) {
  const Arrival a = sample_pulse(m, rng);
  const std::int64_t total = a.at[0] + a.at[1];
  std::int64_t to_a = 0;
  for (std::int64_t i = 0; i < total; ++i) to_a += rng.bernoulli(0.5);
  const bool click_a = to_a > 0;
  const bool click_b = total - to_a > 0;
  ++t.pulses;
  if (click_a && click_b) {
    ++t.coincidence;
  } else if (click_a || click_b) {
    ++t.single;
  } else {
    ++t.none;
  }
  ++t.arrivals[static_cast<std::size_t>(std::min<std::int64_t>(total, 2))];
}

McEstimate estimate(std::uint64_t hits, std::uint64_t trials) {
  McEstimate e;
  e.samples = trials;
  if (trials == 0) return e;
  e.value = static_cast<double>(hits) / static_cast<double>(trials);
  e.std_err = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(trials));
  return e;
}

Tally run(const ModelParams& params, const McConfig& config, Geometry geometry) {
  const std::uint64_t blocks = (config.samples + config.block_size - 1) / config.block_size;
  std::vector<Tally> tallies(blocks);
  unsigned workers = config.workers ? config.workers : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, blocks));

  std::atomic<std::uint64_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned id) {
    try {
      for (std::uint64_t b = next++; b < blocks; b = next++) {
        Sampler rng(config.seed, 2 * b + (geometry == Geometry::Key ? 0 : 1));
        const std::uint64_t begin = b * config.block_size;
        const std::uint64_t end = std::min(config.samples, begin + config.block_size);
        Tally& t = tallies[b];
        for (std::uint64_t i = begin; i < end; ++i) {
          if (geometry == Geometry::Key) {
            key_pulse(params, rng, t);
          } else {
            autocorrelation_pulse(params, rng, t);
          }
        }
      }
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Tally total;
  for (const Tally& t : tallies) total += t;
  return total;
}

McComparison compare(std::string name, double analytic, const McEstimate& mc) {
  McComparison c;
  c.name = std::move(name);
  c.analytic = analytic;
  c.mc = mc.value;
  c.samples = mc.samples;
  const double p = std::clamp(analytic, 0.0, 1.0);
  c.std_err = mc.samples ? std::sqrt(p * (1.0 - p) / static_cast<double>(mc.samples)) : 0.0;
  const double diff = std::abs(analytic - mc.value);
  if (diff == 0.0) {
    c.sigma = 0.0;
  } else {
    c.sigma = c.std_err > 0.0 ? diff / c.std_err : std::numeric_limits<double>::infinity();
  }
  return c;
}

}  // namespace

void McConfig::validate() const {
  if (samples == 0) throw DomainError("McConfig: samples must be positive");
  if (block_size == 0) throw DomainError("McConfig: block_size must be positive");
}

McResult simulate(const ModelParams& params, const McConfig& config, Geometry geometry) {
  config.validate();
  params.validate();
  if (params.model == Model::Spdc && params.nu == 0.0) {
    throw UndefinedRateError("nu = 0: the source is never heralded");
  }
  const Tally t = run(params, config, geometry);
  McResult out;
  if (geometry == Geometry::Key) {
    out["p_exp"] = estimate(t.accepted, t.pulses);
    out["qber"] = estimate(t.errors, t.accepted);
    if (params.model == Model::Spdc) out["p_multi"] = estimate(t.multi, t.pulses);
    if (params.model == Model::NoiseBefore) {
      for (int j = 1; j <= 3; ++j) {
        out["same_detector_" + std::to_string(j)] = estimate(t.same_hits[j], t.same_trials[j]);
      }
    }
  } else {
    out["p_s"] = estimate(t.single, t.pulses);
    out["p_c"] = estimate(t.coincidence, t.pulses);
    out["p_none"] = estimate(t.none, t.pulses);
    out["omega_0"] = estimate(t.arrivals[0], t.pulses);
    out["omega_1"] = estimate(t.arrivals[1], t.pulses);
    out["omega_2plus"] = estimate(t.arrivals[2], t.pulses);
  }
  return out;
}

std::vector<McComparison> compare_with_analytic(const ModelParams& params, const McConfig& config) {
  std::vector<McComparison> rows;
  const McResult key = simulate(params, config, Geometry::Key);
  const McResult auto_corr = simulate(params, config, Geometry::Autocorrelation);

  const double herald = params.model == Model::Spdc ? -std::expm1(-params.nu) : 1.0;
  const KeyRateResult rate = key_rate(params);
  rows.push_back(compare("p_exp", rate.p_exp / herald, key.at("p_exp")));
  rows.push_back(compare("qber", rate.qber, key.at("qber")));
  if (params.model == Model::Spdc) {
    rows.push_back(compare("p_multi", key_stats_III(params.spdc()).p_multi / herald, key.at("p_multi")));
  }
  if (params.model == Model::NoiseBefore) {
    for (int j = 1; j <= 3; ++j) {
      const std::string name = "same_detector_" + std::to_string(j);
      const McEstimate& mc = key.at(name);
      if (mc.samples > 0) rows.push_back(compare(name, 2.0 / (j + 1.0), mc));
    }
  }

  const ClickStats stats = click_stats(params);
  const Omega w = omega(params);
  rows.push_back(compare("p_s", stats.p_s, auto_corr.at("p_s")));
  rows.push_back(compare("p_c", stats.p_c, auto_corr.at("p_c")));
  rows.push_back(compare("p_none", stats.p_none, auto_corr.at("p_none")));
  rows.push_back(compare("omega_0", 1.0 - w.one - w.two_plus, auto_corr.at("omega_0")));
  rows.push_back(compare("omega_1", w.one, auto_corr.at("omega_1")));
  rows.push_back(compare("omega_2plus", w.two_plus, auto_corr.at("omega_2plus")));
  return rows;
}

}  // namespace qkdng
