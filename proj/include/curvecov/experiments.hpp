#ifndef CURVECOV_EXPERIMENTS_HPP
#define CURVECOV_EXPERIMENTS_HPP

/// \brief Seeded experiment harness: reproducible slope-pair sampling, the
/// cover quasi-isometry fit, the two-sided distance-estimate sweep with
/// train/test constant fitting, the bounded-geodesic-image fit, and the
/// shadow no-backtracking fit. All drivers are pure functions of their
/// config; identical configs give identical results.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "curvecov/annular.hpp"
#include "curvecov/antichain.hpp"
#include "curvecov/covers.hpp"
#include "curvecov/farey.hpp"
#include "curvecov/graph.hpp"
#include "curvecov/slope.hpp"
#include "curvecov/teich.hpp"

namespace curvecov {

/// Shadow sampling resolution used by the backtracking sweep.
inline constexpr double kShadowStep = 0.1;

/// Slope-entry cap for the bounded-geodesic-image sweep: pairs are clamped
/// to this size so deletion-search certification stays exhaustive.
inline constexpr int64_t kBgiSlopeBound = 13;

// ---------------------------------------------------------------------------
// deterministic RNG (SplitMix64): tiny, seedable, stable across platforms
// ---------------------------------------------------------------------------

struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, n) by rejection; n >= 1.
  uint64_t next_below(uint64_t n) {
    uint64_t limit = ~uint64_t(0) - (~uint64_t(0) % n);
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  /// Uniform real in [0, 1).
  double next_unit() { return (next() >> 11) * 0x1.0p-53; }
};

// ---------------------------------------------------------------------------
// configuration
// ---------------------------------------------------------------------------

/// Parameters of one experiment run. Serializes to line-oriented
/// "key = value" text and parses back losslessly.
struct ExperimentConfig {
  uint64_t seed = 1;
  int64_t sample_count = 10000;
  int64_t slope_size_bound = 10000;
  SurfaceModel model = SurfaceModel::TorusFarey;
  std::optional<LatticeCover> cover;  // mutually exclusive with pillowcase
  bool pillowcase_cover = false;
  int64_t T = 4;          // antichain threshold
  double epsilon = 0.05;  // thinness cutoff
  double min_len = 1.0;   // thick-interval length floor (config key "L")
  int64_t oracle_bound = 34;

  bool operator==(const ExperimentConfig&) const = default;

  std::string str() const {
    auto num = [](double v) {
      char buf[64];
      auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      return std::string(buf, end);
    };
    std::string out;
    out += "seed = " + std::to_string(seed) + "\n";
    out += "sample_count = " + std::to_string(sample_count) + "\n";
    out += "slope_size_bound = " + std::to_string(slope_size_bound) + "\n";
    out += "model = " + to_string(model) + "\n";
    if (pillowcase_cover)
      out += "cover = pillowcase\n";
    else if (cover)
      out += "cover = " + cover->str() + "\n";
    out += "T = " + std::to_string(T) + "\n";
    out += "epsilon = " + num(epsilon) + "\n";
    out += "L = " + num(min_len) + "\n";
    out += "oracle_bound = " + std::to_string(oracle_bound) + "\n";
    return out;
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace detail

inline void validate_config(const ExperimentConfig& cfg) {
  if (cfg.sample_count < 0)
    throw std::invalid_argument("config: sample_count must be nonnegative");
  if (cfg.slope_size_bound < 1)
    throw std::invalid_argument("config: slope_size_bound must be positive");
  if (cfg.oracle_bound < 1)
    throw std::invalid_argument("config: oracle_bound must be positive");
  if (cfg.T < 4) throw std::invalid_argument("config: T must be at least 4");
  if (!(cfg.epsilon > 0.0) || cfg.epsilon >= kBoundedLength)
    throw std::invalid_argument(
        "config: epsilon must lie in (0, bounded-length constant)");
  if (!(cfg.min_len > 0.0))
    throw std::invalid_argument("config: L must be positive");
  if (cfg.cover && cfg.pillowcase_cover)
    throw std::invalid_argument(
        "config: lattice cover and pillowcase token are exclusive");
}

/// Parses "key = value" lines (blank lines and '#' comments allowed).
/// Unknown keys and malformed values are errors; the result is validated.
inline ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  size_t pos = 0;
  int lineno = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                      : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    std::string key(detail::trim(line.substr(0, eq)));
    std::string val(detail::trim(line.substr(eq + 1)));
    auto as_int = [&](int64_t lo) {
      int64_t v = 0;
      auto [end, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
      if (ec != std::errc() || end != val.data() + val.size() || v < lo)
        throw std::invalid_argument("config: bad value for " + key + ": '" +
                                    val + "'");
      return v;
    };
    auto as_real = [&] {
      double v = 0;
      auto [end, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
      if (ec != std::errc() || end != val.data() + val.size())
        throw std::invalid_argument("config: bad value for " + key + ": '" +
                                    val + "'");
      return v;
    };
    if (key == "seed") {
      uint64_t v = 0;
      auto [end, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
      if (ec != std::errc() || end != val.data() + val.size())
        throw std::invalid_argument("config: bad value for seed: '" + val +
                                    "'");
      cfg.seed = v;
    } else if (key == "sample_count") {
      cfg.sample_count = as_int(0);
    } else if (key == "slope_size_bound") {
      cfg.slope_size_bound = as_int(1);
    } else if (key == "model") {
      if (val == "torus")
        cfg.model = SurfaceModel::TorusFarey;
      else if (val == "pillowcase")
        cfg.model = SurfaceModel::SphereOrbifold2222;
      else if (val == "annulus")
        cfg.model = SurfaceModel::Annulus;
      else
        throw std::invalid_argument("config: unknown model '" + val + "'");
    } else if (key == "cover") {
      if (val == "pillowcase") {
        cfg.pillowcase_cover = true;
        cfg.cover.reset();
      } else {
        cfg.cover = parse_cover(val);
        cfg.pillowcase_cover = false;
      }
    } else if (key == "T") {
      cfg.T = as_int(0);
    } else if (key == "epsilon") {
      cfg.epsilon = as_real();
    } else if (key == "L") {
      cfg.min_len = as_real();
    } else if (key == "oracle_bound") {
      cfg.oracle_bound = as_int(1);
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  validate_config(cfg);
  return cfg;
}

// ---------------------------------------------------------------------------
// sampling
// ---------------------------------------------------------------------------

/// Uniform random slope in the box |p|, q <= bound (nonzero pairs,
/// normalized to primitive form).
inline Slope sample_slope(SplitMix64& rng, int64_t bound) {
  while (true) {
    int64_t p =
        static_cast<int64_t>(rng.next_below(2 * uint64_t(bound) + 1)) - bound;
    int64_t q = static_cast<int64_t>(rng.next_below(uint64_t(bound) + 1));
    if (p == 0 && q == 0) continue;
    return Slope(p, q);
  }
}

/// Deterministic sample of distinct slope pairs within the config's size
/// bound; identical configs give identical lists.
inline std::vector<std::pair<Slope, Slope>> sample_pairs(
    const ExperimentConfig& cfg) {
  validate_config(cfg);
  SplitMix64 rng(cfg.seed);
  std::vector<std::pair<Slope, Slope>> out;
  out.reserve(static_cast<size_t>(cfg.sample_count));
  for (int64_t i = 0; i < cfg.sample_count; ++i) {
    Slope a = sample_slope(rng, cfg.slope_size_bound);
    Slope b = sample_slope(rng, cfg.slope_size_bound);
    while (b == a) b = sample_slope(rng, cfg.slope_size_bound);
    out.emplace_back(a, b);
  }
  return out;
}

// ---------------------------------------------------------------------------
// cover quasi-isometry fit
// ---------------------------------------------------------------------------

struct SampleStats {
  int64_t count = 0;
  int64_t max_base = 0;
  int64_t max_lifted = 0;
  double mean_base = 0.0;
  double mean_lifted = 0.0;
};

/// Result of comparing base distances with lifted distances across a
/// sample: the fitted two-sided constant, the closed-form upper factor
/// 2 log2(2 degree) + 2, and the count of upper-bound violations (an exact
/// theorem; must be zero).
struct QIFitReport {
  double fitted_Q = 1.0;
  double upper_factor = 0.0;
  int64_t violations = 0;
  SampleStats stats;
};

inline QIFitReport run_cover_qi(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (!cfg.cover && !cfg.pillowcase_cover)
    throw std::invalid_argument("run_cover_qi: config carries no cover");
  int64_t degree = cfg.pillowcase_cover
                       ? OrbifoldDoubleCover::degree
                       : cfg.cover->degree.convert_to<int64_t>();
  QIFitReport rep;
  rep.upper_factor =
      2.0 * std::log2(2.0 * static_cast<double>(degree)) + 2.0;
  double q_needed = 1.0;
  double sum_base = 0.0, sum_lift = 0.0;
  for (const auto& [a, b] : sample_pairs(cfg)) {
    int64_t d_base = farey_distance(a, b);
    int64_t d_lift;
    if (cfg.pillowcase_cover) {
      // the double cover of the four-cone-point sphere is the slope
      // identity on vertices, so distances transfer unchanged
      d_lift = farey_distance(orbifold_lift(a), orbifold_lift(b));
    } else {
      d_lift = farey_distance(lift_curve(*cfg.cover, a).lifted,
                              lift_curve(*cfg.cover, b).lifted);
    }
    if (static_cast<double>(d_lift) >
        rep.upper_factor * static_cast<double>(d_base) + kRealTol)
      ++rep.violations;
    q_needed = std::max(
        q_needed,
        std::max(static_cast<double>(d_base) / static_cast<double>(d_lift + 1),
                 static_cast<double>(d_lift) /
                     static_cast<double>(d_base + 1)));
    ++rep.stats.count;
    rep.stats.max_base = std::max(rep.stats.max_base, d_base);
    rep.stats.max_lifted = std::max(rep.stats.max_lifted, d_lift);
    sum_base += static_cast<double>(d_base);
    sum_lift += static_cast<double>(d_lift);
  }
  if (rep.stats.count > 0) {
    rep.stats.mean_base = sum_base / static_cast<double>(rep.stats.count);
    rep.stats.mean_lifted = sum_lift / static_cast<double>(rep.stats.count);
  }
  rep.fitted_Q = q_needed;
  return rep;
}

// ---------------------------------------------------------------------------
// two-sided distance estimate sweep
// ---------------------------------------------------------------------------

/// Per-pair estimate reports plus the constant fitted on the training half
/// (even indices after canonical sorting) and validated on the held-out
/// half: zero violations means both inequalities
/// d <= K (|J| + |Gamma|) + K and |J| + |Gamma| <= K d + K held.
struct EstimateSweep {
  std::vector<EstimateReport> reports;  // sorted by canonical pair order
  double fitted_K = 0.0;                // 0 when the sample is empty
  int64_t train_count = 0;
  int64_t heldout_count = 0;
  int64_t heldout_violations = 0;
};

inline EstimateSweep run_estimate_sweep(const ExperimentConfig& cfg) {
  validate_config(cfg);
  EstimateSweep sweep;
  for (const auto& [a, b] : sample_pairs(cfg))
    sweep.reports.push_back(
        distance_estimate(a, b, cfg.T, cfg.epsilon, cfg.min_len));
  std::sort(sweep.reports.begin(), sweep.reports.end(),
            [](const EstimateReport& l, const EstimateReport& r) {
              if (!(l.pair.first == r.pair.first))
                return l.pair.first < r.pair.first;
              return l.pair.second < r.pair.second;
            });
  if (sweep.reports.empty()) return sweep;

  double k = 1.0;
  for (size_t i = 0; i < sweep.reports.size(); i += 2) {
    const EstimateReport& r = sweep.reports[i];
    double d = static_cast<double>(r.distance);
    double s = static_cast<double>(r.J_size) + r.gamma_total;
    k = std::max(k, std::max(d / (s + 1.0), s / (d + 1.0)));
    ++sweep.train_count;
  }
  for (size_t i = 1; i < sweep.reports.size(); i += 2) {
    const EstimateReport& r = sweep.reports[i];
    double d = static_cast<double>(r.distance);
    double s = static_cast<double>(r.J_size) + r.gamma_total;
    if (d > k * s + k + kRealTol || s > k * d + k + kRealTol)
      ++sweep.heldout_violations;
    ++sweep.heldout_count;
  }
  sweep.fitted_K = k;
  for (EstimateReport& r : sweep.reports) r.fitted_K = k;
  return sweep;
}

// ---------------------------------------------------------------------------
// bounded geodesic image fit
// ---------------------------------------------------------------------------

/// Least threshold M such that every sampled axis with projection distance
/// at least M lay on every geodesic of its pair, certified by exhaustive
/// deletion search. Axes whose certification came back inconclusive are
/// skipped and counted.
struct BgiReport {
  int64_t fitted_M = 2;
  bool pass = false;
  int64_t axes_checked = 0;
  int64_t skipped = 0;
  int64_t max_offgeodesic_projection = 1;
};

inline BgiReport run_bgi_test(const ExperimentConfig& cfg) {
  validate_config(cfg);
  ExperimentConfig clamped = cfg;
  clamped.slope_size_bound = std::min(cfg.slope_size_bound, kBgiSlopeBound);
  BgiReport rep;
  for (const auto& [a, b] : sample_pairs(clamped)) {
    Int I = abs_int(cross(a, b));
    if (I == 0) continue;
    // candidate axes: every slope with projection >= 3 lies in the strip
    // (intersection product < i(a,b)); a fixed small box adds the abundant
    // projection-2 axes so the fit sees the floor as well
    std::vector<Slope> axes;
    for (const StripVertex& v : strip_candidates(a, b, Rat(I)))
      if (!(v.slope == a) && !(v.slope == b)) axes.push_back(v.slope);
    for (int64_t p = -5; p <= 5; ++p)
      for (int64_t q = 0; q <= 5; ++q) {
        if (p == 0 && q == 0) continue;
        Slope g(p, q);
        if (g == a || g == b) continue;
        axes.push_back(g);
      }
    std::sort(axes.begin(), axes.end());
    axes.erase(std::unique(axes.begin(), axes.end()), axes.end());

    // conclusive either way once the box covers the strip and the probes
    Int cert = strip_max_entry(a, b);
    int64_t bound = std::max<int64_t>(8, cert.convert_to<int64_t>());
    for (const Slope& g : axes) {
      Int proj = annular_distance(make_axis(g), a, b);
      ContainmentResult res = all_geodesics_contain(a, b, g, bound);
      ++rep.axes_checked;
      if (res.status == Containment::Inconclusive) {
        ++rep.skipped;
        continue;
      }
      if (res.status == Containment::NotContained)
        rep.max_offgeodesic_projection =
            std::max(rep.max_offgeodesic_projection,
                     proj.convert_to<int64_t>());
    }
  }
  rep.fitted_M = rep.max_offgeodesic_projection + 1;
  rep.pass = rep.fitted_M <= 6;
  return rep;
}

// ---------------------------------------------------------------------------
// shadow no-backtracking fit
// ---------------------------------------------------------------------------

/// Least B making d(s0, s2) >= d(s0, s1) + d(s1, s2) - B over all
/// consecutive shadow triples in the sweep.
struct BacktrackReport {
  int64_t fitted_B = 0;
  bool pass = false;
  int64_t triples = 0;
};

inline BacktrackReport run_backtrack_test(const ExperimentConfig& cfg) {
  validate_config(cfg);
  BacktrackReport rep;
  for (const auto& [a, b] : sample_pairs(cfg)) {
    std::vector<std::pair<double, Slope>> sh =
        shadow(geodesic_between(a, b), kShadowStep);
    for (size_t i = 2; i < sh.size(); ++i) {
      int64_t d01 = farey_distance(sh[i - 2].second, sh[i - 1].second);
      int64_t d12 = farey_distance(sh[i - 1].second, sh[i].second);
      int64_t d02 = farey_distance(sh[i - 2].second, sh[i].second);
      rep.fitted_B = std::max(rep.fitted_B, d01 + d12 - d02);
      ++rep.triples;
    }
  }
  rep.pass = rep.fitted_B <= 10;
  return rep;
}

}  // namespace curvecov

#endif  // CURVECOV_EXPERIMENTS_HPP
