// Parameter sweeps over rotation families, separability-boundary search and
// the two-stage Werner pipeline.

#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "qsep/error.hpp"
#include "qsep/measures.hpp"
#include "qsep/random.hpp"
#include "qsep/states.hpp"
#include "qsep/unitaries.hpp"
#include "qsep/werner.hpp"

namespace qsep {

enum class Family { Rotation14, FirstColumn, XType, Cellular, Block, GenericParams };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::Rotation14: return "rotation14";
    case Family::FirstColumn: return "first-column";
    case Family::XType: return "xtype";
    case Family::Cellular: return "cellular";
    case Family::Block: return "block";
    case Family::GenericParams: return "generic";
  }
  return "?";
}

inline Family parse_family(std::string_view s) {
  for (Family f : {Family::Rotation14, Family::FirstColumn, Family::XType, Family::Cellular, Family::Block,
                   Family::GenericParams})
    if (s == to_string(f)) return f;
  throw invalid_scan_spec("unknown family '" + std::string(s) + "'");
}

struct ParamInfo {
  std::string name;
  std::optional<double> default_value;  // nullopt: must be swept or fixed
};

inline std::vector<ParamInfo> family_parameters(Family f) {
  const std::vector<std::string> block_params = {"theta1", "alpha1", "beta1", "gamma1",
                                                 "theta2", "alpha2", "beta2", "gamma2"};
  std::vector<ParamInfo> out;
  switch (f) {
    case Family::Rotation14: out.push_back({"phi", std::nullopt}); break;
    case Family::FirstColumn:
      for (const char* n : {"a", "d", "f"}) out.push_back({n, std::nullopt});
      for (const char* n : {"phi11", "phi21", "phi31", "phi41"}) out.push_back({n, 0.0});
      break;
    case Family::XType:
    case Family::Cellular:
    case Family::Block:
      for (const auto& n : block_params) out.push_back({n, 0.0});
      break;
    case Family::GenericParams:
      for (const char* n : {"a", "b", "c", "d", "f", "h"}) out.push_back({n, std::nullopt});
      for (const char* n : {"phi11", "phi12", "phi13", "phi14", "phi21", "phi22", "phi23", "phi31", "phi32", "phi41"})
        out.push_back({n, 0.0});
      break;
  }
  return out;
}

/// Whether building the rotation can fail for valid-looking inputs.
inline bool family_can_fail(Family f) { return f == Family::GenericParams; }

using ParamMap = std::map<std::string, double, std::less<>>;

namespace detail {
inline double get(const ParamMap& m, std::string_view k) {
  const auto it = m.find(k);
  if (it == m.end()) throw invalid_scan_spec("missing parameter '" + std::string(k) + "'");
  return it->second;
}

inline StructuredKind structured_kind(Family f) {
  switch (f) {
    case Family::Cellular: return StructuredKind::Cellular;
    case Family::Block: return StructuredKind::Block;
    default: return StructuredKind::XType;
  }
}
}  // namespace detail

/// The rotation of a family at fully specified parameters.
inline Unitary4 family_unitary(Family f, const ParamMap& v) {
  using detail::get;
  switch (f) {
    case Family::Rotation14: return rotation_1_4(get(v, "phi"));
    case Family::FirstColumn: {
      UnitaryParams p;
      p.a = get(v, "a");
      p.d = get(v, "d");
      p.f = get(v, "f");
      p.phi.phi11 = get(v, "phi11");
      p.phi.phi21 = get(v, "phi21");
      p.phi.phi31 = get(v, "phi31");
      p.phi.phi41 = get(v, "phi41");
      check_moduli(p);
      return complete_column(first_column(p));
    }
    case Family::XType:
    case Family::Cellular:
    case Family::Block:
      return structured(detail::structured_kind(f),
                        unitary2(get(v, "theta1"), get(v, "alpha1"), get(v, "beta1"), get(v, "gamma1")),
                        unitary2(get(v, "theta2"), get(v, "alpha2"), get(v, "beta2"), get(v, "gamma2")));
    case Family::GenericParams: {
      UnitaryParams p;
      p.a = get(v, "a");
      p.b = get(v, "b");
      p.c = get(v, "c");
      p.d = get(v, "d");
      p.f = get(v, "f");
      p.h = get(v, "h");
      p.phi = {get(v, "phi11"), get(v, "phi12"), get(v, "phi13"), get(v, "phi14"), get(v, "phi21"),
               get(v, "phi22"), get(v, "phi23"), get(v, "phi31"), get(v, "phi32"), get(v, "phi41")};
      return from_params(p);
    }
  }
  throw invalid_scan_spec("unknown family");
}

struct GridAxis {
  std::string name;
  double start = 0.0;
  double stop = 1.0;
  std::size_t steps = 2;  // number of nodes, endpoints included

  double at(std::size_t k) const {
    if (k + 1 == steps) return stop;
    return start + (stop - start) * static_cast<double>(k) / static_cast<double>(steps - 1);
  }
};

struct ScanSpec {
  Family family = Family::Rotation14;
  Spectrum4 spectrum = Spectrum4::pure();
  std::vector<GridAxis> grid;
  ParamMap fixed;
};

/// Throws invalid_scan_spec describing the first problem found.
/// `max_axes` is 2 for grid sweeps and unbounded for random sampling.
inline void validate(const ScanSpec& spec, std::size_t max_axes = 2) {
  if (spec.grid.empty()) throw invalid_scan_spec("at least one swept parameter is required");
  if (spec.grid.size() > max_axes) throw invalid_scan_spec("at most 2 swept parameters");
  const auto params = family_parameters(spec.family);
  auto known = [&](std::string_view n) {
    return std::any_of(params.begin(), params.end(), [&](const ParamInfo& p) { return p.name == n; });
  };
  std::set<std::string, std::less<>> seen;
  for (const auto& ax : spec.grid) {
    if (!known(ax.name))
      throw invalid_scan_spec("parameter '" + ax.name + "' does not belong to family " + std::string(to_string(spec.family)));
    if (ax.steps < 2) throw invalid_scan_spec("axis '" + ax.name + "' needs at least 2 steps");
    if (!(ax.start < ax.stop)) throw invalid_scan_spec("axis '" + ax.name + "' needs start < stop");
    if (!seen.insert(ax.name).second) throw invalid_scan_spec("parameter '" + ax.name + "' swept twice");
  }
  for (const auto& [k, v] : spec.fixed) {
    if (!known(k))
      throw invalid_scan_spec("parameter '" + k + "' does not belong to family " + std::string(to_string(spec.family)));
    if (seen.count(k)) throw invalid_scan_spec("parameter '" + k + "' is both swept and fixed");
    if (!std::isfinite(v)) throw invalid_scan_spec("parameter '" + k + "' is not finite");
  }
  for (const auto& p : params)
    if (!p.default_value && !seen.count(p.name) && !spec.fixed.count(p.name))
      throw invalid_scan_spec("parameter '" + p.name + "' is required");
}

struct ScanRow {
  std::vector<double> params;  // in ScanResult::param_names order
  double negativity = 0.0;
  double concurrence = 0.0;
  double min_ppt_eig = 0.0;
  bool separable = true;
  std::optional<std::string> error;
};

struct ScanResult {
  std::vector<std::string> param_names;
  std::vector<ScanRow> rows;
  bool error_column = false;
};

/// analyze(W(v) diag(s) W(v)^dag); construction failures go into row.error.
inline ScanRow evaluate_point(Family family, const Spectrum4& spectrum, const ParamMap& values) {
  ScanRow row;
  try {
    const EntanglementReport rep = analyze(conjugate(from_spectrum(spectrum), family_unitary(family, values)));
    row.negativity = rep.negativity;
    row.concurrence = rep.concurrence;
    row.min_ppt_eig = rep.min_ppt_eig;
    row.separable = rep.separable;
  } catch (const error& e) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.negativity = row.concurrence = row.min_ppt_eig = nan;
    row.separable = false;
    row.error = e.what();
  }
  return row;
}

namespace detail {

inline ParamMap base_values(const ScanSpec& spec) {
  ParamMap v;
  for (const auto& p : family_parameters(spec.family))
    if (p.default_value) v[p.name] = *p.default_value;
  for (const auto& [k, x] : spec.fixed) v[k] = x;
  return v;
}

/// Runs evaluate_point over precomputed points, each result written to its own slot.
inline std::vector<ScanRow> evaluate_all(const ScanSpec& spec, const std::vector<std::string>& names,
                                         const std::vector<std::vector<double>>& points, unsigned threads) {
  std::vector<ScanRow> rows(points.size());
  const ParamMap base = base_values(spec);
  auto work = [&](std::size_t i) {
    ParamMap v = base;
    for (std::size_t k = 0; k < names.size(); ++k) v[names[k]] = points[i][k];
    rows[i] = evaluate_point(spec.family, spec.spectrum, v);
    rows[i].params = points[i];
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, points.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) work(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < points.size(); i = next++) work(i);
    });
  pool.clear();  // joins
  return rows;
}

}  // namespace detail

/// Grid sweep in row-major order (first axis outermost). `threads == 0`
/// uses the hardware concurrency; output does not depend on it.
inline ScanResult sweep(const ScanSpec& spec, unsigned threads = 0) {
  validate(spec);
  ScanResult out;
  for (const auto& ax : spec.grid) out.param_names.push_back(ax.name);
  out.error_column = family_can_fail(spec.family);

  std::vector<std::vector<double>> points;
  if (spec.grid.size() == 1) {
    for (std::size_t i = 0; i < spec.grid[0].steps; ++i) points.push_back({spec.grid[0].at(i)});
  } else {
    for (std::size_t i = 0; i < spec.grid[0].steps; ++i)
      for (std::size_t j = 0; j < spec.grid[1].steps; ++j) points.push_back({spec.grid[0].at(i), spec.grid[1].at(j)});
  }
  out.rows = detail::evaluate_all(spec, out.param_names, points, threads);
  return out;
}

/// Random-sampling mode: `samples` points drawn uniformly over every axis
/// range (any number of axes; steps ignored) from a seeded generator.
inline ScanResult sample(const ScanSpec& spec, std::size_t samples, std::uint64_t seed, unsigned threads = 0) {
  ScanSpec relaxed = spec;
  for (auto& ax : relaxed.grid) ax.steps = std::max<std::size_t>(ax.steps, 2);
  validate(relaxed, std::numeric_limits<std::size_t>::max());
  ScanResult out;
  for (const auto& ax : spec.grid) out.param_names.push_back(ax.name);
  out.error_column = family_can_fail(spec.family);

  Rng rng(seed);
  std::vector<std::vector<double>> points(samples);
  for (auto& pt : points)
    for (const auto& ax : spec.grid) pt.push_back(uniform(rng, ax.start, ax.stop));
  out.rows = detail::evaluate_all(spec, out.param_names, points, threads);
  return out;
}

// ---------------------------------------------------------------------------
// boundaries

inline constexpr double kBoundaryTol = 1e-8;

/// Points in [start, stop] where f crosses the separability threshold
/// (f < -kSeparableTol on one side only). Sign changes are bracketed on a
/// grid of `steps` nodes and refined by bisection to an interval below `tol`.
/// Throws no_boundary when the classification never changes.
inline std::vector<double> find_boundaries(const std::function<double(double)>& f, double start, double stop,
                                           std::size_t steps, double tol = kBoundaryTol) {
  if (steps < 2 || !(start < stop)) throw invalid_scan_spec("boundary search needs steps >= 2 and start < stop");
  auto entangled = [&](double x) { return f(x) < -kSeparableTol; };
  const GridAxis ax{"x", start, stop, steps};

  std::vector<double> out;
  double prev_x = ax.at(0);
  bool prev = entangled(prev_x);
  for (std::size_t i = 1; i < steps; ++i) {
    const double x = ax.at(i);
    const bool cur = entangled(x);
    if (cur != prev) {
      double lo = prev_x, hi = x;
      while (hi - lo >= tol) {
        const double mid = 0.5 * (lo + hi);
        if (entangled(mid) == prev)
          lo = mid;
        else
          hi = mid;
      }
      out.push_back(0.5 * (lo + hi));
    }
    prev = cur;
    prev_x = x;
  }
  if (out.empty()) throw no_boundary("separability verdict does not change over the range");
  return out;
}

/// Boundaries of a 1D ScanSpec along its only axis, on min_ppt_eig.
inline std::vector<double> find_boundary(const ScanSpec& spec) {
  validate(spec);
  if (spec.grid.size() != 1) throw invalid_scan_spec("boundary search needs exactly one swept parameter");
  const GridAxis& ax = spec.grid.front();
  const ParamMap base = detail::base_values(spec);
  auto f = [&](double x) {
    ParamMap v = base;
    v[ax.name] = x;
    return min_ppt_eigenvalue(conjugate(from_spectrum(spec.spectrum), family_unitary(spec.family, v)));
  };
  return find_boundaries(f, ax.start, ax.stop, ax.steps);
}

// ---------------------------------------------------------------------------
// Werner pipeline

struct WernerPipelineResult {
  DensityMatrix4 werner_state;  // stage 1
  DensityMatrix4 rotated;       // stage 2
  EntanglementReport report;    // of the rotated state
};

/// diag spectrum -> Werner(p) -> rotation_1_4(phi) applied to it.
inline WernerPipelineResult werner_pipeline(double p, double phi) {
  const auto [gen, spectrum] = werner_generator_corrected(p);
  const DensityMatrix4 stage1 = conjugate(from_spectrum(spectrum), gen);
  const DensityMatrix4 stage2 = conjugate(stage1, rotation_1_4(phi));
  return {stage1, stage2, analyze(stage2)};
}

/// Separable/entangled boundaries of the rotated Werner state in phi.
inline std::vector<double> werner_boundaries(double p, double phi_start = 0.0, double phi_stop = std::numbers::pi / 2.0,
                                             std::size_t steps = 401) {
  require_werner_range(p);
  auto f = [p](double phi) { return werner_pipeline(p, phi).report.min_ppt_eig; };
  return find_boundaries(f, phi_start, phi_stop, steps);
}

// ---------------------------------------------------------------------------
// CSV

/// Shortest decimal that round-trips to the same double.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

/// Header: parameter names, then negativity,concurrence,min_ppt_eig,separable
/// (and error for families whose construction can fail).
inline std::string to_csv(const ScanResult& r) {
  std::string out;
  for (const auto& n : r.param_names) out += n + ",";
  out += "negativity,concurrence,min_ppt_eig,separable";
  if (r.error_column) out += ",error";
  out += "\n";
  for (const auto& row : r.rows) {
    for (double x : row.params) out += format_double(x) + ",";
    out += format_double(row.negativity) + "," + format_double(row.concurrence) + "," +
           format_double(row.min_ppt_eig) + "," + (row.separable ? "1" : "0");
    if (r.error_column) {
      out += ",";
      if (row.error) {
        std::string msg = *row.error;
        std::replace(msg.begin(), msg.end(), ',', ';');
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        out += msg;
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace qsep
