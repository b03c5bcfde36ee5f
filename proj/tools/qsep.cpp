#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsep/errata.hpp"
#include "qsep/io.hpp"
#include "qsep/qsep.hpp"

namespace {

using nlohmann::json;

constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 1;

class usage_error : public qsep::error {
 public:
  using qsep::error::error;
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& tok) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) throw usage_error("not a number: '" + tok + "'");
  return v;
}

// Accepts plain numbers and products/quotients with the literal pi,
// e.g. "pi", "-pi/2", "3*pi/4", "0.25".
double parse_value(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) throw usage_error("empty value");
  double sign = 1.0;
  if (s[0] == '-') {
    sign = -1.0;
    s = s.substr(1);
  }
  double acc = 1.0;
  char op = '*';
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find_first_of("*/", pos);
    const std::string tok = trim(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    const double v = tok == "pi" ? std::numbers::pi : parse_number(tok);
    acc = op == '*' ? acc * v : acc / v;
    if (next == std::string::npos) break;
    op = s[next];
    pos = next + 1;
  }
  return sign * acc;
}

struct RangeOrValue {
  std::optional<qsep::GridAxis> axis;
  double value = 0.0;
};

// "start:stop:steps" gives steps intervals (steps + 1 nodes); a bare value fixes it.
RangeOrValue parse_range_or_value(const std::string& name, const std::string& text) {
  RangeOrValue r;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() == 1) {
    r.value = parse_value(parts[0]);
    return r;
  }
  if (parts.size() != 3) throw usage_error("range for '" + name + "' must be start:stop:steps");
  const double steps = parse_number(trim(parts[2]));
  if (!(steps >= 1.0) || steps != static_cast<double>(static_cast<std::size_t>(steps)))
    throw usage_error("steps for '" + name + "' must be a positive integer");
  r.axis = qsep::GridAxis{name, parse_value(parts[0]), parse_value(parts[1]), static_cast<std::size_t>(steps) + 1};
  return r;
}

std::vector<std::string> all_param_names() {
  std::vector<std::string> names;
  for (auto f : {qsep::Family::Rotation14, qsep::Family::FirstColumn, qsep::Family::XType, qsep::Family::GenericParams})
    for (const auto& p : qsep::family_parameters(f))
      if (std::find(names.begin(), names.end(), p.name) == names.end()) names.push_back(p.name);
  return names;
}

qsep::Spectrum4 parse_spectrum(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) v.push_back(parse_value(part));
  if (v.size() != 4) throw usage_error("--spectrum needs four comma-separated values");
  return qsep::Spectrum4(v[0], v[1], v[2], v[3]);
}

// key=value pairs given as positional arguments.
std::map<std::string, std::string> parse_assignments(const std::vector<std::string>& items) {
  std::map<std::string, std::string> out;
  for (const auto& it : items) {
    const auto eq = it.find('=');
    if (eq == std::string::npos || eq == 0) throw usage_error("expected key=value, got '" + it + "'");
    out[it.substr(0, eq)] = it.substr(eq + 1);
  }
  return out;
}

std::string fmt(double x) { return qsep::format_double(x); }

std::string fmt_array(const std::array<double, 4>& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < 4; ++i) s += (i ? ", " : "") + fmt(a[i]);
  return s + "]";
}

void print_report_table(std::ostream& os, const qsep::EntanglementReport& r) {
  os << "ppt_spectrum  " << fmt_array(r.ppt_spectrum) << "\n"
     << "negativity    " << fmt(r.negativity) << "\n"
     << "concurrence   " << fmt(r.concurrence) << "\n"
     << "min_ppt_eig   " << fmt(r.min_ppt_eig) << "\n"
     << "separable     " << (r.separable ? "yes" : "no") << (r.boundary ? " (boundary)" : "") << "\n";
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw qsep::io_error("cannot open " + out_path + " for writing");
  os << text;
}

// ---------------------------------------------------------------------------

struct AnalyzeOpts {
  std::string file;
  bool json = false;
};

int run_analyze(const AnalyzeOpts& o) {
  const auto rho = qsep::read_density_file(o.file);
  const auto r = qsep::analyze(rho);
  if (o.json)
    std::cout << qsep::to_json(r).dump(2) << "\n";
  else
    print_report_table(std::cout, r);
  return 0;
}

struct ScanOpts {
  bool fig1 = false;
  bool fig2 = false;
  std::string family;
  std::string spectrum;
  std::map<std::string, std::string> params;
  std::vector<std::string> assignments;
  std::string out;
  unsigned threads = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  bool boundaries = false;
};

qsep::ScanResult prefixed(const qsep::ScanResult& r, double d, double f) {
  qsep::ScanResult out = r;
  out.param_names.insert(out.param_names.begin(), {"d", "f"});
  for (auto& row : out.rows) row.params.insert(row.params.begin(), {d, f});
  return out;
}

int run_scan(ScanOpts o) {
  for (const auto& [k, v] : parse_assignments(o.assignments)) o.params[k] = v;

  if (o.fig1 && o.fig2) throw usage_error("--fig1 and --fig2 are exclusive");
  qsep::ScanSpec spec;
  if (o.fig1) {
    if (!o.family.empty() || !o.params.empty() || !o.spectrum.empty())
      throw usage_error("--fig1 takes no family, spectrum or parameter options");
    spec.family = qsep::Family::Rotation14;
    spec.grid = {{"phi", 0.0, std::numbers::pi, 401}};
  } else if (o.fig2) {
    if (!o.family.empty() || !o.spectrum.empty()) throw usage_error("--fig2 takes no family or spectrum");
    for (const auto& [k, v] : o.params)
      if (k != "d" && k != "f") throw usage_error("--fig2 accepts only --d and --f");
    if (o.params.count("d") != o.params.count("f")) throw usage_error("--fig2 needs both --d and --f or neither");
    spec.family = qsep::Family::FirstColumn;
    spec.grid = {{"a", 0.0, 1.0, 101}};
    if (o.params.empty()) {
      qsep::ScanResult all;
      for (auto [d, f] : std::array<std::pair<double, double>, 3>{{{0.6, 0.1}, {0.9, 0.1}, {0.1, 0.5}}}) {
        spec.fixed = {{"d", d}, {"f", f}};
        auto part = prefixed(qsep::sweep(spec, o.threads), d, f);
        if (all.param_names.empty()) all.param_names = part.param_names;
        all.rows.insert(all.rows.end(), part.rows.begin(), part.rows.end());
      }
      emit(qsep::to_csv(all), o.out);
      return 0;
    }
    spec.fixed = {{"d", parse_value(o.params["d"])}, {"f", parse_value(o.params["f"])}};
  } else {
    if (o.family.empty()) throw usage_error("scan needs --family, --fig1 or --fig2");
    spec.family = qsep::parse_family(o.family);
    if (!o.spectrum.empty()) spec.spectrum = parse_spectrum(o.spectrum);
    for (const auto& [k, v] : o.params) {
      const auto rv = parse_range_or_value(k, v);
      if (rv.axis)
        spec.grid.push_back(*rv.axis);
      else
        spec.fixed[k] = rv.value;
    }
  }

  if (o.boundaries) {
    const auto b = qsep::find_boundary(spec);
    json j = {{"schema_version", 1}, {"parameter", spec.grid.front().name}, {"boundaries", b}};
    emit(j.dump(2) + "\n", o.out);
    return 0;
  }
  const auto result = o.samples > 0 ? qsep::sample(spec, o.samples, o.seed, o.threads) : qsep::sweep(spec, o.threads);
  emit(qsep::to_csv(result), o.out);
  return 0;
}

struct WernerOpts {
  double p = 0.0;
  std::string phi = "0";
  bool boundaries = false;
  std::string curve;
  bool json = false;
  std::string save;
};

int run_werner(const WernerOpts& o) {
  qsep::require_werner_range(o.p);
  const double phi = parse_value(o.phi);
  const auto res = qsep::werner_pipeline(o.p, phi);
  if (!o.save.empty()) qsep::write_density_file(o.save, res.rotated);

  json j = {{"schema_version", 1}, {"p", o.p}, {"phi", phi}, {"report", qsep::to_json(res.report)}};

  std::optional<qsep::AngleWindow> computed;
  if (o.boundaries) {
    json b;
    if (o.p <= 1.0 / 3.0) {
      b["separable_for_all_phi"] = true;
      b["computed"] = nullptr;
    } else {
      const auto roots = qsep::werner_boundaries(o.p);
      if (roots.size() == 2) computed = qsep::AngleWindow{roots[0], roots[1]};
      b["separable_for_all_phi"] = false;
      b["computed"] = computed ? json{computed->lower, computed->upper} : json(nullptr);
    }
    const auto printed = qsep::printed_rotated_werner_window(o.p);
    b["published"] = printed ? json{printed->lower, printed->upper} : json(nullptr);
    b["published_note"] = "see errata";
    j["boundaries"] = b;
  }

  json curve = json::array();
  if (!o.curve.empty()) {
    const auto rv = parse_range_or_value("phi", o.curve);
    if (!rv.axis) throw usage_error("--curve needs start:stop:steps");
    for (std::size_t k = 0; k < rv.axis->steps; ++k) {
      const double x = rv.axis->at(k);
      const auto ppt = qsep::eigvalsh(qsep::partial_transpose(qsep::werner_pipeline(o.p, x).rotated));
      curve.push_back({{"phi", x}, {"ppt_spectrum", ppt}});
    }
    j["curve"] = curve;
  }

  if (o.json) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "p             " << fmt(o.p) << "\n"
            << "phi           " << fmt(phi) << "\n";
  print_report_table(std::cout, res.report);
  if (o.boundaries) {
    if (o.p <= 1.0 / 3.0) {
      std::cout << "window        separable for all phi\n";
    } else if (computed) {
      std::cout << "window        [" << fmt(computed->lower) << ", " << fmt(computed->upper) << "]\n";
    }
    const auto printed = qsep::printed_rotated_werner_window(o.p);
    if (printed)
      std::cout << "paper (see errata)  [" << fmt(printed->lower) << ", " << fmt(printed->upper) << "]\n";
    else
      std::cout << "paper (see errata)  undefined for this p\n";
  }
  if (!o.curve.empty()) {
    std::cout << "phi,ppt1,ppt2,ppt3,ppt4\n";
    for (const auto& c : curve) {
      std::cout << fmt(c["phi"].get<double>());
      for (const auto& v : c["ppt_spectrum"]) std::cout << "," << fmt(v.get<double>());
      std::cout << "\n";
    }
  }
  return 0;
}

struct PureOpts {
  std::map<std::string, std::string> params;
  std::vector<std::string> assignments;
  bool json = false;
  std::string save;
};

int run_pure(PureOpts o) {
  for (const auto& [k, v] : parse_assignments(o.assignments)) o.params[k] = v;
  qsep::ParamMap vals;
  for (const auto& p : qsep::family_parameters(qsep::Family::FirstColumn))
    if (p.default_value) vals[p.name] = *p.default_value;
  for (const auto& [k, v] : o.params) {
    if (!vals.count(k) && k != "a" && k != "d" && k != "f") throw usage_error("unknown parameter '" + k + "' for pure");
    vals[k] = parse_value(v);
  }
  for (const char* req : {"a", "d", "f"})
    if (!vals.count(req)) throw usage_error(std::string("missing required parameter '") + req + "'");

  qsep::UnitaryParams up;
  up.a = vals["a"];
  up.d = vals["d"];
  up.f = vals["f"];
  up.phi.phi11 = vals["phi11"];
  up.phi.phi21 = vals["phi21"];
  up.phi.phi31 = vals["phi31"];
  up.phi.phi41 = vals["phi41"];
  qsep::check_moduli(up);
  const auto col = qsep::first_column(up);
  const auto rho = qsep::pure_transform(col);
  const auto r = qsep::analyze(rho);
  if (!o.save.empty()) qsep::write_density_file(o.save, rho);
  const double det = std::abs(qsep::schmidt_determinant(col));

  if (o.json) {
    json c = json::array();
    for (const auto& z : col) c.push_back({z.real(), z.imag()});
    json j = {{"schema_version", 1}, {"column", c}, {"schmidt_determinant_abs", det}, {"report", qsep::to_json(r)}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "column        ";
  for (std::size_t i = 0; i < 4; ++i)
    std::cout << (i ? ", " : "") << "(" << fmt(col[i].real()) << ", " << fmt(col[i].imag()) << ")";
  std::cout << "\n|u11 u41 - u21 u31|  " << fmt(det) << "\n";
  print_report_table(std::cout, r);
  return 0;
}

struct ErrataOpts {
  std::uint64_t seed = 12345;
  int samples = 2000;
};

int run_errata(const ErrataOpts& o) {
  std::cout << qsep::errata_report(o.seed, o.samples).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Separability and entanglement of four-level states.\n"
      "Negativity is sum |ppt eigenvalue| - 1 (twice the (||rho^T_B||_1 - 1)/2 convention)."};
  app.require_subcommand(1);

  AnalyzeOpts ao;
  auto* analyze = app.add_subcommand("analyze", "Report PPT spectrum, negativity and concurrence of a density-matrix file");
  analyze->add_option("file", ao.file, "Density-matrix JSON file")->required();
  analyze->add_flag("--json", ao.json, "Machine-readable output");

  ScanOpts so;
  auto* scan = app.add_subcommand("scan", "Parameter sweep of a rotated diagonal state, CSV output");
  scan->set_help_flag("--help", "Print this help message and exit");
  scan->add_flag("--fig1", so.fig1, "Pure state, rotation14, phi in [0, pi], 401 nodes");
  scan->add_flag("--fig2", so.fig2, "Pure state, first-column family, a in [0, 1], 101 nodes (optionally --d, --f)");
  scan->add_option("--family", so.family, "rotation14 | first-column | xtype | cellular | block | generic");
  scan->add_option("--spectrum", so.spectrum, "l1,l2,l3,l4 (default 1,0,0,0)");
  for (const auto& name : all_param_names())
    scan->add_option("--" + name,
                     [&so, name](const CLI::results_t& r) {
                       so.params[name] = r.front();
                       return true;
                     },
                     "value or start:stop:steps");
  scan->add_option("assignments", so.assignments, "key=value or key=start:stop:steps");
  scan->add_option("--out", so.out, "CSV path (default stdout)");
  scan->add_option("--threads", so.threads, "Worker threads (0 = hardware)");
  scan->add_option("--samples", so.samples, "Random sampling with this many points instead of a grid");
  scan->add_option("--seed", so.seed, "Seed for --samples");
  scan->add_flag("--boundaries", so.boundaries, "Bisect separability boundaries along the single swept parameter");

  WernerOpts wo;
  auto* wer = app.add_subcommand("werner", "Werner state rotated in the (1,4) plane");
  wer->add_option("--p", wo.p, "Werner parameter in [-1/3, 1]")->required();
  wer->add_option("--phi", wo.phi, "Rotation angle (radians, pi allowed)");
  wer->add_flag("--boundaries", wo.boundaries, "Separable window in phi over [0, pi/2]");
  wer->add_option("--curve", wo.curve, "PPT eigenvalues over start:stop:steps in phi");
  wer->add_flag("--json", wo.json, "Machine-readable output");
  wer->add_option("--save", wo.save, "Write the rotated state to a density-matrix file");

  PureOpts po;
  auto* pure = app.add_subcommand("pure", "Pure state from the first column (a, d, f and four phases)");
  for (const char* name : {"a", "d", "f", "phi11", "phi21", "phi31", "phi41"}) {
    const std::string n = name;
    pure->add_option("--" + n,
                     [&po, n](const CLI::results_t& r) {
                       po.params[n] = r.front();
                       return true;
                     },
                     "value");
  }
  pure->add_option("assignments", po.assignments, "key=value");
  pure->add_flag("--json", po.json, "Machine-readable output");
  pure->add_option("--save", po.save, "Write the state to a density-matrix file");

  ErrataOpts eo;
  auto* errata = app.add_subcommand("errata", "Numeric evidence for inconsistencies in the published formulas (JSON)");
  errata->add_option("--seed", eo.seed, "Seed for sampled entries");
  errata->add_option("--samples", eo.samples, "Samples for sampled entries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*analyze) return run_analyze(ao);
    if (*scan) return run_scan(so);
    if (*wer) return run_werner(wo);
    if (*pure) return run_pure(po);
    if (*errata) return run_errata(eo);
  } catch (const qsep::not_converged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const qsep::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
