#include "inner/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "inner/errors.hpp"
#include "inner/spec_io.hpp"
#include "inner/verifier.hpp"

namespace inner {

namespace {

struct Options {
  std::string spec_path;
  std::optional<double> phase_tol;
  std::optional<int> tail_terms;
  double map_tol = 1e-8;
  double window = kDefaultWindow;
  int samples = 256;
  std::uint64_t seed = 1;
  std::string out_dir;
  std::string control = "none";
};

std::string complex_text(std::complex<double> z) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string num(double x, int prec = 12) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(prec);
  os << x;
  return os.str();
}

SpecDocument load(const Options& o) {
  SpecDocument doc = load_document(o.spec_path);
  if (o.phase_tol) doc.truncation.phase_tol = *o.phase_tol;
  if (o.tail_terms) doc.truncation.tail_terms = *o.tail_terms;
  validate(doc.truncation);
  if (!(o.window > 0.0)) throw RangeError("--window must be positive");
  if (!(o.map_tol > 0.0)) throw RangeError("--map-tol must be positive");
  if (o.samples < 1) throw RangeError("--samples must be positive");
  return doc;
}

std::string limit_text(const std::optional<OneSidedLimit>& l) {
  if (!l) return "none";
  return complex_text(l->value) + " cert=" + num(l->radius, 3);
}

int cmd_classify(const Options& o, std::ostream& out) {
  const SpecDocument doc = load(o);
  const SpectrumReport rep = classify_intervals(doc.spec, doc.truncation, o.window);
  out << "singularities=" << rep.singularities.size() << " degree=" << rep.degree << "\n";
  for (const auto& s : rep.singularities) {
    out << "theta=" << num(s.theta) << " type=" << to_string(s.type);
    if (s.limit) out << " L=" << complex_text(s.limit->value) << " cert=" << num(s.limit->radius, 3);
    out << " causes=";
    for (std::size_t i = 0; i < s.causes.size(); ++i) out << (i ? "," : "") << to_string(s.causes[i]);
    out << "\n";
  }
  for (std::size_t j = 0; j < rep.intervals.size(); ++j) {
    const auto& iv = rep.intervals[j];
    out << "arc=" << j << " lo=" << num(iv.lo) << " hi=" << num(iv.hi) << " type=" << to_string(iv.type)
        << " lo_limit=" << limit_text(iv.lo_limit) << " hi_limit=" << limit_text(iv.hi_limit);
    if (iv.type == IntervalType::Type0) {
      out << " image=[";
      for (std::size_t i = 0; i < iv.type0_image.size(); ++i) out << (i ? "," : "") << num(iv.type0_image[i].theta);
      out << "]" << (iv.image_certified ? "" : " image_certified=false");
    }
    out << "\n";
  }
  return 0;
}

int cmd_group(const Options& o, std::ostream& out) {
  const SpecDocument doc = load(o);
  const SpectrumReport rep = classify_intervals(doc.spec, doc.truncation, o.window);
  const GroupDescriptor g = compute_group(labels_from_report(rep));
  out << "n=" << g.n << " k=" << g.k << " d=" << g.d << " iso=" << g.iso_label << "\n";
  out << "presentation=" << g.presentation << "\n";
  out << "type2_indices=";
  for (std::size_t i = 0; i < g.type2_indices.size(); ++i) out << (i ? "," : "") << g.type2_indices[i];
  out << "\nrotation_action=";
  for (std::size_t i = 0; i < g.rotation_action.size(); ++i) out << (i ? "," : "") << g.rotation_action[i] + 1;
  out << "\n";
  return 0;
}

std::vector<CircleMap> generator_maps(const std::shared_ptr<const MapAtlas>& at) {
  std::vector<CircleMap> gens;
  const GroupDescriptor& g = at->group;
  for (int i = 0; i < g.k; ++i)
    gens.push_back(realize(at, shift_generator(g, i)).rename("x" + std::to_string(i + 1)));
  if (g.d > 1) gens.push_back(realize(at, rotation_generator(g)).rename("y"));
  return gens;
}

// Writes to <out_dir>/<name>.csv, or to `out` under a heading when no directory is set.
template <class F>
void with_csv_stream(const Options& o, const std::string& name, std::ostream& out, F&& body) {
  if (o.out_dir.empty()) {
    out << "# " << name << "\n";
    body(out);
    return;
  }
  std::filesystem::create_directories(o.out_dir);
  const auto path = std::filesystem::path(o.out_dir) / (name + ".csv");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  body(f);
  out << "wrote " << path.string() << "\n";
}

int cmd_maps(const Options& o, std::ostream& out) {
  const SpecDocument doc = load(o);
  const auto at = build_atlas(doc.spec, doc.truncation, o.window);
  for (const CircleMap& m : generator_maps(at)) {
    std::vector<double> pts = sample_domain(m, o.samples, o.seed);
    std::sort(pts.begin(), pts.end());
    const auto xs = apply_batch(m, pts);
    const auto errs = invariance_errors(*at->fn, m, pts);
    with_csv_stream(o, m.name(), out, [&](std::ostream& os) {
      CsvWriter w(os, {"theta", "x_theta", "theta_err_cert"});
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (!std::isnan(xs[i])) w.row({pts[i], xs[i], errs[i]});
    });
  }
  return 0;
}

int cmd_emit(const Options& o, std::ostream& out) {
  const SpecDocument doc = load(o);
  auto fn = std::make_shared<const InnerFunction>(doc.spec, doc.truncation);
  const auto& sing = fn->singularities();
  const std::size_t arcs = sing.empty() ? 1 : sing.size();
  for (std::size_t j = 0; j < arcs; ++j) {
    const double lo = sing.empty() ? 0.0 : sing[j];
    const double L = arcs == 1 ? kTwoPi : ccw_distance(sing[j], sing[(j + 1) % arcs]);
    const PhaseChart chart = build_phase_chart(fn, Arc{lo, L}, o.window);
    with_csv_stream(o, "arc" + std::to_string(j), out, [&](std::ostream& os) {
      CsvWriter w(os, {"theta", "arg_theta_unwrapped", "derivative"});
      for (std::size_t i = 0; i < chart.u.size(); ++i)
        w.row({lo + chart.u[i], chart.phi[i], chart.phase->derivative(chart.u[i])});
    });
  }
  return 0;
}

// Arc transfer by the smallest rotation that does not preserve the labels.
CircleMap wrong_rotation(const std::shared_ptr<const MapAtlas>& at) {
  const int n = at->arcs();
  const auto valid = valid_rotations(at->labels);
  for (int r = 1; r < n; ++r)
    if (std::find(valid.begin(), valid.end(), r) == valid.end())
      return CircleMap::transfer(at, r, std::vector<long long>(n, 0)).rename("wrong_rotation");
  throw InvalidArgument("every rotation of the arcs is valid for this spec");
}

void print_report(const CheckReport& r, std::ostream& out) {
  out << (r.passed ? "PASS " : "FAIL ") << r.name << " max_error=" << num(r.max_error, 3)
      << " tol=" << num(r.tolerance, 3) << " samples=" << r.samples << " seed=" << r.seed << "\n";
  for (const auto& d : r.details) out << "  " << d << "\n";
}

int cmd_verify(const Options& o, std::ostream& out) {
  const SpecDocument doc = load(o);
  const auto at = build_atlas(doc.spec, doc.truncation, o.window);
  std::vector<CheckReport> reports;
  reports.push_back(check_phase_derivative(*at->fn, 100, o.seed));
  reports.push_back(check_garnett_identity(50, o.seed));

  std::vector<CircleMap> maps;
  if (o.control == "none")
    maps = generator_maps(at);
  else if (o.control == "perturbed")
    maps.push_back(perturbed_rotation(0.01, at->singular));
  else if (o.control == "folded")
    maps.push_back(folded_map(0.3));
  else if (o.control == "wrong-rotation")
    maps.push_back(wrong_rotation(at));
  else
    throw SchemaError("--control: expected none, perturbed, folded or wrong-rotation");

  for (const CircleMap& m : maps) {
    reports.push_back(check_invariance(*at->fn, m, o.samples, o.map_tol, o.seed));
    reports.push_back(check_bijection(m, o.samples, o.seed));
  }
  if (o.control == "none") {
    reports.push_back(check_relations(at, 1e-7, std::max(8, o.samples / std::max(1, at->arcs())), o.seed));
    reports.push_back(check_homomorphism(at, 20, 32, 1e-7, o.seed));
  }
  bool ok = true;
  for (const auto& r : reports) {
    print_report(r, out);
    ok = ok && r.passed;
  }
  out << (ok ? "all checks passed" : "verification failed") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boundary singularities and invariant maps of inner functions", "innerfn"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("spec", o.spec_path, "JSON spec document")->required();
    sub->add_option("--phase-tol", o.phase_tol, "truncation phase tolerance");
    sub->add_option("--tail-terms", o.tail_terms, "terms kept per tail family");
    sub->add_option("--window", o.window, "phase window around each arc midpoint (radians)");
  };
  auto* classify = app.add_subcommand("classify", "classify singularities and arcs");
  auto* group = app.add_subcommand("group", "compute the invariant group");
  auto* maps = app.add_subcommand("maps", "sample the generator maps as CSV");
  auto* verify = app.add_subcommand("verify", "run the property checks");
  auto* emit = app.add_subcommand("emit", "write phase charts as CSV");
  for (auto* s : {classify, group, maps, verify, emit}) add_common(s);
  for (auto* s : {maps, emit}) s->add_option("--out", o.out_dir, "output directory for CSV files");
  for (auto* s : {maps, verify}) {
    s->add_option("--samples", o.samples, "samples per map");
    s->add_option("--seed", o.seed, "random seed");
    s->add_option("--map-tol", o.map_tol, "invariance tolerance");
  }
  verify->add_option("--control", o.control, "negative control: none, perturbed, folded, wrong-rotation")
      ->check(CLI::IsMember({"none", "perturbed", "folded", "wrong-rotation"}));

  std::vector<std::string> storage{"innerfn"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (classify->parsed()) return cmd_classify(o, out);
    if (group->parsed()) return cmd_group(o, out);
    if (maps->parsed()) return cmd_maps(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (emit->parsed()) return cmd_emit(o, out);
  } catch (const SpecError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace inner
