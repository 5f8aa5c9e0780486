#include "miquel_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "miquel/dimer.hpp"
#include "miquel/error.hpp"
#include "miquel/io.hpp"
#include "miquel/lattice.hpp"

namespace miquel::cli {

namespace {

using io::json;

struct Globals {
  bool json_out = false;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::string out;
};

struct Size {
  int rows = 0;
  int cols = 0;
};

Size parse_size(const std::string& s) {
  const auto x = s.find('x');
  Size out;
  try {
    if (x == std::string::npos) throw std::invalid_argument(s);
    std::size_t p1 = 0, p2 = 0;
    out.rows = std::stoi(s.substr(0, x), &p1);
    out.cols = std::stoi(s.substr(x + 1), &p2);
    if (p1 != x || p2 != s.size() - x - 1) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--size", "expected RxC, got '" + s + "'");
  }
  return out;
}

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(6);
  o << x;
  return o.str();
}

std::string fmt(const ExtendedComplex& z) {
  if (z.is_infinite()) return "inf";
  std::ostringstream o;
  o.precision(17);
  o << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return o.str();
}

// Either writes `text` to --out or appends it to the report.
void emit(const Globals& g, const std::string& text, std::string& report) {
  if (g.out.empty()) {
    report += text;
  } else {
    io::write_file_atomic(g.out, text);
  }
}

CommandResult finish(const Globals& g, const json& j, const std::string& text, int code) {
  return {code, g.json_out ? io::dump(j) : text};
}

FaceId face_arg(const CirclePattern& p, std::uint32_t face) {
  if (!p.graph().has_face(FaceId{face})) {
    throw Error(ErrorCode::InvalidInput, "no face " + std::to_string(face));
  }
  return FaceId{face};
}

CommandResult cmd_validate(const Globals& g, const std::string& file) {
  const json doc = io::read_file(file);
  json report{{"file", file}};
  std::ostringstream text;
  std::vector<std::string> problems;
  if (doc.contains("graph")) {
    const CirclePattern p = io::pattern_from_json(doc);
    for (const auto& v : validate_surface_graph(p.graph())) problems.push_back(to_string(v.kind) + ": " + v.detail);
    for (const auto& v : validate_pattern(p)) problems.push_back(to_string(v.kind) + ": " + v.detail);
    report["kind"] = "pattern";
  } else {
    const SurfaceGraph graph = io::graph_from_json(doc);
    for (const auto& v : validate_surface_graph(graph)) problems.push_back(to_string(v.kind) + ": " + v.detail);
    report["kind"] = "graph";
  }
  report["violations"] = problems;
  report["valid"] = problems.empty();
  text << file << ": " << (problems.empty() ? "valid" : "invalid") << "\n";
  for (const auto& s : problems) text << "  " << s << "\n";
  return finish(g, report, text.str(), problems.empty() ? kExitOk : kExitValidation);
}

CommandResult cmd_gen_pattern(const Globals& g, const std::string& size, bool kasteleyn, const std::string& surface,
                              double spread) {
  const Size sz = parse_size(size);
  GeneratorOptions o;
  o.surface = surface_from_string(surface);
  o.kasteleyn = kasteleyn;
  o.spread = spread;
  const CirclePattern p = generate_kasteleyn_cauchy_data(sz.rows, sz.cols, g.seed, o);
  std::string report;
  emit(g, io::dump(io::to_json(p)), report);
  if (!g.out.empty()) {
    const json j{{"out", g.out}, {"faces", p.graph().faces().size()}, {"vertices", p.graph().vertices().size()}};
    return finish(g, j, "wrote " + g.out + "\n", kExitOk);
  }
  return {kExitOk, report};
}

CommandResult cmd_star_ratios(const Globals& g, const std::string& file) {
  const json doc = io::read_file(file);
  const FaceDrawing d = io::drawing_from_json(doc);
  const StarRatioField field = pattern_star_ratios(d);
  bool real = true;
  std::ostringstream text;
  for (const auto& [f, z] : field.values) {
    const auto cls = field.classes.at(f);
    real = real && cls != StarRatioClass::generic;
    text << "face " << f.value << ": " << fmt(z) << " (" << to_string(cls) << ")\n";
  }
  text << (field.all_real_positive() ? "Kasteleyn: yes\n" : "Kasteleyn: no\n");
  const json j{{"star_ratios", io::to_json(field)}, {"all_real", real}, {"kasteleyn", field.all_real_positive()}};
  return finish(g, j, text.str(), real ? kExitOk : kExitValidation);
}

CommandResult cmd_miquel_move(const Globals& g, const std::string& file, std::uint32_t face) {
  const CirclePattern p = io::pattern_from_json(io::read_file(file));
  const FaceId f = face_arg(p, face);
  const CirclePattern q = miquel_move(p, f);
  const ExtendedComplex mob = mobius_mutation_move(p.centers(), f).at(f);
  const double gap = relative_distance(q.centers().at(f), mob);
  std::string report;
  emit(g, io::dump(io::to_json(q)), report);
  const json j{{"face", face}, {"new_center", io::to_json(q.centers().at(f))}, {"mobius_gap", gap}};
  if (g.out.empty()) return {kExitOk, report};
  return finish(g, j, "face " + std::to_string(face) + " moved to " + fmt(q.centers().at(f)) + " (Mobius gap " +
                          fmt(gap) + ")\n",
                kExitOk);
}

CommandResult cmd_clifford_move(const Globals& g, const std::string& file, std::uint32_t face) {
  const FaceDrawing d = io::drawing_from_json(io::read_file(file));
  if (!d.graph().has_face(FaceId{face})) throw Error(ErrorCode::InvalidInput, "no face " + std::to_string(face));
  const FaceId f{face};
  const FaceDrawing moved = mobius_mutation_move(d, f);
  const double tol = g.tol.value_or(1e-8);
  json j{{"face", face}, {"new_center", io::to_json(moved.at(f))}};
  std::string text = "face " + std::to_string(face) + " moved to " + fmt(moved.at(f)) + "\n";
  int code = kExitOk;
  try {
    const ExtendedComplex geometric = clifford_point_geometric(d, f);
    const double gap = relative_distance(geometric, moved.at(f));
    j["geometric_gap"] = gap;
    text += "geometric construction gap " + fmt(gap) + "\n";
    if (gap > tol) code = kExitValidation;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ConcyclicDegenerate) throw;
    j["geometric_gap"] = nullptr;
    text += "geometric construction skipped: concyclic neighbourhood\n";
  }
  std::string report;
  emit(g, io::dump(io::to_json(moved)), report);
  if (g.out.empty()) return {code, report};
  return finish(g, j, text, code);
}

// Largest gap between the moved centers and mob applied to the previous ones.
double recurrence_gap(const TorusPatternState& before, const TorusPatternState& after) {
  double gap = 0.0;
  for (const auto& [f, c] : before.face_class) {
    if (c != before.step_parity) continue;
    const auto q = quad_view(before.pattern.graph(), f);
    const auto n = neighbour_centers(before.pattern.centers(), q);
    const ExtendedComplex expected = mobius_mutation(n[0], n[1], n[2], n[3])(before.pattern.centers().at(f));
    gap = std::max(gap, relative_distance(expected, after.pattern.centers().at(f)));
  }
  return gap;
}

CommandResult cmd_dynamics(const Globals& g, int steps, const std::string& size, const std::string& input) {
  if (g.out.empty()) throw CLI::ValidationError("--out", "dynamics needs an output directory");
  if (steps < 0) throw CLI::ValidationError("--steps", "must be non-negative");
  CirclePattern start = input.empty() ? [&] {
    const Size sz = parse_size(size);
    return generate_kasteleyn_cauchy_data(sz.rows, sz.cols, g.seed);
  }()
                                      : io::pattern_from_json(io::read_file(input));
  const double tol = g.tol.value_or(1e-8);
  std::filesystem::create_directories(g.out);
  TorusPatternState s = make_torus_state(std::move(start));
  json trace = json::array();
  double worst = 0.0;
  for (int k = 0; k <= steps; ++k) {
    if (k > 0) {
      TorusPatternState next = miquel_dynamics_step(s);
      worst = std::max(worst, recurrence_gap(s, next));
      s = std::move(next);
    }
    char name[32];
    std::snprintf(name, sizeof name, "step_%03d.json", k);
    io::write_file_atomic((std::filesystem::path(g.out) / name).string(), io::dump(io::to_json(s.pattern)));
    trace.push_back(name);
  }
  io::write_file_atomic((std::filesystem::path(g.out) / "trace.json").string(), io::dump(trace));
  const int code = worst <= tol ? kExitOk : kExitValidation;
  const json j{{"steps", steps}, {"out", g.out}, {"recurrence_gap", worst}, {"tolerance", tol}};
  return finish(g, j,
                "wrote " + std::to_string(steps + 1) + " patterns to " + g.out + "; recurrence gap " + fmt(worst) + "\n",
                code);
}

CommandResult cmd_urban_renewal(const Globals& g, const std::string& file, std::uint32_t face, const std::string& after,
                                std::size_t max_vertices) {
  const CirclePattern p = io::pattern_from_json(io::read_file(file));
  const FaceId f = face_arg(p, face);
  const CirclePattern q = after.empty() ? miquel_move(p, f) : io::pattern_from_json(io::read_file(after));
  const double tol = g.tol.value_or(1e-9);
  const auto r = urban_renewal_check(p.graph(), weights_from_pattern(p), f, q.graph(), weights_from_pattern(q), tol,
                                     max_vertices);
  std::ostringstream text;
  if (!r.defined) {
    text << "partition function vanishes; probabilities undefined\n";
  } else {
    text << r.classes.size() << " classes, max discrepancy " << fmt(r.max_discrepancy) << " (tolerance " << fmt(tol)
         << "): " << (r.passed ? "PASS" : "FAIL") << "\n";
  }
  return finish(g, io::to_json(r), text.str(), r.defined && r.passed ? kExitOk : kExitValidation);
}

CommandResult cmd_clifford_config(const Globals& g) {
  const PencilSample pencil = random_pencil(g.seed);
  const CliffordConfiguration cfg = build_c4(pencil.base, pencil.circles);
  const double tol = g.tol.value_or(1e-8);
  const ShiftReport shift = verify_shift_identities(cfg);
  const CrossRatioReport cross = verify_cross_ratio_system(cfg);
  const double incidence = incidence_residual(cfg);
  const bool ok = shift.max() <= tol && cross.max() <= tol && incidence <= tol;
  const json checks{{"incidence", incidence},
                    {"point_shift", shift.point_shift},
                    {"circle_shift", shift.circle_shift},
                    {"vertex_star_ratio", shift.vertex_star_ratio},
                    {"center_star_ratio", shift.center_star_ratio},
                    {"map_independence", shift.map_independence},
                    {"opposite_faces", cross.opposite_faces},
                    {"tetrahedra", cross.tetrahedra},
                    {"menelaus", cross.menelaus},
                    {"tolerance", tol},
                    {"passed", ok}};
  if (!g.out.empty()) io::write_file_atomic(g.out, io::dump(io::to_json(cfg)));
  std::ostringstream text;
  for (const auto& [k, v] : checks.items()) {
    if (k == "passed") continue;
    text << k << ": " << fmt(v.get<double>()) << "\n";
  }
  text << (ok ? "PASS\n" : "FAIL\n");
  json j{{"checks", checks}};
  if (g.out.empty()) j["configuration"] = io::to_json(cfg);
  return finish(g, j, text.str(), ok ? kExitOk : kExitValidation);
}

CommandResult cmd_export_svg(const Globals& g, const std::string& file, const std::string& layers) {
  const CirclePattern p = io::pattern_from_json(io::read_file(file));
  std::string report;
  emit(g, export_svg(p, parse_layers(layers)), report);
  if (g.out.empty()) return {kExitOk, report};
  return finish(g, json{{"out", g.out}}, "wrote " + g.out + "\n", kExitOk);
}

int exit_code_for(ErrorCode code) {
  if (code == ErrorCode::OddDimensions) return kExitUsage;
  return is_numeric_degeneracy(code) ? kExitNumeric : kExitValidation;
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  CLI::App app{"Circle patterns, Miquel dynamics and dimer checks", "miquel"};
  app.require_subcommand(1, 1);
  Globals g;
  double tol = 0.0;
  app.add_flag("--json", g.json_out, "Machine-readable report");
  auto* tol_opt = app.add_option("--tol", tol, "Tolerance for the requested check")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--out", g.out, "Output file or directory");

  std::string file;
  std::string after;
  std::string size = "4x4";
  std::string surface = "torus";
  std::string layers = "circles,centers,edges";
  std::uint32_t face = 0;
  int steps = 1;
  double spread = 0.25;
  bool kasteleyn = false;
  std::size_t max_vertices = kDefaultMaxVertices;

  auto* validate = app.add_subcommand("validate", "Check a graph or pattern file");
  validate->add_option("file", file)->required();
  auto* gen = app.add_subcommand("gen-pattern", "Sample a random circle pattern");
  gen->add_option("--size", size, "RxC");
  gen->add_flag("--kasteleyn", kasteleyn, "Require positive star-ratios");
  gen->add_option("--surface", surface)->check(CLI::IsMember({"torus", "plane-patch"}));
  gen->add_option("--spread", spread, "Sampling width around the isoradial value");
  auto* star = app.add_subcommand("star-ratios", "Star-ratios of the centers");
  star->add_option("file", file)->required();
  auto* miquel = app.add_subcommand("miquel-move", "Apply the Miquel move at a face");
  miquel->add_option("file", file)->required();
  miquel->add_option("--face", face)->required();
  auto* clifford = app.add_subcommand("clifford-move", "Apply the Mobius mutation to the centers at a face");
  clifford->add_option("file", file)->required();
  clifford->add_option("--face", face)->required();
  auto* dyn = app.add_subcommand("dynamics", "Run Miquel dynamics on a torus");
  dyn->add_option("--steps", steps);
  dyn->add_option("--size", size, "RxC");
  dyn->add_option("--input", file, "Start from a pattern file");
  auto* renewal = app.add_subcommand("check-urban-renewal", "Compare dimer statistics across a Miquel move");
  renewal->add_option("file", file)->required();
  renewal->add_option("--face", face)->required();
  renewal->add_option("--after", after, "Pattern after the move (computed when omitted)");
  renewal->add_option("--max-vertices", max_vertices);
  auto* config = app.add_subcommand("clifford-config", "Random C4 configuration and its identities");
  auto* svg = app.add_subcommand("export-svg", "Render a pattern as SVG");
  svg->add_option("file", file)->required();
  svg->add_option("--layers", layers, "circles,centers,edges,dual")
      ->check(CLI::Validator(
          [](const std::string& spec) {
            try {
              parse_layers(spec);
            } catch (const Error& e) {
              return std::string(e.what());
            }
            return std::string();
          },
          "LAYERS"));
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {kExitOk, app.help()};
  } catch (const CLI::ParseError& e) {
    return {kExitUsage, std::string(e.what()) + "\n" + app.help()};
  }
  if (tol_opt->count() > 0) g.tol = tol;

  try {
    if (validate->parsed()) return cmd_validate(g, file);
    if (gen->parsed()) return cmd_gen_pattern(g, size, kasteleyn, surface, spread);
    if (star->parsed()) return cmd_star_ratios(g, file);
    if (miquel->parsed()) return cmd_miquel_move(g, file, face);
    if (clifford->parsed()) return cmd_clifford_move(g, file, face);
    if (dyn->parsed()) return cmd_dynamics(g, steps, size, file);
    if (renewal->parsed()) return cmd_urban_renewal(g, file, face, after, max_vertices);
    if (config->parsed()) return cmd_clifford_config(g);
    if (svg->parsed()) return cmd_export_svg(g, file, layers);
  } catch (const CLI::ValidationError& e) {
    return {kExitUsage, std::string(e.what()) + "\n"};
  } catch (const Error& e) {
    const json j{{"error", std::string(to_string(e.code()))}, {"detail", e.what()}};
    return {exit_code_for(e.code()),
            g.json_out ? io::dump(j) : std::string(e.what()) + "\n"};
  }
  return {kExitUsage, app.help()};
}

}  // namespace miquel::cli
