#include "qdesign/cli.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qdesign/constructions.hpp"
#include "qdesign/errors.hpp"
#include "qdesign/io.hpp"
#include "qdesign/mc_oracle.hpp"
#include "qdesign/moments.hpp"
#include "qdesign/reference_values.hpp"
#include "qdesign/registry.hpp"
#include "qdesign/simplex.hpp"
#include "qdesign/tomography.hpp"

namespace qdesign::cli {

namespace {

using io::Json;

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

Json read_json(const std::string& path, Streams& s) {
  if (path == "-") return io::parse(s.in, "stdin");
  std::ifstream f(path);
  if (!f) throw Error("cannot open '" + path + "'");
  return io::parse(f, path);
}

void write_text(const std::string& path, const std::string& text, Streams& s) {
  if (path == "-") {
    s.out << text;
    s.out.flush();
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
}

void write_json(const std::string& path, const Json& j, Streams& s) {
  write_text(path, j.dump() + "\n", s);
}

std::string fmt(double x, int precision = 17) {
  std::ostringstream o;
  o << std::setprecision(precision) << x + 0.0;
  return o.str();
}

std::string sci(double x) {
  std::ostringstream o;
  o << std::scientific << std::setprecision(3) << x;
  return o.str();
}

Json real_matrix(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("QDESIGN_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw SchemaError(std::string("QDESIGN_SEED is not an unsigned integer: '") + env + "'");
  }
  return mc::kDefaultSeed;
}

Ensemble load_ensemble(const std::string& path, double tolerance, Streams& s) {
  auto doc = io::document_from_json(read_json(path, s), tolerance);
  if (auto* e = std::get_if<Ensemble>(&doc)) return *e;
  throw SchemaError("'" + path + "' is not an ensemble document");
}

// Bring a two-qubit pure ensemble down to the qubit ball; qubit ensembles pass.
Ensemble as_qubit_ensemble(const Ensemble& e) {
  if (e.dim() == 2) return e;
  if (e.dim() == 4) return reduce(e, Side::B);
  throw DimensionError("expected a qubit or two-qubit ensemble, got dimension " + std::to_string(e.dim()));
}

std::string normalize_label(std::string_view s) {
  std::string out;
  for (char c : s)
    if (std::isalnum(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

struct TableLine {
  std::string label;
  std::vector<double> computed;
  std::optional<std::vector<double>> published;
  bool ok = true;
};

bool matches(double computed, double published) {
  if (published == 0.0) return std::abs(computed) <= reference::kTableZeroTolerance;
  return std::abs(computed - published) / std::abs(published) <= reference::kTableRelativeTolerance;
}

TableLine table_line(std::string label, const Ensemble& qubits, const reference::ResidualRow* row,
                     int first_t, int count) {
  TableLine line{std::move(label), {}, std::nullopt, true};
  for (int k = 0; k < count; ++k) line.computed.push_back(delta_mixed(qubits, first_t + k).delta);
  if (row) {
    std::vector<double> pub(row->delta.begin(), row->delta.begin() + count);
    for (int k = 0; k < count; ++k) line.ok = line.ok && matches(line.computed[static_cast<std::size_t>(k)], pub[static_cast<std::size_t>(k)]);
    line.published = std::move(pub);
  }
  return line;
}

int cmd_table(int which, const std::vector<std::string>& ingests, bool as_json, Streams& s) {
  if (which != 2 && which != 3) throw UnsupportedError("table must be 2 or 3");
  const auto& rows = which == 2 ? reference::kReducedDesigns : reference::kPlatonicDesigns;
  const int first_t = which == 2 ? 1 : 2;
  const int count = which == 2 ? 5 : 4;

  std::vector<TableLine> lines;
  for (const auto& row : rows) {
    if (row.construction.empty()) continue;
    const auto doc = construct_named(row.construction);
    lines.push_back(table_line(std::string(row.label), as_qubit_ensemble(std::get<Ensemble>(doc)),
                               &row, first_t, count));
  }
  for (const auto& spec : ingests) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw SchemaError("--ingest expects label=path, got '" + spec + "'");
    const std::string label = spec.substr(0, eq);
    const reference::ResidualRow* match = nullptr;
    for (const auto& row : rows) {
      const auto a = normalize_label(row.label), b = normalize_label(label);
      if (!b.empty() && a.rfind(b, 0) == 0) match = &row;
    }
    const Ensemble e = as_qubit_ensemble(load_ensemble(spec.substr(eq + 1), tol::kNorm, s));
    lines.push_back(table_line(match ? std::string(match->label) : label, e, match, first_t, count));
  }

  bool all_ok = true;
  for (const auto& l : lines) all_ok = all_ok && l.ok;

  if (as_json) {
    Json rowsj = Json::array();
    for (const auto& l : lines) {
      Json r{{"label", l.label}, {"t_first", first_t}, {"delta", l.computed}, {"ok", l.ok}};
      if (l.published) r["published"] = *l.published;
      rowsj.push_back(std::move(r));
    }
    write_json("-", Json{{"table", which}, {"rows", rowsj}, {"ok", all_ok}}, s);
  } else {
    std::ostringstream o;
    o << std::left << std::setw(24) << "t";
    for (int k = 0; k < count; ++k) o << std::setw(12) << first_t + k;
    o << "status\n";
    for (const auto& l : lines) {
      o << std::setw(24) << l.label;
      for (double d : l.computed) o << std::setw(12) << (std::abs(d) <= reference::kTableZeroTolerance ? std::string("0") : sci(d));
      o << (l.published ? (l.ok ? "ok" : "DEVIATES") : "no reference") << "\n";
      if (l.published) {
        o << std::setw(24) << "  published";
        for (double d : *l.published) o << std::setw(12) << (d == 0.0 ? std::string("0") : sci(d));
        o << "\n";
      }
    }
    write_text("-", o.str(), s);
  }
  if (!all_ok) s.err << "table " << which << ": computed residuals deviate from the published values\n";
  return all_ok ? kOk : kFailure;
}

int cmd_verify(const std::string& path, const std::string& type, const std::vector<int>& ts,
               double tolerance, bool strict, const std::string& output, Streams& s) {
  const Json doc_json = read_json(path, s);
  const auto doc = io::document_from_json(doc_json, std::max(tolerance, tol::kNorm));
  Json reports = Json::array();
  bool all = true;
  const VerifyOptions opts{tolerance, Execution::parallel};

  auto orders = ts;
  if (type == "mixed" || type == "projective" || type == "unitary") {
    if (orders.empty()) orders = {1, 2, 3};
    for (int t : orders) {
      Json r;
      if (type == "unitary") {
        const auto* u = std::get_if<UnitarySet>(&doc);
        if (!u) throw SchemaError("--type unitary needs a unitary document");
        const auto rep = frame_potential_unitary(*u, t, opts);
        r = io::to_json(rep);
        all = all && rep.is_design;
      } else {
        const auto* e = std::get_if<Ensemble>(&doc);
        if (!e) throw SchemaError("--type " + type + " needs an ensemble document");
        if (type == "mixed") {
          const auto rep = delta_mixed(*e, t, opts);
          r = io::to_json(rep);
          all = all && rep.is_design;
        } else {
          if (e->kind() != EnsembleKind::pure) throw SchemaError("--type projective needs a pure ensemble");
          const auto rep = frame_potential_projective(*e, t, opts);
          r = io::to_json(rep);
          all = all && rep.is_design;
        }
      }
      reports.push_back(std::move(r));
    }
  } else if (type == "simplicial") {
    const auto* d = std::get_if<SimplexDesign>(&doc);
    if (!d) throw SchemaError("--type simplicial needs a simplex document");
    if (orders.empty()) orders = {d->order};
    for (int t : orders) {
      const auto rep = verify_simplicial(*d, t, tolerance);
      reports.push_back(io::to_json(rep));
      all = all && rep.is_design;
    }
  } else {
    throw SchemaError("unknown --type '" + type + "'");
  }
  write_json(output, Json{{"type", type}, {"reports", reports}, {"is_design", all}}, s);
  if (strict && !all) {
    s.err << "verify: not a " << type << " design at every requested order\n";
    return kUnverified;
  }
  return kOk;
}

std::vector<double> read_probabilities(const std::string& path, Streams& s) {
  const Json j = read_json(path, s);
  const Json& arr = j.is_object() && j.contains("probabilities") ? j.at("probabilities") : j;
  if (!arr.is_array()) throw SchemaError("probabilities must be a JSON array");
  try {
    return arr.get<std::vector<double>>();
  } catch (const Json::exception&) {
    throw SchemaError("probabilities must be numbers");
  }
}

DensityMatrix read_state(const std::string& path, double tolerance, Streams& s) {
  const Json j = read_json(path, s);
  if (j.is_object() && j.contains("matrix") && !j.contains("members"))
    return DensityMatrix(io::matrix_from_json(j.at("matrix")), std::max(tolerance, tol::kHermitian));
  if (j.is_object() && j.contains("vector") && !j.contains("members"))
    return DensityMatrix::from_pure(PureState(io::vector_from_json(j.at("vector")), std::nullopt,
                                              std::max(tolerance, tol::kNorm)));
  const Ensemble e = io::ensemble_from_json(j, tolerance);
  if (e.size() != 1) throw SchemaError("state file must hold a single state");
  return e.densities().front();
}

void write_bloch(const Ensemble& e, const std::string& format, bool merge, const std::string& output,
                 Streams& s) {
  if (e.dim() != 2) throw DimensionError("export-bloch needs a qubit ensemble (reduce first)");
  std::vector<BlochPoint> pts;
  for (std::size_t i = 0; i < e.size(); ++i) pts.push_back(bloch_point(e.densities()[i], e.weight(i)));
  if (merge) pts = merge_points(pts);
  if (format == "csv") {
    std::ostringstream o;
    o << "x,y,z,weight,purity\n";
    for (const auto& p : pts)
      o << fmt(p.coords.x()) << ',' << fmt(p.coords.y()) << ',' << fmt(p.coords.z()) << ','
        << fmt(p.weight) << ',' << fmt(0.5 + 2.0 * p.coords.squaredNorm()) << '\n';
    write_text(output, o.str(), s);
  } else if (format == "json") {
    Json arr = Json::array();
    for (const auto& p : pts)
      arr.push_back({{"x", p.coords.x()},
                     {"y", p.coords.y()},
                     {"z", p.coords.z()},
                     {"weight", p.weight},
                     {"purity", 0.5 + 2.0 * p.coords.squaredNorm()}});
    write_json(output, Json{{"points", arr}}, s);
  } else {
    throw SchemaError("--format must be csv or json");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Streams s{in, out, err};
  CLI::App app{"Construct and verify quantum designs", "qdesign"};
  app.require_subcommand(1);

  std::string input = "-", output = "-";
  double tolerance = tol::kDesign;

  auto* list = app.add_subcommand("list", "Print the names of built-in constructions");

  std::string name, config_path;
  auto* construct = app.add_subcommand("construct", "Build a named design");
  construct->add_option("name", name, "Construction name (see `list`)")->required();
  construct->add_option("-o,--output", output, "Output path ('-' for stdout)");
  construct->add_option("--config", config_path, "JSON configuration (product, platonic mixing)");

  std::string type = "mixed";
  std::vector<int> ts;
  bool strict = false;
  auto* verify = app.add_subcommand("verify", "Check a document against a design criterion");
  verify->add_option("input", input, "Document path ('-' for stdin)");
  verify->add_option("--type", type, "mixed | projective | unitary | simplicial")
      ->check(CLI::IsMember({"mixed", "projective", "unitary", "simplicial"}));
  verify->add_option("-t,--t", ts, "Orders, comma separated")->delimiter(',');
  verify->add_option("--tolerance", tolerance, "Design tolerance");
  verify->add_flag("--strict", strict, "Exit 3 unless every order passes");
  verify->add_option("-o,--output", output, "Output path");

  std::string side = "B";
  auto* reduce_cmd = app.add_subcommand("reduce", "Partial trace of every member");
  reduce_cmd->add_option("input", input, "Ensemble path");
  reduce_cmd->add_option("--side", side, "Subsystem traced out")->check(CLI::IsMember({"A", "B"}));
  reduce_cmd->add_option("-o,--output", output, "Output path");

  int order = 0;
  auto* decohere_cmd = app.add_subcommand("decohere", "Diagonal of every pure member");
  decohere_cmd->add_option("input", input, "Pure ensemble path");
  decohere_cmd->add_option("--order", order, "Order recorded in the simplex document");
  decohere_cmd->add_option("-o,--output", output, "Output path");

  std::string design_path, probs_path, state_path;
  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Linear-inversion tomography");
  reconstruct_cmd->add_option("design", design_path, "Mixed-state 2-design ensemble")->required();
  reconstruct_cmd->add_option("probabilities", probs_path, "JSON array of outcome probabilities")->required();
  reconstruct_cmd->add_option("--tolerance", tolerance, "Design tolerance");
  reconstruct_cmd->add_option("-o,--output", output, "Output path");

  auto* measure_cmd = app.add_subcommand("measure", "Outcome probabilities of a state");
  measure_cmd->add_option("design", design_path, "Mixed-state 2-design ensemble")->required();
  measure_cmd->add_option("state", state_path, "State document")->required();
  measure_cmd->add_option("--tolerance", tolerance, "Design tolerance");
  measure_cmd->add_option("-o,--output", output, "Output path");

  int table_no = 2;
  std::vector<std::string> ingests;
  bool table_json = false;
  auto* table = app.add_subcommand("table", "Recompute the published residual tables");
  table->add_option("which", table_no, "2 (reduced designs) or 3 (Platonic designs)")->required();
  table->add_option("--ingest", ingests, "label=path of an extra two-qubit or qubit ensemble");
  table->add_flag("--json", table_json, "Emit JSON instead of text");

  std::string format = "csv";
  bool no_merge = false;
  auto* bloch = app.add_subcommand("export-bloch", "Bloch coordinates of a qubit ensemble");
  bloch->add_option("input", input, "Qubit ensemble path");
  bloch->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  bloch->add_flag("--no-merge", no_merge, "Keep coincident points separate");
  bloch->add_option("-o,--output", output, "Output path");

  int dim = 2, t_omega = 2;
  std::size_t count = 1000;
  std::optional<std::uint64_t> seed;
  auto* sample = app.add_subcommand("sample-hs", "Hilbert-Schmidt random density matrices");
  sample->add_option("--dim", dim, "Dimension");
  sample->add_option("--count", count, "Number of samples");
  sample->add_option("--seed", seed, "Seed (overrides QDESIGN_SEED)");
  sample->add_option("-o,--output", output, "Output path");

  auto* omega_cmd = app.add_subcommand("estimate-omega", "Monte-Carlo estimate of the HS moment operator");
  omega_cmd->add_option("--dim", dim, "Dimension");
  omega_cmd->add_option("-t,--t", t_omega, "Order");
  omega_cmd->add_option("--count", count, "Number of samples");
  omega_cmd->add_option("--seed", seed, "Seed (overrides QDESIGN_SEED)");
  omega_cmd->add_option("-o,--output", output, "Output path");

  std::vector<std::string> argv_store{"qdesign"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kSchema;
  }

  try {
    if (list->parsed()) {
      for (const auto& n : registry_names()) out << n << "\n";
      return kOk;
    }
    if (construct->parsed()) {
      const Json config = config_path.empty() ? Json::object() : read_json(config_path, s);
      write_json(output, io::to_json(construct_named(name, config)), s);
      return kOk;
    }
    if (verify->parsed()) return cmd_verify(input, type, ts, tolerance, strict, output, s);
    if (reduce_cmd->parsed()) {
      const Ensemble e = load_ensemble(input, tol::kNorm, s);
      write_json(output, io::to_json(reduce(e, side == "A" ? Side::A : Side::B)), s);
      return kOk;
    }
    if (decohere_cmd->parsed()) {
      const Ensemble e = load_ensemble(input, tol::kNorm, s);
      if (e.kind() != EnsembleKind::pure) throw SchemaError("decohere needs a pure ensemble");
      write_json(output, io::to_json(decohere(e, order)), s);
      return kOk;
    }
    if (reconstruct_cmd->parsed() || measure_cmd->parsed()) {
      const auto design = PovmDesign::from_ensemble(load_ensemble(design_path, tol::kNorm, s), tolerance);
      if (measure_cmd->parsed()) {
        const auto p = design.probabilities(read_state(state_path, tol::kNorm, s));
        write_json(output, Json{{"probabilities", p}}, s);
        return kOk;
      }
      const auto r = design.reconstruct(read_probabilities(probs_path, s));
      write_json(output,
                 Json{{"rho", io::matrix_to_json(r.rho)},
                      {"min_eigenvalue", r.min_eigenvalue},
                      {"consistent", r.consistent}},
                 s);
      if (!r.consistent)
        err << "reconstruct: statistics inconsistent with a state (min eigenvalue "
            << r.min_eigenvalue << ")\n";
      return kOk;
    }
    if (table->parsed()) return cmd_table(table_no, ingests, table_json, s);
    if (bloch->parsed()) {
      write_bloch(load_ensemble(input, tol::kNorm, s), format, !no_merge, output, s);
      return kOk;
    }
    if (sample->parsed()) {
      const mc::SamplerConfig cfg{dim, count, resolve_seed(seed)};
      write_json(output, io::to_json(Ensemble::from_mixed(mc::sample_hs(cfg))), s);
      return kOk;
    }
    if (omega_cmd->parsed()) {
      const mc::SamplerConfig cfg{dim, count, resolve_seed(seed)};
      auto est = mc::estimate_omega(cfg, t_omega);
      est.compare(omega(dim, t_omega, true).dense());
      write_json(output,
                 Json{{"dim", dim},
                      {"t", t_omega},
                      {"count", count},
                      {"seed", cfg.seed},
                      {"max_deviation", est.max_deviation},
                      {"max_z", est.max_z},
                      {"within_3_sigma", est.max_z <= 3.0},
                      {"mean", io::matrix_to_json(est.mean)},
                      {"sigma_re", real_matrix(est.sigma_re)},
                      {"sigma_im", real_matrix(est.sigma_im)}},
                 s);
      return kOk;
    }
  } catch (const UnverifiedDesignError& e) {
    err << "error: " << e.what() << " [delta = " << e.delta() << "]\n";
    return kUnverified;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kCapacity;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kSchema;
  } catch (const InvariantError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kSchema;
  } catch (const DimensionError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kSchema;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace qdesign::cli
