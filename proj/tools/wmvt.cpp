// wmvt: generalised Wronskians, divided differences and the determinant mean
// value theorem from the command line. Every command prints one JSON
// document on stdout; diagnostics go to stderr.
//
// Exit codes: 0 success, 1 residual above tolerance or suite failures,
// 2 parse/validation error, 3 domain error, 4 no root found,
// 5 regularity (or other hypothesis) failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wmvt/determinant.hpp"
#include "wmvt/divdiff.hpp"
#include "wmvt/errors.hpp"
#include "wmvt/expr.hpp"
#include "wmvt/io.hpp"
#include "wmvt/mvt.hpp"
#include "wmvt/nodes.hpp"
#include "wmvt/verify.hpp"

using namespace wmvt;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kAboveTolerance = 1, kInvalid = 2, kDomain = 3, kNoRoot = 4, kRegularity = 5 };

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

double to_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + s + "'");
  }
  while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
  if (used != s.size() || !std::isfinite(v)) throw ValidationError("not a number: '" + s + "'");
  return v;
}

/// Accepts repeated values and comma-separated lists alike.
std::vector<std::string> flatten(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const auto& a : args)
    for (auto& piece : split(a, ',')) out.push_back(piece);
  return out;
}

std::vector<double> numbers(const std::vector<std::string>& args) {
  std::vector<double> out;
  for (const auto& s : flatten(args)) out.push_back(to_number(s));
  return out;
}

/// "1,0;0,1" -> rows.
Eigen::MatrixXd parse_anchors(const std::string& text, int rows_expected) {
  const auto rows = split(text, ';');
  if (static_cast<int>(rows.size()) != rows_expected)
    throw ValidationError("--anchors: expected " + std::to_string(rows_expected) +
                          " rows (one per function)");
  std::vector<std::vector<double>> values;
  for (const auto& r : rows) values.push_back(numbers({r}));
  const auto cols = values.empty() ? 0 : values.front().size();
  Eigen::MatrixXd out(rows_expected, static_cast<Eigen::Index>(cols));
  for (int i = 0; i < rows_expected; ++i) {
    if (values[i].size() != cols) throw ValidationError("--anchors: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) out(i, static_cast<Eigen::Index>(j)) = values[i][j];
  }
  return out;
}

void emit(const json& doc) { std::cout << render(doc); }

int report_error(const char* kind, const std::exception& e, int code, json extra = json::object()) {
  std::cerr << "wmvt: " << kind << ": " << e.what() << "\n";
  json doc = {{"error", kind}, {"message", e.what()}};
  doc.update(extra);
  emit(doc);
  return code;
}

/// Maps library exceptions onto exit codes.
template <typename Body>
int guarded(Body body) {
  try {
    return body();
  } catch (const ParseError& e) {
    return report_error("parse_error", e, kInvalid, {{"offset", e.offset()}});
  } catch (const ValidationError& e) {
    return report_error("validation_error", e, kInvalid);
  } catch (const DimensionError& e) {
    return report_error("validation_error", e, kInvalid);
  } catch (const DomainError& e) {
    return report_error("domain_error", e, kDomain);
  } catch (const ConditioningError& e) {
    return report_error("conditioning_error", e, kDomain);
  } catch (const NoRootFound& e) {
    return report_error("no_root_found", e, kNoRoot,
                        {{"grid_min", e.grid_min()}, {"argmin", e.argmin()}});
  } catch (const RegularityError& e) {
    return report_error("regularity_failure", e, kRegularity, {{"failure", to_json(e.failure())}});
  } catch (const PreconditionError& e) {
    return report_error("precondition_failure", e, kRegularity);
  } catch (const std::invalid_argument& e) {
    return report_error("validation_error", e, kInvalid);
  }
}

int default_grid() {
  if (const char* env = std::getenv("WMVT_GRID")) {
    const int grid = std::atoi(env);
    if (grid >= 2) return grid;
    std::cerr << "wmvt: ignoring WMVT_GRID=" << env << "\n";
  }
  return MvtOptions{}.grid;
}

struct WdetArgs {
  std::vector<std::string> funcs;
  std::vector<std::string> nodes;
  std::string anchors;
  bool equilibrate = false;
};

int run_wdet(const WdetArgs& args) {
  std::vector<Expr> funcs;
  for (const auto& s : flatten(args.funcs)) funcs.push_back(parse(s));
  const auto pts = numbers(args.nodes);
  const int r = static_cast<int>(funcs.size());
  const Eigen::MatrixXd anchors = args.anchors.empty() ? Eigen::MatrixXd(r, 0)
                                                       : parse_anchors(args.anchors, r);
  if (anchors.cols() + static_cast<Eigen::Index>(pts.size()) != r)
    throw ValidationError("need len(funcs) = anchor columns + len(nodes)");
  const auto ns = normalize_nodes(pts);
  emit(to_json(anchored_det(funcs, anchors, ns, {args.equilibrate})));
  return kOk;
}

struct DivdiffArgs {
  std::string f;
  std::vector<std::string> points;
  std::string method = "det";
};

int run_divdiff(const DivdiffArgs& args) {
  const Expr f = parse(args.f);
  const auto pts = numbers(args.points);
  if (pts.empty()) throw ValidationError("--points: need at least one point");
  if (args.method == "det") {
    emit(to_json(divdiff_det(f, pts)));
  } else if (args.method == "rec") {
    emit(to_json(divdiff_recursive(f, pts)));
  } else {
    const auto det = divdiff_det(f, pts);
    const auto rec = divdiff_recursive(f, pts);
    emit({{"method", "both"},
          {"det", to_json(det)},
          {"rec", to_json(rec)},
          {"value", det.value},
          {"gap", std::abs(det.value - rec.value)},
          {"relative_gap", relative_gap(det.value, rec.value)}});
  }
  return kOk;
}

struct MvtArgs {
  std::string problem;
  std::string mode = "theorem1";
  int grid = 0;
  double tol = 1e-9;
};

int run_mvt(const MvtArgs& args) {
  const MvtMode mode = parse_mode(args.mode);
  const ProblemFile pf = load_problem(args.problem, mode);
  MvtOptions opts;
  opts.grid = args.grid > 0 ? args.grid : default_grid();
  opts.tol = args.tol;

  json doc;
  double residual = 0.0;
  switch (mode) {
    case MvtMode::Theorem1: {
      const MvtProblem prob(to_system(pf), parse(pf.f), parse(pf.g), pf.p, pf.q, pf.nodes);
      const auto cert = find_intermediate_point(prob, opts);
      doc = to_json(cert);
      residual = cert.residual;
      break;
    }
    case MvtMode::Theorem2: {
      std::vector<Expr> funcs;
      for (const auto& s : pf.funcs) funcs.push_back(parse(s));
      const Expr f = parse(pf.f), g = parse(pf.g);
      const MvtProblem prob =
          exterior_anchor_problem(funcs, f, g, pf.exterior, pf.nodes, *pf.interval,
                                  opts.regularity_grid);
      const auto cert = find_intermediate_point(prob, opts);
      const auto exterior = exterior_sides(funcs, f, g, pf.exterior, pf.nodes, cert.xi);
      doc = to_json(cert);
      doc["exterior_form"] = {{"lhs", exterior.lhs}, {"rhs", exterior.rhs}, {"residual", exterior.residual}};
      residual = std::max(cert.residual, exterior.residual);
      break;
    }
    case MvtMode::Cauchy: {
      const auto cert =
          cauchy_mvt(parse(pf.f), parse(pf.g), pf.interval->a, pf.interval->b, opts);
      doc = to_json(cert);
      residual = cert.residual;
      break;
    }
    case MvtMode::Taylor: {
      const auto r = taylor_mvt(parse(pf.f), *pf.a, *pf.x, *pf.k, opts);
      doc = to_json(r.certificate);
      doc["taylor_polynomial"] = r.taylor_polynomial;
      doc["remainder"] = r.remainder;
      doc["lagrange_term"] = r.lagrange_term;
      doc["display_residual"] = r.display_residual;
      residual = r.certificate.residual;
      break;
    }
    case MvtMode::RatzRussel: {
      const auto r = ratz_russel_mvt(parse(pf.f), parse(pf.g), pf.nodes, opts);
      doc = to_json(r.certificate);
      doc["divided_ratio"] = r.divided_ratio;
      doc["derivative_ratio"] = r.derivative_ratio;
      doc["dd_f"] = r.dd_f.value;
      doc["dd_g"] = r.dd_g.value;
      doc["gap"] = r.gap;
      residual = r.certificate.residual;
      break;
    }
  }
  doc["mode"] = to_string(mode);
  emit(doc);
  return residual <= args.tol ? kOk : kAboveTolerance;
}

struct VerifyArgs {
  std::string suite;
  std::uint64_t seed = 1;
  int cases = 100;
  bool timing = false;
};

int run_verify(const VerifyArgs& args) {
  const auto report = run_suite(args.suite, args.seed, args.cases);
  emit(to_json(report, args.timing));
  if (!report.pass())
    std::cerr << "wmvt: " << report.failures.size() << " failure(s) in suite " << report.suite
              << "\n";
  return report.pass() ? kOk : kAboveTolerance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalised Wronskians, divided differences and determinant mean value theorems"};
  app.require_subcommand(1);

  WdetArgs wdet;
  auto* wdet_cmd = app.add_subcommand("wdet", "Anchored (generalised) Wronski determinant");
  wdet_cmd->add_option("--funcs", wdet.funcs, "Functions, comma-separated or repeated")->required();
  wdet_cmd->add_option("--nodes", wdet.nodes, "Nodes, comma-separated or repeated")->required();
  wdet_cmd->add_option("--anchors", wdet.anchors, "Anchor rows, e.g. \"1,0;0,1;2,3\"");
  wdet_cmd->add_flag("--equilibrate", wdet.equilibrate, "Scale rows before factorising");

  DivdiffArgs dd;
  auto* dd_cmd = app.add_subcommand("divdiff", "Divided difference over (confluent) points");
  dd_cmd->add_option("--f", dd.f, "Function")->required();
  dd_cmd->add_option("--points", dd.points, "Points, comma-separated or repeated")->required();
  dd_cmd->add_option("--method", dd.method, "det, rec or both")
      ->check(CLI::IsMember({"det", "rec", "both"}));

  MvtArgs mvt;
  auto* mvt_cmd = app.add_subcommand("mvt", "Locate and certify the intermediate point");
  mvt_cmd->add_option("problem", mvt.problem, "Problem file (JSON)")->required();
  mvt_cmd->add_option("--mode", mvt.mode, "theorem1, theorem2, cauchy, taylor or ratz-russel")
      ->check(CLI::IsMember({"theorem1", "theorem2", "cauchy", "taylor", "ratz-russel"}));
  mvt_cmd->add_option("--grid", mvt.grid, "Scan grid size (default 1024 or $WMVT_GRID)")
      ->check(CLI::Range(2, 1 << 24));
  mvt_cmd->add_option("--tol", mvt.tol, "Residual tolerance")->check(CLI::PositiveNumber);

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Run a verification suite");
  ver_cmd->add_option("--suite", ver.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  ver_cmd->add_option("--seed", ver.seed, "Random seed");
  ver_cmd->add_option("--cases", ver.cases, "Number of cases")->check(CLI::NonNegativeNumber);
  ver_cmd->add_flag("--timing", ver.timing, "Include wall time (makes output run-dependent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "wmvt: " << e.what() << "\n";
    emit({{"error", "usage"}, {"message", e.what()}});
    return kInvalid;
  }

  if (*wdet_cmd) return guarded([&] { return run_wdet(wdet); });
  if (*dd_cmd) return guarded([&] { return run_divdiff(dd); });
  if (*mvt_cmd) return guarded([&] { return run_mvt(mvt); });
  return guarded([&] { return run_verify(ver); });
}
