#include "wmvt/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

namespace wmvt {

using nlohmann::json;

namespace {

constexpr std::array kKnownKeys = {"m",  "k", "funcs",    "anchors", "f", "g",          "p",
                                   "q",  "nodes", "interval", "exterior", "a", "x", "description"};

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ValidationError(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ValidationError(where + ": not finite");
  return d;
}

std::vector<double> numbers(const json& v, const std::string& where) {
  if (!v.is_array()) throw ValidationError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) throw ValidationError(where + ": expected an expression string");
  return v.get<std::string>();
}

int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ValidationError(where + ": expected an integer");
  return v.get<int>();
}

const json& required(const json& doc, const char* key, MvtMode mode) {
  if (!doc.contains(key))
    throw ValidationError(std::string("missing field \"") + key + "\" (required in " +
                          to_string(mode) + " mode)");
  return doc.at(key);
}

Eigen::VectorXd vector_field(const json& doc, const char* key, int size) {
  if (!doc.contains(key)) {
    if (size == 0) return Eigen::VectorXd(0);
    throw ValidationError(std::string("missing field \"") + key + "\"");
  }
  const auto v = numbers(doc.at(key), key);
  if (static_cast<int>(v.size()) != size)
    throw ValidationError(std::string(key) + ": expected " + std::to_string(size) + " entries");
  return Eigen::Map<const Eigen::VectorXd>(v.data(), size);
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

MvtMode parse_mode(std::string_view t) {
  if (t == "theorem1") return MvtMode::Theorem1;
  if (t == "theorem2") return MvtMode::Theorem2;
  if (t == "cauchy") return MvtMode::Cauchy;
  if (t == "taylor") return MvtMode::Taylor;
  if (t == "ratz-russel") return MvtMode::RatzRussel;
  throw ValidationError("unknown mode: " + std::string(t));
}

const char* to_string(MvtMode mode) {
  switch (mode) {
    case MvtMode::Theorem1: return "theorem1";
    case MvtMode::Theorem2: return "theorem2";
    case MvtMode::Cauchy: return "cauchy";
    case MvtMode::Taylor: return "taylor";
    case MvtMode::RatzRussel: return "ratz-russel";
  }
  return "?";
}

ProblemFile parse_problem(const json& doc, MvtMode mode) {
  if (!doc.is_object()) throw ValidationError("problem file must be a JSON object");
  for (const auto& item : doc.items()) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), item.key()) == kKnownKeys.end())
      throw ValidationError("unknown field \"" + item.key() + "\"");
  }

  ProblemFile pf;
  if (doc.contains("m")) pf.m = integer(doc["m"], "m");
  if (doc.contains("k")) pf.k = integer(doc["k"], "k");
  if (pf.m && *pf.m < 0) throw ValidationError("m: must be >= 0");
  if (pf.k && *pf.k < 1) throw ValidationError("k: must be >= 1");
  if (doc.contains("funcs")) {
    const json& fs = doc["funcs"];
    if (!fs.is_array()) throw ValidationError("funcs: expected an array of expression strings");
    for (std::size_t i = 0; i < fs.size(); ++i)
      pf.funcs.push_back(text(fs[i], "funcs[" + std::to_string(i) + "]"));
  }
  if (doc.contains("f")) pf.f = text(doc["f"], "f");
  if (doc.contains("g")) pf.g = text(doc["g"], "g");
  if (doc.contains("nodes")) pf.nodes = numbers(doc["nodes"], "nodes");
  if (doc.contains("exterior")) pf.exterior = numbers(doc["exterior"], "exterior");
  if (doc.contains("interval")) {
    const auto iv = numbers(doc["interval"], "interval");
    if (iv.size() != 2 || !(iv[0] < iv[1]))
      throw ValidationError("interval: expected [a, b] with a < b");
    pf.interval = Interval{iv[0], iv[1]};
  }
  if (doc.contains("a")) pf.a = number(doc["a"], "a");
  if (doc.contains("x")) pf.x = number(doc["x"], "x");

  switch (mode) {
    case MvtMode::Theorem1: {
      for (const char* key : {"m", "k", "funcs", "f", "g", "nodes", "interval"})
        required(doc, key, mode);
      const int m = *pf.m, k = *pf.k;
      if (static_cast<int>(pf.funcs.size()) != m + k)
        throw ValidationError("funcs: expected m + k = " + std::to_string(m + k) + " entries");
      pf.anchors = Eigen::MatrixXd(m + k, m);
      if (m > 0) {
        const json& rows = required(doc, "anchors", mode);
        if (!rows.is_array() || static_cast<int>(rows.size()) != m + k)
          throw ValidationError("anchors: expected m + k = " + std::to_string(m + k) + " rows");
        for (int i = 0; i < m + k; ++i) {
          const auto row = numbers(rows[i], "anchors[" + std::to_string(i) + "]");
          if (static_cast<int>(row.size()) != m)
            throw ValidationError("anchors[" + std::to_string(i) + "]: expected " +
                                  std::to_string(m) + " entries");
          for (int j = 0; j < m; ++j) pf.anchors(i, j) = row[j];
        }
      }
      pf.p = vector_field(doc, "p", m);
      pf.q = vector_field(doc, "q", m);
      if (static_cast<int>(pf.nodes.size()) != k + 1)
        throw ValidationError("nodes: expected k + 1 = " + std::to_string(k + 1) + " entries");
      break;
    }
    case MvtMode::Theorem2: {
      for (const char* key : {"funcs", "f", "g", "nodes", "interval", "exterior"})
        required(doc, key, mode);
      const int m = static_cast<int>(pf.exterior.size());
      const int k = static_cast<int>(pf.funcs.size()) - m;
      if (m < 1) throw ValidationError("exterior: expected at least one point");
      if (k < 1) throw ValidationError("funcs: expected more entries than exterior points");
      if (pf.m && *pf.m != m) throw ValidationError("m: must equal the number of exterior points");
      if (pf.k && *pf.k != k) throw ValidationError("k: must equal len(funcs) - len(exterior)");
      pf.m = m;
      pf.k = k;
      if (static_cast<int>(pf.nodes.size()) != k + 1)
        throw ValidationError("nodes: expected k + 1 = " + std::to_string(k + 1) + " entries");
      break;
    }
    case MvtMode::Cauchy:
      required(doc, "f", mode);
      required(doc, "g", mode);
      if (!pf.interval && pf.nodes.size() != 2)
        throw ValidationError("cauchy mode needs \"interval\" or two \"nodes\"");
      if (!pf.interval) {
        if (!(pf.nodes[0] != pf.nodes[1])) throw ValidationError("nodes: must differ");
        pf.interval = Interval{std::min(pf.nodes[0], pf.nodes[1]), std::max(pf.nodes[0], pf.nodes[1])};
      }
      break;
    case MvtMode::Taylor:
      required(doc, "f", mode);
      required(doc, "k", mode);
      if (!(pf.a && pf.x) && !pf.interval)
        throw ValidationError("taylor mode needs \"a\" and \"x\", or \"interval\"");
      if (!pf.a) pf.a = pf.interval->a;
      if (!pf.x) pf.x = pf.interval->b;
      if (!(*pf.a < *pf.x)) throw ValidationError("taylor mode needs a < x");
      break;
    case MvtMode::RatzRussel:
      for (const char* key : {"f", "g", "nodes"}) required(doc, key, mode);
      if (pf.nodes.size() < 2) throw ValidationError("nodes: expected at least two entries");
      break;
  }
  return pf;
}

ProblemFile load_problem(const std::string& path, MvtMode mode) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open problem file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return parse_problem(doc, mode);
}

AnchoredSystem to_system(const ProblemFile& pf) {
  AnchoredSystem sys;
  sys.m = pf.m.value_or(0);
  sys.k = pf.k.value_or(1);
  for (const auto& s : pf.funcs) sys.funcs.push_back(parse(s));
  sys.anchors = pf.anchors.size() == 0 ? Eigen::MatrixXd(sys.m + sys.k, sys.m) : pf.anchors;
  if (pf.interval) sys.interval = *pf.interval;
  sys.validate();
  return sys;
}

json to_json(const DetResult& r) {
  return {{"value", r.value},
          {"condition_estimate", number_or_null(r.condition_estimate)},
          {"matrix_dim", r.matrix_dim},
          {"rounding_bound", r.rounding_bound},
          {"singular", r.singular}};
}

json to_json(const DividedDifference& d) {
  return {{"value", d.value},
          {"order", d.order},
          {"method", d.method == DivDiffMethod::DeterminantRatio ? "det" : "rec"},
          {"nodes", d.nodes.distinct},
          {"multiplicities", d.nodes.mults}};
}

json to_json(const RegularityFailure& f) {
  return {{"n", f.n}, {"xi", f.xi}, {"value", number_or_null(f.value)}, {"reason", f.reason}};
}

json to_json(const MvtCertificate& c) {
  json brackets = json::array();
  for (const auto& [lo, hi] : c.brackets) brackets.push_back({lo, hi});
  return {{"xi", c.xi},
          {"bracket", {c.lo, c.hi}},
          {"residual", c.residual},
          {"tolerance", c.tolerance},
          {"certified", c.certified},
          {"strategy", to_string(c.strategy)},
          {"condition", number_or_null(c.condition)},
          {"lhs", c.lhs},
          {"rhs", c.rhs},
          {"rhs_dets", {c.node_det_g, c.node_det_f}},
          {"brackets", brackets},
          {"warnings", c.warnings}};
}

json to_json(const SuiteReport& r, bool include_timing) {
  json failures = json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"case", f.case_index},
                        {"inputs", f.inputs},
                        {"expected", f.expected},
                        {"got", f.got},
                        {"residual", number_or_null(f.residual)}});
  }
  json out = {{"suite", r.suite},
              {"seed", r.seed},
              {"cases", r.cases},
              {"discarded", r.discarded},
              {"max_gap", number_or_null(r.max_gap)},
              {"tolerance", r.tolerance},
              {"pass", r.pass()},
              {"failures", failures}};
  if (include_timing) out["wall_time_ms"] = r.wall_time_ms;
  return out;
}

std::string render(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace wmvt
