#pragma once

// JSON problem files and JSON renderings of results. Numbers are written in
// shortest round-trip form; non-finite values become null.

#include <Eigen/Core>

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wmvt/determinant.hpp"
#include "wmvt/divdiff.hpp"
#include "wmvt/mvt.hpp"
#include "wmvt/verify.hpp"

namespace wmvt {

/// A problem file that does not satisfy the schema for its mode.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class MvtMode { Theorem1, Theorem2, Cauchy, Taylor, RatzRussel };

/// "theorem1", "theorem2", "cauchy", "taylor", "ratz-russel".
MvtMode parse_mode(std::string_view text);
const char* to_string(MvtMode mode);

struct ProblemFile {
  std::optional<int> m;
  std::optional<int> k;
  std::vector<std::string> funcs;
  Eigen::MatrixXd anchors;  // (m + k) x m
  std::string f;
  std::string g;
  Eigen::VectorXd p;
  Eigen::VectorXd q;
  std::vector<double> nodes;
  std::optional<Interval> interval;
  std::vector<double> exterior;
  /// Taylor mode: expansion point and evaluation point.
  std::optional<double> a;
  std::optional<double> x;
};

/// Checks the fields required by `mode` and their shapes. Expressions are
/// parsed later, so ParseError surfaces separately. Throws ValidationError.
ProblemFile parse_problem(const nlohmann::json& doc, MvtMode mode);
ProblemFile load_problem(const std::string& path, MvtMode mode);

AnchoredSystem to_system(const ProblemFile& pf);

nlohmann::json to_json(const DetResult& r);
nlohmann::json to_json(const DividedDifference& d);
nlohmann::json to_json(const RegularityFailure& f);
nlohmann::json to_json(const MvtCertificate& c);
/// Wall time is left out unless asked for, so reports compare byte for byte.
nlohmann::json to_json(const SuiteReport& r, bool include_timing = false);

/// Dump with a trailing newline.
std::string render(const nlohmann::json& doc);

}  // namespace wmvt
