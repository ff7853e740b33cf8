#ifndef NULLWAVE_CLI_HPP
#define NULLWAVE_CLI_HPP

// Front end for `nullwave verify|classify|generate --config <path>`.
//
// Config (JSON):
//   exactly one of
//     "builtin": "u" | "q" | "t" | "kerr-basic" | "surface-basic"
//     "kerr":    {"f": {"num": [...], "den": [...]}, "g": ..., "h": ..., "branch": 0}
//     "surface": {"slots": [s0, s1, s2, s3], "normal_form": bool,
//                 "degree": [dz, dw], "seed": [z, w]}
//               where s[i][j] is the coefficient of z^i w^j
//   "domain":     {"lo": [4], "hi": [4]}
//   "grid":       {"min": [4], "max": [4], "count": [4] or n} or {"count": n}
//   "scheme":     "analytic" | "fd"       "h": step
//   "tolerances": {"det": x, "wave": x, "sfr": x}
//   "point", "direction": [t, x1, x2, x3]   (classify)
//   "format":     "csv" | "json"
// Complex numbers are [re, im] pairs or plain numbers.

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nullwave/fields.hpp"
#include "nullwave/kerr.hpp"
#include "nullwave/sfr.hpp"
#include "nullwave/twistor.hpp"

namespace nullwave::cli {

enum ExitCode : int { kPass = 0, kParseError = 2, kVerdictFailure = 3, kNumericFailure = 4 };

enum class Format { Csv, Json };

enum class InputKind { Builtin, Kerr, Surface };

struct InputSpec {
  InputKind kind = InputKind::Builtin;
  std::string builtin;
  MeromorphicTriple triple;
  int branch = 0;
  std::array<BivariatePoly, 4> slots;
  std::optional<ChartPoint> seed;
  std::optional<Box> domain;
};

struct RunConfig {
  std::string command;
  InputSpec input;
  std::optional<GridSpec> grid;
  int grid_count = 5;
  Scheme scheme = Scheme::analytic();
  double det_tol = 0.0;  // 0: 1e-9 analytic, 1e-6 otherwise
  double wave_tol = 1e-6;
  double sfr_tol = 1e-5;
  std::optional<MinkVec> point;
  std::optional<MinkVec> direction;
  Format format = Format::Csv;
  std::string out_path;
};

/// Parses config text into `base`; throws Error(Parse).
RunConfig parse_config(const std::string& text, RunConfig base = {});

ScalarField field_of(const InputSpec& in);
GridSpec grid_of(const RunConfig& cfg, const ScalarField& f);

/// One sample of a generated solution.
struct GeneratedPoint {
  MinkVec x;
  bool singular = false;
  cplx z{};
  std::optional<cplx> w;
  int root = 0;  // root branch (kerr) or seed index (surface)
  Gradient4 grad{};
  double semiconformality = 0.0;
  double wave = 0.0;
  bool pass = false;
  std::string note;
};

struct GenerateResult {
  std::string label;
  std::vector<GeneratedPoint> points;
  std::size_t regular = 0;
  std::size_t passed = 0;
  bool verdict() const { return regular > 0 && passed * 100 >= regular * 95; }
};

GenerateResult generate(const RunConfig& cfg);

std::string verify_csv(const Theorem2Report& r);
std::string verify_json(const Theorem2Report& r);
std::string generate_csv(const GenerateResult& g);
std::string generate_json(const GenerateResult& g);
std::string classify_json(const BranchClassification& c, const MinkVec& x, const MinkVec& v);

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nullwave::cli

#endif
