#include <algorithm>
#include <set>

#include <json.hpp>

#include "nullwave/builtins.hpp"
#include "nullwave/cli.hpp"
#include "nullwave/error.hpp"

namespace nullwave::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::Parse, what); }

cplx to_cplx(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  bad(where + ": expected a number or [re, im]");
}

std::vector<cplx> to_cplx_list(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where + ": expected an array");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(to_cplx(j[i], where));
  return out;
}

std::array<double, 4> to_vec4(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) bad(where + ": expected 4 numbers");
  std::array<double, 4> out{};
  for (int a = 0; a < 4; ++a) {
    if (!j[a].is_number()) bad(where + ": expected 4 numbers");
    out[a] = j[a].get<double>();
  }
  return out;
}

MinkVec to_mink(const json& j, const std::string& where) {
  const auto v = to_vec4(j, where);
  return {v[0], v[1], v[2], v[3]};
}

RationalFn to_rational(const json& j, const std::string& where) {
  if (j.is_array()) return RationalFn(Polynomial(to_cplx_list(j, where)));
  if (!j.is_object()) bad(where + ": expected {\"num\": [...], \"den\": [...]}");
  for (const auto& [k, v] : j.items()) {
    if (k != "num" && k != "den") bad(where + ": unknown key '" + k + "'");
  }
  if (!j.contains("num")) bad(where + ": missing \"num\"");
  const Polynomial num(to_cplx_list(j["num"], where + ".num"));
  const Polynomial den =
      j.contains("den") ? Polynomial(to_cplx_list(j["den"], where + ".den")) : Polynomial{1.0};
  if (den.is_zero()) bad(where + ": zero denominator");
  return RationalFn(num, den);
}

BivariatePoly to_bipoly(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where + ": expected rows of coefficients");
  BivariatePoly p;
  for (std::size_t i = 0; i < j.size(); ++i) p.c.push_back(to_cplx_list(j[i], where));
  return p;
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) bad(where + ": unknown key '" + k + "'");
  }
}

void parse_surface(const json& j, InputSpec& in) {
  if (!j.is_object()) bad("surface: expected an object");
  check_keys(j, {"slots", "normal_form", "degree", "seed"}, "surface");
  if (!j.contains("slots") || !j["slots"].is_array() || j["slots"].size() != 4) {
    bad("surface: \"slots\" must hold four coefficient arrays");
  }
  for (int k = 0; k < 4; ++k) {
    in.slots[k] = to_bipoly(j["slots"][k], "surface.slots[" + std::to_string(k) + "]");
  }
  if (j.contains("degree")) {
    const auto& d = j["degree"];
    if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer()) {
      bad("surface.degree: expected [dz, dw]");
    }
    const int dz = d[0].get<int>();
    const int dw = d[1].get<int>();
    for (const auto& s : in.slots)
      for (std::size_t i = 0; i < s.c.size(); ++i)
        for (std::size_t jj = 0; jj < s.c[i].size(); ++jj)
          if (s.c[i][jj] != cplx(0.0) &&
              (static_cast<int>(i) > dz || static_cast<int>(jj) > dw)) {
            bad("surface: coefficient exceeds the declared degree bounds");
          }
  }
  if (j.contains("normal_form")) {
    if (!j["normal_form"].is_boolean()) bad("surface.normal_form: expected a boolean");
    if (j["normal_form"].get<bool>() && !(in.slots[2].is_z() && in.slots[3].is_constant(1.0))) {
      bad("surface: normal_form requires slots 2 and 3 to be z and 1");
    }
  }
  if (j.contains("seed")) {
    const auto& s = j["seed"];
    if (!s.is_array() || s.size() != 2) bad("surface.seed: expected [z, w]");
    in.seed = ChartPoint{to_cplx(s[0], "surface.seed"), to_cplx(s[1], "surface.seed")};
  }
}

void parse_kerr(const json& j, InputSpec& in) {
  if (!j.is_object()) bad("kerr: expected an object");
  check_keys(j, {"f", "g", "h", "branch"}, "kerr");
  in.triple.f = j.contains("f") ? to_rational(j["f"], "kerr.f") : RationalFn();
  in.triple.g = j.contains("g") ? to_rational(j["g"], "kerr.g") : RationalFn();
  in.triple.h = j.contains("h") ? to_rational(j["h"], "kerr.h") : RationalFn::constant(1.0);
  if (in.triple.h.num().is_zero()) bad("kerr.h: h must not vanish identically");
  if (j.contains("branch")) {
    if (!j["branch"].is_number_integer() || j["branch"].get<int>() < 0) {
      bad("kerr.branch: expected a non-negative integer");
    }
    in.branch = j["branch"].get<int>();
  }
}

}  // namespace

RunConfig parse_config(const std::string& text, RunConfig cfg) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) bad("config must be a JSON object");
  check_keys(j,
             {"schema", "builtin", "kerr", "surface", "domain", "grid", "scheme", "h",
              "tolerances", "point", "direction", "format"},
             "config");

  if (j.contains("schema") && j["schema"] != 1) bad("unsupported schema version");

  const int inputs = static_cast<int>(j.contains("builtin")) +
                     static_cast<int>(j.contains("kerr")) + static_cast<int>(j.contains("surface"));
  if (inputs != 1) bad("config needs exactly one of \"builtin\", \"kerr\", \"surface\"");
  if (j.contains("builtin")) {
    if (!j["builtin"].is_string()) bad("builtin: expected a name");
    cfg.input.kind = InputKind::Builtin;
    cfg.input.builtin = j["builtin"].get<std::string>();
    const auto& names = builtin_names();
    if (std::find(names.begin(), names.end(), cfg.input.builtin) == names.end()) {
      bad("unknown builtin '" + cfg.input.builtin + "'");
    }
  } else if (j.contains("kerr")) {
    cfg.input.kind = InputKind::Kerr;
    parse_kerr(j["kerr"], cfg.input);
  } else {
    cfg.input.kind = InputKind::Surface;
    parse_surface(j["surface"], cfg.input);
  }

  if (j.contains("domain")) {
    const auto& d = j["domain"];
    if (!d.is_object() || !d.contains("lo") || !d.contains("hi")) {
      bad("domain: expected {\"lo\": [4], \"hi\": [4]}");
    }
    check_keys(d, {"lo", "hi"}, "domain");
    Box b;
    b.lo = to_vec4(d["lo"], "domain.lo");
    b.hi = to_vec4(d["hi"], "domain.hi");
    for (int a = 0; a < 4; ++a)
      if (!(b.lo[a] < b.hi[a])) bad("domain: lo must be below hi on every axis");
    cfg.input.domain = b;
  }

  if (j.contains("scheme")) {
    const auto& s = j["scheme"];
    if (s == "analytic") {
      cfg.scheme.kind = SchemeKind::Analytic;
    } else if (s == "fd") {
      cfg.scheme.kind = SchemeKind::Central;
    } else {
      bad("scheme: expected \"analytic\" or \"fd\"");
    }
  }
  if (j.contains("h")) {
    if (!j["h"].is_number() || j["h"].get<double>() <= 0.0) bad("h: expected a positive step");
    cfg.scheme.h = j["h"].get<double>();
  }

  if (j.contains("grid")) {
    const auto& g = j["grid"];
    if (!g.is_object()) bad("grid: expected an object");
    check_keys(g, {"min", "max", "count"}, "grid");
    if (g.contains("min") || g.contains("max")) {
      if (!g.contains("min") || !g.contains("max") || !g.contains("count")) {
        bad("grid: \"min\", \"max\" and \"count\" go together");
      }
      GridSpec spec;
      spec.min = to_vec4(g["min"], "grid.min");
      spec.max = to_vec4(g["max"], "grid.max");
      const auto& gc = g["count"];
      std::array<double, 4> c{};
      if (gc.is_number()) {
        c.fill(gc.get<double>());
      } else {
        c = to_vec4(gc, "grid.count");
      }
      for (int a = 0; a < 4; ++a) {
        if (c[a] < 1 || c[a] != static_cast<int>(c[a])) bad("grid.count: positive integers");
        spec.count[a] = static_cast<int>(c[a]);
        if (spec.min[a] > spec.max[a]) bad("grid: min above max");
      }
      cfg.grid = spec;
    } else if (g.contains("count")) {
      if (!g["count"].is_number_integer() || g["count"].get<int>() < 1) {
        bad("grid.count: expected a positive integer");
      }
      cfg.grid_count = g["count"].get<int>();
    }
  }
  if (cfg.scheme.kind == SchemeKind::Central) {
    const auto counts = cfg.grid ? cfg.grid->count : std::array<int, 4>{cfg.grid_count, cfg.grid_count,
                                                                       cfg.grid_count, cfg.grid_count};
    for (int c : counts)
      if (c < 3) bad("grid: at least 3 points per axis with the fd scheme");
  }

  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    if (!t.is_object()) bad("tolerances: expected an object");
    check_keys(t, {"det", "wave", "sfr"}, "tolerances");
    auto take = [&](const char* key, double& slot) {
      if (!t.contains(key)) return;
      if (!t[key].is_number() || t[key].get<double>() <= 0.0) {
        bad(std::string("tolerances.") + key + ": expected a positive number");
      }
      slot = t[key].get<double>();
    };
    take("det", cfg.det_tol);
    take("wave", cfg.wave_tol);
    take("sfr", cfg.sfr_tol);
  }

  if (j.contains("point")) cfg.point = to_mink(j["point"], "point");
  if (j.contains("direction")) cfg.direction = to_mink(j["direction"], "direction");

  if (j.contains("format")) {
    if (j["format"] == "csv") {
      cfg.format = Format::Csv;
    } else if (j["format"] == "json") {
      cfg.format = Format::Json;
    } else {
      bad("format: expected \"csv\" or \"json\"");
    }
  }
  return cfg;
}

ScalarField field_of(const InputSpec& in) {
  switch (in.kind) {
    case InputKind::Builtin: {
      ScalarField f = builtin_field(in.builtin);
      if (in.domain) f.domain = *in.domain;
      return f;
    }
    case InputKind::Kerr:
      return kerr_field(in.triple, in.domain.value_or(Box{}), in.branch, "kerr");
    case InputKind::Surface:
      return surface_field(polynomial_surface(in.slots), in.domain.value_or(Box{}), in.seed,
                           "surface");
  }
  throw Error(ErrorKind::Parse, "unknown input kind");
}

GridSpec grid_of(const RunConfig& cfg, const ScalarField& f) {
  if (cfg.grid) return *cfg.grid;
  return default_grid(f, cfg.grid_count);
}

}  // namespace nullwave::cli
