#pragma once

// Front-end for the wigner_abcd command-line tool. Kept in a header so the
// test suites can drive it in-process.
//
// Exit codes: 0 success, 1 numeric-domain error, 2 input validation error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wigner_abcd/json.hpp"
#include "wigner_abcd/wigner_abcd.hpp"

namespace wigner_abcd::cli {

using nlohmann::json;

inline constexpr double kCliDetTol = 1e-6;
inline constexpr const char* kTolEnvVar = "WIGNER_ABCD_TOL";

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

namespace detail {

// Shortest round-trip decimal, same as the JSON writer.
inline std::string num(double v) { return json(v).dump(); }

inline json read_document(const std::string& path, std::istream& in) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream file(path);
    if (!file) throw ValidationError("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  }
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw ValidationError("empty JSON input");
  return json::parse(text);
}

inline Mat2 matrix_from_json(const json& doc) {
  if (doc.is_array()) return mat2_from_rows(doc);
  return doc.get<Mat2>();
}

// Unit determinant within kCliDetTol; anything off exactly one is rescaled by sqrt(det).
inline UniMat2 admit_matrix(const Mat2& m, std::ostream& err) {
  const double det = m.det();
  if (!(std::abs(det - 1.0) <= kCliDetTol)) {
    throw ValidationError("matrix determinant " + num(det) + " is not one within " + num(kCliDetTol));
  }
  if (det == 1.0) return UniMat2::trusted(m);
  err << "warning: determinant " << num(det) << " renormalized to one\n";
  return UniMat2((1.0 / std::sqrt(det)) * m);
}

inline double default_tol() {
  if (const char* env = std::getenv(kTolEnvVar)) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) throw ValidationError(std::string(kTolEnvVar) + " must be a positive number");
    return v;
  }
  return kDefaultBranchTol;
}

inline double param(const std::optional<double>& flag, const json& doc, const char* key, double fallback) {
  if (flag) return *flag;
  if (doc.is_object() && doc.contains(key)) return doc.at(key).get<double>();
  return fallback;
}

inline long long count(const std::optional<long long>& flag, const json& doc, const char* key, long long fallback) {
  if (flag) return *flag;
  if (doc.is_object() && doc.contains(key)) return doc.at(key).get<long long>();
  return fallback;
}

inline json expform_or_null(const PeriodicForm& pf) { return pf.scalar ? json(nullptr) : json(pf.form); }

inline std::string lower_branch_label(BranchKind k) {
  switch (k) {
    case BranchKind::Circular: return "circular";
    case BranchKind::Hyperbolic: return "hyperbolic";
    case BranchKind::ParabolicLower:
    case BranchKind::ParabolicUpper: return "parabolic";
    case BranchKind::Scalar: return "scalar";
  }
  return "?";
}

inline std::string stability_label(BranchKind k) {
  const std::string name(to_string(k));
  if (k == BranchKind::Circular) return name + "/stable";
  if (k == BranchKind::Hyperbolic) return name + "/unstable";
  return name + "/marginal";
}

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

}  // namespace detail

struct Options {
  std::optional<std::string> matrix;
  std::optional<std::string> file;
  std::string format = "json";
  std::optional<double> tol;
  long long theta_steps = 8;
  std::optional<double> f, x, gamma, mu, lambda, alpha, t12, beta1, beta2, z;
  std::optional<long long> n, steps;
};

namespace detail {

inline Mat2 load_matrix(const Options& o, std::istream& in) {
  if (o.matrix) return matrix_from_json(json::parse(*o.matrix));
  return matrix_from_json(read_document(o.file.value_or("-"), in));
}

inline json load_params(const Options& o, std::istream& in) {
  if (!o.file) return json::object();
  json doc = read_document(*o.file, in);
  if (!doc.is_object()) throw ValidationError("parameter document must be a JSON object");
  return doc;
}

inline double tolerance(const Options& o) {
  const double t = o.tol ? *o.tol : default_tol();
  if (!(t > 0.0)) throw ValidationError("--tol must be positive");
  return t;
}

inline int cmd_decompose(const Options& o, const Io& io) {
  const UniMat2 m = admit_matrix(load_matrix(o, io.in), io.err);
  const double tol = tolerance(o);
  const WignerDecomp wd = wigner_decompose(m, tol);
  const EquiDiag ed = equidiagonalize(m);
  if (o.format == "csv") {
    io.out << "A,B,C,D,alpha,a,b,c,branch,param,eta,sign\n"
           << num(m.e11()) << ',' << num(m.e12()) << ',' << num(m.e21()) << ',' << num(m.e22()) << ','
           << num(ed.alpha) << ',' << num(ed.a) << ',' << num(ed.b) << ',' << num(ed.c) << ',' << to_string(wd.branch)
           << ',' << num(wd.param) << ',' << num(wd.eta) << ',' << wd.sign << '\n';
    return 0;
  }
  json j = m;
  j["equidiag"] = ed;
  j["branch"] = std::string(to_string(wd.branch));
  j["wigner"] = wd;
  j["expform"] = expform_or_null(periodic_form(m, tol));
  emit(io.out, j);
  return 0;
}

inline int cmd_classify(const Options& o, const Io& io) {
  const UniMat2 m = admit_matrix(load_matrix(o, io.in), io.err);
  const BranchKind k = classify(equidiagonalize(m), tolerance(o) * m.max_norm());
  if (o.format == "csv") {
    io.out << "branch\n" << to_string(k) << '\n';
    return 0;
  }
  json j = m;
  j["branch"] = std::string(to_string(k));
  emit(io.out, j);
  return 0;
}

inline int cmd_expform(const Options& o, const Io& io) {
  const UniMat2 m = admit_matrix(load_matrix(o, io.in), io.err);
  const EquiDiag ed = equidiagonalize(m);
  const ExpForm f = log_to_expform(ed, tolerance(o));
  json j = m;
  j["alpha"] = ed.alpha;
  j["expform"] = f;
  emit(io.out, j);
  return 0;
}

inline int cmd_power(const Options& o, const Io& io) {
  const UniMat2 m = admit_matrix(load_matrix(o, io.in), io.err);
  const long long n = o.n.value_or(1);
  if (n < 0) throw ValidationError("--n must be non-negative");
  const PeriodicForm pf = periodic_form(m, tolerance(o));
  json j = m;
  j["n"] = n;
  j["alpha"] = pf.alpha;
  j["expform"] = expform_or_null(pf);
  j["power"] = pf.power(n);
  emit(io.out, j);
  return 0;
}

inline int cmd_regions(const Options& o, const Io& io) {
  const long long steps = o.theta_steps;
  if (steps < 1) throw ValidationError("--theta-steps must be at least 1");
  json rows = json::array();
  std::ostringstream csv;
  csv << "theta,branch\n";
  for (long long k = 1; k <= steps; ++k) {
    const double theta = -kHalfPi + std::numbers::pi * static_cast<double>(k) / static_cast<double>(steps);
    const BranchKind b = generator_branch(theta);
    json row = {{"theta", theta}, {"branch", lower_branch_label(b)}};
    if (b == BranchKind::ParabolicLower) row["form"] = "lower";
    if (b == BranchKind::ParabolicUpper) row["form"] = "upper";
    rows.push_back(row);
    csv << num(theta) << ',' << lower_branch_label(b) << '\n';
  }
  if (o.format == "csv") {
    io.out << csv.str();
    return 0;
  }
  emit(io.out, json{{"theta_steps", steps}, {"regions", rows}});
  return 0;
}

inline int cmd_activity(const Options& o, const Io& io) {
  const json doc = load_params(o, io.in);
  activity::MediumParams p;
  p.gamma = param(o.gamma, doc, "gamma", 0.0);
  p.mu = param(o.mu, doc, "mu", 0.0);
  p.lambda_att = param(o.lambda, doc, "lambda", 0.0);
  const double alpha = param(o.alpha, doc, "alpha", 0.0);
  const double z = param(o.z, doc, "z", 1.0);
  const long long steps = count(o.steps, doc, "steps", 10);
  activity::validate(p);
  if (!(z >= 0.0)) throw ValidationError("--z must be non-negative");
  if (steps < 1) throw ValidationError("--steps must be at least 1");

  std::vector<double> grid;
  for (long long k = 0; k <= steps; ++k) grid.push_back(z * static_cast<double>(k) / static_cast<double>(steps));
  const auto samples = activity::trajectory(p, alpha, grid);

  if (o.format == "csv") {
    io.out << "z,ex,ey,envelope\n";
    for (const auto& s : samples) {
      io.out << num(s.z) << ',' << num(s.ex) << ',' << num(s.ey) << ',' << num(activity::envelope(p, s.z)) << '\n';
    }
    return 0;
  }
  const ExpForm f = activity::activity_expform(p, z);
  json traj = json::array();
  for (const auto& s : samples) {
    traj.push_back({{"z", s.z}, {"ex", s.ex}, {"ey", s.ey}, {"envelope", activity::envelope(p, s.z)}});
  }
  json j = {{"gamma", p.gamma}, {"mu", p.mu}, {"lambda", p.lambda_att}, {"alpha", alpha}, {"z", z}};
  j["branch"] = (p.gamma == 0.0 && p.mu == 0.0) ? "scalar" : lower_branch_label(generator_branch(f.theta));
  j["expform"] = f;
  j["z_matrix"] = activity::z_matrix(p, z);
  j["trajectory"] = traj;
  emit(io.out, j);
  return 0;
}

inline int cmd_cavity(const Options& o, const Io& io) {
  const json doc = load_params(o, io.in);
  cavity::CavityConfig cfg;
  cfg.f = param(o.f, doc, "f", 0.0);
  cfg.x = param(o.x, doc, "x", 0.5);
  const long long n = count(o.n, doc, "n", 1);
  if (n < 0) throw ValidationError("--n must be non-negative");
  cavity::validate(cfg);

  if (o.format == "csv") {
    io.out << "n,A,B,C,D,trace\n";
    const PeriodicForm pf = cavity::half_cycle_form(cfg);
    for (long long k = 0; k <= n; ++k) {
      const UniMat2 m = pf.power(2 * k);
      io.out << k << ',' << num(m.e11()) << ',' << num(m.e12()) << ',' << num(m.e21()) << ',' << num(m.e22()) << ','
             << num(m.trace()) << '\n';
    }
    return 0;
  }

  const UniMat2 half = cavity::half_cycle(cfg);
  const double tol = tolerance(o);
  const BranchKind verdict = cavity::stability(cfg, tol);
  json j = {{"f", cfg.f}, {"x", cfg.x}, {"n", n}};
  j["half_cycle"] = half;
  j["alpha"] = cavity::cavity_alpha(cfg);
  j["equidiag"] = equidiagonalize(half);
  j["stability"] = stability_label(verdict);
  j["wigner"] = wigner_decompose(half, tol);
  j["expform"] = expform_or_null(periodic_form(half, tol));
  if (cfg.x == 0.5 && cfg.f > 0.0 && cfg.f < 2.0) {
    const auto mid = cavity::mid_cavity_decomp(cfg.f);
    j["mid_cavity"] = {{"phi", mid.phi}, {"eta", mid.eta}, {"exp_2eta", std::exp(2.0 * mid.eta)}};
  }
  j["round_trip"] = cavity::n_round_trips(cfg, n);
  emit(io.out, j);
  return 0;
}

inline int cmd_multilayer(const Options& o, const Io& io) {
  const json doc = load_params(o, io.in);
  const double t12 = param(o.t12, doc, "t12", 1.0);
  if (o.format == "csv") {
    const long long steps = count(o.steps, doc, "steps", 8);
    if (steps < 1) throw ValidationError("--steps must be at least 1");
    io.out << "beta1,beta2,branch,trace_half\n";
    for (long long i = 0; i < steps; ++i) {
      for (long long k = 0; k < steps; ++k) {
        const double b1 = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(steps);
        const double b2 = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(steps);
        const auto lp = multilayer::LayerPair::from_transmission(t12, b1, b2);
        io.out << num(b1) << ',' << num(b2) << ',' << to_string(multilayer::cycle_branch(lp)) << ','
               << num(0.5 * multilayer::cycle(lp).trace()) << '\n';
      }
    }
    return 0;
  }
  const auto lp = multilayer::LayerPair::from_transmission(t12, param(o.beta1, doc, "beta1", 0.0),
                                                           param(o.beta2, doc, "beta2", 0.0));
  const long long n = count(o.n, doc, "n", 1);
  if (n < 0) throw ValidationError("--n must be non-negative");
  const auto cd = multilayer::full_decompose(lp);
  json j = {{"t12", lp.t12}, {"beta1", lp.beta1}, {"beta2", lp.beta2}, {"n", n}, {"r12", lp.r12}, {"nu", lp.nu}};
  j["cycle"] = multilayer::cycle(lp);
  j["core_decomp"] = cd;
  j["branch"] = std::string(to_string(multilayer::cycle_branch(lp, tolerance(o))));
  const EquiDiag ed = cd.equidiag();
  const double scale = std::max({std::abs(ed.a), std::abs(ed.b), std::abs(ed.c)});
  j["expform"] = classify(ed, kDefaultBranchTol * scale) == BranchKind::Scalar
                     ? json(nullptr)
                     : json(multilayer::multilayer_branch(cd));
  j["stack"] = multilayer::stack(lp, n);
  emit(io.out, j);
  return 0;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, const Io& io) {
  CLI::App app{"Exponential-form analysis of unimodular 2x2 ABCD matrices", "wigner_abcd"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_matrix_input = [&o](CLI::App* sub) {
    sub->add_option("--matrix", o.matrix, "Matrix as JSON, [[A,B],[C,D]] or {\"m\": ...}");
    sub->add_option("--file", o.file, "JSON document to read; '-' for stdin");
    sub->add_option("--tol", o.tol, "Relative branch tolerance");
  };
  auto add_format = [&o](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* decompose = app.add_subcommand("decompose", "Rotation, branch, Wigner parameters and exponent of a matrix");
  add_matrix_input(decompose);
  add_format(decompose);
  auto* classify_cmd = app.add_subcommand("classify", "Branch of a matrix");
  add_matrix_input(classify_cmd);
  add_format(classify_cmd);
  auto* expform = app.add_subcommand("expform", "Exponent (r, theta, sign) of a matrix");
  add_matrix_input(expform);
  auto* power = app.add_subcommand("power", "n-th power through the exponential form");
  add_matrix_input(power);
  power->add_option("--n", o.n, "Exponent");

  auto* regions = app.add_subcommand("regions", "Branch of exp{r M(theta)} over a theta grid");
  regions->add_option("--theta-steps", o.theta_steps, "Grid points over (-pi/2, pi/2]");
  add_format(regions);

  auto* activity_cmd = app.add_subcommand("activity", "Optical activity with asymmetric attenuation");
  activity_cmd->add_option("--gamma", o.gamma, "Rotary power");
  activity_cmd->add_option("--mu", o.mu, "Attenuation asymmetry");
  activity_cmd->add_option("--lambda", o.lambda, "Mean attenuation");
  activity_cmd->add_option("--alpha", o.alpha, "Frame rotation (half-angle convention)");
  activity_cmd->add_option("--z", o.z, "Propagation distance");
  activity_cmd->add_option("--steps", o.steps, "Trajectory intervals");
  activity_cmd->add_option("--file", o.file, "JSON parameters; '-' for stdin");
  add_format(activity_cmd);

  auto* cavity_cmd = app.add_subcommand("cavity", "Two-mirror laser cavity");
  cavity_cmd->add_option("--f", o.f, "Separation over mirror radius");
  cavity_cmd->add_option("--x", o.x, "Start position in units of the separation");
  cavity_cmd->add_option("--n", o.n, "Round trips");
  cavity_cmd->add_option("--tol", o.tol, "Relative branch tolerance");
  cavity_cmd->add_option("--file", o.file, "JSON parameters; '-' for stdin");
  add_format(cavity_cmd);

  auto* multilayer_cmd = app.add_subcommand("multilayer", "Two-medium periodic stack");
  multilayer_cmd->add_option("--t12", o.t12, "Interface transmission coefficient");
  multilayer_cmd->add_option("--beta1", o.beta1, "Phase advance in medium 1");
  multilayer_cmd->add_option("--beta2", o.beta2, "Phase advance in medium 2");
  multilayer_cmd->add_option("--n", o.n, "Cycles in the stack");
  multilayer_cmd->add_option("--steps", o.steps, "Sweep points per phase (csv)");
  multilayer_cmd->add_option("--tol", o.tol, "Relative branch tolerance");
  multilayer_cmd->add_option("--file", o.file, "JSON parameters; '-' for stdin");
  add_format(multilayer_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    io.out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    io.err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (decompose->parsed()) return detail::cmd_decompose(o, io);
    if (classify_cmd->parsed()) return detail::cmd_classify(o, io);
    if (expform->parsed()) return detail::cmd_expform(o, io);
    if (power->parsed()) return detail::cmd_power(o, io);
    if (regions->parsed()) return detail::cmd_regions(o, io);
    if (activity_cmd->parsed()) return detail::cmd_activity(o, io);
    if (cavity_cmd->parsed()) return detail::cmd_cavity(o, io);
    if (multilayer_cmd->parsed()) return detail::cmd_multilayer(o, io);
  } catch (const ValidationError& e) {
    io.err << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    io.err << "error: invalid JSON input: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    io.err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::range_error& e) {
    io.err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ConsistencyError& e) {
    io.err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace wigner_abcd::cli
