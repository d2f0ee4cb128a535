#include "toda/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "toda/backlund.hpp"
#include "toda/canonical.hpp"
#include "toda/conserved.hpp"
#include "toda/dynamics.hpp"
#include "toda/serialize.hpp"
#include "toda/verify.hpp"

namespace toda {

namespace {

struct Options {
  std::size_t n = 0;
  std::string point;
  std::string init;
  double T = 1.0;
  double h = 1e-3;
  std::size_t steps = 1;
  std::string route = "map";
  std::uint64_t seed = 0;
  std::size_t trials = 50;
  std::size_t n_max = 4;
  std::string mode = "both";
  std::string out_path;
};

AnyPoint read_point(const Options& o) {
  if (o.point.empty()) throw ParseError("--point is required");
  AnyPoint x = point_from_json(load_json(o.point));
  const std::size_t n = std::visit([](const auto& p) { return p.n(); }, x);
  if (o.n != 0 && o.n != n) throw IndexMismatch("--n disagrees with the point's rank");
  return x;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("bad number \"" + item + "\" in list");
    }
  }
  return v;
}

CanonicalPoint canonical_from_list(const std::vector<double>& v, std::size_t n) {
  if (v.empty() || v.size() % 2 != 0) throw ParseError("canonical list needs q_1..q_n,p_1..p_n");
  if (n != 0 && v.size() != 2 * n) throw IndexMismatch("canonical list length is not 2n");
  const std::size_t m = v.size() / 2;
  return {std::vector<double>(v.begin(), v.begin() + m), std::vector<double>(v.begin() + m, v.end())};
}

CanonicalPoint canonical_from_json(const Json& j, std::size_t n) {
  if (!j.is_object() || !j.contains("q") || !j.contains("p")) throw ParseError("expected {\"q\": [...], \"p\": [...]}");
  CanonicalPoint c{j.at("q").get<std::vector<double>>(), j.at("p").get<std::vector<double>>()};
  if (c.q.empty() || c.q.size() != c.p.size()) throw IndexMismatch("q and p need equal nonzero length");
  if (n != 0 && c.n() != n) throw IndexMismatch("--n disagrees with the canonical point");
  return c;
}

bool looks_like_json(const std::string& s) {
  const auto p = s.find_first_not_of(" \t\r\n");
  return p != std::string::npos && (s[p] == '{' || s[p] == '[');
}

// Phase point, {q, p} object, or comma list q..., p....
PhasePoint<double> read_initial(const Options& o) {
  if (o.init.empty()) throw ParseError("--init is required");
  const bool is_list = !looks_like_json(o.init) && o.init.find(',') != std::string::npos;
  if (is_list) return to_phase(canonical_from_list(parse_number_list(o.init), o.n));
  const Json j = load_json(o.init);
  if (j.is_object() && j.contains("z")) {
    const auto x = as_float(point_from_json(j));
    if (o.n != 0 && x.n() != o.n) throw IndexMismatch("--n disagrees with the initial point");
    return x;
  }
  return to_phase(canonical_from_json(j, o.n));
}

template <class T>
Json conserved_json(const PhasePoint<T>& x) {
  const auto f = conserved_values(x);
  bool agree = true;
  for (auto mode : {ChainMode::original, ChainMode::improved}) {
    const auto p = path_values(x, mode);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if constexpr (ScalarTraits<T>::exact) {
        agree = agree && p[i] == f[i];
      } else {
        agree = agree && ScalarTraits<T>::near(p[i], f[i], std::abs(f[i]));
      }
    }
  }
  return Json{{"F", values_to_json(f)}, {"routes_agree", agree}};
}

template <class T>
Json backlund_json(const PhasePoint<T>& x, std::size_t steps, const std::string& route, bool& agree) {
  Json result{{"route", route}};
  auto sequence = [&](BacklundRoute r) {
    Json list = Json::array();
    const auto seq = iterate(x, steps, r);
    for (std::size_t s = 0; s < seq.size(); ++s)
      list.push_back(Json{{"step", s}, {"point", point_to_json(seq[s])},
                          {"F", values_to_json(conserved_values(seq[s]))}});
    return std::make_pair(seq, list);
  };
  agree = true;
  if (route == "map" || route == "both") result["steps"] = sequence(BacklundRoute::map).second;
  if (route == "conjugate") result["steps"] = sequence(BacklundRoute::conjugate).second;
  if (route == "both") {
    const auto a = sequence(BacklundRoute::map).first;
    const auto b = sequence(BacklundRoute::conjugate).first;
    for (std::size_t s = 0; s < a.size(); ++s) {
      for (std::size_t i = 0; i < x.n(); ++i) {
        const double scale = std::max(ScalarTraits<T>::magnitude(a[s].z()[i]), 1.0);
        agree = agree && ScalarTraits<T>::near(a[s].z()[i], b[s].z()[i], scale) &&
                ScalarTraits<T>::near(a[s].Q()[i], b[s].Q()[i], scale);
      }
    }
    result["routes_agree"] = agree;
  }
  return result;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ParseError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int cmd_lax(const Options& o, std::ostream& out) {
  const AnyPoint x = read_point(o);
  std::visit(
      [&](const auto& p) {
        const auto l = build_lax(p);
        const auto g = gamma_membership(l);
        Output sink(o.out_path, out);
        sink.get() << Json{{"n", p.n()}, {"L", matrix_to_json(l)}, {"in_gamma1", g.in_gamma1},
                           {"in_gamma2", g.in_gamma2}}
                          .dump()
                   << '\n';
      },
      x);
  return kExitOk;
}

int cmd_conserved(const Options& o, std::ostream& out) {
  Output sink(o.out_path, out);
  if (o.point.empty()) {
    if (o.n == 0) throw ParseError("conserved needs --point or --n");
    Json polys = Json::array();
    for (std::size_t i = 0; i <= 2 * o.n; ++i) polys.push_back(f_poly(o.n, i, ChainMode::improved).to_string());
    sink.get() << Json{{"n", o.n}, {"F", polys}}.dump() << '\n';
    return kExitOk;
  }
  const Json j = std::visit([](const auto& p) { return conserved_json(p); }, read_point(o));
  sink.get() << j.dump() << '\n';
  return j.at("routes_agree").get<bool>() ? kExitOk : kExitVerifyFailed;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const auto x0 = read_initial(o);
  const auto traj = integrate(x0, o.T, o.h);
  Output sink(o.out_path, out);
  std::ostream& s = sink.get();
  const std::size_t n = x0.n();
  s << "t";
  for (std::size_t i = 1; i <= n; ++i) s << ",z_" << i;
  for (std::size_t i = 1; i <= n; ++i) s << ",Q_" << i;
  s << ",drift\n";
  s << std::setprecision(17);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    s << traj.times[k];
    for (double v : traj.states[k].z()) s << ',' << v;
    for (double v : traj.states[k].Q()) s << ',' << v;
    s << ',' << traj.drift[k] << '\n';
  }
  return kExitOk;
}

int cmd_backlund(const Options& o, std::ostream& out) {
  if (o.route != "map" && o.route != "conjugate" && o.route != "both")
    throw ParseError("--route must be map, conjugate or both");
  bool agree = true;
  const Json j = std::visit([&](const auto& p) { return backlund_json(p, o.steps, o.route, agree); }, read_point(o));
  Output sink(o.out_path, out);
  sink.get() << j.dump() << '\n';
  return agree ? kExitOk : kExitVerifyFailed;
}

int cmd_canonical(const Options& o, std::ostream& out) {
  Output sink(o.out_path, out);
  if (!o.point.empty()) {
    const auto x = as_float(read_point(o));
    const auto c = from_phase(x);
    sink.get() << Json{{"q", c.q}, {"p", c.p}, {"H", hamiltonian(x)}, {"H_canonical", hamiltonian_canonical(c)}}
                      .dump()
               << '\n';
    return kExitOk;
  }
  if (o.init.empty()) throw ParseError("canonical needs --init (q,p) or --point");
  const CanonicalPoint c = looks_like_json(o.init) ? canonical_from_json(load_json(o.init), o.n)
                                                   : canonical_from_list(parse_number_list(o.init), o.n);
  const auto x = to_phase(c);
  Json j = point_to_json(x);
  j["H"] = hamiltonian(x);
  j["H_canonical"] = hamiltonian_canonical(c);
  sink.get() << j.dump() << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  VerifySuiteConfig cfg;
  cfg.n_max = o.n_max;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  if (o.mode == "rational") cfg.mode = VerifyMode::rational;
  else if (o.mode == "float") cfg.mode = VerifyMode::floating;
  else if (o.mode == "both") cfg.mode = VerifyMode::both;
  else throw ParseError("--mode must be rational, float or both");
  if (cfg.n_max == 0 || cfg.trials == 0) throw ParseError("--n-max and --trials must be positive");
  const auto report = run_verify(cfg);
  Output sink(o.out_path, out);
  sink.get() << report.to_json_lines();
  return report.passed() ? kExitOk : kExitVerifyFailed;
}

std::uint64_t env_seed() {
  const char* s = std::getenv("TODA_BN_SEED");
  if (s == nullptr || *s == '\0') return 0;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (s[used] != '\0') throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("TODA_BN_SEED is not an unsigned integer: ") + s);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Type B_n relativistic Toda lattice: Lax matrix, conserved quantities, flows, Backlund map",
               "toda-bn"};
  app.require_subcommand(1, 1);

  auto point_opt = [&](CLI::App* s) {
    s->add_option("--point", o.point, "phase point: JSON file or inline JSON");
    s->add_option("--n", o.n, "rank n");
    s->add_option("--out", o.out_path, "write output to FILE");
  };
  auto* lax = app.add_subcommand("lax", "Lax matrix and Gamma membership");
  point_opt(lax);
  auto* conserved = app.add_subcommand("conserved", "conserved quantities F_0..F_2n");
  point_opt(conserved);
  auto* simulate = app.add_subcommand("simulate", "RK4 trajectory as CSV");
  simulate->set_help_flag("--help", "print this help and exit");
  simulate->add_option("--init", o.init, "phase point JSON, {q,p} JSON, or q_1..q_n,p_1..p_n");
  simulate->add_option("--n", o.n, "rank n");
  simulate->add_option("--T", o.T, "end time")->check(CLI::NonNegativeNumber);
  simulate->add_option("--h", o.h, "step size")->check(CLI::PositiveNumber);
  simulate->add_option("--out", o.out_path, "write CSV to FILE");
  auto* backlund = app.add_subcommand("backlund", "iterate the Backlund transformation");
  point_opt(backlund);
  backlund->add_option("--steps", o.steps, "number of steps");
  backlund->add_option("--route", o.route, "map | conjugate | both");
  auto* canonical = app.add_subcommand("canonical", "canonical chart (q, p) <-> (z, Q)");
  point_opt(canonical);
  canonical->add_option("--init", o.init, "{q,p} JSON or q_1..q_n,p_1..p_n");
  auto* verify = app.add_subcommand("verify", "randomized identity suite (JSON lines)");
  auto* seed_opt = verify->add_option("--seed", o.seed, "master seed (default TODA_BN_SEED or 0)");
  verify->add_option("--trials", o.trials, "points per identity");
  verify->add_option("--n-max", o.n_max, "largest rank");
  verify->add_option("--mode", o.mode, "rational | float | both");
  verify->add_option("--out", o.out_path, "write report to FILE");

  std::vector<const char*> argv{"toda-bn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }

  try {
    if (verify->parsed() && seed_opt->count() == 0) o.seed = env_seed();
    if (lax->parsed()) return cmd_lax(o, out);
    if (conserved->parsed()) return cmd_conserved(o, out);
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (backlund->parsed()) return cmd_backlund(o, out);
    if (canonical->parsed()) return cmd_canonical(o, out);
    return cmd_verify(o, out);
  } catch (const Json::exception& e) {
    err << "error: bad JSON input: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitBadInput;
}

}  // namespace toda
