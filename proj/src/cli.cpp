#include "sfg/cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "sfg/json_io.h"
#include "sfg/qtorus.h"
#include "sfg/symdouble.h"

namespace sfg {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Report {
  std::string command;
  json inputs = json::object();
  json outputs = json::object();
  json verdicts = json::array();
  bool failed = false;

  void verdict(const std::string& name, const std::string& status, const std::string& reason) {
    verdicts.push_back(json{{"name", name}, {"status", status}, {"reason", reason}});
    if (status == "fail") failed = true;
  }
  void check(const std::string& name, bool ok, const std::string& reason) { verdict(name, ok ? "pass" : "fail", reason); }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<long> int_list(const std::string& s, const std::string& what) {
  std::vector<long> out;
  for (auto& t : split(s, ',')) {
    try {
      size_t pos = 0;
      long v = std::stol(t, &pos);
      if (pos != t.size()) throw std::invalid_argument(t);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(what + ": cannot parse \"" + s + "\"");
    }
  }
  if (out.empty()) throw UsageError(what + " is empty");
  return out;
}

std::vector<double> real_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (auto& t : split(s, ',')) {
    try {
      size_t pos = 0;
      double v = std::stod(t, &pos);
      if (pos != t.size()) throw std::invalid_argument(t);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(what + ": cannot parse \"" + s + "\"");
    }
  }
  return out;
}

// 1-based labels to 0-based mutable indices
std::vector<int> mutation_sequence(const std::vector<long>& seq, const ExchangeData& e) {
  std::vector<int> out;
  for (long k : seq) {
    if (k < 1 || k > e.n_mut) throw UsageError("mutation index " + std::to_string(k) + " is not a mutable index");
    out.push_back(static_cast<int>(k - 1));
  }
  return out;
}

json strings(const std::vector<SFRat>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(x.str());
  return a;
}

json one_based(std::vector<int> v) {
  for (auto& x : v) ++x;
  return v;
}

// Permutation p of the mutable indices with after[p[i]] == before[i]; frozen indices stay.
template <class Vals>
std::optional<std::vector<int>> find_relabeling(const ExchangeData& eb, const Vals& before, const ExchangeData& ea,
                                                const Vals& after) {
  size_t n = eb.n();
  std::vector<int> p(n);
  for (size_t i = 0; i < n; ++i) p[i] = static_cast<int>(i);
  do {
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i)
      if (!(after[static_cast<size_t>(p[i])] == before[i])) ok = false;
    for (size_t i = 0; i < n && ok; ++i)
      for (size_t j = 0; j < n && ok; ++j)
        if (ea.eps[static_cast<size_t>(p[i])][static_cast<size_t>(p[j])] != eb.eps[i][j]) ok = false;
    if (ok) return p;
  } while (std::next_permutation(p.begin(), p.begin() + eb.n_mut));
  return std::nullopt;
}

IntMat w_or_zero(const SeedFile& f) { return f.has_W ? f.W : IntMat{}; }

SuperSeed super_of(const SeedFile& f) {
  SuperSeed s = initial_superseed(f.ex, w_or_zero(f));
  if (f.x) s.x = *f.x;
  return s;
}

// --- subcommands -------------------------------------------------------------

void cmd_mutate(Report& R, const std::string& seed_path, long at, long times, const std::string& seq_s,
                const std::string& mode_s, bool expect_return) {
  SeedFile f = seed_from_json(read_json_file(seed_path));
  R.inputs["seed"] = to_json(f);
  SuperMode mode = f.mode;
  if (!mode_s.empty()) mode = parse_super_mode(mode_s);
  std::vector<long> raw;
  if (!seq_s.empty()) {
    raw = int_list(seq_s, "--seq");
  } else {
    if (at < 1) throw UsageError("give --seq or --at");
    if (times < 1) throw UsageError("--times must be positive");
    // alternate between k and the next mutable index
    long other = f.ex.n_mut > 1 ? (at % f.ex.n_mut) + 1 : at;
    for (long t = 0; t < times; ++t) raw.push_back(t % 2 ? other : at);
  }
  auto seq = mutation_sequence(raw, f.ex);
  R.inputs["sequence"] = one_based(seq);
  R.inputs["mode"] = to_string(mode);

  XSeed xs = initial_xseed(f.ex);
  if (f.x) xs.x = *f.x;
  ASeed as = initial_aseed(f.ex);
  if (f.a) as.a = *f.a;
  SuperSeed ss = super_of(f);
  XSeed x0 = xs;
  ASeed a0 = as;
  // initial values first, then the new value at each step
  json orbit_x = strings(xs.x), orbit_a = strings(as.a);
  for (int k : seq) {
    xs = mutate_x(xs, k);
    as = mutate_a(as, k);
    ss = mutate_super(ss, k, mode);
    orbit_x.push_back(xs.x[static_cast<size_t>(k)].str());
    orbit_a.push_back(as.a[static_cast<size_t>(k)].str());
  }
  R.outputs["epsilon"] = xs.ex.eps;
  R.outputs["x"] = strings(xs.x);
  R.outputs["a"] = strings(as.a);
  R.outputs["orbit_x"] = orbit_x;
  R.outputs["orbit_a"] = orbit_a;
  if (f.has_W) {
    R.outputs["W"] = ss.W;
    R.outputs["theta_prefactor"] = strings(ss.theta_prefactor);
  }
  auto report_return = [&](const std::string& name, const std::optional<std::vector<int>>& p) {
    if (p) {
      R.outputs[name + "_relabeling"] = one_based(*p);
      R.verdict(name, "pass", "seed returns up to the relabeling shown");
    } else if (expect_return) {
      R.verdict(name, "fail", "seed does not return up to relabeling");
    } else {
      R.verdict(name, "skipped", "sequence does not return; pass --expect-return to make this a check");
    }
  };
  report_return("x_return", find_relabeling(x0.ex, x0.x, xs.ex, xs.x));
  report_return("a_return", find_relabeling(a0.ex, a0.a, as.ex, as.a));
}

json relation_json(const RelationCheck& c) {
  return json{{"kind", c.kind}, {"i", c.i + 1}, {"j", c.j + 1}, {"expected", c.expected.get_str()},
              {"observed", c.observed.str()}, {"ok", c.ok}};
}

void cmd_verify_bracket(Report& R, const std::string& seed_path, const std::string& seq_s, long random, unsigned long rng_seed,
                        const std::string& mode_s) {
  if (seed_path.empty() && random <= 0) throw UsageError("give --seed or --random");
  std::optional<SuperMode> mode_flag;
  if (!mode_s.empty()) mode_flag = parse_super_mode(mode_s);
  if (!seed_path.empty()) {
    SeedFile f = seed_from_json(read_json_file(seed_path));
    if (!f.has_W) throw InputError("verify-bracket needs W in the seed file");
    R.inputs["seed"] = to_json(f);
    SuperMode mode = mode_flag.value_or(f.mode);
    R.inputs["mode"] = to_string(mode);
    SuperSeed base = super_of(f);
    if (f.x) throw InputError("verify-bracket works on the initial generators; drop \"x\"");
    auto iso = check_isotropy(base);
    R.outputs["isotropy"] = json{{"admissible", iso.admissible}, {"isotropic", iso.isotropic}, {"left_kernel", iso.left_kernel}};
    std::vector<std::vector<int>> runs;
    if (!seq_s.empty()) {
      runs.push_back(mutation_sequence(int_list(seq_s, "--seq"), f.ex));
    } else {
      for (int k = 0; k < f.ex.n_mut; ++k) runs.push_back({k});
    }
    json out = json::array();
    for (auto& seq : runs) {
      SuperSeed p = base;
      for (int k : seq) p = mutate_super(p, k, mode);
      auto checks = check_primed_relations(base, p);
      json cj = json::array();
      for (auto& c : checks) cj.push_back(relation_json(c));
      out.push_back(json{{"sequence", one_based(seq)}, {"relations", cj}});
      std::string name = "relations_after";
      for (int k : seq) name += "_" + std::to_string(k + 1);
      R.check(name, all_ok(checks), all_ok(checks) ? "every primed relation holds exactly" : "a primed relation differs");
    }
    R.outputs["runs"] = out;
  }
  if (random > 0) {
    SuperMode mode = mode_flag.value_or(SuperMode::consistent);
    std::mt19937_64 g(rng_seed);
    R.inputs["random"] = random;
    R.inputs["rng_seed"] = rng_seed;
    long bad = 0, total = 0;
    for (long t = 0; t < random; ++t) {
      auto s = random_admissible_superseed(g);
      for (int k = 0; k < s.ex.n_mut; ++k) {
        ++total;
        if (!all_ok(check_primed_relations(s, mutate_super(s, k, mode)))) ++bad;
      }
    }
    R.outputs["random_mutations"] = total;
    R.outputs["random_failures"] = bad;
    R.check("random_seeds", bad == 0, std::to_string(bad) + " of " + std::to_string(total) + " mutations broke a relation");
  }
}

void cmd_verify_double(Report& R, const std::string& seed_path, long k1, double h, unsigned long rng_seed) {
  SeedFile f = seed_from_json(read_json_file(seed_path));
  R.inputs["seed"] = to_json(f);
  R.inputs["h"] = h;
  R.inputs["rng_seed"] = rng_seed;
  SuperSeed s = initial_superseed(f.ex, w_or_zero(f));
  std::mt19937_64 g(rng_seed);
  std::uniform_real_distribution<double> U(-1, 1);
  DoublePoint p;
  for (int i = 0; i < f.ex.n_mut; ++i) p.y.push_back(U(g));
  for (int i = 0; i < f.ex.n_mut; ++i) p.A.push_back(U(g));
  for (size_t a = 0; a < s.r(); ++a) p.theta_pi.push_back(U(g));
  R.outputs["point"] = json{{"y", p.y}, {"A", p.A}, {"theta_pi", p.theta_pi}};
  std::vector<int> ks;
  if (k1 > 0) {
    ks = mutation_sequence({k1}, f.ex);
  } else {
    for (int k = 0; k < f.ex.n_mut; ++k) ks.push_back(k);
  }
  json per = json::array();
  for (int k : ks) {
    std::string tag = "_k" + std::to_string(k + 1);
    try {
      auto r = exactness_check(s, k, p, h);
      per.push_back(json{{"k", k + 1},
                         {"lambda_residual", r.lambda_residual},
                         {"omega_residual", r.omega_residual},
                         {"odd_residual_consistent", r.odd_residual_consistent}});
      R.check("lambda_exact" + tag, r.lambda_residual < 1e-6, "one-form residual below 1e-6");
      R.check("omega_invariant" + tag, r.omega_residual < 1e-6, "two-form residual below 1e-6");
      // the order check needs residuals above rounding, hence the larger steps
      auto c1 = exactness_check(s, k, p, 2e-3), c2 = exactness_check(s, k, p, 4e-3);
      if (c1.lambda_residual < 1e-12) {
        R.verdict("second_order" + tag, "skipped", "residual at rounding level");
      } else {
        double ratio = c2.lambda_residual / c1.lambda_residual;
        per.back()["convergence_ratio"] = ratio;
        R.check("second_order" + tag, ratio >= 3.5 && ratio <= 4.5, "residual ratio for h = 4e-3 vs 2e-3 in [3.5, 4.5]");
      }
    } catch (const std::domain_error& e) {
      R.verdict("lambda_exact" + tag, "fail", e.what());
    }
  }
  R.outputs["exactness"] = per;
  try {
    auto d = dirac_identities(s);
    R.outputs["dirac"] = json{{"mixed_ok", d.mixed_ok}, {"theta_theta_zero", d.theta_theta_zero}};
    R.check("dirac_mixed", d.mixed_ok, "(W eps_hat^-1) eps_hat = W");
    R.check("dirac_isotropy", d.agrees_with_isotropy, "odd-odd Dirac bracket vanishes exactly when the seed is isotropic");
  } catch (const std::exception& e) {
    R.verdict("dirac_mixed", "skipped", e.what());
  }
  ASeed as = initial_aseed(f.ex);
  std::vector<double> a;
  for (size_t i = 0; i < f.ex.n(); ++i) a.push_back(std::exp(U(g)));
  json om = json::array();
  bool all = true;
  for (int k : ks) {
    double r = omega_a_invariance(as, k, a, h);
    om.push_back(json{{"k", k + 1}, {"residual", r}});
    all = all && r < 1e-6;
  }
  R.outputs["omega_a"] = om;
  R.check("omega_a_invariant", all, "A-side two-form residual below 1e-6");
}

void cmd_quantum_pentagon(Report& R, long order, const std::string& seed_path, const std::string& conv_s) {
  IntMat eps = {{0, 1}, {-1, 0}}, W;
  if (!seed_path.empty()) {
    SeedFile f = seed_from_json(read_json_file(seed_path));
    R.inputs["seed"] = to_json(f);
    eps = f.ex.eps;
    if (f.has_W) W = f.W;
    if (f.ex.n_frozen != 0 || eps.size() != 2) throw InputError("quantum-pentagon needs a rank-2 seed without frozen indices");
  }
  QConvention conv = conv_s.empty() ? QConvention::consistent : parse_q_convention(conv_s);
  R.inputs["order"] = order;
  R.inputs["convention"] = to_string(conv);
  if (order < 4) throw UsageError("--order must be at least 4");
  auto rep = pentagon_check(static_cast<int>(order), eps, W, conv);
  R.outputs = json{{"ok", rep.ok}, {"order", rep.order}, {"certified", rep.certified}, {"working_cap", rep.working_cap}, {"notes", rep.notes}};
  R.check("pentagon", rep.ok, rep.ok ? "mu1 mu2 mu1 mu2 mu1 returns every generator up to the swap" : "generators differ after the composition");
}

json newton_json(const NewtonGenus& g) {
  json poly = json::array();
  for (auto& [x, y] : g.polygon) poly.push_back(json::array({x, y}));
  return json{{"polygon", poly}, {"interior", g.interior}, {"boundary", g.boundary}, {"area2", g.area2.get_str()},
              {"degenerate", g.degenerate}, {"pick_check", g.pick_check}, {"genus", g.genus}};
}

void cmd_eliminate(Report& R, const std::string& path) {
  auto sys = vertical_from_json(read_json_file(path));
  R.inputs["system"] = to_json(sys);
  FiberCurve fc;
  try {
    fc = eliminate(sys);
  } catch (const std::invalid_argument& e) {
    R.verdict("eliminate", "fail", e.what());
    return;
  } catch (const std::domain_error& e) {
    R.verdict("eliminate", "fail", e.what());
    return;
  }
  json lif = json::array();
  for (size_t j = 0; j < sys.letters.size(); ++j)
    lif.push_back(json{{"letter", sys.letters[j]}, {"exponents", fc.letter_in_free[j]}, {"unit", fc.letter_unit[j].str()}});
  R.outputs["P"] = to_json(fc.P, fc.free_names);
  R.outputs["P_text"] = fc.P.str(fc.free_names);
  R.outputs["free_letters"] = fc.free_names;
  R.outputs["free_monomials"] = fc.free_monomials;
  R.outputs["letters_in_free"] = lif;
  R.outputs["used_resultant"] = fc.used_resultant;
  R.outputs["coefficients_subtraction_free"] = fc.coefficients_sf;
  auto g = newton_genus(fc.P);
  R.outputs["newton"] = newton_json(g);
  R.verdict("eliminate", "pass", "single primitive relation in two letters");
  bool inputs_sf = true;
  for (auto& u : sys.units) inputs_sf = inputs_sf && u.sf();
  for (auto& L : sys.laurents)
    for (auto& [e, c] : L.terms) inputs_sf = inputs_sf && c.sf();
  if (!inputs_sf)
    R.verdict("positivity", "skipped", "inputs are not subtraction-free");
  else
    R.check("positivity", fc.coefficients_sf, "coefficients of P stay subtraction-free");
}

void cmd_newton(Report& R, const std::string& path, const std::string& points) {
  std::vector<std::pair<long, long>> s;
  if (!path.empty()) {
    s = support_from_json(read_json_file(path));
  } else if (!points.empty()) {
    for (auto& pt : split(points, ';')) {
      auto v = int_list(pt, "--points");
      if (v.size() != 2) throw UsageError("--points takes i,j pairs separated by ';'");
      s.emplace_back(v[0], v[1]);
    }
  } else {
    throw UsageError("give --support or --points");
  }
  json sj = json::array();
  for (auto& [x, y] : s) sj.push_back(json::array({x, y}));
  R.inputs["support"] = sj;
  auto g = newton_genus(s);
  R.outputs = newton_json(g);
  if (g.degenerate)
    R.verdict("pick", "skipped", "degenerate polygon, genus 0");
  else
    R.check("pick", g.pick_check, "interior count agrees with Pick's theorem");
}

void cmd_bcfw(Report& R, const std::string& path, const std::string& anchor_s, const std::string& window_s) {
  auto C = boundary_from_json(read_json_file(path));
  R.inputs["matrix"] = boundary_to_json(C);
  std::vector<int> O, B;
  for (long v : int_list(anchor_s, "--anchor")) O.push_back(static_cast<int>(v - 1));
  for (long v : int_list(window_s, "--window")) B.push_back(static_cast<int>(v - 1));
  R.inputs["anchor"] = one_based(O);
  R.inputs["window"] = one_based(B);
  for (int c : O)
    if (c < 0 || static_cast<size_t>(c) >= C.f()) throw UsageError("anchor label out of range");
  for (int c : B)
    if (c < 0 || static_cast<size_t>(c) >= C.f()) throw UsageError("window label out of range");
  if (O.size() != C.r()) throw UsageError("anchor needs r labels");
  if (B.size() != C.r() + 1) throw UsageError("window needs r+1 labels");
  BcfwResult res;
  try {
    res = bcfw_check(C, O, B);
  } catch (const std::domain_error& e) {
    R.verdict("bcfw", "fail", e.what());
    return;
  }
  R.outputs["lhs"] = res.lhs.str("eta");
  R.outputs["rhs"] = res.rhs.str("eta");
  R.outputs["cofactors"] = strings(res.support.cofactors);
  json minors = json::object();
  minors["anchor"] = minor(C, O).str();
  R.outputs["minors"] = minors;
  R.check("bcfw", res.equal, "Berezin delta of the window equals the cofactor expansion");
  R.check("cofactor_null_vector", res.null_ok, "cofactors span the kernel of the window block");
}

void cmd_hexagon(Report& R, const std::string& uvw_s, const std::string& chart_path) {
  HexPeriod h;
  try {
    if (!uvw_s.empty()) {
      auto v = real_list(uvw_s, "--uvw");
      if (v.size() != 3) throw UsageError("--uvw takes three numbers");
      R.inputs["uvw"] = v;
      h = hexagon_period(v[0], v[1], v[2]);
    } else if (!chart_path.empty()) {
      auto c = chart_from_json(read_json_file(chart_path));
      R.inputs["chart"] = to_json(c);
      h = hexagon_period(c);
    } else {
      throw UsageError("give --uvw or --chart");
    }
  } catch (const std::domain_error& e) {
    R.verdict("evaluated", "fail", e.what());
    return;
  }
  R.outputs = json{{"V", h.V.real()},
                   {"V_tilde", h.V_tilde.real()},
                   {"total", h.total.real()},
                   {"V_tilde_imag", h.V_tilde.imag()},
                   {"total_imag", h.total.imag()},
                   {"J", cplx_json(h.J)},
                   {"delta_kin", h.delta_kin},
                   {"complex_branch", h.complex_branch},
                   {"coincident_roots", h.coincident}};
  bool finite = std::isfinite(h.total.real()) && std::isfinite(h.total.imag());
  R.check("evaluated", finite, "finite period");
  if (R.inputs.contains("uvw") && R.inputs["uvw"] == json::array({1.0, 1.0, 1.0})) {
    double ref = std::pow(std::numbers::pi, 4) / 72;
    R.check("symmetric_point", std::abs(h.total - ref) < 1e-9, "total equals pi^4/72 at (1,1,1)");
  }
}

void cmd_gfun(Report& R, const std::string& letters_s, long depth, double tol) {
  std::vector<cplx> L;
  for (auto& t : split(letters_s, ',')) L.push_back(parse_cplx(t));
  if (L.empty()) throw UsageError("--letters is empty");
  if (depth > 0 && static_cast<size_t>(depth) != L.size()) throw UsageError("--depth must match the number of letters");
  json lj = json::array();
  for (auto& a : L) lj.push_back(cplx_json(a));
  R.inputs["letters"] = lj;
  R.inputs["tolerance"] = tol;
  GResult g;
  try {
    g = g_function(L, tol);
  } catch (const std::domain_error& e) {
    R.verdict("converged", "fail", e.what());
    return;
  }
  R.outputs = json{{"value", cplx_json(g.value)}, {"error", g.error}, {"nodes", g.nodes}};
  double target = L.size() <= 3 ? 1e-10 : 1e-8;
  R.check("converged", g.error < target, "resolution doubling agrees to the depth target");
  if (L.size() == 1) {
    cplx closed = std::log(1.0 - 1.0 / L[0]);
    R.outputs["closed_form"] = cplx_json(closed);
    R.check("closed_form", std::abs(g.value - closed) < 1e-10, "G(a;1) = log(1 - 1/a)");
  }
  if (L.size() == 2) {
    cplx lhs = g_function({L[0]}, tol).value * g_function({L[1]}, tol).value;
    cplx rhs = g.value + g_function({L[1], L[0]}, tol).value;
    R.outputs["shuffle_defect"] = std::abs(lhs - rhs);
    R.check("shuffle", std::abs(lhs - rhs) < 1e-9, "G(a)G(b) = G(a,b) + G(b,a)");
  }
}

void cmd_dual(Report& R, const std::string& path) {
  SeedFile f = seed_from_json(read_json_file(path));
  R.inputs["seed"] = to_json(f);
  SuperSeed s = initial_superseed(f.ex, w_or_zero(f));
  auto d = langlands_dual(s);
  R.outputs = json{{"epsilon", d.ex.eps}, {"d", d.ex.d}, {"W", d.W}};
  bool sym = true;
  for (size_t i = 0; i < d.ex.n(); ++i)
    for (size_t j = 0; j < d.ex.n(); ++j)
      if (d.ex.d[i] * d.ex.eps[i][j] != -d.ex.d[j] * d.ex.eps[j][i]) sym = false;
  R.check("symmetrizer", sym, "d_i eps_ij is skew-symmetric for the dual with the same d");
  if (f.has_W) {
    bool before = is_admissible(f.ex, f.W), after = is_admissible(d.ex, d.W);
    R.outputs["admissible"] = after;
    if (before)
      R.check("admissible", after, "admissibility carries over to the dual");
    else
      R.verdict("admissible", "skipped", "input W is not admissible");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"super cluster toolkit"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");
  unsigned long rng_seed = 0;
  app.add_option("--rng-seed", rng_seed, "seed for randomized suites");

  std::string seed, seq, mode, conv, system, support, points, matrix, anchor, window, uvw, chart, letters;
  long at = 0, times = 0, random = 0, k = 0, order = 8, depth = 0;
  double h = 1e-5, tol = 1e-12;
  bool expect_return = false;

  auto* mutate = app.add_subcommand("mutate", "mutate X-, A- and super seeds along a sequence");
  mutate->add_option("--seed", seed)->required();
  mutate->add_option("--at", at);
  mutate->add_option("--times", times);
  mutate->add_option("--seq", seq);
  mutate->add_option("--mode", mode);
  mutate->add_flag("--expect-return", expect_return);
  mutate->add_option("--rng-seed", rng_seed);

  auto* vb = app.add_subcommand("verify-bracket", "primed bracket relations after mutation");
  vb->add_option("--seed", seed);
  vb->add_option("--seq", seq);
  vb->add_option("--random", random);
  vb->add_option("--mode", mode);
  vb->add_option("--rng-seed", rng_seed);

  auto* vd = app.add_subcommand("verify-double", "exactness of the lifted mutation on the double");
  vd->add_option("--seed", seed)->required();
  vd->add_option("--k", k);
  vd->add_option("--h", h);
  vd->add_option("--rng-seed", rng_seed);

  auto* qp = app.add_subcommand("quantum-pentagon", "rank-2 quantum pentagon at a truncation order");
  qp->add_option("--order", order);
  qp->add_option("--seed", seed);
  qp->add_option("--convention", conv);
  qp->add_option("--rng-seed", rng_seed);

  auto* el = app.add_subcommand("eliminate", "fiber polynomial of a vertical system");
  el->add_option("--system", system)->required();
  el->add_option("--rng-seed", rng_seed);

  auto* ng = app.add_subcommand("newton-genus", "interior points of a Newton polygon");
  ng->add_option("--support", support);
  ng->add_option("--points", points);
  ng->add_option("--rng-seed", rng_seed);

  auto* bc = app.add_subcommand("bcfw", "odd-sector identity on a boundary matrix");
  bc->add_option("--matrix", matrix)->required();
  bc->add_option("--anchor", anchor)->required();
  bc->add_option("--window", window)->required();
  bc->add_option("--rng-seed", rng_seed);

  auto* hx = app.add_subcommand("hexagon", "two-loop hexagon period");
  hx->add_option("--uvw", uvw);
  hx->add_option("--chart", chart);
  hx->add_option("--rng-seed", rng_seed);

  auto* gf = app.add_subcommand("gfun", "Goncharov G(a1..am;1)");
  gf->add_option("--letters", letters)->required();
  gf->add_option("--depth", depth);
  gf->add_option("--tol", tol);
  gf->add_option("--rng-seed", rng_seed);

  auto* du = app.add_subcommand("dual", "Langlands dual seed data");
  du->add_option("--seed", seed)->required();
  du->add_option("--rng-seed", rng_seed);

  std::vector<std::string> argv_s{"sfg"};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (auto& s : argv_s) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  Report R;
  auto t0 = std::chrono::steady_clock::now();
  try {
    if (mutate->parsed()) {
      R.command = "mutate";
      cmd_mutate(R, seed, at, times, seq, mode, expect_return);
    } else if (vb->parsed()) {
      R.command = "verify-bracket";
      cmd_verify_bracket(R, seed, seq, random, rng_seed, mode);
    } else if (vd->parsed()) {
      R.command = "verify-double";
      cmd_verify_double(R, seed, k, h, rng_seed);
    } else if (qp->parsed()) {
      R.command = "quantum-pentagon";
      cmd_quantum_pentagon(R, order, seed, conv);
    } else if (el->parsed()) {
      R.command = "eliminate";
      cmd_eliminate(R, system);
    } else if (ng->parsed()) {
      R.command = "newton-genus";
      cmd_newton(R, support, points);
    } else if (bc->parsed()) {
      R.command = "bcfw";
      cmd_bcfw(R, matrix, anchor, window);
    } else if (hx->parsed()) {
      R.command = "hexagon";
      cmd_hexagon(R, uvw, chart);
    } else if (gf->parsed()) {
      R.command = "gfun";
      cmd_gfun(R, letters, depth, tol);
    } else if (du->parsed()) {
      R.command = "dual";
      cmd_dual(R, seed);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json rep;
  rep["command"] = R.command;
  rep["inputs"] = R.inputs;
  rep["inputs_digest"] = digest(R.inputs);
  rep["outputs"] = R.outputs;
  rep["verdicts"] = R.verdicts;
  rep["wall_clock_s"] = secs;
  out << rep.dump(2) << "\n";
  return R.failed ? 1 : 0;
}

}  // namespace sfg
