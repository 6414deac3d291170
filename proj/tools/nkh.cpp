// nkh: verify / solve / sweep / report for the homogeneous nearly-Kahler
// classification models (s3s3, flag, cp3, s6, or a structure-constant file).

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "nkh/catalog.hpp"
#include "nkh/report.hpp"

using namespace nkh;

namespace {

struct CommonOpts {
  std::string backend = "exact";
  double tolerance = 1e-9;
  unsigned long seed = 0;
  bool timings = false;
};

ZeroTest make_zero_test(const CommonOpts& o, double scale = 1.0) {
  if (o.backend == "float") return ZeroTest::float_mode(o.tolerance * std::max(scale, 1.0));
  return ZeroTest::exact_mode();
}

std::map<std::string, std::string> parse_kv(const std::vector<std::string>& args) {
  std::map<std::string, std::string> kv;
  for (const auto& a : args) {
    auto eq = a.find('=');
    if (eq == std::string::npos) fail(Errc::BadParams, "expected key=value, got '" + a + "'");
    kv[a.substr(0, eq)] = a.substr(eq + 1);
  }
  return kv;
}

Scalar param_scalar(const std::map<std::string, std::string>& kv, const std::string& key,
                    const Scalar& def, bool flt) {
  auto it = kv.find(key);
  Scalar v = it == kv.end() ? def : Scalar::rational(rational_from_text(it->second));
  return flt ? v.to_float() : v;
}

SignTriple parse_eps(const std::string& text) {
  if (text.size() != 3) fail(Errc::BadParams, "eps must be a triple like ++- or +++");
  SignTriple eps;
  for (int i = 0; i < 3; ++i) {
    char c = text[static_cast<size_t>(i)];
    if (c == '+')
      eps[static_cast<size_t>(i)] = 1;
    else if (c == '-')
      eps[static_cast<size_t>(i)] = -1;
    else
      fail(Errc::BadParams, "eps characters must be + or -");
  }
  return eps;
}

std::string eps_str(const SignTriple& eps) {
  std::string s;
  for (int e : eps) s += e > 0 ? '+' : '-';
  return s;
}

struct GridAxis {
  std::string name;
  std::vector<Scalar> values;
};

GridAxis parse_axis(const std::string& name, const std::string& spec) {
  GridAxis ax;
  ax.name = name;
  auto c1 = spec.find(':');
  if (c1 == std::string::npos) {
    ax.values.push_back(Scalar::rational(rational_from_text(spec)));
    return ax;
  }
  auto c2 = spec.find(':', c1 + 1);
  if (c2 == std::string::npos) fail(Errc::BadParams, "grid spec must be start:stop:count");
  Rational start = rational_from_text(spec.substr(0, c1));
  Rational stop = rational_from_text(spec.substr(c1 + 1, c2 - c1 - 1));
  long count = std::stol(spec.substr(c2 + 1));
  if (count < 1) fail(Errc::BadParams, "grid count must be >= 1");
  if (count == 1) {
    ax.values.push_back(Scalar::rational(start));
    return ax;
  }
  Rational step = (stop - start) / Rational(count - 1);
  for (long i = 0; i < count; ++i)
    ax.values.push_back(Scalar::rational(Rational(start + Rational(i) * step)));
  return ax;
}

void run_parallel(size_t count, const std::function<void(size_t)>& work) {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1 || count < 4) {
    for (size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= count) return;
        work(i);
      }
    });
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

Scalar canonical_mu() { return Scalar::quadext(Rational(0), Rational(1, 2), 3); }  // sqrt(3)/2

int cmd_verify(const std::string& model, const std::vector<std::string>& params,
               const CommonOpts& opts, bool force_file = false) {
  auto kv = parse_kv(params);
  bool flt = opts.backend == "float";
  ReportDocument doc;
  doc.command = "verify";
  doc.model = model;
  doc.backend = opts.backend;
  doc.seed = opts.seed;
  for (const auto& [k, v] : kv) doc.parameters[k] = v;
  auto t0 = std::chrono::steady_clock::now();
  bool disagreement = false;

  if (model == "s3s3" && !force_file) {
    Scalar l1, l2, l3;
    if (kv.count("l1") + kv.count("l2") + kv.count("l3") == 0) {
      l1 = l2 = l3 = canonical_mu();
      doc.parameters["l1"] = doc.parameters["l2"] = doc.parameters["l3"] = "sqrt(3)/2";
    } else {
      l1 = param_scalar(kv, "l1", Scalar(1), false);
      l2 = param_scalar(kv, "l2", Scalar(1), false);
      l3 = param_scalar(kv, "l3", Scalar(1), false);
    }
    if (flt) {
      l1 = l1.to_float();
      l2 = l2.to_float();
      l3 = l3.to_float();
    }
    ZeroTest zt = make_zero_test(opts, std::max({std::fabs(l1.to_double()), std::fabs(l2.to_double()),
                                                 std::fabs(l3.to_double()), 1.0}));
    auto rep = s3s3_classify_diagonal(l1, l2, l3, zt);
    doc.verdict = rep.strict_nk ? "StrictNK" : "Neither";
    doc.residuals["reyes_carrion"] = rep.rc_residual;
    doc.solved["stable"] = rep.stable ? "true" : "false";
    doc.solved["positive_definite"] = rep.positive ? "true" : "false";
    if (rep.lambda_squared) doc.solved["lambda_squared"] = rep.lambda_squared->str();
    if (rep.homog_verdict) doc.solved["homog_verdict"] = verdict_name(*rep.homog_verdict);
    disagreement = !rep.cross_check_agrees;
    doc.ok = !disagreement;
  } else if (force_file || model == "flag" || model == "cp3" || model == "s3s3-lo" ||
             model.find('.') != std::string::npos || model.find('/') != std::string::npos) {
    HomogeneousModel m;
    if (!force_file && model == "flag") {
      FlagMetricParams p{param_scalar(kv, "r", Scalar(1), false),
                         param_scalar(kv, "s", Scalar(1), false),
                         param_scalar(kv, "t", Scalar(1), false)};
      SignTriple eps = parse_eps(kv.count("eps") ? kv.at("eps") : "+++");
      m = build_flag(p, eps);
      auto abc = flag_connection_coefficients(p);
      doc.solved["alpha"] = abc[0].str();
      doc.solved["beta"] = abc[1].str();
      doc.solved["gamma"] = abc[2].str();
    } else if (!force_file && model == "cp3") {
      // the metric g_t is classified over both invariant J candidates
      // unless eta is pinned explicitly
      Scalar t = param_scalar(kv, "t", Scalar(1), false);
      int eta = 0;
      if (kv.count("eta")) {
        const std::string& e = kv.at("eta");
        if (e == "canonical")
          eta = cp3_canonical_eta();
        else if (e == "+1" || e == "1")
          eta = 1;
        else if (e == "-1")
          eta = -1;
        else
          fail(Errc::BadParams, "eta must be canonical, +1 or -1");
      } else {
        auto rank = [](Verdict v) {
          switch (v) {
            case Verdict::StrictNK: return 3;
            case Verdict::Kahler: return 2;
            case Verdict::HermitianOther: return 1;
            case Verdict::Neither: return 0;
          }
          return 0;
        };
        int best = -1;
        for (int cand : {cp3_canonical_eta(), -cp3_canonical_eta()}) {
          HomogeneousModel trial = build_cp3({t}, cand);
          auto v = classify(trial.metric, *trial.acs, trial.split, trial.algebra, trial.coframe)
                       .verdict;
          if (rank(v) > best) {
            best = rank(v);
            eta = cand;
          }
        }
      }
      m = build_cp3({t}, eta);
      doc.parameters["eta"] = std::to_string(eta);
    } else if (!force_file && model == "s3s3-lo") {
      m = ledger_obata_model();
    } else {
      m = load_model_file(model);
      if (!m.acs) fail(Errc::BadParams, "model file does not define an acs (J) block");
    }
    // serialize omega for the report (signed monomial list)
    doc.solved["omega"] = kahler_form(m.metric, *m.acs).str();
    if (flt) m = m.to_float();
    ClassifyOptions copts;
    copts.verdict_rel_tol = opts.tolerance;
    copts.seed = opts.seed;
    auto rep = classify(m.metric, *m.acs, m.split, m.algebra, m.coframe, copts);
    fill_report_from_classification(doc, rep);
    if (rep.verdict == Verdict::StrictNK) {
      // Reyes Carrion re-check through the forms layer
      KForm omega = kahler_form(m.metric, *m.acs);
      double resid = 0.0;
      ZeroTest zt = make_zero_test(opts, std::max(1.0, omega.max_abs_coeff()));
      auto lam2 = rc_lambda_squared(omega, m.coframe, &resid, zt);
      doc.residuals["reyes_carrion"] = resid;
      if (lam2) doc.solved["lambda_squared"] = lam2->str();
      disagreement = !lam2.has_value();
    }
    doc.ok = !disagreement;
  } else if (model == "s6" && !force_file) {
    SpherePointFrame frame;
    if (kv.count("u")) {
      std::array<Rational, 6> u;
      std::istringstream us(kv.at("u"));
      std::string part;
      size_t i = 0;
      while (std::getline(us, part, ',') && i < 6) u[i++] = rational_from_text(part);
      if (i != 6) fail(Errc::BadParams, "u must list six rationals");
      frame = sphere_point_from_params(u);
    } else {
      frame = sphere_point_basis(1);
      doc.parameters["point"] = "e1";
    }
    auto rep = s6_check(frame, opts.seed);
    doc.verdict = rep.ok ? "StrictNK" : "Failed";
    doc.residuals["antisymmetry"] = rep.antisym_residual;
    doc.residuals["type_constant"] = rep.alpha_residual;
    doc.residuals["j_square"] = rep.j_square_residual;
    doc.residuals["finite_difference"] = rep.fd_residual;
    doc.solved["alpha"] = rep.alpha.str();
    doc.ok = rep.ok;
    disagreement = !rep.ok;
  } else {
    fail(Errc::UnknownModel, "unknown model '" + model + "'");
  }

  if (opts.timings) {
    auto t1 = std::chrono::steady_clock::now();
    doc.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  }
  std::cout << doc.to_json() << "\n";
  return disagreement ? 2 : 0;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

int cmd_solve(const std::string& model, const CommonOpts& opts) {
  ReportDocument doc;
  doc.command = "solve";
  doc.model = model;
  doc.backend = opts.backend;
  doc.seed = opts.seed;
  if (model == "s3s3") {
    auto sol = solve_li2();
    doc.verdict = "solved";
    doc.solved["family"] = "all diagonal values equal in modulus";
    doc.solved["description"] = sol.description;
    doc.solved["k_coefficient"] = sol.k_coeff.str();
  } else if (model == "flag") {
    auto loci = flag_solve();
    doc.verdict = "solved";
    doc.solved["strict_nk"] = loci.strict_nk;
    for (size_t i = 0; i < loci.kahler_families.size(); ++i)
      doc.solved["kahler_" + std::to_string(i)] = loci.kahler_families[i];
    doc.solved["sign_system_third_line"] = loci.third_line_variant;
  } else if (model == "cp3") {
    std::vector<Scalar> grid;
    for (int k = 1; k <= 16; ++k) grid.push_back(Scalar::rational(k, 4));
    auto locus = cp3_solve(grid);
    doc.verdict = "solved";
    doc.solved["description"] = locus.description;
    doc.solved["strict_nk_t"] = locus.strict_nk_t.str();
    doc.solved["kahler_t"] = locus.kahler_t.str();
  } else {
    fail(Errc::UnknownModel, "solve supports s3s3, flag, cp3");
  }
  std::cout << doc.to_json() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

int cmd_sweep(const std::string& model, const std::vector<std::string>& params,
              const CommonOpts& opts, const std::string& format, size_t max_points) {
  auto kv = parse_kv(params);
  bool flt = opts.backend == "float";
  SweepTable table;
  table.model = model;

  if (model == "s3s3") {
    GridAxis a1 = parse_axis("l1", kv.count("l1") ? kv.at("l1") : "0.5:2:4");
    GridAxis a2 = parse_axis("l2", kv.count("l2") ? kv.at("l2") : "0.5:2:4");
    GridAxis a3 = parse_axis("l3", kv.count("l3") ? kv.at("l3") : "0.5:2:4");
    table.parameter_names = {"l1", "l2", "l3"};
    size_t total = a1.values.size() * a2.values.size() * a3.values.size();
    if (total > max_points) fail(Errc::GridTooLarge, "grid has " + std::to_string(total) + " points");
    std::vector<std::array<Scalar, 3>> pts;
    for (const auto& x : a1.values)
      for (const auto& y : a2.values)
        for (const auto& z : a3.values) pts.push_back({x, y, z});
    table.rows.resize(pts.size());
    run_parallel(pts.size(), [&](size_t i) {
      Scalar l1 = flt ? pts[i][0].to_float() : pts[i][0];
      Scalar l2 = flt ? pts[i][1].to_float() : pts[i][1];
      Scalar l3 = flt ? pts[i][2].to_float() : pts[i][2];
      ZeroTest zt = make_zero_test(opts, std::max(1.0, std::fabs(l1.to_double())));
      SweepRow row;
      row.parameters["l1"] = pts[i][0].str();
      row.parameters["l2"] = pts[i][1].str();
      row.parameters["l3"] = pts[i][2].str();
      auto rep = s3s3_classify_diagonal(l1, l2, l3, zt);
      row.verdict = rep.strict_nk ? "StrictNK" : "Neither";
      row.residual = rep.rc_residual;
      // analytic locus: equal moduli and det C > 0
      Scalar d1 = abs(pts[i][0]) - abs(pts[i][1]);
      Scalar d2 = abs(pts[i][0]) - abs(pts[i][2]);
      bool analytic = d1.is_zero() && d2.is_zero() && (pts[i][0] * pts[i][1] * pts[i][2]).sign() > 0;
      row.analytic_match = (analytic == rep.strict_nk) && rep.cross_check_agrees;
      table.rows[i] = std::move(row);
    });
  } else if (model == "flag") {
    GridAxis ar = parse_axis("r", kv.count("r") ? kv.at("r") : "0.5:3:6");
    GridAxis as = parse_axis("s", kv.count("s") ? kv.at("s") : "0.5:3:6");
    GridAxis at = parse_axis("t", kv.count("t") ? kv.at("t") : "0.5:3:6");
    std::vector<SignTriple> patterns;
    std::string eps_val = kv.count("eps") ? kv.at("eps") : "all";
    if (eps_val == "all") {
      for (int mask = 0; mask < 8; ++mask)
        patterns.push_back({(mask & 1) ? -1 : 1, (mask & 2) ? -1 : 1, (mask & 4) ? -1 : 1});
    } else {
      patterns.push_back(parse_eps(eps_val));
    }
    table.parameter_names = {"r", "s", "t", "eps"};
    size_t total = ar.values.size() * as.values.size() * at.values.size() * patterns.size();
    if (total > max_points) fail(Errc::GridTooLarge, "grid has " + std::to_string(total) + " points");

    // analytic expectations per pattern (Kahler hyperplane index or none)
    std::map<std::string, std::optional<int>> family;
    for (const auto& eps : patterns)
      if (!family.count(eps_str(eps))) family[eps_str(eps)] = flag_kahler_family(eps);

    struct Pt {
      Scalar r, s, t;
      SignTriple eps;
    };
    std::vector<Pt> pts;
    for (const auto& r : ar.values)
      for (const auto& s : as.values)
        for (const auto& t : at.values)
          for (const auto& eps : patterns) pts.push_back({r, s, t, eps});
    table.rows.resize(pts.size());
    run_parallel(pts.size(), [&](size_t i) {
      const Pt& p = pts[i];
      SweepRow row;
      row.parameters["r"] = p.r.str();
      row.parameters["s"] = p.s.str();
      row.parameters["t"] = p.t.str();
      row.parameters["eps"] = eps_str(p.eps);
      FlagMetricParams fp{flt ? p.r.to_float() : p.r, flt ? p.s.to_float() : p.s,
                          flt ? p.t.to_float() : p.t};
      HomogeneousModel m = build_flag(fp, p.eps);
      ClassifyOptions copts;
      copts.verdict_rel_tol = opts.tolerance;
      copts.seed = opts.seed;
      auto rep = classify(m.metric, *m.acs, m.split, m.algebra, m.coframe, copts);
      row.verdict = verdict_name(rep.verdict);
      row.residual = rep.sym_residual_norm;
      bool equal_signs = p.eps[0] == p.eps[1] && p.eps[1] == p.eps[2];
      bool expect_snk = equal_signs && (p.r == p.s) && (p.s == p.t);
      auto fam = family.at(eps_str(p.eps));
      bool expect_kahler = false;
      if (fam) {
        if (*fam == 0) expect_kahler = (p.r == p.s + p.t);
        if (*fam == 1) expect_kahler = (p.s == p.r + p.t);
        if (*fam == 2) expect_kahler = (p.t == p.r + p.s);
      }
      bool match = (expect_snk == (rep.verdict == Verdict::StrictNK)) &&
                   (expect_kahler == (rep.verdict == Verdict::Kahler));
      row.analytic_match = match;
      table.rows[i] = std::move(row);
    });
  } else if (model == "cp3") {
    GridAxis at = parse_axis("t", kv.count("t") ? kv.at("t") : "0.25:4:16");
    table.parameter_names = {"t", "eta"};
    int can = cp3_canonical_eta();
    size_t total = at.values.size() * 2;
    if (total > max_points) fail(Errc::GridTooLarge, "grid has " + std::to_string(total) + " points");
    // which eta carries the Kahler metric at t = 2
    int kahler_eta = 0;
    for (int eta : {1, -1}) {
      HomogeneousModel m = build_cp3({Scalar(2)}, eta);
      if (classify(m.metric, *m.acs, m.split, m.algebra, m.coframe).verdict == Verdict::Kahler)
        kahler_eta = eta;
    }
    struct Pt {
      Scalar t;
      int eta;
    };
    std::vector<Pt> pts;
    for (const auto& t : at.values)
      for (int eta : {1, -1}) pts.push_back({t, eta});
    table.rows.resize(pts.size());
    run_parallel(pts.size(), [&](size_t i) {
      const Pt& p = pts[i];
      SweepRow row;
      row.parameters["t"] = p.t.str();
      row.parameters["eta"] = std::to_string(p.eta);
      HomogeneousModel m = build_cp3({flt ? p.t.to_float() : p.t}, p.eta);
      ClassifyOptions copts;
      copts.verdict_rel_tol = opts.tolerance;
      copts.seed = opts.seed;
      auto rep = classify(m.metric, *m.acs, m.split, m.algebra, m.coframe, copts);
      row.verdict = verdict_name(rep.verdict);
      row.residual = rep.sym_residual_norm;
      bool expect_snk = (p.t == Scalar(1)) && p.eta == can;
      bool expect_kahler = (p.t == Scalar(2)) && p.eta == kahler_eta;
      row.analytic_match = (expect_snk == (rep.verdict == Verdict::StrictNK)) &&
                           (expect_kahler == (rep.verdict == Verdict::Kahler));
      table.rows[i] = std::move(row);
    });
  } else {
    fail(Errc::UnknownModel, "sweep supports s3s3, flag, cp3");
  }

  if (format == "csv")
    std::cout << table.to_csv();
  else
    std::cout << table.to_json(opts.backend, opts.seed) << "\n";
  return table.all_match() ? 0 : 2;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

int cmd_report(const std::string& in_path, const std::string& format) {
  std::string text;
  if (in_path.empty() || in_path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(in_path);
    if (!f) fail(Errc::BadParams, "cannot open '" + in_path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  std::string err;
  if (!validate_report_json(text, &err)) fail(Errc::ParseError, "invalid report: " + err);
  auto j = nlohmann::json::parse(text);
  if (format == "csv") {
    if (!j.contains("rows")) fail(Errc::BadParams, "csv output requires a sweep report");
    SweepTable table;
    table.model = j.value("model", "");
    for (const auto& n : j["parameter_names"]) table.parameter_names.push_back(n.get<std::string>());
    for (const auto& r : j["rows"]) {
      SweepRow row;
      for (auto it = r["parameters"].begin(); it != r["parameters"].end(); ++it)
        row.parameters[it.key()] = it.value().get<std::string>();
      row.verdict = r.value("verdict", "");
      row.analytic_match = r.value("analytic_match", true);
      row.residual = std::strtod(r.value("residual", "0").c_str(), nullptr);
      table.rows.push_back(std::move(row));
    }
    std::cout << table.to_csv();
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homogeneous nearly-Kahler structure verifier"};
  app.require_subcommand(1);

  CommonOpts opts;
  const char* env_tol = std::getenv("NKH_TOLERANCE");
  if (env_tol) opts.tolerance = std::strtod(env_tol, nullptr);

  std::string model;
  std::vector<std::string> params;
  std::string format = "json";
  std::string in_path;
  size_t max_points = 1000000;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--backend", opts.backend, "exact or float")
        ->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--tolerance", opts.tolerance, "float verdict tolerance");
    sub->add_option("--seed", opts.seed, "seed for randomized checks");
    sub->add_flag("--timings", opts.timings, "include wall time in reports");
  };

  std::string model_file;
  auto* verify = app.add_subcommand("verify", "classify one model instance");
  verify->add_option("model", model, "s3s3 | flag | cp3 | s6 | s3s3-lo | model file");
  verify->add_option("params", params, "key=value parameters");
  verify->add_option("--model-file", model_file, "structure-constant document to classify");
  add_common(verify);

  auto* solve = app.add_subcommand("solve", "print the analytic solution locus");
  solve->add_option("model", model, "s3s3 | flag | cp3")->required();
  add_common(solve);

  auto* sweep = app.add_subcommand("sweep", "classify a parameter grid");
  sweep->add_option("model", model, "s3s3 | flag | cp3")->required();
  sweep->add_option("params", params, "axis=start:stop:count, eps=all|pattern");
  sweep->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sweep->add_option("--max-points", max_points, "grid size cap");
  add_common(sweep);

  auto* report = app.add_subcommand("report", "validate and re-emit a report");
  report->add_option("--in", in_path, "input report path (default stdin)");
  report->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(verify)) {
      if (model.empty() && model_file.empty())
        fail(Errc::BadParams, "verify needs a model name or --model-file");
      return cmd_verify(model_file.empty() ? model : model_file, params, opts,
                        !model_file.empty());
    }
    if (app.got_subcommand(solve)) return cmd_solve(model, opts);
    if (app.got_subcommand(sweep)) return cmd_sweep(model, params, opts, format, max_points);
    if (app.got_subcommand(report)) return cmd_report(in_path, format);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
