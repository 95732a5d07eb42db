// Batch runner for the detour-operator verification suite: complex
// generators, symbolic and numeric check batteries, machine-readable
// reports with deterministic seeds.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <detourlab/detourlab.hpp>

namespace {

using namespace detourlab;

int fail_with(const std::string& code, const std::string& message) {
  nlohmann::ordered_json err;
  err["error"] = code;
  err["message"] = message;
  std::cerr << err.dump() << "\n";
  return 2;
}

std::vector<double> parse_decimal_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

int emit_report(const RunReport& rep, const std::string& out_path,
                const std::string& format) {
  const bool json_fmt = format != "text";
  std::string body = json_fmt ? rep.to_json().dump(2) + "\n" : rep.to_text();
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) return fail_with("bad_output_file", "cannot write '" + out_path + "'");
    out << body;
  }
  std::cout << body;
  return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"detour: verification lab for conformal detour operators on "
               "finite Hodge complexes"};
  app.require_subcommand(1);

  // ---- gen ------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate a complex file");
  gen->require_subcommand(1);

  int g_n = 6, g_k = 1, g_M = 1;
  double g_J = 0.0;
  bool g_J_set = false;
  std::uint64_t g_seed = 1;
  std::string g_out, g_spectrum, g_dims;
  double g_tol_tau = 1e-8;

  auto add_common = [&](CLI::App* cmd, bool with_k) {
    cmd->add_option("--seed", g_seed, "64-bit generator seed");
    cmd->add_option("--out", g_out, "output path")->required();
    if (with_k) cmd->add_option("--k", g_k, "form degree the seeding targets");
  };

  auto* gen_prescribed = gen->add_subcommand(
      "prescribed", "prescribed-spectrum complex; seeds every eigenvalue "
                    "target for (n, k, J) unless --spectrum is given");
  gen_prescribed->add_option("--n", g_n, "ambient even dimension")->required();
  gen_prescribed->add_option("--J", g_J, "Schouten trace (default -n/2)")
      ->each([&](const std::string&) { g_J_set = true; });
  gen_prescribed->add_option("--spectrum", g_spectrum,
                             "comma-separated singular values placed at degree k");
  gen_prescribed->add_option("--dims", g_dims,
                             "comma-separated harmonic paddings per degree");
  add_common(gen_prescribed, true);

  auto* gen_random = gen->add_subcommand("random", "random complex with d∘d = 0");
  gen_random->add_option("--dims", g_dims, "comma-separated dimensions per degree")
      ->required();
  add_common(gen_random, false);

  auto* gen_torus = gen->add_subcommand("torus", "flat-torus Fourier truncation");
  gen_torus->add_option("--n", g_n, "torus dimension")->required();
  gen_torus->add_option("--M", g_M, "frequency cutoff")->required();
  gen_torus->add_option("--out", g_out, "output path")->required();

  // ---- verify ---------------------------------------------------------
  auto* ver = app.add_subcommand("verify", "run verification batteries");
  ver->require_subcommand(1);

  int v_n = 6, v_k = -1, v_pmax = 4;
  double v_J = 0.0;
  std::uint64_t v_seed = 1;
  std::string v_in, v_out, v_format = "json";
  double v_tol = 1e-8;
  int v_trials = 3;

  auto* ver_sym = ver->add_subcommand("symbolic",
                                      "exact recursion-vs-closed-form checks");
  ver_sym->add_option("--n", v_n, "ambient even dimension")->required();
  ver_sym->add_option("--k", v_k, "form degree (default: all admissible)");
  ver_sym->add_option("--pmax", v_pmax, "largest recursion depth");
  ver_sym->add_option("--out", v_out, "report path");
  ver_sym->add_option("--format", v_format, "json|text");

  auto* ver_cx = ver->add_subcommand("complex", "numeric battery on a complex file");
  ver_cx->add_option("--in", v_in, "complex file")->required();
  ver_cx->add_option("--J", v_J, "Schouten trace")->required();
  ver_cx->add_option("--k", v_k, "form degree (default: all feasible)");
  ver_cx->add_option("--n", v_n, "ambient dimension (default: top degree of the file)");
  ver_cx->add_option("--tol", v_tol, "eigen-membership tolerance tau");
  ver_cx->add_option("--out", v_out, "report path");
  ver_cx->add_option("--format", v_format, "json|text");

  auto* ver_suite = ver->add_subcommand("suite", "the full check battery");
  ver_suite->add_option("--seed", v_seed, "suite seed");
  ver_suite->add_option("--trials", v_trials, "complexes per (n, k) case");
  ver_suite->add_option("--tol", v_tol, "eigen-membership tolerance tau");
  ver_suite->add_option("--out", v_out, "report path");
  ver_suite->add_option("--format", v_format, "json|text");

  // ---- explain ----------------------------------------------------------
  std::string x_id;
  auto* expl = app.add_subcommand("explain", "print a check's statement and formula");
  expl->add_option("id", x_id, "check id, e.g. nullL, decomp, Qdes")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_prescribed->parsed() || gen_random->parsed() || gen_torus->parsed()) {
      Tolerances tol;
      tol.tau = g_tol_tau;
      ChainComplex<double> cx;
      json meta;
      if (gen_torus->parsed()) {
        cx = build_torus<double>(g_n, g_M, tol);
        meta["generator"] = "torus";
        meta["n"] = g_n;
        meta["M"] = g_M;
      } else if (gen_random->parsed()) {
        const std::vector<int> dims = parse_int_list(g_dims);
        if (dims.size() < 2) return fail_with("bad_arguments", "--dims needs >= 2 entries");
        CounterRng rng(g_seed);
        cx = build_random<double>(static_cast<int>(dims.size()) - 1, dims, rng, false, tol);
        meta["generator"] = "random";
        meta["seed"] = g_seed;
        meta["dims"] = dims;
      } else {
        if (!g_J_set) g_J = -0.5 * g_n;
        CounterRng rng(g_seed);
        const DetourContext<double> ctx(g_n, g_k, g_J);
        if (!g_spectrum.empty()) {
          const std::vector<double> sigma = parse_decimal_list(g_spectrum);
          const int top = std::max(2, g_k + 2);
          std::vector<std::vector<double>> spectra(top);
          spectra[g_k] = sigma;
          std::vector<int> extra(top + 1, 1);
          if (!g_dims.empty()) {
            const std::vector<int> e = parse_int_list(g_dims);
            for (std::size_t i = 0; i < e.size() && i < extra.size(); ++i)
              extra[i] = e[i];
          }
          cx = build_prescribed<double>(top, spectra, extra, rng, tol);
          meta["generator"] = "prescribed";
        } else {
          auto seeded = make_seeded_complex<double>(ctx, rng, tol);
          cx = std::move(seeded.cx);
          meta["generator"] = "prescribed-seeded";
          json seeds = json::array();
          for (const auto& [lam, mult] : seeded.exact_side)
            seeds.push_back({{"side", "exact"}, {"lambda", lam}, {"mult", mult}});
          for (const auto& [lam, mult] : seeded.coexact_side)
            seeds.push_back({{"side", "coexact"}, {"lambda", lam}, {"mult", mult}});
          meta["seeded"] = std::move(seeds);
        }
        meta["n"] = g_n;
        meta["k"] = g_k;
        meta["J"] = g_J;
        meta["seed"] = g_seed;
      }
      validate_complex(cx);
      write_complex(g_out, cx, meta);
      std::cout << "wrote " << g_out << "\n";
      return 0;
    }

    if (ver_sym->parsed()) {
      RunReport rep;
      rep.config["command"] = "verify symbolic";
      rep.config["n"] = v_n;
      rep.config["pmax"] = v_pmax;
      auto run_for = [&](int k) {
        for (int p = 1; p <= v_pmax; ++p) {
          CheckResult c;
          c.id = "formula";
          c.params["n"] = v_n;
          c.params["k"] = k;
          c.params["p"] = p;
          c.paper_ref = "formula";
          auto v = verify_formula(v_n, k, p);
          c.verdict = v.equal ? Verdict::pass : Verdict::fail;
          if (!v.equal) c.note = "difference: " + v.difference.str();
          rep.add(std::move(c));
        }
      };
      if (v_k >= 0) {
        run_for(v_k);
      } else {
        for (int k = 1; k <= v_n / 2; ++k) {
          if (v_n == 4 && k != 1) continue;
          run_for(k);
        }
      }
      return emit_report(rep, v_out, v_format);
    }

    if (ver_cx->parsed()) {
      std::ifstream in(v_in);
      if (!in) return fail_with("bad_input_file", "cannot read '" + v_in + "'");
      json doc;
      try {
        in >> doc;
      } catch (const std::exception& e) {
        return fail_with("bad_input_file", e.what());
      }
      const ChainComplex<double> cx = complex_from_json<double>(doc);
      validate_complex(cx);
      Tolerances tol;
      tol.tau = v_tol;
      int n_ctx = v_n;
      if (!ver_cx->count("--n")) {
        n_ctx = doc.contains("meta") && doc["meta"].contains("n")
                    ? doc["meta"]["n"].get<int>()
                    : cx.n;
      }
      if (n_ctx < 4 || n_ctx % 2 != 0)
        return fail_with("bad_arguments",
                         "ambient dimension must be even and >= 4; pass --n");
      RunReport rep;
      rep.config["command"] = "verify complex";
      rep.config["in"] = v_in;
      rep.config["n"] = n_ctx;
      rep.config["J"] = v_J;

      std::vector<int> degrees;
      if (v_k >= 0) degrees.push_back(v_k);
      else
        for (int k = 0; k <= std::min(n_ctx / 2, cx.n); ++k) degrees.push_back(k);

      CounterRng rng(1);
      for (int k : degrees) {
        const DetourContext<double> ctx(n_ctx, k, v_J);
        nlohmann::ordered_json params;
        params["n"] = n_ctx;
        params["k"] = k;
        params["J"] = v_J;
        if (v_J == 0.0) {
          // Ricci-flat branch: Q_k = (d delta)^p by action, pairings, and the
          // torus Betti numbers when the file records that generator.
          const Mat<double> closed = closed_basis(cx, k, tol);
          const Mat<double> dd = op_d_delta(cx, k);
          double worst = 0.0;
          for (int t = 0; t < 50; ++t) {
            Vec<double> coef = Vec<double>::NullaryExpr(
                closed.cols(), [&](Eigen::Index) { return rng.gaussian(); });
            Vec<double> w = closed * coef;
            Vec<double> via_q = apply_Q(ctx, cx, w, tol);
            Vec<double> direct = w;
            for (int i = 0; i < ctx.p(); ++i) direct = dd * direct;
            worst = std::max(worst, (via_q - direct).norm() / std::max(1.0, w.norm()));
          }
          CheckResult c;
          c.id = "q_power_action";
          c.params = params;
          c.paper_ref = "crnrf";
          c.residuals["action"] = worst;
          c.verdict = worst <= 1e-10 ? Verdict::pass : Verdict::fail;
          rep.add(std::move(c));

          auto pr = pairing_suite(ctx, cx, tol);
          CheckResult p;
          p.id = "pairings";
          p.params = params;
          p.paper_ref = "Rpairs";
          p.verdict = pr.verdict;
          p.residuals["theta_harmonic"] = pr.theta_harmonic_residual;
          p.dims["predicted_constant"] =
              scalar_traits<double>::to_string(pr.predicted_constant);
          rep.add(std::move(p));

          if (doc.contains("meta") && doc["meta"].value("generator", "") == "torus") {
            long binom = 1;
            for (int i = 0; i < k; ++i) binom = binom * (cx.n - i) / (i + 1);
            CheckResult b;
            b.id = "torus_betti";
            b.params = params;
            b.paper_ref = "crnrf";
            const int found = betti(cx, k, tol);
            b.dims["betti"] = found;
            b.dims["expected"] = binom;
            b.verdict = found == binom ? Verdict::pass : Verdict::fail;
            rep.add(std::move(b));
          }
        } else {
          checks::complex_battery<double>(rep, ctx, cx, params, tol);
        }
      }
      return emit_report(rep, v_out, v_format);
    }

    if (ver_suite->parsed()) {
      SuiteConfig cfg;
      cfg.seed = v_seed;
      cfg.trials = v_trials;
      cfg.tol.tau = v_tol;
      const RunReport rep = run_suite(cfg);
      return emit_report(rep, v_out, v_format);
    }

    if (expl->parsed()) {
      try {
        std::cout << x_id << ": " << explain(x_id);
      } catch (const std::invalid_argument& e) {
        return fail_with("unknown_check", e.what());
      }
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    return fail_with("infeasible_budget", e.what());
  } catch (const std::exception& e) {
    return fail_with("internal_error", e.what());
  }
  return fail_with("bad_arguments", "no subcommand executed");
}
