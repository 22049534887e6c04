#include <chrono>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "dmf/experiments.hpp"
#include "dmf/io.hpp"

using nlohmann::json;

namespace {

struct Common {
  std::string q_spec;
  std::string modulus_spec;
  std::string seed_spec;
  std::string out_path;
  int threads = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--q", c.q_spec, "Field size: P (prime) or P^K")->required();
  cmd->add_option("--modulus", c.modulus_spec,
                  "Extension modulus c0,...,cK (low-to-high, monic irreducible)");
  cmd->add_option("--seed", c.seed_spec, "RNG seed (default: entropy; always echoed)");
  cmd->add_option("--out", c.out_path, "Write JSON to a file instead of stdout");
  cmd->add_option("--threads", c.threads, "Worker threads for experiment trials");
}

std::vector<std::uint64_t> parse_int_list(const std::string& s) {
  std::vector<std::uint64_t> v;
  size_t start = 0;
  while (start <= s.size()) {
    const size_t comma = s.find(',', start);
    v.push_back(std::stoull(s.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return v;
}

const dmf::Field* make_field(const Common& c) {
  const size_t caret = c.q_spec.find('^');
  const std::uint64_t p = std::stoull(c.q_spec.substr(0, caret));
  unsigned k = 1;
  if (caret != std::string::npos)
    k = static_cast<unsigned>(std::stoul(c.q_spec.substr(caret + 1)));
  if (k == 1) {
    if (!c.modulus_spec.empty())
      throw std::invalid_argument("--modulus is only valid with --q P^K, K > 1");
    return dmf::Field::prime(p);
  }
  if (c.modulus_spec.empty()) return dmf::Field::extension(p, k);
  return dmf::Field::extension(p, k, parse_int_list(c.modulus_spec));
}

std::uint64_t make_seed(const Common& c) {
  if (!c.seed_spec.empty()) return std::stoull(c.seed_spec);
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string read_input(const std::string& text) {
  if (text != "-") return text;
  std::string all, line;
  while (std::getline(std::cin, line)) all += line;
  return all;
}

json field_json(const dmf::Field* f) {
  json j;
  j["p"] = f->p();
  j["k"] = f->k();
  if (f->k() > 1) j["modulus"] = f->modulus();
  return j;
}

void emit(const Common& c, const json& j, const std::string& text_alt, bool as_text) {
  const std::string payload = as_text ? text_alt : j.dump(2) + "\n";
  if (c.out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(c.out_path);
    if (!out) throw std::invalid_argument("cannot open --out file: " + c.out_path);
    out << payload;
  }
}

dmf::Algo parse_algo(const std::string& s) {
  if (s == "classical") return dmf::Algo::Classical;
  if (s == "drinfeld-chi") return dmf::Algo::DrinfeldChi;
  if (s == "drinfeld-order") return dmf::Algo::DrinfeldOrder;
  if (s == "drinfeld-berlekamp") return dmf::Algo::DrinfeldBerlekamp;
  if (s == "hybrid") return dmf::Algo::Hybrid;
  throw std::invalid_argument("unknown --algo: " + s);
}

json stats_json(const dmf::FactorStats& st, const dmf::Fe& unit) {
  json j;
  j["estimator_calls"] = st.estimator_calls;
  j["order_calls"] = st.order_calls;
  j["splitter_retries"] = st.splitter_retries;
  j["extension_lifts"] = st.extension_lifts;
  j["max_recursion_depth"] = st.max_recursion_depth;
  j["unit"] = unit.to_string();
  return j;
}

/// Deterministic random rank-2 module for the chi/order/estimate commands.
dmf::DrinfeldModule draw_module(const dmf::DrinfeldContext& ctx, dmf::Rng& rng) {
  for (int i = 0; i < 64; ++i) {
    auto drawn = dmf::new_random(ctx, rng);
    if (auto* phi = std::get_if<dmf::DrinfeldModule>(&drawn)) return *phi;
  }
  throw dmf::BudgetExhausted("could not draw a module with good reduction");
}

int run(int argc, char** argv) {
  CLI::App app{"Polynomial factorization over finite fields via rank-2 Drinfeld modules"};
  app.require_subcommand(1);

  Common c;
  std::string input, alpha_text, g_text, delta_text;
  std::string factor_algo = "hybrid", chi_algo = "random", est_algo = "chi";
  int trials = 500, m_bound = 2, order_trials = dmf::kDefaultOrderTrials;
  bool exhaustive = false, as_text = false;

  auto* cmd_factor = app.add_subcommand("factor", "Factor a polynomial");
  add_common(cmd_factor, c);
  cmd_factor->add_option("input", input, "Polynomial (expression or coefficient list; - for stdin)")
      ->required();
  cmd_factor->add_option("--algo", factor_algo,
                         "classical | drinfeld-chi | drinfeld-order | drinfeld-berlekamp | hybrid");

  auto* cmd_chi = app.add_subcommand("chi", "Euler-Poincare characteristic of a module");
  add_common(cmd_chi, c);
  cmd_chi->add_option("input", input, "Modulus polynomial")->required();
  cmd_chi->add_option("--algo", chi_algo, "carlitz | random (rank 2)");
  cmd_chi->add_option("--g", g_text, "Explicit g coefficient (rank 2)");
  cmd_chi->add_option("--delta", delta_text, "Explicit delta coefficient (rank 2)");

  auto* cmd_order = app.add_subcommand("order", "Montecarlo order of a residue");
  add_common(cmd_order, c);
  cmd_order->add_option("input", input, "Modulus polynomial")->required();
  cmd_order->add_option("--alpha", alpha_text, "Residue (default: random nonzero)");
  cmd_order->add_option("--trials", order_trials, "Projection trials");

  auto* cmd_est = app.add_subcommand("estimate-degree", "Estimate ceil(s_h/2)");
  add_common(cmd_est, c);
  cmd_est->add_option("input", input, "Squarefree monic polynomial")->required();
  cmd_est->add_option("--algo", est_algo, "carlitz | chi | order");

  auto* cmd_exp = app.add_subcommand("experiment", "Statistical harness");
  add_common(cmd_exp, c);
  std::string kind;
  cmd_exp->add_option("kind", kind,
                      "success-rate | cyclicity | split-balance | interval-census | trace-census")
      ->required();
  cmd_exp->add_option("input", input, "Polynomial (h, p, or interval center f)")->required();
  cmd_exp->add_option("--trials", trials, "Trial count");
  cmd_exp->add_option("--m", m_bound, "Interval bound (interval-census)");
  cmd_exp->add_flag("--exhaustive", exhaustive, "Exhaustive enumeration where supported");
  cmd_exp->add_flag("--text", as_text, "Emit key=value text instead of JSON");

  auto* cmd_bench = app.add_subcommand("bench", "Run every selector on one input");
  add_common(cmd_bench, c);
  cmd_bench->add_option("input", input, "Polynomial")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // every command-line problem is an input error
  }

  const dmf::Field* f = make_field(c);
  const std::uint64_t seed = make_seed(c);
  dmf::Rng rng(seed);
  const std::string text = read_input(input);
  const dmf::Poly h = dmf::parse_poly(f, text);

  json out;
  out["field"] = field_json(f);
  out["input"] = text;
  out["seed"] = std::to_string(seed);

  if (cmd_factor->parsed() || cmd_bench->parsed()) {
    if (h.degree() < 1) throw std::invalid_argument("input degree must be >= 1");
    std::vector<std::string> selectors =
        cmd_bench->parsed()
            ? std::vector<std::string>{"classical", "drinfeld-chi", "drinfeld-order",
                                       "drinfeld-berlekamp", "hybrid"}
            : std::vector<std::string>{factor_algo};
    json runs = json::array();
    for (const std::string& sel : selectors) {
      dmf::FactorConfig cfg;
      cfg.algo = parse_algo(sel);
      cfg.order_trials = order_trials;
      if (cmd_bench->parsed() && f->q_even() && cfg.algo != dmf::Algo::Classical) {
        std::cerr << "skipping " << sel << ": requires odd q\n";
        continue;
      }
      dmf::FactorStats stats;
      dmf::Rng run_rng = rng.split(runs.size());
      const auto t0 = std::chrono::steady_clock::now();
      dmf::Factorization fac = dmf::factor(h, cfg, run_rng, &stats);
      const auto t1 = std::chrono::steady_clock::now();
      json jf = json::array();
      for (const auto& [p, mult] : fac.factors())
        jf.push_back({{"poly", dmf::print_poly(p)}, {"multiplicity", mult}});
      if (cmd_bench->parsed()) {
        std::cerr << sel << ": "
                  << std::chrono::duration<double, std::milli>(t1 - t0).count()
                  << " ms\n";
        runs.push_back({{"algo", sel},
                        {"factors", jf},
                        {"stats", stats_json(stats, fac.unit())}});
      } else {
        out["algo"] = sel;
        out["factors"] = jf;
        out["stats"] = stats_json(stats, fac.unit());
      }
    }
    if (cmd_bench->parsed()) out["runs"] = runs;
    emit(c, out, out.dump(2) + "\n", false);
    return 0;
  }

  if (cmd_chi->parsed()) {
    if (f->q_even() && chi_algo != "carlitz")
      throw std::invalid_argument("rank-2 chi requires odd q");
    dmf::DrinfeldContext ctx = dmf::DrinfeldContext::make(h.monic());
    dmf::DrinfeldModule phi = dmf::DrinfeldModule::carlitz(f);
    if (chi_algo == "carlitz") {
      // nothing further
    } else if (!g_text.empty() || !delta_text.empty()) {
      if (g_text.empty() || delta_text.empty())
        throw std::invalid_argument("--g and --delta must be given together");
      phi = dmf::DrinfeldModule::rank2(dmf::parse_poly(f, g_text) % ctx.h,
                                       dmf::parse_poly(f, delta_text) % ctx.h);
      if (phi.delta.is_zero()) throw std::invalid_argument("delta must be nonzero");
    } else if (chi_algo == "random") {
      phi = draw_module(ctx, rng);
    } else {
      throw std::invalid_argument("chi --algo must be carlitz or random");
    }
    out["algo"] = (phi.rank == 1) ? "carlitz" : "rank2";
    if (phi.rank == 2) {
      out["g"] = dmf::print_poly(phi.g);
      out["delta"] = dmf::print_poly(phi.delta);
    }
    out["chi"] = dmf::print_poly(dmf::chi(ctx, phi));
    emit(c, out, out.dump(2) + "\n", false);
    return 0;
  }

  if (cmd_order->parsed()) {
    if (f->q_even()) throw std::invalid_argument("order requires odd q");
    dmf::DrinfeldContext ctx = dmf::DrinfeldContext::make(h.monic());
    dmf::DrinfeldModule phi = draw_module(ctx, rng);
    dmf::Poly alpha = alpha_text.empty() ? dmf::random_nonzero_residue(ctx.h, rng)
                                         : dmf::parse_poly(f, alpha_text) % ctx.h;
    out["g"] = dmf::print_poly(phi.g);
    out["delta"] = dmf::print_poly(phi.delta);
    out["alpha"] = dmf::print_poly(alpha);
    out["trials"] = order_trials;
    out["order"] = dmf::print_poly(dmf::order_of(ctx, phi, alpha, order_trials, rng));
    emit(c, out, out.dump(2) + "\n", false);
    return 0;
  }

  if (cmd_est->parsed()) {
    out["algo"] = est_algo;
    if (est_algo == "carlitz") {
      if (f->q_even()) throw std::invalid_argument("estimate-degree requires odd q");
      out["estimate"] = dmf::carlitz_estimate(h.monic());
    } else {
      for (int attempt = 0;; ++attempt) {
        if (attempt >= 64)
          throw dmf::BudgetExhausted("degree estimation budget exhausted");
        dmf::Estimate e =
            (est_algo == "order")
                ? dmf::estimate_half_degree_order(h.monic(), order_trials, rng)
                : dmf::estimate_half_degree_chi(h.monic(), rng);
        if (e.kind == dmf::Estimate::Value) {
          out["estimate"] = e.s_hat;
          break;
        }
        if (e.kind == dmf::Estimate::Factor) {
          out["found_factor"] = dmf::print_poly(e.found_factor);
          break;
        }
      }
    }
    emit(c, out, out.dump(2) + "\n", false);
    return 0;
  }

  // experiment
  dmf::ExperimentOptions opt;
  opt.trials = trials;
  opt.threads = c.threads;
  opt.exhaustive = exhaustive;
  opt.order_trials = order_trials;
  dmf::CensusReport rep;
  if (kind == "success-rate") {
    dmf::Rng oracle = rng.split(0xace);
    dmf::Factorization known = dmf::classical_factor(h.monic(), oracle);
    rep = dmf::success_rate_alg1(h.monic(), known.smallest_degree(), opt, rng);
  } else if (kind == "cyclicity") {
    rep = dmf::cyclicity_rate(h.monic(), opt, rng);
  } else if (kind == "split-balance") {
    dmf::Rng oracle = rng.split(0xace);
    dmf::Factorization known = dmf::classical_factor(h.monic(), oracle);
    std::vector<dmf::Poly> primes;
    for (const auto& [p, mult] : known.factors()) {
      if (mult != 1) throw std::invalid_argument("split-balance needs squarefree h");
      primes.push_back(p);
    }
    rep = dmf::split_balance(h.monic(), primes, opt, rng);
  } else if (kind == "interval-census") {
    rep = dmf::interval_census(h.monic(), m_bound, opt, rng);
  } else if (kind == "trace-census") {
    rep = dmf::trace_census(h.monic(), opt, rng);
  } else {
    throw std::invalid_argument("unknown experiment kind: " + kind);
  }
  out["experiment"] = rep.to_json();
  emit(c, out, "seed=" + std::to_string(seed) + "\n" + rep.to_text(), as_text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const dmf::BudgetExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
