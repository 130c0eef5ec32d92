#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "artifact.hpp"
#include "sconv/analysis.hpp"
#include "sconv/conv.hpp"
#include "sconv/error.hpp"
#include "sconv/functions.hpp"
#include "sconv/mobius_zeta.hpp"
#include "sconv/verify.hpp"

namespace sconv::cli {

namespace {

constexpr std::uint64_t kMaxEvalN = 10'000'000;
constexpr std::uint64_t kClassifyPrimeLimit = 50;

struct OutputOptions {
  std::string path;
  std::string format;
  unsigned workers = 0;
};

struct Range {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  [[nodiscard]] bool single() const { return lo == hi; }
};

std::uint64_t parse_u64(const std::string& text, const char* what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(std::string("invalid ") + what + " '" + text + "'");
  }
  const Int v = parse_int(text);
  if (v > static_cast<Int>(UINT64_MAX)) throw ParseError(std::string(what) + " out of range");
  return static_cast<std::uint64_t>(v);
}

Range parse_range(const std::string& text) {
  Range r;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    r.lo = parse_u64(text.substr(0, dots), "range start");
    r.hi = parse_u64(text.substr(dots + 2), "range end");
  } else {
    r.lo = r.hi = parse_u64(text, "n");
  }
  if (r.lo < 1 || r.hi < r.lo) throw ParseError("range must satisfy 1 <= a <= b");
  if (r.hi > kMaxEvalN) throw BoundError("n is limited to " + std::to_string(kMaxEvalN));
  return r;
}

std::string fmt(double v, int precision = 10) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

void emit(const Artifact& a, const OutputOptions& o, std::ostream& out, const std::string& human) {
  std::string format = o.format;
  if (format.empty()) {
    format = o.path.size() >= 5 && o.path.compare(o.path.size() - 5, 5, ".json") == 0 ? "json" : "csv";
  }
  const std::string body = format == "json" ? a.json() : a.csv();
  if (!o.path.empty()) {
    std::ofstream f(o.path, std::ios::binary);
    if (!f) throw BoundError("cannot open output file '" + o.path + "'");
    f << body;
    if (!f.flush()) throw BoundError("failed writing '" + o.path + "'");
    out << human;
  } else if (!o.format.empty()) {
    out << body;
  } else {
    out << human;
  }
}

void add_output_flags(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--out", o.path, "Write the machine artifact to this path");
  cmd->add_option("--format", o.format, "Artifact format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--workers", o.workers, "Worker threads (0 = available parallelism)");
}

// ---- eval ----

struct EvalArgs {
  std::string sset;
  std::string fn;
  std::string n;
  std::string range;
  unsigned k = 2;
  OutputOptions out;
};

DenseTable eval_table(const SSet& s, const std::string& fn, std::uint64_t hi, unsigned k, unsigned workers) {
  if (fn == "tau") return tau_S_table(s, hi, workers).values;
  if (fn == "sigma") return sigma_S_table(s, hi, workers).values;
  if (fn == "phi") return phi_S_table(s, hi, workers).values;
  if (fn == "mu_S") return mu_S_table(s, hi, workers);
  if (fn == "mu") return s_inverse(s, ArithFunc(NamedFunction::One), hi);
  DenseTable t(hi);
  for (std::uint64_t n = 1; n <= hi; ++n) t[n] = mu_k_at(k, n);
  return t;
}

Int eval_point(const SSet& s, const std::string& fn, std::uint64_t n, unsigned k) {
  if (fn == "tau") return tau_S_at(s, n);
  if (fn == "sigma") return sigma_S_at(s, n);
  if (fn == "phi") return phi_S_at(s, n);
  if (fn == "mu_S") return mu_S_at(s, n);
  if (fn == "mu") return s_inverse(s, ArithFunc(NamedFunction::One), n)[n];
  return mu_k_at(k, n);
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const SSet s = parse_sset(a.sset);
  if (a.n.empty() == a.range.empty()) throw ParseError("eval needs exactly one of n or --range");
  const Range r = parse_range(a.n.empty() ? a.range : a.n);
  if (a.fn == "mu_k" && a.k < 1) throw DomainError("mu_k needs k >= 1");

  Artifact art("eval", render(s), {"n", "value"});
  art.params()["function"] = a.fn;
  art.params()["lo"] = r.lo;
  art.params()["hi"] = r.hi;
  if (a.fn == "mu_k") art.params()["k"] = a.k;

  std::ostringstream human;
  if (r.single() && a.range.empty()) {
    const Int v = eval_point(s, a.fn, r.lo, a.k);
    art.add_row({r.lo, int_cell(v)});
    human << to_string(v) << '\n';
  } else {
    const DenseTable t = eval_table(s, a.fn, r.hi, a.k, a.out.workers);
    for (std::uint64_t n = r.lo; n <= r.hi; ++n) {
      art.add_row({n, int_cell(t[n])});
      human << n << ' ' << to_string(t[n]) << '\n';
    }
  }
  emit(art, a.out, out, human.str());
  return kPass;
}

// ---- classify ----

int cmd_classify(const std::string& spec, const OutputOptions& o, std::ostream& out) {
  const SSet s = parse_sset(spec);
  std::ostringstream h;
  Artifact art("classify", render(s), {"prime", "case", "threshold", "least_excluded"});
  h << "set: " << render(s) << '\n';

  const MultiplicativityVerdict mult = is_multiplicative(s);
  h << "multiplicative: " << (mult.holds ? "yes" : "no");
  if (mult.checked_up_to) h << " (checked up to " << *mult.checked_up_to << ")";
  if (mult.witness) h << ", witness (m,n)=(" << mult.witness->first << ',' << mult.witness->second << ")";
  h << '\n';

  const Verdict assoc = is_associative(s);
  h << (assoc.holds ? "associative" : "not associative");
  if (assoc.checked_up_to) h << " (checked up to " << *assoc.checked_up_to << ")";
  if (!assoc.reason.empty()) h << ": " << assoc.reason;
  h << '\n';
  art.summary()["multiplicative"] = mult.holds;
  art.summary()["associative"] = assoc.holds;
  if (!assoc.holds) {
    if (const auto w = associativity_witness(s)) {
      h << "witness (n,d,e)=(" << w->n << ',' << w->d << ',' << w->e << ")\n";
      art.summary()["witness"] = {w->n, w->d, w->e};
    }
  }

  if (s.is_multiplicative_descriptor()) {
    bool all_in = true;
    for (const auto p : sieve_primes(kClassifyPrimeLimit)) {
      const PrimeClassification c = classify_prime(s, p);
      all_in = all_in && c.prime_case == PrimeCase::AllIn;
      h << "  p=" << p << ": " << to_string(c.prime_case);
      if (c.threshold) h << ", e(p)=" << *c.threshold;
      if (c.least_excluded) h << ", s(p)=" << *c.least_excluded;
      h << '\n';
      art.add_row({p, std::string(to_string(c.prime_case)), c.threshold ? Json(*c.threshold) : Json(nullptr),
                   c.least_excluded ? Json(*c.least_excluded) : Json(nullptr)});
    }
    if (all_in) h << "all primes <= " << kClassifyPrimeLimit << " case (i)\n";
  } else {
    h << "per-prime classification needs a multiplicative descriptor\n";
  }
  emit(art, o, out, h.str());
  return kPass;
}

// ---- verify ----

int cmd_verify(const std::string& spec, const std::string& suite_name, const std::string& n_text, std::uint64_t seed,
               const OutputOptions& o, std::ostream& out) {
  const SSet s = parse_sset(spec);
  const auto suite = suite_from(suite_name);
  if (!suite) throw ParseError("unknown suite '" + suite_name + "'");
  const std::uint64_t n = parse_u64(n_text, "N");
  if (n > kVerifyMaxN) throw BoundError("verify supports N <= " + std::to_string(kVerifyMaxN));

  const auto results = run_suite(*suite, s, n, seed, o.workers);
  Artifact art("verify", render(s), {"check", "status", "checked_up_to", "detail"});
  art.params()["suite"] = suite_name;
  art.params()["N"] = n;
  art.params()["seed"] = seed;
  std::ostringstream h;
  bool ok = true;
  for (const auto& r : results) {
    const char* status = r.skipped ? "SKIP" : r.passed ? "PASS" : "FAIL";
    ok = ok && r.passed;
    h << status << "  " << r.name;
    if (!r.skipped) h << " (n <= " << r.checked_up_to << ")";
    if (!r.detail.empty()) h << ": " << r.detail;
    h << '\n';
    art.add_row({r.name, status, r.checked_up_to, r.detail});
  }
  h << (ok ? "all checks passed" : "verification FAILED") << '\n';
  art.summary()["passed"] = ok;
  emit(art, o, out, h.str());
  return ok ? kPass : kVerificationFailure;
}

// ---- asymp ----

int cmd_asymp(const std::string& spec, const std::string& fn, const std::string& x_text, unsigned samples,
              const OutputOptions& o, std::ostream& out) {
  const SSet s = parse_sset(spec);
  DivisorFunction f{};
  if (fn == "sigma") {
    f = DivisorFunction::SigmaS;
  } else if (fn == "tau") {
    f = DivisorFunction::TauS;
  } else {
    throw ParseError("asymp function must be tau or sigma");
  }
  const std::uint64_t x_max = parse_u64(x_text, "x_max");
  const AsymptoticReport r = asymptotic_report(s, f, x_max, samples, o.workers);

  Artifact art("asymp", render(s), {"x", "partial_sum", "main_term", "main_term_bound", "ratio", "remainder"});
  art.params()["function"] = fn;
  art.params()["x_max"] = x_max;
  art.params()["samples"] = samples;
  art.summary()["fitted_exponent"] = r.fitted_exponent;
  art.summary()["fit_residual"] = r.fit_residual;
  std::ostringstream h;
  h << "x partial_sum main_term ratio remainder\n";
  for (const auto& smp : r.samples) {
    art.add_row({smp.x, int_cell(smp.partial_sum), smp.main_term, smp.main_term_bound, smp.ratio, smp.remainder});
    h << smp.x << ' ' << to_string(smp.partial_sum) << ' ' << fmt(smp.main_term, 15) << ' ' << fmt(smp.ratio, 12) << ' '
      << fmt(smp.remainder, 8) << '\n';
  }
  const auto& last = r.samples.back();
  h << "final ratio " << fmt(last.ratio, 12) << " (|ratio - 1| = " << fmt(std::fabs(last.ratio - 1.0), 4) << ")\n";
  h << "fitted remainder exponent " << fmt(r.fitted_exponent, 4) << " (residual " << fmt(r.fit_residual, 3)
    << "; informational)\n";
  emit(art, o, out, h.str());
  return kPass;
}

// ---- maxorder ----

int cmd_maxorder(const std::string& spec, const std::string& mode, std::vector<std::uint64_t> ks, double eps,
                 double tol, const OutputOptions& o, std::ostream& out) {
  const SSet s = parse_sset(spec);
  std::ostringstream h;
  if (mode == "sigma") {
    if (ks.empty()) ks = {6, 7, 8, 9, 10, 11, 12};
    const Estimate c = sigma_maximal_constant(s, tol);
    Artifact art("maxorder", render(s),
                 {"k", "t", "a", "prime_count", "log_n", "sigma_over_n", "ratio", "ratio_over_constant",
                  "local_factor_bound"});
    art.params()["mode"] = mode;
    art.params()["epsilon"] = eps;
    art.params()["tol"] = tol;
    art.summary()["constant"] = c.value;
    art.summary()["constant_bound"] = c.bound;
    h << "constant C = " << fmt(c.value, 12) << " +- " << fmt(c.bound, 2) << '\n';
    if (const auto u = uniform_least_excluded(s)) {
      const Estimate cu = sigma_maximal_constant_uniform(*u);
      h << "uniform s = " << *u << ": e^gamma/zeta(" << 2 * *u << ") = " << fmt(cu.value, 12) << '\n';
      art.summary()["uniform_s"] = *u;
      art.summary()["uniform_constant"] = cu.value;
    }
    h << "k t a primes log_n ratio ratio/C\n";
    for (const auto k : ks) {
      const WitnessSequence w = witness_sequence(s, eps, static_cast<unsigned>(k));
      art.add_row({w.k, w.t, w.a, w.factorization.size(), w.log_n, w.sigma_over_n, w.ratio, w.ratio / c.value,
                   w.local_factor_bound});
      h << w.k << ' ' << w.t << ' ' << w.a << ' ' << w.factorization.size() << ' ' << fmt(w.log_n, 8) << ' '
        << fmt(w.ratio, 10) << ' ' << fmt(w.ratio / c.value, 8) << '\n';
    }
    emit(art, o, out, h.str());
    return kPass;
  }
  if (mode == "tau") {
    if (!s.contains_one()) throw DomainError("tau maximal order needs 1 in S");
    if (ks.empty()) ks = {100, 1000, 10000, 100000};
    Artifact art("maxorder", render(s), {"k", "ratio", "ratio_minus_ln2"});
    art.params()["mode"] = mode;
    h << "k ratio (ln 2 = " << fmt(std::log(2.0), 10) << ")\n";
    for (const auto k : ks) {
      const double r = tau_maximal_ratio(k);
      art.add_row({k, r, r - std::log(2.0)});
      h << k << ' ' << fmt(r, 10) << '\n';
    }
    emit(art, o, out, h.str());
    return kPass;
  }
  throw ParseError("maxorder mode must be sigma or tau");
}

// ---- mu-k-stats ----

int cmd_mu_k_stats(unsigned k, unsigned a_max, const OutputOptions& o, std::ostream& out) {
  const MuKStatistics st = mu_k_statistics(k, a_max);
  Artifact art("mu-k-stats", "L" + std::to_string(k), {"value", "first_exponent"});
  art.params()["k"] = k;
  art.params()["a_max"] = a_max;
  art.summary()["computed_up_to"] = st.computed_up_to;
  if (st.overflow_exponent) art.summary()["overflow_exponent"] = *st.overflow_exponent;
  std::ostringstream h;
  h << "mu_" << k << "(p^a), 1 <= a <= " << st.computed_up_to << '\n';
  if (st.overflow_exponent) h << "values leave the 128-bit range at a = " << *st.overflow_exponent << '\n';
  h << "distinct values: " << st.first_occurrence.size() << '\n';
  for (const auto& [v, a] : st.first_occurrence) art.add_row({int_cell(v), a});
  if (st.first_occurrence.size() <= 40) {
    h << "value first_a\n";
    for (const auto& [v, a] : st.first_occurrence) h << to_string(v) << ' ' << a << '\n';
  }
  unsigned longest = 0;
  for (const auto& [sign, len] : st.sign_runs) longest = std::max(longest, len);
  h << "sign runs: " << st.sign_runs.size() << ", longest " << longest << '\n';
  Json runs = Json::array();
  for (const auto& [sign, len] : st.sign_runs) runs.push_back({sign, len});
  art.summary()["sign_runs"] = std::move(runs);
  emit(art, o, out, h.str());
  return kPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"S-convolutions of arithmetical functions", "sconv"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate tau, sigma, phi, mu, mu_S or mu_k at n or over a range");
  eval->add_option("sset,--sset", ev.sset, "Set spec")->required();
  eval->add_option("fn,--fn", ev.fn, "Function")
      ->required()
      ->check(CLI::IsMember({"tau", "sigma", "phi", "mu", "mu_S", "mu_k"}));
  eval->add_option("n,--n", ev.n, "n or a..b");
  eval->add_option("--range", ev.range, "a..b (bulk tables)");
  eval->add_option("--k", ev.k, "k for mu_k");
  add_output_flags(eval, ev.out);

  std::string cl_sset;
  OutputOptions cl_out;
  auto* classify = app.add_subcommand("classify", "Multiplicativity, associativity and per-prime cases");
  classify->add_option("sset,--sset", cl_sset, "Set spec")->required();
  add_output_flags(classify, cl_out);

  std::string vf_sset, vf_suite, vf_n;
  std::uint64_t vf_seed = kDefaultVerifySeed;
  OutputOptions vf_out;
  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  verify->add_option("sset,--sset", vf_sset, "Set spec")->required();
  verify->add_option("suite,--suite", vf_suite, "identities|algebra|inversion|all")->required();
  verify->add_option("N,--n", vf_n, "Range 1..N")->required();
  verify->add_option("--seed", vf_seed, "Seed for random test functions");
  add_output_flags(verify, vf_out);

  std::string as_sset, as_fn, as_x;
  unsigned as_samples = 25;
  OutputOptions as_out;
  auto* asymp = app.add_subcommand("asymp", "Partial sums of tau_S or sigma_S against the main term");
  asymp->add_option("sset,--sset", as_sset, "Set spec")->required();
  asymp->add_option("fn,--fn", as_fn, "tau|sigma")->required();
  asymp->add_option("x_max,--n", as_x, "Largest x")->required();
  asymp->add_option("--samples", as_samples, "Number of geometric sample points");
  add_output_flags(asymp, as_out);

  std::string mo_sset, mo_mode;
  std::vector<std::uint64_t> mo_k;
  double mo_eps = 0.1;
  double mo_tol = 4e-9;
  OutputOptions mo_out;
  auto* maxorder = app.add_subcommand("maxorder", "Maximal-order ratios for sigma_S or tau_S");
  maxorder->add_option("sset,--sset", mo_sset, "Set spec")->required();
  maxorder->add_option("mode,--mode", mo_mode, "sigma|tau")->required();
  maxorder->add_option("--k", mo_k, "k values (comma separated)")->delimiter(',');
  maxorder->add_option("--eps", mo_eps, "epsilon for the sigma witness sequence");
  maxorder->add_option("--tol", mo_tol, "Tolerance for the sigma constant");
  add_output_flags(maxorder, mo_out);

  unsigned mk_k = 2;
  unsigned mk_a = 100;
  OutputOptions mk_out;
  auto* mukstats = app.add_subcommand("mu-k-stats", "Value set and sign runs of mu_k(p^a)");
  mukstats->add_option("k,--k", mk_k, "k >= 1");
  mukstats->add_option("a_max,--a-max", mk_a, "Largest exponent");
  add_output_flags(mukstats, mk_out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*eval) return cmd_eval(ev, out);
    if (*classify) return cmd_classify(cl_sset, cl_out, out);
    if (*verify) return cmd_verify(vf_sset, vf_suite, vf_n, vf_seed, vf_out, out);
    if (*asymp) return cmd_asymp(as_sset, as_fn, as_x, as_samples, as_out, out);
    if (*maxorder) return cmd_maxorder(mo_sset, mo_mode, mo_k, mo_eps, mo_tol, mo_out, out);
    if (*mukstats) return cmd_mu_k_stats(mk_k, mk_a, mk_out, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const OverflowError& e) {
    err << "overflow: " << e.what() << '\n';
    return kResource;
  } catch (const BoundError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const std::bad_alloc&) {
    err << "resource limit: out of memory\n";
    return kResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  }
  return kUsage;
}

}  // namespace sconv::cli
