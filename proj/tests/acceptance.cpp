// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include "lckw/corpus.hpp"
#include "lckw/crosschecks.hpp"
#include "lckw/pointwise.hpp"
#include "lckw/sasaki.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace lckw;
using Q = Rational;

namespace {

const std::string kCli = LCKW_CLI_PATH;
const std::string kSource = LCKW_SOURCE_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = "cd '" + kSource + "' && '" + kCli + "' " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fmt(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", x);
  return b;
}

Outcome ot_anchor() {
  Outcome o;
  double worst = 0.0;
  for (std::size_t s = 1; s <= 3; ++s)
    for (const ChartPoint& p : ot_sample_points(s, 10, 1000u + static_cast<unsigned>(s))) {
      const OtModelRecord rec = ot_model_eval(s, p);
      worst = std::max({worst, rec.anchor_rel_residual, rec.ric_fd_rel_residual});
    }
  ChartPoint base{{Complex(0.0, 1.0), Complex(0.0, 0.0)}};
  const OtModelRecord at_i = ot_model_eval(1, base);
  const double comp = std::max(std::abs(at_i.ric_closed(0, 0) - Complex(0.0, -0.25)), std::abs(at_i.ric_fd(0, 0) - Complex(0.0, -0.25)));
  o.pass = worst < 1e-6 && comp < 1e-7;
  o.detail = "max relative residual " + fmt(worst) + " over 30 points; (w,w̄) at w=i off -i/4 by " + fmt(comp);
  return o;
}

Outcome kodaira() {
  Outcome o;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto h = kodaira_structure<Q>(n);
    const auto lee = extract_lee_form(h);
    const auto rep = theorem_a_report(h);
    const bool ok = lee.conformal_class == ConformalClass::StrictLcK && lee.gauduchon && vaisman_check(h, lee) &&
                    chern_ricci_form(h).ricci_form.is_zero() && rep.t && *rep.t == 0 && *potential_form_check(h, lee);
    if (!ok) {
      o.pass = false;
      o.detail += "n=" + std::to_string(n) + " failed; ";
    }
  }
  if (o.pass) o.detail = "n=1..3 StrictLcK, Gauduchon, ∇θ=0, Ric=0 exact, t=0, potential form";
  return o;
}

Outcome theorem_a() {
  Outcome o;
  const auto corpus = builtin_corpus();
  std::size_t instances = 0, alarms = 0, violations = 0;
  for (const auto& e : corpus) {
    for (int mode = 0; mode < 2; ++mode) {
      const auto check = [&](const auto& rep) {
        if (rep.verdict == TheoremVerdict::Alarm) ++alarms;
        if (rep.gauduchon && rep.t && to_double(*rep.t) <= kFloatTolerance) {
          if (mode == 0) ++instances;
          if (!*rep.vaisman) ++violations;
        }
      };
      if (mode == 0)
        check(theorem_a_report(e.h));
      else
        check(theorem_a_report(e.h.cast<double>()));
    }
  }
  o.pass = corpus.size() >= 30 && alarms == 0 && violations == 0;
  o.detail = std::to_string(corpus.size()) + " structures, " + std::to_string(instances) +
             " Gauduchon t<=0 instances all Vaisman, " + std::to_string(alarms) + " alarms (rational and float)";
  return o;
}

Outcome identity_suite_check() {
  Outcome o;
  double worst = 0.0;
  std::size_t strict = 0, eqt_checked = 0, cor_checked = 0, cor_skipped = 0;
  std::vector<std::string> bad;
  for (const auto& e : builtin_corpus()) {
    if (e.expected_class != ConformalClass::StrictLcK) continue;
    ++strict;
    for (int mode = 0; mode < 2; ++mode) {
      const auto body = [&](const auto& c) {
        const auto rep = identity_suite(c);
        for (const char* name : {"weyl_chern", "ric_w_lc", "djtheta", "scalar", "scalar_lc", "ricci_full"}) {
          const IdentityRecord* r = rep.find(name);
          if (!r || !r->applicable) continue;
          worst = std::max(worst, r->residual);
          if (!r->pass || r->residual >= 1e-9) bad.push_back(e.name + ":" + name);
        }
        if (c.lee.gauduchon && c.fit.t) {
          if (mode == 0) ++eqt_checked;
          const auto eq = eqt_certificate(c);
          if (!eq.applicable || std::fabs(to_double(eq.value)) >= 1e-9) bad.push_back(e.name + ":eqt");
        }
        const bool vaisman = vaisman_check(c.h, c.lee);
        if (!vaisman && c.fit.t) {
          if (!c.lee.gauduchon) {
            if (mode == 0) ++cor_skipped;
            return;
          }
          if (mode == 0) ++cor_checked;
          if (std::fabs(to_double(corollary_t(c)) - to_double(*c.fit.t)) >= 1e-9) bad.push_back(e.name + ":corollary_t");
        }
      };
      if (mode == 0)
        body(lck_curvature_data(e.h));
      else
        body(lck_curvature_data(e.h.cast<double>()));
    }
  }
  o.pass = bad.empty();
  o.detail = std::to_string(strict) + " StrictLcK entries, worst residual " + fmt(worst) + "; eqt=0 on " +
             std::to_string(eqt_checked) + " Gauduchon fits; corollary_t=t on " + std::to_string(cor_checked) +
             " non-Vaisman Gauduchon fits (" + std::to_string(cor_skipped) + " non-Gauduchon excluded)";
  for (const auto& b : bad) o.detail += "; " + b;
  return o;
}

Outcome double_extensions() {
  Outcome o;
  std::mt19937 rng(424242u);
  std::size_t ok = 0;
  const std::size_t total = 12;
  for (std::size_t i = 0; i < total; ++i)
    if (double_extension_contract(random_extension_spec(rng)).all()) ++ok;
  bool kodaira = true;
  for (std::size_t n = 1; n <= 4; ++n) kodaira = kodaira && kodaira_extension_match(n);
  o.pass = ok == total && kodaira;
  o.detail = std::to_string(ok) + "/" + std::to_string(total) +
             " random specs pass Jacobi, unimodular, Vaisman, Ric=0, -dJθ|l=ω_l; D=0 matches Kodaira n=1..4: " +
             (kodaira ? "yes" : "no");
  return o;
}

Outcome sasaki() {
  Outcome o;
  const auto h3 = heisenberg_sasaki<Q>();
  const auto fit = eta_einstein_fit(h3);
  const auto [a, b] = vaisman_sasaki_constants(Q(0), 2);
  const double dev = std::max(std::fabs(to_double(Q(fit.alpha - a))), std::fabs(to_double(Q(fit.beta - b))));
  const bool h3ok = fit.pass && dev < 1e-8 && to_double(fit.alpha) == -2.0 && to_double(fit.beta) == 4.0;

  bool sums = true;
  auto sum_ok = [&](const SasakiStructure<Q>& s) {
    const auto f = eta_einstein_fit(s);
    sums = sums && f.pass && f.sum_defect == 0;
  };
  for (std::size_t k = 1; k <= 3; ++k) sum_ok(heisenberg_sasaki<Q>(k));
  sum_ok(sphere_sasaki<Q>());
  for (std::size_t n = 1; n <= 2; ++n) sum_ok(sasaki_from_vaisman(kodaira_structure<Q>(n)));
  for (long t = -2; t <= 2; ++t)
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto [x, y] = vaisman_sasaki_constants(Q(t, 3), n);
      sums = sums && x + y == Q(static_cast<long>(2 * n - 2));
    }

  const auto cone = cone_consistency_check(h3.cast<double>(), {0.5, 1.0, 2.0});
  o.pass = h3ok && sums && cone.max_residual < 1e-4 && cone.residuals.size() == 3;
  o.detail = "h3 (α,β) = (" + format_rational(fit.alpha) + "," + format_rational(fit.beta) + "), deviation " + fmt(dev) +
             "; α+β=2n-2: " + (sums ? "yes" : "no") + "; cone residual " + fmt(cone.max_residual) + " at r=0.5,1,2";
  return o;
}

Outcome numerics() {
  Outcome o;
  const MetricField f = ot_metric_field(2);
  const ChartPoint p{{Complex(0.2, 1.3), Complex(-0.4, 0.8), Complex(0.5, 0.1)}};
  const CMatrix exact = f.ric_closed(p);
  const double e1 = (fd_chern_ricci(f, p, 0.08, false) - exact).max_abs();
  const double e2 = (fd_chern_ricci(f, p, 0.04, false) - exact).max_abs();
  const double order = std::log2(e1 / e2);

  double worst = 0.0;
  std::size_t quantities = 0;
  bool shapes = true;
  for (const auto& e : builtin_corpus()) {
    const auto qr = invariant_quantities(e.h);
    const auto qf = invariant_quantities(e.h.cast<double>());
    if (qr.size() != qf.size()) {
      shapes = false;
      continue;
    }
    for (std::size_t i = 0; i < qr.size(); ++i) {
      if (qr[i].first != qf[i].first) shapes = false;
      worst = std::max(worst, std::fabs(qr[i].second - qf[i].second));
    }
    quantities += qr.size();
  }
  o.pass = order >= 2.0 - 0.1 && shapes && worst < 1e-9;
  o.detail = "FD order " + fmt(order) + " (h=0.08→0.04); rational vs float worst difference " + fmt(worst) + " over " +
             std::to_string(quantities) + " corpus quantities";
  if (order < 1.9) o.detail += "; order below 2";
  return o;
}

Outcome cli() {
  Outcome o;
  std::vector<std::string> bad;
  std::size_t fixtures = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kSource + "/fixtures")) {
    if (entry.path().extension() != ".json") continue;
    ++fixtures;
    const std::string args = "classify fixtures/" + entry.path().filename().string() + " --json";
    const Run a = run_cli(args), b = run_cli(args);
    if (a.code != 0 || a.out != b.out || a.out.empty()) bad.push_back(entry.path().filename().string());
  }
  const int broken = run_cli("classify fixtures/invalid/broken.json").code;
  const Run suite = run_cli("suite fixtures fixtures/invalid/perturbed_non_lck.json");
  const bool named = suite.out.find("FAIL perturbed_non_lck") != std::string::npos;
  o.pass = bad.empty() && fixtures >= 5 && broken == 2 && suite.code == 1 && named;
  o.detail = std::to_string(fixtures) + " fixtures exit 0 with identical JSON on two runs; broken.json exit " +
             std::to_string(broken) + "; suite with perturbed fixture exit " + std::to_string(suite.code) +
             (named ? ", fixture named" : ", fixture NOT named");
  for (const auto& b : bad) o.detail += "; unstable or failing: " + b;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<Outcome()> fn;
    double budget_s;
  };
  const std::vector<Criterion> criteria = {
      {"OT anchor", ot_anchor, 5.0},
      {"Kodaira n=1..3", kodaira, 1.0},
      {"Theorem A over corpus", theorem_a, 30.0},
      {"identity suite", identity_suite_check, 0.0},
      {"double extensions", double_extensions, 0.0},
      {"Sasaki", sasaki, 0.0},
      {"numerics", numerics, 0.0},
      {"CLI", cli, 0.0},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (criteria[i].budget_s > 0.0 && secs >= criteria[i].budget_s) {
      o.pass = false;
      o.detail += "; over time budget " + fmt(criteria[i].budget_s) + " s";
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].title << " (" << fmt(secs)
              << " s) " << o.detail << "\n";
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
