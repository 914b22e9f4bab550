#include "lckw/commands.hpp"

#include "lckw/corpus.hpp"
#include "lckw/crosschecks.hpp"
#include "lckw/pointwise.hpp"
#include "lckw/theorem_a.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

namespace lckw {

namespace {

constexpr double kConeThreshold = 1e-4;
constexpr double kModelThreshold = 1e-6;

Json tool_json() { return {{"name", kToolName}, {"version", kToolVersion}}; }

Json provenance_json(ScalarMode mode, double tol) { return {{"mode", to_string(mode)}, {"tolerance", tol}}; }

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Json identity_json(const IdentityRecord& r) {
  if (!r.applicable) return {{"name", r.name}, {"applicable", false}};
  return {{"name", r.name}, {"applicable", true}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"residual", r.residual}, {"pass", r.pass}};
}

template <class S>
void analyze_hermitian(const HermitianStructure<S>& h, double tol, const std::optional<std::string>& expected,
                       StructureAnalysis& a) {
  Json& doc = a.doc;
  const ValidationReport vr = validate_algebra(h.algebra(), tol);
  doc["algebra"] = {{"dim", h.dim()},
                    {"complex_dim", h.n()},
                    {"jacobi", vr.jacobi},
                    {"jacobi_residual", vr.max_jacobi_residual},
                    {"unimodular", vr.unimodular},
                    {"nijenhuis_residual", nijenhuis_check(h.algebra(), h.J())}};

  const LeeData<S> raw = extract_lee_form(h, tol);
  const ConformalClass cls = raw.conformal_class;
  Json cl;
  cl["conformal_class"] = to_string(cls);
  cl["lee_residual"] = raw.lee_residual;
  cl["closedness_residual"] = raw.closedness_residual;
  cl["theta"] = vector_json(raw.theta.as_vector());
  cl["theta_norm_sq"] = scalar_json(raw.norm_sq);
  cl["codifferential"] = {{"value", scalar_json(raw.codiff)}, {"residual", std::fabs(to_double(raw.codiff))}};
  cl["gauduchon"] = raw.gauduchon;

  if (expected && *expected != to_string(cls))
    a.failures.push_back("expected class " + *expected + ", found " + to_string(cls));

  const TheoremAReport<S> rep = theorem_a_report(h, tol);
  if (cls == ConformalClass::StrictLcK) {
    const LcKCurvatureData<S> c = lck_curvature_data(h, tol);
    const double nabla = c.nt.full.m.max_abs();
    cl["vaisman"] = {{"value", *rep.vaisman}, {"residual", nabla}};
    const auto pot = potential_form_check(h, raw, tol);
    cl["potential_form"] = *pot;
    cl["chern_ricci_flat"] = {{"value", *rep.chern_ricci_flat}, {"residual", c.chern.ricci_form.max_abs()}};
    cl["einstein_fit"] = {{"t", c.fit.t ? scalar_json(*c.fit.t) : Json(nullptr)},
                          {"t_least_squares", scalar_json(c.fit.t_ls)},
                          {"residual", c.fit.residual}};
    doc["classification"] = std::move(cl);

    const IdentityReport ids = identity_suite(c, tol);
    Json idj = Json::array();
    for (const auto& r : ids.records) {
      idj.push_back(identity_json(r));
      if (r.applicable && !r.pass) a.failures.push_back("identity " + r.name + " residual " + fmt(r.residual));
    }
    doc["identities"] = std::move(idj);

    const BochnerRecord<S> bw = bochner_weitzenboeck_check(c, tol);
    doc["bochner"] = bw.applicable ? Json{{"applicable", true},
                                          {"rough_laplacian_pairing", scalar_json(bw.rough_laplacian_pairing)},
                                          {"nabla_theta_norm_sq", scalar_json(bw.nabla_theta_norm_sq)},
                                          {"ricci_theta_theta", scalar_json(bw.ricci_theta_theta)},
                                          {"residual", bw.residual},
                                          {"pass", bw.pass}}
                                   : Json{{"applicable", false}};
    const EqtCertificate<S> eq = eqt_certificate(c);
    doc["eqt"] = eq.applicable ? Json{{"applicable", true},
                                      {"value", scalar_json(eq.value)},
                                      {"residual", std::fabs(to_double(eq.value))},
                                      {"jtheta_lhs", scalar_json(eq.jtheta_lhs)},
                                      {"jtheta_rhs", scalar_json(eq.jtheta_rhs)}}
                               : Json{{"applicable", false}};
    if (!*rep.vaisman && c.fit.t) {
      // The formula comes from the eqt identity, which needs d*θ = 0; off
      // Gauduchon input the value is reported but not compared.
      const S ct = corollary_t(c, tol);
      const double diff = std::fabs(to_double(S(ct - *c.fit.t)));
      const bool ok = ScalarTraits<S>::exact ? ct == *c.fit.t : diff < tol;
      doc["corollary_t"] = {{"applicable", raw.gauduchon}, {"value", scalar_json(ct)}, {"residual", diff}, {"matches_fit", ok}};
      if (raw.gauduchon && !ok) a.failures.push_back("corollary_t differs from fitted t by " + fmt(diff));
    } else {
      doc["corollary_t"] = {{"applicable", false}};
    }
    if (*pot && !*rep.vaisman) a.failures.push_back("potential-form identity holds but structure is not Vaisman");
  } else {
    cl["vaisman"] = nullptr;
    cl["potential_form"] = nullptr;
    const double rho = chern_ricci_form(h).ricci_form.max_abs();
    cl["chern_ricci_flat"] = {{"value", rho < tol}, {"residual", rho}};
    cl["einstein_fit"] = nullptr;
    doc["classification"] = std::move(cl);
    if (cls == ConformalClass::NotLcK) {
      a.lck = false;
      a.doc["lck_failure"] = "dω = θ∧ω has no closed solution (residual " + fmt(raw.lee_residual) + ")";
    }
  }
  doc["theorem_a"] = {{"verdict", to_string(rep.verdict)}, {"summary", rep.summary}};
  if (rep.verdict == TheoremVerdict::Alarm) {
    a.alarm = true;
    a.failures.push_back("theorem A alarm: Gauduchon, t <= 0 and not Vaisman");
  }
}

std::vector<double> cone_radii(std::size_t samples) {
  if (samples == 0) throw std::invalid_argument("samples must be positive");
  if (samples == 1) return {1.0};
  std::vector<double> r;
  for (std::size_t i = 0; i < samples; ++i) r.push_back(0.5 * std::pow(4.0, static_cast<double>(i) / static_cast<double>(samples - 1)));
  return r;
}

template <class S>
void analyze_sasaki(const SasakiStructure<S>& s, double tol, std::size_t samples, StructureAnalysis& a) {
  Json& doc = a.doc;
  const SasakiCheck chk = check_sasaki(s, tol);
  doc["sasaki_check"] = {{"eta_xi", chk.eta_xi},       {"xi_norm", chk.xi_norm},     {"phi_square", chk.phi_square},
                         {"metric", chk.metric},       {"normality", chk.normality}, {"pass", chk.pass}};
  if (!chk.pass) a.failures.push_back("Sasaki axioms fail");
  const EtaEinsteinFit<S> fit = eta_einstein_fit(s, tol);
  doc["eta_einstein"] = {{"alpha", scalar_json(fit.alpha)},
                         {"beta", scalar_json(fit.beta)},
                         {"residual", fit.residual},
                         {"sum_defect", scalar_json(fit.sum_defect)},
                         {"expected_sum", 2 * s.n() - 2},
                         {"pass", fit.pass}};
  if (fit.pass && !is_zero(fit.sum_defect, tol)) a.failures.push_back("alpha + beta != 2n - 2");
  if (chk.pass) {
    const ConeCheck cone = cone_consistency_check(s.template cast<double>(), cone_radii(samples));
    doc["cone"] = {{"radii", cone.radii},
                   {"residuals", cone.residuals},
                   {"max_residual", cone.max_residual},
                   {"threshold", kConeThreshold},
                   {"pass", cone.max_residual < kConeThreshold}};
    if (cone.max_residual >= kConeThreshold) a.failures.push_back("cone residual " + fmt(cone.max_residual));
  }
}

template <class S>
StructureAnalysis analyze_typed(const StructureFile& f, double tol) {
  StructureAnalysis a;
  a.doc["structure"] = {{"name", f.name}, {"dim", f.dim}, {"kind", f.sasaki ? "sasaki" : "hermitian"}};
  if (f.sasaki)
    analyze_sasaki(to_sasaki<S>(f, tol), tol, 3, a);
  else
    analyze_hermitian(to_hermitian<S>(f, tol), tol, f.expected_class(), a);
  return a;
}

std::string hermitian_text(const Json& doc) {
  std::ostringstream os;
  const Json& cl = doc["classification"];
  os << "conformal class: " << cl["conformal_class"].get<std::string>() << "\n";
  os << "gauduchon: " << yes_no(cl["gauduchon"].get<bool>()) << "\n";
  if (!cl["vaisman"].is_null()) os << "vaisman: " << yes_no(cl["vaisman"]["value"].get<bool>()) << "\n";
  os << "chern-ricci flat: " << yes_no(cl["chern_ricci_flat"]["value"].get<bool>()) << "\n";
  if (!cl["einstein_fit"].is_null()) {
    const Json& t = cl["einstein_fit"]["t"];
    os << "einstein fit: " << (t.is_null() ? std::string("none") : t.is_string() ? t.get<std::string>() : fmt(t.get<double>()))
       << " (residual " << fmt(cl["einstein_fit"]["residual"].get<double>()) << ")\n";
  }
  if (doc.contains("identities")) {
    int applicable = 0, pass = 0;
    for (const auto& r : doc["identities"])
      if (r["applicable"].get<bool>()) {
        ++applicable;
        if (r["pass"].get<bool>()) ++pass;
      }
    os << "identities: " << pass << "/" << applicable << " applicable pass\n";
  }
  os << "theorem A: " << doc["theorem_a"]["verdict"].get<std::string>() << " (" << doc["theorem_a"]["summary"].get<std::string>()
     << ")\n";
  return os.str();
}

std::string sasaki_text(const Json& doc) {
  std::ostringstream os;
  const Json& fit = doc["eta_einstein"];
  auto show = [](const Json& v) { return v.is_string() ? v.get<std::string>() : fmt(v.get<double>()); };
  os << "sasaki axioms: " << (doc["sasaki_check"]["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
  os << "eta-einstein: alpha=" << show(fit["alpha"]) << " beta=" << show(fit["beta"]) << " residual " << fmt(fit["residual"].get<double>())
     << (fit["pass"].get<bool>() ? "" : " (no fit)") << "\n";
  if (doc.contains("cone")) os << "cone residual: " << fmt(doc["cone"]["max_residual"].get<double>()) << "\n";
  return os.str();
}

std::string failures_text(const std::vector<std::string>& failures) {
  std::string out;
  for (const auto& f : failures) out += "failure: " + f + "\n";
  return out;
}

}  // namespace

StructureAnalysis analyze_structure(const StructureFile& f, ScalarMode mode, double tol) {
  return mode == ScalarMode::Rational ? analyze_typed<Rational>(f, tol) : analyze_typed<double>(f, tol);
}

CommandResult classify_command(const std::string& path, const CommandOptions& opt) {
  CommandResult res;
  StructureFile f;
  StructureAnalysis a;
  ScalarMode mode = ScalarMode::Rational;
  try {
    f = load_structure_file(path);
    mode = opt.mode.value_or(f.mode);
    a = analyze_structure(f, mode, opt.tolerance);
  } catch (const ParseError& e) {
    res.exit_code = kExitValidation;
    res.error = "parse error: " + std::string(e.what());
    return res;
  } catch (const ValidationError& e) {
    res.exit_code = kExitValidation;
    res.error = "validation error: " + std::string(e.what());
    return res;
  } catch (const std::exception& e) {
    res.exit_code = kExitValidation;
    res.error = e.what();
    return res;
  }
  res.exit_code = a.alarm ? kExitAlarm : a.failures.empty() ? kExitOk : kExitCheckFailure;
  if (opt.json) {
    Json doc;
    doc["tool"] = tool_json();
    doc["command"] = "classify";
    doc["input"] = path;
    doc["provenance"] = provenance_json(mode, opt.tolerance);
    for (auto it = a.doc.begin(); it != a.doc.end(); ++it) doc[it.key()] = it.value();
    doc["status"] = {{"exit_code", res.exit_code}, {"failures", a.failures}};
    res.output = dump_json(doc);
  } else {
    std::ostringstream os;
    os << "structure: " << f.name << " (dim " << f.dim << ", " << to_string(mode) << ")\n";
    os << (f.sasaki ? sasaki_text(a.doc) : hermitian_text(a.doc)) << failures_text(a.failures);
    res.output = os.str();
  }
  return res;
}

CommandResult suite_command(const std::vector<std::string>& inputs, bool builtin_corpus_flag, const CommandOptions& opt) {
  namespace fs = std::filesystem;
  CommandResult res;
  std::vector<std::string> files;
  for (const auto& in : inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      std::vector<std::string> found;
      for (const auto& e : fs::directory_iterator(in))
        if (e.is_regular_file() && e.path().extension() == ".json") found.push_back(e.path().string());
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(in);
    }
  }

  struct Entry {
    std::string name, source, status;
    std::vector<std::string> failures;
    Json report;
  };
  std::vector<Entry> entries;
  auto run_one = [&](const StructureFile& f, const std::string& source) {
    Entry e{f.name, source, "pass", {}, nullptr};
    try {
      StructureAnalysis a = analyze_structure(f, opt.mode.value_or(f.mode), opt.tolerance);
      if (!a.lck) a.failures.insert(a.failures.begin(), "not lcK: " + a.doc["lck_failure"].get<std::string>());
      e.failures = a.failures;
      e.status = a.alarm ? "alarm" : a.failures.empty() ? "pass" : "fail";
      e.report = std::move(a.doc);
    } catch (const std::exception& ex) {
      e.status = "invalid";
      e.failures = {ex.what()};
    }
    entries.push_back(std::move(e));
  };
  for (const auto& path : files) {
    try {
      run_one(load_structure_file(path), path);
    } catch (const std::exception& ex) {
      entries.push_back({fs::path(path).stem().string(), path, "invalid", {ex.what()}, nullptr});
    }
  }
  std::vector<CrossCheck> cross;
  if (builtin_corpus_flag) {
    for (const auto& c : builtin_corpus())
      run_one(structure_file_from(c.h, c.name, Json{{"expected_class", to_string(c.expected_class)}, {"family", c.family}}),
              "builtin:" + c.family);
    cross = builtin_cross_checks();
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.name < b.name; });

  int passed = 0, failed = 0, invalid = 0, alarms = 0;
  for (const auto& e : entries) {
    if (e.status == "pass") ++passed;
    if (e.status == "fail") ++failed;
    if (e.status == "invalid") ++invalid;
    if (e.status == "alarm") ++alarms;
  }
  int cross_failed = 0;
  for (const auto& c : cross)
    if (!c.pass) ++cross_failed;
  res.exit_code = alarms ? kExitAlarm : invalid ? kExitValidation : (failed || cross_failed) ? kExitCheckFailure : kExitOk;

  if (opt.json) {
    Json doc;
    doc["tool"] = tool_json();
    doc["command"] = "suite";
    doc["inputs"] = inputs;
    doc["builtin_corpus"] = builtin_corpus_flag;
    doc["provenance"] = {{"mode", opt.mode ? Json(to_string(*opt.mode)) : Json("per-file")}, {"tolerance", opt.tolerance}};
    Json ej = Json::array();
    for (const auto& e : entries)
      ej.push_back({{"name", e.name}, {"source", e.source}, {"status", e.status}, {"failures", e.failures}, {"report", e.report}});
    doc["entries"] = std::move(ej);
    Json cj = Json::array();
    for (const auto& c : cross)
      cj.push_back({{"name", c.name}, {"residual", c.residual}, {"threshold", c.threshold}, {"pass", c.pass}});
    doc["cross_checks"] = std::move(cj);
    doc["summary"] = {{"entries", entries.size()}, {"passed", passed},       {"failed", failed},
                      {"invalid", invalid},        {"alarms", alarms},       {"cross_checks", cross.size()},
                      {"cross_checks_failed", cross_failed}, {"exit_code", res.exit_code}};
    res.output = dump_json(doc);
  } else {
    std::ostringstream os;
    for (const auto& e : entries) {
      std::string upper = e.status;
      std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
      os << upper << " " << e.name << " [" << e.source << "]";
      if (!e.report.is_null() && e.report.contains("theorem_a")) os << " " << e.report["theorem_a"]["summary"].get<std::string>();
      os << "\n";
      for (const auto& f : e.failures) os << "  - " << f << "\n";
    }
    for (const auto& c : cross) os << (c.pass ? "PASS" : "FAIL") << " cross-check " << c.name << " residual " << fmt(c.residual) << "\n";
    os << "result: " << passed << " passed, " << failed << " failed, " << invalid << " invalid, " << alarms << " alarms";
    if (!cross.empty()) os << "; cross-checks " << cross.size() - static_cast<std::size_t>(cross_failed) << "/" << cross.size() << " pass";
    os << "\n";
    res.output = os.str();
  }
  if (res.exit_code != kExitOk) {
    std::string names;
    for (const auto& e : entries)
      if (e.status != "pass") names += (names.empty() ? "" : ", ") + e.name;
    for (const auto& c : cross)
      if (!c.pass) names += (names.empty() ? "" : ", ") + c.name;
    res.error = "suite failed: " + names;
  }
  return res;
}

CommandResult construct_command(const ConstructRequest& req) {
  using Q = Rational;
  CommandResult res;
  try {
    StructureFile f;
    const std::string src = "construct " + req.kind;
    if (req.kind == "kodaira") {
      f = structure_file_from(kodaira_structure<Q>(req.n), req.name.value_or("kodaira_n" + std::to_string(req.n)),
                              {{"source", src + " --n " + std::to_string(req.n)}, {"expected_class", "StrictLcK"}});
    } else if (req.kind == "heisenberg") {
      f = structure_file_from(heisenberg_sasaki<Q>(req.n), req.name.value_or("heisenberg_" + std::to_string(2 * req.n + 1)),
                              {{"source", src + " --n " + std::to_string(req.n)}});
    } else if (req.kind == "ot") {
      std::vector<Q> angles;
      std::string tag;
      for (const auto& a : req.angles) {
        angles.push_back(parse_rational(a));
        tag += (tag.empty() ? " --angles " : ",") + a;
      }
      f = structure_file_from(ot_solvable_structure<Q>(req.s, angles), req.name.value_or("ot_s" + std::to_string(req.s)),
                              {{"source", src + " --s " + std::to_string(req.s) + tag}, {"expected_class", "StrictLcK"}});
    } else if (req.kind == "flat-kahler") {
      const auto base = flat_kahler_abelian<Q>(req.m);
      f = structure_file_from(HermitianStructure<Q>(base.alg, base.J_l, base.g_l), req.name.value_or("abelian_kahler_" + std::to_string(req.m)),
                              {{"source", src + " --m " + std::to_string(req.m)}, {"expected_class", "Kahler"}});
    } else if (req.kind == "double-extension") {
      FlatKahlerAlgebra<Q> base;
      std::string src_args = " --base " + req.base;
      if (req.base == "abelian") {
        base = flat_kahler_abelian<Q>(req.m);
        src_args += " --m " + std::to_string(req.m);
      } else if (req.base == "rotation") {
        if (req.m < 4 || req.m % 2) throw std::invalid_argument("rotation base needs even m >= 4");
        base = flat_kahler_rotation<Q>(parse_rational(req.lambda), (req.m - 4) / 2);
        src_args += " --m " + std::to_string(req.m) + " --lambda " + req.lambda;
      } else if (req.base == "hyperbolic") {
        if (req.m < 2 || req.m % 2) throw std::invalid_argument("hyperbolic base needs even m >= 2");
        base = kahler_hyperbolic_base<Q>((req.m - 2) / 2);
        src_args += " --m " + std::to_string(req.m);
      } else {
        throw std::invalid_argument("unknown base '" + req.base + "'");
      }
      const std::size_t m = base.alg.dim();
      Endomorphism<Q> D(Matrix<Q>(m + 1, m + 1));
      if (req.seed) {
        if (req.base != "abelian") throw std::invalid_argument("random derivations are generated for abelian bases only");
        std::mt19937 rng(*req.seed);
        D = random_admissible_derivation<Q>(m / 2, rng);
        src_args += " --seed " + std::to_string(*req.seed);
      }
      f = structure_file_from(double_extension<Q>({base, D}), req.name.value_or("double_extension_" + req.base + std::to_string(m)),
                              {{"source", src + src_args}, {"expected_class", "StrictLcK"}});
    } else {
      throw std::invalid_argument("unknown construction '" + req.kind + "'");
    }
    res.output = serialize(f);
  } catch (const std::exception& e) {
    res.exit_code = kExitValidation;
    res.error = e.what();
  }
  return res;
}

namespace {

Json complex_matrix_json(const CMatrix& c) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < c.n; ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < c.n; ++j) {
      r.push_back(c(i, j).real());
      r.push_back(c(i, j).imag());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

CommandResult model_command(const ModelRequest& req, const CommandOptions& opt) {
  CommandResult res;
  try {
    Json doc;
    doc["tool"] = tool_json();
    doc["command"] = "model";
    doc["model"] = req.kind;
    doc["provenance"] = provenance_json(ScalarMode::Float, opt.tolerance);
    doc["step"] = req.step;
    std::ostringstream os;
    bool pass = true;
    if (req.kind == "ot") {
      const std::size_t n = req.s + 1;
      std::vector<double> x = req.point;
      if (x.empty()) {
        x.assign(2 * n, 0.0);
        for (std::size_t i = 0; i < req.s; ++i) x[2 * i + 1] = 1.0;
      }
      if (x.size() != 2 * n) throw std::invalid_argument("OT point needs " + std::to_string(2 * n) + " real coordinates");
      const OtModelRecord r = ot_model_eval(req.s, ChartPoint::from_real(x), req.step);
      pass = r.ric_fd_rel_residual < kModelThreshold && r.anchor_rel_residual < kModelThreshold;
      doc["s"] = req.s;
      doc["point"] = x;
      doc["omega"] = matrix_json(r.omega.as_matrix());
      doc["theta_closed"] = vector_json(r.theta_closed.as_vector());
      doc["theta_fd"] = vector_json(r.theta_fd.as_vector());
      doc["lee_residual"] = r.lee_residual;
      doc["ric_closed"] = complex_matrix_json(r.ric_closed);
      doc["ric_fd"] = complex_matrix_json(r.ric_fd);
      doc["half_dj_theta_fd"] = matrix_json(r.half_dj_theta_fd.as_matrix());
      doc["ric_fd_rel_residual"] = r.ric_fd_rel_residual;
      doc["anchor_rel_residual"] = r.anchor_rel_residual;
      os << "OT model s=" << req.s << ": ric fd rel residual " << fmt(r.ric_fd_rel_residual) << ", Ric = dJθ/2 rel residual "
         << fmt(r.anchor_rel_residual) << ", Lee residual " << fmt(r.lee_residual) << "\n";
    } else if (req.kind == "hopf") {
      std::vector<double> x = req.point;
      if (x.empty()) {
        x.assign(2 * req.n, 0.0);
        x[0] = 1.0;
      }
      if (x.size() != 2 * req.n) throw std::invalid_argument("Hopf point needs " + std::to_string(2 * req.n) + " real coordinates");
      const HopfModelRecord r = hopf_model_eval(req.n, ChartPoint::from_real(x), req.step);
      pass = r.einstein_fit_residual < kModelThreshold;
      doc["n"] = req.n;
      doc["note"] = "classical conformally flat Hopf metric |z|^-2 sum i dz dzbar (repository choice)";
      doc["point"] = x;
      doc["omega"] = matrix_json(r.omega.as_matrix());
      doc["theta_closed"] = vector_json(r.theta_closed.as_vector());
      doc["theta_fd"] = vector_json(r.theta_fd.as_vector());
      doc["lee_residual"] = r.lee_residual;
      doc["einstein_t_fd"] = r.einstein_t_fd;
      doc["einstein_fit_residual"] = r.einstein_fit_residual;
      os << "Hopf model n=" << req.n << ": t = " << fmt(r.einstein_t_fd) << " (fit residual " << fmt(r.einstein_fit_residual)
         << "), Lee residual " << fmt(r.lee_residual) << "\n";
    } else {
      throw std::invalid_argument("unknown model '" + req.kind + "'");
    }
    doc["pass"] = pass;
    res.exit_code = pass ? kExitOk : kExitCheckFailure;
    res.output = opt.json ? dump_json(doc) : os.str();
  } catch (const std::exception& e) {
    res.exit_code = kExitValidation;
    res.error = e.what();
  }
  return res;
}

CommandResult sasaki_command(const SasakiRequest& req, const CommandOptions& opt) {
  CommandResult res;
  try {
    Json doc;
    doc["tool"] = tool_json();
    doc["command"] = "sasaki";
    std::optional<std::string> vaisman_note;
    SasakiStructure<Rational> s;
    std::optional<Rational> t;
    ScalarMode mode = ScalarMode::Rational;
    std::size_t cone_n = 0;
    if (req.path) {
      const StructureFile f = load_structure_file(*req.path);
      mode = opt.mode.value_or(f.mode);
      doc["input"] = *req.path;
      if (f.sasaki) {
        s = to_sasaki<Rational>(f, opt.tolerance);
      } else {
        const HermitianStructure<Rational> h = to_hermitian<Rational>(f, opt.tolerance);
        s = sasaki_from_vaisman(h, opt.tolerance);
        const HermitianStructure<Rational> hn = normalize_lee(h, extract_lee_form(h, opt.tolerance));
        t = einstein_fit(hn, extract_lee_form(hn, opt.tolerance), chern_ricci_form(hn), opt.tolerance).t;
        cone_n = h.n();
      }
    } else {
      doc["input"] = "builtin:" + req.builtin;
      if (req.builtin == "h3")
        s = heisenberg_sasaki<Rational>();
      else if (req.builtin == "sphere")
        s = sphere_sasaki<Rational>();
      else
        throw std::invalid_argument("unknown builtin Sasaki structure '" + req.builtin + "'");
    }
    doc["provenance"] = provenance_json(mode, opt.tolerance);
    StructureAnalysis a;
    if (mode == ScalarMode::Rational)
      analyze_sasaki(s, opt.tolerance, req.samples, a);
    else
      analyze_sasaki(s.cast<double>(), opt.tolerance, req.samples, a);
    for (auto it = a.doc.begin(); it != a.doc.end(); ++it) doc[it.key()] = it.value();
    if (t) {
      const auto [alpha, beta] = vaisman_sasaki_constants(*t, cone_n);
      const EtaEinsteinFit<Rational> fit = eta_einstein_fit(s, opt.tolerance);
      const bool match = fit.pass && fit.alpha == alpha && fit.beta == beta;
      doc["vaisman_constants"] = {{"t", format_rational(*t)}, {"n", cone_n}, {"alpha", format_rational(alpha)},
                                  {"beta", format_rational(beta)}, {"matches_fit", match}};
      if (!match) a.failures.push_back("eta-Einstein constants differ from the Vaisman prediction");
    }
    doc["status"] = {{"failures", a.failures}};
    res.exit_code = a.failures.empty() ? kExitOk : kExitCheckFailure;
    res.output = opt.json ? dump_json(doc) : sasaki_text(a.doc) + failures_text(a.failures);
  } catch (const std::exception& e) {
    res.exit_code = kExitValidation;
    res.error = e.what();
  }
  return res;
}

}  // namespace lckw
