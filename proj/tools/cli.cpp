#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ostream>
#include <regex>

#include <CLI11.hpp>

#include "dgla/assoc.hpp"
#include "dgla/errors.hpp"
#include "dgla/lie.hpp"
#include "dgla/morphism.hpp"
#include "dgla/normalizer.hpp"
#include "dgla/stability.hpp"
#include "report.hpp"

namespace dgla::cli {

namespace {

struct Options {
  std::string command;
  std::string file;
  bool json = false;
  std::string complex;
  std::string module;
  std::string degrees = "0..2";
  std::string mode;
  std::string subspace;
  std::uint64_t seed = 0;
  double epsilon = 1e-3;
  double tol = 1e-9;
  int max_iter = 50;
  bool fd_jacobian = false;
};

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

double max_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>(); }

const Subspace& pick_subspace(const AlgebraFile& f, const std::string& name) {
  if (name.empty()) {
    if (f.subspaces.size() == 1) return f.subspaces.front().space;
    throw UsageError("--subspace NAME is required (file declares " + std::to_string(f.subspaces.size()) +
                     " subspaces)");
  }
  try {
    return f.subspace(name);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
}

void need(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

// Graph problems live in NR(dim V + dim W); exact validation beyond 8 is impractical.
void graph_size_ok(const LieMorphism& f) {
  const std::size_t total = f.source().dim() + f.target().dim();
  need(total <= 8, "--mode graph needs dim V + dim W <= 8, this file has " + std::to_string(total));
}

std::string default_mode(const AlgebraFile& f) {
  switch (f.kind) {
    case Kind::lie: return "rigidity";
    case Kind::assoc: return f.assoc.unit() ? "unitality" : "rigidity";
    case Kind::morphism: return "rigidity";
    case Kind::pair: return "pair";
  }
  return "rigidity";
}

std::pair<int, int> parse_degrees(const std::string& s) {
  static const std::regex re(R"((\d)(?:\.\.(\d))?)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw UsageError("--degrees expects a..b with 0 <= a <= b <= 4, got \"" + s + "\"");
  const int lo = std::stoi(m[1]);
  const int hi = m[2].matched ? std::stoi(m[2]) : lo;
  if (lo > hi || hi > 4) throw UsageError("--degrees expects a..b with 0 <= a <= b <= 4, got \"" + s + "\"");
  return {lo, hi};
}

void describe(const AlgebraFile& f, Report& r) {
  r.add("kind", std::string(kind_name(f.kind)));
  r.add("algebra", f.name);
  if (f.is_morphism()) {
    r.add("dim_source", f.morphism.source().dim());
    r.add("dim_target", f.morphism.target().dim());
  } else {
    r.add("dim", f.kind == Kind::lie ? f.lie.dim() : f.assoc.dim());
  }
}

int cmd_check(const AlgebraFile& f, Report& r) {
  r.add("subspaces", f.subspaces.size());
  if (f.kind == Kind::assoc) r.add("unital", f.assoc.unit().has_value());
  r.add("valid", true);
  return exit_ok;
}

int cmd_cohomology(const AlgebraFile& f, const Options& o, Report& r) {
  const auto [lo, hi] = parse_degrees(o.degrees);
  const std::string complex = !o.complex.empty() ? o.complex : (f.kind == Kind::assoc ? "hochschild" : "ce");
  std::string module = o.module;
  CochainComplex c;
  if (complex == "hochschild") {
    need(f.kind == Kind::assoc, "the Hochschild complex needs an assoc file");
    need(module.empty() || module == "adjoint", "the Hochschild complex only takes the module V (--module adjoint)");
    module = "adjoint";
    c = hochschild_complex(f.assoc, hi + 1);
  } else {
    need(complex == "ce", "--complex must be ce or hochschild");
    need(f.kind != Kind::assoc, "the CE complex needs a lie, morphism or pair file");
    const LieAlgebra& v = f.kind == Kind::lie ? f.lie : f.morphism.source();
    if (module.empty()) module = f.kind == Kind::lie ? "adjoint" : "through-f";
    if (module == "adjoint") {
      c = ce_complex(v, Representation::adjoint(v), hi + 1);
    } else if (module == "trivial") {
      c = ce_complex(v, Representation::trivial(v, 1), hi + 1);
    } else if (module == "through-f") {
      need(f.is_morphism(), "--module through-f needs a morphism or pair file");
      c = ce_complex(v, module_through(f.morphism), hi + 1);
    } else if (module.rfind("quotient:", 0) == 0) {
      const Subspace& w = pick_subspace(f, module.substr(9));
      if (f.kind == Kind::lie) {
        const auto p = SubalgebraProblem::create(f.lie, w);
        c = ce_complex(f.lie.restrict_to(w), quotient_module(p), hi + 1);
      } else {
        c = ce_complex(v, quotient_module(MapIntoSubalgProblem::create(f.morphism, w)), hi + 1);
      }
    } else {
      throw UsageError("--module must be adjoint, trivial, through-f or quotient:NAME");
    }
  }
  r.add("complex", complex);
  r.add("module", module);
  for (int k = lo; k <= hi; ++k) r.add("dim_C" + std::to_string(k), c.dim(k));
  for (int k = lo; k <= hi; ++k) r.add("H" + std::to_string(k), c.cohomology(k));
  return exit_ok;
}

int cmd_rigidity(const AlgebraFile& f, Report& r) {
  switch (f.kind) {
    case Kind::lie: r.add_verdict(lie_rigidity(f.lie)); break;
    case Kind::assoc: r.add_verdict(assoc_rigidity(f.assoc)); break;
    case Kind::morphism:
    case Kind::pair: r.add_verdict(morphism_rigidity(f.morphism)); break;
  }
  return exit_ok;
}

int cmd_stability(const AlgebraFile& f, const Options& o, Report& r) {
  need(f.kind != Kind::assoc, "stability needs a lie, morphism or pair file (use unitality for assoc files)");
  std::string mode = o.mode;
  if (mode.empty())
    mode = f.kind == Kind::lie ? "subalgebra" : (f.kind == Kind::morphism && !f.subspaces.empty() ? "into-subalgebra" : "pair");
  r.add("mode", mode);
  if (mode == "subalgebra") {
    need(f.kind == Kind::lie, "--mode subalgebra needs a lie file");
    r.add_verdict(subalg_stability(SubalgebraProblem::create(f.lie, pick_subspace(f, o.subspace))));
  } else if (mode == "pair") {
    need(f.is_morphism(), "--mode pair needs a morphism or pair file");
    r.add_verdict(pair_stability(f.morphism));
  } else if (mode == "graph") {
    need(f.is_morphism(), "--mode graph needs a morphism or pair file");
    graph_size_ok(f.morphism);
    r.add_verdict(graph_stability(f.morphism));
  } else if (mode == "into-subalgebra") {
    need(f.is_morphism(), "--mode into-subalgebra needs a morphism or pair file");
    r.add_verdict(map_into_subalg_stability(MapIntoSubalgProblem::create(f.morphism, pick_subspace(f, o.subspace))));
  } else {
    throw UsageError("--mode must be subalgebra, pair, graph or into-subalgebra");
  }
  return exit_ok;
}

int cmd_unitality(const AlgebraFile& f, Report& r) {
  need(f.kind == Kind::assoc, "unitality needs an assoc file");
  r.add_verdict(unitality_stability(f.assoc));
  return exit_ok;
}

void add_result(Report& r, const NumericDgla& num, const GaugeResult& g) {
  r.add("iterations", g.iterations);
  r.add("residual", g.residual);
  r.add("converged", g.converged);
  r.add("gauged_curvature", max_norm(num.curvature(g.gauged)));
  r.add("v", to_std(g.v));
  r.add("x", to_std(g.x));
}

int cmd_normalize(const AlgebraFile& f, const Options& o, Report& r) {
  if (!(o.epsilon >= 0)) throw UsageError("--epsilon must be non-negative");
  if (!(o.tol > 0)) throw UsageError("--tol must be positive");
  const Instance in = build_instance(f, o.mode, o.subspace);
  r.add("mode", in.mode);
  r.add("seed", static_cast<std::int64_t>(o.seed));
  r.add("epsilon", o.epsilon);
  r.add("tolerance", o.tol);
  std::optional<Normalizer> norm;
  try {
    norm.emplace(in.g, in.h, in.q);
  } catch (const CriterionFails&) {
    r.add_verdict(stability_criterion(in.g, in.h, in.q));
    r.add("error", "stability criterion fails (H1 of the quotient is nonzero); nothing to normalize");
    return exit_criterion;
  }
  r.add_verdict(norm->verdict());
  const NumericDgla& num = norm->problem().numeric;
  const Eigen::VectorXd q = to_eigen(in.q);
  const Eigen::VectorXd qp = perturb_in_orbit(num, q, o.seed, o.epsilon);
  r.add("perturbation", max_norm(qp - q));
  NormalizeOptions opts;
  opts.tolerance = o.tol;
  opts.max_iter = o.max_iter;
  opts.finite_difference_jacobian = o.fd_jacobian;
  try {
    add_result(r, num, norm->run(qp, opts));
  } catch (const NoConvergence& e) {
    add_result(r, num, e.best());
    r.add("error", e.what());
    return exit_no_convergence;
  }
  return exit_ok;
}

int dispatch(const Options& o, Report& r) {
  r.add("command", o.command);
  r.add("file", o.file);
  const AlgebraFile f = load_algebra(o.file);
  describe(f, r);
  if (o.command == "check") return cmd_check(f, r);
  if (o.command == "cohomology") return cmd_cohomology(f, o, r);
  if (o.command == "rigidity") return cmd_rigidity(f, r);
  if (o.command == "stability") return cmd_stability(f, o, r);
  if (o.command == "unitality") return cmd_unitality(f, r);
  return cmd_normalize(f, o, r);
}

std::string error_type(int code) {
  switch (code) {
    case exit_usage: return "usage";
    case exit_invariant: return "invariant";
    case exit_criterion: return "criterion";
    case exit_no_convergence: return "no-convergence";
  }
  return "ok";
}

}  // namespace

Instance build_instance(const AlgebraFile& f, std::string mode, const std::string& subspace) {
  if (mode.empty()) mode = default_mode(f);
  if (mode == "rigidity") {
    if (f.kind == Kind::lie) {
      const Dgla g = nr_dgla(f.lie.dim()).twisted(f.lie.structure_map().flatten());
      return {mode, g, DglaSub::zero(g), zero_vec(g.dim(1))};
    }
    if (f.kind == Kind::assoc) {
      const Dgla g = twisted_g_dgla(f.assoc);
      return {mode, g, DglaSub::zero(g), zero_vec(g.dim(1))};
    }
    const Dgla g = morphism_dgla(f.morphism.source(), f.morphism.target()).twisted(morphism_element(f.morphism.matrix()));
    return {mode, g, DglaSub::zero(g), zero_vec(g.dim(1))};
  }
  if (mode == "unitality") {
    need(f.kind == Kind::assoc, "--mode unitality needs an assoc file");
    if (!f.assoc.unit()) throw MissingUnit("unitality needs an algebra with a declared unit");
    const Dgla g = twisted_g_dgla(f.assoc);
    return {mode, g, normalized_subcomplex(g, f.assoc), zero_vec(g.dim(1))};
  }
  if (mode == "subalgebra" || mode == "graph") {
    need(mode == "subalgebra" ? f.kind == Kind::lie : f.is_morphism(),
         "--mode " + mode + " needs a " + (mode == "subalgebra" ? "lie" : "morphism or pair") + " file");
    if (mode == "graph") graph_size_ok(f.morphism);
    const SubalgebraProblem p =
        mode == "graph" ? graph_problem(f.morphism) : SubalgebraProblem::create(f.lie, pick_subspace(f, subspace));
    const Dgla g = nr_dgla(p.ambient.dim(), -1, 2);
    return {mode, g, subalg_subdgla(g, p), p.ambient.structure_map().flatten()};
  }
  if (mode == "pair") {
    need(f.is_morphism(), "--mode pair needs a morphism or pair file");
    const Dgla g = pair_dgla(f.morphism.source(), f.morphism.target(), 2);
    Vec q = f.morphism.source().structure_map().flatten();
    const Vec nu = f.morphism.target().structure_map().flatten();
    q.insert(q.end(), nu.begin(), nu.end());
    return {mode, g, pair_subdgla(g, f.morphism), q};
  }
  if (mode == "into-subalgebra") {
    need(f.is_morphism(), "--mode into-subalgebra needs a morphism or pair file");
    const auto p = MapIntoSubalgProblem::create(f.morphism, pick_subspace(f, subspace));
    const Dgla g = morphism_dgla(f.morphism.source(), f.morphism.target());
    return {mode, g, into_subalg_subdgla(g, p), morphism_element(f.morphism.matrix())};
  }
  throw UsageError("--mode must be rigidity, unitality, subalgebra, pair, graph or into-subalgebra");
}

bool color_enabled(bool stdout_is_tty) {
  const char* no_color = std::getenv("NO_COLOR");
  return stdout_is_tty && (no_color == nullptr || *no_color == '\0');
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
  Options o;
  CLI::App app{"Exact deformation and stability checks for Lie and associative algebras", "dglacli"};
  app.require_subcommand(1, 1);
  app.add_flag("--json", o.json, "machine-readable output");

  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "algebra description (JSON)")->required();
    sub->add_flag("--json", o.json, "machine-readable output");
  };
  auto* check = app.add_subcommand("check", "validate the declared invariants of a file");
  add_file(check);
  auto* coh = app.add_subcommand("cohomology", "exact cohomology dimensions");
  add_file(coh);
  coh->add_option("--complex", o.complex, "ce or hochschild")->check(CLI::IsMember({"ce", "hochschild"}));
  coh->add_option("--module", o.module, "adjoint, trivial, through-f or quotient:NAME");
  coh->add_option("--degrees", o.degrees, "degree range a..b")->capture_default_str();
  auto* rig = app.add_subcommand("rigidity", "rigidity criterion for the file's kind");
  add_file(rig);
  auto* stab = app.add_subcommand("stability", "subalgebra, pair, graph or into-subalgebra stability");
  add_file(stab);
  stab->add_option("--mode", o.mode)->check(CLI::IsMember({"subalgebra", "pair", "graph", "into-subalgebra"}));
  stab->add_option("--subspace", o.subspace, "name of a subspace declared in the file");
  auto* unit = app.add_subcommand("unitality", "stability of unitality for an assoc file with a unit");
  add_file(unit);
  auto* norm = app.add_subcommand("normalize", "perturb inside the gauge orbit, then gauge-normalize");
  add_file(norm);
  norm->add_option("--perturb-seed", o.seed, "seed of the orbit perturbation")->capture_default_str();
  norm->add_option("--epsilon", o.epsilon, "max-norm of the perturbing gauge parameter")->capture_default_str();
  norm->add_option("--tol", o.tol, "residual tolerance")->capture_default_str();
  norm->add_option("--max-iter", o.max_iter, "Newton iteration cap")->capture_default_str()->check(
      CLI::NonNegativeNumber);
  norm->add_option("--mode", o.mode)->check(
      CLI::IsMember({"rigidity", "unitality", "subalgebra", "pair", "graph", "into-subalgebra"}));
  norm->add_option("--subspace", o.subspace, "name of a subspace declared in the file");
  norm->add_flag("--fd-jacobian", o.fd_jacobian, "finite-difference Jacobian");

  std::vector<std::string> argv_store{"dglacli"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }
  o.command = app.get_subcommands().front()->get_name();

  Report r;
  const auto start = std::chrono::steady_clock::now();
  int code = exit_ok;
  std::string message;
  try {
    code = dispatch(o, r);
  } catch (const UsageError& e) {
    code = exit_usage, message = e.what();
  } catch (const ParseError& e) {
    code = exit_usage, message = e.what();
  } catch (const ShapeError& e) {
    code = exit_usage, message = e.what();
  } catch (const InvariantViolation& e) {
    code = exit_invariant, message = e.what();
  } catch (const MissingUnit& e) {
    code = exit_invariant, message = e.what();
  } catch (const NotMaurerCartan& e) {
    code = exit_invariant, message = e.what();
  } catch (const std::exception& e) {
    code = exit_usage, message = std::string("unexpected failure: ") + e.what();
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (!message.empty()) {
    if (o.command == "check") r.add("valid", false);
    r.add("error", message);
  }
  if (code != exit_ok) {
    r.add("error_type", error_type(code));
    r.add("exit_code", code);
  }
  r.add("timing_ms", ms);
  if (o.json) {
    out << r.json();
  } else if (!message.empty() && code != exit_criterion && code != exit_no_convergence) {
    out << r.text(color);
    err << "dglacli: " << message << "\n";
  } else {
    out << r.text(color);
  }
  return code;
}

}  // namespace dgla::cli
