// Command-line front end: expression simplification, motive constructors,
// conversion-table dumps, Mozgovoy verification and benchmarks.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <thread>

#include "lring/higgs.hpp"
#include "lring/parse.hpp"

using namespace lring;
using ojson = nlohmann::ordered_json;

namespace {

struct CurveBinding {
  std::map<std::string, OperandId> bound;
  std::map<std::string, CurveHandle> handles;
};

CurveBinding bind_curves(const std::vector<std::string>& specs) {
  CurveBinding b;
  for (const auto& spec : specs) {
    auto colon = spec.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= spec.size())
      throw domain_error("--curve expects name:genus, got '" + spec + "'");
    std::string name = spec.substr(0, colon);
    int genus = 0;
    try {
      genus = std::stoi(spec.substr(colon + 1));
    } catch (...) {
      throw domain_error("--curve genus must be an integer in '" + spec + "'");
    }
    CurveHandle h = curve(genus, name);
    b.bound["h1_" + name] = h.chow;
    b.handles.emplace(name, h);
  }
  return b;
}

void emit_text(const std::string& text, const std::string& emit_path) {
  if (!emit_path.empty()) {
    std::ofstream out(emit_path);
    if (!out) throw domain_error("cannot open emit file: " + emit_path);
    out << text << "\n";
  }
}

std::string ratfn_or_poly_text(const RatFn& r) {
  if (r.denominator().empty()) return r.to_poly().render();
  return r.render();
}

ojson report_json(const MozgovoyReport& r) {
  ojson j;
  j["schema"] = 1;
  j["genus"] = r.genus;
  j["p"] = r.p;
  j["rank"] = r.rank;
  j["equal"] = r.equal;
  j["n_terms"] = r.n_terms;
  j["weighted_degree"] = r.weighted_degree;
  j["runtime_ms"] = r.runtime_ms;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      int v = std::stoi(s);
      return {v, v};
    }
    int lo = std::stoi(s.substr(0, dots));
    int hi = std::stoi(s.substr(dots + 2));
    if (hi < lo) throw domain_error("empty range: " + s);
    return {lo, hi};
  } catch (const domain_error&) {
    throw;
  } catch (...) {
    throw domain_error("expected N or N..M, got '" + s + "'");
  }
}

int run_simplify(const std::string& expr_text, const std::string& form,
                 const std::vector<std::string>& curves, bool as_json,
                 const std::string& emit_path) {
  CurveBinding binding = bind_curves(curves);
  Expr e = parse_expr(expr_text, binding.bound);
  RatFn result = form == "adams" ? to_adams(e) : to_lambda(e);
  std::string text = ratfn_or_poly_text(result);
  if (as_json) {
    ojson j;
    j["schema"] = 1;
    j["form"] = form;
    j["result"] = text;
    j["n_terms"] = result.numerator().n_terms();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text << "\n";
  }
  emit_text(text, emit_path);
  return 0;
}

int run_motive(const std::string& name, const std::string& group, int n, int genus, int p, int r,
               int d, bool want_bg, bool want_bun, const std::string& emit_path) {
  std::string text;
  if (!group.empty()) {
    GroupFamily family = group_family_from_name(group);
    auto pre = preset(family, n);
    if (std::holds_alternative<Expr>(pre)) {
      if (want_bg || want_bun) throw domain_error("--bg/--bun need a semisimple group");
      text = to_lambda(std::get<Expr>(pre)).to_poly().render();
    } else {
      const GroupDescriptor& g = std::get<GroupDescriptor>(pre);
      if (want_bg) {
        text = bg(g).render();
      } else if (want_bun) {
        CurveHandle h = curve(genus, "X");
        text = bun(g, h).render();
      } else {
        text = group_motive(g).render();
      }
    }
  } else if (name == "point") {
    text = to_lambda(point()).to_poly().render();
  } else if (name == "lefschetz") {
    text = to_lambda(lefschetz()).to_poly().render();
  } else if (name == "proj") {
    text = to_lambda(proj(n)).to_poly().render();
  } else if (name == "curve-class") {
    text = to_lambda(curve_class(curve(genus, "X"))).to_poly().render();
  } else if (name == "jacobian") {
    text = to_lambda(jacobian(curve(genus, "X"))).to_poly().render();
  } else if (name == "vb") {
    text = vb_moduli(curve(genus, "X"), r, d).render();
  } else if (name == "vb-general") {
    text = vb_moduli_general(curve(genus, "X"), r, d).render();
  } else if (name == "higgs-bb") {
    text = higgs_bb(curve(genus, "X"), p, r).render();
  } else if (name == "adhm") {
    text = adhm_motive(curve(genus, "X"), p, r).render();
  } else {
    throw domain_error("unknown motive name: " + name);
  }
  std::cout << text << "\n";
  emit_text(text, emit_path);
  return 0;
}

int run_verify(const std::string& gs, const std::string& ps, const std::string& rs, bool perturb,
               const std::string& emit_path) {
  auto [glo, ghi] = parse_range(gs);
  auto [plo, phi] = parse_range(ps);
  auto [rlo, rhi] = parse_range(rs);
  if (glo < 2) throw domain_error("genus must be >= 2");
  if (plo < 1) throw domain_error("p must be >= 1");
  if (rlo < 1 || rhi > 3) throw domain_error("rank must be within 1..3");

  std::vector<std::tuple<int, int, int>> cases;
  for (int g = glo; g <= ghi; ++g)
    for (int p = plo; p <= phi; ++p)
      for (int r = rlo; r <= rhi; ++r) cases.emplace_back(g, p, r);

  std::vector<MozgovoyReport> reports(cases.size());
  unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                     static_cast<unsigned>(cases.size())));
  if (workers > 1) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < cases.size(); i = next.fetch_add(1)) {
          auto [g, p, r] = cases[i];
          reports[i] = verify_mozgovoy(g, p, r, perturb);
        }
      });
    for (auto& t : pool) t.join();
  } else {
    for (std::size_t i = 0; i < cases.size(); ++i) {
      auto [g, p, r] = cases[i];
      reports[i] = verify_mozgovoy(g, p, r, perturb);
    }
  }

  if (reports.size() == 1) {
    std::cout << report_json(reports[0]).dump(2) << "\n";
  } else {
    ojson arr = ojson::array();
    for (const auto& rep : reports) arr.push_back(report_json(rep));
    std::cout << arr.dump(2) << "\n";
  }

  if (!emit_path.empty()) {
    std::string dump;
    for (const auto& [g, p, r] : cases) {
      CurveHandle h = curve(g, "X");
      dump += "g=" + std::to_string(g) + " p=" + std::to_string(p) + " r=" + std::to_string(r) +
              ": " + higgs_bb(h, p, r).render() + "\n";
    }
    std::ofstream out(emit_path);
    if (!out) throw domain_error("cannot open emit file: " + emit_path);
    out << dump;
  }

  bool any_error = false, all_equal = true;
  for (const auto& rep : reports) {
    if (!rep.error.empty()) any_error = true;
    if (!rep.equal) all_equal = false;
  }
  if (any_error) return 3;
  return all_equal ? 0 : 1;
}

int run_ctx_dump(int n, const std::string& family, const std::string& emit_path) {
  auto& ctx = LambdaRingContext::instance();
  Poly p;
  if (family == "l2a")
    p = ctx.lambda_in_adams(n);
  else if (family == "s2a")
    p = ctx.sigma_in_adams(n);
  else if (family == "a2l")
    p = ctx.adams_in_lambda(n);
  else if (family == "a2s")
    p = ctx.adams_in_sigma(n);
  else if (family == "op")
    p = ctx.op_transform(n);
  else
    throw domain_error("unknown family: " + family);
  std::cout << p.render() << "\n";
  emit_text(p.render(), emit_path);
  return 0;
}

int run_bench(const std::vector<std::string>& case_specs, int reps) {
  for (const auto& spec : case_specs) {
    long best = -1, total = 0;
    for (int rep = 0; rep < reps; ++rep) {
      auto start = std::chrono::steady_clock::now();
      if (spec.rfind("verify:", 0) == 0) {
        int g, p, r;
        if (std::sscanf(spec.c_str() + 7, "%d,%d,%d", &g, &p, &r) != 3)
          throw domain_error("bench verify case expects verify:g,p,r");
        MozgovoyReport rr = verify_mozgovoy(g, p, r);
        if (!rr.error.empty()) throw error("bench case failed: " + rr.error);
      } else if (spec.rfind("ctx:", 0) == 0) {
        int n = 0;
        try {
          n = std::stoi(spec.substr(4));
        } catch (...) {
          throw domain_error("bench ctx case expects ctx:n");
        }
        (void)LambdaRingContext::instance().adams_in_lambda(n);
      } else if (spec == "example44") {
        Expr e = parse_expr("lambda(2, adams(2, x) - y/2)");
        (void)to_lambda(e);
      } else {
        throw domain_error("unknown bench case: " + spec);
      }
      long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
      total += ms;
      if (best < 0 || ms < best) best = ms;
    }
    std::cout << spec << ": best " << best << " ms, mean " << (total / std::max(1, reps))
              << " ms over " << reps << " reps\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lambda-ring symbolic engine and motive calculator"};
  app.require_subcommand(1);

  std::string expr_text, form = "lambda", emit_path;
  std::vector<std::string> curves;
  bool as_json = false;
  auto* sim = app.add_subcommand("simplify", "canonicalize an expression");
  sim->add_option("expr", expr_text, "expression text")->required();
  sim->add_option("--form", form, "target form")->check(CLI::IsMember({"adams", "lambda"}));
  sim->add_option("--curve", curves, "declare a curve as name:genus");
  sim->add_flag("--json", as_json, "wrap the output in JSON");
  sim->add_option("--emit", emit_path, "also write the polynomial dump to a file");

  std::string mname, mgroup;
  int mn = 0, mgenus = 2, mp = 1, mr = 2, md = 1;
  bool mbg = false, mbun = false;
  std::string memit;
  auto* mot = app.add_subcommand("motive", "print a named motive class");
  mot->add_option("--name", mname, "point|lefschetz|proj|curve-class|jacobian|vb|vb-general|higgs-bb|adhm");
  mot->add_option("--group", mgroup, "group family (A,B,C,D,E6,E7,E8,F4,G2,SL,GL,PSL,SO,Sp,Spin)");
  mot->add_option("--n", mn, "rank / dimension parameter");
  mot->add_option("--genus", mgenus, "curve genus");
  mot->add_option("--p", mp, "twist excess, deg L = 2g-2+p");
  mot->add_option("--r", mr, "rank");
  mot->add_option("--d", md, "degree");
  mot->add_flag("--bg", mbg, "classifying stack of the group");
  mot->add_flag("--bun", mbun, "moduli stack of G-bundles on a genus --genus curve");
  mot->add_option("--emit", memit, "also write the dump to a file");

  std::string vg = "2", vp = "1", vr = "2", vemit;
  bool vperturb = false;
  auto* ver = app.add_subcommand("verify-mozgovoy",
                                 "compare the conjectural and proven twisted-Higgs motives");
  ver->add_option("--g", vg, "genus or range lo..hi");
  ver->add_option("--p", vp, "twist excess or range");
  ver->add_option("--r", vr, "rank or range (1..3)");
  ver->add_flag("--perturb-bb", vperturb, "negative control: damage one coefficient");
  ver->add_option("--emit", vemit, "write the polynomial dumps to a file");

  auto* ctx = app.add_subcommand("ctx", "conversion-table utilities");
  int cn = 1;
  std::string cfamily = "l2a", cemit;
  auto* dump = ctx->add_subcommand("dump", "print one conversion polynomial");
  dump->add_option("--n", cn, "degree")->required();
  dump->add_option("--family", cfamily, "l2a|a2l|s2a|a2s|op");
  dump->add_option("--emit", cemit, "also write the dump to a file");

  std::vector<std::string> bench_cases;
  int reps = 3;
  auto* ben = app.add_subcommand("bench", "time selected cases");
  ben->add_option("cases", bench_cases, "verify:g,p,r | ctx:n | example44")->required();
  ben->add_option("--reps", reps, "repetitions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed()) return run_simplify(expr_text, form, curves, as_json, emit_path);
    if (mot->parsed()) {
      if (mname.empty() == mgroup.empty())
        throw domain_error("motive needs exactly one of --name or --group");
      return run_motive(mname, mgroup, mn, mgenus, mp, mr, md, mbg, mbun, memit);
    }
    if (ver->parsed()) return run_verify(vg, vp, vr, vperturb, vemit);
    if (ctx->parsed()) {
      if (!dump->parsed()) throw domain_error("ctx needs the dump subcommand");
      return run_ctx_dump(cn, cfamily, cemit);
    }
    if (ben->parsed()) return run_bench(bench_cases, reps);
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const inconsistency_error& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 3;
  } catch (const inversion_error& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
