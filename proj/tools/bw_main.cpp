// Command-line front end: construct tower levels, verify their defining
// clauses, run the quotient-identity suite, enumerate glue codes between the
// halves, and certify minima.  Everything is exact; output is JSON with
// arbitrary-precision values rendered as decimal strings.  Exit code 0 means
// the command ran (verdicts live in the JSON), 1 means a structural identity
// or resource limit failed hard, 2 means bad usage or unparseable input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bw/serialize.hpp"
#include "bw/testkit.hpp"

namespace {

using bw::Json;

void emit(const Json& j, const std::string& out) {
  std::string text = j.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw bw::Error("cannot open output file '" + out + "'");
  f << text;
}

std::string slurp(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw bw::ParseError("cannot read input file '" + path + "'");
  ss << f.rdbuf();
  return ss.str();
}

Json coords_json(const std::vector<bw::Int>& v) {
  Json a = Json::array();
  for (const bw::Int& x : v) a.push_back(x.get_str());
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact tools for the doubling tower and its dihedral actions"};
  app.require_subcommand(1);

  unsigned c_d = 3;
  std::string c_out;
  CLI::App* c = app.add_subcommand("construct", "build a tower level and print it");
  c->add_option("--d", c_d, "tower level (2..6)")->capture_default_str();
  c->add_option("--out", c_out, "output file, '-' for stdout");

  unsigned v_d = 3;
  std::string v_in, v_out;
  unsigned long long v_budget = bw::kDefaultNodeBudget;
  CLI::App* v = app.add_subcommand("verify-x", "check the defining clauses of a level");
  auto* v_d_opt = v->add_option("--d", v_d, "tower level to build and check")->capture_default_str();
  v->add_option("--in", v_in, "tower JSON to check instead of --d")->excludes(v_d_opt);
  v->add_option("--budget", v_budget, "enumeration node budget");
  v->add_option("--out", v_out, "output file");

  std::string l_name, l_in, l_out;
  std::uint64_t l_seed = 0;
  std::size_t l_blocks = 2, l_depth = 0;
  CLI::App* lm = app.add_subcommand("lemmas", "run the quotient-identity suite on an action");
  auto* l_name_opt = lm->add_option("--canonical", l_name, "M2, M4, or BW2..BW6");
  auto* l_in_opt = lm->add_option("--in", l_in, "action JSON");
  auto* l_seed_opt = lm->add_option("--seed", l_seed, "seed for a generated action");
  lm->add_option("--n", l_blocks, "building blocks per generated action")->capture_default_str();
  lm->add_option("--depth", l_depth, "sublattice refinements per generated action")
      ->capture_default_str();
  l_name_opt->excludes(l_in_opt)->excludes(l_seed_opt);
  l_in_opt->excludes(l_seed_opt);
  lm->add_option("--out", l_out, "output file");

  unsigned g_d = 3;
  bool g_full = false;
  std::string g_out;
  unsigned long long g_budget = bw::kDefaultNodeBudget;
  CLI::App* g = app.add_subcommand("glue", "enumerate glue codes between the halves");
  g->add_option("--d", g_d, "tower level (2..4)")->capture_default_str();
  g->add_flag("--full", g_full, "confirm the 417199-subspace run at level 4");
  g->add_option("--budget", g_budget, "enumeration node budget");
  g->add_option("--out", g_out, "output file");

  std::string s_name, s_in, s_out, s_bound;
  unsigned s_d = 3;
  unsigned long long s_budget = bw::kDefaultNodeBudget;
  CLI::App* s = app.add_subcommand("svp", "certify the minimum or list short vectors");
  auto* s_d_opt = s->add_option("--d", s_d, "use the lattice of this tower level")
                      ->capture_default_str();
  auto* s_name_opt = s->add_option("--canonical", s_name, "use a canonical instance");
  auto* s_in_opt = s->add_option("--in", s_in, "lattice JSON");
  s_d_opt->excludes(s_name_opt)->excludes(s_in_opt);
  s_name_opt->excludes(s_in_opt);
  s->add_option("--bound", s_bound, "list vectors of norm <= bound instead of certifying");
  s->add_option("--budget", s_budget, "enumeration node budget");
  s->add_option("--out", s_out, "output file");

  std::uint64_t r_seed = 0;
  std::size_t r_blocks = 2, r_depth = 0;
  std::string r_out;
  CLI::App* r = app.add_subcommand("gen", "emit a seeded random dihedral action");
  r->add_option("--seed", r_seed, "seed")->required();
  r->add_option("--n", r_blocks, "number of building blocks")->capture_default_str();
  r->add_option("--depth", r_depth, "number of sublattice refinements")->capture_default_str();
  r->add_option("--out", r_out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit clean, everything else is usage
  }

  try {
    if (*c) {
      emit(bw::to_json(bw::construct_bw(c_d)), c_out);
    } else if (*v) {
      bw::BWTower tw = v_in.empty() ? bw::construct_bw(v_d)
                                    : bw::tower_from_json(bw::parse_json(slurp(v_in)));
      emit(bw::to_json(bw::verify_condition_x(tw, v_budget)), v_out);
    } else if (*lm) {
      bw::DihedralAction a =
          !l_in.empty() ? bw::action_from_json(bw::parse_json(slurp(l_in)))
          : l_seed_opt->count() ? bw::random_instance(l_seed, l_blocks, l_depth)
                                : bw::canonical(l_name.empty() ? "BW3" : l_name);
      emit(bw::to_json(bw::verify_lemma_suite(a)), l_out);
    } else if (*g) {
      if (g_d < 2 || g_d > 4) throw bw::Error("glue enumeration supports levels 2..4");
      if (g_d == 4 && !g_full)
        throw bw::Error("level 4 enumerates 417199 subspaces; pass --full to confirm");
      bw::BWTower tw = bw::construct_bw(g_d);
      bw::FrameMap f1{tw.L1.inner.frame(), tw.sub_four.mat};
      bw::FrameMap f2{tw.L2.inner.frame(), tw.sub_four.mat};
      bw::GlueEnumeration e = bw::enumerate_glue(tw.L1, tw.L2, tw.t, f1, f2);
      std::size_t n_int = 0, n_even = 0, n_inv = 0;
      for (const bw::GlueCandidate& cand : e.candidates) {
        n_int += cand.integral;
        n_even += cand.even_flag;
        n_inv += cand.t_invariant;
      }
      std::vector<bw::Lattice> survivors = bw::filter_x(e, g_budget);
      Json sj = Json::array();
      for (const bw::Lattice& m : survivors)
        sj.push_back(Json{{"lattice", bw::to_json(m)},
                          {"recognition", bw::to_json(bw::recognize(m, g_budget))},
                          {"matches_construction", m == tw.L}});
      emit(Json{{"d", g_d},
                {"r", e.r},
                {"candidates", e.candidates.size()},
                {"integral", n_int},
                {"even", n_even},
                {"t_invariant", n_inv},
                {"survivors", std::move(sj)}},
           g_out);
    } else if (*s) {
      bw::Lattice l = !s_in.empty() ? bw::lattice_from_json(bw::parse_json(slurp(s_in)))
                      : !s_name.empty() ? bw::canonical(s_name).lat
                                        : bw::construct_bw(s_d).L;
      Json j;
      try {
        if (s_bound.empty()) {
          bw::MinNormResult m = bw::min_norm(l, s_budget);
          j = Json{{"min", m.min.get_str()},
                   {"witness", coords_json(m.coords)},
                   {"nodes", m.nodes}};
        } else {
          bw::Int bound;
          try {
            bound = bw::Int(s_bound);
          } catch (const std::invalid_argument&) {
            throw bw::ParseError("bad --bound value '" + s_bound + "'");
          }
          bw::BelowBoundResult res = bw::vectors_below(l, bound, s_budget);
          Json vecs = Json::array();
          for (const bw::ShortVec& sv : res.vectors)
            vecs.push_back(Json{{"norm", sv.norm.get_str()}, {"coords", coords_json(sv.coords)}});
          j = Json{{"bound", res.bound.get_str()},
                   {"exhaustive", res.exhaustive},
                   {"count", res.vectors.size()},
                   {"nodes", res.nodes},
                   {"vectors", std::move(vecs)}};
        }
      } catch (const bw::BudgetExceeded& e) {
        j = Json{{"budget_exceeded", true},
                 {"best_bound", e.best_bound.get_str()},
                 {"nodes", e.nodes}};
      }
      emit(j, s_out);
    } else if (*r) {
      emit(bw::to_json(bw::random_instance(r_seed, r_blocks, r_depth)), r_out);
    }
  } catch (const bw::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
