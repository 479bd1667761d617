// Command-line harness: every library operation behind a subcommand, JSON
// or CSV reports, deterministic output, and the acceptance suite.
//
// Exit codes: 0 success, 1 failed check, 2 usage error, 3 capacity error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "acceptance_core.hpp"
#include "stabaut/io.hpp"

namespace {

using stabaut::json;

struct Scenario {
  int alphabet = 2;
  int level = 3;
  int max_level = 6;
  int cutoff = 6;
  std::uint64_t seed = 2024;
  std::uint64_t capacity = stabaut::kDefaultCapacity;
  std::string output = "json";
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

void emit_csv(const json& j, std::ostream& out, const std::string& prefix = "") {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      emit_csv(value, out, prefix.empty() ? key : prefix + "." + key);
    }
  } else if (j.is_array()) {
    bool scalars = true;
    for (const auto& v : j)
      if (!v.is_primitive()) scalars = false;
    if (scalars) {
      out << prefix;
      for (const auto& v : j) out << "," << v.dump();
      out << "\n";
    } else {
      int index = 0;
      for (const auto& v : j) emit_csv(v, out, prefix + "[" + std::to_string(index++) + "]");
    }
  } else {
    out << prefix << "," << j.dump() << "\n";
  }
}

void emit(const Scenario& scenario, const json& j) {
  if (scenario.output == "csv") {
    emit_csv(j, std::cout);
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

// The queries below return 0; predicates return 1 when the check fails.
int finish_check(const Scenario& scenario, json report, bool ok) {
  report["ok"] = ok;
  emit(scenario, report);
  return ok ? 0 : 1;
}

std::vector<stabaut::GroupElement> load_family(const std::string& path, int alphabet, int level_bound) {
  std::vector<stabaut::GroupElement> family;
  if (!path.empty()) {
    json j = load_json(path);
    for (const auto& e : j) family.push_back(stabaut::element_from_json(e));
  } else {
    for (const auto& m : stabaut::galois_family(stabaut::Alphabet(alphabet), level_bound))
      family.push_back(m.as_element());
  }
  return family;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> values;
  std::string token;
  std::istringstream in(csv);
  while (std::getline(in, token, ',')) values.push_back(std::stoi(token));
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stabaut: block codes, spatializations, and subshift checks for full shifts"};
  app.require_subcommand(1);

  Scenario scenario;
  app.add_option("--alphabet", scenario.alphabet, "alphabet size n")->capture_default_str();
  app.add_option("--level", scenario.level, "level / period k")->capture_default_str();
  app.add_option("--max-level", scenario.max_level, "largest level to scan")->capture_default_str();
  app.add_option("--cutoff", scenario.cutoff, "language cutoff")->capture_default_str();
  app.add_option("--seed", scenario.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--capacity", scenario.capacity, "enumeration capacity bound")->capture_default_str();
  app.add_option("--output", scenario.output, "json|csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  int exit_code = 0;
  std::function<int()> action;

  // --- per ------------------------------------------------------------
  auto* per = app.add_subcommand("per", "periodic points");
  auto* per_enumerate = per->add_subcommand("enumerate", "list Per_k in lexicographic order");
  per_enumerate->callback([&] {
    action = [&]() {
      auto points = stabaut::enumerate_periodic(stabaut::Alphabet(scenario.alphabet), scenario.level, scenario.capacity);
      json report;
      report["alphabet"] = scenario.alphabet;
      report["period"] = scenario.level;
      report["count"] = points.size();
      json list = json::array();
      for (const auto& x : points) {
        json entry = stabaut::to_json(x);
        entry["minimal_period"] = x.minimal_period();
        list.push_back(std::move(entry));
      }
      report["points"] = std::move(list);
      emit(scenario, report);
      return 0;
    };
  });

  // --- auto -----------------------------------------------------------
  auto* auto_cmd = app.add_subcommand("auto", "block codes");
  std::string code_a, code_b, point_path, out_path;
  auto* auto_apply = auto_cmd->add_subcommand("apply", "apply a code to a periodic point");
  auto_apply->add_option("--code", code_a, "block code file")->required();
  auto_apply->add_option("--point", point_path, "periodic point file")->required();
  auto_apply->callback([&] {
    action = [&]() {
      stabaut::BlockCode code = stabaut::code_from_json(load_json(code_a));
      stabaut::PeriodicPoint x = stabaut::point_from_json(load_json(point_path));
      int lifted = static_cast<int>(std::lcm(static_cast<long long>(x.period()), static_cast<long long>(code.level())));
      stabaut::PeriodicPoint image = stabaut::apply(code, x.with_period_multiple(lifted / x.period()));
      json report;
      report["image"] = stabaut::to_json(image);
      emit(scenario, report);
      return 0;
    };
  });
  auto* auto_compose = auto_cmd->add_subcommand("compose", "compose two codes (right factor first)");
  auto_compose->add_option("--a", code_a, "outer code file")->required();
  auto_compose->add_option("--b", code_b, "inner code file")->required();
  auto_compose->add_option("--out", out_path, "write the composition here");
  auto_compose->callback([&] {
    action = [&]() {
      stabaut::BlockCode composed = stabaut::compose(stabaut::code_from_json(load_json(code_a)),
                                                     stabaut::code_from_json(load_json(code_b)));
      json j = stabaut::to_json(composed, scenario.capacity);
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << j.dump(2) << "\n";
      }
      emit(scenario, j);
      return 0;
    };
  });
  auto* auto_equals = auto_cmd->add_subcommand("equals", "exact code equality");
  auto_equals->add_option("--a", code_a, "first code file")->required();
  auto_equals->add_option("--b", code_b, "second code file")->required();
  auto_equals->callback([&] {
    action = [&]() {
      bool equal = stabaut::equals(stabaut::code_from_json(load_json(code_a)),
                                   stabaut::code_from_json(load_json(code_b)), scenario.capacity);
      return finish_check(scenario, json{{"equal", equal}}, equal);
    };
  });

  // --- dim ------------------------------------------------------------
  auto* dim = app.add_subcommand("dim", "dimension representation");
  std::string word_path;
  auto* dim_rep = dim->add_subcommand("rep", "dimension vector of a generator word");
  dim_rep->add_option("--word", word_path, "group element file")->required();
  dim_rep->callback([&] {
    action = [&]() {
      stabaut::GroupElement w = stabaut::element_from_json(load_json(word_path));
      auto d = stabaut::dimension_rep(w);
      json report;
      if (d) {
        report["primes"] = d->primes;
        report["exponents"] = d->exponents;
        report["inert"] = d->is_zero();
      } else {
        report["dimension"] = "unknown";
      }
      emit(scenario, report);
      return 0;
    };
  });

  // --- psi ------------------------------------------------------------
  auto* psi_cmd = app.add_subcommand("psi", "group automorphisms");
  std::string psi_path;
  auto add_psi_option = [&](CLI::App* cmd) { cmd->add_option("--psi", psi_path, "automorphism scenario file")->required(); };
  auto* psi_degree = psi_cmd->add_subcommand("degree", "degree and orientation");
  add_psi_option(psi_degree);
  psi_degree->callback([&] {
    action = [&]() {
      auto psi = stabaut::psi_from_json(load_json(psi_path));
      stabaut::DegreeInfo info = stabaut::degree(psi, scenario.max_level, scenario.capacity);
      json report;
      report["degree"] = info.degree;
      report["orientation"] = info.orientation_reversing ? "reversing" : "preserving";
      emit(scenario, report);
      return 0;
    };
  });
  auto* psi_defect = psi_cmd->add_subcommand("defect", "defect scan at one level");
  add_psi_option(psi_defect);
  psi_defect->callback([&] {
    action = [&]() {
      auto psi = stabaut::psi_from_json(load_json(psi_path));
      stabaut::DegreeInfo info = stabaut::degree(psi, scenario.level, scenario.capacity);
      bool defective = stabaut::defect_scan(psi, scenario.level, info.degree, scenario.seed, scenario.capacity);
      return finish_check(scenario, json{{"level", scenario.level}, {"defective", defective}}, !defective);
    };
  });
  auto* psi_iset = psi_cmd->add_subcommand("iset", "admissible levels");
  add_psi_option(psi_iset);
  psi_iset->callback([&] {
    action = [&]() {
      auto psi = stabaut::psi_from_json(load_json(psi_path));
      json report;
      report["levels"] = stabaut::i_psi(psi, scenario.max_level, scenario.capacity);
      emit(scenario, report);
      return 0;
    };
  });

  // --- verraum ----------------------------------------------------------
  auto* verraum = app.add_subcommand("verraum", "the spatialization engine");
  int factor = 2;
  int depth = 4;
  std::string code_path;
  auto* v_local = verraum->add_subcommand("local", "conjugator table on Per_k plus checks");
  add_psi_option(v_local);
  v_local->callback([&] {
    action = [&]() {
      auto psi = stabaut::psi_from_json(load_json(psi_path));
      stabaut::VerraumEngine engine(psi, scenario.capacity, scenario.seed);
      const stabaut::PermutationTable& h = engine.local_verraum(scenario.level);
      json report;
      report["level"] = scenario.level;
      report["degree"] = engine.degree_info().degree;
      report["orientation"] = engine.degree_info().orientation_reversing ? "reversing" : "preserving";
      report["table"] = h.images;
      bool commutation = engine.shift_commutation_check(scenario.level);
      bool consistency = true;
      if (2 * scenario.level <= scenario.max_level && engine.is_admissible(2 * scenario.level))
        consistency = engine.consistency_check(scenario.level, 2);
      report["checks"] = json{{"shift_commutation", commutation}, {"consistency", consistency}};
      return finish_check(scenario, std::move(report), commutation && consistency);
    };
  });
  auto* v_global = verraum->add_subcommand("global", "image of one periodic point");
  add_psi_option(v_global);
  v_global->add_option("--point", point_path, "periodic point file")->required();
  v_global->callback([&] {
    action = [&]() {
      auto psi = stabaut::psi_from_json(load_json(psi_path));
      stabaut::VerraumEngine engine(psi, scenario.capacity, scenario.seed);
      stabaut::PeriodicPoint x = stabaut::point_from_json(load_json(point_path));
      json report;
      report["level"] = engine.admissible_level_for(x);
      report["image"] = stabaut::to_json(engine.global_verraum(x));
      emit(scenario, report);
      return 0;
    };
  });
  auto* v_consistency = verraum->add_subcommand("consistency", "restriction from level factor*k to k");
  add_psi_option(v_consistency);
  v_consistency->add_option("--factor", factor, "level multiplier")->capture_default_str();
  v_consistency->callback([&] {
    action = [&]() {
      auto psi = stabaut::psi_from_json(load_json(psi_path));
      stabaut::VerraumEngine engine(psi, scenario.capacity, scenario.seed);
      bool ok = engine.consistency_check(scenario.level, factor);
      return finish_check(scenario, json{{"level", scenario.level}, {"factor", factor}}, ok);
    };
  });
  auto* v_profinite = verraum->add_subcommand("profinite", "recover the shift schedule");
  add_psi_option(v_profinite);
  v_profinite->callback([&] {
    action = [&]() {
      auto psi = stabaut::psi_from_json(load_json(psi_path));
      stabaut::VerraumEngine engine(psi, scenario.capacity, scenario.seed);
      stabaut::ProfiniteRecovery rec = engine.profinite_recovery(scenario.max_level);
      json report;
      if (rec.ok()) {
        report.update(stabaut::to_json(rec.value));
      } else if (rec.status == stabaut::ProfiniteRecovery::Status::NotOrbitPreserving) {
        report["error"] = "not-orbit-preserving";
        if (rec.witness) report["witness"] = stabaut::to_json(*rec.witness);
      } else {
        report["error"] = "inconsistent-residue";
      }
      return finish_check(scenario, std::move(report), rec.ok());
    };
  });
  auto* v_probe = verraum->add_subcommand("probe", "continuity probe over periodic points");
  add_psi_option(v_probe);
  v_probe->add_option("--depth", depth, "largest minimal period")->capture_default_str();
  v_probe->callback([&] {
    action = [&]() {
      auto psi = stabaut::psi_from_json(load_json(psi_path));
      stabaut::VerraumEngine engine(psi, scenario.capacity, scenario.seed);
      json rows = json::array();
      for (const auto& row : engine.continuity_probe(depth)) {
        rows.push_back(json{{"input_radius", row.input_radius},
                            {"worst_output_radius", row.worst_output_radius},
                            {"pairs", row.pairs}});
      }
      json report;
      report["rows"] = std::move(rows);
      emit(scenario, report);
      return 0;
    };
  });
  auto* v_freeness = verraum->add_subcommand("freeness", "cycle types before and after");
  add_psi_option(v_freeness);
  v_freeness->add_option("--word", word_path, "group element file")->required();
  v_freeness->callback([&] {
    action = [&]() {
      auto psi = stabaut::psi_from_json(load_json(psi_path));
      stabaut::GroupElement w = stabaut::element_from_json(load_json(word_path));
      auto before = stabaut::orbit_structure(w, scenario.level, scenario.capacity);
      auto after = stabaut::orbit_structure(stabaut::apply_psi(psi, w), scenario.level, scenario.capacity);
      json report;
      report["cycle_type"] = before;
      report["image_cycle_type"] = after;
      return finish_check(scenario, std::move(report), before == after);
    };
  });

  // --- subshift ---------------------------------------------------------
  auto* sub = app.add_subcommand("subshift", "subshift operations");
  std::string in_path, second_path, family_path;
  int length = 3;
  auto* s_language = sub->add_subcommand("language", "words of one length");
  s_language->add_option("--in", in_path, "subshift file")->required();
  s_language->add_option("--length", length, "word length")->capture_default_str();
  s_language->callback([&] {
    action = [&]() {
      stabaut::Subshift y = stabaut::subshift_from_json(load_json(in_path));
      json list = json::array();
      for (const auto& w : y.language(length, scenario.capacity))
        list.push_back(stabaut::block_to_json(w, y.alphabet().size));
      json report;
      report["length"] = length;
      report["words"] = std::move(list);
      emit(scenario, report);
      return 0;
    };
  });
  auto* s_distance = sub->add_subcommand("distance", "language metric");
  s_distance->add_option("--a", in_path, "first subshift")->required();
  s_distance->add_option("--b", second_path, "second subshift")->required();
  s_distance->callback([&] {
    action = [&]() {
      stabaut::Subshift a = stabaut::subshift_from_json(load_json(in_path));
      stabaut::Subshift b = stabaut::subshift_from_json(load_json(second_path));
      auto k = stabaut::first_language_difference(a, b, scenario.cutoff, scenario.capacity);
      json report;
      if (k) {
        report["first_difference"] = *k;
        report["distance"] = stabaut::to_json(stabaut::Dyadic::power(-*k));
      } else {
        report["distance"] = "<= 2^-" + std::to_string(scenario.cutoff);
      }
      emit(scenario, report);
      return 0;
    };
  });
  auto* s_markov = sub->add_subcommand("markov", "Markov approximation");
  s_markov->add_option("--in", in_path, "subshift file")->required();
  s_markov->add_option("--length", length, "approximation order")->capture_default_str();
  s_markov->callback([&] {
    action = [&]() {
      stabaut::Subshift y = stabaut::subshift_from_json(load_json(in_path));
      emit(scenario, stabaut::to_json(stabaut::markov_approximation(y, length, scenario.capacity)));
      return 0;
    };
  });
  auto* s_cr = sub->add_subcommand("chain-recurrent", "nonwandering test");
  s_cr->add_option("--in", in_path, "subshift file")->required();
  s_cr->callback([&] {
    action = [&]() {
      stabaut::Subshift y = stabaut::subshift_from_json(load_json(in_path));
      bool cr = stabaut::is_chain_recurrent(y, scenario.capacity);
      return finish_check(scenario, json{{"chain_recurrent", cr}}, cr);
    };
  });
  auto* s_approx = sub->add_subcommand("approx", "finite approximations");
  s_approx->add_option("--in", in_path, "subshift file")->required();
  s_approx->add_option("--length", length, "periodization length")->capture_default_str();
  s_approx->callback([&] {
    action = [&]() {
      stabaut::Subshift y = stabaut::subshift_from_json(load_json(in_path));
      emit(scenario, stabaut::to_json(stabaut::finite_approximations(y, length, scenario.capacity)));
      return 0;
    };
  });
  auto* s_stp = sub->add_subcommand("stp", "pointwise stabilizer within a family");
  s_stp->add_option("--in", in_path, "subshift file")->required();
  s_stp->add_option("--family", family_path, "family file (defaults to the word-transposition family)");
  s_stp->callback([&] {
    action = [&]() {
      stabaut::Subshift y = stabaut::subshift_from_json(load_json(in_path));
      auto family = load_family(family_path, y.alphabet().size, scenario.level);
      stabaut::StabilizerFamily st = stabaut::stp(y, family, scenario.capacity);
      json members = json::array();
      for (std::size_t i = 0; i < st.family.size(); ++i) {
        if (st.member[i]) members.push_back(stabaut::to_json(st.family[i]));
      }
      json report;
      report["family_size"] = st.family.size();
      report["members"] = std::move(members);
      emit(scenario, report);
      return 0;
    };
  });
  auto* s_fix = sub->add_subcommand("fix", "common fixed subshift of a family");
  s_fix->add_option("--family", family_path, "family file of group elements")->required();
  s_fix->callback([&] {
    action = [&]() {
      json j = load_json(family_path);
      std::vector<stabaut::GroupElement> generators;
      for (const auto& e : j) generators.push_back(stabaut::element_from_json(e));
      if (generators.empty()) throw std::invalid_argument("family file is empty");
      emit(scenario, stabaut::to_json(stabaut::fix(generators.front().alphabet(), generators, scenario.capacity)));
      return 0;
    };
  });
  auto* s_galois = sub->add_subcommand("galois", "Fix(Stp(Y)) = Y at the cutoff");
  s_galois->add_option("--in", in_path, "subshift file")->required();
  s_galois->callback([&] {
    action = [&]() {
      stabaut::Subshift y = stabaut::subshift_from_json(load_json(in_path));
      stabaut::Alphabet a = y.alphabet();
      std::vector<stabaut::ForbiddenWord> forbidden;
      for (int level = 1; level <= scenario.cutoff + 1; ++level) {
        std::uint64_t prefixes = stabaut::checked_pow(static_cast<std::uint64_t>(a.size),
                                                      static_cast<std::uint64_t>(level - 1), scenario.capacity);
        for (std::uint64_t v = 0; v < prefixes; ++v) {
          for (int s1 = 0; s1 < a.size; ++s1) {
            for (int s2 = s1 + 1; s2 < a.size; ++s2) {
              stabaut::SimpleAuto tau = stabaut::SimpleAuto::transposition(a, level, v * a.size + s1, v * a.size + s2);
              if (stabaut::stp_contains_phased(y, stabaut::PhasedWordPermutation{tau, 0}, scenario.capacity)) {
                forbidden.push_back(stabaut::ForbiddenWord{stabaut::index_to_word(v * a.size + s1, a.size, level), 0, 1});
                forbidden.push_back(stabaut::ForbiddenWord{stabaut::index_to_word(v * a.size + s2, a.size, level), 0, 1});
              }
            }
          }
        }
      }
      stabaut::Subshift fixed = stabaut::Subshift::sft(a, 1, std::move(forbidden));
      bool ok = stabaut::languages_agree(fixed, y, scenario.cutoff, scenario.capacity);
      return finish_check(scenario, json{{"cutoff", scenario.cutoff}}, ok);
    };
  });
  auto* s_push = sub->add_subcommand("push", "image under a spatialization");
  s_push->add_option("--in", in_path, "subshift file")->required();
  add_psi_option(s_push);
  s_push->callback([&] {
    action = [&]() {
      stabaut::Subshift y = stabaut::subshift_from_json(load_json(in_path));
      auto psi = stabaut::psi_from_json(load_json(psi_path));
      stabaut::VerraumEngine engine(psi, scenario.capacity, scenario.seed);
      stabaut::VerraumSubshiftResult r = stabaut::verraum_subshift(engine, y, scenario.cutoff, scenario.capacity);
      json report;
      report["image"] = stabaut::to_json(r.image);
      report["used_approximations"] = r.used_approximations;
      if (r.used_approximations) {
        report["stable_order"] = r.stable_order;
        json idx = json::object();
        for (const auto& [j2, m] : r.stabilization_index) idx[std::to_string(j2)] = m;
        report["stabilization_index"] = std::move(idx);
      }
      emit(scenario, report);
      return 0;
    };
  });

  // --- gadget -----------------------------------------------------------
  auto* gadget = app.add_subcommand("gadget", "two-track machinery");
  std::string w_flag, w2_flag, pi_flag, pi2_flag;
  auto* g_g = gadget->add_subcommand("g", "emit a trigger gadget");
  g_g->add_option("--w", w_flag, "trigger word over the base alphabet")->required();
  g_g->add_option("--pi", pi_flag, "bottom permutation, comma separated")->required();
  g_g->callback([&] {
    action = [&]() {
      json j{{"kind", "g"}, {"alphabet", scenario.alphabet}, {"w", w_flag}, {"pi", parse_int_list(pi_flag)}};
      (void)stabaut::code_from_json(j);  // validates
      emit(scenario, j);
      return 0;
    };
  });
  auto* g_gamma = gadget->add_subcommand("gamma", "emit the top-track shift");
  g_gamma->callback([&] {
    action = [&]() {
      json j{{"kind", "gamma"}, {"alphabet", scenario.alphabet}};
      emit(scenario, j);
      return 0;
    };
  });
  auto* g_comm = gadget->add_subcommand("commutator", "check the gadget commutator identity");
  g_comm->add_option("--w1", w_flag)->required();
  g_comm->add_option("--w2", w2_flag)->required();
  g_comm->add_option("--pi1", pi_flag)->required();
  g_comm->add_option("--pi2", pi2_flag)->required();
  g_comm->callback([&] {
    action = [&]() {
      stabaut::Alphabet a(scenario.alphabet);
      stabaut::Word w1(a, stabaut::block_from_json(json(w_flag), a.size));
      stabaut::Word w2(a, stabaut::block_from_json(json(w2_flag), a.size));
      bool ok = stabaut::commutator_identity_check(w1, w2, parse_int_list(pi_flag), parse_int_list(pi2_flag));
      return finish_check(scenario, json{{"identity", "[g_{w1,p1}, gamma^{-|w1|} g_{w2,p2} gamma^{|w1|}] = g_{w1w2,[p1,p2]}"}}, ok);
    };
  });
  auto* g_max = gadget->add_subcommand("maximize", "push the period into the top track");
  g_max->add_option("--point", point_path, "pair point file over n^2")->required();
  g_max->callback([&] {
    action = [&]() {
      stabaut::PeriodicPoint pair = stabaut::point_from_json(load_json(point_path));
      stabaut::TwoTrackPoint x = stabaut::TwoTrackPoint::from_pair(pair, scenario.alphabet);
      stabaut::MaximizeResult r = stabaut::maximize_top_period(x);
      json report;
      report["iterations"] = r.iterations;
      report["word_length"] = r.word.size();
      report["point"] = stabaut::to_json(r.point.pair_point());
      report["top_minimal_period"] = r.point.top.minimal_period();
      emit(scenario, report);
      return 0;
    };
  });
  auto* g_sep = gadget->add_subcommand("separate", "orbit-centralizer separation");
  g_sep->callback([&] {
    action = [&]() {
      bool ok = stabaut::orbit_separation_check(scenario.alphabet, scenario.level, scenario.capacity);
      return finish_check(scenario, json{{"alphabet", scenario.alphabet}, {"period", scenario.level}}, ok);
    };
  });
  auto* g_rigid = gadget->add_subcommand("rigidity", "fixing the gadgets forces a shift schedule");
  add_psi_option(g_rigid);
  g_rigid->callback([&] {
    action = [&]() {
      auto psi = stabaut::psi_from_json(load_json(psi_path));
      stabaut::G2RigidityResult r = stabaut::g2_rigidity_check(psi, scenario.max_level, scenario.capacity);
      json report;
      report["fixes_sample"] = r.fixes_sample;
      report["vacuous"] = r.vacuous;
      if (r.fixes_sample) report["recovery_ok"] = r.recovery_ok;
      return finish_check(scenario, std::move(report), r.implication_holds);
    };
  });

  // --- suite ------------------------------------------------------------
  auto* suite = app.add_subcommand("suite", "verification suites");
  auto* suite_acceptance = suite->add_subcommand("acceptance", "run every acceptance criterion");
  suite_acceptance->callback([&] {
    action = [&]() {
      auto results = stabaut::acceptance::run_all(scenario.seed);
      json rows = json::array();
      for (const auto& r : results) {
        std::printf("criterion %2d [%s] %s (%.2fs)%s%s\n", r.number, r.passed ? "pass" : "FAIL", r.name.c_str(),
                    r.seconds, r.detail.empty() ? "" : " -- ", r.detail.c_str());
        rows.push_back(json{{"number", r.number}, {"name", r.name}, {"passed", r.passed}, {"seconds", r.seconds}});
      }
      bool ok = stabaut::acceptance::all_passed(results);
      if (scenario.output == "csv") emit_csv(rows, std::cout);
      return ok ? 0 : 1;
    };
  });

  // Global flags may appear after the subcommand name.
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* cmd) {
    cmd->fallthrough();
    for (auto* sub_cmd : cmd->get_subcommands({})) enable_fallthrough(sub_cmd);
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (action) exit_code = action();
  } catch (const stabaut::capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const stabaut::verraum_error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
