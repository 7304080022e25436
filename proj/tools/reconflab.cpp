// reconflab: a desk-scale lab bench for reconfiguration problems --
// exact maxmin solvers, succinct-graph reachability, locally testable
// codes, PCPP/PCRP verification and clique-gap amplification.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "reconf/amplify.hpp"
#include "reconf/circuit.hpp"
#include "reconf/clique.hpp"
#include "reconf/codes.hpp"
#include "reconf/csp.hpp"
#include "reconf/errors.hpp"
#include "reconf/pcrp.hpp"
#include "reconf/solve.hpp"
#include "reconf/tm.hpp"

using nlohmann::json;
using namespace reconf;

namespace {

constexpr const char* kVersion = "reconflab 1.0.0";

struct GlobalOpts {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string format = "text";
  std::string output;
  std::uint64_t max_states = std::uint64_t{1} << 24;
  std::uint64_t max_cliques = std::uint64_t{1} << 22;
};

void emit(const GlobalOpts& opts, const json& payload,
          const std::string& text) {
  std::string body = opts.format == "json" ? payload.dump(2) + "\n" : text;
  if (opts.output.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(opts.output);
    if (!out) throw invalid_instance_error("cannot write " + opts.output);
    out << body;
  }
}

// One "--schema" per subcommand printing a JSON Schema for its output.
void add_schema_flag(CLI::App* cmd, const char* schema) {
  cmd->add_flag_callback(
      "--schema",
      [schema]() {
        std::cout << schema << std::endl;
        std::exit(0);
      },
      "print the JSON schema of this subcommand's output and exit");
}

PcppKind parse_pcpp_kind(const std::string& text, std::size_t& k) {
  if (text == "reference") return PcppKind::kReference;
  if (text.rfind("sampled", 0) == 0) {
    k = 2;
    auto colon = text.find(':');
    if (colon != std::string::npos) k = std::stoul(text.substr(colon + 1));
    return PcppKind::kSampled;
  }
  throw invalid_instance_error("--pcpp must be reference or sampled[:k]");
}

ExpanderCert parse_expander(const std::string& text, std::size_t n) {
  if (text == "complete") return complete_expander(n);
  if (text.rfind("random:", 0) == 0) {
    std::stringstream ss(text.substr(7));
    std::string d_str, seed_str;
    std::getline(ss, d_str, ':');
    std::getline(ss, seed_str, ':');
    std::size_t d = std::stoul(d_str);
    std::uint64_t seed = seed_str.empty() ? 0 : std::stoull(seed_str);
    return random_regular(n, d, seed);
  }
  throw invalid_instance_error("--expander must be complete or random:d:seed");
}

json params_json(const PcrpParams& p) {
  return json{{"rho", rat_str(p.rho)},
              {"kappa", rat_str(p.kappa)},
              {"kappa_exact", p.kappa_exact},
              {"q", p.q},
              {"s_ckt", rat_str(p.s_ckt)},
              {"delta_ckt", rat_str(p.delta_ckt)},
              {"eps", rat_str(p.eps)},
              {"bound", rat_str(p.bound)},
              {"auditable", p.auditable}};
}

std::vector<Word> load_sequence(const std::string& path,
                                const PcrpInstance& inst) {
  auto [regions, seq] = sequence_from_json_file(path);
  if (regions.ell != inst.regions.ell || regions.p != inst.regions.p)
    throw invalid_instance_error("sequence regions disagree with the circuit");
  return seq;
}

int run(int argc, char** argv) {
  CLI::App app{"lab bench for reconfiguration problems and PCRP verification"};
  app.set_version_flag("--version", std::string(kVersion) + " (" +
                                        __DATE__ + ", " + __VERSION__ + ")");
  app.require_subcommand(1);

  GlobalOpts opts;
  app.add_option("--seed", opts.seed, "seed for all randomized components");
  app.add_option("--threads", opts.threads, "worker threads for enumerations");
  app.add_option("--format", opts.format, "output format: text|json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--output", opts.output, "write output to a file");
  app.add_option("--max-states", opts.max_states, "state-space cap");
  app.add_option("--max-cliques", opts.max_cliques, "clique-count cap");

  // ---- solve-csp ----------------------------------------------------------
  auto* solve_csp = app.add_subcommand(
      "solve-csp", "exact maxmin value of a CSP reconfiguration instance");
  std::string csp_path, dimacs_path, start_str, goal_str, threshold_str;
  bool want_witness = false, cross_check = false;
  solve_csp->add_option("--instance", csp_path, "CSP instance JSON");
  solve_csp->add_option("--dimacs", dimacs_path,
                        "DIMACS CNF with optional c start/goal lines");
  solve_csp->add_option("--start", start_str, "start assignment (digits)");
  solve_csp->add_option("--goal", goal_str, "goal assignment (digits)");
  solve_csp->add_option("--threshold", threshold_str,
                        "also search a witness at this value (a/b)");
  solve_csp->add_flag("--witness", want_witness,
                      "emit a witness sequence at the maxmin value");
  solve_csp->add_flag("--cross-check", cross_check,
                      "verify against the bottleneck-Dijkstra oracle");
  add_schema_flag(
      solve_csp,
      R"({"type":"object","properties":{"value":{"type":"string"},"witness":{"type":["array","null"],"items":{"type":"string"}}},"required":["value"]})");
  solve_csp->callback([&]() {
    ConstraintSystem psi;
    std::optional<Bits> start, goal;
    if (!csp_path.empty()) {
      psi = csp_from_json_file(csp_path);
    } else if (!dimacs_path.empty()) {
      DimacsInstance inst = parse_dimacs_file(dimacs_path);
      psi = cnf_to_csp(inst.cnf);
      start = inst.start;
      goal = inst.goal;
    } else {
      throw invalid_instance_error("need --instance or --dimacs");
    }
    if (!start_str.empty()) start = parse_word_digits(start_str, psi.alphabet);
    if (!goal_str.empty()) goal = parse_word_digits(goal_str, psi.alphabet);
    if (!start || !goal)
      throw invalid_instance_error("start and goal assignments required");
    SolveCaps caps{opts.max_states};
    Rat value = maxmin_value(psi, *start, *goal, caps);
    if (cross_check &&
        maxmin_value_bottleneck(psi, *start, *goal, caps) != value)
      throw audit_failure("threshold and bottleneck routes disagree");
    json j{{"value", rat_str(value)}, {"witness", nullptr}};
    std::string text = rat_str(value) + "\n";
    Rat witness_at = value;
    if (!threshold_str.empty()) witness_at = rat_parse(threshold_str);
    if (want_witness || !threshold_str.empty()) {
      auto wit = witness_sequence(psi, *start, *goal, witness_at, caps);
      if (wit) {
        j["witness"] = json::array();
        for (const Word& w : *wit) {
          j["witness"].push_back(word_digits(w));
          text += word_digits(w) + "\n";
        }
      } else {
        text += "(no witness at " + rat_str(witness_at) + ")\n";
      }
    }
    emit(opts, j, text);
  });

  // ---- solve-clique -------------------------------------------------------
  auto* solve_clique = app.add_subcommand(
      "solve-clique", "exact maxmin value of clique reconfiguration");
  std::string graph_path, cstart_str, cgoal_str;
  bool clique_want_witness = false;
  solve_clique->add_option("--graph", graph_path, "graph JSON")->required();
  solve_clique->add_option("--start", cstart_str, "start clique, e.g. 0,1")
      ->required();
  solve_clique->add_option("--goal", cgoal_str, "goal clique")->required();
  solve_clique->add_flag("--witness", clique_want_witness,
                         "emit a witness sequence at the maxmin value");
  add_schema_flag(
      solve_clique,
      R"({"type":"object","properties":{"value":{"type":"integer"},"witness":{"type":["array","null"],"items":{"type":"string"}}},"required":["value"]})");
  solve_clique->callback([&]() {
    Graph g = graph_from_json_file(graph_path);
    CliqueInstance inst{g, parse_vertex_set(cstart_str, g.n),
                        parse_vertex_set(cgoal_str, g.n)};
    CliqueCaps caps{opts.max_cliques};
    std::size_t value = clique_maxmin(inst, caps);
    json j{{"value", value}, {"witness", nullptr}};
    std::string text = std::to_string(value) + "\n";
    if (clique_want_witness) {
      auto wit = clique_witness(inst, value, caps);
      if (wit) {
        j["witness"] = json::array();
        for (std::uint64_t mask : *wit) {
          j["witness"].push_back(vertex_set_str(mask));
          text += vertex_set_str(mask) + "\n";
        }
      }
    }
    emit(opts, j, text);
  });

  // ---- succinct -----------------------------------------------------------
  auto* succinct = app.add_subcommand("succinct", "succinct graph reachability");
  succinct->require_subcommand(1);
  auto* decide = succinct->add_subcommand("decide", "iterate S from 0^n");
  std::string circuit_path;
  decide->add_option("--circuit", circuit_path, "circuit JSON")->required();
  add_schema_flag(
      decide,
      R"({"type":"object","properties":{"reachable":{"type":"boolean"},"steps":{"type":"integer"}},"required":["reachable"]})");
  decide->callback([&]() {
    BoolCircuit s = circuit_from_json_file(circuit_path);
    ReachabilityResult r = decide_reachability(s, opts.max_states);
    json j{{"reachable", r.reachable}, {"steps", r.steps}};
    std::string text = r.reachable
                           ? "YES m=" + std::to_string(r.steps) + "\n"
                           : "NO\n";
    emit(opts, j, text);
  });

  auto* from_tm = succinct->add_subcommand(
      "from-tm", "compile a bounded-space machine into a circuit");
  std::string tm_path, tm_input;
  std::size_t tm_space = 0;
  from_tm->add_option("--tm", tm_path, "machine JSON")->required();
  from_tm->add_option("--input", tm_input, "input bits")->required();
  from_tm->add_option("--space", tm_space, "tape cells")->required();
  add_schema_flag(
      from_tm,
      R"({"type":"object","properties":{"n":{"type":"integer"},"gates":{"type":"array"},"outputs":{"type":"array"}},"required":["n","gates","outputs"]})");
  from_tm->callback([&]() {
    TmSpec m = tm_from_json_file(tm_path);
    BoolCircuit s = tm_to_circuit(m, parse_bits(tm_input), tm_space);
    std::string text = circuit_to_json(s) + "\n";
    emit(opts, json::parse(circuit_to_json(s)), text);
  });

  // ---- codes --------------------------------------------------------------
  auto* codes = app.add_subcommand("codes", "Hadamard code and its tester");
  codes->require_subcommand(1);
  auto* encode = codes->add_subcommand("encode", "encode a message");
  std::size_t code_n = 0;
  std::string msg_str;
  encode->add_option("--n", code_n, "message bits")->required();
  encode->add_option("--msg", msg_str, "message bitstring")->required();
  add_schema_flag(
      encode,
      R"({"type":"object","properties":{"codeword":{"type":"string"}},"required":["codeword"]})");
  encode->callback([&]() {
    Bits msg = parse_bits(msg_str);
    if (msg.size() != code_n)
      throw invalid_instance_error("message length disagrees with --n");
    Word cw = hadamard_encode(msg);
    emit(opts, json{{"codeword", ternary_str(cw)}}, ternary_str(cw) + "\n");
  });

  auto* kappa = codes->add_subcommand("kappa", "measure the tester ratio");
  bool bot_free = false;
  std::uint64_t kappa_samples = 0;
  kappa->add_option("--n", code_n, "message bits")->required();
  kappa->add_flag("--bot-free", bot_free, "enumerate binary words only");
  kappa->add_option("--samples", kappa_samples,
                    "sample instead of enumerating");
  add_schema_flag(
      kappa,
      R"({"type":"object","properties":{"kappa":{"type":"string"},"exact":{"type":"boolean"}},"required":["kappa"]})");
  kappa->callback([&]() {
    CodeSpec spec = hadamard_spec(code_n);
    Rat k = kappa_samples > 0
                ? measure_kappa_sampled(spec, kappa_samples, opts.seed)
                : measure_kappa(spec, bot_free, std::uint64_t{1} << 22,
                                opts.threads);
    emit(opts, json{{"kappa", rat_str(k)}, {"exact", kappa_samples == 0}},
         rat_str(k) + "\n");
  });

  // ---- pcpp ---------------------------------------------------------------
  auto* pcpp_cmd = app.add_subcommand("pcpp", "PCPP instantiations");
  pcpp_cmd->require_subcommand(1);
  auto* smooth = pcpp_cmd->add_subcommand(
      "smoothness", "max deviation of per-position query probabilities");
  std::string pcpp_choice = "reference";
  smooth->add_option("--circuit", circuit_path, "circuit JSON")->required();
  smooth->add_option("--pcpp", pcpp_choice, "reference | sampled[:k]");
  add_schema_flag(
      smooth,
      R"({"type":"object","properties":{"deviation":{"type":"string"},"q":{"type":"integer"}},"required":["deviation"]})");
  smooth->callback([&]() {
    BoolCircuit s = circuit_from_json_file(circuit_path);
    std::size_t k = 0;
    PcppKind kind = parse_pcpp_kind(pcpp_choice, k);
    CodeSpec spec = hadamard_spec(s.n);
    PcppVerifier v = kind == PcppKind::kReference ? reference_pcpp(s, spec)
                                                  : sampled_pcpp(s, spec, k);
    Rat dev = smoothness_deviation(v.spec);
    emit(opts, json{{"deviation", rat_str(dev)}, {"q", v.params.q}},
         rat_str(dev) + "\n");
  });

  // ---- pcrp ---------------------------------------------------------------
  auto* pcrp = app.add_subcommand("pcrp", "the composed verifier V(S)");
  pcrp->require_subcommand(1);
  std::string proof_path, seq_path, family = "interpolation", out_path;
  std::size_t walk_steps = 48;
  std::uint64_t table_cap = std::uint64_t{1} << 23;
  bool enumerate_seeds = false;

  auto add_pcrp_common = [&](CLI::App* cmd) {
    cmd->add_option("--circuit", circuit_path, "circuit JSON")->required();
    cmd->add_option("--pcpp", pcpp_choice, "reference | sampled[:k]");
  };
  auto make_instance = [&]() {
    BoolCircuit s = circuit_from_json_file(circuit_path);
    std::size_t k = 0;
    PcppKind kind = parse_pcpp_kind(pcpp_choice, k);
    return make_pcrp_instance(s, kind, k, opts.threads);
  };

  auto* build = pcrp->add_subcommand("build", "canonical proofs + parameters");
  add_pcrp_common(build);
  add_schema_flag(
      build,
      R"({"type":"object","properties":{"ell":{"type":"integer"},"p":{"type":"integer"},"sigma_start":{"type":"string"},"sigma_goal":{"type":"string"},"params":{"type":"object"}},"required":["ell","p","sigma_start","sigma_goal","params"]})");
  build->callback([&]() {
    PcrpInstance inst = make_instance();
    json j{{"ell", inst.regions.ell},
           {"p", inst.regions.p},
           {"sigma_start", ternary_str(canonical_start(inst))},
           {"sigma_goal", ternary_str(canonical_goal(inst))},
           {"params", params_json(inst.params)}};
    emit(opts, j, j.dump(2) + "\n");
  });

  auto* accept = pcrp->add_subcommand("accept-prob",
                                      "exact acceptance probability");
  add_pcrp_common(accept);
  accept->add_option("--proof", proof_path, "proof JSON")->required();
  accept->add_flag("--enumerate", enumerate_seeds,
                   "cross-check by full seed enumeration");
  add_schema_flag(
      accept,
      R"({"type":"object","properties":{"probability":{"type":"string"}},"required":["probability"]})");
  accept->callback([&]() {
    PcrpInstance inst = make_instance();
    auto [regions, w] = proof_from_json_file(proof_path);
    if (regions.ell != inst.regions.ell || regions.p != inst.regions.p)
      throw invalid_instance_error("proof regions disagree with the circuit");
    Rat prob = acceptance_probability(inst, w);
    if (enumerate_seeds &&
        acceptance_probability_enumerated(inst, w, opts.threads) != prob)
      throw audit_failure("factorized and enumerated probabilities disagree");
    emit(opts, json{{"probability", rat_str(prob)}}, rat_str(prob) + "\n");
  });

  auto* complete = pcrp->add_subcommand(
      "complete-seq", "accepting sequence for a YES instance");
  add_pcrp_common(complete);
  complete->add_option("--out", out_path, "sequence output file");
  add_schema_flag(
      complete,
      R"({"type":"object","properties":{"length":{"type":"integer"},"steps":{"type":"array"}},"required":["length"]})");
  complete->callback([&]() {
    PcrpInstance inst = make_instance();
    auto path = reachability_path(inst.s, opts.max_states);
    if (!path)
      throw invalid_instance_error("circuit is a NO instance; no sequence");
    std::vector<Word> seq = completeness_sequence(inst, *path);
    std::string payload = sequence_to_json(inst.regions, seq);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      out << payload;
      emit(opts, json{{"length", seq.size()}},
           "wrote " + std::to_string(seq.size()) + " steps to " + out_path +
               "\n");
    } else {
      emit(opts, json::parse(payload), payload + "\n");
    }
  });

  auto* gen = pcrp->add_subcommand("gen-seq", "adversarial sequence families");
  add_pcrp_common(gen);
  gen->add_option("--family", family,
                  "interpolation | interleaved | walk | blanks");
  gen->add_option("--walk-steps", walk_steps, "random-walk length");
  gen->add_option("--out", out_path, "sequence output file");
  add_schema_flag(
      gen,
      R"({"type":"object","properties":{"length":{"type":"integer"},"steps":{"type":"array"}},"required":["length"]})");
  gen->callback([&]() {
    PcrpInstance inst = make_instance();
    std::vector<Word> seq;
    if (family == "interpolation") {
      seq = interpolation_sequence(inst);
    } else if (family == "interleaved") {
      seq = interleaved_interpolation_sequence(inst);
    } else if (family == "walk") {
      seq = random_walk_sequence(inst, walk_steps, opts.seed);
    } else if (family == "blanks") {
      seq = blank_heavy_sequence(inst);
    } else {
      throw invalid_instance_error("unknown sequence family " + family);
    }
    std::string payload = sequence_to_json(inst.regions, seq);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      out << payload;
      emit(opts, json{{"length", seq.size()}},
           "wrote " + std::to_string(seq.size()) + " steps to " + out_path +
               "\n");
    } else {
      emit(opts, json::parse(payload), payload + "\n");
    }
  });

  auto* audit = pcrp->add_subcommand("audit", "soundness audit of a sequence");
  add_pcrp_common(audit);
  audit->add_option("--sequence", seq_path, "sequence JSON")->required();
  add_schema_flag(
      audit,
      R"({"type":"object","properties":{"instance":{"type":"string"},"index":{"type":"integer"},"rejection":{"type":"string"},"bound":{"type":"string"},"case":{"type":"string"},"min_acceptance":{"type":"string"}},"required":["instance"]})");
  audit->callback([&]() {
    PcrpInstance inst = make_instance();
    std::vector<Word> seq = load_sequence(seq_path, inst);
    if (decide_reachability(inst.s).reachable) {
      // YES instance: report the worst acceptance probability instead.
      Rat worst = 1;
      for (const Word& w : seq)
        worst = std::min(worst, acceptance_probability(inst, w));
      json j{{"instance", "YES"}, {"min_acceptance", rat_str(worst)}};
      emit(opts, j,
           "YES instance: no rejection below bound (min acceptance " +
               rat_str(worst) + ")\n");
      return;
    }
    AuditResult res = soundness_audit(inst, seq);
    json j{{"instance", "NO"},
           {"index", res.index},
           {"rejection", rat_str(res.rejection)},
           {"bound", rat_str(res.bound)},
           {"case", res.both_far ? "both-far" : "violating-pair"}};
    emit(opts, j,
         "step " + std::to_string(res.index) + " rejected with probability " +
             rat_str(res.rejection) + " > bound " + rat_str(res.bound) + "\n");
  });

  auto* tocsp = pcrp->add_subcommand("to-csp", "compile V(S) into a CSP");
  add_pcrp_common(tocsp);
  tocsp->add_option("--out", out_path, "CSP output file");
  tocsp->add_option("--table-cap", table_cap, "per-constraint table cap");
  add_schema_flag(
      tocsp,
      R"({"type":"object","properties":{"csp":{"type":"object"},"start":{"type":"string"},"goal":{"type":"string"}},"required":["csp","start","goal"]})");
  tocsp->callback([&]() {
    PcrpInstance inst = make_instance();
    PcrpCsp bridge = pcrp_to_csp(pcrp_as_verifier(inst), canonical_start(inst),
                                 canonical_goal(inst), table_cap);
    json j{{"csp", json::parse(csp_to_json(bridge.psi))},
           {"start", ternary_str(bridge.start)},
           {"goal", ternary_str(bridge.goal)}};
    std::string payload = j.dump(2);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      out << payload;
      emit(opts, json{{"constraints", bridge.psi.constraints.size()}},
           "wrote CSP with " + std::to_string(bridge.psi.constraints.size()) +
               " constraints to " + out_path + "\n");
    } else {
      emit(opts, j, payload + "\n");
    }
  });

  // ---- amplify ------------------------------------------------------------
  auto* amplify = app.add_subcommand("amplify", "derandomized graph product");
  amplify->require_subcommand(1);
  std::string expander_spec = "complete", eps_str = "1/2";
  std::size_t ell = 2;

  auto* abuild = amplify->add_subcommand("build", "product + lemma checks");
  abuild->add_option("--graph", graph_path, "base graph JSON")->required();
  abuild->add_option("--expander", expander_spec, "complete | random:d:seed");
  abuild->add_option("--ell", ell, "walk vertex count");
  abuild->add_option("--eps", eps_str, "gap parameter");
  abuild->add_option("--start", cstart_str, "start clique");
  abuild->add_option("--goal", cgoal_str, "goal clique");
  add_schema_flag(
      abuild,
      R"({"type":"object","properties":{"N":{"type":"integer"},"lambda":{"type":"string"},"nu":{"type":"string"},"factor":{"type":"string"},"delta":{"type":"number"},"side_condition_ok":{"type":"boolean"},"lemma_checks":{"type":"object"}},"required":["N","lambda","nu","factor","delta"]})");
  abuild->callback([&]() {
    Graph g = graph_from_json_file(graph_path);
    ExpanderCert cert = parse_expander(expander_spec, g.n);
    Rat eps = rat_parse(eps_str);
    AmplificationReport rep = amplification_report(eps, cert, ell, g.n);
    json checks = json::object();
    if (!cstart_str.empty() && !cgoal_str.empty()) {
      std::uint64_t cs = parse_vertex_set(cstart_str, g.n);
      std::uint64_t cg = parse_vertex_set(cgoal_str, g.n);
      CliqueCaps caps{opts.max_cliques};
      try {
        auto comp = check_product_completeness(g, cert, ell, cs, cg, caps);
        checks["completeness"] = {{"bound", rat_str(comp.bound)},
                                  {"vacuous", comp.vacuous},
                                  {"sequence_value", comp.sequence_value},
                                  {"maxmin_h", comp.maxmin_h},
                                  {"holds", comp.holds}};
      } catch (const invalid_instance_error& e) {
        checks["completeness"] = {{"not_applicable", e.what()}};
      }
      auto sound = check_product_soundness(g, cert, ell, cs, cg, eps, caps);
      checks["soundness"] = {{"threshold", rat_str(sound.threshold)},
                             {"maxmin_h", sound.maxmin_h},
                             {"maxmin_g", sound.maxmin_g},
                             {"conclusion", rat_str(sound.conclusion)},
                             {"premise", sound.premise},
                             {"holds", sound.holds}};
      if (!sound.holds)
        throw audit_failure("product soundness contrapositive failed");
    }
    json j{{"N", rep.walk_count},
           {"lambda", rat_str(cert.lambda)},
           {"nu", rat_str(rep.nu)},
           {"factor", rat_str(rep.factor)},
           {"delta", rep.delta},
           {"side_condition_ok", rep.side_condition_ok},
           {"lemma_checks", checks}};
    emit(opts, j, j.dump(2) + "\n");
  });

  auto* abounds = amplify->add_subcommand(
      "check-bounds", "random-walk confinement sandwich on the expander");
  std::string subset_str = "all";
  abounds->add_option("--graph", graph_path,
                      "expander graph JSON (certified here)");
  abounds->add_option("--expander", expander_spec,
                      "complete:<n> | random:d:seed (alternative to --graph)");
  std::size_t expander_n = 0;
  abounds->add_option("--n", expander_n, "vertex count for --expander");
  abounds->add_option("--ell", ell, "walk vertex count");
  abounds->add_option("--subset", subset_str, "vertex csv or 'all' subsets");
  add_schema_flag(
      abounds,
      R"({"type":"object","properties":{"checked":{"type":"integer"},"all_hold":{"type":"boolean"},"violations":{"type":"array"}},"required":["checked","all_hold"]})");
  abounds->callback([&]() {
    ExpanderCert cert = !graph_path.empty()
                            ? certify_expander(graph_from_json_file(graph_path))
                            : parse_expander(expander_spec, expander_n);
    std::vector<std::uint64_t> subsets;
    if (subset_str == "all") {
      if (cert.x.n > 20) throw capacity_error("too many subsets; give --subset");
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << cert.x.n); ++m)
        subsets.push_back(m);
    } else {
      subsets.push_back(parse_vertex_set(subset_str, cert.x.n));
    }
    std::size_t violations = 0;
    json vio = json::array();
    for (std::uint64_t mask : subsets) {
      WalkBound wb = walk_bound_check(cert, mask, ell);
      if (!wb.sandwich_ok) {
        ++violations;
        vio.push_back({{"subset", vertex_set_str(mask)},
                       {"lower", rat_str(wb.lower)},
                       {"exact", rat_str(wb.exact)},
                       {"upper", rat_str(wb.upper)}});
      }
    }
    json j{{"checked", subsets.size()},
           {"all_hold", violations == 0},
           {"violations", vio}};
    emit(opts, j, j.dump(2) + "\n");
    if (violations > 0)
      throw audit_failure("walk bound sandwich violated");
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const invalid_instance_error& e) {
    std::cerr << json{{"error", {{"kind", "invalid-instance"},
                                 {"message", e.what()}}}}.dump()
              << std::endl;
    return 2;
  } catch (const capacity_error& e) {
    std::cerr << json{{"error", {{"kind", "capacity"}, {"message", e.what()}}}}
                     .dump()
              << std::endl;
    return 3;
  } catch (const audit_failure& e) {
    std::cerr << json{{"error",
                       {{"kind", "audit-failure"}, {"message", e.what()}}}}
                     .dump()
              << std::endl;
    return 4;
  } catch (const json::exception& e) {
    std::cerr << json{{"error", {{"kind", "invalid-instance"},
                                 {"message", e.what()}}}}.dump()
              << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}
                     .dump()
              << std::endl;
    return 1;
  }
}
