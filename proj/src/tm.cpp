#include "reconf/tm.hpp"

#include <fstream>
#include <set>
#include <tuple>
#include <sstream>

#include <nlohmann/json.hpp>

#include "reconf/errors.hpp"

namespace reconf {

void TmSpec::validate() const {
  if (num_states == 0) throw invalid_instance_error("machine needs states");
  if (start >= num_states || accept >= num_states || reject >= num_states)
    throw invalid_instance_error("state id out of range");
  if (accept == reject)
    throw invalid_instance_error("accept and reject must differ");
  if (delta.size() != num_states)
    throw invalid_instance_error("delta must cover every state");
  for (const auto& row : delta) {
    for (const auto& t : row) {
      if (t.write > 1) throw invalid_instance_error("write symbol not binary");
      if (t.move < -1 || t.move > 1)
        throw invalid_instance_error("move must be -1, 0 or +1");
      if (t.next >= num_states)
        throw invalid_instance_error("next state out of range");
    }
  }
}

bool tm_accepts(const TmSpec& m, const Bits& input, std::size_t space,
                std::uint64_t max_steps) {
  m.validate();
  if (input.size() > space)
    throw invalid_instance_error("input longer than the space bound");
  Bits tape(space, 0);
  std::copy(input.begin(), input.end(), tape.begin());
  std::uint32_t state = m.start;
  std::size_t head = 0;
  // A revisited configuration means the machine loops and never accepts.
  std::set<std::tuple<std::uint32_t, std::size_t, Bits>> seen;
  for (std::uint64_t step = 0; step < max_steps; ++step) {
    if (state == m.accept) return true;
    if (state == m.reject) return false;
    if (!seen.emplace(state, head, tape).second) return false;
    const TmTransition& t = m.delta[state][tape[head]];
    tape[head] = t.write;
    if ((t.move < 0 && head == 0) || (t.move > 0 && head + 1 == space)) {
      state = m.reject;  // out-of-bound move clamps to reject
      continue;
    }
    state = t.next;
    head = static_cast<std::size_t>(static_cast<std::int64_t>(head) + t.move);
  }
  throw capacity_error("simulation exceeded the step cap");
}

TmEncoding tm_encoding(const TmSpec& m, std::size_t space) {
  if (space == 0) throw invalid_instance_error("space must be positive");
  TmEncoding e;
  e.space = space;
  e.head_bits = 1;
  while ((std::size_t{1} << e.head_bits) < space) ++e.head_bits;
  e.config_bits = m.num_states + e.head_bits + space;
  e.total_bits = 2 + e.config_bits;
  return e;
}

BoolCircuit tm_to_circuit(const TmSpec& m, const Bits& input,
                          std::size_t space) {
  m.validate();
  if (input.size() > space)
    throw invalid_instance_error("input longer than the space bound");
  TmEncoding enc = tm_encoding(m, space);
  if (enc.total_bits > 63) throw capacity_error("configuration encoding too wide");

  CircuitBuilder b(enc.total_bits);
  std::vector<std::uint32_t> in(enc.total_bits);
  for (std::size_t i = 0; i < enc.total_bits; ++i)
    in[i] = b.input(static_cast<std::uint32_t>(i));
  std::uint32_t zero = b.constant(false);
  std::uint32_t one = b.constant(true);

  // Field layout: [tag0 tag1][state one-hot][head little-endian][tape].
  auto state_wire = [&](std::uint32_t s) { return in[2 + s]; };
  std::vector<std::uint32_t> head(enc.head_bits);
  for (std::size_t i = 0; i < enc.head_bits; ++i)
    head[i] = in[2 + m.num_states + i];
  auto tape_wire = [&](std::size_t i) {
    return in[2 + m.num_states + enc.head_bits + i];
  };

  std::vector<std::uint32_t> negated(enc.total_bits);
  for (std::size_t i = 0; i < enc.total_bits; ++i) negated[i] = b.g_not(in[i]);
  std::uint32_t is_zero = b.all_of(negated);
  std::uint32_t is_step = b.g_and(negated[0], in[1]);

  // Stepping logic for a tagged configuration.
  std::vector<std::uint32_t> at(space);
  for (std::size_t i = 0; i < space; ++i) at[i] = b.eq_const(head, i);
  std::vector<std::uint32_t> under;
  for (std::size_t i = 0; i < space; ++i)
    under.push_back(b.g_and(at[i], tape_wire(i)));
  std::uint32_t cur = b.any_of(under);
  std::uint32_t not_cur = b.g_not(cur);

  // active[s][a]: machine in state s reading symbol a.
  std::vector<std::array<std::uint32_t, 2>> active(m.num_states);
  for (std::uint32_t s = 0; s < m.num_states; ++s) {
    active[s][0] = b.g_and(state_wire(s), not_cur);
    active[s][1] = b.g_and(state_wire(s), cur);
  }

  auto any_matching = [&](auto&& pred) {
    std::vector<std::uint32_t> hits;
    for (std::uint32_t s = 0; s < m.num_states; ++s)
      for (int a = 0; a < 2; ++a)
        if (pred(m.delta[s][a])) hits.push_back(active[s][a]);
    return b.any_of(hits);
  };

  std::uint32_t written =
      any_matching([](const TmTransition& t) { return t.write == 1; });
  std::uint32_t move_neg =
      any_matching([](const TmTransition& t) { return t.move < 0; });
  std::uint32_t move_pos =
      any_matching([](const TmTransition& t) { return t.move > 0; });
  std::uint32_t oob = b.g_or(b.g_and(move_neg, at[0]),
                             b.g_and(move_pos, at[space - 1]));

  std::vector<std::uint32_t> next_state(m.num_states);
  for (std::uint32_t tgt = 0; tgt < m.num_states; ++tgt) {
    std::uint32_t raw = any_matching(
        [tgt](const TmTransition& t) { return t.next == tgt; });
    next_state[tgt] = b.mux(oob, tgt == m.reject ? one : zero, raw);
  }

  std::vector<std::uint32_t> inc(enc.head_bits), dec(enc.head_bits);
  std::uint32_t carry = one, borrow = one;
  for (std::size_t i = 0; i < enc.head_bits; ++i) {
    inc[i] = b.g_xor(head[i], carry);
    carry = b.g_and(head[i], carry);
    dec[i] = b.g_xor(head[i], borrow);
    borrow = b.g_and(b.g_not(head[i]), borrow);
  }
  std::vector<std::uint32_t> next_head(enc.head_bits);
  for (std::size_t i = 0; i < enc.head_bits; ++i) {
    std::uint32_t moved = b.mux(move_pos, inc[i], b.mux(move_neg, dec[i], head[i]));
    next_head[i] = b.mux(oob, head[i], moved);
  }

  std::vector<std::uint32_t> next_tape(space);
  for (std::size_t i = 0; i < space; ++i)
    next_tape[i] = b.mux(at[i], written, tape_wire(i));

  std::uint32_t in_accept = state_wire(m.accept);
  std::uint32_t in_reject = state_wire(m.reject);

  // Stepped word: accepting -> 1^total, rejecting -> 0^total, else 01 . c'.
  std::vector<std::uint32_t> stepped(enc.total_bits);
  {
    std::vector<std::uint32_t> next_cfg;
    next_cfg.insert(next_cfg.end(), next_state.begin(), next_state.end());
    next_cfg.insert(next_cfg.end(), next_head.begin(), next_head.end());
    next_cfg.insert(next_cfg.end(), next_tape.begin(), next_tape.end());
    std::uint32_t not_reject = b.g_not(in_reject);
    stepped[0] = in_accept;
    stepped[1] = b.g_or(in_accept, not_reject);
    for (std::size_t i = 0; i < enc.config_bits; ++i)
      stepped[2 + i] = b.g_or(in_accept, b.g_and(not_reject, next_cfg[i]));
  }

  // Bootstrap word: 01 . c_init.
  std::vector<std::uint32_t> boot(enc.total_bits, zero);
  boot[1] = one;
  boot[2 + m.start] = one;
  for (std::size_t i = 0; i < input.size(); ++i)
    if (input[i]) boot[2 + m.num_states + enc.head_bits + i] = one;

  std::vector<std::uint32_t> outs(enc.total_bits);
  for (std::size_t i = 0; i < enc.total_bits; ++i)
    outs[i] = b.mux(is_zero, boot[i], b.mux(is_step, stepped[i], in[i]));
  BoolCircuit s = std::move(b).build(outs);
  s.validate_promise();
  return s;
}

namespace {

// States are listed per machine; 0 is always the start state.
TmSpec make_machine(std::size_t states, std::uint32_t accept,
                    std::uint32_t reject) {
  TmSpec m;
  m.num_states = states;
  m.start = 0;
  m.accept = accept;
  m.reject = reject;
  m.delta.resize(states);
  for (auto& row : m.delta)
    row = {TmTransition{0, 0, reject}, TmTransition{1, 0, reject}};
  return m;
}

}  // namespace

TmSpec tm_accepter() {
  // start == accept; the machine is already done.
  TmSpec m = make_machine(2, 0, 1);
  m.validate();
  return m;
}

TmSpec tm_rejecter() {
  TmSpec m = make_machine(2, 1, 0);  // start == reject
  m.validate();
  return m;
}

TmSpec tm_looper() {
  // Rewrites the current cell in place forever.
  TmSpec m = make_machine(3, 1, 2);
  m.delta[0][0] = {0, 0, 0};
  m.delta[0][1] = {1, 0, 0};
  m.validate();
  return m;
}

TmSpec tm_counter() {
  // Input 1 0^{k} 1: markers at both ends, counter cells in between
  // (LSB adjacent to the left marker). Increments until the carry runs into
  // the right marker, which walks off the tape and rejects.
  // q0: on the left marker, kick off an increment.
  // q1: increment scan (1 -> 0 carry right, 0 -> 1 done, turn back).
  // q2: return left over zeros until the left marker.
  TmSpec m = make_machine(5, 3, 4);
  m.delta[0][1] = {1, +1, 1};   // leave marker, start increment
  m.delta[0][0] = {0, 0, 4};    // malformed input
  m.delta[1][1] = {0, +1, 1};   // carry
  m.delta[1][0] = {1, -1, 2};   // set bit, return
  m.delta[2][0] = {0, -1, 2};
  m.delta[2][1] = {1, 0, 0};    // back on the left marker
  m.validate();
  return m;
}

TmSpec tm_scanner() {
  // Walks right over zeros and accepts at the first 1 (the end marker).
  TmSpec m = make_machine(3, 1, 2);
  m.delta[0][0] = {0, +1, 0};
  m.delta[0][1] = {1, 0, 1};
  m.validate();
  return m;
}

std::string tm_to_json(const TmSpec& m) {
  nlohmann::json j;
  j["states"] = m.num_states;
  j["alphabet"] = 2;
  j["start"] = m.start;
  j["accept"] = m.accept;
  j["reject"] = m.reject;
  j["delta"] = nlohmann::json::array();
  for (std::size_t s = 0; s < m.num_states; ++s) {
    for (int a = 0; a < 2; ++a) {
      const TmTransition& t = m.delta[s][a];
      nlohmann::json jt;
      jt["state"] = s;
      jt["read"] = a;
      jt["write"] = t.write;
      jt["move"] = t.move < 0 ? "L" : (t.move > 0 ? "R" : "S");
      jt["next"] = t.next;
      j["delta"].push_back(std::move(jt));
    }
  }
  return j.dump(2);
}

TmSpec tm_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  TmSpec m;
  m.num_states = j.at("states").get<std::size_t>();
  if (j.contains("alphabet") && j.at("alphabet").get<int>() != 2)
    throw invalid_instance_error("only binary tape alphabets are supported");
  m.start = j.value("start", 0u);
  m.accept = j.at("accept").get<std::uint32_t>();
  m.reject = j.at("reject").get<std::uint32_t>();
  m.delta.resize(m.num_states);
  std::vector<std::array<bool, 2>> seen(m.num_states, {false, false});
  for (const auto& jt : j.at("delta")) {
    auto s = jt.at("state").get<std::size_t>();
    auto a = jt.at("read").get<int>();
    if (s >= m.num_states || a < 0 || a > 1)
      throw invalid_instance_error("bad transition key");
    TmTransition t;
    t.write = jt.at("write").get<std::uint8_t>();
    std::string mv = jt.at("move").get<std::string>();
    t.move = mv == "L" ? -1 : (mv == "R" ? 1 : 0);
    t.next = jt.at("next").get<std::uint32_t>();
    m.delta[s][a] = t;
    seen[s][a] = true;
  }
  for (std::size_t s = 0; s < m.num_states; ++s)
    if (!seen[s][0] || !seen[s][1])
      throw invalid_instance_error("delta must be defined on all pairs");
  m.validate();
  return m;
}

TmSpec tm_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_instance_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return tm_from_json(ss.str());
}

}  // namespace reconf
