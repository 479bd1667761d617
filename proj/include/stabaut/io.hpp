// JSON serialization for the on-disk formats: periodic points, block
// codes, simple automorphisms, group-automorphism scenarios, subshifts,
// and gadget specs.  Emission uses ordered JSON so reports are byte-stable.

#pragma once

#include <nlohmann/json.hpp>

#include "stabaut/two_track.hpp"

namespace stabaut {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Words and points.  Blocks are digit strings for alphabets up to 10
// symbols and arrays of integers beyond.

inline json block_to_json(const std::vector<int>& block, int n) {
  if (n <= 10) {
    std::string s;
    for (int c : block) s += static_cast<char>('0' + c);
    return json(s);
  }
  return json(block);
}

inline std::vector<int> block_from_json(const json& j, int n) {
  std::vector<int> block;
  if (j.is_string()) {
    for (char c : j.get<std::string>()) {
      if (c < '0' || c > '9') throw std::invalid_argument("block digit out of range");
      block.push_back(c - '0');
    }
  } else {
    block = j.get<std::vector<int>>();
  }
  for (int c : block) {
    if (c < 0 || c >= n) throw std::invalid_argument("block symbol out of alphabet range");
  }
  return block;
}

inline json to_json(const PeriodicPoint& x) {
  json j;
  j["alphabet"] = x.alphabet().size;
  j["period"] = x.period();
  j["block"] = block_to_json(x.block(), x.alphabet().size);
  return j;
}

inline PeriodicPoint point_from_json(const json& j) {
  int n = j.at("alphabet").get<int>();
  std::vector<int> block = block_from_json(j.at("block"), n);
  if (j.contains("period") && j.at("period").get<int>() != static_cast<int>(block.size()))
    throw std::invalid_argument("declared period does not match the block length");
  return PeriodicPoint(Alphabet(n), std::move(block));
}

// ---------------------------------------------------------------------------
// Simple automorphisms.

inline json to_json(const SimpleAuto& s) {
  json j;
  j["alphabet"] = s.alphabet.size;
  j["level"] = s.level;
  j["perm"] = s.table;
  return j;
}

inline SimpleAuto simple_from_json(const json& j) {
  return SimpleAuto(Alphabet(j.at("alphabet").get<int>()), j.at("level").get<int>(),
                    j.at("perm").get<std::vector<int>>());
}

// ---------------------------------------------------------------------------
// Block codes: explicit rule tables, or declared by kind for shift powers
// and simple automorphisms.

inline json to_json(const BlockCode& code, std::uint64_t capacity = kDefaultCapacity) {
  json j;
  if (auto shift = as_pure_shift(code)) {
    j["kind"] = "shift";
    j["alphabet"] = code.alphabet().size;
    j["exponent"] = *shift;
    if (!code.label().empty()) j["label"] = code.label();
    return j;
  }
  // Materialize the rule tables at the code's level and radius.
  int level = code.level();
  int radius = code.radius();
  int inv_radius = code.inverse().radius();
  int worst = std::max(radius, inv_radius);
  std::uint64_t cell = checked_pow(static_cast<std::uint64_t>(code.alphabet().size), static_cast<std::uint64_t>(level), capacity);
  std::uint64_t windows = checked_pow(cell, static_cast<std::uint64_t>(2 * worst + 1), capacity);
  auto table_of = [&](const BlockCode& c, int r) {
    std::uint64_t count = checked_pow(cell, static_cast<std::uint64_t>(2 * r + 1), capacity);
    std::vector<int> table(count);
    int width = (2 * r + 1) * level;
    std::vector<int> raw(static_cast<std::size_t>(width));
    std::vector<int> out(static_cast<std::size_t>(level));
    for (std::uint64_t w = 0; w < count; ++w) {
      std::uint64_t v = w;
      for (int i = width - 1; i >= 0; --i) {
        raw[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<std::uint64_t>(code.alphabet().size));
        v /= static_cast<std::uint64_t>(code.alphabet().size);
      }
      c.eval_forward(raw.data(), -static_cast<long long>(r) * level, out.data(), detail::Range{0, level});
      std::uint64_t symbol = 0;
      for (int t = 0; t < level; ++t) symbol = symbol * static_cast<std::uint64_t>(code.alphabet().size) + static_cast<std::uint64_t>(out[static_cast<std::size_t>(t)]);
      table[w] = static_cast<int>(symbol);
    }
    return table;
  };
  (void)windows;
  j["kind"] = "table";
  j["alphabet"] = code.alphabet().size;
  j["level"] = level;
  j["radius"] = radius;
  j["rule"] = table_of(code, radius);
  j["inverse_radius"] = inv_radius;
  j["inverse_rule"] = table_of(code.inverse(), inv_radius);
  if (!code.label().empty()) j["label"] = code.label();
  return j;
}

inline BlockCode code_from_json(const json& j) {
  std::string kind = j.value("kind", std::string("table"));
  std::string label = j.value("label", std::string());
  if (kind == "shift") {
    return shift_power(Alphabet(j.at("alphabet").get<int>()), j.at("exponent").get<long long>(), label);
  }
  if (kind == "simple") {
    SimpleAuto s = simple_from_json(j);
    return embed_simple(s, label);
  }
  if (kind == "identity") {
    return BlockCode::identity(Alphabet(j.at("alphabet").get<int>()));
  }
  if (kind == "g" || kind == "gamma" || kind == "trackswap") {
    int n = j.at("alphabet").get<int>();
    if (kind == "gamma") return gamma_code(n);
    if (kind == "trackswap") return trackswap(n);
    Word w(Alphabet(n), block_from_json(j.at("w"), n));
    return make_g(w, j.at("pi").get<std::vector<int>>());
  }
  if (kind != "table") throw std::invalid_argument("unknown block code kind: " + kind);
  int n = j.at("alphabet").get<int>();
  int level = j.at("level").get<int>();
  int radius = j.at("radius").get<int>();
  int inv_radius = j.value("inverse_radius", radius);
  auto fwd = std::make_shared<detail::TableAtom>(n, level, radius, j.at("rule").get<std::vector<int>>());
  auto inv = std::make_shared<detail::TableAtom>(n, level, inv_radius, j.at("inverse_rule").get<std::vector<int>>());
  return BlockCode::from_atoms(Alphabet(n), {fwd}, {inv}, label);
}

// ---------------------------------------------------------------------------
// Group elements as formal words.

inline json to_json(const GroupElement& w) {
  json factors = json::array();
  for (const auto& f : w.factors()) {
    if (std::holds_alternative<long long>(f.value)) {
      factors.push_back(json{{"kind", "shift"}, {"exponent", std::get<long long>(f.value)}});
    } else if (std::holds_alternative<SimpleAuto>(f.value)) {
      json s = to_json(std::get<SimpleAuto>(f.value));
      s["kind"] = "simple";
      factors.push_back(std::move(s));
    } else {
      json c = to_json(std::get<BlockCode>(f.value));
      json entry;
      entry["kind"] = "code";
      entry["code"] = std::move(c);
      factors.push_back(std::move(entry));
    }
  }
  json j;
  j["alphabet"] = w.alphabet().size;
  j["level"] = w.declared_level();
  j["factors"] = std::move(factors);
  return j;
}

inline GroupElement element_from_json(const json& j) {
  Alphabet a(j.at("alphabet").get<int>());
  std::vector<GroupFactor> factors;
  for (const auto& f : j.at("factors")) {
    std::string kind = f.at("kind").get<std::string>();
    if (kind == "shift") {
      factors.push_back(GroupFactor::shift(f.at("exponent").get<long long>()));
    } else if (kind == "simple") {
      factors.push_back(GroupFactor::simple(simple_from_json(f)));
    } else if (kind == "code") {
      factors.push_back(GroupFactor::explicit_code(code_from_json(f.at("code"))));
    } else {
      throw std::invalid_argument("unknown factor kind: " + kind);
    }
  }
  int level = j.value("level", 1);
  return GroupElement(a, std::move(factors), level);
}

// ---------------------------------------------------------------------------
// Profinite integers and automorphism scenarios.

inline json to_json(const ProfiniteInteger& a) {
  json j;
  if (a.is_integer()) {
    j["integer"] = a.integer_value();
  } else {
    json residues = json::object();
    for (const auto& [m, r] : a.residue_table()) residues[std::to_string(m)] = r;
    j["residues"] = std::move(residues);
  }
  return j;
}

inline ProfiniteInteger profinite_from_json(const json& j) {
  if (j.contains("integer")) return ProfiniteInteger::from_integer(j.at("integer").get<long long>());
  std::map<int, long long> residues;
  for (const auto& [key, value] : j.at("residues").items()) residues[std::stoi(key)] = value.get<long long>();
  return ProfiniteInteger::from_residues(std::move(residues));
}

inline json to_json(const GroupAutomorphism& psi) {
  json j;
  switch (psi.kind()) {
    case GroupAutomorphism::Kind::Inner:
      j["kind"] = "inner";
      j["alphabet"] = psi.alphabet().size;
      j["conjugator"] = to_json(psi.conjugator());
      break;
    case GroupAutomorphism::Kind::Reflection:
      j["kind"] = "reflection";
      j["alphabet"] = psi.alphabet().size;
      break;
    case GroupAutomorphism::Kind::Profinite: {
      j["kind"] = "profinite";
      j["alphabet"] = psi.alphabet().size;
      json residues = to_json(psi.residues());
      j.update(residues);
      break;
    }
    case GroupAutomorphism::Kind::Composite: {
      j["kind"] = "composite";
      j["alphabet"] = psi.alphabet().size;
      json parts = json::array();
      for (const auto& p : psi.parts()) parts.push_back(to_json(p));
      j["parts"] = std::move(parts);
      break;
    }
  }
  return j;
}

inline GroupAutomorphism psi_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "inner") return GroupAutomorphism::inner(element_from_json(j.at("conjugator")));
  Alphabet a(j.at("alphabet").get<int>());
  if (kind == "reflection") return GroupAutomorphism::reflection(a);
  if (kind == "profinite") return GroupAutomorphism::profinite(a, profinite_from_json(j));
  if (kind == "composite") {
    std::vector<GroupAutomorphism> parts;
    for (const auto& p : j.at("parts")) parts.push_back(psi_from_json(p));
    return GroupAutomorphism::composite(std::move(parts));
  }
  throw std::invalid_argument("unknown automorphism kind: " + kind);
}

// ---------------------------------------------------------------------------
// Subshifts.

inline json to_json(const Subshift& y) {
  json j;
  j["alphabet"] = y.alphabet().size;
  j["step"] = y.step();
  if (y.kind() == Subshift::Kind::Sft) {
    j["kind"] = "sft";
    json forbidden = json::array();
    for (const auto& f : y.forbidden()) {
      if (f.modulus == 1 && f.phase == 0) {
        forbidden.push_back(block_to_json(f.symbols, y.alphabet().size));
      } else {
        forbidden.push_back(json{{"word", block_to_json(f.symbols, y.alphabet().size)},
                                 {"phase", f.phase},
                                 {"modulus", f.modulus}});
      }
    }
    j["forbidden"] = std::move(forbidden);
  } else {
    j["kind"] = "finite";
    json orbits = json::array();
    for (const auto& x : y.points())
      orbits.push_back(json{{"period", x.period()}, {"block", block_to_json(x.block(), y.alphabet().size)}});
    j["orbits"] = std::move(orbits);
  }
  return j;
}

inline Subshift subshift_from_json(const json& j) {
  Alphabet a(j.at("alphabet").get<int>());
  int step = j.value("step", 1);
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "sft") {
    std::vector<ForbiddenWord> forbidden;
    for (const auto& f : j.at("forbidden")) {
      if (f.is_object()) {
        forbidden.push_back(ForbiddenWord{block_from_json(f.at("word"), a.size), f.value("phase", 0),
                                          f.value("modulus", step)});
      } else {
        forbidden.push_back(ForbiddenWord{block_from_json(f, a.size), 0, step == 1 ? 1 : step});
      }
    }
    return Subshift::sft(a, step, std::move(forbidden));
  }
  if (kind == "finite") {
    std::vector<PeriodicPoint> points;
    for (const auto& o : j.at("orbits")) points.emplace_back(a, block_from_json(o.at("block"), a.size));
    return Subshift::finite(a, step, points);
  }
  throw std::invalid_argument("unknown subshift kind: " + kind);
}

// ---------------------------------------------------------------------------
// Permutation tables and reports.

inline json to_json(const PermutationTable& t) {
  json j;
  j["alphabet"] = t.n;
  j["period"] = t.period;
  j["table"] = t.images;
  return j;
}

inline json to_json(const Dyadic& d) {
  if (d.zero) return json(0.0);
  json j;
  j["log2"] = d.log2;
  j["value"] = d.value();
  return j;
}

}  // namespace stabaut
