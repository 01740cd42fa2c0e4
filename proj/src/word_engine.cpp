#include "perioscope/word_engine.hpp"

#include "perioscope/errors.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace perioscope {

namespace {

std::vector<std::string> binary_alphabet() { return {"0", "1"}; }

std::vector<std::string> default_alphabet(std::size_t size) {
  std::vector<std::string> names;
  names.reserve(size);
  for (std::size_t s = 0; s < size; ++s) names.push_back(std::to_string(s));
  return names;
}

void validate(const Dfao& a, std::size_t alphabet_size) {
  if (a.base < 2) throw SpecError("DFAO base must be at least 2");
  const std::size_t states = a.delta.size();
  if (states == 0) throw SpecError("DFAO has no states");
  if (a.out.size() != states) throw SpecError("DFAO output map is not total over states");
  if (a.start >= states) throw SpecError("DFAO start state out of range");
  for (std::size_t s = 0; s < states; ++s) {
    if (a.delta[s].size() != a.base)
      throw SpecError("DFAO transition is not total over digits at state " + std::to_string(s));
    for (std::size_t t : a.delta[s]) {
      if (t >= states) throw SpecError("DFAO transition target out of range");
    }
    if (a.out[s] >= alphabet_size) throw SpecError("DFAO output symbol outside alphabet");
  }
}

void validate(const Morphism& m, std::size_t alphabet_size) {
  const std::size_t k = m.rules.size();
  if (k == 0) throw SpecError("morphism has no rules");
  if (m.coding.size() != k) throw SpecError("coding is not total over morphism symbols");
  if (m.seed >= k) throw SpecError("morphism seed is not a rule symbol");
  for (const Word& image : m.rules) {
    if (image.empty()) throw SpecError("morphism is erasing");
    for (Symbol s : image) {
      if (s >= k) throw SpecError("morphism image uses an undefined symbol");
    }
  }
  const Word& seed_image = m.rules[m.seed];
  if (seed_image.size() < 2 || seed_image.front() != m.seed)
    throw SpecError("morphism is not prolongable on its seed");
  for (Symbol c : m.coding) {
    if (c >= alphabet_size) throw SpecError("coding symbol outside alphabet");
  }
}

Word iterate_fixed_point(const Morphism& m, std::size_t n) {
  Word internal;
  internal.reserve(n + m.rules[m.seed].size());
  internal = m.rules[m.seed];
  for (std::size_t j = 1; internal.size() < n; ++j) {
    const Word& image = m.rules[internal[j]];
    internal.insert(internal.end(), image.begin(), image.end());
  }
  internal.resize(n);
  for (Symbol& s : internal) s = m.coding[s];
  return internal;
}

Symbol thue_morse_letter(std::uint64_t i) { return static_cast<Symbol>(std::popcount(i) & 1); }

Symbol rudin_shapiro_letter(std::uint64_t i) {
  return static_cast<Symbol>(std::popcount(i & (i >> 1)) & 1);
}

}  // namespace

std::size_t Morphism::uniform_length() const {
  if (rules.empty()) return 0;
  const std::size_t k = rules.front().size();
  for (const Word& image : rules) {
    if (image.size() != k) return 0;
  }
  return k;
}

Morphism thue_morse_morphism() { return Morphism{{{0, 1}, {1, 0}}, {0, 1}, 0}; }

Morphism period_doubling_morphism() { return Morphism{{{0, 1}, {0, 0}}, {0, 1}, 0}; }

Dfao dfao_from_uniform_morphism(const Morphism& m) {
  const std::size_t k = m.uniform_length();
  if (k < 2) throw SpecError("DFAO derivation needs a uniform morphism of length >= 2");
  Dfao a;
  a.base = static_cast<unsigned>(k);
  a.start = m.seed;
  a.out = m.coding;
  a.delta.resize(m.rules.size());
  for (std::size_t s = 0; s < m.rules.size(); ++s) {
    a.delta[s].assign(m.rules[s].begin(), m.rules[s].end());
  }
  return a;
}

Symbol run_dfao(const Dfao& a, std::uint64_t i) {
  std::vector<unsigned> digits;
  while (i != 0) {
    digits.push_back(static_cast<unsigned>(i % a.base));
    i /= a.base;
  }
  std::size_t state = a.start;
  for (auto d = digits.rbegin(); d != digits.rend(); ++d) state = a.delta[state][*d];
  return a.out[state];
}

SequenceSpec SequenceSpec::builtin(BuiltinName name) {
  return SequenceSpec(Builtin{name}, 2, binary_alphabet());
}

SequenceSpec SequenceSpec::dfao(Dfao automaton, std::vector<std::string> alphabet) {
  if (alphabet.empty()) {
    Symbol top = 0;
    for (Symbol s : automaton.out) top = std::max(top, s);
    alphabet = default_alphabet(std::size_t{top} + 1);
  }
  validate(automaton, alphabet.size());
  const unsigned base = automaton.base;
  return SequenceSpec(std::move(automaton), base, std::move(alphabet));
}

SequenceSpec SequenceSpec::morphism(Morphism morphism, std::vector<std::string> alphabet) {
  if (alphabet.empty()) {
    Symbol top = 0;
    for (Symbol s : morphism.coding) top = std::max(top, s);
    alphabet = default_alphabet(std::size_t{top} + 1);
  }
  validate(morphism, alphabet.size());
  const auto base = static_cast<unsigned>(morphism.uniform_length());
  return SequenceSpec(std::move(morphism), base, std::move(alphabet));
}

std::string SequenceSpec::name() const {
  if (const auto* b = std::get_if<Builtin>(&definition_)) {
    switch (b->name) {
      case BuiltinName::thue_morse: return "tm";
      case BuiltinName::rudin_shapiro: return "rs";
      case BuiltinName::period_doubling: return "pd";
    }
  }
  if (std::holds_alternative<Dfao>(definition_)) return "dfao";
  return "morphism";
}

SequenceSpec SequenceSpec::parse(std::string_view text) {
  if (text == "tm" || text == "thue-morse") return builtin(BuiltinName::thue_morse);
  if (text == "rs" || text == "rudin-shapiro") return builtin(BuiltinName::rudin_shapiro);
  if (text == "pd" || text == "period-doubling") return builtin(BuiltinName::period_doubling);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError("sequence spec is neither a builtin name nor JSON: " + std::string(e.what()));
  }
  return from_json(j);
}

SequenceSpec SequenceSpec::from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "builtin") return parse(j.at("name").get<std::string>());

    if (kind == "dfao") {
      Dfao a;
      a.base = j.at("q").get<unsigned>();
      a.start = j.value("start", std::size_t{0});
      a.delta = j.at("delta").get<std::vector<std::vector<std::size_t>>>();
      for (unsigned v : j.at("out").get<std::vector<unsigned>>()) {
        if (v > 255) throw SpecError("DFAO output symbol too large");
        a.out.push_back(static_cast<Symbol>(v));
      }
      return dfao(std::move(a));
    }

    if (kind == "morphism") {
      // Symbols are single-character strings; both alphabets are numbered in sorted order.
      const auto rules = j.at("rules").get<std::map<std::string, std::string>>();
      std::map<char, Symbol> internal;
      for (const auto& [key, image] : rules) {
        if (key.size() != 1) throw SpecError("morphism symbols must be single characters");
        internal.emplace(key[0], 0);
      }
      if (internal.size() > 255) throw SpecError("morphism alphabet too large");
      Symbol next = 0;
      for (auto& [c, id] : internal) id = next++;

      std::map<std::string, std::string> coding_text;
      if (j.contains("coding")) {
        coding_text = j.at("coding").get<std::map<std::string, std::string>>();
      } else {
        for (const auto& [key, image] : rules) coding_text[key] = key;
      }
      std::set<std::string> outputs;
      for (const auto& [key, value] : coding_text) outputs.insert(value);
      std::vector<std::string> alphabet(outputs.begin(), outputs.end());

      Morphism m;
      m.rules.resize(internal.size());
      m.coding.resize(internal.size());
      for (const auto& [key, image] : rules) {
        Word& dst = m.rules[internal.at(key[0])];
        for (char c : image) {
          auto it = internal.find(c);
          if (it == internal.end()) throw SpecError(std::string("undefined symbol '") + c + "' in rule");
          dst.push_back(it->second);
        }
        auto code = coding_text.find(key);
        if (code == coding_text.end()) throw SpecError("coding missing symbol '" + key + "'");
        const auto pos = std::find(alphabet.begin(), alphabet.end(), code->second) - alphabet.begin();
        m.coding[internal.at(key[0])] = static_cast<Symbol>(pos);
      }
      const std::string seed = j.at("seed").get<std::string>();
      if (seed.size() != 1 || !internal.contains(seed[0]))
        throw SpecError("morphism seed must be one of the rule symbols");
      m.seed = internal.at(seed[0]);
      return morphism(std::move(m), std::move(alphabet));
    }
    throw SpecError("unknown sequence kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed sequence spec: ") + e.what());
  }
}

nlohmann::json SequenceSpec::to_json() const {
  using nlohmann::json;
  if (std::holds_alternative<Builtin>(definition_)) return json{{"kind", "builtin"}, {"name", name()}};
  if (const auto* a = std::get_if<Dfao>(&definition_)) {
    std::vector<unsigned> out(a->out.begin(), a->out.end());
    return json{{"kind", "dfao"}, {"q", a->base}, {"start", a->start}, {"delta", a->delta}, {"out", out}};
  }
  const auto& m = std::get<Morphism>(definition_);
  // Internal symbols are written back as their index digits/letters.
  auto sym = [](std::size_t s) {
    return std::string(1, static_cast<char>(s < 10 ? '0' + s : 'a' + (s - 10)));
  };
  json rules = json::object();
  json coding = json::object();
  for (std::size_t s = 0; s < m.rules.size(); ++s) {
    std::string image;
    for (Symbol t : m.rules[s]) image += sym(t);
    rules[sym(s)] = image;
    coding[sym(s)] = alphabet_.at(m.coding[s]);
  }
  return json{{"kind", "morphism"}, {"rules", rules}, {"coding", coding}, {"seed", sym(m.seed)}};
}

Symbol letter(const SequenceSpec& spec, std::uint64_t i) {
  return std::visit(
      [i](const auto& def) -> Symbol {
        using T = std::decay_t<decltype(def)>;
        if constexpr (std::is_same_v<T, Builtin>) {
          switch (def.name) {
            case BuiltinName::thue_morse: return thue_morse_letter(i);
            case BuiltinName::rudin_shapiro: return rudin_shapiro_letter(i);
            case BuiltinName::period_doubling: {
              static const Dfao pd = dfao_from_uniform_morphism(period_doubling_morphism());
              return run_dfao(pd, i);
            }
          }
          return 0;
        } else if constexpr (std::is_same_v<T, Dfao>) {
          return run_dfao(def, i);
        } else {
          if (def.uniform_length() >= 2) return run_dfao(dfao_from_uniform_morphism(def), i);
          return iterate_fixed_point(def, static_cast<std::size_t>(i) + 1).back();
        }
      },
      spec.definition());
}

Word prefix(const SequenceSpec& spec, std::size_t n) {
  if (n == 0) return {};
  return std::visit(
      [n](const auto& def) -> Word {
        using T = std::decay_t<decltype(def)>;
        if constexpr (std::is_same_v<T, Builtin>) {
          switch (def.name) {
            case BuiltinName::thue_morse: {
              // t[2^k .. 2^{k+1}) is the complement of t[0 .. 2^k).
              Word w{0};
              w.reserve(n);
              while (w.size() < n) {
                const std::size_t block = std::min(w.size(), n - w.size());
                for (std::size_t k = 0; k < block; ++k) w.push_back(static_cast<Symbol>(1 - w[k]));
              }
              return w;
            }
            case BuiltinName::rudin_shapiro: {
              Word w(n);
              for (std::size_t k = 0; k < n; ++k) w[k] = rudin_shapiro_letter(k);
              return w;
            }
            case BuiltinName::period_doubling:
              return iterate_fixed_point(period_doubling_morphism(), n);
          }
          return {};
        } else if constexpr (std::is_same_v<T, Dfao>) {
          // state(i) = delta[state(i / q)][i % q], with state(0) the start state.
          std::vector<std::size_t> state(n);
          Word w(n);
          state[0] = def.start;
          w[0] = def.out[def.start];
          for (std::size_t k = 1; k < n; ++k) {
            state[k] = def.delta[state[k / def.base]][k % def.base];
            w[k] = def.out[state[k]];
          }
          return w;
        } else {
          return iterate_fixed_point(def, n);
        }
      },
      spec.definition());
}

std::string render(const SequenceSpec& spec, const Word& word) {
  std::string text;
  text.reserve(word.size());
  for (Symbol s : word) text += spec.alphabet().at(s);
  return text;
}

}  // namespace perioscope
