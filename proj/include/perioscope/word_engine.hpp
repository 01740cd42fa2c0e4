#pragma once

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace perioscope {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

enum class BuiltinName { thue_morse, rudin_shapiro, period_doubling };

struct Builtin {
  BuiltinName name;
};

// Deterministic finite automaton with output, reading base-q digits most significant first.
// Index 0 is the empty digit string, so w_0 = out[start].
struct Dfao {
  unsigned base = 2;
  std::size_t start = 0;
  std::vector<std::vector<std::size_t>> delta;  // delta[state][digit]
  std::vector<Symbol> out;
};

// Fixed point of `rules` starting from `seed`, passed through `coding`.
// Internal symbols are 0..rules.size()-1.
struct Morphism {
  std::vector<Word> rules;
  std::vector<Symbol> coding;
  Symbol seed = 0;

  // Common image length when every rule has the same length, else 0.
  std::size_t uniform_length() const;
};

class SequenceSpec {
 public:
  using Definition = std::variant<Builtin, Dfao, Morphism>;

  static SequenceSpec builtin(BuiltinName name);
  // Throws SpecError if the automaton is partial or out-of-range.
  static SequenceSpec dfao(Dfao automaton, std::vector<std::string> alphabet = {});
  // Throws SpecError if a rule is erasing or the seed is not prolongable.
  static SequenceSpec morphism(Morphism morphism, std::vector<std::string> alphabet = {});

  // "tm" | "rs" | "pd" or a JSON object in the documented schema.
  static SequenceSpec parse(std::string_view name_or_json);
  static SequenceSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  const Definition& definition() const noexcept { return definition_; }
  // Base q of the automatic structure; 0 for non-uniform morphisms.
  unsigned base() const noexcept { return base_; }
  // Printable name of each output symbol, indexed by symbol value.
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  std::string name() const;

 private:
  SequenceSpec(Definition def, unsigned base, std::vector<std::string> alphabet)
      : definition_(std::move(def)), base_(base), alphabet_(std::move(alphabet)) {}

  Definition definition_;
  unsigned base_;
  std::vector<std::string> alphabet_;
};

Symbol letter(const SequenceSpec& spec, std::uint64_t i);

// Linear-time generation of w_0 .. w_{n-1}.
Word prefix(const SequenceSpec& spec, std::size_t n);

std::string render(const SequenceSpec& spec, const Word& word);

// Evaluate a DFAO on the canonical base-q digits of i.
Symbol run_dfao(const Dfao& automaton, std::uint64_t i);

// For a uniform morphism of length k, the k-DFAO whose states are the morphism's symbols.
Dfao dfao_from_uniform_morphism(const Morphism& morphism);

Morphism period_doubling_morphism();
Morphism thue_morse_morphism();

}  // namespace perioscope
