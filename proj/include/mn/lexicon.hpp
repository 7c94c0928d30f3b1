#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mn/english.hpp"
#include "mn/tags.hpp"

namespace mn {

class LexiconError : public std::runtime_error {
 public:
  LexiconError(const std::string& what, std::size_t record)
      : std::runtime_error("lexicon record " + std::to_string(record) + ": " + what), record_(record) {}
  std::size_t record() const { return record_; }

 private:
  std::size_t record_;
};

struct Subcat {
  std::string code;
  /// Free text after " -- " in the file, e.g. an example sentence.
  std::string example;

  friend bool operator==(const Subcat&, const Subcat&) = default;
};

/// One trigger record of the modality/negation lexicon.
///
/// File form (blank-line separated, '#' comments):
///
///     String: need
///     Pos: VB
///     Modality: Require
///     Trigger: need
///     Subcat: V3-passive-basic -- More citizens are needed to vote.
///
/// Modality also accepts "<Name>Negation" for triggers whose negation is
/// inherent (fail: SucceedNegation). Forms optionally overrides the verb
/// paradigm of the head word as base,3sg,past,participle,gerund.
struct LexiconEntry {
  std::string surface;
  std::vector<std::string> words;
  /// One tag per word.
  std::vector<std::string> pos;
  Modality modality = Modality::Negation;
  bool inherent_negation = false;
  std::string head;
  std::vector<Subcat> subcats;
  std::optional<std::string> forms;
  /// Keys the loader does not interpret, in file order.
  std::vector<std::pair<std::string, std::string>> extras;

  std::size_t head_index() const;
  const std::string& head_pos() const { return pos.at(head_index()); }
  bool is_verbal() const;
  /// Head-word paradigm (only meaningful for verbal heads).
  english::VerbForms head_forms() const;

  MNTag trigger_tag() const;
  MNTag target_tag() const;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

struct LexiconMatch {
  const LexiconEntry* entry = nullptr;
  std::size_t start = 0;
  std::size_t length = 0;
};

/// A token with its part of speech, the lookup key of the lexicon.
struct PosToken {
  std::string word;
  std::string pos;
};

class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::vector<LexiconEntry> entries);

  std::span<const LexiconEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Entries whose word and POS sequences match exactly at position,
  /// longest first, then in file order. Words compare case-insensitively,
  /// POS tags exactly. Verbal heads match any form of their paradigm.
  std::vector<LexiconMatch> lookup(std::span<const PosToken> tokens, std::size_t position) const;

  friend bool operator==(const Lexicon& a, const Lexicon& b) { return a.entries_ == b.entries_; }

 private:
  struct Variant {
    std::size_t entry;
    std::vector<std::string> words;  // lowercase
    std::vector<std::string> pos;
  };
  void build_index();

  std::vector<LexiconEntry> entries_;
  std::map<std::string, std::vector<Variant>> index_;
};

Lexicon load_lexicon(std::string_view text);
std::string serialize_lexicon(const Lexicon& lexicon);

}  // namespace mn
