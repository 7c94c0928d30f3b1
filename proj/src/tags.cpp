#include "mn/tags.hpp"

#include <algorithm>

namespace mn {

namespace {

struct ModalityName {
  std::string_view name;
  Modality modality;
};

// Longest names first so prefix matching is unambiguous.
constexpr std::array<ModalityName, 11> kNames = {{
    {"Firm_Belief", Modality::FirmBelief},
    {"FirmBelief", Modality::FirmBelief},
    {"Negation", Modality::Negation},
    {"Require", Modality::Require},
    {"Succeed", Modality::Succeed},
    {"Permit", Modality::Permit},
    {"Effort", Modality::Effort},
    {"Intend", Modality::Intend},
    {"Belief", Modality::Belief},
    {"Able", Modality::Able},
    {"Want", Modality::Want},
}};

bool is_dual(Modality m) { return m == Modality::Require || m == Modality::Permit; }

std::string parse_error(std::string_view s, std::string_view bad, std::string_view why) {
  return "invalid tag '" + std::string(s) + "': " + std::string(why) + " '" + std::string(bad) + "'";
}

}  // namespace

std::string_view modality_name(Modality m) {
  switch (m) {
    case Modality::Require: return "Require";
    case Modality::Permit: return "Permit";
    case Modality::Succeed: return "Succeed";
    case Modality::Effort: return "Effort";
    case Modality::Intend: return "Intend";
    case Modality::Able: return "Able";
    case Modality::Want: return "Want";
    case Modality::Belief: return "Belief";
    case Modality::FirmBelief: return "Firm_Belief";
    case Modality::Negation: return "Negation";
  }
  return "";
}

Modality parse_modality(std::string_view s) {
  for (const auto& n : kNames)
    if (n.name == s) return n.modality;
  throw TagError("unknown modality '" + std::string(s) + "'");
}

std::string MNTag::modality_string() const {
  std::string out;
  if (outer_not) out += "NOT";
  out += modality_name(modality);
  if (lexical_negation) out += "Negation";
  return out;
}

std::string MNTag::to_string() const {
  return (role == Role::Trigger ? "Trig" : "Targ") + modality_string();
}

bool MNTag::is_canonical() const {
  if (modality == Modality::Negation) return !outer_not && !lexical_negation;
  return !(is_dual(modality) && lexical_negation);
}

namespace {

// Returns an empty string on success, otherwise the error message.
std::string parse_tag_impl(std::string_view s, MNTag& out) {
  MNTag t;
  std::string_view rest = s;
  if (rest.starts_with("Trig")) {
    t.role = Role::Trigger;
  } else if (rest.starts_with("Targ")) {
    t.role = Role::Target;
  } else {
    return parse_error(s, s.substr(0, 4), "unknown role prefix");
  }
  rest.remove_prefix(4);
  if (rest.starts_with("NOT")) {
    t.outer_not = true;
    rest.remove_prefix(3);
  }
  const ModalityName* found = nullptr;
  for (const auto& n : kNames) {
    if (rest.starts_with(n.name)) {
      found = &n;
      break;
    }
  }
  if (!found) return parse_error(s, rest, "unknown modality");
  t.modality = found->modality;
  rest.remove_prefix(found->name.size());
  if (rest == "Negation") {
    t.lexical_negation = true;
  } else if (!rest.empty()) {
    return parse_error(s, rest, "unexpected suffix");
  }
  if (t.modality == Modality::Negation && (t.outer_not || t.lexical_negation))
    return parse_error(s, s.substr(4), "negation cannot be negated");
  if (!t.is_canonical())
    return parse_error(s, s.substr(4), "non-canonical Require/Permit negation (use the dual)");
  out = t;
  return {};
}

}  // namespace

MNTag parse_tag(std::string_view s) {
  MNTag t;
  std::string err = parse_tag_impl(s, t);
  if (!err.empty()) throw TagError(err);
  return t;
}

bool try_parse_tag(std::string_view s, MNTag& out) { return parse_tag_impl(s, out).empty(); }

MNTag canonicalize(MNTag tag) {
  if (is_dual(tag.modality) && tag.lexical_negation) {
    tag.modality = tag.modality == Modality::Require ? Modality::Permit : Modality::Require;
    tag.outer_not = !tag.outer_not;
    tag.lexical_negation = false;
  }
  return tag;
}

MNTag compose_negation(const MNTag& tag, bool negated) {
  if (tag.modality == Modality::Negation) throw TagError("cannot compose negation onto " + tag.to_string());
  MNTag out = tag;
  if (negated) out.outer_not = !out.outer_not;
  return canonicalize(out);
}

MNTag negate_proposition(const MNTag& tag) {
  if (tag.modality == Modality::Negation) throw TagError("cannot negate the proposition of " + tag.to_string());
  MNTag out = tag;
  out.lexical_negation = !out.lexical_negation;
  return canonicalize(out);
}

int specificity_rank(const MNTag& tag) {
  MNTag t = canonicalize(tag);
  switch (t.modality) {
    case Modality::Require: return t.outer_not ? 1 : 0;
    case Modality::Permit: return t.outer_not ? 3 : 2;
    case Modality::Negation: return 32;
    default: break;
  }
  int block = static_cast<int>(t.modality) - static_cast<int>(Modality::Succeed);
  return 4 + 4 * block + (t.outer_not ? 1 : 0) + (t.lexical_negation ? 2 : 0);
}

std::array<MNTag, kInventorySize> tag_inventory(Role role) {
  std::array<MNTag, kInventorySize> out{};
  std::size_t i = 0;
  for (Modality m : kAllModalities) {
    if (m == Modality::Negation) {
      out[i++] = MNTag{role, false, m, false};
      continue;
    }
    for (bool lex : {false, true}) {
      if (lex && is_dual(m)) continue;
      for (bool neg : {false, true}) out[i++] = MNTag{role, neg, m, lex};
    }
  }
  std::sort(out.begin(), out.end(),
            [](const MNTag& a, const MNTag& b) { return specificity_rank(a) < specificity_rank(b); });
  return out;
}

std::string_view menu_name(MenuModality m) {
  switch (m) {
    case MenuModality::Require: return "Require";
    case MenuModality::Permit: return "Permit";
    case MenuModality::Succeed: return "Succeed";
    case MenuModality::NotSucceed: return "NotSucceed";
    case MenuModality::Try: return "Try";
    case MenuModality::NotTry: return "NotTry";
    case MenuModality::Intend: return "Intend";
    case MenuModality::NotIntend: return "NotIntend";
    case MenuModality::Able: return "Able";
    case MenuModality::NotAble: return "NotAble";
    case MenuModality::Want: return "Want";
    case MenuModality::FirmBelief: return "FirmBelief";
    case MenuModality::Belief: return "Belief";
  }
  return "";
}

std::pair<MNTag, MNTag> menu_choice_to_tags(const AnnotationChoice& choice) {
  Modality base = Modality::Require;
  bool negated = false;
  switch (choice.modality) {
    case MenuModality::Require: base = Modality::Require; break;
    case MenuModality::Permit: base = Modality::Permit; break;
    case MenuModality::Succeed: base = Modality::Succeed; break;
    case MenuModality::NotSucceed: base = Modality::Succeed; negated = true; break;
    case MenuModality::Try: base = Modality::Effort; break;
    case MenuModality::NotTry: base = Modality::Effort; negated = true; break;
    case MenuModality::Intend: base = Modality::Intend; break;
    case MenuModality::NotIntend: base = Modality::Intend; negated = true; break;
    case MenuModality::Able: base = Modality::Able; break;
    case MenuModality::NotAble: base = Modality::Able; negated = true; break;
    case MenuModality::Want: base = Modality::Want; break;
    case MenuModality::FirmBelief: base = Modality::FirmBelief; break;
    case MenuModality::Belief: base = Modality::Belief; break;
  }
  MNTag trigger{Role::Trigger, false, base, false};
  MNTag target = compose_negation(MNTag{Role::Target, false, base, false}, negated);
  if (!choice.target_polarity) target = negate_proposition(target);
  return {trigger, target};
}

}  // namespace mn
