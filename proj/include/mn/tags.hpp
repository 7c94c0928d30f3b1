#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace mn {

class TagError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Listed from most to least specific.
enum class Modality {
  Require,
  Permit,
  Succeed,
  Effort,
  Intend,
  Able,
  Want,
  Belief,
  FirmBelief,
  Negation,
};

inline constexpr std::array<Modality, 10> kAllModalities = {
    Modality::Require, Modality::Permit, Modality::Succeed, Modality::Effort,     Modality::Intend,
    Modality::Able,    Modality::Want,   Modality::Belief,  Modality::FirmBelief, Modality::Negation,
};

/// Name as used in tag strings ("Firm_Belief" for FirmBelief).
std::string_view modality_name(Modality m);
/// Accepts the tag-string names plus "FirmBelief"; throws TagError otherwise.
Modality parse_modality(std::string_view s);

enum class Role { Trigger, Target };

/// Composite modality/negation tag, e.g. TargNOTSucceedNegation.
///
/// outer_not is negation scoping over the modality ("did not manage");
/// lexical_negation is negation of the proposition, either inherent in the
/// trigger ("failed") or chosen as false target polarity.
struct MNTag {
  Role role = Role::Trigger;
  bool outer_not = false;
  Modality modality = Modality::Negation;
  bool lexical_negation = false;

  std::string to_string() const;
  /// Tag string without the Trig/Targ prefix ("NOTAble").
  std::string modality_string() const;
  bool is_canonical() const;

  friend auto operator<=>(const MNTag&, const MNTag&) = default;
};

MNTag parse_tag(std::string_view s);
/// Non-throwing variant for marker scanning.
bool try_parse_tag(std::string_view s, MNTag& out);

/// Rewrites RequireNegation/PermitNegation through the Require/Permit duality.
MNTag canonicalize(MNTag tag);

/// Negation scoping over the modality: toggles outer_not when negated.
/// Throws TagError for a bare Negation tag.
MNTag compose_negation(const MNTag& tag, bool negated);

/// Negation of the proposition: toggles lexical_negation, then canonicalizes.
MNTag negate_proposition(const MNTag& tag);

/// 0 is the highest precedence (Require), 32 the lowest (Negation). Role does
/// not participate; ranks follow the row order of the modality tag table.
int specificity_rank(const MNTag& tag);

/// Number of role-free tag strings in the inventory.
inline constexpr int kInventorySize = 33;
/// All canonical tags for one role, ordered by specificity_rank.
std::array<MNTag, kInventorySize> tag_inventory(Role role);

/// The thirteen annotation menu entries.
enum class MenuModality {
  Require,
  Permit,
  Succeed,
  NotSucceed,
  Try,
  NotTry,
  Intend,
  NotIntend,
  Able,
  NotAble,
  Want,
  FirmBelief,
  Belief,
};

inline constexpr std::array<MenuModality, 13> kMenu = {
    MenuModality::Require, MenuModality::Permit,    MenuModality::Succeed,    MenuModality::NotSucceed,
    MenuModality::Try,     MenuModality::NotTry,    MenuModality::Intend,     MenuModality::NotIntend,
    MenuModality::Able,    MenuModality::NotAble,   MenuModality::Want,       MenuModality::FirmBelief,
    MenuModality::Belief,
};

struct AnnotationChoice {
  MenuModality modality = MenuModality::Require;
  bool target_polarity = true;
};

std::string_view menu_name(MenuModality m);

/// Trigger and target tags for a menu choice. The trigger carries the bare
/// modality; negation and polarity land on the target.
std::pair<MNTag, MNTag> menu_choice_to_tags(const AnnotationChoice& choice);

}  // namespace mn
