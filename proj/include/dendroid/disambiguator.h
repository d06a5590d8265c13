#ifndef DENDROID_DISAMBIGUATOR_H_
#define DENDROID_DISAMBIGUATOR_H_

#include <array>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dendroid/dendroid_model.h"

namespace dendroid {

enum class Verdict { kVerb, kNoun, kBothToVerb, kUndecided };
enum class Rule { kDependency, kIndependentBaseline };

std::string_view to_string(Verdict verdict);
std::string_view to_string(Rule rule);

struct AttachmentDecision {
  Verdict verdict = Verdict::kUndecided;
  Rule rule = Rule::kIndependentBaseline;
  // Dependency gate inputs: P(a=1, b=1) and P(a=1) P(b=1) under the verb
  // model (arg2/prep for single sites, prep1/prep2 for double sites).
  double joint = 0.0;
  double marginal_product = 0.0;
  // Baseline inputs: P_verb(prep=1) and P_noun(prep=1).
  double verb_score = 0.0;
  double noun_score = 0.0;
  // Verdict to act on when `verdict` is kUndecided; otherwise equal to it.
  Verdict resolved = Verdict::kUndecided;
  // attach_double only: the two per-site decisions when the gate did not fire.
  std::vector<AttachmentDecision> sites;
};

struct AttachOptions {
  double dep_threshold = 0.25;
  // Verdict used to resolve exact ties (right association by default).
  Verdict tie_default = Verdict::kNoun;
  // Slot holding the direct object.
  std::string object_slot = "arg2";
};

// P(slot=1) under a slot-view model. A slot the model lacks gets the
// smoothed probability of a never-observed slot, 0.5 / (N + 1).
double slot_presence(const DendroidModel& model, std::string_view slot);

// Decides whether "prep noun2" in (verb noun1 prep noun2) attaches to the
// verb or to noun1. When the verb model makes the object slot and prep
// positively dependent with P(object=1, prep=1) > dep_threshold the phrase
// is attached to the verb (dependency rule); otherwise P_verb(prep=1) is
// compared against P_noun(prep=1). `noun_model` may be null (the noun was
// never seen as a head), which scores the noun side 0. Throws DataError when
// neither model knows the slot.
AttachmentDecision attach_single(const DendroidModel& verb_model, const DendroidModel* noun_model,
                                 std::string_view prep, const AttachOptions& options = {});

// Decides (verb prep1 noun1 prep2 noun2). If the verb model makes prep1 and
// prep2 positively dependent with P(prep1=1, prep2=1) > dep_threshold, both
// phrases go to the verb. Otherwise each site is decided by attach_single
// with its own noun model (site 0: competitor preceding prep1, usually
// absent; site 1: noun1); the overall verdict is kBothToVerb when both sites
// go to the verb, else site 1's verdict. prep1 == prep2 is rejected with
// std::invalid_argument.
AttachmentDecision attach_double(const DendroidModel& verb_model, std::string_view prep1,
                                 std::string_view prep2,
                                 const std::array<const DendroidModel*, 2>& noun_models,
                                 const AttachOptions& options = {});

enum class Choice { kFirst, kSecond, kTie };

struct LikelihoodComparison {
  Choice choice = Choice::kTie;
  double log2_first = 0.0;
  double log2_second = 0.0;
};

using Assignment = std::map<std::string, std::string>;

// Compares P_a(row_a) against the product of P_m(row_m) over `product`.
// Assignments may be partial; unlisted variables are summed out.
LikelihoodComparison compare_likelihood(const DendroidModel& model_a, const Assignment& row_a,
                                        const std::vector<std::pair<const DendroidModel*, Assignment>>& product);

// One line of a test-tuple file:
//   v  <verb> <noun1> <prep> <noun2> [V|N]
//   v2 <verb> <prep1> <noun1> <prep2> <noun2> [V|N|VV]
struct AttachmentTuple {
  enum class Kind { kSingle, kDouble };
  Kind kind = Kind::kSingle;
  std::string verb;
  std::string noun1;
  std::string noun2;
  std::string prep1;  // the only preposition of a single tuple
  std::string prep2;
  std::optional<std::string> gold;
  std::size_t line = 0;
};

// Blank and '#' lines are skipped. Throws ParseError with the line number.
std::vector<AttachmentTuple> parse_attachment_tuples(std::istream& in);

// Gold-label spelling of a resolved verdict: V, N, VV (or "?" if undecided).
std::string_view gold_label(Verdict verdict);

}  // namespace dendroid

#endif  // DENDROID_DISAMBIGUATOR_H_
