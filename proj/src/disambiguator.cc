#include "dendroid/disambiguator.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dendroid/errors.h"

namespace dendroid {
namespace {

std::optional<ValueIndex> presence_index(const DendroidModel& model, std::size_t v) {
  const auto& var = model.variable(v);
  auto one = var.index_of(kPresent);
  if (var.size() != 2 || !one || !var.index_of(kAbsent)) {
    throw DataError("model '" + model.head() + "' is not slot-based: '" + var.name + "' is not {0, 1}");
  }
  return one;
}

struct Gate {
  bool fires = false;
  double joint = 0.0;
  double product = 0.0;
};

// Positive dependence between two slots of one model, with the joint
// presence probability compared against the threshold.
Gate dependency_gate(const DendroidModel& model, std::string_view a, std::string_view b,
                     double threshold) {
  Gate gate;
  auto i = model.find_variable(a);
  auto j = model.find_variable(b);
  if (!i || !j || *i == *j) return gate;
  const ValueIndex pi = *presence_index(model, *i);
  const ValueIndex pj = *presence_index(model, *j);
  const auto pair = model.pair_marginal(*i, *j);
  gate.joint = pair[pi * model.variable(*j).size() + pj];
  gate.product = model.marginal(*i)[pi] * model.marginal(*j)[pj];
  gate.fires = gate.joint > gate.product && gate.joint > threshold;
  return gate;
}

Verdict resolve(Verdict v, const AttachOptions& options) {
  return v == Verdict::kUndecided ? options.tie_default : v;
}

}  // namespace

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kVerb: return "verb";
    case Verdict::kNoun: return "noun";
    case Verdict::kBothToVerb: return "both-to-verb";
    case Verdict::kUndecided: return "undecided";
  }
  return "?";
}

std::string_view to_string(Rule rule) {
  return rule == Rule::kDependency ? "dependency" : "independent-baseline";
}

double slot_presence(const DendroidModel& model, std::string_view slot) {
  auto v = model.find_variable(slot);
  if (!v) return 0.5 / (static_cast<double>(model.sample_count()) + 1.0);
  return model.marginal(*v)[*presence_index(model, *v)];
}

AttachmentDecision attach_single(const DendroidModel& verb_model, const DendroidModel* noun_model,
                                 std::string_view prep, const AttachOptions& options) {
  const bool verb_knows = verb_model.find_variable(prep).has_value();
  const bool noun_knows = noun_model && noun_model->find_variable(prep).has_value();
  if (!verb_knows && !noun_knows) {
    throw DataError("slot '" + std::string(prep) + "' is unknown to both '" + verb_model.head() + "'" +
                    (noun_model ? " and '" + noun_model->head() + "'" : std::string()));
  }

  AttachmentDecision d;
  const Gate gate = dependency_gate(verb_model, options.object_slot, prep, options.dep_threshold);
  d.joint = gate.joint;
  d.marginal_product = gate.product;
  d.verb_score = slot_presence(verb_model, prep);
  d.noun_score = noun_model ? slot_presence(*noun_model, prep) : 0.0;
  if (gate.fires) {
    d.verdict = Verdict::kVerb;
    d.rule = Rule::kDependency;
  } else {
    d.rule = Rule::kIndependentBaseline;
    d.verdict = d.verb_score > d.noun_score   ? Verdict::kVerb
                : d.noun_score > d.verb_score ? Verdict::kNoun
                                              : Verdict::kUndecided;
  }
  d.resolved = resolve(d.verdict, options);
  return d;
}

AttachmentDecision attach_double(const DendroidModel& verb_model, std::string_view prep1,
                                 std::string_view prep2,
                                 const std::array<const DendroidModel*, 2>& noun_models,
                                 const AttachOptions& options) {
  if (prep1 == prep2) throw std::invalid_argument("attach_double needs two different prepositions");
  AttachmentDecision d;
  const Gate gate = dependency_gate(verb_model, prep1, prep2, options.dep_threshold);
  d.joint = gate.joint;
  d.marginal_product = gate.product;
  d.verb_score = slot_presence(verb_model, prep2);
  d.noun_score = noun_models[1] ? slot_presence(*noun_models[1], prep2) : 0.0;
  if (gate.fires) {
    d.verdict = d.resolved = Verdict::kBothToVerb;
    d.rule = Rule::kDependency;
    return d;
  }
  d.rule = Rule::kIndependentBaseline;
  d.sites.push_back(attach_single(verb_model, noun_models[0], prep1, options));
  d.sites.push_back(attach_single(verb_model, noun_models[1], prep2, options));
  const auto& first = d.sites[0];
  const auto& second = d.sites[1];
  d.verdict = first.verdict == Verdict::kVerb && second.verdict == Verdict::kVerb ? Verdict::kBothToVerb
                                                                                   : second.verdict;
  d.resolved = first.resolved == Verdict::kVerb && second.resolved == Verdict::kVerb
                   ? Verdict::kBothToVerb
                   : second.resolved;
  return d;
}

LikelihoodComparison compare_likelihood(
    const DendroidModel& model_a, const Assignment& row_a,
    const std::vector<std::pair<const DendroidModel*, Assignment>>& product) {
  LikelihoodComparison out;
  out.log2_first = std::log2(model_a.evidence_probability(model_a.encode_partial(row_a)));
  for (const auto& [model, row] : product) {
    if (!model) throw std::invalid_argument("compare_likelihood: null model in product");
    out.log2_second += std::log2(model->evidence_probability(model->encode_partial(row)));
  }
  out.choice = out.log2_first > out.log2_second   ? Choice::kFirst
               : out.log2_second > out.log2_first ? Choice::kSecond
                                                  : Choice::kTie;
  return out;
}

std::vector<AttachmentTuple> parse_attachment_tuples(std::istream& in) {
  std::vector<AttachmentTuple> tuples;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream fields(raw);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty() || tok[0].front() == '#') continue;

    AttachmentTuple t;
    t.line = number;
    std::size_t arity = 0;
    if (tok[0] == "v") {
      t.kind = AttachmentTuple::Kind::kSingle;
      arity = 5;
    } else if (tok[0] == "v2") {
      t.kind = AttachmentTuple::Kind::kDouble;
      arity = 6;
    } else {
      throw ParseError(number, "tuple must start with 'v' or 'v2', found '" + tok[0] + "'");
    }
    if (tok.size() != arity && tok.size() != arity + 1) {
      throw ParseError(number, "'" + tok[0] + "' tuple needs " + std::to_string(arity - 1) +
                                   " fields plus an optional gold label");
    }
    t.verb = tok[1];
    if (t.kind == AttachmentTuple::Kind::kSingle) {
      t.noun1 = tok[2];
      t.prep1 = tok[3];
      t.noun2 = tok[4];
    } else {
      t.prep1 = tok[2];
      t.noun1 = tok[3];
      t.prep2 = tok[4];
      t.noun2 = tok[5];
      if (t.prep1 == t.prep2) throw ParseError(number, "both prepositions are '" + t.prep1 + "'");
    }
    if (tok.size() == arity + 1) {
      const std::string& g = tok[arity];
      const bool valid = g == "V" || g == "N" || (g == "VV" && t.kind == AttachmentTuple::Kind::kDouble);
      if (!valid) throw ParseError(number, "invalid gold label '" + g + "'");
      t.gold = g;
    }
    tuples.push_back(std::move(t));
  }
  return tuples;
}

std::string_view gold_label(Verdict verdict) {
  switch (verdict) {
    case Verdict::kVerb: return "V";
    case Verdict::kNoun: return "N";
    case Verdict::kBothToVerb: return "VV";
    case Verdict::kUndecided: return "?";
  }
  return "?";
}

}  // namespace dendroid
