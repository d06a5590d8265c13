#include "cli.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dendroid/caseframe.h"
#include "dendroid/disambiguator.h"
#include "dendroid/errors.h"
#include "dendroid/evaluation.h"
#include "dendroid/mdl_learner.h"
#include "dendroid/model_io.h"
#include "dendroid/random.h"

namespace dendroid::cli {
namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string input;
  std::string model;
  std::string head;
  std::string view = "slot";
  std::size_t min_frames = 50;
  double dep_threshold = 0.25;
  std::size_t folds = 10;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::string format = "text";
  bool raw = false;
  bool conditional = false;
  // simulate
  std::size_t n = 6;
  std::size_t k = 2;
  std::size_t edges = 3;
  double strength = 0.6;
  std::size_t trials = 10;
  std::vector<std::size_t> sizes{25, 50, 100, 200, 400, 800, 1600};
};

class FileError : public DataError {
 public:
  using DataError::DataError;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes to --out when given, otherwise to the command's stream.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw FileError("cannot write '" + cfg.out + "'");
  file << text;
}

std::string fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

View parse_view(const std::string& view) { return view == "value" ? View::kValue : View::kSlot; }

// Frame groups that pass the head filter and the minimum frame count, in
// head order. Reports skipped heads on `err`.
std::map<std::string, std::vector<CaseFrame>> load_groups(const RunConfig& cfg, std::ostream& err) {
  const auto frames = parse_case_frames(read_file(cfg.input));
  auto groups = group_by_head(frames);
  if (!cfg.head.empty()) {
    auto it = groups.find(cfg.head);
    if (it == groups.end()) throw DataError("unknown head '" + cfg.head + "'");
    std::map<std::string, std::vector<CaseFrame>> only;
    only.insert(*it);
    groups.swap(only);
  }
  std::size_t skipped = 0;
  for (auto it = groups.begin(); it != groups.end();) {
    if (it->second.size() < cfg.min_frames) {
      ++skipped;
      it = groups.erase(it);
    } else {
      ++it;
    }
  }
  if (skipped > 0) {
    err << "note: skipped " << skipped << " head(s) with fewer than " << cfg.min_frames << " frames\n";
  }
  return groups;
}

int cmd_learn(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto groups = load_groups(cfg, err);
  const fs::path dir = cfg.out.empty() ? fs::path("models") : fs::path(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw FileError("cannot create directory '" + dir.string() + "'");
  for (const auto& [head, frames] : groups) {
    if (head.find('/') != std::string::npos || head.front() == '.') {
      err << "warning: head '" << head << "' is not usable as a file name; skipped\n";
      continue;
    }
    const auto data = project(frames, parse_view(cfg.view));
    const auto trace = learn_structure_traced(data);
    if (trace.degenerate_sample) err << "warning: head '" << head << "' has a single frame; every threshold is 0\n";
    const auto model = fit_parameters(trace.forest, data);
    const fs::path path = dir / (head + ".model");
    std::ofstream file(path, std::ios::binary);
    if (!file) throw FileError("cannot write '" + path.string() + "'");
    file << serialize(model);
    out << head << ": " << data.num_rows() << " frames, " << data.num_variables() << " slots, "
        << trace.forest.num_edges() << " dependencies -> " << path.string() << "\n";
  }
  return kExitOk;
}

int cmd_show(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto model = deserialize(read_file(cfg.model));
  std::string text = render_pattern(model);
  text += "dependencies:";
  if (model.arcs().empty()) text += " none";
  for (std::size_t a = 0; a < model.arcs().size(); ++a) {
    const auto& arc = model.arcs()[a];
    text += (a == 0 ? " " : ", ") + model.variable(arc.parent).name + " -> " + model.variable(arc.child).name;
  }
  text += "\n";
  emit(cfg, out, text);
  return kExitOk;
}

int cmd_perplexity(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto groups = load_groups(cfg, err);
  std::string text = cfg.format == "csv" ? "head,frames,independent,dendroid,reduction_percent\n"
                                         : pad("Head", 16) + pad("Independent", 14) +
                                               "Dendroid(Reduction in percentage)\n";
  for (const auto& [head, frames] : groups) {
    if (frames.size() < cfg.folds) {
      err << "warning: head '" << head << "' has fewer frames than folds; skipped\n";
      continue;
    }
    const auto data = project(frames, parse_view(cfg.view));
    const auto cv = cross_validate(data, cfg.folds, cfg.seed);
    if (cfg.format == "csv") {
      text += head + "," + std::to_string(frames.size()) + "," + fixed(cv.independent_perplexity, 6) + "," +
              fixed(cv.dendroid_perplexity, 6) + "," + fixed(cv.reduction_percent, 6) + "\n";
    } else {
      text += pad(head, 16) + pad(fixed(cv.independent_perplexity, 2), 14) + fixed(cv.dendroid_perplexity, 2) +
              "(" + fixed(cv.reduction_percent, 0) + "%)\n";
    }
  }
  emit(cfg, out, text);
  return kExitOk;
}

int cmd_deps(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto groups = load_groups(cfg, err);
  DependencyReportOptions options;
  options.raw_frequencies = cfg.raw;
  options.conditional = cfg.conditional;
  std::string text = cfg.format == "csv" ? "head,slot_i,slot_j,score\n"
                                         : pad("Head", 16) + pad("Dependent slots", 24) + "Score\n";
  for (const auto& [head, frames] : groups) {
    const auto data = project(frames, View::kSlot);
    for (const auto& entry : dependency_report(data, cfg.dep_threshold, options)) {
      if (cfg.format == "csv") {
        text += head + "," + entry.slot_i + "," + entry.slot_j + "," + fixed(entry.score, 6) + "\n";
      } else {
        text += pad(head, 16) + pad(entry.slot_i + " " + entry.slot_j, 24) + fixed(entry.score, 3) + "\n";
      }
    }
  }
  emit(cfg, out, text);
  return kExitOk;
}

class ModelStore {
 public:
  explicit ModelStore(fs::path dir) : dir_(std::move(dir)) {}

  // Null when no model file exists for the head.
  const DendroidModel* find(const std::string& head) {
    auto it = cache_.find(head);
    if (it != cache_.end()) return it->second.get();
    std::unique_ptr<DendroidModel> model;
    const fs::path path = dir_ / (head + ".model");
    if (head.find('/') == std::string::npos && fs::is_regular_file(path)) {
      model = std::make_unique<DendroidModel>(deserialize(read_file(path.string())));
    }
    return cache_.emplace(head, std::move(model)).first->second.get();
  }

 private:
  fs::path dir_;
  std::map<std::string, std::unique_ptr<DendroidModel>> cache_;
};

struct Tally {
  std::size_t correct = 0;
  std::size_t total = 0;

  void add(bool ok) {
    correct += ok;
    ++total;
  }
  std::string str() const {
    return std::to_string(correct) + "/" + std::to_string(total) + "(" +
           (total ? fixed(100.0 * static_cast<double>(correct) / static_cast<double>(total), 1) : std::string("-")) +
           ")";
  }
};

int cmd_attach(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (!fs::is_directory(cfg.model)) throw FileError("model directory '" + cfg.model + "' does not exist");
  std::istringstream in(read_file(cfg.input));
  const auto tuples = parse_attachment_tuples(in);
  ModelStore store(cfg.model);

  AttachOptions options;
  options.dep_threshold = cfg.dep_threshold;
  AttachOptions baseline = options;
  baseline.dep_threshold = 1.0;  // the joint can never exceed 1

  const bool csv = cfg.format == "csv";
  std::string text = csv ? "line,tuple,verdict,rule,joint,verb_score,noun_score,baseline,gold\n"
                         : pad("Line", 6) + pad("Tuple", 40) + pad("Verdict", 14) + pad("Rule", 22) +
                               pad("Baseline", 10) + "Gold\n";
  Tally gated_dendroid, gated_independent, overall, overall_independent;
  for (const auto& t : tuples) {
    const DendroidModel* verb = store.find(t.verb);
    if (!verb) throw DataError("line " + std::to_string(t.line) + ": no model for head '" + t.verb + "'");
    AttachmentDecision d, b;
    std::string shown;
    if (t.kind == AttachmentTuple::Kind::kSingle) {
      const DendroidModel* noun = store.find(t.noun1);
      d = attach_single(*verb, noun, t.prep1, options);
      b = attach_single(*verb, noun, t.prep1, baseline);
      shown = "v " + t.verb + " " + t.noun1 + " " + t.prep1 + " " + t.noun2;
    } else {
      const std::array<const DendroidModel*, 2> nouns{nullptr, store.find(t.noun1)};
      d = attach_double(*verb, t.prep1, t.prep2, nouns, options);
      b = attach_double(*verb, t.prep1, t.prep2, nouns, baseline);
      shown = "v2 " + t.verb + " " + t.prep1 + " " + t.noun1 + " " + t.prep2 + " " + t.noun2;
    }
    const std::string verdict(gold_label(d.resolved));
    const std::string base(gold_label(b.resolved));
    if (t.gold) {
      overall.add(verdict == *t.gold);
      overall_independent.add(base == *t.gold);
      if (d.rule == Rule::kDependency) {
        gated_dendroid.add(verdict == *t.gold);
        gated_independent.add(base == *t.gold);
      }
    }
    if (csv) {
      text += std::to_string(t.line) + "," + shown + "," + std::string(to_string(d.verdict)) + "," +
              std::string(to_string(d.rule)) + "," + fixed(d.joint, 6) + "," + fixed(d.verb_score, 6) + "," +
              fixed(d.noun_score, 6) + "," + base + "," + t.gold.value_or("") + "\n";
    } else {
      text += pad(std::to_string(t.line), 6) + pad(shown, 40) + pad(std::string(to_string(d.verdict)), 14) +
              pad(std::string(to_string(d.rule)), 22) + pad(base, 10) + t.gold.value_or("-") + "\n";
    }
  }
  if (!csv && overall.total > 0) {
    text += "\nTuples where the dependency rule fired: " + std::to_string(gated_dendroid.total) + "\n";
    text += pad("", 14) + "Accuracy(%)\n";
    text += pad("Dendroid", 14) + gated_dendroid.str() + "\n";
    text += pad("Independent", 14) + gated_independent.str() + "\n";
    text += "\nAll labelled tuples: " + std::to_string(overall.total) + "\n";
    text += pad("Dendroid", 14) + overall.str() + "\n";
    text += pad("Independent", 14) + overall_independent.str() + "\n";
  }
  emit(cfg, out, text);
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  RandomModelOptions options;
  options.strength = cfg.strength;
  const auto truth = make_random_dendroid(cfg.n, cfg.k, cfg.edges, derive_seed(cfg.seed, 0), options);
  const auto rows = learning_curve(truth, cfg.sizes, cfg.trials, derive_seed(cfg.seed, 1));
  emit(cfg, out, learning_curve_csv(rows));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Learn and apply dendroid case frame patterns"};
  app.require_subcommand(1);

  auto add_input = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("--input", cfg.input, what)->required();
  };
  auto add_frames_filters = [&](CLI::App* sub) {
    sub->add_option("--head", cfg.head, "Only process this head");
    sub->add_option("--min-frames", cfg.min_frames, "Skip heads with fewer frames")->capture_default_str();
  };
  auto add_view = [&](CLI::App* sub) {
    sub->add_option("--view", cfg.view, "Slot-based (presence) or value-based variables")
        ->check(CLI::IsMember({"slot", "value"}))
        ->capture_default_str();
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "csv"}))->capture_default_str();
  };
  auto add_threshold = [&](CLI::App* sub) {
    sub->add_option("--dep-threshold", cfg.dep_threshold, "Score a dependency must exceed")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Seed for all randomness")->capture_default_str();
  };

  auto* learn = app.add_subcommand("learn", "Learn one model file per head from case frames");
  add_input(learn, "Case-frame file");
  add_frames_filters(learn);
  add_view(learn);
  learn->add_option("--out", cfg.out, "Output directory (default: models)");

  auto* show = app.add_subcommand("show", "Print a model as a case frame pattern");
  show->add_option("--model", cfg.model, "Model file")->required();
  show->add_option("--out", cfg.out, "Output file");

  auto* perplexity_cmd = app.add_subcommand("perplexity", "Cross-validated test perplexity per head");
  add_input(perplexity_cmd, "Case-frame file");
  add_frames_filters(perplexity_cmd);
  add_view(perplexity_cmd);
  add_format(perplexity_cmd);
  add_seed(perplexity_cmd);
  perplexity_cmd->add_option("--folds", cfg.folds)->check(CLI::PositiveNumber)->capture_default_str();
  perplexity_cmd->add_option("--out", cfg.out, "Output file");

  auto* deps = app.add_subcommand("deps", "Report positively dependent slot pairs");
  add_input(deps, "Case-frame file");
  add_frames_filters(deps);
  add_threshold(deps);
  add_format(deps);
  deps->add_flag("--raw", cfg.raw, "Use raw frequencies instead of smoothed estimates");
  deps->add_flag("--conditional", cfg.conditional, "Score P(a=1|b=1) instead of P(a=1,b=1)");
  deps->add_option("--out", cfg.out, "Output file");

  auto* attach = app.add_subcommand("attach", "Decide PP attachment for test tuples");
  add_input(attach, "Tuple file");
  attach->add_option("--model", cfg.model, "Directory of <head>.model files")->required();
  add_threshold(attach);
  add_format(attach);
  attach->add_option("--out", cfg.out, "Output file");

  auto* simulate = app.add_subcommand("simulate", "Learning curve on a synthetic dendroid model");
  add_seed(simulate);
  simulate->add_option("--n", cfg.n, "Variables")->check(CLI::PositiveNumber)->capture_default_str();
  simulate->add_option("--k", cfg.k, "Values per variable")->check(CLI::PositiveNumber)->capture_default_str();
  simulate->add_option("--edges", cfg.edges, "Dependencies in the true model")->capture_default_str();
  simulate->add_option("--strength", cfg.strength, "Dependence strength in [0, 1)")->capture_default_str();
  simulate->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber)->capture_default_str();
  simulate->add_option("--sizes", cfg.sizes, "Comma-separated data sizes")->delimiter(',');
  simulate->add_option("--out", cfg.out, "Output CSV file");

  std::vector<std::string> reversed;
  if (!args.empty()) reversed.assign(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*learn) return cmd_learn(cfg, out, err);
    if (*show) return cmd_show(cfg, out, err);
    if (*perplexity_cmd) return cmd_perplexity(cfg, out, err);
    if (*deps) return cmd_deps(cfg, out, err);
    if (*attach) return cmd_attach(cfg, out, err);
    if (*simulate) return cmd_simulate(cfg, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace dendroid::cli
