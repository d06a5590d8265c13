#include "dendroid/model_io.h"

#include <charconv>
#include <cmath>
#include <sstream>
#include <utility>

#include "dendroid/errors.h"

namespace dendroid {
namespace {

constexpr std::string_view kIndent = "           ";

std::string format_probability(double p, Precision precision) {
  char buf[64];
  auto res = precision == Precision::kLossless
                 ? std::to_chars(buf, buf + sizeof buf, p)
                 : std::to_chars(buf, buf + sizeof buf, p, std::chars_format::fixed, 6);
  return std::string(buf, res.ptr);
}

std::string cell(const std::string& label, double p, Precision precision) {
  return "[P(" + label + ")=" + format_probability(p, precision) + "]";
}

std::string blocks(const DendroidModel& model, Precision precision) {
  std::string out;
  for (std::size_t v = 0; v < model.num_variables(); ++v) {
    const auto& var = model.variable(v);
    const std::vector<double> marginal =
        model.is_root(v) ? std::vector<double>(model.table(v).begin(), model.table(v).end())
                         : model.marginal(v);
    out += "[" + var.name + "]:";
    for (std::size_t x = 0; x < var.size(); ++x) {
      out += " " + cell(var.name + "=" + var.domain[x], marginal[x], precision);
    }
    out += "\n";
    for (std::size_t c : model.children(v)) {
      const auto& child = model.variable(c);
      for (std::size_t a = 0; a < var.size(); ++a) {
        out += kIndent;
        for (std::size_t b = 0; b < child.size(); ++b) {
          if (b > 0) out += " ";
          out += cell(child.name + "=" + child.domain[b] + "|" + var.name + "=" + var.domain[a],
                      model.conditional(c, static_cast<ValueIndex>(b), static_cast<ValueIndex>(a)),
                      precision);
        }
        out += "\n";
      }
    }
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_spaces(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    s = trim(s);
    if (s.empty()) break;
    auto end = s.find_first_of(" \t");
    out.push_back(s.substr(0, end));
    if (end == std::string_view::npos) break;
    s.remove_prefix(end);
  }
  return out;
}

struct Cell {
  std::string_view label;
  double value;
};

std::vector<Cell> parse_cells(std::string_view text, std::size_t line) {
  std::vector<Cell> cells;
  while (true) {
    text = trim(text);
    if (text.empty()) break;
    if (text.front() != '[') throw ParseError(line, "expected '[' to open a probability cell");
    auto close = text.find(']');
    if (close == std::string_view::npos) throw ParseError(line, "unterminated probability cell");
    std::string_view inner = text.substr(1, close - 1);
    text.remove_prefix(close + 1);
    auto eq = inner.rfind(")=");
    if (inner.size() < 2 || (inner.substr(0, 2) != "P(" && inner.substr(0, 2) != "p(") ||
        eq == std::string_view::npos) {
      throw ParseError(line, "malformed probability cell '[" + std::string(inner) + "]'");
    }
    const std::string_view number = trim(inner.substr(eq + 2));
    double value = 0.0;
    auto res = std::from_chars(number.data(), number.data() + number.size(), value);
    if (res.ec != std::errc() || res.ptr != number.data() + number.size()) {
      throw ParseError(line, "malformed probability '" + std::string(number) + "'");
    }
    cells.push_back({inner.substr(2, eq - 2), value});
  }
  return cells;
}

void check_row(const std::vector<Cell>& cells, std::size_t line) {
  double sum = 0.0;
  for (const auto& c : cells) {
    if (!std::isfinite(c.value) || c.value <= 0.0) {
      throw ParseError(line, "probability must be positive: " + std::string(c.label));
    }
    sum += c.value;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ParseError(line, "probabilities sum to " + std::to_string(sum) + ", not 1");
  }
}

class ModelParser {
 public:
  DendroidModel parse(std::istream& in) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_;
      handle(raw);
    }
    return finish();
  }

 private:
  void handle(std::string_view raw) {
    const std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') return;
    if (!has_header_) return header(text);
    const bool indented = raw.front() == ' ' || raw.front() == '\t';
    if (indented) return conditional_row(text);
    if (text.substr(0, 7) == "domain ") return domain(text);
    if (text.front() == '[') return marginal_row(text);
    fail("unrecognized line");
  }

  void header(std::string_view text) {
    auto tokens = split_spaces(text);
    if (tokens[0] != kModelFormatTag) {
      if (tokens[0].substr(0, 10) == "dendroid-v") {
        fail("unsupported model format version '" + std::string(tokens[0]) + "'");
      }
      fail("missing '" + std::string(kModelFormatTag) + "' header");
    }
    bool have_head = false, have_n = false;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      if (tokens[t].substr(0, 5) == "head=" && tokens[t].size() > 5) {
        head_ = std::string(tokens[t].substr(5));
        have_head = true;
      } else if (tokens[t].substr(0, 2) == "N=") {
        auto digits = tokens[t].substr(2);
        auto res = std::from_chars(digits.data(), digits.data() + digits.size(), sample_count_);
        if (res.ec != std::errc() || res.ptr != digits.data() + digits.size()) fail("malformed N");
        have_n = true;
      } else {
        fail("unexpected header field '" + std::string(tokens[t]) + "'");
      }
    }
    if (!have_head || !have_n) fail("header needs head=<token> and N=<count>");
    has_header_ = true;
  }

  void domain(std::string_view text) {
    if (!marginals_.empty()) fail("domain line after probability blocks");
    auto tokens = split_spaces(text);
    if (tokens.size() < 3) fail("domain line needs a variable name and at least one value");
    Variable v{std::string(tokens[1]), {}};
    for (std::size_t t = 2; t < tokens.size(); ++t) {
      if (v.index_of(tokens[t])) fail("duplicate value '" + std::string(tokens[t]) + "'");
      v.domain.emplace_back(tokens[t]);
    }
    for (const auto& existing : variables_) {
      if (existing.name == v.name) fail("duplicate variable '" + v.name + "'");
    }
    variables_.push_back(std::move(v));
    parents_.emplace_back();
    conditionals_.emplace_back();
  }

  void marginal_row(std::string_view text) {
    auto colon = text.find("]:");
    if (colon == std::string_view::npos) fail("expected '[variable]:'");
    const std::string_view name = text.substr(1, colon - 1);
    const std::size_t v = marginals_.size();
    if (v >= variables_.size()) fail("unexpected block for '" + std::string(name) + "'");
    const auto& var = variables_[v];
    if (name != var.name) fail("expected block for '" + var.name + "', found '" + std::string(name) + "'");
    auto cells = parse_cells(text.substr(colon + 2), line_);
    if (cells.size() != var.size()) fail("block for '" + var.name + "' has the wrong number of cells");
    std::vector<double> probs;
    for (std::size_t x = 0; x < var.size(); ++x) {
      if (cells[x].label != var.name + "=" + var.domain[x]) {
        fail("unexpected cell 'P(" + std::string(cells[x].label) + ")'");
      }
      probs.push_back(cells[x].value);
    }
    check_row(cells, line_);
    marginals_.push_back(std::move(probs));
  }

  void conditional_row(std::string_view text) {
    if (marginals_.empty()) fail("conditional row outside a variable block");
    const std::size_t p = marginals_.size() - 1;
    auto cells = parse_cells(text, line_);
    if (cells.empty()) fail("empty conditional row");
    const std::string_view child_name = cells[0].label.substr(0, cells[0].label.find('='));
    std::size_t c = variables_.size();
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (variables_[i].name == child_name) c = i;
    }
    if (c == variables_.size()) fail("unknown variable '" + std::string(child_name) + "'");
    if (c == p) fail("variable '" + variables_[c].name + "' conditioned on itself");
    if (parents_[c] && *parents_[c] != p) fail("variable '" + variables_[c].name + "' has two parents");
    parents_[c] = p;

    const auto& child = variables_[c];
    const auto& parent = variables_[p];
    const std::size_t a = conditionals_[c].size() / child.size();
    if (a >= parent.size()) fail("too many conditional rows for '" + child.name + "'");
    if (cells.size() != child.size()) fail("conditional row for '" + child.name + "' has the wrong number of cells");
    for (std::size_t b = 0; b < child.size(); ++b) {
      const std::string expected = child.name + "=" + child.domain[b] + "|" + parent.name + "=" + parent.domain[a];
      if (cells[b].label != expected) fail("expected cell 'P(" + expected + ")'");
      conditionals_[c].push_back(cells[b].value);
    }
    check_row(cells, line_);
  }

  DendroidModel finish() {
    if (!has_header_) fail("missing '" + std::string(kModelFormatTag) + "' header");
    if (variables_.empty()) fail("model declares no variables");
    if (marginals_.size() != variables_.size()) {
      fail("truncated model: missing block for '" + variables_[marginals_.size()].name + "'");
    }
    std::vector<Arc> arcs;
    std::vector<std::vector<double>> tables(variables_.size());
    for (std::size_t v = 0; v < variables_.size(); ++v) {
      if (!parents_[v]) {
        tables[v] = std::move(marginals_[v]);
        continue;
      }
      const std::size_t rows = variables_[*parents_[v]].size();
      if (conditionals_[v].size() != rows * variables_[v].size()) {
        fail("truncated model: conditional table of '" + variables_[v].name + "' is incomplete");
      }
      arcs.push_back({*parents_[v], v});
      tables[v] = std::move(conditionals_[v]);
    }
    try {
      return DendroidModel(head_, variables_, std::move(arcs), std::move(tables), sample_count_);
    } catch (const DataError& e) {
      fail(e.what());
    }
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, message); }

  std::size_t line_ = 0;
  bool has_header_ = false;
  std::string head_;
  std::size_t sample_count_ = 0;
  std::vector<Variable> variables_;
  std::vector<std::optional<std::size_t>> parents_;
  std::vector<std::vector<double>> marginals_;
  std::vector<std::vector<double>> conditionals_;
};

}  // namespace

std::string serialize(const DendroidModel& model, Precision precision) {
  std::string out = std::string(kModelFormatTag) + " head=" + model.head() +
                    " N=" + std::to_string(model.sample_count()) + "\n";
  for (const auto& var : model.variables()) {
    out += "domain " + var.name;
    for (const auto& value : var.domain) out += " " + value;
    out += "\n";
  }
  return out + blocks(model, precision);
}

DendroidModel deserialize(std::istream& in) { return ModelParser().parse(in); }

DendroidModel deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  return deserialize(in);
}

std::string render_pattern(const DendroidModel& model) {
  return model.head() + ":\n" + blocks(model, Precision::kDisplay);
}

}  // namespace dendroid
