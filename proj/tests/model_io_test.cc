#include "dendroid/model_io.h"

#include <sstream>

#include "doctest.h"
#include "dendroid/errors.h"
#include "dendroid/evaluation.h"
#include "dendroid/mdl_learner.h"
#include "test_util.h"

namespace dendroid {
namespace {

DendroidModel two_slot_model() {
  Variable arg1{"arg1", {"0", "1"}}, to{"to", {"0", "1"}};
  return DendroidModel("fly", {arg1, to}, {{0, 1}}, {{0.25, 0.75}, {0.5, 0.5, 0.2, 0.8}}, 9);
}

std::size_t error_line(const std::string& text) {
  try {
    deserialize(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

TEST_CASE("lossless round trip on random models") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 1 + seed % 6;
    const std::size_t k = 2 + seed % 3;
    const auto m = make_random_dendroid(n, k, seed % n, seed);
    CHECK(deserialize(serialize(m)) == m);
  }
  const auto learned = learn_model(testing::fly(View::kValue));
  CHECK(deserialize(serialize(learned)) == learned);
  std::istringstream in(serialize(learned));
  CHECK(deserialize(in) == learned);
}

TEST_CASE("display format shape") {
  Variable arg1{"arg1", {"0", "1"}};
  DendroidModel m("buy", {arg1}, {}, {{0.000571, 0.999429}}, 1750);
  const auto text = serialize(m, Precision::kDisplay);
  CHECK(text ==
        "dendroid-v1 head=buy N=1750\n"
        "domain arg1 0 1\n"
        "[arg1]: [P(arg1=0)=0.000571] [P(arg1=1)=0.999429]\n");
  CHECK(render_pattern(m) == "buy:\n[arg1]: [P(arg1=0)=0.000571] [P(arg1=1)=0.999429]\n");

  const auto chain = serialize(two_slot_model(), Precision::kDisplay);
  CHECK(chain.find("[P(to=1|arg1=1)=0.800000]") != std::string::npos);
  CHECK(chain.find("[to]: [P(to=0)=0.275000] [P(to=1)=0.725000]") != std::string::npos);
}

TEST_CASE("malformed files are rejected with a line number") {
  const std::string good = serialize(two_slot_model());
  CHECK_NOTHROW(deserialize(good));
  CHECK_NOTHROW(deserialize("# comment\n" + good));

  CHECK(error_line("dendroid-v2 head=fly N=9\n") == 1);
  CHECK_THROWS_AS(deserialize(""), ParseError);

  // Drop the last line: the conditional table of 'to' is incomplete.
  std::string truncated = good.substr(0, good.rfind('\n', good.size() - 2) + 1);
  CHECK(error_line(truncated) > 0);

  std::string bad_row = serialize(two_slot_model(), Precision::kDisplay);
  const auto pos = bad_row.find("0.800000");
  bad_row.replace(pos, 8, "0.900000");
  CHECK(error_line(bad_row) == 6);

  std::string bad_domain = good;
  bad_domain.replace(bad_domain.find("domain to"), 9, "domain xx");
  CHECK(error_line(bad_domain) > 0);
}

}  // namespace
}  // namespace dendroid
