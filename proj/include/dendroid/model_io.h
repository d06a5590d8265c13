#ifndef DENDROID_MODEL_IO_H_
#define DENDROID_MODEL_IO_H_

#include <istream>
#include <string>
#include <string_view>

#include "dendroid/dendroid_model.h"

namespace dendroid {

// Model files are line oriented:
//
//   dendroid-v1 head=buy N=1750
//   domain arg1 0 1
//   domain arg2 0 1
//   domain on 0 1
//   [arg1]: [P(arg1=0)=0.000571] [P(arg1=1)=0.999429]
//   [arg2]: [P(arg2=0)=0.055114] [P(arg2=1)=0.944886]
//              [P(on=0|arg2=0)=0.887755] [P(on=1|arg2=0)=0.112245]
//              [P(on=0|arg2=1)=0.981370] [P(on=1|arg2=1)=0.018630]
//   [on]: [P(on=0)=0.976705] [P(on=1)=0.023295]
//
// Every variable has a "[v]:" line holding its marginal; for a root that is
// its table, for a child it is implied by the model and ignored on load. The
// indented lines under a variable list the conditional tables of its
// children, one line per parent value. '#' lines are comments.
enum class Precision {
  kLossless,  // shortest representation that reads back bit-exactly
  kDisplay,   // six decimals
};

inline constexpr std::string_view kModelFormatTag = "dendroid-v1";

std::string serialize(const DendroidModel& model, Precision precision = Precision::kLossless);

// Throws ParseError (with line number) on a version mismatch, a malformed or
// missing line, or a distribution that does not sum to 1 within 1e-9.
DendroidModel deserialize(std::string_view text);
DendroidModel deserialize(std::istream& in);

// Human-readable listing: "<head>:" followed by the probability blocks at
// display precision.
std::string render_pattern(const DendroidModel& model);

}  // namespace dendroid

#endif  // DENDROID_MODEL_IO_H_
