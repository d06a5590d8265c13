#ifndef DENDROID_CASEFRAME_H_
#define DENDROID_CASEFRAME_H_

#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dendroid/dataset.h"

namespace dendroid {

struct SlotFiller {
  std::string slot;
  std::string value;

  friend bool operator==(const SlotFiller&, const SlotFiller&) = default;
};

// One observed case frame: a head with its (slot, value) pairs in input
// order, e.g. (fly (arg1 girl)(arg2 jet)). Class values keep their angle
// brackets ("<person>").
struct CaseFrame {
  std::string head;
  std::vector<SlotFiller> slots;

  friend bool operator==(const CaseFrame&, const CaseFrame&) = default;
};

// Parses one frame per non-blank line. Lines whose first non-space character
// is '#' are comments. Throws ParseError carrying the 1-based line number.
std::vector<CaseFrame> parse_case_frames(std::istream& in);
std::vector<CaseFrame> parse_case_frames(std::string_view text);

// Renders "(head (slot value)(slot value))"; parses back to the same frame.
std::string to_string(const CaseFrame& frame);

// Partitions frames by head, keeping input order within each group.
std::map<std::string, std::vector<CaseFrame>> group_by_head(std::span<const CaseFrame> frames);

enum class View {
  kSlot,   // each slot variable is {0, 1}: absent / present
  kValue,  // each slot variable takes its filler tokens, plus "0" if ever absent
};

struct ProjectionOptions {
  // When non-empty, variables follow this slot order (with any further
  // observed slots appended) instead of first-appearance order.
  std::vector<std::string> slot_inventory;
};

// Projects the frames of one head onto a dataset. Variables are the slots
// observed for that head in first-appearance order. In the value view the
// domain lists values in first-appearance order, counting an absent slot as
// the value "0". Throws DataError on an empty list or mixed heads.
DiscreteDataset project(std::span<const CaseFrame> frames, View view,
                        const ProjectionOptions& options = {});

}  // namespace dendroid

#endif  // DENDROID_CASEFRAME_H_
