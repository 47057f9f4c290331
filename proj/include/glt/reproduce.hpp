#pragma once

#include <string>
#include <utility>
#include <vector>

#include "glt/artifacts.hpp"

namespace glt {

// Hom dimensions out of one source in the (2,2,3,3) stable AR quiver, in
// figure coordinates (x, row); every other cell with x in [14, 42] is 0.
struct HammockFixture {
  std::string name;
  std::pair<int, int> source;
  std::vector<std::pair<int, int>> ones;
};
const std::vector<HammockFixture>& reference_hammocks();
constexpr int kHammockXMin = 14;
constexpr int kHammockXMax = 42;

// Upsets of (2,2,2,q) failing stable tilting: the tails starting at s + m x4
// with 1 <= m <= q-2.
std::vector<CellMask> expected_stable_failures(const GLContext& ctx);

struct FixtureResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Every fixture that applies to the weight type of eng.
std::vector<FixtureResult> reproduce(const HomEngine& eng);
// Fixtures for (2,2,2,4) and (2,2,3,3) together.
std::vector<FixtureResult> reproduce_all();

}  // namespace glt
