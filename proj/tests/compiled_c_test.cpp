// Compiles emitted controllers with the system C compiler and checks them
// against the interpreter on every state.
#include "ctrlsynth/interp.hpp"
#include "ctrlsynth/random_instance.hpp"

#include "support/c_harness.hpp"
#include "support/worked_example.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace ctrlsynth;
using namespace ctrlsynth::testing;
namespace fs = std::filesystem;

namespace {

class CompiledC : public ::testing::Test {
protected:
  void SetUp() override {
    if (kCompiler.empty())
      GTEST_SKIP() << "no C compiler found at configure time";
    root = fs::temp_directory_path() / "ctrlsynth_compiled_c";
    fs::remove_all(root);
  }
  void TearDown() override { fs::remove_all(root); }
  fs::path root;
};

} // namespace

TEST_F(CompiledC, WorkedExample) {
  const auto w = make_worked_example();
  const auto out = compile_and_run(w.program, root / "worked");
  ASSERT_TRUE(out) << "compilation or execution failed in " << root;
  EXPECT_EQ(*out, expected_output(w.program));
}

TEST_F(CompiledC, RandomInstances) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    RandomModelOptions opts{.n = 2 + seed % 9, .r = 1 + seed % 4, .cubes = 6 + seed * 2,
                            .literal_density = 0.55, .actions_first = seed % 2 == 0, .seed = seed};
    const auto inst = random_instance(opts);
    auto spec = build_spec(inst.model, inst.state_names, inst.action_names);
    const auto p = generate_program(spec, solve_functional_eq(spec));
    const auto out = compile_and_run(p, root / std::to_string(seed));
    ASSERT_TRUE(out) << "seed " << seed;
    EXPECT_EQ(*out, expected_output(p)) << "seed " << seed;
  }
}
