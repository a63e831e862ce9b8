// Uses nothing but the exported C interface.
#include "slantlab/slantlab.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <string>

namespace {

struct RunDeleter {
  void operator()(slantlab_run* r) const { slantlab_run_destroy(r); }
};
struct OptionsDeleter {
  void operator()(slantlab_options* o) const { slantlab_options_destroy(o); }
};
using RunPtr = std::unique_ptr<slantlab_run, RunDeleter>;
using OptionsPtr = std::unique_ptr<slantlab_options, OptionsDeleter>;

const char* const kSlant = R"(name = capi
[ambient]
model = lorentz-sasakian-R5
[immersion]
catalog = slant-candidate-R5(pi/6)
[samples]
points = 0 0 0
[checks]
run = slant
)";

std::string take(char* s) {
  std::string out = s ? s : "";
  slantlab_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, RunTextAndReadRecords) {
  slantlab_run* raw = nullptr;
  ASSERT_EQ(slantlab_run_text(kSlant, nullptr, &raw), SLANTLAB_OK) << slantlab_last_error();
  RunPtr run(raw);
  EXPECT_EQ(slantlab_run_get_status(run.get()), SLANTLAB_RUN_PASS);
  const size_t n = slantlab_run_record_count(run.get());
  ASSERT_GT(n, 0u);
  for (size_t i = 0; i < n; ++i) {
    slantlab_record r;
    ASSERT_EQ(slantlab_run_get_record(run.get(), i, &r), SLANTLAB_OK);
    EXPECT_NE(r.name, nullptr);
    EXPECT_EQ(r.point_size, 3u);
    if (!r.diagnostic) {
      EXPECT_EQ(r.passed, 1) << r.name;
    }
  }
  slantlab_record r;
  EXPECT_EQ(slantlab_run_get_record(run.get(), n, &r), SLANTLAB_ERR_INVALID_ARGUMENT);

  slantlab_slant_summary s;
  ASSERT_EQ(slantlab_run_get_slant(run.get(), &s), SLANTLAB_OK);
  EXPECT_STREQ(s.classification, "proper-slant");
  EXPECT_NEAR(s.lambda_fit, 0.75, 1e-6);
  EXPECT_NEAR(s.theta, M_PI / 6, 1e-6);
  ASSERT_EQ(s.spectrum_size, 2u);
  EXPECT_NEAR(s.spectrum_values[0], -0.75, 1e-6);
  EXPECT_EQ(s.spectrum_multiplicities[0], 2);
  EXPECT_EQ(s.spectrum_multiplicities[1], 1);

  EXPECT_EQ(slantlab_run_get_curvature_slant(run.get(), &s), SLANTLAB_ERR_NOT_FOUND);
  EXPECT_GE(slantlab_run_wall_time(run.get()), 0.0);
}

TEST(CApi, RenderMatchesGoldenFile) {
  slantlab_run* raw = nullptr;
  ASSERT_EQ(slantlab_run_file(SLANTLAB_GOLDEN_DIR "/slant-pi6-origin.scn", nullptr, &raw), SLANTLAB_OK)
      << slantlab_last_error();
  RunPtr run(raw);
  const std::string text = take(slantlab_run_render(run.get(), SLANTLAB_FORMAT_RECORDS));
  FILE* f = std::fopen(SLANTLAB_GOLDEN_DIR "/slant-pi6-origin.records", "rb");
  ASSERT_NE(f, nullptr);
  std::string want;
  char buf[4096];
  for (size_t k; (k = std::fread(buf, 1, sizeof buf, f)) > 0;) want.append(buf, k);
  std::fclose(f);
  EXPECT_EQ(text, want);
  EXPECT_NE(take(slantlab_run_render(run.get(), SLANTLAB_FORMAT_TABLE)).find("status: pass"), std::string::npos);
}

TEST(CApi, Options) {
  OptionsPtr opts(slantlab_options_create());
  EXPECT_EQ(slantlab_options_set_samples(opts.get(), 0), SLANTLAB_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(slantlab_options_set_fd_step(opts.get(), 1.0), SLANTLAB_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(slantlab_options_set_tolerance(opts.get(), "bogus", 1e-3), SLANTLAB_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(slantlab_last_error()).find("bogus"), std::string::npos);
  EXPECT_EQ(slantlab_options_set_tolerance(opts.get(), "slant", -1.0), SLANTLAB_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(slantlab_options_set_checks(opts.get(), "slant, nope"), SLANTLAB_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(slantlab_options_set_checks(opts.get(), " , "), SLANTLAB_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(slantlab_options_set_seed(nullptr, 1), SLANTLAB_ERR_INVALID_ARGUMENT);

  ASSERT_EQ(slantlab_options_set_checks(opts.get(), "slant,corollary31"), SLANTLAB_OK);
  ASSERT_EQ(slantlab_options_set_tolerance(opts.get(), "corollary31", 1e-30), SLANTLAB_OK);
  slantlab_run* raw = nullptr;
  ASSERT_EQ(slantlab_run_text(kSlant, opts.get(), &raw), SLANTLAB_OK) << slantlab_last_error();
  RunPtr run(raw);
  EXPECT_EQ(slantlab_run_get_status(run.get()), SLANTLAB_RUN_CHECK_FAILED);
}

TEST(CApi, SeedChangesSamples) {
  const char* src = "[ambient]\nmodel = flat-product\n[samples]\ncount = 3\n[checks]\nrun = structure\n";
  auto first_point = [&](uint64_t seed) {
    OptionsPtr opts(slantlab_options_create());
    slantlab_options_set_seed(opts.get(), seed);
    slantlab_run* raw = nullptr;
    EXPECT_EQ(slantlab_run_text(src, opts.get(), &raw), SLANTLAB_OK);
    RunPtr run(raw);
    return take(slantlab_run_render(run.get(), SLANTLAB_FORMAT_RECORDS));
  };
  EXPECT_EQ(first_point(1), first_point(1));
  EXPECT_NE(first_point(1), first_point(2));
}

TEST(CApi, ErrorCodes) {
  slantlab_run* raw = reinterpret_cast<slantlab_run*>(0x1);
  EXPECT_EQ(slantlab_run_text("[ambient]\nmodel = lorentz-sasakian-R5\n[checks]\nrun = structure, x\n", nullptr, &raw),
            SLANTLAB_ERR_PARSE);
  EXPECT_EQ(raw, nullptr);
  EXPECT_NE(std::string(slantlab_last_error()).find("line 4"), std::string::npos) << slantlab_last_error();

  EXPECT_EQ(slantlab_run_text("[ambient]\nmodel = flat-product\n", nullptr, &raw), SLANTLAB_ERR_USAGE);
  EXPECT_EQ(slantlab_run_file("/nonexistent/file.scn", nullptr, &raw), SLANTLAB_ERR_IO);
  EXPECT_EQ(slantlab_run_text(
                "[ambient]\nmodel = lorentz-sasakian-R5\n[immersion]\ncatalog = invariant-R5\n[samples]\n"
                "points = 1 0 0\n[checks]\nrun = slant\n",
                nullptr, &raw),
            SLANTLAB_ERR_DOMAIN);
  EXPECT_EQ(slantlab_run_text(
                "[ambient]\nmodel = lorentz-sasakian-R5\n[immersion]\nparams = 3\nf1 = u1\nf2 = u2\nf3 = 0\n"
                "f4 = 0\nf5 = u1\n[checks]\nrun = slant\n",
                nullptr, &raw),
            SLANTLAB_ERR_GEOMETRY);
  EXPECT_EQ(slantlab_verify_ambient("nope", nullptr, &raw), SLANTLAB_ERR_USAGE);
  EXPECT_EQ(slantlab_run_text(nullptr, nullptr, &raw), SLANTLAB_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(slantlab_run_text(kSlant, nullptr, nullptr), SLANTLAB_ERR_INVALID_ARGUMENT);

  EXPECT_EQ(slantlab_run_get_status(nullptr), SLANTLAB_RUN_USAGE_ERROR);
  EXPECT_EQ(slantlab_run_record_count(nullptr), 0u);
  EXPECT_EQ(slantlab_run_render(nullptr, SLANTLAB_FORMAT_TABLE), nullptr);
  slantlab_run_destroy(nullptr);
}

TEST(CApi, VerifyAmbientAndList) {
  slantlab_run* raw = nullptr;
  ASSERT_EQ(slantlab_verify_ambient("lorentz-sasakian-R5", nullptr, &raw), SLANTLAB_OK);
  RunPtr ok(raw);
  EXPECT_EQ(slantlab_run_get_status(ok.get()), SLANTLAB_RUN_PASS);
  ASSERT_EQ(slantlab_verify_ambient("flat-product", nullptr, &raw), SLANTLAB_OK);
  RunPtr flat(raw);
  EXPECT_EQ(slantlab_run_get_status(flat.get()), SLANTLAB_RUN_CHECK_FAILED);

  const std::string list = take(slantlab_list(0, SLANTLAB_FORMAT_TABLE));
  EXPECT_NE(list.find("slant-candidate-R5"), std::string::npos);
  EXPECT_NE(take(slantlab_list(1, SLANTLAB_FORMAT_RECORDS)).find("\"kind\":\"check\""), std::string::npos);
  EXPECT_STRNE(slantlab_version(), "");
}
