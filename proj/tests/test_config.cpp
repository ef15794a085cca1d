#include <fstream>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "uitext/config.hpp"
#include "uitext/errors.hpp"

namespace uitext {
namespace {

std::string write_config(const std::string& name, const std::string& body) {
  const auto dir = testing::scratch_dir("config_" + name);
  const auto path = (dir / "uitext.conf").string();
  std::ofstream(path) << body;
  return path;
}

ErrorKind set_error(std::string_view key, std::string_view value) {
  AppConfig cfg;
  try {
    cfg.set(key, value);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::IoError;
}

TEST(AppConfig, Defaults) {
  const AppConfig cfg;
  EXPECT_EQ(cfg.backend.kind, BackendKind::Mock);
  EXPECT_EQ(cfg.attempts, 3);
  EXPECT_EQ(cfg.category_order, canonical_category_order());
  EXPECT_NO_THROW(cfg.backend.validate());
}

TEST(AppConfig, FileWithCommentsAndOverrides) {
  const auto path = write_config("full", R"(# evaluation settings
backend = random
seed = 7          # fixed
attempts = 5
temperature = 0.3
max_retries = 1
retry_backoff_ms = 50
category_order = comment, query, numeric, geography, identity
input_keywords = EditText, Picker
)");
  const AppConfig cfg = load_app_config(path);
  EXPECT_EQ(cfg.backend.kind, BackendKind::RandomBaseline);
  EXPECT_EQ(cfg.backend.seed, 7u);
  EXPECT_EQ(cfg.attempts, 5);
  EXPECT_DOUBLE_EQ(cfg.backend.temperature, 0.3);
  EXPECT_EQ(cfg.backend.retry_backoff, std::chrono::milliseconds(50));
  EXPECT_EQ(cfg.category_order.front(), InputCategory::Comment);
  EXPECT_EQ(cfg.context.input_keywords, (std::vector<std::string>{"EditText", "Picker"}));
  EXPECT_EQ(cfg.eval_options().attempts, 5);
}

TEST(AppConfig, RelativePathsResolveAgainstFile) {
  const auto path = write_config("relative", "mock_table = tables/mock.json\n");
  const AppConfig cfg = load_app_config(path);
  EXPECT_EQ(cfg.backend.mock_table_path,
            (std::filesystem::path(path).parent_path() / "tables/mock.json").string());
}

TEST(AppConfig, GlossaryPathFeedsPromptOptions) {
  const auto path = write_config("glossary", "glossary_path = missing.txt\n");
  const AppConfig cfg = load_app_config(path);
  try {
    (void)cfg.prompt_options();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GlossaryMissing);
  }
}

TEST(AppConfig, Errors) {
  EXPECT_EQ(set_error("colour", "blue"), ErrorKind::ConfigError);
  EXPECT_EQ(set_error("backend", "gpt"), ErrorKind::ConfigError);
  EXPECT_EQ(set_error("seed", "forty"), ErrorKind::ConfigError);
  EXPECT_EQ(set_error("max_tokens", "12abc"), ErrorKind::ConfigError);
  EXPECT_EQ(set_error("attempts", "0"), ErrorKind::ConfigError);
  EXPECT_EQ(set_error("category_order", "query, weather"), ErrorKind::ConfigError);
  EXPECT_EQ(set_error("category_order", " , "), ErrorKind::ConfigError);

  try {
    load_app_config(write_config("noeq", "backend mock\n"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConfigError);
    EXPECT_NE(std::string(e.what()).find(":1:"), std::string::npos);
  }
  EXPECT_THROW(load_app_config("/nonexistent/uitext.conf"), Error);
}

}  // namespace
}  // namespace uitext
