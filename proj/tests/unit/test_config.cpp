#include <gtest/gtest.h>

#include <map>

#include "gop/config.hpp"
#include "gop/error.hpp"

using namespace gop;

TEST(Config, Parse) {
  const auto c = parse_config(R"(
data_dir: data
host: 0.0.0.0
port: 9000
alpha: 0.01
rbp_persistence: 0.95
mc_replicates: 50000
seed: 12
static_dir: ui/dist
top_k: 3
)", "/srv");
  EXPECT_EQ(c.data_dir, std::filesystem::path("/srv/data"));
  EXPECT_EQ(c.static_dir, std::filesystem::path("/srv/ui/dist"));
  EXPECT_EQ(c.host, "0.0.0.0");
  EXPECT_EQ(c.port, 9000);
  EXPECT_EQ(c.alpha, 0.01);
  EXPECT_EQ(*c.rbp_persistence, 0.95);
  EXPECT_EQ(c.mc_replicates, 50000u);
  EXPECT_EQ(c.seed, 12u);
  EXPECT_EQ(c.top_k, 3u);
}

TEST(Config, Defaults) {
  const auto c = parse_config("data_dir: /abs\n", "/srv");
  EXPECT_EQ(c.data_dir, std::filesystem::path("/abs"));
  EXPECT_EQ(c.port, 8080);
  EXPECT_EQ(c.alpha, 0.05);
  EXPECT_FALSE(c.rbp_persistence);
  EXPECT_EQ(c.mc_replicates, kDefaultReplicates);
}

TEST(Config, Invalid) {
  EXPECT_THROW(parse_config("alpha: 2\n"), Error);
  EXPECT_THROW(parse_config("port: 70000\n"), Error);
  EXPECT_THROW(parse_config("rbp_persistence: 1\n"), Error);
  EXPECT_THROW(parse_config("port: [1\n"), Error);
  EXPECT_THROW(load_config("/no/such/config.yaml"), Error);
}

TEST(Config, EnvOverrides) {
  ServiceConfig c = parse_config("data_dir: a\nport: 1\n");
  std::map<std::string, std::string> env = {
      {"GOP_DATA_DIR", "/x"}, {"GOP_PORT", "4321"}, {"GOP_ALPHA", "0.1"},
      {"GOP_RBP_P", "0.5"},   {"GOP_SEED", "3"}};
  apply_env_overrides(c, [&](const char* k) -> const char* {
    auto it = env.find(k);
    return it == env.end() ? nullptr : it->second.c_str();
  });
  EXPECT_EQ(c.data_dir, std::filesystem::path("/x"));
  EXPECT_EQ(c.port, 4321);
  EXPECT_EQ(c.alpha, 0.1);
  EXPECT_EQ(*c.rbp_persistence, 0.5);
  EXPECT_EQ(c.seed, 3u);
  env = {{"GOP_PORT", "abc"}};
  EXPECT_THROW(apply_env_overrides(c, [&](const char* k) -> const char* {
                 auto it = env.find(k);
                 return it == env.end() ? nullptr : it->second.c_str();
               }),
               Error);
}
