#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dendro/io.hpp"

using namespace dendro;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun dendro_cli(const std::string& args) {
  CliRun r;
  // Single-quote every word; tree codes contain parentheses.
  std::string cmd = DENDRO_CLI;
  std::istringstream words(args);
  for (std::string w; words >> w;) cmd += " '" + w + "'";
  cmd += " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp(const std::string& name) { return std::string(DENDRO_TMP) + "/" + name; }

}  // namespace

TEST(Cli, TreesMatchesEnumeration) {
  CliRun r = dendro_cli("trees --variant or --degree weight --bound 5");
  ASSERT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  ASSERT_EQ(j.size(), 6u);
  auto codes = enumerate_trees(TreeVariant::kReducedOpen, DegreeKind::kWeight, 5);
  for (std::size_t i = 0; i < codes.size(); ++i) EXPECT_EQ(j[i], codes[i].bytes);
}

TEST(Cli, HomFromTreeFiles) {
  std::ofstream(tmp("eta.json")) << to_json(Tree::eta()).dump();
  std::ofstream(tmp("c2.json")) << to_json(Tree::corolla(2)).dump();
  CliRun r = dendro_cli("hom --src " + tmp("eta.json") + " --dst " + tmp("c2.json"));
  ASSERT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["count"], 3);
  for (const auto& m : j["maps"]) EXPECT_TRUE(validate(map_from_json(m)));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(dendro_cli("reedy-verify --variant or --degree weight --bound 5").code, 0);
  EXPECT_EQ(dendro_cli("segal-check --formula nerve:comm").code, 0);
  EXPECT_EQ(dendro_cli("segal-check --formula boundary:((00)0)").code, 1);
  EXPECT_EQ(dendro_cli("normal-check --formula terminal --level 2").code, 1);
  EXPECT_EQ(dendro_cli("trees --bound").code, 2);
  EXPECT_EQ(dendro_cli("no-such-verb").code, 2);
  EXPECT_EQ(dendro_cli("eval --tree /nonexistent.json").code, 2);
  EXPECT_EQ(dendro_cli("hom --src (000) --dst (((00)0)0) --budget 3").code, 3);
}

TEST(Cli, FactorRoundTrip) {
  CliRun h = dendro_cli("hom --src 0 --dst ((00)0)");
  ASSERT_EQ(h.code, 0);
  Json maps = Json::parse(h.out)["maps"];
  for (std::size_t i = 0; i < maps.size(); ++i) {
    std::ofstream(tmp("map.json")) << maps[i].dump();
    for (const char* sys : {"outer", "standard"}) {
      CliRun f = dendro_cli("factor --system " + std::string(sys) + " --map " + tmp("map.json"));
      ASSERT_EQ(f.code, 0);
      Json j = Json::parse(f.out);
      TreeMap g = compose(map_from_json(j["second"]), map_from_json(j["first"]));
      EXPECT_EQ(g.edge_map, map_from_json(maps[i]).edge_map);
    }
  }
}

TEST(Cli, PresheafRoundTrip) {
  ASSERT_EQ(dendro_cli("extend-corolla --n 3 --formula terminal --out " + tmp("x.json")).code, 0);
  LeanDSpace x = presheaf_from_json(read_json_file(tmp("x.json")));
  EXPECT_EQ(to_json(x), read_json_file(tmp("x.json")));
  for (int i = 0; i < x.trunc->size(); ++i) {
    CliRun e = dendro_cli("eval --in " + tmp("x.json") + " --tree " + x.trunc->code(i).bytes);
    ASSERT_EQ(e.code, 0);
    EXPECT_EQ(Json::parse(e.out), to_json(x.values[i]));
  }
  CliRun t = dendro_cli("tower --op completion --depth 2 --in " + tmp("x.json"));
  ASSERT_EQ(t.code, 0);
  Tower tw = tower_from_json(Json::parse(t.out)["tower"]);
  EXPECT_TRUE(check_tower(tw));
  EXPECT_EQ(to_json(tw), Json::parse(t.out)["tower"]);
}

TEST(Cli, GoldenOutputs) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"trees --variant or --degree weight --bound 5", "trees.json"},
      {"hom --src 0 --dst (00)", "hom.json"},
      {"max-subtrees --n 2 --tree (((00)0)0)", "max_subtrees.json"},
      {"dot --tree ((00)(00))", "tree.dot"},
      {"segal-check --formula boundary:((00)0)", "segal_boundary.json"},
      {"kan-extend --functor w --n 2 --tree ((00)0) --formula edge-power:2", "kan_w.json"},
      {"normalize-E --stages 1 --degree size --bound 3", "normalize.json"},
      {"eval --tree (00) --formula random --seed 5", "eval_random.json"},
  };
  for (const auto& [args, file] : cases) {
    CliRun a = dendro_cli(args), b = dendro_cli(args);
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_EQ(a.out, slurp(std::string(DENDRO_GOLDEN) + "/" + file)) << args;
  }
}
