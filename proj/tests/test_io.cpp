#include "binpack/io.hpp"

#include "binpack/generator.hpp"

#include <doctest.h>

using namespace binpack;

TEST_CASE("parsing the three instance kinds") {
  auto plain = parse_instance("kind plain\nitem 1/2\nitem 3/10 count=2\n");
  CHECK(plain.kind == InstanceKind::Plain);
  CHECK(plain.classes.size() == 2);
  CHECK(plain.classes[1].count == 2);

  auto clus = parse_instance("kind clustered\nk 3\nitem 1/2 cluster=a\n");
  CHECK(clus.kind == InstanceKind::Clustered);
  CHECK(clus.k == 3);
  CHECK(clus.classes[0].cluster == "a");

  auto timed =
      parse_instance("kind timed\nitem 3/10 count=2 arrive=0/1 delay=linear:1\n");
  CHECK(timed.timed.size() == 2);
  CHECK(timed.timed[1].item.index == 1);
  CHECK(timed.timed[0].delay.kind == DelayFunction::Kind::Linear);

  auto pw = parse_instance(
      "kind timed\nitem 0/1 arrive=1/2 delay=power:2,1/2\n"
      "item 1/2 arrive=1/1 delay=table:1/1:1/10,2/1:1/5\n");
  CHECK(pw.timed[0].delay.kind == DelayFunction::Kind::Power);
  CHECK(pw.timed[1].delay.table.size() == 2);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_instance("kind plain\nitem 5/4\n"),
                       "size exceeds 1 at line 2", ParseError);
  CHECK_THROWS_AS(parse_instance("kind plain\nitem 1/0\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("item 1/2\n"), ParseError);  // header first
  CHECK_THROWS_AS(parse_instance("kind clustered\nk 3\nitem 1/2\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("kind timed\nitem 1/2 arrive=0/1\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("kind plain\nitem 1/2 cluster=a\n"), ParseError);
  try {
    parse_instance("kind plain\nitem 1/2\nitem abc\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("emit then parse is the identity on normalized files") {
  const char* texts[] = {
      "kind plain\nitem 1/2\nitem 3/10 count=2\n",
      "kind clustered\nk 4\nitem 1/2 cluster=a\nitem 2/5 count=3 cluster=b\n",
      "kind timed\nitem 3/10 arrive=0/1 delay=linear:1/1\n"
      "item 1/2 arrive=1/2 delay=power:2/1,1/2\n"
      "item 0/1 arrive=1/1 delay=table:1/1:1/10,2/1:1/5\n",
  };
  for (const char* t : texts) {
    auto inst = parse_instance(t);
    std::string emitted = emit_instance(inst);
    CHECK(emit_instance(parse_instance(emitted)) == emitted);
    CHECK(emitted == t);  // these inputs are already normalized
  }
  // comments and integer shorthand normalize away
  auto inst = parse_instance("# hello\nkind plain\nitem 1/2 # trailing\nitem 1\n");
  CHECK(emit_instance(inst) == "kind plain\nitem 1/2\nitem 1/1\n");
}

TEST_CASE("certificate round trip and generated-instance round trip") {
  GeneratorParams p;
  p.k = 3;
  p.n = 90;
  p.m = 1;
  p.families = {2, 3};
  auto g = generate_construction(p);

  std::string cert_text = emit_certificate(g.certificate);
  Certificate parsed = parse_certificate(cert_text);
  CHECK(emit_certificate(parsed) == cert_text);
  auto chk = check_certificate(g.instance.all_classes(), parsed);
  CHECK(chk.ok);
  CHECK(chk.bin_count == 90);
  CHECK(chk.large_items == 90);

  std::string inst_text = emit_instance(from_clustered(g.instance));
  auto back = group_clusters(parse_instance(inst_text));
  CHECK(back.clusters.size() == g.instance.clusters.size());
  auto pr = price_of_clustering(back, PriceMode::Exact, &parsed);
  CHECK(pr.sum_cluster_opt == 145);
  CHECK(pr.global_opt == 90);
}

TEST_CASE("reports render both formats deterministically") {
  Report rep;
  rep.command = "demo";
  rep.params = {{"k", "3"}};
  rep.rows.push_back({"value", "1/2", "0.5"});
  rep.verdicts.push_back({"check", true});
  rep.seed = 7;
  std::ostringstream text, tsv;
  rep.print(text, false);
  rep.print(tsv, true);
  CHECK(text.str().find("[pass] check") != std::string::npos);
  CHECK(tsv.str().find("value\tvalue\t1/2\t0.5") != std::string::npos);
  CHECK(rep.all_pass());
  rep.verdicts.push_back({"bad", false});
  CHECK_FALSE(rep.all_pass());
}
