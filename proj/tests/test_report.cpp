#include "ackcensus/report.hpp"
#include "support.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <doctest.h>
#include <json.hpp>

#include <random>
#include <sstream>

using namespace ackcensus;
using namespace ackcensus::report;
using test_support::TempDir;

namespace {

metrics::ContributorSummary paper(std::string discipline, int authors, int acks, bool text = true) {
  return {"id", std::move(discipline), authors, acks, text};
}

Statistics sample_stats() {
  std::map<std::string, metrics::DisciplineAggregate> by;
  std::mt19937 rng(6);
  for (const char* d : {"Physics", "Social Sciences", "Earth & Space", "Math <pure>"}) {
    metrics::DisciplineAggregate agg(d);
    for (int i = 0; i < 300; ++i) {
      const bool text = rng() % 5 != 0;
      agg.add(paper(d, 1 + static_cast<int>(rng() % 14), text && rng() % 2 ? static_cast<int>(rng() % 9) : 0, text));
    }
    by.emplace(d, agg);
  }
  return Statistics::from(by);
}

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) rows.push_back(ingest::parse_csv_line(line));
  return rows;
}

PipelineConfig fixture_config(const fs::path& out) {
  PipelineConfig c;
  c.corpus = test_support::fixture("corpus12.jsonl");
  c.lexicon = test_support::fixture("lexicon.txt");
  c.blacklist = test_support::data_file("blacklist.txt");
  c.out_dir = out;
  return c;
}

const std::vector<std::string> kTables = {"table1.csv", "fig1.csv", "fig2.csv", "fig3.csv", "fig4.csv",
                                          "dispersion.csv", "single_author.csv", "summaries.csv", "audit.csv",
                                          "acknowledgees.csv"};

void check_svg(const std::string& svg) {
  std::istringstream in(svg);
  boost::property_tree::ptree tree;
  REQUIRE_NOTHROW(boost::property_tree::read_xml(in, tree));
  CHECK(tree.get_child_optional("svg").has_value());
  std::string stripped = svg;
  const std::string ns = "xmlns=\"http://www.w3.org/2000/svg\"";
  const auto at = stripped.find(ns);
  REQUIRE(at != std::string::npos);
  stripped.erase(at, ns.size());
  CHECK(stripped.find("href") == std::string::npos);
  CHECK(stripped.find("http") == std::string::npos);
  CHECK(stripped.find("url(") == std::string::npos);
  CHECK(stripped.find("<image") == std::string::npos);
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("coverage table rows") {
  const std::vector<metrics::Table1Row> rows = {metrics::table1_row("Earth & Space", 92238, 72922, 41633),
                                                metrics::table1_row("Professional Fields", 41015, 12552, 5071)};
  std::ostringstream out;
  emit_table1(out, rows, metrics::table1_row("Total", 1503548, 1009411, 362767));
  CHECK(out.str() ==
        "discipline,N,N_ack,pct_ack,N_acknowledgee,pct_of_ack,pct_of_total\n"
        "Earth & Space,92238,72922,79.1,41633,57.1,45.1\n"
        "Professional Fields,41015,12552,30.6,5071,40.4,12.4\n"
        "Total,1503548,1009411,67.1,362767,35.9,24.1\n");

  std::ostringstream empty;
  emit_table1(empty, {}, std::nullopt);
  CHECK(empty.str() == "discipline,N,N_ack,pct_ack,N_acknowledgee,pct_of_ack,pct_of_total\n");
}

TEST_CASE("table rows are ordered by share of total") {
  const std::vector<metrics::Table1Row> rows = {metrics::table1_row("A", 100, 50, 10), metrics::table1_row("B", 100, 50, 30),
                                                metrics::table1_row("C", 0, 0, 0), metrics::table1_row("D", 100, 90, 20)};
  std::ostringstream out;
  emit_table1(out, rows, metrics::table1_row("Total", 300, 190, 60));
  const auto parsed = read_csv(out.str());
  REQUIRE(parsed.size() == 6);
  CHECK(parsed[1][0] == "B");
  CHECK(parsed[2][0] == "D");
  CHECK(parsed[3][0] == "A");
  CHECK(parsed[4][0] == "C");
  CHECK(parsed[4][3] == "");
  CHECK(parsed[5][0] == "Total");
}

TEST_CASE("figure kinds") {
  CHECK(parse_figure_kind("fig3") == FigureKind::Fig3);
  CHECK(to_string(FigureKind::Fig2) == "fig2");
  CHECK_THROWS_AS(parse_figure_kind("fig5"), std::invalid_argument);
  TempDir dir;
  CHECK_THROWS_AS(emit_figure_data("table9", sample_stats(), dir.path()), std::invalid_argument);
}

TEST_CASE("figure tables") {
  const auto stats = sample_stats();
  std::ostringstream f1, f3, f4;
  emit_figure_table(FigureKind::Fig1, stats, f1);
  emit_figure_table(FigureKind::Fig3, stats, f3);
  emit_figure_table(FigureKind::Fig4, stats, f4);

  std::map<std::string, std::string> last;
  std::map<std::string, int> fig4_rows;
  for (const auto& row : read_csv(f1.str())) last[row[0]] = row[2];
  for (const auto& d : stats.disciplines) CHECK(last[d.discipline()] == "100.0");
  for (const auto& row : read_csv(f4.str())) ++fig4_rows[row[0]];
  fig4_rows.erase("discipline");
  CHECK(fig4_rows.size() == stats.disciplines.size());
  for (const auto& [d, n] : fig4_rows) CHECK(n <= 9);

  // Mean contributors is the sum of the two printed means.
  for (const auto& row : read_csv(f3.str())) {
    if (row[0] == "discipline") continue;
    CHECK(std::stod(row[3]) == doctest::Approx(std::stod(row[1]) + std::stod(row[2])).epsilon(0.011));
  }
}

TEST_CASE("stacked bars show the larger acknowledgee segment") {
  std::map<std::string, metrics::DisciplineAggregate> by;
  metrics::DisciplineAggregate social("Social Sciences");
  for (int i = 0; i < 10; ++i) social.add(paper("Social Sciences", i < 3 ? 2 : 3, i < 8 ? 3 : 2));
  by.emplace("Social Sciences", social);
  const auto stats = Statistics::from(by);
  std::ostringstream f3;
  emit_figure_table(FigureKind::Fig3, stats, f3);
  const auto rows = read_csv(f3.str());
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][1] == "2.70");
  CHECK(rows[1][2] == "2.80");
  check_svg(render_figure_svg(FigureKind::Fig3, stats));
}

TEST_CASE("charts are standalone documents") {
  const auto stats = sample_stats();
  for (auto kind : {FigureKind::Fig1, FigureKind::Fig2, FigureKind::Fig3, FigureKind::Fig4}) {
    const auto svg = render_figure_svg(kind, stats);
    check_svg(svg);
    if (kind != FigureKind::Fig2) CHECK(svg.find("Math &lt;pure&gt;") != std::string::npos);
  }
  const auto empty = Statistics::from({});
  for (auto kind : {FigureKind::Fig1, FigureKind::Fig2, FigureKind::Fig3, FigureKind::Fig4})
    check_svg(render_figure_svg(kind, empty));
}

TEST_CASE("summaries round trip") {
  std::ostringstream out;
  write_summary_header(out);
  const std::vector<metrics::ContributorSummary> rows = {{"a,1", "Earth & Space", 3, 2, true}, {"b", "X", 1, 0, false}};
  for (const auto& s : rows) write_summary_row(out, s);
  std::istringstream in(out.str());
  std::vector<metrics::ContributorSummary> back;
  read_summaries(in, [&](metrics::ContributorSummary&& s) { back.push_back(std::move(s)); });
  CHECK(back == rows);

  for (const char* bad : {"a,X,0,0,1\n", "a,X,1,1,0\n", "a,X,1,-1,1\n", "a,X,1,1\n", "a,X,1,1,2\n", "a,\"X,1,1,1\n"}) {
    std::istringstream b(bad);
    CHECK_THROWS_AS(read_summaries(b, [](metrics::ContributorSummary&&) {}), std::runtime_error);
  }
}

TEST_CASE("digests") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  TempDir dir;
  test_support::spit(dir / "x", "abc");
  CHECK(sha256_file(dir / "x") == sha256_hex("abc"));
  CHECK_THROWS_AS(sha256_file(dir / "missing"), std::runtime_error);
  const auto ts = utc_timestamp();
  CHECK(ts.size() == 20);
  CHECK(ts.back() == 'Z');
}

TEST_CASE("fixture corpus end to end") {
  TempDir dir;
  std::ostringstream log;
  const auto result = run_pipeline(fixture_config(dir.path()), log);
  REQUIRE_MESSAGE(result.status == kOk, log.str());
  CHECK(result.records == 12);
  for (const auto& name : kTables) CHECK_MESSAGE(fs::exists(dir / name), name);
  for (const char* name : {"fig1.svg", "fig2.svg", "fig3.svg", "fig4.svg", "manifest.json"}) CHECK(fs::exists(dir / name));
  CHECK_FALSE(fs::exists(dir / ".ackcensus-staging"));

  const auto manifest = nlohmann::json::parse(test_support::slurp(dir / "manifest.json"));
  CHECK(manifest["recognizer"] == "rule-ner v1");
  CHECK(manifest["command"] == "run");
  std::size_t inputs = 0;
  for (const auto& input : manifest["inputs"]) {
    CHECK(input["sha256"] == sha256_file(input["path"].get<std::string>()));
    ++inputs;
  }
  CHECK(inputs == 3);
  CHECK(manifest["counts"]["records"] == 12);
  CHECK(manifest["counts"]["with_ack_text"] == 10);
  CHECK(manifest["counts"]["acknowledgees"] == 10);

  CHECK(test_support::slurp(dir / "table1.csv") ==
        "discipline,N,N_ack,pct_ack,N_acknowledgee,pct_of_ack,pct_of_total\n"
        "Mathematics,3,3,100.0,2,66.7,66.7\n"
        "Physics,3,3,100.0,2,66.7,66.7\n"
        "Social Sciences,3,2,66.7,2,100.0,66.7\n"
        "Biology,3,2,66.7,1,50.0,33.3\n"
        "Total,12,10,83.3,7,70.0,58.3\n");

  std::map<std::string, std::vector<std::string>> verdicts;
  for (const auto& row : read_csv(test_support::slurp(dir / "audit.csv"))) verdicts[row[0]].push_back(row[1] + "=" + row[2]);
  CHECK(verdicts["R01"] == std::vector<std::string>{"Jinsong Zhang=self_author", "Xiao Feng=self_author", "Yong Xu=self_author"});
  CHECK(verdicts["R02"] == std::vector<std::string>{"J. R. Smith=accepted", "NSF=incomplete"});
  CHECK(verdicts["R07"] ==
        std::vector<std::string>{"Philippe Moreau=accepted", "Rodrigo Castro=accepted", "Frederick Banting=blacklisted"});
}

TEST_CASE("worker count does not change any byte") {
  TempDir a, b;
  std::ostringstream log;
  auto one = fixture_config(a.path());
  one.workers = 1;
  auto eight = fixture_config(b.path());
  eight.workers = 8;
  eight.chunk_size = 3;
  REQUIRE(run_pipeline(one, log).status == kOk);
  REQUIRE(run_pipeline(eight, log).status == kOk);
  for (const auto& name : kTables) CHECK_MESSAGE(test_support::slurp(a / name) == test_support::slurp(b / name), name);
  for (const char* name : {"fig1.svg", "fig2.svg", "fig3.svg", "fig4.svg"})
    CHECK(test_support::slurp(a / name) == test_support::slurp(b / name));
}

TEST_CASE("strict mode stops at a malformed line and leaves no tables") {
  TempDir dir;
  auto corpus = test_support::slurp(test_support::fixture("corpus12.jsonl"));
  corpus.insert(corpus.find('\n') + 1, "{\"id\":\"BAD\"}\n");
  test_support::spit(dir / "corpus.jsonl", corpus);
  auto config = fixture_config(dir / "out");
  config.corpus = dir / "corpus.jsonl";
  std::ostringstream log;
  const auto result = run_pipeline(config, log);
  CHECK(result.status == kParseError);
  CHECK(log.str().find("line 2") != std::string::npos);
  for (const auto& name : kTables) CHECK_FALSE(fs::exists(dir / "out" / name));
  CHECK_FALSE(fs::exists(dir / "out" / "manifest.json"));

  config.strict = false;
  const auto skipped = run_pipeline(config, log);
  CHECK(skipped.status == kOk);
  CHECK(skipped.records == 12);
  CHECK(skipped.skipped_lines == 1);
}

TEST_CASE("input and output errors") {
  TempDir dir;
  std::ostringstream log;
  auto missing = fixture_config(dir / "out");
  missing.lexicon = dir / "nope.txt";
  CHECK(run_pipeline(missing, log).status == kInputError);

  auto zero = fixture_config(dir / "out");
  zero.workers = 0;
  CHECK(run_pipeline(zero, log).status == kInputError);

  test_support::spit(dir / "file", "x");
  CHECK(run_pipeline(fixture_config(dir / "file"), log).status == kOutputError);
  CHECK(run_pipeline(fixture_config(dir / "file" / "sub"), log).status == kOutputError);

  CHECK(run_report(dir / "none.csv", dir / "r", 9, log).status == kInputError);
  test_support::spit(dir / "bad.csv", "id,discipline,n_authors,n_acknowledgees,has_ack_text\nx,y,0,0,1\n");
  CHECK(run_report(dir / "bad.csv", dir / "r", 9, log).status == kParseError);
}

TEST_CASE("discipline map overrides inline labels") {
  TempDir dir;
  test_support::spit(dir / "map.csv", "journal,discipline\nJ1,Chemistry\n");
  test_support::spit(dir / "corpus.jsonl",
                     R"({"id":"A","year":2015,"journal":"J1","doc_type":"article","authors":[{"given":"A.","surname":"Li"}],"ack_text":"We thank Kenji Tanaka."})"
                     "\n");
  auto config = fixture_config(dir / "out");
  config.corpus = dir / "corpus.jsonl";
  config.discipline_map = dir / "map.csv";
  std::ostringstream log;
  REQUIRE(run_pipeline(config, log).status == kOk);
  CHECK(test_support::slurp(dir / "out" / "summaries.csv") ==
        "id,discipline,n_authors,n_acknowledgees,has_ack_text\nA,Chemistry,1,1,1\n");

  test_support::spit(dir / "map.csv", "J1,Chemistry\nJ1,Physics\n");
  CHECK(run_pipeline(config, log).status == kInputError);
}

TEST_CASE("report from summaries reproduces the run") {
  TempDir run_dir, report_dir;
  std::ostringstream log;
  REQUIRE(run_pipeline(fixture_config(run_dir.path()), log).status == kOk);
  REQUIRE(run_report(run_dir / "summaries.csv", report_dir.path(), 9, log).status == kOk);
  for (const char* name : {"table1.csv", "fig1.csv", "fig2.csv", "fig3.csv", "fig4.csv", "dispersion.csv",
                           "single_author.csv", "fig1.svg", "fig3.svg"})
    CHECK_MESSAGE(test_support::slurp(run_dir / name) == test_support::slurp(report_dir / name), name);
}

TEST_CASE("percentages can be re-derived from the printed counts") {
  TempDir dir;
  std::ostringstream log;
  REQUIRE(run_pipeline(fixture_config(dir.path()), log).status == kOk);
  for (const auto& row : read_csv(test_support::slurp(dir / "table1.csv"))) {
    if (row[0] == "discipline") continue;
    const double n = std::stod(row[1]), ack = std::stod(row[2]), ackee = std::stod(row[4]);
    CHECK(std::abs(std::stod(row[3]) - 100 * ack / n) <= 0.05 + 1e-9);
    CHECK(std::abs(std::stod(row[5]) - 100 * ackee / ack) <= 0.05 + 1e-9);
    CHECK(std::abs(std::stod(row[6]) - 100 * ackee / n) <= 0.05 + 1e-9);
  }
}

}  // TEST_SUITE
