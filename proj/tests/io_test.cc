//
// Copyright 2026 The SDC Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "sdc/csv_io.h"
#include "sdc/dataset.h"
#include "sdc/generator.h"
#include "sdc/schema_io.h"
#include "test_util.h"

namespace sdc {
namespace {

using ::sdc::testing::Categorical;
using ::sdc::testing::DataPath;
using ::sdc::testing::Date;
using ::sdc::testing::Hierarchical;
using ::sdc::testing::MakeDataset;
using ::sdc::testing::MakeSchema;
using ::sdc::testing::Numeric;
using ::sdc::testing::RandomData;
using ::sdc::testing::SmallTree;
using ::sdc::testing::StatusIs;
using ::sdc::testing::StatusIsWith;
using ::testing::HasSubstr;

constexpr char kSchema[] = R"({
  "epoch": "2009-01-01",
  "attributes": [
    {"name": "id", "kind": "categorical", "role": "identifier"},
    {"name": "age", "kind": "numeric", "role": "quasi_identifier",
     "min": 0, "max": 100},
    {"name": "admitted", "kind": "date", "role": "quasi_identifier",
     "min": "2009-01-01", "max": "2009-12-31"},
    {"name": "sex", "kind": "categorical", "role": "quasi_identifier",
     "domain": ["F", "M"]},
    {"name": "zip", "kind": "categorical", "role": "quasi_identifier",
     "hierarchy": {"label": "root", "children": [
        {"label": "left", "children": ["a", "b"]},
        {"label": "right", "children": ["c", "d"]}]}},
    {"name": "diag", "kind": "categorical", "role": "confidential"}
  ]
})";

std::shared_ptr<const Schema> TestSchema() {
  absl::StatusOr<Schema> s = ParseSchema(kSchema);
  EXPECT_TRUE(s.ok()) << s.status();
  return std::make_shared<const Schema>(*std::move(s));
}

TEST(ParseSchemaTest, MinimalSchema) {
  absl::StatusOr<Schema> s = ParseSchema(R"({"attributes": [
      {"name": "age", "kind": "numeric", "role": "quasi_identifier",
       "min": 0, "max": 1}]})");
  ASSERT_TRUE(s.ok()) << s.status();
  EXPECT_EQ(s->size(), 1u);
}

TEST(ParseSchemaTest, FullSchema) {
  auto s = TestSchema();
  ASSERT_EQ(s->size(), 6u);
  EXPECT_EQ(s->attribute(2).kind, AttributeKind::kDate);
  EXPECT_EQ(s->attribute(2).min, 0);
  EXPECT_EQ(s->attribute(2).max, 364);
  EXPECT_THAT(s->attribute(4).domain,
              ::testing::ElementsAre("a", "b", "c", "d"));
  EXPECT_EQ(s->attribute(4).hierarchy->height(), 2);
  EXPECT_TRUE(s->attribute(5).domain.empty());
  EXPECT_EQ(s->attribute(0).role, AttributeRole::kIdentifier);
}

TEST(ParseSchemaTest, SyntaxErrorReportsPosition) {
  EXPECT_THAT(ParseSchema(R"({"attributes": [ }")").status(),
              StatusIsWith(absl::StatusCode::kInvalidArgument, "at byte 18"));
}

TEST(ParseSchemaTest, MissingMaxNamesAttribute) {
  EXPECT_THAT(ParseSchema(R"({"attributes": [
      {"name": "age", "kind": "numeric", "role": "quasi_identifier",
       "min": 0}]})")
                  .status(),
              StatusIsWith(absl::StatusCode::kInvalidArgument, "'age'"));
}

TEST(ParseSchemaTest, HierarchyMissingDomainValueNamesAttribute) {
  absl::Status st = ParseSchema(R"({"attributes": [
      {"name": "zip", "kind": "categorical", "role": "quasi_identifier",
       "domain": ["a", "b", "c"],
       "hierarchy": {"label": "root", "children": ["a", "b"]}}]})")
                        .status();
  EXPECT_THAT(st, StatusIsWith(absl::StatusCode::kInvalidArgument, "zip"));
}

TEST(ParseSchemaTest, OtherSemanticErrors) {
  // Duplicate names.
  EXPECT_THAT(ParseSchema(R"({"attributes": [
      {"name": "x", "kind": "numeric", "role": "quasi_identifier",
       "min": 0, "max": 1},
      {"name": "x", "kind": "numeric", "role": "quasi_identifier",
       "min": 0, "max": 1}]})")
                  .status(),
              StatusIsWith(absl::StatusCode::kInvalidArgument, "'x'"));
  // Unknown kind, role, key.
  EXPECT_FALSE(ParseSchema(R"({"attributes": [{"name": "x", "kind": "blob",
      "role": "quasi_identifier"}]})")
                   .ok());
  EXPECT_FALSE(ParseSchema(R"({"attributes": [{"name": "x",
      "kind": "categorical", "role": "boss"}]})")
                   .ok());
  EXPECT_THAT(ParseSchema(R"({"attributes": [{"name": "x",
      "kind": "categorical", "role": "quasi_identifier", "colour": 1}]})")
                  .status(),
              StatusIsWith(absl::StatusCode::kInvalidArgument, "colour"));
  // Bad date.
  EXPECT_FALSE(ParseSchema(R"({"attributes": [{"name": "d", "kind": "date",
      "role": "quasi_identifier", "min": "2009-02-30", "max": 10}]})")
                   .ok());
}

TEST(DateIoTest, RoundTrip) {
  const absl::CivilDay epoch(2009, 1, 1);
  EXPECT_EQ(*ParseDate("2009-01-01", epoch), 0);
  EXPECT_EQ(*ParseDate("2009-12-31", epoch), 364);
  EXPECT_EQ(*ParseDate("2008-12-31", epoch), -1);
  EXPECT_EQ(FormatDate(59, epoch), "2009-03-01");
  EXPECT_FALSE(ParseDate("2009-1-1", epoch).ok());
  EXPECT_FALSE(ParseDate("yesterday", epoch).ok());
}

TEST(CsvTest, ParsesQuotedFields) {
  absl::StatusOr<std::vector<std::vector<std::string>>> rows =
      ParseCsv("a,b\n\"x,1\",\"say \"\"hi\"\"\"\n,\r\n");
  ASSERT_TRUE(rows.ok());
  ASSERT_EQ(rows->size(), 3u);
  EXPECT_THAT((*rows)[1], ::testing::ElementsAre("x,1", "say \"hi\""));
  EXPECT_THAT((*rows)[2], ::testing::ElementsAre("", ""));
  EXPECT_FALSE(ParseCsv("a\n\"open").ok());
  EXPECT_EQ(CsvField("a,b"), "\"a,b\"");
  EXPECT_EQ(CsvField("q\""), "\"q\"\"\"");
  EXPECT_EQ(CsvField("plain"), "plain");
}

TEST(CsvTest, NumberFormattingIsShortestRoundTrip) {
  EXPECT_EQ(FormatNumber(10), "10");
  EXPECT_EQ(FormatNumber(0.1), "0.1");
  EXPECT_EQ(FormatNumber(2.5), "2.5");
  const double third = 1.0 / 3.0;
  EXPECT_EQ(*ParseNumber(FormatNumber(third)), third);
  EXPECT_FALSE(ParseNumber("abc").ok());
  EXPECT_FALSE(ParseNumber("1.5x").ok());
  EXPECT_FALSE(ParseNumber("inf").ok());
}

TEST(LoadDatasetTest, ThreeRows) {
  absl::StatusOr<Dataset> ds = LoadDataset(
      "id,age,admitted,sex,zip,diag\n"
      "p1,30,2009-01-02,F,a,flu\n"
      "p2,41.5,3,M,left,cold\n"
      "p3,[10;20],[0;7],{F|M},root,flu\n",
      TestSchema());
  ASSERT_TRUE(ds.ok()) << ds.status();
  ASSERT_EQ(ds->size(), 3u);
  EXPECT_EQ(ds->cell(0, 1), CellValue::Number(30));
  EXPECT_EQ(ds->cell(0, 2), CellValue::Number(1));
  EXPECT_EQ(ds->cell(1, 2), CellValue::Number(3));
  EXPECT_EQ(ds->cell(2, 1), CellValue::Interval(10, 20));
  EXPECT_EQ(ds->cell(2, 3), CellValue::ValueSet({"F", "M"}));
  EXPECT_EQ(ds->cell(0, 4), CellValue::Category("a"));
  EXPECT_TRUE(ds->cell(1, 4).is_node());
  EXPECT_EQ(ds->cell(2, 4), CellValue::Node(0));
}

TEST(LoadDatasetTest, Errors) {
  auto schema = TestSchema();
  EXPECT_THAT(LoadDataset("id,age\np,1\n", schema).status(),
              StatusIsWith(absl::StatusCode::kInvalidArgument, "header"));
  EXPECT_THAT(
      LoadDataset("id,age,admitted,sex,zip,diag\np1,30,0,F,a\n", schema)
          .status(),
      StatusIsWith(absl::StatusCode::kInvalidArgument, "line 2"));
  absl::Status bad_number =
      LoadDataset("id,age,admitted,sex,zip,diag\np1,30,0,F,a,x\n"
                  "p2,abc,0,F,a,x\n",
                  schema)
          .status();
  EXPECT_THAT(bad_number, StatusIsWith(absl::StatusCode::kInvalidArgument,
                                       "line 3, column 2 (age)"));
  EXPECT_THAT(
      LoadDataset("id,age,admitted,sex,zip,diag\np1,130,0,F,a,x\n", schema)
          .status(),
      StatusIsWith(absl::StatusCode::kInvalidArgument, "outside domain"));
  EXPECT_THAT(
      LoadDataset("id,age,admitted,sex,zip,diag\np1,30,0,X,a,x\n", schema)
          .status(),
      StatusIsWith(absl::StatusCode::kInvalidArgument, "column 4 (sex)"));
  EXPECT_THAT(
      LoadDataset("id,age,admitted,sex,zip,diag\np1,30,0,F,zz,x\n", schema)
          .status(),
      StatusIsWith(absl::StatusCode::kInvalidArgument, "column 5 (zip)"));
  // Missing cells are rejected unless allowed.
  EXPECT_THAT(
      LoadDataset("id,age,admitted,sex,zip,diag\np1,,0,F,a,x\n", schema)
          .status(),
      StatusIsWith(absl::StatusCode::kInvalidArgument, "missing value"));
  absl::StatusOr<Dataset> lenient =
      LoadDataset("id,age,admitted,sex,zip,diag\np1,,0,F,a,x\n", schema,
                  LoadOptions{.allow_missing = true});
  ASSERT_TRUE(lenient.ok());
  EXPECT_TRUE(lenient->cell(0, 1).is_missing());
}

TEST(LoadDatasetTest, ReleasedFileWithoutIdentifiers) {
  absl::StatusOr<Dataset> ds = LoadDataset(
      "age,admitted,sex,zip,diag\n[1;2],0,F,a,x\n", TestSchema());
  ASSERT_TRUE(ds.ok()) << ds.status();
  EXPECT_EQ(ds->schema().size(), 5u);
  EXPECT_FALSE(ds->schema().has_identifiers());
}

TEST(WriteDatasetTest, Encodings) {
  auto schema = TestSchema();
  Dataset ds = MakeDataset(
      schema,
      {{CellValue::Category("p,1"), CellValue::Interval(10, 20),
        CellValue::Number(59), CellValue::ValueSet({"M", "F"}),
        CellValue::Node(*schema->attribute(4).hierarchy->Find("left")),
        CellValue::Category("x")},
       {CellValue::Category("p2"), CellValue::Number(0.5),
        CellValue::Interval(0, 6.5), CellValue::Category("F"),
        CellValue::Category("c"), CellValue::Category("y")}});
  EXPECT_EQ(WriteDataset(ds),
            "id,age,admitted,sex,zip,diag\n"
            "\"p,1\",[10;20],2009-03-01,{F|M},left,x\n"
            "p2,0.5,[0;6.5],F,c,y\n");
}

// write then load is the identity, generalized cells included.
TEST(CsvRoundTripTest, RandomDatasets) {
  RandomData gen(21);
  for (int trial = 0; trial < 200; ++trial) {
    auto schema = gen.MixedSchema();
    Dataset ds = gen.Any(schema, gen.Int(1, 30));
    absl::StatusOr<Dataset> back = LoadDataset(WriteDataset(ds), schema);
    ASSERT_TRUE(back.ok()) << back.status();
    EXPECT_TRUE(back->SameContent(ds));
  }
}

TEST(CsvRoundTripTest, AwkwardNumbersAndStrings) {
  auto schema = MakeSchema({Numeric("x", -1e300, 1e300),
                            Categorical("s", {}, AttributeRole::kOther)});
  Dataset ds = MakeDataset(
      schema, {{CellValue::Number(1.0 / 3.0), CellValue::Category("a\"b")},
               {CellValue::Number(-0.0), CellValue::Category("line\nbreak")},
               {CellValue::Number(1e-300), CellValue::Category(" pad ")},
               {CellValue::Interval(-2.5e100, 7e250),
                CellValue::Category("x,y")}});
  absl::StatusOr<Dataset> back = LoadDataset(WriteDataset(ds), schema);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_TRUE(back->SameContent(ds));
}

GeneratorSpec UniformAgeSpec(uint64_t n, uint64_t seed) {
  GeneratorSpec spec;
  spec.schema = MakeSchema({Numeric("age", 0, 100)});
  spec.n_records = n;
  spec.seed = seed;
  Marginal m;
  m.type = Marginal::Type::kUniform;
  spec.marginals["age"] = m;
  return spec;
}

TEST(GeneratorTest, SameSeedSameData) {
  absl::StatusOr<Dataset> a = GenerateSynthetic(UniformAgeSpec(1000, 7));
  absl::StatusOr<Dataset> b = GenerateSynthetic(UniformAgeSpec(1000, 7));
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(WriteDataset(*a), WriteDataset(*b));
}

TEST(GeneratorTest, DistinctSeedsDiffer) {
  absl::StatusOr<Dataset> a = GenerateSynthetic(UniformAgeSpec(100, 7));
  absl::StatusOr<Dataset> b = GenerateSynthetic(UniformAgeSpec(100, 8));
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_FALSE(a->SameContent(*b));
}

TEST(GeneratorTest, UniformMeanAtLargeN) {
  absl::StatusOr<Dataset> ds = GenerateSynthetic(UniformAgeSpec(100000, 3));
  ASSERT_TRUE(ds.ok());
  double sum = 0;
  for (const Record& r : ds->records()) sum += r.cells[0].number();
  EXPECT_NEAR(sum / ds->size(), 50.0, 1.0);
}

TEST(GeneratorTest, DegenerateTable) {
  GeneratorSpec spec;
  spec.schema = MakeSchema({Categorical("c", {"a", "b"})});
  spec.n_records = 50;
  Marginal m;
  m.type = Marginal::Type::kTable;
  m.table = {{"a", 1.0}};
  spec.marginals["c"] = m;
  absl::StatusOr<Dataset> ds = GenerateSynthetic(spec);
  ASSERT_TRUE(ds.ok()) << ds.status();
  for (const Record& r : ds->records()) {
    EXPECT_EQ(r.cells[0], CellValue::Category("a"));
  }
}

TEST(GeneratorTest, InvalidSpecs) {
  GeneratorSpec spec = UniformAgeSpec(0, 1);
  EXPECT_FALSE(ValidateGeneratorSpec(spec).ok());
  spec = UniformAgeSpec(10, 1);
  spec.marginals.clear();
  EXPECT_THAT(ValidateGeneratorSpec(spec),
              StatusIsWith(absl::StatusCode::kInvalidArgument, "age"));
  spec = UniformAgeSpec(10, 1);
  spec.marginals["age"].type = Marginal::Type::kNormal;
  spec.marginals["age"].sigma = 0;
  EXPECT_FALSE(ValidateGeneratorSpec(spec).ok());
  spec = UniformAgeSpec(10, 1);
  spec.marginals["age"].max = 200;
  EXPECT_FALSE(ValidateGeneratorSpec(spec).ok());

  GeneratorSpec table;
  table.schema = MakeSchema({Categorical("c", {"a", "b"})});
  table.n_records = 5;
  Marginal m;
  m.type = Marginal::Type::kTable;
  m.table = {{"a", 0.5}, {"b", 0.4}};
  table.marginals["c"] = m;
  EXPECT_THAT(ValidateGeneratorSpec(table),
              StatusIsWith(absl::StatusCode::kInvalidArgument, "sum"));
  table.marginals["c"].table = {{"a", 0.5}, {"b", 0.5 + 1e-10}};
  EXPECT_TRUE(ValidateGeneratorSpec(table).ok());
  table.marginals["c"].table = {{"a", 0.5}, {"zz", 0.5}};
  EXPECT_FALSE(ValidateGeneratorSpec(table).ok());
}

TEST(GeneratorTest, OrderedPairsDerivedAndIntegers) {
  GeneratorSpec spec;
  spec.schema = MakeSchema({Date("in", 0, 364), Date("out", 0, 364),
                            Numeric("stay", 0, 364)});
  spec.n_records = 5000;
  spec.seed = 5;
  Marginal uniform;
  uniform.type = Marginal::Type::kUniform;
  uniform.integer = true;
  spec.marginals["in"] = uniform;
  spec.marginals["out"] = uniform;
  Marginal diff;
  diff.type = Marginal::Type::kDifference;
  diff.minuend = "out";
  diff.subtrahend = "in";
  spec.marginals["stay"] = diff;
  spec.ordered_pairs = {{"in", "out"}};
  absl::StatusOr<Dataset> ds = GenerateSynthetic(spec);
  ASSERT_TRUE(ds.ok()) << ds.status();
  for (const Record& r : ds->records()) {
    const double in = r.cells[0].number();
    const double out = r.cells[1].number();
    EXPECT_LE(in, out);
    EXPECT_EQ(in, std::floor(in));
    EXPECT_EQ(r.cells[2].number(), out - in);
  }
}

TEST(GeneratorTest, ZipfBinsFavorLowBins) {
  GeneratorSpec spec;
  spec.schema = MakeSchema({Numeric("sev", 1, 4)});
  spec.n_records = 20000;
  Marginal m;
  m.type = Marginal::Type::kZipfBins;
  m.s = 1.0;
  m.n_bins = 4;
  m.integer = true;
  spec.marginals["sev"] = m;
  absl::StatusOr<Dataset> ds = GenerateSynthetic(spec);
  ASSERT_TRUE(ds.ok()) << ds.status();
  std::vector<int> counts(5, 0);
  for (const Record& r : ds->records()) {
    ++counts[static_cast<int>(r.cells[0].number())];
  }
  // Weights 1, 1/2, 1/3, 1/4 over H = 25/12.
  const double h = 25.0 / 12.0;
  for (int v = 1; v <= 4; ++v) {
    EXPECT_NEAR(counts[v] / 20000.0, (1.0 / v) / h, 0.02) << v;
  }
}

// Spearman rank correlation, computed independently of the generator.
double Spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&v](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (size_t i = 0; i < order.size();) {
      size_t j = i;
      while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
      for (size_t t = i; t < j; ++t) r[order[t]] = 0.5 * (i + j - 1);
      i = j;
    }
    return r;
  };
  std::vector<double> rx = ranks(x);
  std::vector<double> ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += rx[i] / n;
    my += ry[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

TEST(GeneratorTest, CopulaReachesRankCorrelation) {
  for (double rho : {-0.6, 0.0, 0.8}) {
    GeneratorSpec spec;
    spec.schema = MakeSchema({Numeric("x", 0, 1), Numeric("y", 0, 1)});
    spec.n_records = 20000;
    spec.seed = 9;
    Marginal u;
    u.type = Marginal::Type::kUniform;
    spec.marginals["x"] = u;
    spec.marginals["y"] = u;
    spec.correlations = {{"x", "y", rho}};
    absl::StatusOr<Dataset> ds = GenerateSynthetic(spec);
    ASSERT_TRUE(ds.ok()) << ds.status();
    std::vector<double> x, y;
    for (const Record& r : ds->records()) {
      x.push_back(r.cells[0].number());
      y.push_back(r.cells[1].number());
    }
    // Normal-copula Spearman correlation is (6/pi) asin(rho/2).
    const double target = 6 / M_PI * std::asin(rho / 2);
    EXPECT_NEAR(Spearman(x, y), target, 0.03) << rho;
  }
}

// Every bundled-spec value lies within its declared domain.
TEST(GeneratorTest, BundledSpecStaysInDomain) {
  absl::StatusOr<std::string> text = ReadFile(DataPath("spd_generator.json"));
  ASSERT_TRUE(text.ok());
  absl::StatusOr<GeneratorSpec> spec =
      ParseGeneratorSpec(*text, SDC_DATA_DIR);
  ASSERT_TRUE(spec.ok()) << spec.status();
  EXPECT_EQ(spec->n_records, 100000u);
  spec->n_records = 3000;
  absl::StatusOr<Dataset> ds = GenerateSynthetic(*spec);
  ASSERT_TRUE(ds.ok()) << ds.status();
  for (const Record& r : ds->records()) {
    for (size_t a = 0; a < ds->schema().size(); ++a) {
      SDC_EXPECT_OK(CheckCell(r.cells[a], ds->schema(), a));
      EXPECT_FALSE(r.cells[a].is_generalized());
    }
  }
  EXPECT_EQ(ds->schema().size(), 10u);
}

TEST(GeneratorSpecTest, ParseErrors) {
  EXPECT_THAT(ParseGeneratorSpec("{", ".").status(),
              StatusIsWith(absl::StatusCode::kInvalidArgument, "byte"));
  EXPECT_FALSE(ParseGeneratorSpec(R"({"n_records": 5})", ".").ok());
  EXPECT_THAT(
      ParseGeneratorSpec(
          R"({"n_records": 5, "schema": {"attributes": [{"name": "a",
              "kind": "numeric", "role": "quasi_identifier", "min": 0,
              "max": 1}]}, "marginals": {"a": {"type": "gamma"}}})",
          ".")
          .status(),
      StatusIsWith(absl::StatusCode::kInvalidArgument, "gamma"));
  absl::StatusOr<GeneratorSpec> ok = ParseGeneratorSpec(
      R"({"n_records": 5, "seed": 18446744073709551615,
          "schema": {"attributes": [{"name": "a", "kind": "numeric",
            "role": "quasi_identifier", "min": 0, "max": 1}]},
          "marginals": {"a": {"type": "normal", "mu": 0.5, "sigma": 0.1}}})",
      ".");
  ASSERT_TRUE(ok.ok()) << ok.status();
  EXPECT_EQ(ok->seed, 18446744073709551615ull);
}

}  // namespace
}  // namespace sdc
