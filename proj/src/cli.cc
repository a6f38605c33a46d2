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

#include "sdc/cli.h"

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "sdc/anonymize.h"
#include "sdc/csv_io.h"
#include "sdc/dataset.h"
#include "sdc/generator.h"
#include "sdc/info_loss.h"
#include "sdc/report.h"
#include "sdc/risk.h"
#include "sdc/schema_io.h"
#include "sdc/status_macros.h"

namespace sdc {
namespace {

struct Flags {
  std::string spec;
  std::string data;
  std::string schema;
  std::string original;
  std::string released;
  std::string out;
  std::string format;
  std::string fraction_text;
  std::string confidential;
  std::vector<std::string> attrs;
  std::vector<std::string> curve;
  std::vector<int> ks;
  std::vector<std::string> fractions;
  std::optional<uint64_t> seed;
  std::optional<uint64_t> n;
  std::optional<int> k;
  std::optional<double> t;
  int trials = 10;
};

struct Loaded {
  Dataset ds;
  std::string digest;
};

absl::StatusOr<std::shared_ptr<const Schema>> LoadSchema(
    const std::string& path) {
  SDC_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  absl::StatusOr<Schema> schema = ParseSchema(text);
  if (!schema.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", schema.status().message()));
  }
  return std::make_shared<const Schema>(*std::move(schema));
}

absl::StatusOr<Loaded> LoadData(const std::string& path,
                                std::shared_ptr<const Schema> schema) {
  SDC_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  absl::StatusOr<Dataset> ds = LoadDataset(text, std::move(schema));
  if (!ds.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", ds.status().message()));
  }
  return Loaded{*std::move(ds), Sha256Hex(text)};
}

ReportFormat ResolveFormat(const Flags& f) {
  if (f.format == "json") return ReportFormat::kJson;
  if (f.format == "csv") return ReportFormat::kCsv;
  return absl::EndsWith(f.out, ".json") ? ReportFormat::kJson
                                        : ReportFormat::kCsv;
}

class Output {
 public:
  Output(const Flags& flags, std::ostream& out) : flags_(flags), out_(out) {}

  absl::Status Write(absl::string_view content) {
    if (flags_.out.empty() || flags_.out == "-") {
      out_ << content;
      out_.flush();
      return absl::OkStatus();
    }
    return WriteFile(flags_.out, content);
  }

  absl::Status WriteRelease(const Dataset& ds, absl::string_view digest) {
    SDC_RETURN_IF_ERROR(Write(WriteDataset(ds)));
    if (flags_.out.empty() || flags_.out == "-") return absl::OkStatus();
    return WriteFile(flags_.out + ".meta.json",
                     MetaSidecar(ds.provenance(), digest));
  }

 private:
  const Flags& flags_;
  std::ostream& out_;
};

std::vector<std::string> QiNames(const Dataset& ds) {
  std::vector<std::string> names;
  for (size_t a : ds.schema().quasi_identifiers()) {
    names.push_back(ds.schema().attribute(a).name);
  }
  return names;
}

absl::StatusOr<ComparisonRow> Evaluate(const Dataset& original,
                                       const Dataset& released,
                                       std::string mechanism,
                                       std::string param,
                                       LossReport* loss_out = nullptr) {
  SDC_ASSIGN_OR_RETURN(RiskReport risk,
                       ComputeRiskReport(released, QiNames(released)));
  SDC_ASSIGN_OR_RETURN(LossReport loss, InformationLoss(original, released));
  ComparisonRow row{std::move(mechanism), std::move(param), risk.unicity,
                    risk.random_correct_rate, loss.overall_loss};
  if (loss_out != nullptr) *loss_out = std::move(loss);
  return row;
}

std::string ProvenanceParam(const Provenance& p) {
  switch (p.mechanism) {
    case Mechanism::kKAnonymous:
      return p.k.has_value() ? absl::StrCat(*p.k) : "";
    case Mechanism::kCoarsened:
      return p.fraction.has_value() ? FormatNumber(*p.fraction) : "";
    case Mechanism::kTClose:
      return absl::StrCat("k=", p.k.value_or(0), ";t=",
                          FormatNumber(p.t.value_or(0)));
    case Mechanism::kOriginal:
      return "";
  }
  return "";
}

// Subcommand bodies. A non-OK status means a data or schema error.
absl::Status RunGenerate(const Flags& f, Output& out) {
  SDC_ASSIGN_OR_RETURN(std::string text, ReadFile(f.spec));
  std::string base = std::filesystem::path(f.spec).parent_path().string();
  absl::StatusOr<GeneratorSpec> spec = ParseGeneratorSpec(text, base);
  if (!spec.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(f.spec, ": ", spec.status().message()));
  }
  if (f.seed.has_value()) spec->seed = *f.seed;
  if (f.n.has_value()) spec->n_records = *f.n;
  SDC_ASSIGN_OR_RETURN(Dataset ds, GenerateSynthetic(*spec));
  return out.WriteRelease(ds, Sha256Hex(text));
}

absl::Status RunRisk(const Flags& f, Output& out) {
  SDC_ASSIGN_OR_RETURN(auto schema, LoadSchema(f.schema));
  SDC_ASSIGN_OR_RETURN(Loaded in, LoadData(f.data, schema));
  if (!f.curve.empty()) {
    SDC_ASSIGN_OR_RETURN(auto curve, RiskCurve(in.ds, f.curve));
    return out.Write(RiskCurveText(curve, ResolveFormat(f)));
  }
  SDC_ASSIGN_OR_RETURN(RiskReport report, ComputeRiskReport(in.ds, f.attrs));
  return out.Write(RiskReportText(f.attrs, report, ResolveFormat(f)));
}

absl::Status RunSampleRisk(const Flags& f, double fraction, Output& out) {
  SDC_ASSIGN_OR_RETURN(auto schema, LoadSchema(f.schema));
  SDC_ASSIGN_OR_RETURN(Loaded in, LoadData(f.data, schema));
  const uint64_t seed = f.seed.value_or(0);
  SDC_ASSIGN_OR_RETURN(
      auto trials, SamplingUnicity(in.ds, f.attrs, fraction, f.trials, seed));
  return out.Write(
      SamplingText(f.attrs, fraction, seed, trials, ResolveFormat(f)));
}

absl::Status RunCoarsen(const Flags& f, double fraction, Output& out) {
  SDC_ASSIGN_OR_RETURN(auto schema, LoadSchema(f.schema));
  SDC_ASSIGN_OR_RETURN(Loaded in, LoadData(f.data, schema));
  SDC_ASSIGN_OR_RETURN(Dataset released, CoarsenNaive(in.ds, fraction));
  return out.WriteRelease(released, in.digest);
}

absl::Status RunKanon(const Flags& f, Output& out) {
  SDC_ASSIGN_OR_RETURN(auto schema, LoadSchema(f.schema));
  SDC_ASSIGN_OR_RETURN(Loaded in, LoadData(f.data, schema));
  SDC_ASSIGN_OR_RETURN(Dataset released, KAnonymize(in.ds, *f.k));
  return out.WriteRelease(released, in.digest);
}

absl::Status RunTclose(const Flags& f, Output& out) {
  SDC_ASSIGN_OR_RETURN(auto schema, LoadSchema(f.schema));
  SDC_ASSIGN_OR_RETURN(Loaded in, LoadData(f.data, schema));
  SDC_ASSIGN_OR_RETURN(Dataset released,
                       TCloseAnonymize(in.ds, *f.k, *f.t, f.confidential));
  return out.WriteRelease(released, in.digest);
}

absl::Status RunLoss(const Flags& f, Output& out) {
  SDC_ASSIGN_OR_RETURN(auto schema, LoadSchema(f.schema));
  SDC_ASSIGN_OR_RETURN(Loaded original, LoadData(f.original, schema));
  SDC_ASSIGN_OR_RETURN(Loaded released, LoadData(f.released, schema));
  std::string mechanism = "unknown";
  std::string param;
  if (absl::StatusOr<std::string> meta = ReadFile(f.released + ".meta.json");
      meta.ok()) {
    absl::StatusOr<Provenance> p = ParseMetaSidecar(*meta);
    if (!p.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          f.released, ".meta.json: ", p.status().message()));
    }
    mechanism = std::string(MechanismName(p->mechanism));
    param = ProvenanceParam(*p);
  }
  LossReport loss;
  SDC_ASSIGN_OR_RETURN(
      ComparisonRow row,
      Evaluate(original.ds, released.ds, mechanism, param, &loss));
  return out.Write(LossText(row, loss, ResolveFormat(f)));
}

absl::Status RunVerify(const Flags& f, Output& out, int& code) {
  SDC_ASSIGN_OR_RETURN(auto schema, LoadSchema(f.schema));
  SDC_ASSIGN_OR_RETURN(Loaded in, LoadData(f.data, schema));
  std::optional<std::string> confidential;
  if (!f.confidential.empty()) confidential = f.confidential;
  SDC_ASSIGN_OR_RETURN(AnonymizationReport report,
                       VerifyAnonymity(in.ds, *f.k, f.t, confidential));
  SDC_RETURN_IF_ERROR(out.Write(VerifyText(report, ResolveFormat(f))));
  if (!report.passed()) code = kExitVerifyFailed;
  return absl::OkStatus();
}

absl::Status RunCompare(const Flags& f, const std::vector<double>& fractions,
                        Output& out) {
  SDC_ASSIGN_OR_RETURN(auto schema, LoadSchema(f.schema));
  SDC_ASSIGN_OR_RETURN(Loaded in, LoadData(f.data, schema));
  std::vector<ComparisonRow> rows;
  for (int k : f.ks) {
    SDC_ASSIGN_OR_RETURN(Dataset released, KAnonymize(in.ds, k));
    SDC_ASSIGN_OR_RETURN(
        ComparisonRow row,
        Evaluate(in.ds, released, std::string(MechanismName(
                                      Mechanism::kKAnonymous)),
                 absl::StrCat(k)));
    rows.push_back(std::move(row));
  }
  for (size_t i = 0; i < fractions.size(); ++i) {
    SDC_ASSIGN_OR_RETURN(Dataset released, CoarsenNaive(in.ds, fractions[i]));
    SDC_ASSIGN_OR_RETURN(
        ComparisonRow row,
        Evaluate(in.ds, released,
                 std::string(MechanismName(Mechanism::kCoarsened)),
                 f.fractions[i]));
    rows.push_back(std::move(row));
  }
  return out.Write(ComparisonText(rows, ResolveFormat(f)));
}

void AddOut(CLI::App* cmd, Flags& f, bool report) {
  cmd->add_option("--out", f.out, "Output file ('-' or absent: stdout)");
  if (report) {
    cmd->add_option("--format", f.format,
                    "Report format; inferred from --out when absent")
        ->check(CLI::IsMember({"json", "csv"}));
  }
}

void AddInput(CLI::App* cmd, Flags& f) {
  cmd->add_option("--data", f.data, "Dataset CSV")->required();
  cmd->add_option("--schema", f.schema, "Schema JSON")->required();
}

}  // namespace

absl::StatusOr<double> ParseFraction(absl::string_view text) {
  double value = 0;
  std::vector<absl::string_view> parts = absl::StrSplit(text, '/');
  if (parts.size() == 2) {
    int64_t p = 0;
    int64_t q = 0;
    if (!absl::SimpleAtoi(parts[0], &p) || !absl::SimpleAtoi(parts[1], &q) ||
        p <= 0 || q <= 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad fraction '", text, "'"));
    }
    value = static_cast<double>(p) / static_cast<double>(q);
  } else if (parts.size() != 1 || !absl::SimpleAtod(text, &value)) {
    return absl::InvalidArgumentError(
        absl::StrCat("bad fraction '", text, "'"));
  }
  if (!(value > 0 && value <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("fraction '", text, "' is outside (0, 1]"));
  }
  return value;
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Flags f;
  CLI::App app("Reidentification risk measurement and anonymization.",
               "sdctool");
  app.require_subcommand(1);

  CLI::App* generate =
      app.add_subcommand("generate", "Generate a synthetic dataset");
  generate->add_option("--spec", f.spec, "Generator spec JSON")->required();
  generate->add_option("--seed", f.seed, "Override the spec seed");
  generate->add_option("--n", f.n, "Override the record count")
      ->check(CLI::PositiveNumber);
  AddOut(generate, f, false);

  CLI::App* risk = app.add_subcommand("risk", "Reidentification risk");
  AddInput(risk, f);
  CLI::Option* attrs =
      risk->add_option("--attrs", f.attrs, "Attributes known to the attacker")
          ->delimiter(',');
  CLI::Option* curve =
      risk->add_option("--curve", f.curve,
                       "Ordered attributes; one report per prefix")
          ->delimiter(',');
  attrs->excludes(curve);
  AddOut(risk, f, true);

  CLI::App* sample = app.add_subcommand(
      "sample-risk", "Sample versus population uniqueness");
  AddInput(sample, f);
  sample->add_option("--attrs", f.attrs, "Attributes")
      ->delimiter(',')
      ->required();
  sample->add_option("--fraction", f.fraction_text, "Sample fraction")
      ->required();
  sample->add_option("--trials", f.trials, "Number of samples")
      ->check(CLI::PositiveNumber);
  sample->add_option("--seed", f.seed, "Seed of trial 0");
  AddOut(sample, f, true);

  CLI::App* coarsen = app.add_subcommand("coarsen", "Naive coarsening");
  AddInput(coarsen, f);
  coarsen->add_option("--fraction", f.fraction_text, "Bin width fraction")
      ->required();
  AddOut(coarsen, f, false);

  CLI::App* kanon = app.add_subcommand("kanon", "k-anonymize with MDAV");
  AddInput(kanon, f);
  kanon->add_option("--k", f.k, "Minimum class size")
      ->required()
      ->check(CLI::PositiveNumber);
  AddOut(kanon, f, false);

  CLI::App* tclose = app.add_subcommand("tclose", "k-anonymity + t-closeness");
  AddInput(tclose, f);
  tclose->add_option("--k", f.k, "Minimum class size")
      ->required()
      ->check(CLI::PositiveNumber);
  tclose->add_option("--t", f.t, "Maximum EMD")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  tclose->add_option("--confidential", f.confidential, "Confidential attribute")
      ->required();
  AddOut(tclose, f, false);

  CLI::App* loss = app.add_subcommand("loss", "Information loss");
  loss->add_option("--original", f.original, "Original CSV")->required();
  loss->add_option("--released", f.released, "Released CSV")->required();
  loss->add_option("--schema", f.schema, "Schema JSON")->required();
  AddOut(loss, f, true);

  CLI::App* verify = app.add_subcommand("verify", "Check k / t guarantees");
  AddInput(verify, f);
  verify->add_option("--k", f.k, "Minimum class size")
      ->required()
      ->check(CLI::PositiveNumber);
  CLI::Option* t = verify->add_option("--t", f.t, "Maximum EMD")
                       ->check(CLI::Range(0.0, 1.0));
  CLI::Option* conf = verify->add_option("--confidential", f.confidential,
                                         "Confidential attribute");
  t->needs(conf);
  conf->needs(t);
  AddOut(verify, f, true);

  CLI::App* compare =
      app.add_subcommand("compare", "k-anonymity versus coarsening table");
  AddInput(compare, f);
  compare->add_option("--ks", f.ks, "k values")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  compare->add_option("--fractions", f.fractions, "Coarsening fractions")
      ->delimiter(',');
  AddOut(compare, f, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  // Flag checks that CLI11 cannot express; all happen before any I/O.
  auto usage = [&err](absl::string_view message) {
    err << "sdctool: " << message << "\n";
    return kExitUsage;
  };
  double fraction = 0;
  std::vector<double> fractions;
  if (sample->parsed() || coarsen->parsed()) {
    absl::StatusOr<double> parsed = ParseFraction(f.fraction_text);
    if (!parsed.ok()) return usage(parsed.status().message());
    fraction = *parsed;
  }
  if (risk->parsed() && f.attrs.empty() && f.curve.empty()) {
    return usage("risk needs --attrs or --curve");
  }
  if (compare->parsed()) {
    if (f.ks.empty() && f.fractions.empty()) {
      return usage("compare needs --ks and/or --fractions");
    }
    for (const std::string& text : f.fractions) {
      absl::StatusOr<double> parsed = ParseFraction(text);
      if (!parsed.ok()) return usage(parsed.status().message());
      fractions.push_back(*parsed);
    }
  }

  Output output(f, out);
  int code = kExitOk;
  absl::Status status;
  if (generate->parsed()) {
    status = RunGenerate(f, output);
  } else if (risk->parsed()) {
    status = RunRisk(f, output);
  } else if (sample->parsed()) {
    status = RunSampleRisk(f, fraction, output);
  } else if (coarsen->parsed()) {
    status = RunCoarsen(f, fraction, output);
  } else if (kanon->parsed()) {
    status = RunKanon(f, output);
  } else if (tclose->parsed()) {
    status = RunTclose(f, output);
  } else if (loss->parsed()) {
    status = RunLoss(f, output);
  } else if (verify->parsed()) {
    status = RunVerify(f, output, code);
  } else if (compare->parsed()) {
    status = RunCompare(f, fractions, output);
  }
  if (!status.ok()) {
    err << "sdctool: " << status.message() << "\n";
    return kExitData;
  }
  return code;
}

}  // namespace sdc
