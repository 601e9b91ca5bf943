#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "k3ls/errors.hpp"

namespace k3ls::cli {

namespace {

struct RunConfig {
  std::string command;
  Integer n = 4;
  Integer d = 1;
  std::string mults;
  std::string model;  // quartic | double-plane | "" (by n)
  std::string model_file;
  Residue prime = kDefaultPrime;
  std::uint64_t seed = 0;
  int trials = 2;
  std::string format = "table";
  std::string output;

  // audit
  std::vector<std::string> parts;
  std::string mobile = "0:";
  // certify
  Integer m = 1;
  Integer h = 0;
  Integer k9 = 0;
  Integer twist = -1;
  std::string order = "fours-first";
  bool check_leaves = false;
  // mult
  std::size_t index = 0;
  // sweep
  std::vector<Integer> sweep_n{2, 4};
  Integer d_min = 1;
  Integer d_max = 3;
  std::size_t max_points = 5;
  Integer slack = 5;
  bool oracle = false;
  bool exclude_special = false;
  unsigned threads = 0;
  // verify
  std::string input;
};

Json config_json(const RunConfig& c) {
  Json j{{"command", c.command}, {"prime", c.prime}, {"seed", c.seed}, {"trials", c.trials}, {"format", c.format}};
  if (c.command == "vdim" || c.command == "classify" || c.command == "oracle" || c.command == "mult") {
    j["n"] = c.n;
    j["d"] = c.d;
    j["mults"] = c.mults;
  }
  if (c.command == "oracle" || c.command == "mult") {
    j["model"] = c.model;
    j["model_file"] = c.model_file;
  }
  if (c.command == "mult") j["index"] = c.index;
  if (c.command == "audit") {
    j["n"] = c.n;
    j["parts"] = c.parts;
    j["mobile"] = c.mobile;
  }
  if (c.command == "certify") {
    j["n"] = c.n;
    j["d"] = c.d;
    j["m"] = c.m;
    j["h"] = c.h;
    j["k"] = c.k9;
    j["twist"] = c.twist < 0 ? Json("m") : Json(c.twist);
    j["order"] = c.order;
    j["check_leaves"] = c.check_leaves;
  }
  if (c.command == "sweep") {
    j["n"] = c.sweep_n;
    j["d_min"] = c.d_min;
    j["d_max"] = c.d_max;
    j["max_points"] = c.max_points;
    j["slack"] = c.slack;
    j["oracle"] = c.oracle;
    j["exclude_special"] = c.exclude_special;
  }
  return j;
}

SystemClass system_from(const RunConfig& c) {
  SystemClass cls{c.n, c.d, parse_multiplicities(c.mults)};
  validate(cls);
  return cls;
}

// "d:mults" or "d:mults:mu" with mults in the m^k shorthand.
std::pair<SystemClass, Integer> parse_part(const std::string& text, Integer n, bool with_mu) {
  std::vector<std::string> fields;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ':')) fields.push_back(field);
  if (text.back() == ':') fields.emplace_back();
  const std::size_t want = with_mu ? 3 : 2;
  if (fields.size() != want) {
    throw InputError("cli: expected " + std::string(with_mu ? "d:mults:mu" : "d:mults") + ", got '" + text + "'");
  }
  SystemClass cls{n, std::stoll(fields[0]), parse_multiplicities(fields[1])};
  validate(cls);
  return {cls, with_mu ? std::stoll(fields[2]) : 1};
}

K3Model model_from(const RunConfig& c) {
  if (!c.model_file.empty()) {
    std::ifstream in(c.model_file);
    if (!in) throw InputError("cli: cannot open model file '" + c.model_file + "'");
    return read_model(in);
  }
  ModelVariant variant;
  if (!c.model.empty()) {
    variant = model_variant_from_string(c.model);
  } else if (auto by_n = model_for(c.n)) {
    variant = *by_n;
  } else {
    throw InputError("oracle: no model for n=" + std::to_string(c.n) + " (models exist for n = 2, 4)");
  }
  return K3Model::random(variant, c.prime, c.seed);
}

OracleOptions oracle_options(const RunConfig& c) {
  OracleOptions options;
  options.trials = c.trials;
  options.seed = c.seed;
  return options;
}

std::string csv_row(const SweepRow& row) {
  std::ostringstream os;
  os << row.system.n << ',' << row.system.d << ",\"" << format_multiplicities(row.system.mults) << "\","
     << row.dims.v << ',' << row.dims.e << ',' << to_string(row.verdict.case_tag) << ','
     << row.verdict.predicted_dim << ',';
  if (row.actual) os << *row.actual;
  os << ',';
  if (row.agreement) os << (*row.agreement ? "true" : "false");
  return os.str();
}

constexpr const char* kCsvHeader = "n,d,mults,v,e,case_tag,predicted,actual,agreement";

Json row_json(const SweepRow& row) {
  return Json{{"n", row.system.n},
              {"d", row.system.d},
              {"mults", format_multiplicities(row.system.mults)},
              {"v", row.dims.v},
              {"e", row.dims.e},
              {"case_tag", std::string(to_string(row.verdict.case_tag))},
              {"predicted", row.verdict.predicted_dim},
              {"actual", row.actual ? Json(*row.actual) : Json(nullptr)},
              {"agreement", row.agreement ? Json(*row.agreement) : Json(nullptr)}};
}

void print_table(std::ostream& os, const Json& value, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = value.begin(); it != value.end(); ++it) {
    if (it->is_object()) {
      os << pad << it.key() << ":\n";
      print_table(os, *it, indent + 2);
    } else if (it->is_array() && !it->empty() && it->front().is_object()) {
      os << pad << it.key() << ":\n";
      for (std::size_t i = 0; i < it->size(); ++i) {
        os << pad << "  [" << i << "]\n";
        print_table(os, (*it)[i], indent + 4);
      }
    } else {
      os << pad << std::left << std::setw(22) << it.key() << ' ' << it->dump() << '\n';
    }
  }
}

// Runs one command and returns (document, csv rows).
std::pair<Json, std::vector<SweepRow>> execute(const RunConfig& c) {
  Json result;
  std::vector<SweepRow> rows;
  if (c.command == "vdim") {
    const SystemClass cls = system_from(c);
    const DimensionPair dims = expected_dim(cls);
    result = {{"system", normalized(cls)},
              {"v", dims.v},
              {"e", dims.e},
              {"self_intersection", self_intersection(cls)},
              {"canonical_pairing", canonical_pairing(cls)}};
  } else if (c.command == "classify") {
    const SystemClass cls = normalized(system_from(c));
    const Verdict verdict = classify(cls);
    const DimensionPair dims = expected_dim(cls);
    result = {{"system", cls}, {"v", dims.v}, {"e", dims.e}, {"verdict", verdict}};
    rows.push_back({cls, dims, verdict, std::nullopt, std::nullopt});
  } else if (c.command == "audit") {
    std::vector<FixedComponent> parts;
    for (const auto& text : c.parts) {
      auto [cls, mu] = parse_part(text, c.n, true);
      parts.push_back({cls, mu});
    }
    const SystemClass mobile = parse_part(c.mobile, c.n, false).first;
    Json parts_json = Json::array();
    for (const auto& p : parts) parts_json.push_back({{"class", p.cls}, {"multiplicity", p.multiplicity}});
    result = {{"parts", parts_json}, {"mobile", mobile}, {"report", segre_audit(parts, mobile)}};
  } else if (c.command == "certify") {
    const HomogeneousSystem root{c.n, c.d, c.m, c.h, c.k9};
    ReductionStrategy strategy;
    if (c.twist >= 0) strategy.twist = c.twist;
    strategy.order = reduction_order_from_string(c.order);
    LeafChecker checker;
    if (c.check_leaves) checker = oracle_leaf_checker(c.prime, c.seed, oracle_options(c));
    const CertificateTree tree = theorem_deg_certify(root, checker, strategy);
    const auto issues = verify_certificate(tree);
    result = {{"certificate", certificate_to_json(tree)}, {"verification", issues}};
  } else if (c.command == "oracle") {
    const SystemClass cls = system_from(c);
    const K3Model model = model_from(c);
    const OracleReport report = speciality_test(model, cls, oracle_options(c));
    result = {{"report", report}};
    SweepRow row{normalized(cls), expected_dim(cls), classify(normalized(cls)), report.actual_dim, std::nullopt};
    row.agreement = *row.actual == row.verdict.predicted_dim;
    rows.push_back(row);
  } else if (c.command == "mult") {
    const SystemClass cls = normalized(system_from(c));
    const K3Model model = model_from(c);
    if (c.index >= cls.points()) throw InputError("cli: --index out of range");
    const auto predicted = predicted_general_multiplicities(cls);
    const Integer measured = measure_general_multiplicity(model, cls, c.index, oracle_options(c));
    result = {{"system", cls},
              {"index", c.index},
              {"predicted", predicted[c.index]},
              {"measured", measured},
              {"agrees_with_prediction", measured == predicted[c.index]}};
  } else if (c.command == "sweep") {
    if (c.d_min < 1 || c.d_max < c.d_min) throw InputError("cli: need 1 <= --d-min <= --d-max");
    std::vector<SystemClass> systems;
    for (Integer n : c.sweep_n) {
      for (Integer d = c.d_min; d <= c.d_max; ++d) {
        const Integer budget = d * d * n / 2 + 2 + c.slack;
        for (auto& mults : enumerate_multisets(c.max_points, budget)) {
          SystemClass cls{n, d, std::move(mults)};
          validate(cls);
          if (c.exclude_special && is_conjecturally_special(cls)) continue;
          systems.push_back(std::move(cls));
        }
      }
    }
    rows = evaluate_rows(systems, c.oracle, c.prime, c.seed, oracle_options(c), c.threads);
    Json rows_json = Json::array();
    std::size_t disagreements = 0;
    for (const auto& row : rows) {
      rows_json.push_back(row_json(row));
      if (row.agreement && !*row.agreement) ++disagreements;
    }
    result = {{"rows", rows_json}, {"row_count", rows.size()}, {"disagreements", disagreements}};
  } else if (c.command == "verify") {
    std::ifstream in(c.input);
    if (!in) throw InputError("cli: cannot open '" + c.input + "'");
    const Json document = Json::parse(in);
    const auto issues = validate_document(document);
    result = {{"input", c.input}, {"verified_command", document.value("command", "")}, {"valid", issues.empty()},
              {"issues", issues}};
  }
  return {make_document(c.command, config_json(c), std::move(result)), rows};
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--prime", c.prime, "prime for the oracle (env K3LS_PRIME)");
  sub->add_option("--seed", c.seed, "seed for all random choices (env K3LS_SEED)");
  sub->add_option("--trials", c.trials, "random instances per oracle test")->check(CLI::PositiveNumber);
  sub->add_option("--format", c.format, "table | json | csv")->check(CLI::IsMember({"table", "json", "csv"}));
  sub->add_option("--output", c.output, "write the report to this file");
}

void add_class(CLI::App* sub, RunConfig& c) {
  sub->add_option("--n", c.n, "H^2 of the polarization")->required();
  sub->add_option("--d", c.d, "degree")->required();
  sub->add_option("--mults", c.mults, "multiplicities, e.g. 2^4,3");
}

}  // namespace

std::vector<std::vector<Integer>> enumerate_multisets(std::size_t max_points, Integer budget) {
  std::vector<std::vector<Integer>> out;
  std::vector<Integer> current;
  auto rec = [&](auto&& self, Integer max_m, Integer left) -> void {
    out.push_back(current);
    if (current.size() == max_points) return;
    for (Integer m = 1; m <= max_m && conditions(m) <= left; ++m) {
      current.push_back(m);
      self(self, m, left - conditions(m));
      current.pop_back();
    }
  };
  Integer max_m = 1;
  while (conditions(max_m + 1) <= budget) ++max_m;
  rec(rec, max_m, budget);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  });
  return out;
}

std::vector<SweepRow> evaluate_rows(const std::vector<SystemClass>& systems, bool oracle, Residue prime,
                                    std::uint64_t seed, const OracleOptions& options, unsigned threads) {
  std::vector<SweepRow> rows(systems.size());
  std::vector<std::optional<K3Model>> models;  // index by n: 0 -> n = 2, 1 -> n = 4
  if (oracle) {
    models.emplace_back(K3Model::random(ModelVariant::double_sextic_plane, prime, seed));
    models.emplace_back(K3Model::random(ModelVariant::quartic_in_p3, prime, seed));
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(systems.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < systems.size(); i = next++) {
      try {
        SweepRow& row = rows[i];
        row.system = systems[i];
        row.dims = expected_dim(row.system);
        row.verdict = classify(row.system);
        if (oracle && model_for(row.system.n)) {
          const K3Model& model = *models[row.system.n == 2 ? 0 : 1];
          row.actual = speciality_test(model, row.system, options).actual_dim;
          row.agreement = *row.actual == row.verdict.predicted_dim;
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, systems.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  if (const char* env = std::getenv("K3LS_PRIME")) c.prime = std::strtoll(env, nullptr, 10);
  if (const char* env = std::getenv("K3LS_SEED")) c.seed = std::strtoull(env, nullptr, 10);

  CLI::App app{"k3ls: linear systems through fat points on generic K3 surfaces"};
  app.require_subcommand(1);

  auto* vdim = app.add_subcommand("vdim", "virtual and expected dimension");
  add_class(vdim, c);
  add_common(vdim, c);

  auto* cls = app.add_subcommand("classify", "conjectural speciality and fixed/mobile decomposition");
  add_class(cls, c);
  add_common(cls, c);

  auto* audit = app.add_subcommand("audit", "pairwise audit of hypothesized fixed components");
  audit->add_option("--n", c.n, "H^2 of the polarization")->required();
  audit->add_option("--part", c.parts, "fixed component as d:mults:mu (repeatable)");
  audit->add_option("--mobile", c.mobile, "mobile part as d:mults");
  add_common(audit, c);

  auto* certify = app.add_subcommand("certify", "degeneration certificate for L^n(d, m^(4^h 9^k))");
  certify->set_help_flag("--help", "Print this help message and exit");
  certify->add_option("--n", c.n)->required();
  certify->add_option("--d", c.d)->required();
  certify->add_option("--m", c.m)->required();
  certify->add_option("--h", c.h, "factors 4 in the point count");
  certify->add_option("--k", c.k9, "factors 9 in the point count");
  certify->add_option("--twist", c.twist, "fixed twist per step (default: m)");
  certify->add_option("--order", c.order, "fours-first | nines-first")
      ->check(CLI::IsMember({"fours-first", "nines-first"}));
  certify->add_flag("--check-leaves", c.check_leaves, "run the oracle on the single-point leaves");
  add_common(certify, c);

  auto* oracle = app.add_subcommand("oracle", "exact interpolation rank on a random K3 model");
  add_class(oracle, c);
  oracle->add_option("--model", c.model, "quartic | double-plane (default by n)");
  oracle->add_option("--model-file", c.model_file, "plain-text model file");
  add_common(oracle, c);

  auto* mult = app.add_subcommand("mult", "measured multiplicity of the general member at one point");
  add_class(mult, c);
  mult->add_option("--index", c.index, "point index (0-based)");
  mult->add_option("--model", c.model);
  mult->add_option("--model-file", c.model_file);
  add_common(mult, c);

  auto* sweep = app.add_subcommand("sweep", "table over degrees and multiplicity multisets");
  sweep->add_option("--n", c.sweep_n, "values of n (repeatable)");
  sweep->add_option("--d-min", c.d_min);
  sweep->add_option("--d-max", c.d_max);
  sweep->add_option("--max-points", c.max_points);
  sweep->add_option("--slack", c.slack, "conditions allowed beyond h^0");
  sweep->add_flag("--oracle", c.oracle, "fill the actual and agreement columns");
  sweep->add_flag("--exclude-special", c.exclude_special, "skip the conjectured special families");
  sweep->add_option("--threads", c.threads, "worker threads (0 = hardware)");
  add_common(sweep, c);

  auto* verify = app.add_subcommand("verify", "re-validate a JSON document produced by this tool");
  verify->add_option("input", c.input)->required();
  verify->add_option("--format", c.format)->check(CLI::IsMember({"table", "json", "csv"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }
  c.command = app.get_subcommands().front()->get_name();

  std::pair<Json, std::vector<SweepRow>> produced;
  try {
    produced = execute(c);
  } catch (const InputError& e) {
    err << "input error [" << c.command << "]: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "input error [" << c.command << "]: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "computation error [" << c.command << "]: " << e.what() << "\n";
    return kComputationError;
  }

  std::ofstream file;
  if (!c.output.empty()) {
    file.open(c.output);
    if (!file) {
      err << "input error: cannot write '" << c.output << "'\n";
      return kUsageError;
    }
  }
  std::ostream& sink = c.output.empty() ? out : file;
  const auto& [document, rows] = produced;
  if (c.format == "json") {
    sink << document.dump(2) << '\n';
  } else if (c.format == "csv") {
    sink << kCsvHeader << '\n';
    if (rows.empty() && document["result"].contains("v")) {
      const SystemClass system = document["result"]["system"].get<SystemClass>();
      sink << system.n << ',' << system.d << ",\"" << format_multiplicities(system.mults) << "\","
           << document["result"]["v"] << ',' << document["result"]["e"] << ",,,,\n";
    }
    for (const auto& row : rows) sink << csv_row(row) << '\n';
  } else {
    print_table(sink, document);
  }
  if (c.command == "verify" && !document["result"]["valid"].get<bool>()) return kComputationError;
  return kOk;
}

}  // namespace k3ls::cli
