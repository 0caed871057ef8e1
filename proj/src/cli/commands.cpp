#include "fh/cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "fh/cli/cache.hpp"
#include "fh/cli/claims.hpp"
#include "fh/errors.hpp"
#include "fh/exactla.hpp"
#include "fh/fhm1.hpp"
#include "fh/foulkes_map.hpp"
#include "fh/plethysm.hpp"

namespace fh::cli {

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr const char* kSchema = "fhm-result/1";

ordered_json big(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

ordered_json parts_json(const Partition& p) { return std::vector<int>(p.parts().begin(), p.parts().end()); }

std::string parts_csv(const Partition& p) {
  std::string s;
  for (int k = 0; k < p.length(); ++k) s += (k ? "," : "") + std::to_string(p[k]);
  return "\"" + s + "\"";
}

struct Result {
  std::string command;
  ordered_json parameters = ordered_json::object();
  ordered_json outputs = ordered_json::object();
  ordered_json artifacts = ordered_json::array();
  ordered_json timing = ordered_json::object();
  std::string status = "ok";
  std::string error;

  ordered_json to_json() const {
    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = command;
    j["parameters"] = parameters;
    j["outputs"] = outputs;
    j["artifacts"] = artifacts;
    j["timing"] = timing;
    j["status"] = status;
    if (!error.empty()) j["error"] = error;
    return j;
  }
};

int exit_code_of(const std::string& status) {
  if (status == "ok") return kExitOk;
  if (status == "violated") return kExitViolated;
  if (status == "resource_limit") return kExitResource;
  return kExitUsage;
}

struct Options {
  int a = 0;
  int b = 0;
  int limit = kDefaultPsiLimit;
  bool fused = false;
  bool certify = false;
  std::string export_path;
  std::string claims = "all";
  int max_ab = 0;
  std::string lambda;
  std::string format = "json";
};

void require_positive(const Options& o) {
  if (o.a < 1 || o.b < 1) throw ArgumentError("--a and --b must be positive");
}

void run_psi(const Options& o, Result& r) {
  require_positive(o);
  r.parameters = {{"a", o.a}, {"b", o.b}, {"fused", o.fused}, {"certify", o.certify}, {"limit", o.limit}};
  const auto start = Clock::now();
  const PsiMatrix psi = o.fused ? psi_fused(o.a, o.b, o.limit) : psi_composed(o.a, o.b, o.limit);
  const auto built = Clock::now();
  const SparseExactMatrix& m = psi.matrix;
  r.outputs["domain_dim"] = m.cols();
  r.outputs["codomain_dim"] = m.rows();
  r.outputs["nnz"] = m.nnz();

  if (o.certify) {
    const RankCertificate cert = certify_injective(m);
    r.outputs["rank"] = cert.rank;
    r.outputs["injective"] = cert.injective;
    r.outputs["method"] = to_string(cert.method);
    r.outputs["primes"] = cert.primes;
    r.outputs["inconclusive"] = cert.inconclusive;
    // Independent exact rank where dense elimination fits the limits.
    ordered_json exact = nullptr;
    if (cert.method == RankMethod::Exact) {
      exact = cert.rank;
    } else {
      try {
        exact = rank_exact(m);
      } catch (const ResourceError&) {
      }
    }
    r.outputs["exact_rank"] = exact;
    if (!exact.is_null() && exact.get<std::size_t>() != cert.rank)
      throw ConsistencyError("exact rank differs from the certificate");
  } else {
    const Prime p = default_primes(1).front();
    const std::size_t rank = rank_mod_p(m, p);
    r.outputs["rank"] = rank;
    r.outputs["injective"] = rank == m.cols();
    r.outputs["method"] = to_string(RankMethod::Modular);
    r.outputs["primes"] = std::vector<Prime>{p};
  }
  const auto ranked = Clock::now();

  if (!o.export_path.empty()) {
    std::ofstream file(o.export_path, std::ios::binary);
    if (!file) throw ArgumentError("cannot open " + o.export_path + " for writing");
    write_fhm1(file, m, "psi");
    if (!file) throw ResourceError("failed writing " + o.export_path);
    r.artifacts.push_back({{"kind", "fhm1"}, {"path", o.export_path}});
  }
  r.timing["build_seconds"] = std::chrono::duration<double>(built - start).count();
  r.timing["rank_seconds"] = std::chrono::duration<double>(ranked - built).count();
}

void run_verify(const Options& o, Result& r, std::ostream& err) {
  static const std::vector<std::string> known = {"commute", "invariance", "factorization", "qsplit", "zeta", "wedge"};
  if (o.max_ab < 1) throw ArgumentError("--max-ab must be positive");
  r.parameters = {{"claims", o.claims}, {"max_ab", o.max_ab}};
  const std::vector<Shape> shapes = factor_shapes(o.max_ab);
  std::vector<ClaimResult> results;
  for (const std::string& name : known) {
    if (o.claims != "all" && o.claims != name) continue;
    if (name == "commute") results.push_back(verify_commute(o.max_ab));
    if (name == "invariance") {
      results.push_back(verify_equivariance(std::min(o.max_ab, 6)));
      results.push_back(verify_invariance(shapes));
    }
    if (name == "factorization") results.push_back(verify_factorization(shapes));
    if (name == "qsplit") results.push_back(verify_qsplit(shapes));
    if (name == "zeta") results.push_back(verify_zeta(shapes));
    if (name == "wedge") results.push_back(verify_wedge(o.max_ab));
  }
  bool all = true;
  ordered_json rows = ordered_json::array();
  ordered_json seconds = ordered_json::object();
  for (const ClaimResult& c : results) {
    all = all && c.passed;
    err << c.claim << ": " << (c.passed ? "pass" : "FAIL") << " (" << c.checks << " checks)";
    if (!c.passed) err << " counterexample: " << c.counterexample;
    err << '\n';
    ordered_json row = {{"claim", c.claim}, {"passed", c.passed}, {"checks", c.checks}};
    if (!c.passed) row["counterexample"] = c.counterexample;
    rows.push_back(row);
    seconds[c.claim] = c.seconds;
  }
  r.outputs["claims"] = rows;
  r.outputs["all_passed"] = all;
  r.timing["claims"] = seconds;
  if (!all) r.status = "violated";
}

MultiplicityVector cached_multiplicities(Cache& cache, int a, int b) {
  if (a * b > kOracleLimit)
    throw ResourceError("ab = " + std::to_string(a * b) + " exceeds the oracle limit " + std::to_string(kOracleLimit));
  return multiplicities(a, b, cache.character_table(a * b), cache.block_partitions(a, b));
}

void report_comparison(const ComparisonReport& report, Result& r) {
  ordered_json rows = ordered_json::array();
  for (const ComparisonRow& row : report.rows)
    rows.push_back({{"lambda", parts_json(row.lambda)},
                    {"left", big(row.left)},
                    {"right", big(row.right)},
                    {"ok", row.ok}});
  ordered_json violations = ordered_json::array();
  for (const Partition& p : report.violations) violations.push_back(parts_json(p));
  r.outputs["rows"] = rows;
  r.outputs["holds"] = report.holds;
  r.outputs["violations"] = violations;
  if (!report.holds) r.status = "violated";
}

void run_comparison(const Options& o, Result& r, bool foulkes) {
  require_positive(o);
  r.parameters = {{"a", o.a}, {"b", o.b}};
  Cache cache(default_cache_dir());
  const MultiplicityVector left = cached_multiplicities(cache, o.a, o.b);
  const MultiplicityVector right = o.a == o.b ? left : cached_multiplicities(cache, o.b, o.a);
  report_comparison(foulkes ? foulkes_report(o.a, o.b, left, right) : hermite_report(o.a, o.b, left, right), r);
}

void run_mult(const Options& o, Result& r) {
  require_positive(o);
  r.parameters = {{"a", o.a}, {"b", o.b}};
  std::optional<Partition> lambda;
  if (!o.lambda.empty()) {
    lambda = Partition::parse(o.lambda);
    if (lambda->size() != o.a * o.b) throw ArgumentError("--lambda must be a partition of ab");
    r.parameters["lambda"] = parts_json(*lambda);
  }
  Cache cache(default_cache_dir());
  const MultiplicityVector mults = cached_multiplicities(cache, o.a, o.b);
  ordered_json rows = ordered_json::array();
  for (const Partition& p : partitions_of(o.a * o.b)) {
    if (lambda && p != *lambda) continue;
    rows.push_back({{"lambda", parts_json(p)}, {"multiplicity", big(mults.at(p))}});
  }
  r.outputs["rows"] = rows;
}

void write_csv(const Result& r, std::ostream& out) {
  const ordered_json& rows = r.outputs.at("rows");
  if (r.command == "mult") {
    out << "lambda,multiplicity\n";
    for (const auto& row : rows) out << parts_csv(Partition(row["lambda"].get<std::vector<int>>())) << ',' << row["multiplicity"] << '\n';
  } else {
    out << "lambda,left,right,ok\n";
    for (const auto& row : rows)
      out << parts_csv(Partition(row["lambda"].get<std::vector<int>>())) << ',' << row["left"] << ',' << row["right"]
          << ',' << (row["ok"].get<bool>() ? "true" : "false") << '\n';
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Foulkes-Howe map computations"};
  app.require_subcommand(1);
  Options o;

  auto add_shape = [&o](CLI::App* sub) {
    sub->add_option("--a", o.a, "a")->required();
    sub->add_option("--b", o.b, "b")->required();
  };
  auto add_format = [&o](CLI::App* sub) {
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* psi = app.add_subcommand("psi", "build psi_{a x b} and report its rank");
  add_shape(psi);
  psi->add_flag("--fused", o.fused, "use the closed form instead of composing raising operators");
  psi->add_option("--export", o.export_path, "write the matrix in FHM1 format");
  psi->add_flag("--certify", o.certify, "multi-prime certificate with exact confirmation when feasible");
  psi->add_option("--limit", o.limit, "largest allowed ab")->check(CLI::PositiveNumber);

  CLI::App* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("--claims", o.claims, "suite")
      ->check(CLI::IsMember({"commute", "invariance", "factorization", "qsplit", "zeta", "wedge", "all"}));
  verify->add_option("--max-ab", o.max_ab, "size bound")->required();

  CLI::App* foulkes = app.add_subcommand("foulkes", "compare Sym^a(Sym^b) with Sym^b(Sym^a)");
  add_shape(foulkes);
  add_format(foulkes);
  CLI::App* hermite = app.add_subcommand("hermite", "two-row multiplicities of Sym^a(Sym^b) and Sym^b(Sym^a)");
  add_shape(hermite);
  add_format(hermite);
  CLI::App* mult = app.add_subcommand("mult", "multiplicities in Sym^a(Sym^b)");
  add_shape(mult);
  add_format(mult);
  mult->add_option("--lambda", o.lambda, "single partition, e.g. 2,2,2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Result r;
  r.command = app.get_subcommands().front()->get_name();
  const auto start = Clock::now();
  try {
    if (r.command == "psi") run_psi(o, r);
    if (r.command == "verify") run_verify(o, r, err);
    if (r.command == "foulkes") run_comparison(o, r, true);
    if (r.command == "hermite") run_comparison(o, r, false);
    if (r.command == "mult") run_mult(o, r);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    r.status = "resource_limit";
    r.error = e.what();
  } catch (const ConsistencyError& e) {
    r.status = "violated";
    r.error = e.what();
  }
  r.timing["total_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();

  if (!r.error.empty()) err << "error: " << r.error << '\n';
  if (o.format == "csv" && r.status != "resource_limit" && r.outputs.contains("rows"))
    write_csv(r, out);
  else
    out << r.to_json().dump(2) << '\n';
  return exit_code_of(r.status);
}

}  // namespace fh::cli
