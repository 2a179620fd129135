// Command-line front end: expression evaluation, property suites and
// representation checks.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "gitp/expr.hpp"
#include "gitp/representations.hpp"
#include "gitp/suites.hpp"

namespace {

using namespace gitp;

int write_json(const nlohmann::ordered_json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return 2;
  }
  out << j.dump(2) << "\n";
  return 0;
}

CoordinateRep rep_by_name(const CoordinateAlgebra& alg, const std::string& name) {
  if (name == "regular") return CoordinateRep::left_regular(alg);
  if (name == "defining") return CoordinateRep::defining(alg);
  throw DomainError("unknown representation '" + name + "' (expected defining or regular)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in unitary-graded tensor products"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate expressions and print canonical results");
  std::string eval_alg = "C";
  std::vector<std::string> exprs;
  eval->add_option("--algebra", eval_alg, "Coordinate algebra: C, C^n, M2, C[Zn]");
  eval->add_option("expr", exprs, "Expressions")->required();

  // suites
  auto* suite = app.add_subcommand("suite", "Run a property suite");
  std::string suite_name, suite_scale, suite_json;
  std::uint64_t suite_seed = 42;
  suite->add_option("--suite", suite_name, "Suite name (see list-suites)")->required();
  suite->add_option("--seed", suite_seed, "Suite seed");
  suite->add_option("--scale", suite_scale, "small or medium (default: GITP_SCALE or small)");
  suite->add_option("--json", suite_json, "Write the report to this path ('-' for stdout)");
  suite->add_flag("--no-timing", "Omit timing from the JSON report");

  auto* list = app.add_subcommand("list-suites", "List suites and the statements they check");

  // crossed products
  auto* xprod = app.add_subcommand("xprod", "Crossed-product checks");
  auto* xcheck = xprod->add_subcommand("check", "Run the cocycle and crossed-product suites");
  std::string section = "perturbed";
  std::uint64_t xseed = 7;
  xcheck->add_option("--section", section, "canonical or perturbed")
      ->check(CLI::IsMember({"canonical", "perturbed"}));
  xcheck->add_option("--seed", xseed, "Seed");
  xprod->require_subcommand(1);

  // representations
  auto* rep = app.add_subcommand("rep", "Coordinate representation checks");
  rep->require_subcommand(1);
  std::string rep_alg = "M2", rep_name = "defining", rep_expr;
  std::vector<std::string> rep_classes;
  auto* inj = rep->add_subcommand("check-injective", "Decide whether an element is in the kernel");
  inj->add_option("--algebra", rep_alg, "Coordinate algebra");
  inj->add_option("--rep", rep_name, "defining or regular");
  inj->add_option("--expr", rep_expr, "Element expression")->required();
  auto* wit = rep->add_subcommand("witness", "Find a vector moved by every listed class");
  wit->add_option("--algebra", rep_alg, "Coordinate algebra");
  wit->add_option("--rep", rep_name, "defining or regular");
  wit->add_option("--class", rep_classes, "Class expressions")->required();

  // Hilbert algebra
  auto* hilb = app.add_subcommand("hilbert-algebra", "Hilbert algebra checks");
  hilb->require_subcommand(1);
  auto* hcheck = hilb->add_subcommand("check", "Check the Hilbert algebra identities on samples");
  std::string h_alg = "C[Z2]", h_json;
  std::size_t h_samples = 100;
  std::uint64_t h_seed = 1;
  hcheck->add_option("--algebra", h_alg, "Coordinate algebra");
  hcheck->add_option("--samples", h_samples, "Number of sampled elements");
  hcheck->add_option("--seed", h_seed, "Seed");
  hcheck->add_option("--json", h_json, "Write the report to this path ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) {
      const Evaluator ev(algebra_by_name(eval_alg));
      int status = 0;
      for (const auto& text : exprs) {
        try {
          std::cout << to_string(ev.eval(text)) << "\n";
        } catch (const ExprError& e) {
          std::cerr << "error: " << e.what() << "\n  " << text << "\n  " << std::string(e.position(), ' ') << "^\n";
          status = 1;
        }
      }
      return status;
    }
    if (*list) {
      for (const auto& s : suite_catalog()) std::cout << s.name << "\t" << s.anchor << "\n";
      return 0;
    }
    if (*suite) {
      const Scale scale = suite_scale.empty() ? default_scale() : parse_scale(suite_scale);
      const SuiteReport r = run_suite(suite_name, suite_seed, scale);
      std::cout << r.suite << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.cases << " cases, " << r.checks
                << " checks, " << r.failures << " failures)\n";
      for (const auto& f : r.failure_records)
        std::cout << "  case " << f.case_index << ": " << f.check << (f.detail.empty() ? "" : " -- " + f.detail)
                  << "\n";
      if (!suite_json.empty() && write_json(to_json(r, suite->count("--no-timing") == 0), suite_json) != 0) return 2;
      return r.passed() ? 0 : 1;
    }
    if (*xcheck) {
      int status = 0;
      for (const char* name : {section == "canonical" ? "cocycle-canonical" : "cocycle-perturbed", "crossed-product"}) {
        const SuiteReport r = run_suite(name, xseed, default_scale());
        std::cout << r.suite << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.checks << " checks)\n";
        for (const auto& w : r.witnesses) std::cout << "  " << w.label << ": " << w.value << "\n";
        status |= r.passed() ? 0 : 1;
      }
      return status;
    }
    if (*inj) {
      const CoordinateAlgebra alg = algebra_by_name(rep_alg);
      const CoordinateRep r = rep_by_name(alg, rep_name);
      const Value v = Evaluator(alg).eval(rep_expr);
      const auto* a = std::get_if<TensorElement>(&v);
      if (!a) throw TypeMismatch("element", type_name(v), 0);
      const KernelReport k = kernel_check(r, *a);
      std::cout << to_string(k.verdict) << "\n";
      if (k.witness) std::cout << "witness: " << k.witness->to_string() << "\n";
      if (!k.detail.empty()) std::cout << "detail: " << k.detail << "\n";
      return k.verdict == KernelVerdict::kIndeterminate ? 3 : 0;
    }
    if (*wit) {
      const CoordinateAlgebra alg = algebra_by_name(rep_alg);
      const CoordinateRep r = rep_by_name(alg, rep_name);
      const Evaluator ev(alg);
      std::vector<ClassId> classes;
      for (const auto& text : rep_classes) {
        const Value v = ev.eval(text);
        if (const auto* c = std::get_if<ClassId>(&v)) classes.push_back(*c);
        else if (const auto* f = std::get_if<CoordFamily>(&v)) classes.push_back(class_of(*f));
        else throw TypeMismatch("class", type_name(v), 0);
      }
      std::cout << strong_faithfulness_witness(r, classes).to_string() << "\n";
      return 0;
    }
    if (*hcheck) {
      const HilbertReport r = hilbert_algebra_check(algebra_by_name(h_alg), h_samples, h_seed);
      nlohmann::ordered_json j;
      j["algebra"] = h_alg;
      j["seed"] = h_seed;
      j["samples"] = r.samples;
      j["star_isometry_failures"] = r.star_isometry_failures;
      j["adjoint_failures"] = r.adjoint_failures;
      j["max_left_bound"] = r.max_left_bound;
      j["passed"] = r.passed();
      std::cout << "hilbert-algebra " << h_alg << ": " << (r.passed() ? "PASS" : "FAIL") << "\n";
      if (!h_json.empty() && write_json(j, h_json) != 0) return 2;
      return r.passed() ? 0 : 1;
    }
  } catch (const WitnessNotFound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
