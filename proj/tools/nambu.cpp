#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>

#include "nambu/catalog.hpp"
#include "nambu/error.hpp"
#include "nambu/expr.hpp"
#include "nambu/models.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

void print_syntax_error(const std::string& text, const nambu::SyntaxError& e) {
  std::cerr << "error: " << e.what() << "\n  " << text << "\n  ";
  const auto& span = e.span();
  std::cerr << std::string(span.begin, ' ') << std::string(std::max<std::size_t>(1, span.end - span.begin), '^') << "\n";
}

int run_check(const nambu::RunOptions& opts, const std::string& format, bool timing) {
  nambu::Report report = nambu::run_suite(opts);
  std::cout << (format == "json" ? report.to_json(timing) : report.to_text(timing));
  return report.all_pass() ? kExitPass : kExitFail;
}

int run_eval(const std::string& model_name, const std::string& text, const std::string& format) {
  nambu::Model model = nambu::build_model(model_name);
  nambu::Binding binding(model);
  std::string result;
  try {
    result = nambu::print_canonical(nambu::evaluate_text(text, binding));
  } catch (const nambu::SyntaxError& e) {
    print_syntax_error(text, e);
    return kExitUsage;
  }
  if (format == "json") {
    nlohmann::ordered_json j;
    j["model"] = model.name;
    j["expr"] = text;
    j["result"] = result;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << result << "\n";
  }
  return kExitPass;
}

int run_models() {
  for (const auto& pattern : nambu::model_registry()) {
    // Show the sphere family through its N=2 instance.
    const std::string name = pattern.rfind("sphere:", 0) == 0 ? "sphere:2" : pattern;
    nambu::Model m = nambu::build_model(name);
    std::cout << pattern << "  e.g. " << name << "  charges:";
    for (const auto& [key, value] : m.charges) std::cout << " " << key;
    std::cout << "\n";
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verifier for star-product and Nambu-bracket identities"};
  app.require_subcommand(1);

  nambu::RunOptions opts;
  std::string format = "text";
  bool no_timing = false;
  auto* check = app.add_subcommand("check", "run catalog identities");
  auto* suite = check->add_option("--suite", opts.suite, "suite name or 'all'");
  check->add_option("--id", opts.id_glob, "glob over entry ids, e.g. 'QN-*'")->excludes(suite);
  check->add_option("--n", opts.n, "sphere dimension override for S^N entries")->check(CLI::Range(2, 6));
  check->add_option("--seed", opts.seed, "seed for random instances");
  check->add_option("--jobs", opts.jobs, "entries run concurrently")->check(CLI::PositiveNumber);
  check->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
  check->add_flag("--no-timing", no_timing, "report elapsed_ms as 0 so reports are byte-stable");
  check->add_flag("--perturb", opts.perturb, "negative control: tamper with one input of entries that support it");

  std::string model_name;
  std::string expr_text;
  std::string eval_format = "text";
  auto* eval = app.add_subcommand("eval", "evaluate an expression in a model");
  eval->add_option("--model", model_name, "model, e.g. sphere:2, sphere:3:-, chiral-s3, gnomonic-s3")->required();
  eval->add_option("--format", eval_format, "output format")->check(CLI::IsMember({"text", "json"}));
  eval->add_option("expr", expr_text, "expression")->required();

  auto* models = app.add_subcommand("models", "list models and their charges");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (check->parsed()) return run_check(opts, format, !no_timing);
    if (eval->parsed()) return run_eval(model_name, expr_text, eval_format);
    if (models->parsed()) return run_models();
  } catch (const nambu::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nambu::Error& e) {
    // Failures inside a user expression: unknown names, bad arity, poles,
    // non-divisible divh and the like.
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
