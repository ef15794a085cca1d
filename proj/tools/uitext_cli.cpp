// uitext: command-line front end for the prompt pipeline.
//
//   uitext extract PAGE
//   uitext prompt PAGE
//   uitext generate PAGE [--backend mock|random|remote] [--seed N]
//   uitext tune-data --corpus DIR --out FILE
//   uitext manifest --dataset FILE --out FILE
//   uitext eval --cases DIR [--backend ...] [--report FILE]
//
// Exit codes: 0 ok, 2 input error, 3 no input widgets, 4 backend auth,
// 5 backend unavailable.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "uitext/backend.hpp"
#include "uitext/config.hpp"
#include "uitext/context.hpp"
#include "uitext/errors.hpp"
#include "uitext/eval.hpp"
#include "uitext/hierarchy.hpp"
#include "uitext/prompt.hpp"
#include "uitext/tuning.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace uitext;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoInputWidgets: return 3;
    case ErrorKind::AuthError: return 4;
    case ErrorKind::BackendUnavailable:
    case ErrorKind::EmptyCompletion:
    case ErrorKind::BudgetExceeded: return 5;
    default: return 2;
  }
}

json optional_json(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

json context_json(const WidgetContext& ctx) {
  json info = nullptr;
  if (ctx.info) info = {{"source_field", to_string(ctx.info->source_field)}, {"raw", ctx.info->raw}};
  return {
      {"widget_id", ctx.widget_id},
      {"info", info},
      {"local",
       {{"parent_texts", ctx.local.parent_texts},
        {"leaf_texts", ctx.local.leaf_texts},
        {"same_row_texts", ctx.local.same_row_texts},
        {"fragment_hint", optional_json(ctx.local.fragment_hint)},
        {"combined", ctx.local.combined}}},
      {"global",
       {{"app_name", ctx.global_ctx.app_name},
        {"activity_name", ctx.global_ctx.activity_name},
        {"input_widget_count", ctx.global_ctx.input_widget_count}}},
  };
}

json prompt_json(const Prompt& p) {
  json fragments = json::array();
  for (const auto& f : p.fragments) {
    fragments.push_back({{"pattern", to_string(f.pattern)},
                         {"text", f.text},
                         {"mask_widget", f.mask_slot ? json(*f.mask_slot) : json(nullptr)}});
  }
  return {{"page", p.page_ref},
          {"category", to_string(p.category)},
          {"rendered", p.rendered},
          {"fragments", fragments},
          {"widget_order", p.widget_order}};
}

json generation_json(const GenerationResult& r) {
  json inputs = json::object();
  for (const auto& [id, value] : r.widget_inputs) inputs[std::to_string(id)] = value;
  return {{"widget_inputs", inputs},
          {"backend", to_string(r.backend_kind)},
          {"raw_completion", r.raw_completion},
          {"latency_ms", r.latency.count()}};
}

void emit(const std::string& body, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << body << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + out_path);
  out << body << '\n';
  if (!out) throw Error(ErrorKind::IoError, "write failed: " + out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Context-aware text input generation for GUI pages"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, backend_name, glossary_path, out_path, report_path, endpoint;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--backend", backend_name, "mock, random or remote");
  app.add_option("--seed", seed, "seed for the random baseline");
  app.add_option("--glossary", glossary_path, "category glossary file");
  app.add_option("--out", out_path, "output file (stdout when omitted)");
  app.add_option("--report", report_path, "evaluation report file");
  app.add_option("--endpoint", endpoint, "completion endpoint URL for the remote backend");

  std::string page_path;
  auto* extract = app.add_subcommand("extract", "print the context of every input widget");
  extract->add_option("page", page_path)->required();
  auto* prompt = app.add_subcommand("prompt", "print the generated prompt");
  prompt->add_option("page", page_path)->required();
  auto* generate_cmd = app.add_subcommand("generate", "generate input text for every input widget");
  generate_cmd->add_option("page", page_path)->required();

  std::string corpus_dir;
  auto* tune = app.add_subcommand("tune-data", "build the prompt/answer tuning dataset");
  tune->add_option("--corpus", corpus_dir)->required();

  std::string dataset_path;
  TuningConfig tuning;
  auto* manifest = app.add_subcommand("manifest", "write the tuning job manifest");
  manifest->add_option("--dataset", dataset_path)->required();
  manifest->add_option("--batch-size", tuning.batch_size);
  manifest->add_option("--epochs", tuning.epochs);
  manifest->add_option("--lr-multiplier", tuning.learning_rate_multiplier);
  manifest->add_option("--model", tuning.model_name);

  std::string cases_dir;
  std::optional<int> attempts;
  auto* eval = app.add_subcommand("eval", "run the validator suite");
  eval->add_option("--cases", cases_dir)->required();
  eval->add_option("--attempts", attempts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    AppConfig cfg = config_path.empty() ? AppConfig{} : load_app_config(config_path);
    if (!backend_name.empty()) cfg.set("backend", backend_name);
    if (seed) cfg.backend.seed = *seed;
    if (!glossary_path.empty()) cfg.glossary_path = glossary_path;
    if (!endpoint.empty()) cfg.backend.endpoint_url = endpoint;
    if (attempts) cfg.set("attempts", std::to_string(*attempts));
    cfg.backend.validate();

    if (extract->parsed()) {
      const GuiPage page = load_page(page_path);
      json out = json::array();
      for (const auto& ctx : extract_all(page, cfg.context)) out.push_back(context_json(ctx));
      emit(out.dump(2), out_path);
    } else if (prompt->parsed()) {
      const GuiPage page = load_page(page_path);
      emit(prompt_json(generate_prompt(page, cfg.prompt_options(), page_path)).dump(2), out_path);
    } else if (generate_cmd->parsed()) {
      const GuiPage page = load_page(page_path);
      const Prompt p = generate_prompt(page, cfg.prompt_options(), page_path);
      emit(generation_json(generate(p, cfg.backend)).dump(2), out_path);
    } else if (tune->parsed()) {
      if (out_path.empty()) throw Error(ErrorKind::ConfigError, "tune-data needs --out");
      const auto corpus = load_corpus(corpus_dir);
      const std::size_t lines = build_dataset(corpus, out_path, cfg.tuning_options());
      std::cout << lines << " pairs from " << corpus.size() << " pages written to " << out_path << '\n';
    } else if (manifest->parsed()) {
      if (out_path.empty()) throw Error(ErrorKind::ConfigError, "manifest needs --out");
      std::cout << emit_tuning_manifest(tuning, dataset_path, out_path) << '\n';
    } else if (eval->parsed()) {
      const auto cases = load_eval_cases(cases_dir);
      const EvalReport report = run_eval(cases, cfg.backend, cfg.eval_options());
      if (!report_path.empty()) emit(report_to_json(report).dump(2), report_path);
      std::cout << summary_table(report);
    }
  } catch (const Error& e) {
    std::cerr << "uitext: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "uitext: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
